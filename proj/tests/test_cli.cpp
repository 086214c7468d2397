#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace
{

struct Run
{
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp( const fs::path& p )
{
    std::ifstream in( p );
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch()
{
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ( "infra_cli_test_" + std::to_string( ::getpid() ) );
        fs::create_directories( d );
        return d;
    }();
    return dir;
}

Run run( const std::string& args )
{
    const auto out = scratch() / "out.txt";
    const auto err = scratch() / "err.txt";
    const std::string cmd = "INFRA_COLOR=0 '" + std::string( INFRA_CLI ) + "' " + args + " >'" + out.string() + "' 2>'"
                            + err.string() + "'";
    const int status = std::system( cmd.c_str() );
    Run r;
    r.code = WIFEXITED( status ) ? WEXITSTATUS( status ) : -1;
    r.out = slurp( out );
    r.err = slurp( err );
    return r;
}

std::string data( const char* name ) { return "'" + std::string( INFRA_DATA_DIR ) + "/" + name + "'"; }

bool has( const std::string& text, const std::string& part ) { return text.find( part ) != std::string::npos; }

} // namespace

TEST( Cli, Classify )
{
    const auto r = run( "classify " + data( "ex2.json" ) + " --set a,b" );
    EXPECT_EQ( r.code, 0 );
    EXPECT_TRUE( has( r.out, "i_closure           {a, b, d}" ) ) << r.out;
    EXPECT_FALSE( has( r.out, "\x1b[" ) );

    const auto j = nlohmann::json::parse( run( "classify " + data( "ex2.json" ) + " --set a,b --json" ).out );
    EXPECT_EQ( j.at( "i_genuine" ), true );
    EXPECT_EQ( j.at( "i_closure" ), ( nlohmann::json{ "a", "b", "d" } ) );
}

TEST( Cli, LookupFailureExitsTwo )
{
    const auto r = run( "classify " + data( "ex2.json" ) + " --set z" );
    EXPECT_EQ( r.code, 2 );
    EXPECT_TRUE( has( r.err, "UnknownLabel" ) );
    EXPECT_EQ( run( "eval " + data( "m1.json" ) + " p --world w9" ).code, 2 );
    EXPECT_EQ( run( "eval " + data( "m1.json" ) + " zz --strict" ).code, 2 );
    EXPECT_EQ( run( "oracle witness bogus" ).code, 2 );
}

TEST( Cli, InteriorClosureFamily )
{
    EXPECT_TRUE( has( run( "interior " + data( "ex2.json" ) + " --set a,b,d" ).out, "iInt{a, b, d} = {a, b}" ) );
    EXPECT_TRUE( has( run( "closure " + data( "ex2.json" ) + " --set b" ).out, "iCl{b} = {b, d}" ) );
    const auto r = run( "family " + data( "ex2.json" ) + " --kind minimal" );
    EXPECT_EQ( r.code, 0 );
    EXPECT_EQ( r.out, "{a}\n{c}\n" );
    EXPECT_EQ( run( "family " + data( "ex2.json" ) + " --kind nope" ).code, 2 );
}

TEST( Cli, MeetAndUnion )
{
    EXPECT_TRUE( has( run( "meet " + data( "ex2.json" ) + " " + data( "ex3.json" ) ).out, "{{}, {c}, {a, b, c, d}}" ) );
    const auto u = run( "union-check " + data( "ex2.json" ) + " " + data( "ex3.json" ) );
    EXPECT_EQ( u.code, 0 );
    EXPECT_TRUE( has( u.out, "{a, b} & {b, c} = {b}" ) ) << u.out;
    EXPECT_EQ( run( "meet " + data( "ex2.json" ) + " " + data( "ex1.json" ) ).code, 1 );
}

TEST( Cli, Generate )
{
    const auto r = run( "generate --universe a,b,c --seed a,b --seed b,c" );
    EXPECT_EQ( r.code, 0 );
    EXPECT_TRUE( has( r.out, "{{}, {b}, {a, b}, {b, c}, {a, b, c}}" ) ) << r.out;
}

TEST( Cli, EvalAndTruthSet )
{
    const auto r = run( "eval " + data( "m1.json" ) + " '[]true' --world w3" );
    EXPECT_EQ( r.code, 0 );
    EXPECT_TRUE( has( r.out, "no open set contains w3" ) );
    const auto j = nlohmann::json::parse( run( "truth-set " + data( "m1.json" ) + " '[]p' --json" ).out );
    EXPECT_EQ( j, ( nlohmann::json{ "w1", "w2" } ) );
}

TEST( Cli, ParseFailureExitsThree )
{
    const auto r = run( "eval " + data( "m1.json" ) + " 'p ->'" );
    EXPECT_EQ( r.code, 3 );
    EXPECT_TRUE( has( r.err, "offset 4" ) ) << r.err;
}

TEST( Cli, Countermodel )
{
    const auto r = run( "countermodel '[]true'" );
    EXPECT_EQ( r.code, 0 );
    EXPECT_TRUE( has( r.out, "countermodel at world w1" ) );
    EXPECT_TRUE( has( r.out, "policy:" ) );
    EXPECT_TRUE( has( run( "countermodel '[]p -> p' --max-worlds 2" ).out, "no countermodel within bounds" ) );
    EXPECT_EQ( run( "countermodel p --max-worlds 4" ).code, 4 );
}

TEST( Cli, CheckProof )
{
    const auto ok = run( "check-proof " + data( "mon_box.json" ) );
    EXPECT_EQ( ok.code, 0 );
    EXPECT_TRUE( has( ok.out, "accepted" ) );
    const auto bad = run( "check-proof " + data( "nec.json" ) );
    EXPECT_EQ( bad.code, 1 );
    EXPECT_TRUE( has( bad.out, "rejected at step 2" ) );
}

TEST( Cli, Oracle )
{
    EXPECT_EQ( run( "oracle count --n 3" ).out, "45\n" );
    EXPECT_EQ( run( "oracle count --n 4 --generalized --jobs 2" ).out, "4542\n" );
    EXPECT_EQ( run( "oracle count --n 5" ).code, 4 );
    const auto w = run( "oracle witness non-i-genuine-intersection-may-be-i-genuine" );
    EXPECT_EQ( w.code, 0 );
    EXPECT_TRUE( has( w.out, "FAILS" ) );
    const auto j = nlohmann::json::parse( run( "oracle witness c-genuine-union-is-c-genuine --json" ).out );
    EXPECT_EQ( j.at( "verified" ), true );
}

TEST( Cli, UsageErrorsExitOne )
{
    EXPECT_EQ( run( "" ).code, 1 );
    EXPECT_EQ( run( "classify" ).code, 1 );
    EXPECT_EQ( run( "classify /nonexistent.json --set a" ).code, 1 );
}

TEST( Cli, PaperSuiteFilter )
{
    const auto r = run( "paper-suite --filter closure" );
    EXPECT_EQ( r.code, 0 );
    EXPECT_TRUE( has( r.out, "13/13 checks passed" ) ) << r.out;
    EXPECT_EQ( run( "paper-suite --filter zzz" ).code, 2 );
}

// A corrupted example file must make the suite fail and name the check.
TEST( Cli, PaperSuiteNegativeControl )
{
    const auto dir = scratch() / "data";
    fs::create_directories( dir );
    for ( const auto& e : fs::directory_iterator( INFRA_DATA_DIR ) )
        fs::copy_file( e.path(), dir / e.path().filename(), fs::copy_options::overwrite_existing );
    auto j = nlohmann::json::parse( slurp( dir / "ex2.json" ) );
    j[ "family" ].push_back( nlohmann::json{ "b", "c" } );
    std::ofstream( dir / "ex2.json" ) << j.dump();

    const auto r = run( "paper-suite --filter example-2 --data-dir '" + dir.string() + "'" );
    EXPECT_EQ( r.code, 1 );
    EXPECT_TRUE( has( r.err, "first failing check: iint-abc-in-example-2" ) ) << r.err;
    EXPECT_TRUE( has( r.out, "FAIL" ) );
}
