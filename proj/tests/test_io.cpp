#include <infra/io.hpp>
#include <infra/models.hpp>

#include <gtest/gtest.h>

#include <functional>
#include <random>

using namespace infra;
using json = io::json;

namespace
{

std::string data( const char* name ) { return std::string( INFRA_DATA_DIR ) + "/" + name; }

ErrorKind kind_of( const std::function< void() >& f )
{
    try
    {
        f();
    }
    catch ( const Error& e )
    {
        return e.kind();
    }
    ADD_FAILURE() << "no error";
    return ErrorKind::InvalidFile;
}

} // namespace

TEST( SpaceFile, LoadsExamples )
{
    const auto t = io::load_space( data( "ex2.json" ) );
    EXPECT_EQ( t.universe().size(), 4U );
    EXPECT_EQ( t.size(), 6U );
    EXPECT_FALSE( t.generalized() );
    for ( const char* f : { "ex1.json", "ex3.json", "ex4.json", "ex5.json", "indiscrete.json" } )
        EXPECT_NO_THROW( (void)io::load_space( data( f ) ) ) << f;
}

TEST( SpaceFile, RoundTrip )
{
    for ( const auto& t : oracle::enumerate_infra_topologies( 3, true ) )
        ASSERT_EQ( io::space_from_json( io::space_to_json( t ) ), t );
}

TEST( SpaceFile, Invalid )
{
    EXPECT_EQ( kind_of( [] { (void)io::load_space( data( "missing.json" ) ); } ), ErrorKind::InvalidFile );
    EXPECT_EQ( kind_of( [] { (void)io::space_from_json( json{ { "family", json::array() } } ); } ), ErrorKind::InvalidFile );
    EXPECT_EQ( kind_of( [] { (void)io::space_from_json( json{ { "universe", { "a" } }, { "family", 3 } } ); } ),
               ErrorKind::InvalidFile );
    EXPECT_EQ( kind_of( [] {
                   (void)io::space_from_json( json{ { "universe", { "a", "b" } }, { "family", { json::array(), { "z" } } } } );
               } ),
               ErrorKind::UnknownLabel );
    EXPECT_EQ( kind_of( [] {
                   (void)io::space_from_json( json{ { "universe", { "a", "b" } }, { "family", { json::array(), { "a" } } } } );
               } ),
               ErrorKind::InvalidSpace );
}

TEST( ReportFile, RoundTrip )
{
    const auto t = io::load_space( data( "ex2.json" ) );
    for ( mask_t a = 0; a <= t.universe().full(); ++a )
    {
        const auto r = classify( t, Subset{ t.universe(), a } );
        ASSERT_EQ( io::report_from_json( t.universe(), io::report_to_json( r ) ), r );
    }
}

TEST( ModelFile, LoadsModelOne )
{
    const auto m = io::load_model( data( "m1.json" ) );
    EXPECT_EQ( m.size(), 3U );
    EXPECT_EQ( m.neighborhoods( 2 ), std::vector< mask_t >{ 1 } );
    EXPECT_EQ( m.valuation().at( "p" ), 0b011U );
}

TEST( ModelFile, RoundTrip )
{
    std::mt19937_64 rng( 3 );
    for ( int i = 0; i < 200; ++i )
    {
        const auto m = sample_model( rng, 1 + i % 5, { "p", "q" } );
        const auto j = io::model_to_json( m );
        ASSERT_EQ( io::model_to_json( io::model_from_json( j ) ), j );
    }
}

TEST( ModelFile, Invalid )
{
    auto j = io::read_json_file( data( "m1.json" ) );
    j.erase( "worlds" );
    EXPECT_EQ( kind_of( [ & ] { (void)io::model_from_json( j ); } ), ErrorKind::InvalidFile );
    j = io::read_json_file( data( "m1.json" ) );
    j[ "f" ][ "w1" ] = "w2";
    EXPECT_EQ( kind_of( [ & ] { (void)io::model_from_json( j ); } ), ErrorKind::InvalidModel );
}

TEST( DerivationFile, Justifications )
{
    EXPECT_TRUE( std::holds_alternative< just::MP >( io::parse_justification( "mp 1 2" ) ) );
    EXPECT_TRUE( std::holds_alternative< just::Nec >( io::parse_justification( "nec 1" ) ) );
    for ( const char* bad : { "mp 1", "axiom 2", "mon_box x", "lemma 1", "re_box -1" } )
        EXPECT_EQ( kind_of( [ & ] { (void)io::parse_justification( bad ); } ), ErrorKind::InvalidFile ) << bad;
}

TEST( DerivationFile, ExamplesAndRoundTrip )
{
    for ( const char* f : { "mon_box.json", "nec.json", "box_to_bbox_t.json" } )
    {
        const auto d = io::load_derivation( data( f ) );
        const auto back = io::derivation_from_json( io::derivation_to_json( d ) );
        ASSERT_EQ( back.steps.size(), d.steps.size() ) << f;
        EXPECT_EQ( back.premises, d.premises ) << f;
        for ( std::size_t i = 0; i < d.steps.size(); ++i )
        {
            EXPECT_EQ( back.steps[ i ].formula, d.steps[ i ].formula );
            EXPECT_EQ( to_string( back.steps[ i ].by ), to_string( d.steps[ i ].by ) );
        }
    }
    EXPECT_TRUE( check_derivation( io::load_derivation( data( "mon_box.json" ) ) ).accepted );
    EXPECT_FALSE( check_derivation( io::load_derivation( data( "nec.json" ) ) ).accepted );
    EXPECT_TRUE( check_derivation( io::load_derivation( data( "box_to_bbox_t.json" ) ) ).accepted );
}

TEST( DerivationFile, BadFormula )
{
    const json j = { { "steps", { { { "formula", "p ->" }, { "by", "axiom" } } } } };
    EXPECT_EQ( kind_of( [ & ] { (void)io::derivation_from_json( j ); } ), ErrorKind::ParseError );
}

TEST( WitnessFile, AnnotatedSpaceReloads )
{
    const auto b = oracle::find_witness( "c-genuine-intersection-may-fail" );
    const auto j = io::witness_to_json( b );
    EXPECT_EQ( j.at( "quantifier" ), "may" );
    ASSERT_TRUE( j.contains( "witness" ) );
    const auto& w = j.at( "witness" );
    const auto t = io::space_from_json( w );
    EXPECT_EQ( t, b.witness->space );
    EXPECT_EQ( subset_of( t.universe(), w.at( "annotation" ).at( "A" ).get< std::vector< std::string > >() ), b.witness->a );
}
