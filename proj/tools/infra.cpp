#include <infra/infra.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <unistd.h>

#ifndef INFRA_DATA_DIR
#define INFRA_DATA_DIR "data"
#endif

using namespace infra;
using json = nlohmann::json;

namespace
{

enum Exit : int
{
    ok = 0,
    invalid = 1,
    lookup = 2,
    syntax = 3,
    bounds = 4,
};

int exit_code( ErrorKind kind )
{
    switch ( kind )
    {
    case ErrorKind::UnknownLabel:
    case ErrorKind::UnknownWorld:
    case ErrorKind::UnknownVariable:
    case ErrorKind::UnknownProperty: return lookup;
    case ErrorKind::ParseError: return syntax;
    case ErrorKind::UniverseTooLarge:
    case ErrorKind::UniverseTooLargeForScan:
    case ErrorKind::BoundsTooLarge: return bounds;
    default: return invalid;
    }
}

struct palette
{
    bool on = false;
    std::string paint( const std::string& s, const char* code ) const
    {
        return on ? std::string( "\033[" ) + code + "m" + s + "\033[0m" : s;
    }
    std::string yes_no( bool b ) const { return paint( b ? "true" : "false", b ? "32" : "31" ); }
    std::string pass( bool b ) const { return paint( b ? "PASS" : "FAIL", b ? "32" : "31" ); }
};

palette make_palette()
{
    const char* env = std::getenv( "INFRA_COLOR" );
    if ( env && std::string( env ) == "0" )
        return { false };
    if ( env && std::string( env ) == "1" )
        return { true };
    return { isatty( STDOUT_FILENO ) != 0 };
}

// Lookup failures inside an input file make the file invalid.
template < typename F >
auto load_file( const std::string& path, F loader )
{
    try
    {
        return loader( path );
    }
    catch ( const ParseError& )
    {
        throw;
    }
    catch ( const Error& e )
    {
        switch ( e.kind() )
        {
        case ErrorKind::UnknownLabel:
        case ErrorKind::UnknownWorld:
        case ErrorKind::UnknownVariable:
        case ErrorKind::DuplicateLabel: throw Error( ErrorKind::InvalidFile, path + ": " + e.what() );
        default: throw;
        }
    }
}

InfraTopology space_file( const std::string& path ) { return load_file( path, io::load_space ); }
GitModel model_file( const std::string& path ) { return load_file( path, io::load_model ); }

std::vector< std::string > split_labels( const std::string& text )
{
    std::vector< std::string > out;
    std::string item;
    std::istringstream in( text );
    while ( std::getline( in, item, ',' ) )
    {
        const auto b = item.find_first_not_of( " \t" );
        if ( b == std::string::npos )
            continue;
        out.push_back( item.substr( b, item.find_last_not_of( " \t" ) - b + 1 ) );
    }
    return out;
}

json family_json( const Universe& u, std::span< const mask_t > family )
{
    json out = json::array();
    for ( mask_t m : family )
        out.push_back( Subset{ u, m }.labels() );
    return out;
}

void print_space( const InfraTopology& t, bool as_json )
{
    if ( as_json )
        std::cout << io::space_to_json( t ).dump( 2 ) << "\n";
    else
        std::cout << "universe " << format_mask( t.universe(), t.universe().full() ) << ( t.generalized() ? " (generalized)" : "" )
                  << "\nfamily   " << format_family( t.universe(), t.masks() ) << "\n";
}

void print_trace( const EvalTrace& t, const Universe& worlds, const palette& pal, int depth )
{
    std::cout << std::string( static_cast< std::size_t >( depth ) * 2, ' ' ) << worlds.label( t.world ) << " |= " << t.formula
              << " : " << pal.yes_no( t.result );
    if ( !t.note.empty() )
        std::cout << "  (" << t.note << ")";
    std::cout << "\n";
    for ( const auto& c : t.children )
        print_trace( c, worlds, pal, depth + 1 );
}

json trace_json( const EvalTrace& t, const Universe& worlds )
{
    json j = { { "formula", t.formula }, { "world", worlds.label( t.world ) }, { "result", t.result } };
    if ( t.witness )
        j[ "witness" ] = Subset{ worlds, *t.witness }.labels();
    if ( t.linked_world )
        j[ "linked_world" ] = worlds.label( *t.linked_world );
    if ( !t.note.empty() )
        j[ "note" ] = t.note;
    if ( !t.children.empty() )
    {
        j[ "children" ] = json::array();
        for ( const auto& c : t.children )
            j[ "children" ].push_back( trace_json( c, worlds ) );
    }
    return j;
}

} // namespace

int main( int argc, char** argv )
{
    const palette pal = make_palette();
    CLI::App app{ "Finite infra-topological spaces and the modal logic GIT" };
    app.require_subcommand( 1 );
    bool as_json = false;
    app.add_flag( "--json", as_json, "Machine-readable output" );

    std::function< int() > action;

    // classify / interior / closure ---------------------------------------
    std::string space_path, space_path2, set_text;
    auto* classify_cmd = app.add_subcommand( "classify", "Classify a subset of a space" );
    classify_cmd->add_option( "space", space_path, "Space file" )->required();
    classify_cmd->add_option( "--set", set_text, "Comma-separated labels" )->required();
    classify_cmd->add_flag( "--json", as_json );
    classify_cmd->callback( [ & ] {
        action = [ & ] {
            const auto t = space_file( space_path );
            const auto r = classify( t, subset_of( t.universe(), split_labels( set_text ) ) );
            if ( as_json )
            {
                std::cout << io::report_to_json( r ).dump( 2 ) << "\n";
                return ok;
            }
            auto row = [ & ]( const char* k, const std::string& v ) { std::cout << std::left << std::setw( 20 ) << k << v << "\n"; };
            row( "subset", format( r.subset ) );
            row( "i_interior", format( r.i_interior ) );
            row( "i_closure", format( r.i_closure ) );
            row( "infra_open", pal.yes_no( r.infra_open ) );
            row( "infra_closed", pal.yes_no( r.infra_closed ) );
            row( "i_genuine", pal.yes_no( r.i_genuine ) );
            row( "strictly_i_genuine", pal.yes_no( r.strictly_i_genuine ) );
            row( "c_genuine", pal.yes_no( r.c_genuine ) );
            row( "ps_infra_open", pal.yes_no( r.ps_infra_open ) );
            row( "ps_infra_closed", pal.yes_no( r.ps_infra_closed ) );
            row( "ps_dense", pal.yes_no( r.ps_dense ) );
            row( "strictly_dense", pal.yes_no( r.strictly_dense ) );
            return ok;
        };
    } );

    for ( const char* name : { "interior", "closure" } )
    {
        auto* cmd = app.add_subcommand( name, std::string( "Compute the infra-" ) + name + " of a subset" );
        cmd->add_option( "space", space_path, "Space file" )->required();
        cmd->add_option( "--set", set_text, "Comma-separated labels" )->required();
        cmd->add_flag( "--json", as_json );
        const bool interior = std::string( name ) == "interior";
        cmd->callback( [ &, interior ] {
            action = [ &, interior ] {
                const auto t = space_file( space_path );
                const auto a = subset_of( t.universe(), split_labels( set_text ) );
                const auto r = interior ? i_interior( t, a ) : i_closure( t, a );
                if ( as_json )
                    std::cout << json{ { "subset", a.labels() }, { interior ? "i_interior" : "i_closure", r.labels() } }.dump( 2 )
                              << "\n";
                else
                    std::cout << ( interior ? "iInt" : "iCl" ) << format( a ) << " = " << format( r ) << "\n";
                return ok;
            };
        } );
    }

    // family ----------------------------------------------------------------
    std::string kind_text;
    auto* family_cmd = app.add_subcommand( "family", "List a derived family of subsets" );
    family_cmd->add_option( "space", space_path, "Space file" )->required();
    family_cmd->add_option( "--kind", kind_text, "open|closed|i-genuine|ps-open|c-genuine|ps-closed|minimal" )->required();
    family_cmd->add_flag( "--json", as_json );
    family_cmd->callback( [ & ] {
        action = [ & ] {
            const auto kind = parse_family_kind( kind_text );
            if ( !kind )
                throw Error( ErrorKind::UnknownProperty, "unknown family kind \"" + kind_text + "\"" );
            const auto t = space_file( space_path );
            const auto family = derived_family_masks( t, *kind );
            if ( as_json )
                std::cout << json{ { "kind", kind_text }, { "family", family_json( t.universe(), family ) } }.dump( 2 ) << "\n";
            else
                for ( mask_t m : family )
                    std::cout << format_mask( t.universe(), m ) << "\n";
            return ok;
        };
    } );

    // meet / union-check ----------------------------------------------------
    auto* meet_cmd = app.add_subcommand( "meet", "Intersect two infra-topologies" );
    meet_cmd->add_option( "first", space_path, "Space file" )->required();
    meet_cmd->add_option( "second", space_path2, "Space file" )->required();
    meet_cmd->add_flag( "--json", as_json );
    meet_cmd->callback( [ & ] {
        action = [ & ] {
            print_space( meet( space_file( space_path ), space_file( space_path2 ) ), as_json );
            return ok;
        };
    } );

    auto* union_cmd = app.add_subcommand( "union-check", "Test whether the union of two infra-topologies is one" );
    union_cmd->add_option( "first", space_path, "Space file" )->required();
    union_cmd->add_option( "second", space_path2, "Space file" )->required();
    union_cmd->add_flag( "--json", as_json );
    union_cmd->callback( [ & ] {
        action = [ & ] {
            const auto r = union_check( space_file( space_path ), space_file( space_path2 ) );
            if ( const auto* t = std::get_if< InfraTopology >( &r ) )
            {
                if ( as_json )
                    std::cout << json{ { "valid", true }, { "space", io::space_to_json( *t ) } }.dump( 2 ) << "\n";
                else
                {
                    std::cout << "valid\n";
                    print_space( *t, false );
                }
                return ok;
            }
            const auto& bad = std::get< UnionInvalid >( r );
            if ( as_json )
                std::cout << json{ { "valid", false },
                                   { "witness", { bad.a.labels(), bad.b.labels() } },
                                   { "intersection", ( bad.a & bad.b ).labels() } }
                                     .dump( 2 )
                          << "\n";
            else
                std::cout << "invalid: " << format( bad.a ) << " & " << format( bad.b ) << " = " << format( bad.a & bad.b )
                          << " is missing from the union\n";
            return ok;
        };
    } );

    // generate --------------------------------------------------------------
    std::string universe_text;
    std::vector< std::string > seed_texts;
    bool generalized = false;
    auto* generate_cmd = app.add_subcommand( "generate", "Smallest infra-topology containing the seeds" );
    generate_cmd->add_option( "--universe", universe_text, "Comma-separated labels" )->required();
    generate_cmd->add_option( "--seed", seed_texts, "Comma-separated labels of one seed (repeatable)" );
    generate_cmd->add_flag( "--generalized", generalized );
    generate_cmd->add_flag( "--json", as_json );
    generate_cmd->callback( [ & ] {
        action = [ & ] {
            const auto labels = split_labels( universe_text );
            const auto u = Universe::make( labels );
            std::vector< Subset > seeds;
            for ( const auto& s : seed_texts )
                seeds.push_back( subset_of( u, split_labels( s ) ) );
            print_space( generate_infra_topology( u, seeds, generalized ), as_json );
            return ok;
        };
    } );

    // eval / truth-set ------------------------------------------------------
    std::string model_path, formula_text, world;
    bool strict = false;
    auto* eval_cmd = app.add_subcommand( "eval", "Evaluate a formula in a model" );
    eval_cmd->add_option( "model", model_path, "Model file" )->required();
    eval_cmd->add_option( "formula", formula_text, "Formula" )->required();
    eval_cmd->add_option( "--world", world, "Report one world with a trace" );
    eval_cmd->add_flag( "--strict", strict, "Unknown variables are errors" );
    eval_cmd->add_flag( "--json", as_json );
    eval_cmd->callback( [ & ] {
        action = [ & ] {
            const auto m = model_file( model_path );
            const auto phi = parse( formula_text );
            const EvalOptions opt{ strict };
            const auto& W = m.worlds();
            if ( !world.empty() )
            {
                const auto trace = trace_forcing( m, m.world( world ), phi, opt );
                if ( as_json )
                    std::cout << trace_json( trace, W ).dump( 2 ) << "\n";
                else
                    print_trace( trace, W, pal, 0 );
                return ok;
            }
            const auto truth = truth_set( m, phi, opt );
            if ( as_json )
            {
                json per = json::object();
                for ( std::size_t w = 0; w < W.size(); ++w )
                    per[ W.label( w ) ] = truth.contains( w );
                std::cout << json{ { "formula", render( phi ) }, { "worlds", per }, { "true_in_model", truth.bits() == W.full() } }
                                     .dump( 2 )
                          << "\n";
                return ok;
            }
            for ( std::size_t w = 0; w < W.size(); ++w )
                std::cout << std::left << std::setw( 8 ) << W.label( w ) << pal.yes_no( truth.contains( w ) ) << "\n";
            std::cout << ( truth.bits() == W.full() ? "true in model\n" : "not true in model\n" );
            return ok;
        };
    } );

    auto* truth_cmd = app.add_subcommand( "truth-set", "Worlds forcing a formula" );
    truth_cmd->add_option( "model", model_path, "Model file" )->required();
    truth_cmd->add_option( "formula", formula_text, "Formula" )->required();
    truth_cmd->add_flag( "--strict", strict, "Unknown variables are errors" );
    truth_cmd->add_flag( "--json", as_json );
    truth_cmd->callback( [ & ] {
        action = [ & ] {
            const auto m = model_file( model_path );
            const auto truth = truth_set( m, parse( formula_text ), EvalOptions{ strict } );
            if ( as_json )
                std::cout << json( truth.labels() ).dump() << "\n";
            else
                std::cout << format( truth ) << "\n";
            return ok;
        };
    } );

    // countermodel ----------------------------------------------------------
    std::size_t max_worlds = max_search_worlds;
    std::size_t min_worlds = 1;
    unsigned jobs = 1;
    auto* cm_cmd = app.add_subcommand( "countermodel", "Search bounded models for one refuting a formula" );
    cm_cmd->add_option( "formula", formula_text, "Formula" )->required();
    cm_cmd->add_option( "--min-worlds", min_worlds, "Smallest world count" );
    cm_cmd->add_option( "--max-worlds", max_worlds, "Largest world count (at most 3)" );
    cm_cmd->add_option( "--jobs", jobs, "Worker threads" );
    cm_cmd->add_flag( "--json", as_json );
    cm_cmd->callback( [ & ] {
        action = [ & ] {
            const auto phi = parse( formula_text );
            SearchBounds b;
            b.min_worlds = min_worlds;
            b.max_worlds = max_worlds;
            b.jobs = jobs;
            const auto r = countermodel_search( phi, b );
            if ( as_json )
            {
                json j = { { "formula", render( phi ) },
                           { "found", r.found.has_value() },
                           { "policy", r.policy },
                           { "models_examined", r.models_examined } };
                if ( r.found )
                {
                    j[ "model" ] = io::model_to_json( r.found->model );
                    j[ "world" ] = r.found->model.worlds().label( r.found->world );
                }
                std::cout << j.dump( 2 ) << "\n";
                return ok;
            }
            std::cout << "policy: " << r.policy << "\n";
            if ( !r.found )
            {
                std::cout << "no countermodel within bounds (" << r.models_examined << " models)\n";
                return ok;
            }
            std::cout << "countermodel at world " << r.found->model.worlds().label( r.found->world ) << ":\n"
                      << io::model_to_json( r.found->model ).dump( 2 ) << "\n";
            return ok;
        };
    } );

    // check-proof -----------------------------------------------------------
    std::string proof_path;
    auto* proof_cmd = app.add_subcommand( "check-proof", "Check a derivation file" );
    proof_cmd->add_option( "derivation", proof_path, "Derivation file" )->required();
    proof_cmd->add_flag( "--json", as_json );
    proof_cmd->callback( [ & ] {
        action = [ & ] {
            const auto d = load_file( proof_path, io::load_derivation );
            const auto v = check_derivation( d );
            if ( as_json )
            {
                json j = { { "accepted", v.accepted }, { "derived_rule_steps", v.derived_rule_steps } };
                if ( v.rejected )
                    j[ "rejected" ] = { { "step", v.rejected->index }, { "reason", v.rejected->reason } };
                json schemes = json::array();
                for ( const auto& s : v.schemes )
                    schemes.push_back( s ? json( std::string( to_string( *s ) ) ) : json() );
                j[ "schemes" ] = schemes;
                std::cout << j.dump( 2 ) << "\n";
            }
            else
            {
                for ( std::size_t i = 0; i < d.steps.size(); ++i )
                {
                    std::cout << std::right << std::setw( 3 ) << i + 1 << "  " << std::left << std::setw( 48 )
                              << render( d.steps[ i ].formula ) << "  " << to_string( d.steps[ i ].by );
                    if ( i < v.schemes.size() && v.schemes[ i ] )
                        std::cout << " [" << to_string( *v.schemes[ i ] ) << "]";
                    if ( std::find( v.derived_rule_steps.begin(), v.derived_rule_steps.end(), i + 1 ) != v.derived_rule_steps.end() )
                        std::cout << " (derived rule)";
                    std::cout << "\n";
                }
                if ( v.accepted )
                    std::cout << pal.paint( "accepted", "32" ) << "\n";
                else
                    std::cout << pal.paint( "rejected", "31" ) << " at step " << v.rejected->index << ": " << v.rejected->reason
                              << "\n";
            }
            return v.accepted ? ok : invalid;
        };
    } );

    // oracle ----------------------------------------------------------------
    std::size_t count_n = 0;
    std::string property;
    auto* oracle_cmd = app.add_subcommand( "oracle", "Brute-force enumeration and witness search" );
    oracle_cmd->require_subcommand( 1 );
    auto* count_cmd = oracle_cmd->add_subcommand( "count", "Count infra-topologies on n elements" );
    count_cmd->add_option( "--n", count_n, "Universe size (at most 4)" )->required();
    count_cmd->add_flag( "--generalized", generalized );
    count_cmd->add_option( "--jobs", jobs, "Worker threads" );
    count_cmd->add_flag( "--json", as_json );
    count_cmd->callback( [ & ] {
        action = [ & ] {
            const auto c = oracle::count_infra_topologies( count_n, generalized, jobs );
            if ( as_json )
                std::cout << json{ { "n", count_n }, { "generalized", generalized }, { "count", c } }.dump() << "\n";
            else
                std::cout << c << "\n";
            return ok;
        };
    } );
    auto* witness_cmd = oracle_cmd->add_subcommand( "witness", "Find or refute a witness for a catalog property" );
    witness_cmd->add_option( "property", property, "Property id" )->required();
    witness_cmd->add_flag( "--json", as_json );
    witness_cmd->callback( [ & ] {
        action = [ & ] {
            const auto b = oracle::find_witness( property );
            if ( as_json )
            {
                std::cout << io::witness_to_json( b ).dump( 2 ) << "\n";
                return ok;
            }
            std::cout << b.property << ": " << b.statement << "\n";
            if ( b.seeded )
                std::cout << "published witness: A = " << format( b.seeded->a ) << ", B = " << format( b.seeded->b ) << " in "
                          << format_family( b.seeded->space.universe(), b.seeded->space.masks() ) << " -> "
                          << ( b.seeded_verifies ? "holds" : "FAILS" ) << "\n";
            if ( b.witness )
                std::cout << ( b.quantifier == oracle::Quantifier::May ? "witness" : "counterexample" )
                          << ": A = " << format( b.witness->a ) << ", B = " << format( b.witness->b ) << " in "
                          << format_family( b.witness->space.universe(), b.witness->space.masks() ) << "\n";
            if ( !b.notes.empty() )
                std::cout << b.notes << "\n";
            std::cout << "searched " << b.searched << " cases; " << pal.pass( b.verified ) << "\n";
            return b.verified ? ok : invalid;
        };
    } );
    witness_cmd->footer( [] {
        std::string s = "Properties:";
        for ( const auto& id : oracle::witness_properties() )
            s += "\n  " + id;
        return s;
    }() );

    // paper-suite -----------------------------------------------------------
    std::string filter;
    std::string data_dir = INFRA_DATA_DIR;
    auto* suite_cmd = app.add_subcommand( "paper-suite", "Run the golden example suite and the lemma catalog" );
    suite_cmd->add_option( "--filter", filter, "Group (setfam, interior, closure, algebra, logic, semantics, witness) or name part" );
    suite_cmd->add_option( "--data-dir", data_dir, "Directory with the example files" );
    suite_cmd->add_flag( "--json", as_json );
    suite_cmd->callback( [ & ] {
        action = [ & ] {
            const auto results = run_paper_suite( data_dir, filter );
            const auto failed = std::find_if( results.begin(), results.end(), []( const auto& r ) { return !r.passed; } );
            if ( as_json )
            {
                json arr = json::array();
                for ( const auto& r : results )
                    arr.push_back( { { "name", r.name }, { "group", r.group }, { "passed", r.passed }, { "detail", r.detail },
                                     { "seconds", r.seconds } } );
                std::cout << arr.dump( 2 ) << "\n";
            }
            else
            {
                for ( const auto& r : results )
                    std::cout << pal.pass( r.passed ) << "  " << std::left << std::setw( 10 ) << r.group << std::setw( 56 ) << r.name
                              << r.detail << "\n";
                const auto passed = std::count_if( results.begin(), results.end(), []( const auto& r ) { return r.passed; } );
                std::cout << passed << "/" << results.size() << " checks passed\n";
            }
            if ( results.empty() )
            {
                std::cerr << "no check matches \"" << filter << "\"\n";
                return lookup;
            }
            if ( failed != results.end() )
            {
                std::cerr << "first failing check: " << failed->name << "\n";
                return invalid;
            }
            return ok;
        };
    } );

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::ParseError& e )
    {
        const int code = app.exit( e );
        return code == 0 ? ok : invalid;
    }

    try
    {
        return action ? action() : ok;
    }
    catch ( const ParseError& e )
    {
        std::cerr << "error: " << e.what() << "\n";
        return syntax;
    }
    catch ( const Error& e )
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code( e.kind() );
    }
    catch ( const std::exception& e )
    {
        std::cerr << "error: " << e.what() << "\n";
        return invalid;
    }
}
