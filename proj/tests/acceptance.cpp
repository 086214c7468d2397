// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <infra/infra.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace infra;

namespace
{

using clock_type = std::chrono::steady_clock;

double since( clock_type::time_point start ) { return std::chrono::duration< double >( clock_type::now() - start ).count(); }

struct Outcome
{
    bool ok = true;
    std::ostringstream detail;

    void require( bool cond, const std::string& what )
    {
        if ( !cond && ok )
        {
            ok = false;
            detail.str( "" );
            detail << what;
        }
    }
};

std::string data( const char* name ) { return std::string( INFRA_DATA_DIR ) + "/" + name; }

// 1. Golden examples on the example spaces.
void golden_examples( Outcome& o )
{
    const auto start = clock_type::now();
    std::size_t n = 0;
    for ( const auto& check : paper_checks() )
    {
        const bool spaces = check.group == "setfam" || check.group == "interior" || check.group == "closure"
                            || check.group == "algebra";
        if ( !spaces || check.name.rfind( "lemma: ", 0 ) == 0 )
            continue;
        CheckOutcome r;
        try
        {
            r = check.run( INFRA_DATA_DIR );
        }
        catch ( const std::exception& e )
        {
            r = { false, e.what() };
        }
        ++n;
        o.require( r.passed, check.name + ": " + r.detail );
    }
    const double s = since( start );
    o.require( s < 1.0, "took " + std::to_string( s ) + " s" );
    if ( o.ok )
        o.detail << n << " checks in " << s << " s";
}

// 2. Every lemma over every infra-topology with n <= 4.
void lemma_sweep( Outcome& o )
{
    const auto start = clock_type::now();
    std::uint64_t cases = 0;
    for ( const auto& r : sweep_laws() )
    {
        cases += r.checked;
        o.require( r.passed() && r.checked > 0, r.name + ": " + r.first_violation.value_or( "not checked" ) );
    }
    const double s = since( start );
    o.require( s <= 60.0, "took " + std::to_string( s ) + " s" );
    if ( o.ok )
        o.detail << laws().size() << " laws, " << cases << " cases in " << s << " s";
}

// 3. Witness catalog, including the published witness that does not hold.
void witness_catalog( Outcome& o )
{
    std::size_t discrepancies = 0;
    for ( const auto& id : oracle::witness_properties() )
    {
        const auto b = oracle::find_witness( id );
        o.require( b.verified, id + ": " + b.notes );
        if ( b.quantifier == oracle::Quantifier::May )
        {
            o.require( b.witness.has_value(), id + ": no witness" );
            if ( b.seeded && !b.seeded_verifies )
                ++discrepancies;
        }
        else
            o.require( !b.witness, id + ": counterexample found" );
    }
    const auto flawed = oracle::find_witness( "non-i-genuine-intersection-may-be-i-genuine" );
    o.require( flawed.seeded && !flawed.seeded_verifies, "flawed published witness not detected" );
    o.require( discrepancies == 1, "expected exactly one failing published witness" );
    if ( o.ok )
        o.detail << oracle::witness_properties().size() << " properties, 1 published witness replaced";
}

// 4. Optimized classification against the element-wise oracle.
void differential( Outcome& o )
{
    std::uint64_t exhaustive = 0;
    for ( std::size_t n = 1; n <= 4; ++n )
        for ( bool gen : { false, true } )
            for ( const auto& t : oracle::enumerate_infra_topologies( n, gen ) )
                for ( mask_t a = 0; a <= t.universe().full(); ++a )
                {
                    const Subset s{ t.universe(), a };
                    ++exhaustive;
                    if ( classify( t, s ) != oracle::brute_classify( t, s ) )
                    {
                        o.require( false, "mismatch on " + format( s ) + " in " + format_family( t.universe(), t.masks() ) );
                        return;
                    }
                }
    std::mt19937_64 rng( 20261019 );
    const Universe u = Universe::letters( 8 );
    for ( int i = 0; i < 10000; ++i )
    {
        std::vector< mask_t > seeds( rng() % 7 );
        for ( auto& s : seeds )
            s = rng() & u.full();
        const auto t = generate_infra_topology_masks( u, seeds, rng() % 2 == 0 );
        const Subset s{ u, rng() & u.full() };
        if ( classify( t, s ) != oracle::brute_classify( t, s ) )
        {
            o.require( false, "random mismatch on " + format( s ) + " in " + format_family( u, t.masks() ) );
            return;
        }
    }
    o.detail << exhaustive << " exhaustive + 10000 random cases agree";
}

// Every depth <= 1 formula over p, q.
std::vector< Formula > depth_one()
{
    using namespace fml;
    std::vector< Formula > atoms = { var( "p" ), var( "q" ), top(), bottom() };
    std::vector< Formula > out = atoms;
    for ( const auto& a : atoms )
    {
        out.push_back( neg( a ) );
        out.push_back( box( a ) );
        out.push_back( bbox( a ) );
        for ( const auto& b : atoms )
            for ( Op op : { Op::And, Op::Or, Op::Implies, Op::Iff } )
                out.push_back( Formula::binary( op, a, b ) );
    }
    return out;
}

// 5. Soundness of every axiom and rule on all bounded models.
void soundness( Outcome& o )
{
    const auto start = clock_type::now();
    SearchBounds b;
    b.max_worlds = 3;
    b.variables = { "p", "q" };
    const auto report = soundness_suite( 2, b );
    for ( const auto& e : report.entries )
        o.require( e.passed() && e.checked > 0, e.name + ": " + std::to_string( e.failures ) + " failures" );
    const double s = since( start );
    o.require( s <= 300.0, "took " + std::to_string( s ) + " s" );

    // Literal instantiation on |W| <= 2 as a cross-check of the reduction.
    const auto subs = depth_one();
    std::vector< Program > instances;
    for ( AxiomScheme sc : all_schemes )
        if ( auto pattern = scheme_pattern( sc ) )
            for ( const auto& x : subs )
            {
                if ( pattern->variables().size() == 1 )
                    instances.emplace_back( instantiate( *pattern, { { meta_phi, x } } ) );
                else
                    for ( const auto& y : subs )
                        instances.emplace_back( instantiate( *pattern, { { meta_phi, x }, { meta_psi, y } } ) );
            }
    SearchBounds small;
    small.max_worlds = 2;
    small.variables = { "p", "q" };
    ModelStream stream( small );
    std::uint64_t literal = 0;
    while ( auto m = stream.next() )
        for ( const auto& prog : instances )
        {
            ++literal;
            if ( prog.run( *m ) != m->worlds().full() )
            {
                o.require( false, "literal instance fails" );
                return;
            }
        }
    if ( o.ok )
        o.detail << report.models << " models, " << report.frames << " frames in " << s << " s; " << literal
                 << " literal checks";
}

// Re-validates a countermodel through its file form and re-evaluates phi.
bool refutes( const GitModel& m, std::size_t world, const Formula& phi )
{
    const auto again = io::model_from_json( io::model_to_json( m ) );
    return !forces( again, world, phi );
}

// 6. Countermodels for formulas GIT does not prove.
void countermodels( Outcome& o )
{
    const auto box_top = countermodel_search( parse( "[]true" ), {} );
    o.require( box_top.found && box_top.found->model.size() == 1
                       && refutes( box_top.found->model, box_top.found->world, parse( "[]true" ) ),
               "[]true: no one-world countermodel" );
    for ( const char* text : { "[[]]p -> p", "[[]]p -> []p" } )
    {
        const auto r = countermodel_search( parse( text ), {} );
        o.require( r.found && refutes( r.found->model, r.found->world, parse( text ) ), std::string( text ) + ": none" );
    }
    // NEC: true is valid in the model but []true is not.
    if ( box_top.found )
    {
        const auto& m = box_top.found->model;
        o.require( true_in_model( m, parse( "true" ) ) && !true_in_model( m, parse( "[]true" ) ), "NEC not refuted" );
    }
    if ( o.ok )
        o.detail << "[]true, [[]]p -> p, [[]]p -> []p, NEC refuted and rechecked";
}

// 7. Derivations: accepted premise-free conclusions hold on every model.
void derivations( Outcome& o )
{
    o.require( check_derivation( io::load_derivation( data( "mon_box.json" ) ) ).accepted, "mon_box rejected" );
    o.require( !check_derivation( io::load_derivation( data( "nec.json" ) ) ).accepted, "nec accepted" );
    const auto d = io::load_derivation( data( "box_to_bbox_t.json" ) );
    const auto v = check_derivation( d );
    o.require( v.accepted && d.premises.empty(), "box_to_bbox_t rejected" );
    if ( !o.ok )
        return;
    const auto phi = *conclusion( d );
    const Program prog( phi );
    SearchBounds b;
    b.max_worlds = 3;
    const auto vars = phi.variables();
    b.variables.assign( vars.begin(), vars.end() );
    ModelStream stream( b );
    std::uint64_t n = 0;
    while ( auto m = stream.next() )
    {
        ++n;
        if ( prog.run( *m ) != m->worlds().full() )
        {
            o.require( false, render( phi ) + " fails in a model" );
            return;
        }
    }
    o.detail << render( phi ) << " true in all " << n << " models";
}

// 8. Determinism across job counts and repeated runs.
void determinism( Outcome& o )
{
    for ( int round = 0; round < 2; ++round )
        for ( unsigned jobs : { 1U, 2U, 4U } )
        {
            o.require( oracle::count_infra_topologies( 4, false, jobs ) == 2271, "n=4 count with " + std::to_string( jobs ) + " jobs" );
            o.require( oracle::count_infra_topologies( 4, true, jobs ) == 4542,
                       "generalized n=4 count with " + std::to_string( jobs ) + " jobs" );
        }
    const auto phi = parse( "[[]]p & [[]]q -> [[]](p & q)" );
    const auto first = countermodel_search( phi, {} );
    for ( unsigned jobs : { 1U, 2U, 4U } )
    {
        SearchBounds b;
        b.jobs = jobs;
        const auto r = countermodel_search( phi, b );
        o.require( r.found && first.found && r.found->model_index == first.found->model_index,
                   "countermodel index differs with " + std::to_string( jobs ) + " jobs" );
    }
    if ( o.ok )
        o.detail << "counts 2271/4542 and countermodel index stable for jobs 1, 2, 4";
}

} // namespace

int main()
{
    const std::pair< const char*, std::function< void( Outcome& ) > > criteria[] = {
            { "golden examples", golden_examples },   { "lemma sweep", lemma_sweep },
            { "witness catalog", witness_catalog },   { "differential oracle", differential },
            { "soundness sweep", soundness },         { "countermodels", countermodels },
            { "derivations", derivations },           { "determinism", determinism },
    };
    int failed = 0;
    int index = 0;
    for ( const auto& [ name, run ] : criteria )
    {
        Outcome o;
        try
        {
            run( o );
        }
        catch ( const std::exception& e )
        {
            o.require( false, std::string( "exception: " ) + e.what() );
        }
        failed += o.ok ? 0 : 1;
        std::printf( "%s  %d %-20s %s\n", o.ok ? "PASS" : "FAIL", ++index, name, o.detail.str().c_str() );
        std::fflush( stdout );
    }
    return failed == 0 ? 0 : 1;
}
