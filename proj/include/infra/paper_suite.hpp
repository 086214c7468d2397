#pragma once

#include "algebra.hpp"
#include "io.hpp"
#include "lemmas.hpp"
#include "logic.hpp"
#include "operators.hpp"
#include "oracle.hpp"
#include "search.hpp"
#include "semantics.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace infra
{

struct CheckOutcome
{
    bool passed = false;
    std::string detail;
};

struct PaperCheck
{
    std::string name;
    std::string group;
    std::function< CheckOutcome( const std::filesystem::path& data_dir ) > run;
};

struct CheckResult
{
    std::string name;
    std::string group;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

namespace detail
{

// Accumulates expectations; the first mismatch is kept as the detail.
class expect
{
    bool _ok = true;
    std::ostringstream _log;

public:
    expect& that( bool cond, const std::string& what )
    {
        if ( !cond && _ok )
        {
            _ok = false;
            _log.str( "" );
            _log << "expected " << what;
        }
        return *this;
    }

    template < typename T >
    expect& equal( const T& got, const T& want, const std::string& what )
    {
        return that( got == want, what );
    }

    expect& note( const std::string& s )
    {
        if ( _ok )
            _log << ( _log.tellp() > 0 ? "; " : "" ) << s;
        return *this;
    }

    [[nodiscard]] CheckOutcome done() const { return { _ok, _log.str() }; }
};

inline InfraTopology load( const std::filesystem::path& dir, const char* file )
{
    return io::load_space( ( dir / file ).string() );
}

inline Subset set( const InfraTopology& t, std::initializer_list< std::string_view > labels )
{
    return subset_of( t.universe(), labels );
}

inline std::string show( const Subset& s ) { return format( s ); }

inline std::vector< mask_t > family_of( const InfraTopology& t, std::initializer_list< std::initializer_list< std::string_view > > sets )
{
    std::vector< mask_t > out;
    for ( auto s : sets )
        out.push_back( subset_of( t.universe(), s ).bits() );
    return canonical_family( std::move( out ) );
}

inline CheckOutcome law_check( const std::string& law_name )
{
    static const auto swept = sweep_laws( oracle::max_enumeration_universe );
    for ( const auto& r : swept )
        if ( r.name == law_name )
        {
            if ( r.passed() )
                return { true, std::to_string( r.checked ) + " cases, no violation" };
            return { false, std::to_string( r.violations ) + " violations, first: " + r.first_violation.value_or( "?" ) };
        }
    return { false, "unknown law" };
}

} // namespace detail

[[nodiscard]] inline std::vector< PaperCheck > paper_checks()
{
    using detail::expect;
    using detail::load;
    using detail::set;
    using detail::show;
    using dir_t = const std::filesystem::path&;
    std::vector< PaperCheck > checks;

    // --- spaces --------------------------------------------------------
    checks.push_back( { "example-1-is-infra-topology", "setfam", []( dir_t dir ) {
                           const auto t = load( dir, "ex1.json" );
                           return expect{}
                                   .equal( t.universe().labels(), std::vector< std::string >{ "a", "b", "c" }, "universe {a, b, c}" )
                                   .equal( std::vector< mask_t >( t.masks().begin(), t.masks().end() ),
                                           detail::family_of( t, { {}, { "a", "b", "c" }, { "a" }, { "b" } } ),
                                           "family {}, X, {a}, {b}" )
                                   .note( format_family( t.universe(), t.masks() ) )
                                   .done();
                       } } );
    checks.push_back( { "union-of-examples-2-3-not-intersection-closed", "setfam", []( dir_t dir ) {
                           const auto t = load( dir, "ex2.json" );
                           const auto mu = load( dir, "ex3.json" );
                           std::vector< mask_t > joined( t.masks().begin(), t.masks().end() );
                           joined.insert( joined.end(), mu.masks().begin(), mu.masks().end() );
                           const auto v = InfraTopology::validate( t.universe(), joined, false );
                           const auto* report = std::get_if< ViolationReport >( &v );
                           expect e;
                           e.that( report != nullptr, "validation to fail" );
                           if ( report )
                           {
                               e.that( report->violation == Violation::NotIntersectionClosed, "NotIntersectionClosed" );
                               e.that( report->witness && report->witness->first == set( t, { "a", "b" } )
                                               && report->witness->second == set( t, { "b", "c" } ),
                                       "witness ({a, b}, {b, c})" );
                               e.note( report->describe() );
                           }
                           return e.done();
                       } } );

    // --- interior ------------------------------------------------------
    checks.push_back( { "iint-abc-in-example-2", "interior", []( dir_t dir ) {
                           const auto t = load( dir, "ex2.json" );
                           const auto a = set( t, { "a", "b", "c" } );
                           const auto r = classify( t, a );
                           return expect{}
                                   .equal( r.i_interior, a, "iInt({a, b, c}) = {a, b, c}" )
                                   .that( !r.i_genuine, "{a, b, c} not i-genuine" )
                                   .that( r == oracle::brute_classify( t, a ), "brute-force classification to agree" )
                                   .note( "iInt = " + show( r.i_interior ) + ", i-genuine = false" )
                                   .done();
                       } } );
    checks.push_back( { "iint-abd-in-example-2", "interior", []( dir_t dir ) {
                           const auto t = load( dir, "ex2.json" );
                           const auto r = classify( t, set( t, { "a", "b", "d" } ) );
                           return expect{}
                                   .equal( r.i_interior, set( t, { "a", "b" } ), "iInt({a, b, d}) = {a, b}" )
                                   .that( r.i_genuine, "{a, b, d} i-genuine" )
                                   .note( "iInt = " + show( r.i_interior ) )
                                   .done();
                       } } );
    checks.push_back( { "example-2-coarser-than-igtau", "interior", []( dir_t dir ) {
                           const auto t = load( dir, "ex2.json" );
                           const auto ig = derived_family( t, FamilyKind::IGenuine );
                           const auto tau = t.members();
                           return expect{}
                                   .that( compare_families( tau, ig ) == FamilyOrder::Coarser, "tau coarser than igtau" )
                                   .note( std::to_string( tau.size() ) + " open vs " + std::to_string( ig.size() ) + " i-genuine" )
                                   .done();
                       } } );
    checks.push_back( { "example-2-singletons-i-genuine", "interior", []( dir_t dir ) {
                           const auto t = load( dir, "ex2.json" );
                           expect e;
                           for ( std::size_t i = 0; i < t.universe().size(); ++i )
                               e.that( classify( t, Subset{ t.universe(), mask_t{ 1 } << i } ).i_genuine,
                                       "{" + t.universe().label( i ) + "} i-genuine" );
                           return e.done();
                       } } );
    for ( const auto& law : laws() )
        if ( law.group == "interior" )
            checks.push_back( { "lemma: " + law.name, "interior", [ name = law.name ]( dir_t ) { return detail::law_check( name ); } } );

    // --- closure -------------------------------------------------------
    checks.push_back( { "icl-d-in-example-2", "closure", []( dir_t dir ) {
                           const auto t = load( dir, "ex2.json" );
                           const auto d = set( t, { "d" } );
                           const auto r = classify( t, d );
                           return expect{}
                                   .equal( r.i_closure, d, "iCl({d}) = {d}" )
                                   .that( !r.c_genuine, "{d} not c-genuine" )
                                   .that( r.ps_infra_closed, "{d} ps-infra-closed" )
                                   .note( "iCl = " + show( r.i_closure ) )
                                   .done();
                       } } );
    checks.push_back( { "icl-ab-in-example-2", "closure", []( dir_t dir ) {
                           const auto t = load( dir, "ex2.json" );
                           const auto r = classify( t, set( t, { "a", "b" } ) );
                           return expect{}
                                   .equal( r.i_closure, set( t, { "a", "b", "d" } ), "iCl({a, b}) = {a, b, d}" )
                                   .that( r.c_genuine, "{a, b} c-genuine" )
                                   .note( "iCl = " + show( r.i_closure ) )
                                   .done();
                       } } );
    checks.push_back( { "closed-intersection-escapes-in-example-2", "closure", []( dir_t dir ) {
                           const auto t = load( dir, "ex2.json" );
                           const auto cd = set( t, { "c", "d" } );
                           const auto bd = set( t, { "b", "d" } );
                           auto closed = [ & ]( const Subset& s ) { return is_infra_closed_mask( t, s.bits() ); };
                           return expect{}
                                   .that( closed( cd ) && closed( bd ), "{c, d} and {b, d} infra-closed" )
                                   .equal( cd & bd, set( t, { "d" } ), "{c, d} & {b, d} = {d}" )
                                   .that( !closed( cd & bd ), "{d} not infra-closed" )
                                   .done();
                       } } );
    checks.push_back( { "closed-family-of-example-4", "closure", []( dir_t dir ) {
                           const auto t = load( dir, "ex4.json" );
                           const auto got = derived_family_masks( t, FamilyKind::InfraClosed );
                           const auto want = detail::family_of(
                                   t, { {}, { "a", "b", "c", "d" }, { "b", "c", "d" }, { "a", "c", "d" }, { "a", "b", "d" }, { "c", "d" }, { "d" } } );
                           return expect{}.equal( got, want, "the seven-set closed family" ).note( format_family( t.universe(), got ) ).done();
                       } } );
    checks.push_back( { "icl-intersection-strict-in-example-4", "closure", []( dir_t dir ) {
                           const auto t = load( dir, "ex4.json" );
                           const auto b = set( t, { "b" } );
                           const auto c = set( t, { "c" } );
                           const auto clb = i_closure( t, b );
                           const auto clc = i_closure( t, c );
                           const auto clbc = i_closure( t, b & c );
                           return expect{}
                                   .equal( clb, set( t, { "b", "d" } ), "iCl({b}) = {b, d}" )
                                   .equal( clc, set( t, { "c", "d" } ), "iCl({c}) = {c, d}" )
                                   .equal( clbc, set( t, {} ), "iCl({b} & {c}) = {}" )
                                   .equal( clb & clc, set( t, { "d" } ), "iCl({b}) & iCl({c}) = {d}" )
                                   .that( clbc.subset_of( clb & clc ) && clbc != ( clb & clc ), "strict inclusion" )
                                   .done();
                       } } );
    for ( const auto& law : laws() )
        if ( law.group == "closure" )
            checks.push_back( { "lemma: " + law.name, "closure", [ name = law.name ]( dir_t ) { return detail::law_check( name ); } } );

    // --- algebra -------------------------------------------------------
    checks.push_back( { "union-check-examples-2-3", "algebra", []( dir_t dir ) {
                           const auto t = load( dir, "ex2.json" );
                           const auto mu = load( dir, "ex3.json" );
                           const auto r = union_check( t, mu );
                           const auto* bad = std::get_if< UnionInvalid >( &r );
                           expect e;
                           e.that( bad != nullptr, "union to be invalid" );
                           if ( bad )
                               e.equal( bad->a & bad->b, set( t, { "b" } ), "witness intersection {b}" )
                                       .note( show( bad->a ) + " & " + show( bad->b ) + " = " + show( bad->a & bad->b ) );
                           return e.done();
                       } } );

    // --- logic ---------------------------------------------------------
    checks.push_back( { "parse-m-box-scheme", "logic", []( dir_t ) {
                           using namespace fml;
                           const auto p = var( "p" );
                           const auto q = var( "q" );
                           const auto f = parse( "[](p & q) -> []p & []q" );
                           return expect{}
                                   .equal( f, imp( box( conj( p, q ) ), conj( box( p ), box( q ) ) ), "the M_box tree" )
                                   .equal( match_axiom( f ), std::optional{ AxiomScheme::M_box }, "M_box match" )
                                   .note( render( f ) )
                                   .done();
                       } } );
    checks.push_back( { "match-t-box-and-box-to-bbox", "logic", []( dir_t ) {
                           return expect{}
                                   .equal( match_axiom( parse( "[]p -> p" ) ), std::optional{ AxiomScheme::T_box }, "T_box" )
                                   .equal( match_axiom( parse( "[]p -> [[]]p" ) ), std::optional{ AxiomScheme::BoxToBBox }, "BoxToBBox" )
                                   .done();
                       } } );
    checks.push_back( { "derivation-m-and-c-accepted", "logic", []( dir_t ) {
                           Derivation d;
                           d.steps = { { parse( "[](p&q) -> []p & []q" ), just::Axiom{} },
                                       { parse( "[]p & []q -> [](p&q)" ), just::Axiom{} } };
                           return expect{}.that( check_derivation( d ).accepted, "acceptance" ).done();
                       } } );
    checks.push_back( { "derivation-mon-box-flagged", "logic", []( dir_t ) {
                           Derivation d;
                           d.premises = { parse( "p -> q" ) };
                           d.steps = { { parse( "p -> q" ), just::Premise{} }, { parse( "[]p -> []q" ), just::MonBox{ 1 } } };
                           const auto v = check_derivation( d );
                           return expect{}
                                   .that( v.accepted, "acceptance" )
                                   .equal( v.derived_rule_steps, std::vector< std::size_t >{ 2 }, "step 2 flagged as derived" )
                                   .done();
                       } } );
    checks.push_back( { "derivation-nec-rejected", "logic", []( dir_t ) {
                           Derivation d;
                           d.premises = { parse( "p" ) };
                           d.steps = { { parse( "p" ), just::Premise{} }, { parse( "[]p" ), just::Nec{ 1 } } };
                           const auto v = check_derivation( d );
                           expect e;
                           e.that( !v.accepted && v.rejected && v.rejected->index == 2, "rejection at step 2" );
                           if ( v.rejected )
                               e.note( v.rejected->reason );
                           return e.done();
                       } } );

    // --- semantics -----------------------------------------------------
    checks.push_back( { "box-to-bbox-true-in-model-1", "semantics", []( dir_t dir ) {
                           const auto m = io::load_model( ( dir / "m1.json" ).string() );
                           return expect{}.that( true_in_model( m, parse( "[]p -> [[]]p" ) ), "[]p -> [[]]p true in m1" ).done();
                       } } );
    checks.push_back( { "t-box-has-no-countermodel", "semantics", []( dir_t ) {
                           const auto r = countermodel_search( parse( "[]p -> p" ), {} );
                           return expect{}
                                   .that( !r.found, "no countermodel" )
                                   .note( std::to_string( r.models_examined ) + " models" )
                                   .done();
                       } } );
    checks.push_back( { "t-box-and-box-to-bbox-sound", "semantics", []( dir_t ) {
                           SearchBounds b;
                           b.variables = { "p" };
                           const auto report = soundness_suite( 1, b );
                           expect e;
                           for ( const auto& entry : report.entries )
                               if ( entry.name == "T_box" || entry.name == "BoxToBBox" )
                                   e.that( entry.passed() && entry.checked > 0, entry.name + " valid on every model" )
                                           .note( entry.name + ": " + std::to_string( entry.checked ) + " instances" );
                           return e.done();
                       } } );

    // --- witness catalog -----------------------------------------------
    for ( const auto& id : oracle::witness_properties() )
        checks.push_back( { "witness: " + id, "witness", [ id ]( dir_t ) {
                               const auto b = oracle::find_witness( id );
                               expect e;
                               e.that( b.verified, "a verified outcome" );
                               if ( b.seeded && !b.seeded_verifies && b.verified )
                               {
                                   const auto& s = *b.seeded;
                                   const auto meet = s.a & s.b;
                                   e.note( "DISCREPANCY: published witness fails, " + format( meet ) + " is not open in "
                                           + format_family( s.space.universe(), s.space.masks() ) );
                               }
                               if ( b.witness )
                                   e.note( "witness A = " + format( b.witness->a ) + ", B = " + format( b.witness->b ) + " in "
                                           + format_family( b.witness->space.universe(), b.witness->space.masks() ) );
                               else
                                   e.note( b.notes );
                               return e.done();
                           } } );
    return checks;
}

// Runs checks whose group equals `filter` or whose name contains it.
[[nodiscard]] inline std::vector< CheckResult > run_paper_suite( const std::filesystem::path& data_dir,
                                                                 const std::string& filter = {} )
{
    std::vector< CheckResult > results;
    for ( const auto& check : paper_checks() )
    {
        if ( !filter.empty() && check.group != filter && check.name.find( filter ) == std::string::npos )
            continue;
        const auto start = std::chrono::steady_clock::now();
        CheckOutcome outcome;
        try
        {
            outcome = check.run( data_dir );
        }
        catch ( const std::exception& e )
        {
            outcome = { false, std::string( "error: " ) + e.what() };
        }
        const double seconds = std::chrono::duration< double >( std::chrono::steady_clock::now() - start ).count();
        results.push_back( { check.name, check.group, outcome.passed, outcome.detail, seconds } );
    }
    return results;
}

} // namespace infra
