#pragma once

#include "logic.hpp"
#include "models.hpp"
#include "semantics.hpp"

#include <atomic>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace infra
{

struct Countermodel
{
    GitModel model;
    std::size_t world;
    std::uint64_t model_index;
};

struct SearchResult
{
    std::optional< Countermodel > found;
    std::uint64_t models_examined = 0;
    std::string policy;
};

// Bounds whose variables are those of `phi` (at most two).
[[nodiscard]] inline SearchBounds bounds_for( const Formula& phi, SearchBounds b = {} )
{
    const auto vars = phi.variables();
    b.variables.assign( vars.begin(), vars.end() );
    return b;
}

// First model (in stream order) with a world refuting phi. With more than
// one job the stream is sharded by model index and any worker's hit wins.
[[nodiscard]] inline SearchResult countermodel_search( const Formula& phi, const SearchBounds& bounds )
{
    const SearchBounds b = bounds_for( phi, bounds );
    const Program program( phi );

    auto first_refuting_world = [ & ]( const GitModel& m ) -> std::optional< std::size_t > {
        const mask_t truth = program.run( m );
        if ( truth == m.worlds().full() )
            return std::nullopt;
        return static_cast< std::size_t >( std::countr_zero( ~truth & m.worlds().full() ) );
    };

    SearchResult result;
    if ( b.jobs <= 1 )
    {
        ModelStream stream( b );
        result.policy = stream.policy();
        while ( auto m = stream.next() )
        {
            ++result.models_examined;
            if ( auto w = first_refuting_world( *m ) )
            {
                result.found = Countermodel{ std::move( *m ), *w, result.models_examined - 1 };
                break;
            }
        }
        return result;
    }

    // Workers stop once past the best hit so far, so the lowest index wins.
    std::atomic< std::uint64_t > best{ std::numeric_limits< std::uint64_t >::max() };
    std::atomic< std::uint64_t > examined{ 0 };
    std::mutex guard;
    std::vector< std::thread > workers;
    for ( unsigned j = 0; j < b.jobs; ++j )
        workers.emplace_back( [ &, j ] {
            ModelStream stream( b );
            while ( stream.index() < best.load() )
            {
                const std::uint64_t index = stream.index();
                auto m = stream.next();
                if ( !m )
                    break;
                if ( index % b.jobs != j )
                    continue;
                ++examined;
                if ( auto w = first_refuting_world( *m ) )
                {
                    std::lock_guard lock( guard );
                    if ( index < best.load() )
                    {
                        result.found = Countermodel{ std::move( *m ), *w, index };
                        best = index;
                    }
                    break;
                }
            }
        } );
    for ( auto& w : workers )
        w.join();
    result.models_examined = examined;
    result.policy = describe_policy( b );
    return result;
}

// ---------------------------------------------------------------------------
// Soundness sweep
// ---------------------------------------------------------------------------

struct SoundnessEntry
{
    std::string name;
    // Rules like NEC are expected to fail; the entry passes when a
    // countermodel is found.
    bool expect_failure = false;
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
    std::optional< Countermodel > countermodel;

    [[nodiscard]] bool passed() const
    {
        return expect_failure ? countermodel.has_value() : failures == 0;
    }
};

struct SoundnessReport
{
    std::string policy;
    std::uint64_t frames = 0;
    std::uint64_t models = 0;
    std::vector< SoundnessEntry > entries;

    [[nodiscard]] bool passed() const
    {
        return std::all_of( entries.begin(), entries.end(), []( const auto& e ) { return e.passed(); } );
    }
};

// Truth sets realised in model m by formulas of depth ≤ depth over the
// given variables, as a bitmap indexed by subset value (|W| ≤ 6). Forcing
// is compositional over truth sets, so closing the base sets under the
// set-level connectives yields exactly the truth sets of those formulas.
[[nodiscard]] inline std::uint64_t realised_truth_sets( const GitModel& m, const std::vector< std::string >& variables,
                                                        std::size_t depth )
{
    const FrameSemantics sem( m );
    std::vector< mask_t > level{ 0, m.worlds().full() };
    for ( const auto& v : variables )
        level.push_back( m.value_of( v ).value_or( 0 ) );
    auto as_bitmap = [ & ]( const std::vector< mask_t >& sets ) {
        std::uint64_t bits = 0;
        for ( mask_t s : sets )
            bits |= std::uint64_t{ 1 } << s;
        return bits;
    };
    std::uint64_t seen = as_bitmap( level );
    for ( std::size_t d = 0; d < depth; ++d )
    {
        std::vector< mask_t > current;
        for ( mask_t s = 0; s < 64; ++s )
            if ( ( seen >> s ) & 1U )
                current.push_back( s );
        std::uint64_t next = seen;
        for ( mask_t a : current )
        {
            for ( Op op : { Op::Not, Op::Box, Op::BBox } )
                next |= std::uint64_t{ 1 } << sem.apply( op, a );
            for ( mask_t b : current )
                for ( Op op : { Op::And, Op::Or, Op::Implies, Op::Iff } )
                    next |= std::uint64_t{ 1 } << sem.apply( op, a, b );
        }
        seen = next;
    }
    return seen;
}

namespace detail
{

// A checked schema: a formula over metavariables, or a rule whose
// premises/conclusion are formulas over metavariables.
struct schema
{
    std::string name;
    std::vector< Program > premises;
    Program conclusion;
    bool expect_failure = false;
};

inline std::vector< schema > soundness_schemas()
{
    std::vector< schema > out;
    auto axiom = [ & ]( std::string name, const Formula& f ) { out.push_back( { std::move( name ), {}, Program( f ), false } ); };
    auto rule = [ & ]( std::string name, std::vector< const char* > premises, const char* conclusion, bool fail = false ) {
        std::vector< Program > ps;
        for ( const char* p : premises )
            ps.emplace_back( parse( p ) );
        out.push_back( { std::move( name ), std::move( ps ), Program( parse( conclusion ) ), fail } );
    };

    for ( AxiomScheme s : all_schemes )
        if ( auto p = scheme_pattern( s ) )
            axiom( std::string( to_string( s ) ), *p );
    const auto cpc = cpc_catalog();
    for ( std::size_t i = 0; i < cpc.size(); ++i )
        axiom( "CPC[" + render( cpc[ i ] ) + "]", cpc[ i ] );

    rule( "rule MP", { "phi", "phi -> psi" }, "psi" );
    rule( "rule RE_box", { "phi <-> psi" }, "[]phi <-> []psi" );
    rule( "rule RE_bbox", { "phi <-> psi" }, "[[]]phi <-> [[]]psi" );
    rule( "derived rule Mon_box", { "phi -> psi" }, "[]phi -> []psi" );
    rule( "rule NEC (not in GIT)", { "phi" }, "[]phi", true );
    return out;
}

} // namespace detail

// Checks every GIT axiom scheme and rule in every model of the bounds, with
// the metavariables instantiated by all formulas of depth ≤ depth over the
// bound variables. An instance's truth set depends only on the truth sets
// of the substituted formulas, so each frame is checked once for every
// tuple of realised truth sets (the union over all valuations).
[[nodiscard]] inline SoundnessReport soundness_suite( std::size_t depth, const SearchBounds& bounds )
{
    if ( depth > 3 )
        throw Error( ErrorKind::BoundsTooLarge, "instance depth is limited to 3" );
    auto schemas = detail::soundness_schemas();

    SoundnessReport report;
    for ( const auto& s : schemas )
        report.entries.push_back( { s.name, s.expect_failure, 0, 0, std::nullopt } );

    ModelStream stream( bounds );
    report.policy = stream.policy();

    // Metavariable slots of each schema, unioned over its formulas, and for
    // every formula the position of each of its slots in that union.
    struct layout
    {
        std::vector< std::string > slots;
        std::vector< std::vector< std::size_t > > premise_at;
        std::vector< std::size_t > conclusion_at;
    };
    std::vector< layout > layouts;
    for ( const auto& sc : schemas )
    {
        layout l;
        l.slots = sc.conclusion.slots();
        for ( const auto& p : sc.premises )
            for ( const auto& name : p.slots() )
                if ( std::find( l.slots.begin(), l.slots.end(), name ) == l.slots.end() )
                    l.slots.push_back( name );
        auto positions = [ & ]( const Program& prog ) {
            std::vector< std::size_t > at;
            for ( const auto& name : prog.slots() )
                at.push_back( static_cast< std::size_t >( std::find( l.slots.begin(), l.slots.end(), name ) - l.slots.begin() ) );
            return at;
        };
        for ( const auto& p : sc.premises )
            l.premise_at.push_back( positions( p ) );
        l.conclusion_at = positions( sc.conclusion );
        layouts.push_back( std::move( l ) );
    }

    auto check_frame = [ & ]( const GitModel& frame, std::uint64_t realised, std::uint64_t frame_index ) {
        const FrameSemantics sem( frame );
        const mask_t full = frame.worlds().full();
        std::vector< mask_t > sets;
        for ( mask_t s = 0; s < 64; ++s )
            if ( ( realised >> s ) & 1U )
                sets.push_back( s );

        std::vector< mask_t > values;
        for ( std::size_t k = 0; k < schemas.size(); ++k )
        {
            const auto& sc = schemas[ k ];
            const auto& l = layouts[ k ];
            auto& entry = report.entries[ k ];

            std::vector< std::size_t > digits( l.slots.size(), 0 );
            auto run = [ & ]( const Program& prog, const std::vector< std::size_t >& at ) {
                values.clear();
                for ( std::size_t i : at )
                    values.push_back( sets[ digits[ i ] ] );
                return prog.run( sem, values );
            };
            while ( true )
            {
                bool premises_hold = true;
                for ( std::size_t p = 0; p < sc.premises.size() && premises_hold; ++p )
                    premises_hold = run( sc.premises[ p ], l.premise_at[ p ] ) == full;
                if ( premises_hold )
                {
                    ++entry.checked;
                    const mask_t truth = run( sc.conclusion, l.conclusion_at );
                    if ( truth != full )
                    {
                        ++entry.failures;
                        if ( !entry.countermodel )
                        {
                            std::map< std::string, mask_t > val;
                            for ( std::size_t i = 0; i < l.slots.size(); ++i )
                                val[ l.slots[ i ] ] = sets[ digits[ i ] ];
                            entry.countermodel = Countermodel{
                                    frame.with_valuation( std::move( val ) ),
                                    static_cast< std::size_t >( std::countr_zero( ~truth & full ) ), frame_index };
                        }
                    }
                }
                std::size_t i = 0;
                for ( ; i < digits.size(); ++i )
                {
                    if ( ++digits[ i ] < sets.size() )
                        break;
                    digits[ i ] = 0;
                }
                if ( i == digits.size() )
                    break;
            }
        }
    };

    std::optional< GitModel > frame;
    std::uint64_t realised = 0;
    std::uint64_t frame_index = 0;
    while ( true )
    {
        const bool starts = stream.at_frame_start();
        auto m = stream.next();
        if ( ( starts || !m ) && frame )
        {
            check_frame( *frame, realised, frame_index );
            ++report.frames;
        }
        if ( !m )
            break;
        if ( starts )
        {
            frame = *m;
            realised = 0;
            frame_index = stream.index() - 1;
        }
        ++report.models;
        realised |= realised_truth_sets( *m, bounds.variables, depth );
    }
    return report;
}

} // namespace infra
