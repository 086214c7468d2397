#pragma once

// Reference implementations that deliberately avoid the optimized code
// paths: sets are handled element by element and every notion is computed
// straight from its definition.

#include "operators.hpp"
#include "setfam.hpp"

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace infra::oracle
{

inline constexpr std::size_t max_enumeration_universe = 4;

// Pull-based stream of every infra-topology on a universe of size n ≤ 4.
// Candidates are bitmasks over the subsets of X other than the hardwired
// ones (∅ always, X unless generalized); a candidate is kept iff its family
// is closed under pairwise intersection.
class InfraTopologyStream
{
    Universe _universe;
    bool _generalized;
    std::vector< mask_t > _candidates;
    std::uint64_t _next = 0;
    std::uint64_t _end = 0;
    std::uint64_t _stride = 1;

public:
    InfraTopologyStream( std::size_t n, bool generalized, std::uint64_t shard = 0, std::uint64_t shards = 1 )
        : _universe{ Universe::letters( n <= max_enumeration_universe ? n : 0 ) }, _generalized{ generalized }
    {
        if ( n > max_enumeration_universe )
            throw Error( ErrorKind::UniverseTooLarge,
                         "enumeration supports at most " + std::to_string( max_enumeration_universe ) + " elements" );
        const mask_t full = full_mask( n );
        for ( mask_t s = 1; s <= full; ++s )
            if ( generalized || s != full )
                _candidates.push_back( s );
        _end = std::uint64_t{ 1 } << _candidates.size();
        _next = shard;
        _stride = shards;
    }

    [[nodiscard]] const Universe& universe() const { return _universe; }
    [[nodiscard]] std::uint64_t candidate_count() const { return _end; }

    std::optional< InfraTopology > next()
    {
        const mask_t full = _universe.full();
        while ( _next < _end )
        {
            const std::uint64_t pick = _next;
            _next += _stride;

            // Membership bitmap indexed by subset value (at most 16 subsets).
            std::uint32_t present = 1U;
            if ( !_generalized )
                present |= 1U << full;
            for ( std::size_t i = 0; i < _candidates.size(); ++i )
                if ( ( pick >> i ) & 1U )
                    present |= 1U << _candidates[ i ];

            bool closed = true;
            for ( mask_t a = 0; a <= full && closed; ++a )
                for ( mask_t b = a + 1; b <= full && closed; ++b )
                    if ( ( ( present >> a ) & 1U ) && ( ( present >> b ) & 1U ) && !( ( present >> ( a & b ) ) & 1U ) )
                        closed = false;
            if ( !closed )
                continue;

            std::vector< mask_t > members;
            for ( mask_t s = 0; s <= full; ++s )
                if ( ( present >> s ) & 1U )
                    members.push_back( s );
            return InfraTopology::from_canonical_unchecked( _universe, std::move( members ), _generalized );
        }
        return std::nullopt;
    }
};

[[nodiscard]] inline std::vector< InfraTopology > enumerate_infra_topologies( std::size_t n, bool generalized )
{
    InfraTopologyStream stream( n, generalized );
    std::vector< InfraTopology > out;
    while ( auto t = stream.next() )
        out.push_back( std::move( *t ) );
    return out;
}

// Count-only mode; shards the candidate range across `jobs` workers.
[[nodiscard]] inline std::uint64_t count_infra_topologies( std::size_t n, bool generalized, unsigned jobs = 1 )
{
    if ( jobs <= 1 )
    {
        InfraTopologyStream stream( n, generalized );
        std::uint64_t count = 0;
        while ( stream.next() )
            ++count;
        return count;
    }
    std::atomic< std::uint64_t > total{ 0 };
    std::vector< std::thread > workers;
    for ( unsigned j = 0; j < jobs; ++j )
        workers.emplace_back( [ &, j ] {
            InfraTopologyStream stream( n, generalized, j, jobs );
            std::uint64_t local = 0;
            while ( stream.next() )
                ++local;
            total += local;
        } );
    for ( auto& w : workers )
        w.join();
    return total;
}

// ---------------------------------------------------------------------------
// Definition-level classification
// ---------------------------------------------------------------------------

using elements = std::vector< bool >;

struct literal_space
{
    std::size_t n = 0;
    std::vector< elements > open; // members of τ
};

[[nodiscard]] inline literal_space to_literal( const InfraTopology& t )
{
    literal_space s;
    s.n = t.universe().size();
    for ( const Subset& m : t.members() )
    {
        elements e( s.n, false );
        for ( std::size_t i = 0; i < s.n; ++i )
            e[ i ] = m.contains( i );
        s.open.push_back( std::move( e ) );
    }
    return s;
}

[[nodiscard]] inline elements to_elements( const Subset& a )
{
    elements e( a.universe().size(), false );
    for ( std::size_t i = 0; i < e.size(); ++i )
        e[ i ] = a.contains( i );
    return e;
}

[[nodiscard]] inline bool included( const elements& a, const elements& b )
{
    for ( std::size_t i = 0; i < a.size(); ++i )
        if ( a[ i ] && !b[ i ] )
            return false;
    return true;
}

[[nodiscard]] inline bool meets( const elements& a, const elements& b )
{
    for ( std::size_t i = 0; i < a.size(); ++i )
        if ( a[ i ] && b[ i ] )
            return true;
    return false;
}

[[nodiscard]] inline bool nonempty( const elements& a )
{
    for ( bool x : a )
        if ( x )
            return true;
    return false;
}

[[nodiscard]] inline elements complement_of( const elements& a )
{
    elements out( a.size() );
    for ( std::size_t i = 0; i < a.size(); ++i )
        out[ i ] = !a[ i ];
    return out;
}

[[nodiscard]] inline bool is_open( const literal_space& s, const elements& a )
{
    for ( const auto& o : s.open )
        if ( o == a )
            return true;
    return false;
}

// An infra-closed set is one whose complement is a member of τ.
[[nodiscard]] inline bool is_closed( const literal_space& s, const elements& a ) { return is_open( s, complement_of( a ) ); }

// Union of every infra-open set contained in A.
[[nodiscard]] inline elements interior( const literal_space& s, const elements& a )
{
    elements out( s.n, false );
    for ( const auto& o : s.open )
        if ( included( o, a ) )
            for ( std::size_t i = 0; i < s.n; ++i )
                out[ i ] = out[ i ] || o[ i ];
    return out;
}

// Intersection of every infra-closed set containing A.
[[nodiscard]] inline elements closure( const literal_space& s, const elements& a )
{
    elements out( s.n, true );
    for ( const auto& o : s.open )
    {
        const elements c = complement_of( o );
        if ( included( a, c ) )
            for ( std::size_t i = 0; i < s.n; ++i )
                out[ i ] = out[ i ] && c[ i ];
    }
    return out;
}

[[nodiscard]] inline bool i_genuine( const literal_space& s, const elements& a ) { return is_open( s, interior( s, a ) ); }
[[nodiscard]] inline bool c_genuine( const literal_space& s, const elements& a ) { return is_closed( s, closure( s, a ) ); }

// Every subset of X, element-wise, in counting order.
[[nodiscard]] inline std::vector< elements > all_subsets( std::size_t n )
{
    std::vector< elements > out;
    for ( std::uint64_t code = 0; code < ( std::uint64_t{ 1 } << n ); ++code )
    {
        elements e( n );
        for ( std::size_t i = 0; i < n; ++i )
            e[ i ] = ( code >> i ) & 1U;
        out.push_back( std::move( e ) );
    }
    return out;
}

[[nodiscard]] inline ClassificationReport brute_classify( const InfraTopology& t, const Subset& a )
{
    require_same( t.universe(), a.universe() );
    if ( t.universe().size() > max_scan_universe )
        throw Error( ErrorKind::UniverseTooLargeForScan, "brute_classify needs a universe of at most 20 elements" );
    const literal_space s = to_literal( t );
    const elements e = to_elements( a );
    const elements in = interior( s, e );
    const elements cl = closure( s, e );

    auto as_subset = [ & ]( const elements& x ) {
        mask_t bits = 0;
        for ( std::size_t i = 0; i < x.size(); ++i )
            if ( x[ i ] )
                bits |= mask_t{ 1 } << i;
        return Subset{ t.universe(), bits };
    };

    ClassificationReport r;
    r.subset = a;
    r.i_interior = as_subset( in );
    r.i_closure = as_subset( cl );
    r.infra_open = is_open( s, e );
    r.infra_closed = is_closed( s, e );
    r.i_genuine = is_open( s, in );
    r.strictly_i_genuine = r.i_genuine && nonempty( in );
    r.c_genuine = is_closed( s, cl );
    r.ps_infra_open = in == e;
    r.ps_infra_closed = cl == e;

    r.ps_dense = true;
    r.strictly_dense = true;
    for ( const auto& other : all_subsets( s.n ) )
    {
        if ( !nonempty( other ) || meets( e, other ) )
            continue;
        const elements other_in = interior( s, other );
        if ( other_in == other )
            r.ps_dense = false;
        if ( is_open( s, other_in ) && nonempty( other_in ) )
            r.strictly_dense = false;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Witness catalog for the may/must lemma items about unions and
// intersections of (non-)genuine sets.
// ---------------------------------------------------------------------------

enum class Quantifier
{
    May,  // a witness must exist
    Must, // no counterexample may exist
};

struct WitnessCase
{
    InfraTopology space;
    Subset a;
    Subset b;
};

struct WitnessBundle
{
    std::string property;
    Quantifier quantifier = Quantifier::May;
    std::string statement;
    // The witness (May) or the counterexample that broke a Must item.
    std::optional< WitnessCase > witness;
    // Literature witness and whether it checks out.
    std::optional< WitnessCase > seeded;
    bool seeded_verifies = false;
    // Whether the found/verified outcome matches the catalog expectation.
    bool verified = false;
    // Number of (τ, A, B) triples inspected by the exhaustive part.
    std::uint64_t searched = 0;
    std::string notes;
};

namespace detail
{

struct lemma
{
    std::string id;
    Quantifier quantifier;
    std::string statement;
    // Predicate over (τ, A, B) that a may-witness must satisfy, or that a
    // must-item requires for every pair.
    std::function< bool( const literal_space&, const elements&, const elements& ) > holds;
    // Whether the seeded literature witness is expected to check out.
    bool seeded_expected = true;
    std::function< std::optional< WitnessCase >() > seed;
    // Extra families tried after the exhaustive n ≤ 4 sweep.
    std::function< std::vector< InfraTopology >() > extra_spaces;
};

[[nodiscard]] inline elements unite( const elements& a, const elements& b )
{
    elements out( a.size() );
    for ( std::size_t i = 0; i < a.size(); ++i )
        out[ i ] = a[ i ] || b[ i ];
    return out;
}

[[nodiscard]] inline elements intersect( const elements& a, const elements& b )
{
    elements out( a.size() );
    for ( std::size_t i = 0; i < a.size(); ++i )
        out[ i ] = a[ i ] && b[ i ];
    return out;
}

[[nodiscard]] inline InfraTopology letters_space( std::size_t n, std::initializer_list< std::string_view > members )
{
    const Universe u = Universe::letters( n );
    std::vector< mask_t > family{ 0, u.full() };
    for ( auto m : members )
    {
        mask_t bits = 0;
        for ( char c : m )
            bits |= mask_t{ 1 } << static_cast< std::size_t >( c - 'a' );
        family.push_back( bits );
    }
    return InfraTopology::make( u, std::move( family ) );
}

[[nodiscard]] inline Subset letters_subset( const InfraTopology& t, std::string_view letters )
{
    mask_t bits = 0;
    for ( char c : letters )
        bits |= mask_t{ 1 } << static_cast< std::size_t >( c - 'a' );
    return { t.universe(), bits };
}

[[nodiscard]] inline WitnessCase seeded_case( std::size_t n, std::initializer_list< std::string_view > members,
                                              std::string_view a, std::string_view b )
{
    auto t = letters_space( n, members );
    auto sa = letters_subset( t, a );
    auto sb = letters_subset( t, b );
    return { std::move( t ), std::move( sa ), std::move( sb ) };
}

[[nodiscard]] inline const std::vector< lemma >& catalog()
{
    using S = literal_space;
    using E = elements;
    static const std::vector< lemma > items = {
            { "i-genuine-union-may-fail", Quantifier::May, "The union of two i-genuine sets may not be i-genuine.",
              []( const S& s, const E& a, const E& b ) {
                  return i_genuine( s, a ) && i_genuine( s, b ) && !i_genuine( s, unite( a, b ) );
              },
              true, [] { return std::optional{ seeded_case( 5, { "a", "b", "c", "ab" }, "ab", "c" ) }; }, {} },
            { "non-i-genuine-union-may-be-i-genuine", Quantifier::May,
              "The union of two non-i-genuine sets may be i-genuine.",
              []( const S& s, const E& a, const E& b ) {
                  return !i_genuine( s, a ) && !i_genuine( s, b ) && i_genuine( s, unite( a, b ) );
              },
              true, [] { return std::optional{ seeded_case( 5, { "a", "b", "c", "ab" }, "bcd", "acde" ) }; }, {} },
            { "i-genuine-intersection-is-i-genuine", Quantifier::Must,
              "The intersection of two i-genuine sets is i-genuine.",
              []( const S& s, const E& a, const E& b ) {
                  return !( i_genuine( s, a ) && i_genuine( s, b ) ) || i_genuine( s, intersect( a, b ) );
              },
              true, [] { return std::optional< WitnessCase >{}; }, {} },
            { "non-i-genuine-intersection-may-be-i-genuine", Quantifier::May,
              "The intersection of two non-i-genuine sets may be i-genuine.",
              []( const S& s, const E& a, const E& b ) {
                  return !i_genuine( s, a ) && !i_genuine( s, b ) && i_genuine( s, intersect( a, b ) );
              },
              // The published witness: A ∩ B = {a, b} is not a member of
              // {∅, X, {a}, {b}, {a, c}}, so it does not establish the claim.
              false, [] { return std::optional{ seeded_case( 4, { "a", "b", "ac" }, "abc", "abd" ) }; },
              [] { return std::vector{ letters_space( 5, { "a", "b", "c", "ab" } ) }; } },
            { "c-genuine-union-is-c-genuine", Quantifier::Must, "The union of two c-genuine sets is c-genuine.",
              []( const S& s, const E& a, const E& b ) {
                  return !( c_genuine( s, a ) && c_genuine( s, b ) ) || c_genuine( s, unite( a, b ) );
              },
              true, [] { return std::optional< WitnessCase >{}; }, {} },
            { "non-c-genuine-union-may-be-c-genuine", Quantifier::May,
              "The union of two non-c-genuine sets may be c-genuine.",
              []( const S& s, const E& a, const E& b ) {
                  return !c_genuine( s, a ) && !c_genuine( s, b ) && c_genuine( s, unite( a, b ) );
              },
              true, [] { return std::optional{ seeded_case( 3, { "a", "b", "c" }, "a", "b" ) }; }, {} },
            { "c-genuine-intersection-may-fail", Quantifier::May,
              "The intersection of two c-genuine sets may not be c-genuine.",
              []( const S& s, const E& a, const E& b ) {
                  return c_genuine( s, a ) && c_genuine( s, b ) && !c_genuine( s, intersect( a, b ) );
              },
              true, [] { return std::optional{ seeded_case( 4, { "c", "d", "bc", "cd" }, "abc", "ad" ) }; }, {} },
            { "non-c-genuine-intersection-may-be-c-genuine", Quantifier::May,
              "The intersection of two non-c-genuine sets may be c-genuine.",
              []( const S& s, const E& a, const E& b ) {
                  return !c_genuine( s, a ) && !c_genuine( s, b ) && c_genuine( s, intersect( a, b ) );
              },
              true, [] { return std::optional{ seeded_case( 4, { "a", "b", "c", "ab", "abc" }, "ad", "bd" ) }; },
              {} },
    };
    return items;
}

} // namespace detail

[[nodiscard]] inline std::vector< std::string > witness_properties()
{
    std::vector< std::string > ids;
    for ( const auto& item : detail::catalog() )
        ids.push_back( item.id );
    return ids;
}

// Runs one catalog item: re-checks the seeded witness, then sweeps every
// infra-topology with n ≤ 4 (plus any seeded larger families) over all
// subset pairs. May-items stop at the first witness; must-items must find
// no counterexample.
[[nodiscard]] inline WitnessBundle find_witness( const std::string& property )
{
    const auto& items = detail::catalog();
    auto it = std::find_if( items.begin(), items.end(), [ & ]( const auto& l ) { return l.id == property; } );
    if ( it == items.end() )
        throw Error( ErrorKind::UnknownProperty, property );
    const auto& item = *it;

    WitnessBundle bundle;
    bundle.property = item.id;
    bundle.quantifier = item.quantifier;
    bundle.statement = item.statement;

    if ( auto seed = item.seed() )
    {
        const literal_space s = to_literal( seed->space );
        bundle.seeded_verifies = item.holds( s, to_elements( seed->a ), to_elements( seed->b ) );
        bundle.seeded = std::move( seed );
    }

    std::optional< WitnessCase > found;
    std::optional< WitnessCase > counterexample;

    auto sweep = [ & ]( const InfraTopology& t ) {
        const literal_space s = to_literal( t );
        const std::size_t subsets = std::size_t{ 1 } << s.n;
        const auto all = all_subsets( s.n );
        for ( std::size_t i = 0; i < subsets; ++i )
            for ( std::size_t j = i; j < subsets; ++j )
            {
                ++bundle.searched;
                const bool ok = item.holds( s, all[ i ], all[ j ] );
                if ( item.quantifier == Quantifier::May && ok )
                {
                    found = WitnessCase{ t, Subset{ t.universe(), i }, Subset{ t.universe(), j } };
                    return true;
                }
                if ( item.quantifier == Quantifier::Must && !ok )
                {
                    counterexample = WitnessCase{ t, Subset{ t.universe(), i }, Subset{ t.universe(), j } };
                    return true;
                }
            }
        return false;
    };

    bool stop = false;
    for ( std::size_t n = 1; n <= max_enumeration_universe && !stop; ++n )
    {
        InfraTopologyStream stream( n, false );
        while ( auto t = stream.next() )
            if ( ( stop = sweep( *t ) ) )
                break;
    }
    if ( !stop && item.extra_spaces )
        for ( const auto& t : item.extra_spaces() )
            if ( ( stop = sweep( t ) ) )
                break;

    if ( item.quantifier == Quantifier::May )
    {
        bundle.witness = found;
        bundle.verified = found.has_value() && bundle.seeded_verifies == item.seeded_expected;
        if ( !item.seeded_expected )
            bundle.notes = bundle.seeded_verifies
                                   ? "the published witness unexpectedly verifies"
                                   : "the published witness fails; replaced by the first witness found by search";
    }
    else
    {
        bundle.witness = counterexample;
        bundle.verified = !counterexample.has_value();
        bundle.notes = counterexample ? "counterexample found" : "no counterexample on any space with n <= 4";
    }
    return bundle;
}

} // namespace infra::oracle
