#pragma once

#include "error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace infra
{

using mask_t = std::uint64_t;

inline constexpr std::size_t max_universe_size = 62;

[[nodiscard]] constexpr mask_t full_mask( std::size_t n ) { return n == 0 ? 0 : ( ( mask_t{ 1 } << n ) - 1 ); }
[[nodiscard]] constexpr bool is_subset_mask( mask_t a, mask_t b ) { return ( a & ~b ) == 0; }

// A finite ground set. Cheap to copy; copies share the label table.
class Universe
{
    struct rep
    {
        std::vector< std::string > names;
        std::unordered_map< std::string, std::size_t > index;
    };

    std::shared_ptr< const rep > _rep;

    explicit Universe( std::shared_ptr< const rep > r ) : _rep{ std::move( r ) } {}

public:
    Universe() : _rep{ std::make_shared< rep >() } {}

    static Universe make( std::span< const std::string > labels )
    {
        if ( labels.size() > max_universe_size )
            throw Error( ErrorKind::UniverseTooLarge,
                         "universe has " + std::to_string( labels.size() ) + " elements, limit is "
                                 + std::to_string( max_universe_size ) );
        auto r = std::make_shared< rep >();
        for ( const auto& label : labels )
        {
            if ( !r->index.emplace( label, r->names.size() ).second )
                throw Error( ErrorKind::DuplicateLabel, label );
            r->names.push_back( label );
        }
        return Universe{ std::move( r ) };
    }

    static Universe make( std::initializer_list< std::string > labels )
    {
        const std::vector< std::string > v( labels );
        return make( v );
    }

    // Universe of size n with labels "<prefix>0", "<prefix>1", ...
    static Universe numbered( std::size_t n, const std::string& prefix = "x", std::size_t first = 0 )
    {
        std::vector< std::string > v;
        for ( std::size_t i = 0; i < n; ++i )
            v.push_back( prefix + std::to_string( i + first ) );
        return make( v );
    }

    // Universe {a, b, c, ...}.
    static Universe letters( std::size_t n )
    {
        std::vector< std::string > v;
        for ( std::size_t i = 0; i < n; ++i )
            v.emplace_back( 1, static_cast< char >( 'a' + i ) );
        return make( v );
    }

    [[nodiscard]] std::size_t size() const { return _rep->names.size(); }
    [[nodiscard]] mask_t full() const { return full_mask( size() ); }
    [[nodiscard]] const std::vector< std::string >& labels() const { return _rep->names; }
    [[nodiscard]] const std::string& label( std::size_t i ) const { return _rep->names.at( i ); }

    [[nodiscard]] std::optional< std::size_t > find( const std::string& label ) const
    {
        if ( auto it = _rep->index.find( label ); it != _rep->index.end() )
            return it->second;
        return std::nullopt;
    }

    [[nodiscard]] std::size_t index_of( const std::string& label ) const
    {
        if ( auto i = find( label ) )
            return *i;
        throw Error( ErrorKind::UnknownLabel, label );
    }

    [[nodiscard]] bool same_as( const Universe& other ) const
    {
        return _rep == other._rep || _rep->names == other._rep->names;
    }

    friend bool operator==( const Universe& a, const Universe& b ) { return a.same_as( b ); }
};

inline void require_same( const Universe& a, const Universe& b )
{
    if ( !a.same_as( b ) )
        throw Error( ErrorKind::UniverseMismatch, "operands live in different universes" );
}

// Characteristic bit-vector of a subset of a universe.
class Subset
{
    Universe _universe;
    mask_t _bits = 0;

public:
    Subset() = default;
    Subset( Universe u, mask_t bits ) : _universe{ std::move( u ) }, _bits{ bits }
    {
        if ( ( _bits & ~_universe.full() ) != 0 )
            throw Error( ErrorKind::UnknownLabel, "bit outside universe" );
    }

    static Subset empty( const Universe& u ) { return { u, 0 }; }
    static Subset whole( const Universe& u ) { return { u, u.full() }; }

    [[nodiscard]] const Universe& universe() const { return _universe; }
    [[nodiscard]] mask_t bits() const { return _bits; }
    [[nodiscard]] bool contains( std::size_t i ) const { return ( _bits >> i ) & 1U; }
    [[nodiscard]] bool is_empty() const { return _bits == 0; }
    [[nodiscard]] std::size_t count() const { return static_cast< std::size_t >( std::popcount( _bits ) ); }

    [[nodiscard]] bool subset_of( const Subset& o ) const
    {
        require_same( _universe, o._universe );
        return is_subset_mask( _bits, o._bits );
    }

    [[nodiscard]] Subset complement() const { return { _universe, ~_bits & _universe.full() }; }

    [[nodiscard]] std::vector< std::string > labels() const
    {
        std::vector< std::string > out;
        for ( std::size_t i = 0; i < _universe.size(); ++i )
            if ( contains( i ) )
                out.push_back( _universe.label( i ) );
        return out;
    }

    friend Subset operator&( const Subset& a, const Subset& b )
    {
        require_same( a._universe, b._universe );
        return { a._universe, a._bits & b._bits };
    }
    friend Subset operator|( const Subset& a, const Subset& b )
    {
        require_same( a._universe, b._universe );
        return { a._universe, a._bits | b._bits };
    }
    friend Subset operator-( const Subset& a, const Subset& b )
    {
        require_same( a._universe, b._universe );
        return { a._universe, a._bits & ~b._bits };
    }

    friend bool operator==( const Subset& a, const Subset& b )
    {
        return a._bits == b._bits && a._universe.same_as( b._universe );
    }
    // Canonical order: by bit value.
    friend bool operator<( const Subset& a, const Subset& b ) { return a._bits < b._bits; }
};

[[nodiscard]] inline Universe make_universe( std::span< const std::string > labels ) { return Universe::make( labels ); }

template < typename Labels >
[[nodiscard]] Subset subset_of( const Universe& u, const Labels& members )
{
    mask_t bits = 0;
    for ( const auto& label : members )
        bits |= mask_t{ 1 } << u.index_of( std::string( label ) );
    return { u, bits };
}

[[nodiscard]] inline Subset subset_of( const Universe& u, std::initializer_list< std::string_view > members )
{
    return subset_of< std::initializer_list< std::string_view > >( u, members );
}

// Pretty form "{a, b}"; "{}" for the empty set.
[[nodiscard]] inline std::string format_mask( const Universe& u, mask_t bits )
{
    std::string out = "{";
    bool first = true;
    for ( std::size_t i = 0; i < u.size(); ++i )
    {
        if ( !( ( bits >> i ) & 1U ) )
            continue;
        if ( !first )
            out += ", ";
        out += u.label( i );
        first = false;
    }
    return out + "}";
}

[[nodiscard]] inline std::string format( const Subset& s ) { return format_mask( s.universe(), s.bits() ); }

[[nodiscard]] inline std::string format_family( const Universe& u, std::span< const mask_t > family )
{
    std::string out = "{";
    for ( std::size_t i = 0; i < family.size(); ++i )
    {
        if ( i != 0 )
            out += ", ";
        out += format_mask( u, family[ i ] );
    }
    return out + "}";
}

// Sorted, deduplicated copy of a family of masks.
[[nodiscard]] inline std::vector< mask_t > canonical_family( std::vector< mask_t > family )
{
    std::sort( family.begin(), family.end() );
    family.erase( std::unique( family.begin(), family.end() ), family.end() );
    return family;
}

[[nodiscard]] inline bool family_contains( std::span< const mask_t > sorted_family, mask_t m )
{
    return std::binary_search( sorted_family.begin(), sorted_family.end(), m );
}

// First pair (A, B), A < B in canonical order, whose intersection is absent
// from the family. The family must be canonical.
[[nodiscard]] inline std::optional< std::pair< mask_t, mask_t > > intersection_escape( std::span< const mask_t > family )
{
    for ( std::size_t i = 0; i < family.size(); ++i )
        for ( std::size_t j = i + 1; j < family.size(); ++j )
            if ( !family_contains( family, family[ i ] & family[ j ] ) )
                return std::pair{ family[ i ], family[ j ] };
    return std::nullopt;
}

enum class Violation
{
    MissingEmpty,
    MissingUniverse,
    NotIntersectionClosed,
};

[[nodiscard]] constexpr std::string_view to_string( Violation v )
{
    switch ( v )
    {
    case Violation::MissingEmpty: return "MissingEmpty";
    case Violation::MissingUniverse: return "MissingUniverse";
    case Violation::NotIntersectionClosed: return "NotIntersectionClosed";
    }
    return "?";
}

struct ViolationReport
{
    Violation violation;
    // Set for NotIntersectionClosed: A ∩ B is missing from the family.
    std::optional< std::pair< Subset, Subset > > witness;

    [[nodiscard]] std::string describe() const
    {
        std::string out( to_string( violation ) );
        switch ( violation )
        {
        case Violation::MissingEmpty: out += ": the empty set is not a member"; break;
        case Violation::MissingUniverse: out += ": the universe is not a member"; break;
        case Violation::NotIntersectionClosed:
            out += ": " + format( witness->first ) + " ∩ " + format( witness->second ) + " = "
                   + format( witness->first & witness->second ) + " is not a member";
            break;
        }
        return out;
    }
};

// A validated family containing ∅ (and X unless generalized) that is closed
// under pairwise intersection. Members are kept in canonical order.
class InfraTopology
{
    Universe _universe;
    std::vector< mask_t > _members;
    bool _generalized = false;

    InfraTopology( Universe u, std::vector< mask_t > members, bool generalized )
        : _universe{ std::move( u ) }, _members{ std::move( members ) }, _generalized{ generalized } {}

public:
    // Checks the defining clauses; `family` need not be canonical.
    static std::variant< InfraTopology, ViolationReport > validate( const Universe& u, std::vector< mask_t > family,
                                                                     bool generalized )
    {
        for ( mask_t m : family )
            if ( ( m & ~u.full() ) != 0 )
                throw Error( ErrorKind::UnknownLabel, "family member outside universe" );
        family = canonical_family( std::move( family ) );
        if ( !family_contains( family, 0 ) )
            return ViolationReport{ Violation::MissingEmpty, std::nullopt };
        if ( !generalized && !family_contains( family, u.full() ) )
            return ViolationReport{ Violation::MissingUniverse, std::nullopt };
        if ( auto w = intersection_escape( family ) )
            return ViolationReport{ Violation::NotIntersectionClosed,
                                    std::pair{ Subset{ u, w->first }, Subset{ u, w->second } } };
        return InfraTopology{ u, std::move( family ), generalized };
    }

    // Throwing variant of validate().
    static InfraTopology make( const Universe& u, std::vector< mask_t > family, bool generalized = false )
    {
        auto result = validate( u, std::move( family ), generalized );
        if ( auto* report = std::get_if< ViolationReport >( &result ) )
            throw Error( ErrorKind::InvalidSpace, report->describe() );
        return std::get< InfraTopology >( std::move( result ) );
    }

    // Trusted construction for enumerators that produce canonical, closed families.
    static InfraTopology from_canonical_unchecked( const Universe& u, std::vector< mask_t > members, bool generalized )
    {
        return InfraTopology{ u, std::move( members ), generalized };
    }

    [[nodiscard]] const Universe& universe() const { return _universe; }
    [[nodiscard]] std::span< const mask_t > masks() const { return _members; }
    [[nodiscard]] bool generalized() const { return _generalized; }
    [[nodiscard]] std::size_t size() const { return _members.size(); }
    [[nodiscard]] bool contains_mask( mask_t m ) const { return family_contains( _members, m ); }

    [[nodiscard]] bool contains( const Subset& s ) const
    {
        require_same( _universe, s.universe() );
        return contains_mask( s.bits() );
    }

    [[nodiscard]] std::vector< Subset > members() const
    {
        std::vector< Subset > out;
        out.reserve( _members.size() );
        for ( mask_t m : _members )
            out.emplace_back( _universe, m );
        return out;
    }

    // ⋃τ
    [[nodiscard]] mask_t union_mask() const
    {
        mask_t u = 0;
        for ( mask_t m : _members )
            u |= m;
        return u;
    }

    friend bool operator==( const InfraTopology& a, const InfraTopology& b )
    {
        return a._generalized == b._generalized && a._members == b._members && a._universe.same_as( b._universe );
    }
};

using ValidationResult = std::variant< InfraTopology, ViolationReport >;

[[nodiscard]] inline std::vector< mask_t > to_masks( std::span< const Subset > family, const Universe& u )
{
    std::vector< mask_t > out;
    out.reserve( family.size() );
    for ( const auto& s : family )
    {
        require_same( u, s.universe() );
        out.push_back( s.bits() );
    }
    return out;
}

[[nodiscard]] inline ValidationResult validate_infra_topology( const Universe& u, std::span< const Subset > family,
                                                               bool generalized )
{
    return InfraTopology::validate( u, to_masks( family, u ), generalized );
}

// Smallest infra-topology containing the seeds: add ∅ (and X), then close
// under pairwise intersection until nothing new appears.
[[nodiscard]] inline InfraTopology generate_infra_topology_masks( const Universe& u, std::span< const mask_t > seeds,
                                                                 bool generalized )
{
    std::set< mask_t > family( seeds.begin(), seeds.end() );
    family.insert( 0 );
    if ( !generalized )
        family.insert( u.full() );
    std::vector< mask_t > frontier( family.begin(), family.end() );
    while ( !frontier.empty() )
    {
        std::vector< mask_t > next;
        const std::vector< mask_t > snapshot( family.begin(), family.end() );
        for ( mask_t a : frontier )
            for ( mask_t b : snapshot )
                if ( family.insert( a & b ).second )
                    next.push_back( a & b );
        frontier = std::move( next );
    }
    return InfraTopology::make( u, { family.begin(), family.end() }, generalized );
}

[[nodiscard]] inline InfraTopology generate_infra_topology( const Universe& u, std::span< const Subset > seeds,
                                                            bool generalized )
{
    const auto masks = to_masks( seeds, u );
    return generate_infra_topology_masks( u, masks, generalized );
}

// Closure under every nonempty sub-family intersection. On a finite universe
// pairwise closure already implies this, so a validated space always
// qualifies; the check is done literally by folding intersections upward,
// which terminates because the lattice is finite.
[[nodiscard]] inline bool is_alexandrov( const InfraTopology& t )
{
    std::set< mask_t > reachable( t.masks().begin(), t.masks().end() );
    bool grew = true;
    while ( grew )
    {
        grew = false;
        const std::vector< mask_t > snapshot( reachable.begin(), reachable.end() );
        for ( mask_t a : snapshot )
            for ( mask_t b : snapshot )
                grew |= reachable.insert( a & b ).second;
    }
    return std::all_of( reachable.begin(), reachable.end(), [ & ]( mask_t m ) { return t.contains_mask( m ); } );
}

} // namespace infra
