#pragma once

#include "operators.hpp"
#include "oracle.hpp"
#include "setfam.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace infra
{

// Interior/closure tables for every subset of a small space.
struct SpaceTables
{
    const InfraTopology* space = nullptr;
    mask_t full = 0;
    std::vector< mask_t > interior;
    std::vector< mask_t > closure;

    explicit SpaceTables( const InfraTopology& t ) : space( &t ), full( t.universe().full() )
    {
        interior.resize( full + 1 );
        closure.resize( full + 1 );
        for ( mask_t a = 0; a <= full; ++a )
        {
            interior[ a ] = i_interior_mask( t, a );
            closure[ a ] = i_closure_mask( t, a );
        }
    }

    [[nodiscard]] bool open( mask_t a ) const { return space->contains_mask( a ); }
    [[nodiscard]] bool closed( mask_t a ) const { return space->contains_mask( ~a & full ); }
    [[nodiscard]] bool i_genuine( mask_t a ) const { return open( interior[ a ] ); }
    [[nodiscard]] bool c_genuine( mask_t a ) const { return closed( closure[ a ] ); }
    [[nodiscard]] bool ps_open( mask_t a ) const { return interior[ a ] == a; }
    [[nodiscard]] bool ps_closed( mask_t a ) const { return closure[ a ] == a; }

    template < typename Pred >
    [[nodiscard]] std::vector< mask_t > collect( Pred pred ) const
    {
        std::vector< mask_t > out;
        for ( mask_t a = 0; a <= full; ++a )
            if ( pred( a ) )
                out.push_back( a );
        return out;
    }
};

// A law is checked either once per space or for every ordered pair (A, B).
struct Law
{
    std::string name;
    std::string group;
    std::function< bool( const SpaceTables& ) > per_space;
    std::function< bool( const SpaceTables&, mask_t, mask_t ) > per_pair;
};

struct LawResult
{
    std::string name;
    std::string group;
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    std::optional< std::string > first_violation;

    [[nodiscard]] bool passed() const { return checked > 0 && violations == 0; }
};

namespace detail
{

inline bool union_closed( const std::vector< mask_t >& family )
{
    for ( mask_t a : family )
        for ( mask_t b : family )
            if ( !family_contains( family, a | b ) )
                return false;
    return true;
}

inline bool intersection_closed( const std::vector< mask_t >& family )
{
    return !intersection_escape( family ).has_value();
}

} // namespace detail

[[nodiscard]] inline const std::vector< Law >& laws()
{
    using T = SpaceTables;
    static const std::vector< Law > items = {
            { "iInt(A & B) = iInt(A) & iInt(B)", "interior", nullptr,
              []( const T& s, mask_t a, mask_t b ) { return s.interior[ a & b ] == ( s.interior[ a ] & s.interior[ b ] ); } },
            { "open sets are fixed by iInt and i-genuine", "interior", nullptr,
              []( const T& s, mask_t a, mask_t ) { return !s.open( a ) || ( s.interior[ a ] == a && s.i_genuine( a ) ); } },
            { "i-genuine iInt(A) is the largest open inside A", "interior", nullptr,
              []( const T& s, mask_t a, mask_t b ) {
                  if ( !s.i_genuine( a ) || !s.open( b ) || !is_subset_mask( b, a ) )
                      return true;
                  return is_subset_mask( b, s.interior[ a ] );
              } },
            { "intersection of i-genuine sets is i-genuine", "interior", nullptr,
              []( const T& s, mask_t a, mask_t b ) { return !( s.i_genuine( a ) && s.i_genuine( b ) ) || s.i_genuine( a & b ); } },
            { "singletons are i-genuine", "interior", nullptr,
              []( const T& s, mask_t a, mask_t ) { return std::popcount( a ) != 1 || s.i_genuine( a ); } },
            { "iInt(A) = A implies A open or not i-genuine", "interior", nullptr,
              []( const T& s, mask_t a, mask_t ) { return !s.ps_open( a ) || s.open( a ) || !s.i_genuine( a ); } },
            { "iInt(A) is ps-infra-open", "interior", nullptr,
              []( const T& s, mask_t a, mask_t ) { return s.ps_open( s.interior[ a ] ); } },
            { "tau is contained in igtau", "interior",
              []( const T& s ) {
                  return std::all_of( s.space->masks().begin(), s.space->masks().end(),
                                      [ & ]( mask_t m ) { return s.i_genuine( m ); } );
              },
              nullptr },
            { "igtau is an infra-topology", "interior",
              []( const T& s ) {
                  auto ig = s.collect( [ & ]( mask_t a ) { return s.i_genuine( a ); } );
                  return std::holds_alternative< InfraTopology >(
                          InfraTopology::validate( s.space->universe(), std::move( ig ), false ) );
              },
              nullptr },
            { "ptau is a topology", "interior",
              []( const T& s ) {
                  auto p = s.collect( [ & ]( mask_t a ) { return s.ps_open( a ); } );
                  return family_contains( p, 0 ) && family_contains( p, s.full ) && detail::intersection_closed( p )
                         && detail::union_closed( p );
              },
              nullptr },
            { "iCl(A | B) = iCl(A) | iCl(B)", "closure", nullptr,
              []( const T& s, mask_t a, mask_t b ) { return s.closure[ a | b ] == ( s.closure[ a ] | s.closure[ b ] ); } },
            { "iCl(A & B) is inside iCl(A) & iCl(B)", "closure", nullptr,
              []( const T& s, mask_t a, mask_t b ) {
                  return is_subset_mask( s.closure[ a & b ], s.closure[ a ] & s.closure[ b ] );
              } },
            { "iCl(A) = -iInt(-A)", "closure", nullptr,
              []( const T& s, mask_t a, mask_t ) { return s.closure[ a ] == ( ~s.interior[ ~a & s.full ] & s.full ); } },
            { "union of infra-closed sets is infra-closed", "closure", nullptr,
              []( const T& s, mask_t a, mask_t b ) { return !( s.closed( a ) && s.closed( b ) ) || s.closed( a | b ); } },
            { "union of c-genuine sets is c-genuine", "closure", nullptr,
              []( const T& s, mask_t a, mask_t b ) { return !( s.c_genuine( a ) && s.c_genuine( b ) ) || s.c_genuine( a | b ); } },
            { "iCl(A) is ps-infra-closed", "closure", nullptr,
              []( const T& s, mask_t a, mask_t ) { return s.ps_closed( s.closure[ a ] ); } },
            { "iCl(A) = A implies A closed or not c-genuine", "closure", nullptr,
              []( const T& s, mask_t a, mask_t ) { return !s.ps_closed( a ) || s.closed( a ) || !s.c_genuine( a ); } },
            { "pctau is closed under union", "closure",
              []( const T& s ) { return detail::union_closed( s.collect( [ & ]( mask_t a ) { return s.ps_closed( a ); } ) ); },
              nullptr },
    };
    return items;
}

// Runs every law whose group matches `group` (empty = all) over every
// infra-topology on universes of size 1..max_n and all pairs of subsets.
[[nodiscard]] inline std::vector< LawResult > sweep_laws( std::size_t max_n = oracle::max_enumeration_universe,
                                                          const std::string& group = {} )
{
    std::vector< const Law* > selected;
    for ( const auto& law : laws() )
        if ( group.empty() || law.group == group )
            selected.push_back( &law );
    std::vector< LawResult > results;
    for ( const Law* law : selected )
        results.push_back( { law->name, law->group, 0, 0, std::nullopt } );

    for ( std::size_t n = 1; n <= max_n; ++n )
    {
        oracle::InfraTopologyStream stream( n, false );
        while ( auto t = stream.next() )
        {
            const SpaceTables tables( *t );
            for ( std::size_t k = 0; k < selected.size(); ++k )
            {
                const Law& law = *selected[ k ];
                auto& r = results[ k ];
                auto fail = [ & ]( const std::string& where ) {
                    ++r.violations;
                    if ( !r.first_violation )
                        r.first_violation = format_family( t->universe(), t->masks() ) + where;
                };
                if ( law.per_space )
                {
                    ++r.checked;
                    if ( !law.per_space( tables ) )
                        fail( "" );
                    continue;
                }
                for ( mask_t a = 0; a <= tables.full; ++a )
                    for ( mask_t b = 0; b <= tables.full; ++b )
                    {
                        ++r.checked;
                        if ( !law.per_pair( tables, a, b ) )
                            fail( ", A = " + format_mask( t->universe(), a ) + ", B = " + format_mask( t->universe(), b ) );
                    }
            }
        }
    }
    return results;
}

} // namespace infra
