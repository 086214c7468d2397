#pragma once

#include "setfam.hpp"

#include <string_view>
#include <vector>

namespace infra
{

// iInt(A): union of all members of τ contained in A.
[[nodiscard]] inline mask_t i_interior_mask( const InfraTopology& t, mask_t a )
{
    mask_t out = 0;
    for ( mask_t m : t.masks() )
        if ( is_subset_mask( m, a ) )
            out |= m;
    return out;
}

// iCl(A): intersection of all complements of members that contain A. X is
// always among them since ∅ ∈ τ, even in generalized spaces.
[[nodiscard]] inline mask_t i_closure_mask( const InfraTopology& t, mask_t a )
{
    const mask_t full = t.universe().full();
    mask_t out = full;
    for ( mask_t m : t.masks() )
    {
        const mask_t closed = ~m & full;
        if ( is_subset_mask( a, closed ) )
            out &= closed;
    }
    return out;
}

[[nodiscard]] inline bool is_infra_closed_mask( const InfraTopology& t, mask_t c )
{
    return t.contains_mask( ~c & t.universe().full() );
}

[[nodiscard]] inline Subset i_interior( const InfraTopology& t, const Subset& a )
{
    require_same( t.universe(), a.universe() );
    return { t.universe(), i_interior_mask( t, a.bits() ) };
}

[[nodiscard]] inline Subset i_closure( const InfraTopology& t, const Subset& a )
{
    require_same( t.universe(), a.universe() );
    return { t.universe(), i_closure_mask( t, a.bits() ) };
}

struct ClassificationReport
{
    Subset subset;
    Subset i_interior;
    Subset i_closure;
    bool infra_open = false;
    bool infra_closed = false;
    bool i_genuine = false;
    bool strictly_i_genuine = false;
    bool c_genuine = false;
    bool ps_infra_open = false;
    bool ps_infra_closed = false;
    // Meets every non-empty ps-infra-open set.
    bool ps_dense = false;
    // Meets every strictly i-genuine set.
    bool strictly_dense = false;

    friend bool operator==( const ClassificationReport&, const ClassificationReport& ) = default;
};

// Whether `a` meets every non-empty member of τ. Every non-empty
// ps-infra-open set is a union of members and so contains a non-empty one;
// every strictly i-genuine set contains its (non-empty, open) interior. Both
// density notions therefore reduce to this test.
[[nodiscard]] inline bool meets_every_open_mask( const InfraTopology& t, mask_t a )
{
    for ( mask_t m : t.masks() )
        if ( m != 0 && ( m & a ) == 0 )
            return false;
    return true;
}

[[nodiscard]] inline ClassificationReport classify( const InfraTopology& t, const Subset& a )
{
    require_same( t.universe(), a.universe() );
    const mask_t bits = a.bits();
    const mask_t interior = i_interior_mask( t, bits );
    const mask_t closure = i_closure_mask( t, bits );

    ClassificationReport r;
    r.subset = a;
    r.i_interior = Subset{ t.universe(), interior };
    r.i_closure = Subset{ t.universe(), closure };
    r.infra_open = t.contains_mask( bits );
    r.infra_closed = is_infra_closed_mask( t, bits );
    r.i_genuine = t.contains_mask( interior );
    r.strictly_i_genuine = r.i_genuine && interior != 0;
    r.c_genuine = is_infra_closed_mask( t, closure );
    r.ps_infra_open = interior == bits;
    r.ps_infra_closed = closure == bits;
    r.ps_dense = meets_every_open_mask( t, bits );
    r.strictly_dense = r.ps_dense;
    return r;
}

enum class FamilyKind
{
    InfraOpen,
    InfraClosed,
    IGenuine,
    PsInfraOpen,
    CGenuine,
    PsInfraClosed,
    MinimalInfraOpen,
};

inline constexpr FamilyKind all_family_kinds[] = {
        FamilyKind::InfraOpen, FamilyKind::InfraClosed,   FamilyKind::IGenuine,         FamilyKind::PsInfraOpen,
        FamilyKind::CGenuine,  FamilyKind::PsInfraClosed, FamilyKind::MinimalInfraOpen,
};

// CLI spellings.
[[nodiscard]] constexpr std::string_view to_string( FamilyKind k )
{
    switch ( k )
    {
    case FamilyKind::InfraOpen: return "open";
    case FamilyKind::InfraClosed: return "closed";
    case FamilyKind::IGenuine: return "i-genuine";
    case FamilyKind::PsInfraOpen: return "ps-open";
    case FamilyKind::CGenuine: return "c-genuine";
    case FamilyKind::PsInfraClosed: return "ps-closed";
    case FamilyKind::MinimalInfraOpen: return "minimal";
    }
    return "?";
}

[[nodiscard]] inline std::optional< FamilyKind > parse_family_kind( std::string_view s )
{
    for ( auto k : all_family_kinds )
        if ( to_string( k ) == s )
            return k;
    return std::nullopt;
}

inline constexpr std::size_t max_scan_universe = 20;

[[nodiscard]] inline std::vector< mask_t > minimal_infra_open_masks( const InfraTopology& t )
{
    std::vector< mask_t > out;
    for ( mask_t a : t.masks() )
    {
        if ( a == 0 )
            continue;
        bool minimal = true;
        for ( mask_t b : t.masks() )
            if ( ( a & b ) != 0 && !is_subset_mask( a, b ) )
            {
                minimal = false;
                break;
            }
        if ( minimal )
            out.push_back( a );
    }
    return out;
}

[[nodiscard]] inline std::vector< mask_t > derived_family_masks( const InfraTopology& t, FamilyKind kind )
{
    const mask_t full = t.universe().full();
    switch ( kind )
    {
    case FamilyKind::InfraOpen: return { t.masks().begin(), t.masks().end() };
    case FamilyKind::InfraClosed:
    {
        std::vector< mask_t > out;
        for ( mask_t m : t.masks() )
            out.push_back( ~m & full );
        return canonical_family( std::move( out ) );
    }
    case FamilyKind::MinimalInfraOpen: return minimal_infra_open_masks( t );
    default: break;
    }

    if ( t.universe().size() > max_scan_universe )
        throw Error( ErrorKind::UniverseTooLargeForScan,
                     "scan-based families need at most " + std::to_string( max_scan_universe ) + " elements" );

    std::vector< mask_t > out;
    for ( mask_t a = 0;; ++a )
    {
        bool keep = false;
        switch ( kind )
        {
        case FamilyKind::IGenuine: keep = t.contains_mask( i_interior_mask( t, a ) ); break;
        case FamilyKind::PsInfraOpen: keep = i_interior_mask( t, a ) == a; break;
        case FamilyKind::CGenuine: keep = is_infra_closed_mask( t, i_closure_mask( t, a ) ); break;
        case FamilyKind::PsInfraClosed: keep = i_closure_mask( t, a ) == a; break;
        default: break;
        }
        if ( keep )
            out.push_back( a );
        if ( a == full )
            break;
    }
    return out;
}

[[nodiscard]] inline std::vector< Subset > derived_family( const InfraTopology& t, FamilyKind kind )
{
    std::vector< Subset > out;
    for ( mask_t m : derived_family_masks( t, kind ) )
        out.emplace_back( t.universe(), m );
    return out;
}

[[nodiscard]] inline std::vector< Subset > minimal_infra_open_sets( const InfraTopology& t )
{
    return derived_family( t, FamilyKind::MinimalInfraOpen );
}

enum class FamilyOrder
{
    Equal,
    Coarser,
    Finer,
    Incomparable,
};

[[nodiscard]] constexpr std::string_view to_string( FamilyOrder o )
{
    switch ( o )
    {
    case FamilyOrder::Equal: return "Equal";
    case FamilyOrder::Coarser: return "Coarser";
    case FamilyOrder::Finer: return "Finer";
    case FamilyOrder::Incomparable: return "Incomparable";
    }
    return "?";
}

[[nodiscard]] inline FamilyOrder compare_family_masks( std::vector< mask_t > f1, std::vector< mask_t > f2 )
{
    f1 = canonical_family( std::move( f1 ) );
    f2 = canonical_family( std::move( f2 ) );
    const bool sub = std::includes( f2.begin(), f2.end(), f1.begin(), f1.end() );
    const bool sup = std::includes( f1.begin(), f1.end(), f2.begin(), f2.end() );
    if ( sub && sup )
        return FamilyOrder::Equal;
    if ( sub )
        return FamilyOrder::Coarser;
    if ( sup )
        return FamilyOrder::Finer;
    return FamilyOrder::Incomparable;
}

[[nodiscard]] inline FamilyOrder compare_families( std::span< const Subset > f1, std::span< const Subset > f2 )
{
    if ( f1.empty() && f2.empty() )
        return FamilyOrder::Equal;
    const Universe u = f1.empty() ? f2.front().universe() : f1.front().universe();
    return compare_family_masks( to_masks( f1, u ), to_masks( f2, u ) );
}

} // namespace infra
