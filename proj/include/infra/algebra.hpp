#pragma once

#include "setfam.hpp"

#include <iterator>
#include <stdexcept>
#include <variant>

namespace infra
{

// τ ∩ μ. Both operands must agree on the universe and on the generalized flag.
[[nodiscard]] inline InfraTopology meet( const InfraTopology& t1, const InfraTopology& t2 )
{
    require_same( t1.universe(), t2.universe() );
    if ( t1.generalized() != t2.generalized() )
        throw Error( ErrorKind::FlagMismatch, "cannot meet a generalized and a non-generalized space" );
    std::vector< mask_t > common;
    std::set_intersection( t1.masks().begin(), t1.masks().end(), t2.masks().begin(), t2.masks().end(),
                           std::back_inserter( common ) );
    auto result = InfraTopology::validate( t1.universe(), std::move( common ), t1.generalized() );
    if ( std::holds_alternative< ViolationReport >( result ) )
        throw std::logic_error( "meet of two infra-topologies failed validation" );
    return std::get< InfraTopology >( std::move( result ) );
}

struct UnionInvalid
{
    Subset a;
    Subset b;
};

using UnionCheck = std::variant< InfraTopology, UnionInvalid >;

// τ ∪ μ, or the first pair (canonical order) whose intersection escapes it.
[[nodiscard]] inline UnionCheck union_check( const InfraTopology& t1, const InfraTopology& t2 )
{
    require_same( t1.universe(), t2.universe() );
    std::vector< mask_t > joined;
    std::set_union( t1.masks().begin(), t1.masks().end(), t2.masks().begin(), t2.masks().end(),
                    std::back_inserter( joined ) );
    if ( auto w = intersection_escape( joined ) )
        return UnionInvalid{ { t1.universe(), w->first }, { t1.universe(), w->second } };
    return InfraTopology::make( t1.universe(), std::move( joined ), t1.generalized() && t2.generalized() );
}

} // namespace infra
