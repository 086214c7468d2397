#pragma once

#include "oracle.hpp"
#include "semantics.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace infra
{

// Which neighbourhood families N_w a Y2 world may receive during
// enumeration. Up to `full_pool_max_worlds` worlds every family over P(W) is
// used; above that, only families of at most two subsets plus the family τ.
struct SearchBounds
{
    std::size_t min_worlds = 1;
    std::size_t max_worlds = 3;
    std::optional< std::size_t > max_tau_size;
    std::size_t full_pool_max_worlds = 2;
    // Variables that receive every possible valuation; others denote ∅.
    std::vector< std::string > variables;
    double max_models = 1e8;
    unsigned jobs = 1;
};

inline constexpr std::size_t max_search_worlds = 3;
inline constexpr std::size_t max_search_variables = 2;

[[nodiscard]] inline std::string describe_policy( const SearchBounds& b )
{
    return "worlds " + std::to_string( b.min_worlds ) + ".." + std::to_string( b.max_worlds )
           + "; N_w ranges over all of P(P(W)) for |W| <= " + std::to_string( b.full_pool_max_worlds )
           + ", otherwise over families of at most 2 subsets plus the family tau; "
           + std::to_string( b.variables.size() ) + " variable(s) take every valuation";
}

[[nodiscard]] inline std::vector< std::vector< mask_t > > neighborhood_pool( std::size_t n, const InfraTopology& tau,
                                                                            const SearchBounds& b )
{
    const std::size_t subsets = std::size_t{ 1 } << n;
    std::vector< std::vector< mask_t > > pool;
    if ( n <= b.full_pool_max_worlds )
    {
        // Family code bit s set <=> subset s is in the family; empty family first.
        for ( std::uint64_t code = 0; code < ( std::uint64_t{ 1 } << subsets ); ++code )
        {
            std::vector< mask_t > family;
            for ( std::size_t s = 0; s < subsets; ++s )
                if ( ( code >> s ) & 1U )
                    family.push_back( s );
            pool.push_back( std::move( family ) );
        }
        return pool;
    }
    pool.emplace_back();
    for ( mask_t s = 0; s < subsets; ++s )
        pool.push_back( { s } );
    for ( mask_t s = 0; s < subsets; ++s )
        for ( mask_t t = s + 1; t < subsets; ++t )
            pool.push_back( { s, t } );
    std::vector< mask_t > opens( tau.masks().begin(), tau.masks().end() );
    if ( std::find( pool.begin(), pool.end(), opens ) == pool.end() )
        pool.push_back( std::move( opens ) );
    return pool;
}

[[nodiscard]] inline std::size_t pool_size( std::size_t n, std::size_t tau_size, const SearchBounds& b )
{
    const std::size_t subsets = std::size_t{ 1 } << n;
    if ( n <= b.full_pool_max_worlds )
        return std::size_t{ 1 } << subsets;
    return 1 + subsets + subsets * ( subsets - 1 ) / 2 + ( tau_size > 2 ? 1 : 0 );
}

inline void check_bounds_shape( const SearchBounds& b )
{
    if ( b.max_worlds > max_search_worlds )
        throw Error( ErrorKind::BoundsTooLarge, "at most " + std::to_string( max_search_worlds ) + " worlds" );
    if ( b.variables.size() > max_search_variables )
        throw Error( ErrorKind::BoundsTooLarge, "at most " + std::to_string( max_search_variables ) + " variables" );
    if ( b.min_worlds == 0 || b.min_worlds > b.max_worlds )
        throw Error( ErrorKind::BoundsTooLarge, "world range is empty" );
}

// Exact number of models the bounds describe.
[[nodiscard]] inline double count_models( const SearchBounds& b )
{
    check_bounds_shape( b );
    double total = 0;
    for ( std::size_t n = b.min_worlds; n <= b.max_worlds; ++n )
    {
        const double valuations = std::pow( 2.0, static_cast< double >( n * b.variables.size() ) );
        for ( const auto& tau : oracle::enumerate_infra_topologies( n, true ) )
        {
            if ( b.max_tau_size && tau.size() > *b.max_tau_size )
                continue;
            const mask_t opens = tau.union_mask();
            const mask_t rest = ~opens & full_mask( n );
            const auto pool = static_cast< double >( pool_size( n, tau.size(), b ) );
            for ( mask_t extra = 0;; extra = ( extra - rest ) & rest )
            {
                if ( opens != 0 || extra == 0 )
                {
                    const auto links = std::pow( static_cast< double >( std::popcount( opens ) ),
                                                 static_cast< double >( std::popcount( extra ) ) );
                    const auto y2 = static_cast< double >( n - std::popcount( opens | extra ) );
                    total += links * std::pow( pool, y2 ) * valuations;
                }
                if ( extra == rest )
                    break;
            }
        }
    }
    return total;
}

// Pull-based, deterministic stream of every model within bounds. Order:
// world count, τ (enumeration order), Y1 ⊇ ⋃τ, links, neighbourhoods,
// valuation.
class ModelStream
{
    SearchBounds _bounds;
    std::size_t _n = 0;
    Universe _worlds;
    std::vector< InfraTopology > _taus;
    std::size_t _tau_index = 0;
    std::vector< std::vector< mask_t > > _pool;
    mask_t _opens = 0;
    mask_t _rest = 0;
    mask_t _extra = 0;
    std::vector< std::size_t > _open_worlds;
    std::vector< std::size_t > _link_digits;
    std::vector< std::size_t > _nbhd_digits;
    std::vector< std::size_t > _val_digits;
    std::optional< GitModel > _frame;
    bool _done = false;
    std::uint64_t _index = 0;

    [[nodiscard]] std::size_t y2_count() const
    {
        return _n - static_cast< std::size_t >( std::popcount( _opens | _extra ) );
    }

    static bool bump( std::vector< std::size_t >& digits, std::size_t radix )
    {
        for ( auto& d : digits )
        {
            if ( ++d < radix )
                return true;
            d = 0;
        }
        return false;
    }

    bool enter_world_count( std::size_t n )
    {
        while ( n <= _bounds.max_worlds )
        {
            _n = n;
            _worlds = Universe::numbered( n, "w", 1 );
            _taus.clear();
            for ( auto& t : oracle::enumerate_infra_topologies( n, true ) )
                if ( !_bounds.max_tau_size || t.size() <= *_bounds.max_tau_size )
                    _taus.push_back( InfraTopology::make( _worlds, { t.masks().begin(), t.masks().end() }, true ) );
            _tau_index = 0;
            if ( enter_tau() )
                return true;
            ++n;
        }
        return false;
    }

    // Positions on the first valid Y1 of the current (or a later) τ.
    bool enter_tau()
    {
        while ( _tau_index < _taus.size() )
        {
            const auto& tau = _taus[ _tau_index ];
            _opens = tau.union_mask();
            _rest = ~_opens & full_mask( _n );
            _open_worlds.clear();
            for ( std::size_t w = 0; w < _n; ++w )
                if ( ( _opens >> w ) & 1U )
                    _open_worlds.push_back( w );
            _pool = neighborhood_pool( _n, tau, _bounds );
            _extra = 0;
            reset_digits();
            return true;
        }
        return false;
    }

    void reset_digits()
    {
        _link_digits.assign( static_cast< std::size_t >( std::popcount( _extra ) ), 0 );
        _nbhd_digits.assign( y2_count(), 0 );
        _val_digits.assign( _bounds.variables.size(), 0 );
        _frame.reset();
    }

    // Next Y1 for the current τ; false when exhausted.
    bool next_extra()
    {
        while ( _extra != _rest )
        {
            _extra = ( _extra - _rest ) & _rest;
            if ( _opens != 0 || _extra == 0 )
            {
                reset_digits();
                return true;
            }
        }
        return false;
    }

    void advance()
    {
        if ( bump( _val_digits, std::size_t{ 1 } << _n ) )
            return;
        if ( bump( _nbhd_digits, _pool.size() ) )
        {
            _frame.reset();
            return;
        }
        if ( bump( _link_digits, _open_worlds.size() ) )
        {
            _frame.reset();
            return;
        }
        if ( next_extra() )
            return;
        ++_tau_index;
        if ( enter_tau() )
            return;
        if ( !enter_world_count( _n + 1 ) )
            _done = true;
    }

    [[nodiscard]] GitModel build_frame() const
    {
        const auto& tau = _taus[ _tau_index ];
        const mask_t y1 = _opens | _extra;
        std::vector< std::optional< std::size_t > > link( _n );
        std::vector< std::vector< mask_t > > nbhd( _n );
        std::size_t li = 0;
        std::size_t ni = 0;
        for ( std::size_t w = 0; w < _n; ++w )
        {
            if ( ( _opens >> w ) & 1U )
                link[ w ] = w;
            else if ( ( _extra >> w ) & 1U )
                link[ w ] = _open_worlds[ _link_digits[ li++ ] ];
            else
                nbhd[ w ] = _pool[ _nbhd_digits[ ni++ ] ];
        }
        return GitModel::make( _worlds, { tau.masks().begin(), tau.masks().end() }, y1, ~y1 & _worlds.full(),
                               std::move( link ), std::move( nbhd ), {} );
    }

public:
    explicit ModelStream( SearchBounds bounds ) : _bounds{ std::move( bounds ) }
    {
        check_bounds_shape( _bounds );
        if ( count_models( _bounds ) > _bounds.max_models )
            throw Error( ErrorKind::BoundsTooLarge, "more than " + std::to_string( _bounds.max_models ) + " models" );
        _done = !enter_world_count( _bounds.min_worlds );
    }

    [[nodiscard]] const SearchBounds& bounds() const { return _bounds; }
    [[nodiscard]] std::string policy() const { return describe_policy( _bounds ); }
    // Index of the model the next call to next() returns.
    [[nodiscard]] std::uint64_t index() const { return _index; }

    std::optional< GitModel > next()
    {
        if ( _done )
            return std::nullopt;
        if ( !_frame )
            _frame = build_frame();
        std::map< std::string, mask_t > valuation;
        for ( std::size_t i = 0; i < _bounds.variables.size(); ++i )
            valuation[ _bounds.variables[ i ] ] = _val_digits[ i ];
        GitModel out = _bounds.variables.empty() ? *_frame : _frame->with_valuation( std::move( valuation ) );
        ++_index;
        advance();
        return out;
    }

    // True when the next model starts a new frame.
    [[nodiscard]] bool at_frame_start() const
    {
        return std::all_of( _val_digits.begin(), _val_digits.end(), []( std::size_t d ) { return d == 0; } );
    }
};

namespace oracle
{

[[nodiscard]] inline ModelStream enumerate_models( SearchBounds bounds ) { return ModelStream( std::move( bounds ) ); }

} // namespace oracle

// Random model with `n` worlds: a random generalized infra-topology (the
// closure of a few random seeds), random Y1 ⊇ ⋃τ, links and neighbourhoods.
[[nodiscard]] inline GitModel sample_model( std::mt19937_64& rng, std::size_t n,
                                            const std::vector< std::string >& variables )
{
    const Universe w = Universe::numbered( n, "w", 1 );
    const mask_t full = w.full();
    std::uniform_int_distribution< mask_t > any_subset( 0, full );
    std::uniform_int_distribution< int > seeds_count( 0, 3 );

    std::vector< mask_t > seeds;
    for ( int i = seeds_count( rng ); i > 0; --i )
        seeds.push_back( any_subset( rng ) );
    const auto tau = generate_infra_topology_masks( w, seeds, true );
    const mask_t opens = tau.union_mask();
    mask_t y1 = opens;
    if ( opens != 0 )
        y1 |= any_subset( rng );

    std::vector< std::size_t > open_worlds;
    for ( std::size_t i = 0; i < n; ++i )
        if ( ( opens >> i ) & 1U )
            open_worlds.push_back( i );

    std::vector< std::optional< std::size_t > > link( n );
    std::vector< std::vector< mask_t > > nbhd( n );
    for ( std::size_t i = 0; i < n; ++i )
    {
        if ( ( opens >> i ) & 1U )
            link[ i ] = i;
        else if ( ( y1 >> i ) & 1U )
            link[ i ] = open_worlds[ std::uniform_int_distribution< std::size_t >( 0, open_worlds.size() - 1 )( rng ) ];
        else
            for ( int k = seeds_count( rng ); k > 0; --k )
                nbhd[ i ].push_back( any_subset( rng ) );
    }
    std::map< std::string, mask_t > valuation;
    for ( const auto& v : variables )
        valuation[ v ] = any_subset( rng );
    return GitModel::make( w, { tau.masks().begin(), tau.masks().end() }, y1, ~y1 & full, std::move( link ),
                           std::move( nbhd ), std::move( valuation ) );
}

} // namespace infra
