#pragma once

#include "formula.hpp"
#include "operators.hpp"
#include "setfam.hpp"

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace infra
{

enum class ModelViolation
{
    TauNotInfraTopology,
    PartitionError,
    OpenWorldOutsideY1,
    LinkDomainError,
    LinkTargetNotOpenCovered,
    LinkNotIdentityOnOpens,
    NeighborhoodOnY1World,
};

[[nodiscard]] constexpr std::string_view to_string( ModelViolation v )
{
    switch ( v )
    {
    case ModelViolation::TauNotInfraTopology: return "TauNotInfraTopology";
    case ModelViolation::PartitionError: return "PartitionError";
    case ModelViolation::OpenWorldOutsideY1: return "OpenWorldOutsideY1";
    case ModelViolation::LinkDomainError: return "LinkDomainError";
    case ModelViolation::LinkTargetNotOpenCovered: return "LinkTargetNotOpenCovered";
    case ModelViolation::LinkNotIdentityOnOpens: return "LinkNotIdentityOnOpens";
    case ModelViolation::NeighborhoodOnY1World: return "NeighborhoodOnY1World";
    }
    return "?";
}

// The model-definition clause each violation breaks.
[[nodiscard]] constexpr std::string_view clause_of( ModelViolation v )
{
    switch ( v )
    {
    case ModelViolation::TauNotInfraTopology: return "τ must be a generalized infra-topology on W";
    case ModelViolation::PartitionError: return "W must split into disjoint Y1 and Y2";
    case ModelViolation::OpenWorldOutsideY1: return "clause (3): ⋃τ ⊆ Y1";
    case ModelViolation::LinkDomainError: return "clause (1): f is defined exactly on Y1";
    case ModelViolation::LinkTargetNotOpenCovered: return "clause (1): f maps Y1 into ⋃τ";
    case ModelViolation::LinkNotIdentityOnOpens: return "clause (4): f(w) = w for w ∈ ⋃τ";
    case ModelViolation::NeighborhoodOnY1World: return "clause (2): N is defined on Y2 only";
    }
    return "?";
}

class ModelError : public Error
{
    ModelViolation _violation;

public:
    ModelError( ModelViolation v, const std::string& detail )
        : Error( ErrorKind::InvalidModel,
                 std::string( to_string( v ) ) + " [" + std::string( clause_of( v ) ) + "] " + detail ),
          _violation{ v } {}

    [[nodiscard]] ModelViolation violation() const { return _violation; }
};

// Model description by labels, as read from a model file. Y2 defaults to
// the complement of Y1.
struct RawModel
{
    std::vector< std::string > worlds;
    std::vector< std::vector< std::string > > tau;
    std::vector< std::string > y1;
    std::optional< std::vector< std::string > > y2;
    std::map< std::string, std::string > f;
    std::map< std::string, std::vector< std::vector< std::string > > > n;
    std::map< std::string, std::vector< std::string > > valuation;
};

// ⟨W, τ, f, N, V⟩ with W = Y1 ⊔ Y2. τ is always treated as generalized.
class GitModel
{
    Universe _worlds;
    InfraTopology _tau;
    mask_t _y1 = 0;
    mask_t _y2 = 0;
    std::vector< std::optional< std::size_t > > _link;
    std::vector< std::vector< mask_t > > _nbhd;
    std::map< std::string, mask_t > _valuation;

    GitModel( Universe w, InfraTopology tau ) : _worlds{ std::move( w ) }, _tau{ std::move( tau ) } {}

public:
    // Validating constructor over world indices. `link` and `nbhd` are
    // indexed by world; link entries must be set exactly on Y1, nbhd entries
    // must be empty on Y1.
    static GitModel make( const Universe& worlds, std::vector< mask_t > tau, mask_t y1, mask_t y2,
                          std::vector< std::optional< std::size_t > > link,
                          std::vector< std::vector< mask_t > > nbhd, std::map< std::string, mask_t > valuation )
    {
        const std::size_t n = worlds.size();
        auto validated = InfraTopology::validate( worlds, std::move( tau ), true );
        if ( auto* report = std::get_if< ViolationReport >( &validated ) )
            throw ModelError( ModelViolation::TauNotInfraTopology, report->describe() );
        GitModel m{ worlds, std::get< InfraTopology >( std::move( validated ) ) };

        if ( ( y1 & y2 ) != 0 || ( y1 | y2 ) != worlds.full() )
            throw ModelError( ModelViolation::PartitionError,
                              "Y1 = " + format_mask( worlds, y1 ) + ", Y2 = " + format_mask( worlds, y2 ) );
        m._y1 = y1;
        m._y2 = y2;

        const mask_t opens = m._tau.union_mask();
        if ( !is_subset_mask( opens, y1 ) )
            throw ModelError( ModelViolation::OpenWorldOutsideY1,
                              format_mask( worlds, opens & ~y1 ) + " lies in an open set but not in Y1" );

        link.resize( n );
        nbhd.resize( n );
        for ( std::size_t w = 0; w < n; ++w )
        {
            const bool in_y1 = ( y1 >> w ) & 1U;
            if ( in_y1 != link[ w ].has_value() )
                throw ModelError( ModelViolation::LinkDomainError,
                                  "world " + worlds.label( w ) + ( in_y1 ? " has no link" : " is in Y2 but linked" ) );
            if ( !in_y1 )
                continue;
            const std::size_t target = *link[ w ];
            if ( target >= n || !( ( opens >> target ) & 1U ) )
                throw ModelError( ModelViolation::LinkTargetNotOpenCovered,
                                  "f(" + worlds.label( w ) + ") is not covered by τ" );
            if ( ( ( opens >> w ) & 1U ) && target != w )
                throw ModelError( ModelViolation::LinkNotIdentityOnOpens,
                                  "f(" + worlds.label( w ) + ") = " + worlds.label( target ) );
        }
        for ( std::size_t w = 0; w < n; ++w )
        {
            if ( ( ( y1 >> w ) & 1U ) && !nbhd[ w ].empty() )
                throw ModelError( ModelViolation::NeighborhoodOnY1World,
                                  "world " + worlds.label( w ) + " is in Y1 but has neighborhoods" );
            for ( mask_t s : nbhd[ w ] )
                if ( ( s & ~worlds.full() ) != 0 )
                    throw Error( ErrorKind::UnknownWorld, "neighborhood member outside W" );
            nbhd[ w ] = canonical_family( std::move( nbhd[ w ] ) );
        }
        for ( const auto& [ name, s ] : valuation )
            if ( ( s & ~worlds.full() ) != 0 )
                throw Error( ErrorKind::UnknownWorld, "valuation of " + name + " outside W" );

        m._link = std::move( link );
        m._nbhd = std::move( nbhd );
        m._valuation = std::move( valuation );
        return m;
    }

    [[nodiscard]] const Universe& worlds() const { return _worlds; }
    [[nodiscard]] std::size_t size() const { return _worlds.size(); }
    [[nodiscard]] const InfraTopology& tau() const { return _tau; }
    [[nodiscard]] mask_t y1() const { return _y1; }
    [[nodiscard]] mask_t y2() const { return _y2; }
    [[nodiscard]] bool in_y1( std::size_t w ) const { return ( _y1 >> w ) & 1U; }
    [[nodiscard]] std::optional< std::size_t > link( std::size_t w ) const { return _link.at( w ); }
    [[nodiscard]] const std::vector< mask_t >& neighborhoods( std::size_t w ) const { return _nbhd.at( w ); }
    [[nodiscard]] const std::map< std::string, mask_t >& valuation() const { return _valuation; }

    [[nodiscard]] std::optional< mask_t > value_of( const std::string& var ) const
    {
        if ( auto it = _valuation.find( var ); it != _valuation.end() )
            return it->second;
        return std::nullopt;
    }

    // Same frame, different valuation. The valuation is not re-validated
    // beyond the range check.
    [[nodiscard]] GitModel with_valuation( std::map< std::string, mask_t > valuation ) const
    {
        for ( const auto& [ name, s ] : valuation )
            if ( ( s & ~_worlds.full() ) != 0 )
                throw Error( ErrorKind::UnknownWorld, "valuation of " + name + " outside W" );
        GitModel copy = *this;
        copy._valuation = std::move( valuation );
        return copy;
    }

    void set_value( const std::string& var, mask_t s )
    {
        if ( ( s & ~_worlds.full() ) != 0 )
            throw Error( ErrorKind::UnknownWorld, "valuation of " + var + " outside W" );
        _valuation[ var ] = s;
    }

    [[nodiscard]] std::size_t world( const std::string& label ) const
    {
        if ( auto i = _worlds.find( label ) )
            return *i;
        throw Error( ErrorKind::UnknownWorld, label );
    }
};

[[nodiscard]] inline GitModel validate_model( const RawModel& raw )
{
    const Universe w = Universe::make( raw.worlds );
    auto world_mask = [ & ]( const std::vector< std::string >& labels ) {
        mask_t m = 0;
        for ( const auto& l : labels )
        {
            auto i = w.find( l );
            if ( !i )
                throw Error( ErrorKind::UnknownWorld, l );
            m |= mask_t{ 1 } << *i;
        }
        return m;
    };
    auto world_index = [ & ]( const std::string& l ) {
        auto i = w.find( l );
        if ( !i )
            throw Error( ErrorKind::UnknownWorld, l );
        return *i;
    };

    std::vector< mask_t > tau;
    for ( const auto& s : raw.tau )
        tau.push_back( world_mask( s ) );
    const mask_t y1 = world_mask( raw.y1 );
    const mask_t y2 = raw.y2 ? world_mask( *raw.y2 ) : ( ~y1 & w.full() );

    std::vector< std::optional< std::size_t > > link( w.size() );
    for ( const auto& [ from, to ] : raw.f )
        link[ world_index( from ) ] = world_index( to );

    std::vector< std::vector< mask_t > > nbhd( w.size() );
    std::vector< bool > listed( w.size(), false );
    for ( const auto& [ at, family ] : raw.n )
    {
        const std::size_t i = world_index( at );
        if ( ( y1 >> i ) & 1U )
            throw ModelError( ModelViolation::NeighborhoodOnY1World, "world " + at + " is in Y1" );
        for ( const auto& s : family )
            nbhd[ i ].push_back( world_mask( s ) );
    }

    std::map< std::string, mask_t > valuation;
    for ( const auto& [ var, s ] : raw.valuation )
        valuation[ var ] = world_mask( s );

    return GitModel::make( w, std::move( tau ), y1, y2, std::move( link ), std::move( nbhd ), std::move( valuation ) );
}

struct EvalOptions
{
    // Unvalued variables are an error instead of denoting ∅.
    bool strict = false;
};

[[nodiscard]] inline mask_t variable_value( const GitModel& m, const std::string& var, const EvalOptions& opt )
{
    if ( auto v = m.value_of( var ) )
        return *v;
    if ( opt.strict )
        throw Error( ErrorKind::UnknownVariable, var );
    return 0;
}

// Per-world forcing, following the clauses literally: □ searches for an open
// set around w all of whose worlds force the operand; ■ goes through f(w) on
// Y1 and through N_w on Y2.
[[nodiscard]] inline bool forces( const GitModel& m, std::size_t w, const Formula& phi, const EvalOptions& opt = {} )
{
    if ( w >= m.size() )
        throw Error( ErrorKind::UnknownWorld, "world index " + std::to_string( w ) );

    auto open_witness = [ & ]( std::size_t at, const Formula& body ) {
        for ( mask_t x : m.tau().masks() )
        {
            if ( !( ( x >> at ) & 1U ) )
                continue;
            bool all = true;
            for ( std::size_t v = 0; v < m.size() && all; ++v )
                if ( ( x >> v ) & 1U )
                    all = forces( m, v, body, opt );
            if ( all )
                return true;
        }
        return false;
    };

    switch ( phi.op() )
    {
    case Op::Var: return ( variable_value( m, phi.name(), opt ) >> w ) & 1U;
    case Op::Top: return true;
    case Op::Bottom: return false;
    case Op::Not: return !forces( m, w, phi.arg(), opt );
    case Op::And: return forces( m, w, phi.lhs(), opt ) && forces( m, w, phi.rhs(), opt );
    case Op::Or: return forces( m, w, phi.lhs(), opt ) || forces( m, w, phi.rhs(), opt );
    case Op::Implies: return !forces( m, w, phi.lhs(), opt ) || forces( m, w, phi.rhs(), opt );
    case Op::Iff: return forces( m, w, phi.lhs(), opt ) == forces( m, w, phi.rhs(), opt );
    case Op::Box: return open_witness( w, phi.arg() );
    case Op::BBox:
        if ( m.in_y1( w ) )
            return open_witness( *m.link( w ), phi.arg() );
        else
        {
            mask_t extension = 0;
            for ( std::size_t v = 0; v < m.size(); ++v )
                if ( forces( m, v, phi.arg(), opt ) )
                    extension |= mask_t{ 1 } << v;
            return family_contains( m.neighborhoods( w ), extension );
        }
    }
    return false;
}

[[nodiscard]] inline bool forces( const GitModel& m, const std::string& world, const Formula& phi,
                                  const EvalOptions& opt = {} )
{
    return forces( m, m.world( world ), phi, opt );
}

// ---------------------------------------------------------------------------
// Batch evaluation over truth sets
// ---------------------------------------------------------------------------

// Set-level meaning of the modalities in a fixed frame.
class FrameSemantics
{
    const GitModel* _m;
    // □/■ lookup tables over every subset, filled for up to 6 worlds.
    std::vector< mask_t > _box;
    std::vector< mask_t > _bbox;

    [[nodiscard]] mask_t compute_bbox( mask_t s ) const
    {
        const mask_t inner = i_interior_mask( _m->tau(), s );
        mask_t out = 0;
        for ( std::size_t w = 0; w < _m->size(); ++w )
        {
            bool holds = false;
            if ( _m->in_y1( w ) )
                holds = ( inner >> *_m->link( w ) ) & 1U;
            else
                holds = family_contains( _m->neighborhoods( w ), s );
            if ( holds )
                out |= mask_t{ 1 } << w;
        }
        return out;
    }

public:
    explicit FrameSemantics( const GitModel& m, bool tabulate = true ) : _m{ &m }
    {
        if ( !tabulate || m.size() > 6 )
            return;
        const mask_t n = full() + 1;
        _box.resize( n );
        _bbox.resize( n );
        for ( mask_t s = 0; s < n; ++s )
        {
            _box[ s ] = i_interior_mask( m.tau(), s );
            _bbox[ s ] = compute_bbox( s );
        }
    }

    [[nodiscard]] mask_t full() const { return _m->worlds().full(); }

    // Worlds with an open neighbourhood inside `s`: exactly iInt(s).
    [[nodiscard]] mask_t box( mask_t s ) const { return _box.empty() ? i_interior_mask( _m->tau(), s ) : _box[ s ]; }

    [[nodiscard]] mask_t bbox( mask_t s ) const { return _bbox.empty() ? compute_bbox( s ) : _bbox[ s ]; }

    [[nodiscard]] mask_t apply( Op op, mask_t a, mask_t b = 0 ) const
    {
        switch ( op )
        {
        case Op::Top: return full();
        case Op::Bottom: return 0;
        case Op::Not: return ~a & full();
        case Op::And: return a & b;
        case Op::Or: return a | b;
        case Op::Implies: return ( ~a | b ) & full();
        case Op::Iff: return ~( a ^ b ) & full();
        case Op::Box: return box( a );
        case Op::BBox: return bbox( a );
        case Op::Var: break;
        }
        return 0;
    }
};

// A formula flattened to postfix with variables mapped to slots, so that
// the same formula can be evaluated under many assignments cheaply.
class Program
{
    struct instr
    {
        Op op;
        std::size_t slot;
    };

    std::vector< instr > _code;
    std::vector< std::string > _slots;

    void emit( const Formula& f )
    {
        if ( f.op() == Op::Var )
        {
            auto it = std::find( _slots.begin(), _slots.end(), f.name() );
            const std::size_t slot = static_cast< std::size_t >( it - _slots.begin() );
            if ( it == _slots.end() )
                _slots.push_back( f.name() );
            _code.push_back( { Op::Var, slot } );
            return;
        }
        if ( is_binary( f.op() ) )
        {
            emit( f.lhs() );
            emit( f.rhs() );
        }
        else if ( is_unary( f.op() ) )
            emit( f.arg() );
        _code.push_back( { f.op(), 0 } );
    }

public:
    explicit Program( const Formula& f ) { emit( f ); }

    [[nodiscard]] const std::vector< std::string >& slots() const { return _slots; }

    [[nodiscard]] mask_t run( const FrameSemantics& sem, std::span< const mask_t > values ) const
    {
        mask_t stack[ 64 ] = {};
        std::vector< mask_t > spill;
        mask_t* sp = stack;
        const bool small = _code.size() <= 64;
        if ( !small )
        {
            spill.resize( _code.size() );
            sp = spill.data();
        }
        std::size_t top = 0;
        for ( const auto& in : _code )
        {
            if ( in.op == Op::Var )
                sp[ top++ ] = values[ in.slot ];
            else if ( is_binary( in.op ) )
            {
                const mask_t b = sp[ --top ];
                const mask_t a = sp[ --top ];
                sp[ top++ ] = sem.apply( in.op, a, b );
            }
            else if ( is_unary( in.op ) )
            {
                const mask_t a = sp[ --top ];
                sp[ top++ ] = sem.apply( in.op, a );
            }
            else
                sp[ top++ ] = sem.apply( in.op, 0 );
        }
        return sp[ 0 ];
    }

    [[nodiscard]] mask_t run( const GitModel& m, const EvalOptions& opt = {} ) const
    {
        std::vector< mask_t > values;
        values.reserve( _slots.size() );
        for ( const auto& s : _slots )
            values.push_back( variable_value( m, s, opt ) );
        return run( FrameSemantics{ m, false }, values );
    }
};

// {w : w ⊩ φ}, computed bottom-up over truth sets.
[[nodiscard]] inline Subset truth_set( const GitModel& m, const Formula& phi, const EvalOptions& opt = {} )
{
    return { m.worlds(), Program{ phi }.run( m, opt ) };
}

[[nodiscard]] inline bool true_in_model( const GitModel& m, const Formula& phi, const EvalOptions& opt = {} )
{
    return Program{ phi }.run( m, opt ) == m.worlds().full();
}

// Explanation of a forcing verdict. For true modal nodes the witness is the
// open set (□, ■ on Y1) or the neighbourhood (■ on Y2) that certifies it.
struct EvalTrace
{
    std::string formula;
    std::size_t world = 0;
    bool result = false;
    std::optional< mask_t > witness;
    std::optional< std::size_t > linked_world;
    std::string note;
    std::vector< EvalTrace > children;
};

[[nodiscard]] inline EvalTrace trace_forcing( const GitModel& m, std::size_t w, const Formula& phi,
                                              const EvalOptions& opt = {} )
{
    EvalTrace t;
    t.formula = render( phi );
    t.world = w;
    t.result = forces( m, w, phi, opt );

    auto find_open = [ & ]( std::size_t at ) -> std::optional< mask_t > {
        for ( mask_t x : m.tau().masks() )
        {
            if ( !( ( x >> at ) & 1U ) )
                continue;
            bool all = true;
            for ( std::size_t v = 0; v < m.size() && all; ++v )
                if ( ( x >> v ) & 1U )
                    all = forces( m, v, phi.arg(), opt );
            if ( all )
                return x;
        }
        return std::nullopt;
    };
    auto any_open_contains = [ & ]( std::size_t at ) {
        return std::any_of( m.tau().masks().begin(), m.tau().masks().end(),
                            [ & ]( mask_t x ) { return ( x >> at ) & 1U; } );
    };

    const auto& W = m.worlds();
    switch ( phi.op() )
    {
    case Op::Box:
        if ( auto x = find_open( w ) )
        {
            t.witness = x;
            t.note = "open set " + format_mask( W, *x ) + " contains " + W.label( w ) + " and forces the operand";
        }
        else if ( !any_open_contains( w ) )
            t.note = "no open set contains " + W.label( w );
        else
            t.note = "every open set containing " + W.label( w ) + " has a world refuting the operand";
        break;
    case Op::BBox:
        if ( m.in_y1( w ) )
        {
            const std::size_t u = *m.link( w );
            t.linked_world = u;
            if ( auto x = find_open( u ) )
            {
                t.witness = x;
                t.note = "f(" + W.label( w ) + ") = " + W.label( u ) + " lies in open set " + format_mask( W, *x )
                         + " forcing the operand";
            }
            else
                t.note = "no open set around f(" + W.label( w ) + ") = " + W.label( u ) + " forces the operand";
        }
        else
        {
            const mask_t ext = truth_set( m, phi.arg(), opt ).bits();
            if ( t.result )
            {
                t.witness = ext;
                t.note = "truth set " + format_mask( W, ext ) + " belongs to N_" + W.label( w );
            }
            else
                t.note = "truth set " + format_mask( W, ext ) + " is not in N_" + W.label( w );
        }
        break;
    default:
        if ( is_binary( phi.op() ) )
        {
            t.children.push_back( trace_forcing( m, w, phi.lhs(), opt ) );
            t.children.push_back( trace_forcing( m, w, phi.rhs(), opt ) );
        }
        else if ( phi.op() == Op::Not )
            t.children.push_back( trace_forcing( m, w, phi.arg(), opt ) );
        break;
    }
    return t;
}

} // namespace infra
