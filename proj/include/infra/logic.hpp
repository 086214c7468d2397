#pragma once

#include "formula.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace infra
{

enum class AxiomScheme
{
    CPC,
    M_box,
    C_box,
    T_box,
    Four_box,
    BoxToBBox,
};

inline constexpr std::array< AxiomScheme, 6 > all_schemes = {
        AxiomScheme::CPC, AxiomScheme::M_box, AxiomScheme::C_box, AxiomScheme::T_box, AxiomScheme::Four_box,
        AxiomScheme::BoxToBBox,
};

[[nodiscard]] constexpr std::string_view to_string( AxiomScheme s )
{
    switch ( s )
    {
    case AxiomScheme::CPC: return "CPC";
    case AxiomScheme::M_box: return "M_box";
    case AxiomScheme::C_box: return "C_box";
    case AxiomScheme::T_box: return "T_box";
    case AxiomScheme::Four_box: return "Four_box";
    case AxiomScheme::BoxToBBox: return "BoxToBBox";
    }
    return "?";
}

// Metavariables of scheme patterns.
inline const std::string meta_phi = "phi";
inline const std::string meta_psi = "psi";
inline const std::string meta_chi = "chi";

// Pattern over the metavariables phi/psi. CPC has no single pattern.
[[nodiscard]] inline std::optional< Formula > scheme_pattern( AxiomScheme s )
{
    switch ( s )
    {
    case AxiomScheme::M_box: return parse( "[](phi & psi) -> []phi & []psi" );
    case AxiomScheme::C_box: return parse( "[]phi & []psi -> [](phi & psi)" );
    case AxiomScheme::T_box: return parse( "[]phi -> phi" );
    case AxiomScheme::Four_box: return parse( "[]phi -> [][]phi" );
    case AxiomScheme::BoxToBBox: return parse( "[]phi -> [[]]phi" );
    case AxiomScheme::CPC: return std::nullopt;
    }
    return std::nullopt;
}

// A fixed stock of classical tautology schemes used to instantiate CPC when
// sweeping models.
[[nodiscard]] inline std::vector< Formula > cpc_catalog()
{
    static const char* const texts[] = {
            "phi -> psi -> phi",
            "(phi -> psi -> chi) -> (phi -> psi) -> phi -> chi",
            "(!psi -> !phi) -> phi -> psi",
            "phi & psi -> phi",
            "phi & psi -> psi",
            "phi -> psi -> phi & psi",
            "phi -> phi | psi",
            "psi -> phi | psi",
            "(phi -> chi) -> (psi -> chi) -> phi | psi -> chi",
            "phi | !phi",
            "!!phi -> phi",
            "(phi <-> psi) -> phi -> psi",
            "(phi -> psi) -> (psi -> phi) -> (phi <-> psi)",
            "false -> phi",
            "phi -> true",
    };
    std::vector< Formula > out;
    for ( const char* t : texts )
        out.push_back( parse( t ) );
    return out;
}

using Bindings = std::map< std::string, Formula >;

// One-way matching of a pattern against a formula; metavariables bind to
// whole subformulas and must bind consistently.
[[nodiscard]] inline bool match_pattern( const Formula& pattern, const Formula& f, Bindings& b )
{
    if ( pattern.op() == Op::Var )
    {
        auto [ it, inserted ] = b.emplace( pattern.name(), f );
        return inserted || it->second == f;
    }
    if ( pattern.op() != f.op() )
        return false;
    if ( is_binary( f.op() ) )
        return match_pattern( pattern.lhs(), f.lhs(), b ) && match_pattern( pattern.rhs(), f.rhs(), b );
    if ( is_unary( f.op() ) )
        return match_pattern( pattern.arg(), f.arg(), b );
    return true;
}

[[nodiscard]] inline Formula instantiate( const Formula& pattern, const Bindings& b )
{
    switch ( pattern.op() )
    {
    case Op::Var:
        if ( auto it = b.find( pattern.name() ); it != b.end() )
            return it->second;
        return pattern;
    case Op::Top:
    case Op::Bottom: return pattern;
    default: break;
    }
    if ( is_unary( pattern.op() ) )
        return Formula::unary( pattern.op(), instantiate( pattern.arg(), b ) );
    return Formula::binary( pattern.op(), instantiate( pattern.lhs(), b ), instantiate( pattern.rhs(), b ) );
}

inline constexpr std::size_t max_cpc_atoms = 16;

namespace detail
{

inline void abstract_atoms( const Formula& f, std::map< Formula, std::size_t >& atoms )
{
    if ( f.op() == Op::Var || is_modal( f.op() ) )
        atoms.emplace( f, atoms.size() );
    else if ( is_binary( f.op() ) )
    {
        abstract_atoms( f.lhs(), atoms );
        abstract_atoms( f.rhs(), atoms );
    }
    else if ( f.op() == Op::Not )
        abstract_atoms( f.arg(), atoms );
}

inline bool classical_value( const Formula& f, const std::map< Formula, std::size_t >& atoms, std::uint32_t row )
{
    switch ( f.op() )
    {
    case Op::Top: return true;
    case Op::Bottom: return false;
    case Op::Not: return !classical_value( f.arg(), atoms, row );
    case Op::And: return classical_value( f.lhs(), atoms, row ) && classical_value( f.rhs(), atoms, row );
    case Op::Or: return classical_value( f.lhs(), atoms, row ) || classical_value( f.rhs(), atoms, row );
    case Op::Implies: return !classical_value( f.lhs(), atoms, row ) || classical_value( f.rhs(), atoms, row );
    case Op::Iff: return classical_value( f.lhs(), atoms, row ) == classical_value( f.rhs(), atoms, row );
    default: return ( row >> atoms.at( f ) ) & 1U;
    }
}

} // namespace detail

// Whether f is a modal instance of a classical tautology: variables and
// maximal □/■ subformulas become atoms (equal subformulas share one), then
// every row of the truth table is checked.
[[nodiscard]] inline bool is_cpc_instance( const Formula& f )
{
    std::map< Formula, std::size_t > atoms;
    detail::abstract_atoms( f, atoms );
    if ( atoms.size() > max_cpc_atoms )
        throw Error( ErrorKind::TooManyAtoms, std::to_string( atoms.size() ) + " atoms after abstraction" );
    const std::uint32_t rows = std::uint32_t{ 1 } << atoms.size();
    for ( std::uint32_t row = 0; row < rows; ++row )
        if ( !detail::classical_value( f, atoms, row ) )
            return false;
    return true;
}

// First scheme matching f, tried in the order BoxToBBox, M_box, C_box,
// T_box, Four_box, CPC.
[[nodiscard]] inline std::optional< AxiomScheme > match_axiom( const Formula& f )
{
    static const std::array< AxiomScheme, 5 > order = {
            AxiomScheme::BoxToBBox, AxiomScheme::M_box, AxiomScheme::C_box, AxiomScheme::T_box,
            AxiomScheme::Four_box,
    };
    for ( AxiomScheme s : order )
    {
        Bindings b;
        if ( match_pattern( *scheme_pattern( s ), f, b ) )
            return s;
    }
    if ( is_cpc_instance( f ) )
        return AxiomScheme::CPC;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Derivations
// ---------------------------------------------------------------------------

namespace just
{

struct Premise {};
struct Axiom {};
struct MP { std::size_t i, j; };
struct REBox { std::size_t i; };
struct REBBox { std::size_t i; };
// Admissible in GIT but not primitive; accepted and flagged.
struct MonBox { std::size_t i; };
// Not a rule of GIT; always rejected.
struct Nec { std::size_t i; };

} // namespace just

using Justification = std::variant< just::Premise, just::Axiom, just::MP, just::REBox, just::REBBox, just::MonBox,
                                    just::Nec >;

struct Step
{
    Formula formula;
    Justification by;
};

// Step indices in justifications are 1-based, as written in derivation files.
struct Derivation
{
    std::vector< Formula > premises;
    std::vector< Step > steps;
};

struct RejectedStep
{
    std::size_t index; // 1-based
    std::string reason;
};

struct Verdict
{
    bool accepted = false;
    std::optional< RejectedStep > rejected;
    // 1-based indices of steps that used an admissible derived rule.
    std::vector< std::size_t > derived_rule_steps;
    // Per step: which axiom scheme justified it, if any.
    std::vector< std::optional< AxiomScheme > > schemes;
};

[[nodiscard]] inline std::string to_string( const Justification& j )
{
    struct visitor
    {
        std::string operator()( const just::Premise& ) const { return "premise"; }
        std::string operator()( const just::Axiom& ) const { return "axiom"; }
        std::string operator()( const just::MP& m ) const
        {
            return "mp " + std::to_string( m.i ) + " " + std::to_string( m.j );
        }
        std::string operator()( const just::REBox& r ) const { return "re_box " + std::to_string( r.i ); }
        std::string operator()( const just::REBBox& r ) const { return "re_bbox " + std::to_string( r.i ); }
        std::string operator()( const just::MonBox& r ) const { return "mon_box " + std::to_string( r.i ); }
        std::string operator()( const just::Nec& r ) const { return "nec " + std::to_string( r.i ); }
    };
    return std::visit( visitor{}, j );
}

[[nodiscard]] inline Verdict check_derivation( const Derivation& d )
{
    Verdict v;
    const auto& steps = d.steps;

    auto reject = [ & ]( std::size_t index, std::string reason ) {
        v.accepted = false;
        v.rejected = RejectedStep{ index, std::move( reason ) };
        return v;
    };
    if ( steps.empty() )
        return reject( 0, "a derivation needs at least one step" );

    for ( std::size_t k = 0; k < steps.size(); ++k )
    {
        const std::size_t index = k + 1;
        const Formula& f = steps[ k ].formula;
        std::optional< AxiomScheme > scheme;

        // Resolves a cited step; only strictly earlier steps are allowed.
        auto earlier = [ & ]( std::size_t i ) -> const Formula* {
            return ( i >= 1 && i < index ) ? &steps[ i - 1 ].formula : nullptr;
        };

        std::optional< std::string > problem;
        std::visit(
                [ & ]( const auto& j ) {
                    using J = std::decay_t< decltype( j ) >;
                    if constexpr ( std::is_same_v< J, just::Premise > )
                    {
                        if ( std::find( d.premises.begin(), d.premises.end(), f ) == d.premises.end() )
                            problem = "not among the premises";
                    }
                    else if constexpr ( std::is_same_v< J, just::Axiom > )
                    {
                        scheme = match_axiom( f );
                        if ( !scheme )
                            problem = "not an instance of any GIT axiom scheme";
                    }
                    else if constexpr ( std::is_same_v< J, just::MP > )
                    {
                        const Formula* a = earlier( j.i );
                        const Formula* b = earlier( j.j );
                        if ( !a || !b )
                            problem = "modus ponens cites a step that is not earlier";
                        else
                        {
                            auto fits = []( const Formula& minor, const Formula& major, const Formula& concl ) {
                                return major.op() == Op::Implies && major.lhs() == minor && major.rhs() == concl;
                            };
                            if ( !fits( *a, *b, f ) && !fits( *b, *a, f ) )
                                problem = "modus ponens premises do not have the shapes φ and φ -> (this step)";
                        }
                    }
                    else if constexpr ( std::is_same_v< J, just::REBox > || std::is_same_v< J, just::REBBox > )
                    {
                        constexpr Op modal = std::is_same_v< J, just::REBox > ? Op::Box : Op::BBox;
                        const Formula* src = earlier( j.i );
                        if ( !src )
                            problem = "extensionality cites a step that is not earlier";
                        else if ( src->op() != Op::Iff )
                            problem = "extensionality needs a cited biconditional";
                        else if ( !( f == fml::iff( Formula::unary( modal, src->lhs() ),
                                                   Formula::unary( modal, src->rhs() ) ) ) )
                            problem = "conclusion is not the boxed biconditional of the cited step";
                    }
                    else if constexpr ( std::is_same_v< J, just::MonBox > )
                    {
                        const Formula* src = earlier( j.i );
                        if ( !src )
                            problem = "monotonicity cites a step that is not earlier";
                        else if ( src->op() != Op::Implies )
                            problem = "monotonicity needs a cited implication";
                        else if ( !( f == fml::imp( fml::box( src->lhs() ), fml::box( src->rhs() ) ) ) )
                            problem = "conclusion is not the boxed implication of the cited step";
                        else
                            v.derived_rule_steps.push_back( index );
                    }
                    else if constexpr ( std::is_same_v< J, just::Nec > )
                    {
                        problem = "necessitation is not a rule of GIT";
                    }
                },
                steps[ k ].by );

        v.schemes.push_back( scheme );
        if ( problem )
            return reject( index, *problem );
    }
    v.accepted = true;
    return v;
}

[[nodiscard]] inline std::optional< Formula > conclusion( const Derivation& d )
{
    if ( d.steps.empty() )
        return std::nullopt;
    return d.steps.back().formula;
}

} // namespace infra
