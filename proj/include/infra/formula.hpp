#pragma once

#include "error.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace infra
{

enum class Op : std::uint8_t
{
    Var,
    Bottom,
    Top,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Box,  // □
    BBox, // ■
};

[[nodiscard]] constexpr bool is_binary( Op op ) { return op == Op::And || op == Op::Or || op == Op::Implies || op == Op::Iff; }
[[nodiscard]] constexpr bool is_unary( Op op ) { return op == Op::Not || op == Op::Box || op == Op::BBox; }
[[nodiscard]] constexpr bool is_modal( Op op ) { return op == Op::Box || op == Op::BBox; }

// Immutable formula tree. Copies share structure.
class Formula
{
    struct node
    {
        Op op;
        std::string name;
        std::shared_ptr< const node > lhs;
        std::shared_ptr< const node > rhs;
    };

    std::shared_ptr< const node > _node;

    explicit Formula( std::shared_ptr< const node > n ) : _node{ std::move( n ) } {}

    static Formula make( Op op, std::string name, const Formula* l, const Formula* r )
    {
        auto n = std::make_shared< node >();
        n->op = op;
        n->name = std::move( name );
        if ( l )
            n->lhs = l->_node;
        if ( r )
            n->rhs = r->_node;
        return Formula{ std::move( n ) };
    }

public:
    Formula() : Formula( top() ) {}

    static Formula var( std::string name ) { return make( Op::Var, std::move( name ), nullptr, nullptr ); }
    static Formula bottom() { return make( Op::Bottom, {}, nullptr, nullptr ); }
    static Formula top() { return make( Op::Top, {}, nullptr, nullptr ); }
    static Formula unary( Op op, const Formula& f ) { return make( op, {}, &f, nullptr ); }
    static Formula binary( Op op, const Formula& l, const Formula& r ) { return make( op, {}, &l, &r ); }

    [[nodiscard]] Op op() const { return _node->op; }
    [[nodiscard]] const std::string& name() const { return _node->name; }
    [[nodiscard]] Formula lhs() const { return Formula{ _node->lhs }; }
    [[nodiscard]] Formula rhs() const { return Formula{ _node->rhs }; }
    // Operand of a unary node.
    [[nodiscard]] Formula arg() const { return lhs(); }

    // Stable identity of the shared node, for memoization.
    [[nodiscard]] const void* id() const { return _node.get(); }

    [[nodiscard]] std::size_t size() const
    {
        if ( is_binary( op() ) )
            return 1 + lhs().size() + rhs().size();
        if ( is_unary( op() ) )
            return 1 + arg().size();
        return 1;
    }

    [[nodiscard]] std::size_t depth() const
    {
        if ( is_binary( op() ) )
            return 1 + std::max( lhs().depth(), rhs().depth() );
        if ( is_unary( op() ) )
            return 1 + arg().depth();
        return 0;
    }

    [[nodiscard]] std::size_t modal_depth() const
    {
        if ( is_binary( op() ) )
            return std::max( lhs().modal_depth(), rhs().modal_depth() );
        if ( is_unary( op() ) )
            return ( is_modal( op() ) ? 1 : 0 ) + arg().modal_depth();
        return 0;
    }

    void collect_variables( std::set< std::string >& out ) const
    {
        if ( op() == Op::Var )
            out.insert( name() );
        else if ( is_binary( op() ) )
        {
            lhs().collect_variables( out );
            rhs().collect_variables( out );
        }
        else if ( is_unary( op() ) )
            arg().collect_variables( out );
    }

    [[nodiscard]] std::set< std::string > variables() const
    {
        std::set< std::string > out;
        collect_variables( out );
        return out;
    }

    friend bool operator==( const Formula& a, const Formula& b )
    {
        if ( a._node == b._node )
            return true;
        if ( a.op() != b.op() )
            return false;
        if ( a.op() == Op::Var )
            return a.name() == b.name();
        if ( is_binary( a.op() ) )
            return a.lhs() == b.lhs() && a.rhs() == b.rhs();
        if ( is_unary( a.op() ) )
            return a.arg() == b.arg();
        return true;
    }

    // Structural total order (used for keyed containers).
    friend bool operator<( const Formula& a, const Formula& b )
    {
        if ( a._node == b._node )
            return false;
        if ( a.op() != b.op() )
            return a.op() < b.op();
        if ( a.op() == Op::Var )
            return a.name() < b.name();
        if ( is_binary( a.op() ) )
        {
            if ( a.lhs() == b.lhs() )
                return a.rhs() < b.rhs();
            return a.lhs() < b.lhs();
        }
        if ( is_unary( a.op() ) )
            return a.arg() < b.arg();
        return false;
    }
};

namespace fml
{

inline Formula var( std::string name ) { return Formula::var( std::move( name ) ); }
inline Formula bottom() { return Formula::bottom(); }
inline Formula top() { return Formula::top(); }
inline Formula neg( const Formula& f ) { return Formula::unary( Op::Not, f ); }
inline Formula box( const Formula& f ) { return Formula::unary( Op::Box, f ); }
inline Formula bbox( const Formula& f ) { return Formula::unary( Op::BBox, f ); }
inline Formula conj( const Formula& a, const Formula& b ) { return Formula::binary( Op::And, a, b ); }
inline Formula disj( const Formula& a, const Formula& b ) { return Formula::binary( Op::Or, a, b ); }
inline Formula imp( const Formula& a, const Formula& b ) { return Formula::binary( Op::Implies, a, b ); }
inline Formula iff( const Formula& a, const Formula& b ) { return Formula::binary( Op::Iff, a, b ); }

} // namespace fml

// Binding strength used by both parser and printer.
[[nodiscard]] constexpr int precedence( Op op )
{
    switch ( op )
    {
    case Op::Iff: return 1;
    case Op::Implies: return 2;
    case Op::Or: return 3;
    case Op::And: return 4;
    case Op::Not:
    case Op::Box:
    case Op::BBox: return 5;
    default: return 6;
    }
}

[[nodiscard]] constexpr std::string_view op_symbol( Op op )
{
    switch ( op )
    {
    case Op::Not: return "!";
    case Op::And: return " & ";
    case Op::Or: return " | ";
    case Op::Implies: return " -> ";
    case Op::Iff: return " <-> ";
    case Op::Box: return "[]";
    case Op::BBox: return "[[]]";
    case Op::Top: return "true";
    case Op::Bottom: return "false";
    case Op::Var: return "";
    }
    return "";
}

// Minimal parenthesization: `->` groups to the right, the other binary
// operators to the left.
[[nodiscard]] inline std::string render( const Formula& f )
{
    auto wrap = []( const Formula& child, bool parens ) {
        return parens ? "(" + render( child ) + ")" : render( child );
    };

    const Op op = f.op();
    if ( op == Op::Var )
        return f.name();
    if ( op == Op::Top || op == Op::Bottom )
        return std::string( op_symbol( op ) );
    if ( is_unary( op ) )
        return std::string( op_symbol( op ) ) + wrap( f.arg(), precedence( f.arg().op() ) < precedence( op ) );

    const int p = precedence( op );
    const int pl = precedence( f.lhs().op() );
    const int pr = precedence( f.rhs().op() );
    const bool right_assoc = op == Op::Implies;
    const bool paren_left = right_assoc ? pl <= p : pl < p;
    const bool paren_right = right_assoc ? pr < p : pr <= p;
    return wrap( f.lhs(), paren_left ) + std::string( op_symbol( op ) ) + wrap( f.rhs(), paren_right );
}

struct ParseFailure
{
    std::size_t offset;
    std::vector< std::string > expected;
};

class ParseError : public Error
{
    ParseFailure _failure;

    static std::string describe( const ParseFailure& f )
    {
        std::string msg = "at offset " + std::to_string( f.offset ) + ", expected one of:";
        for ( const auto& e : f.expected )
            msg += " " + e;
        return msg;
    }

public:
    explicit ParseError( ParseFailure failure )
        : Error( ErrorKind::ParseError, describe( failure ) ), _failure{ std::move( failure ) } {}

    [[nodiscard]] std::size_t offset() const { return _failure.offset; }
    [[nodiscard]] const std::vector< std::string >& expected() const { return _failure.expected; }
};

namespace detail
{

enum class Tok
{
    End,
    LParen,
    RParen,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Box,
    BBox,
    True,
    False,
    Ident,
    Invalid,
};

struct token
{
    Tok kind;
    std::size_t offset;
    std::string text;
};

// Byte-level lexer; the Unicode aliases are matched as UTF-8 sequences.
class lexer
{
    std::string_view _src;
    std::size_t _pos = 0;

    bool eat( std::string_view s )
    {
        if ( _src.substr( _pos, s.size() ) == s )
        {
            _pos += s.size();
            return true;
        }
        return false;
    }

public:
    explicit lexer( std::string_view src ) : _src{ src } {}

    token next()
    {
        while ( _pos < _src.size() && ( _src[ _pos ] == ' ' || _src[ _pos ] == '\t' || _src[ _pos ] == '\n'
                                        || _src[ _pos ] == '\r' ) )
            ++_pos;
        const std::size_t start = _pos;
        if ( _pos >= _src.size() )
            return { Tok::End, start, {} };

        struct spelling
        {
            std::string_view text;
            Tok kind;
        };
        // Longest spellings first where prefixes overlap.
        static constexpr spelling table[] = {
                { "[[]]", Tok::BBox }, { "[]", Tok::Box },        { "<->", Tok::Iff },   { "->", Tok::Implies },
                { "(", Tok::LParen },  { ")", Tok::RParen },      { "!", Tok::Not },     { "&", Tok::And },
                { "|", Tok::Or },      { "¬", Tok::Not },    { "∧", Tok::And }, { "∨", Tok::Or },
                { "→", Tok::Implies }, { "↔", Tok::Iff }, { "□", Tok::Box }, { "■", Tok::BBox },
                { "⊤", Tok::True }, { "⊥", Tok::False },
        };
        for ( const auto& s : table )
            if ( eat( s.text ) )
                return { s.kind, start, std::string( s.text ) };

        const char c = _src[ _pos ];
        if ( c >= 'a' && c <= 'z' )
        {
            while ( _pos < _src.size()
                    && ( std::isalnum( static_cast< unsigned char >( _src[ _pos ] ) ) || _src[ _pos ] == '_' ) )
                ++_pos;
            std::string word( _src.substr( start, _pos - start ) );
            if ( word == "true" )
                return { Tok::True, start, word };
            if ( word == "false" )
                return { Tok::False, start, word };
            return { Tok::Ident, start, word };
        }
        ++_pos;
        return { Tok::Invalid, start, std::string( 1, c ) };
    }
};

class parser
{
    lexer _lex;
    token _cur;

    void advance() { _cur = _lex.next(); }

    [[noreturn]] void fail( std::vector< std::string > expected ) const
    {
        throw ParseError( ParseFailure{ _cur.offset, std::move( expected ) } );
    }

    static std::vector< std::string > operand_start()
    {
        return { "!", "[]", "[[]]", "(", "true", "false", "identifier" };
    }

    Formula parse_iff()
    {
        Formula left = parse_implies();
        while ( _cur.kind == Tok::Iff )
        {
            advance();
            left = fml::iff( left, parse_implies() );
        }
        return left;
    }

    Formula parse_implies()
    {
        Formula left = parse_or();
        if ( _cur.kind == Tok::Implies )
        {
            advance();
            return fml::imp( left, parse_implies() );
        }
        return left;
    }

    Formula parse_or()
    {
        Formula left = parse_and();
        while ( _cur.kind == Tok::Or )
        {
            advance();
            left = fml::disj( left, parse_and() );
        }
        return left;
    }

    Formula parse_and()
    {
        Formula left = parse_unary();
        while ( _cur.kind == Tok::And )
        {
            advance();
            left = fml::conj( left, parse_unary() );
        }
        return left;
    }

    Formula parse_unary()
    {
        switch ( _cur.kind )
        {
        case Tok::Not: advance(); return fml::neg( parse_unary() );
        case Tok::Box: advance(); return fml::box( parse_unary() );
        case Tok::BBox: advance(); return fml::bbox( parse_unary() );
        default: return parse_atom();
        }
    }

    Formula parse_atom()
    {
        switch ( _cur.kind )
        {
        case Tok::True: advance(); return fml::top();
        case Tok::False: advance(); return fml::bottom();
        case Tok::Ident:
        {
            Formula v = fml::var( _cur.text );
            advance();
            return v;
        }
        case Tok::LParen:
        {
            advance();
            Formula inner = parse_iff();
            if ( _cur.kind != Tok::RParen )
                fail( { ")", "&", "|", "->", "<->" } );
            advance();
            return inner;
        }
        default: fail( operand_start() );
        }
    }

public:
    explicit parser( std::string_view text ) : _lex{ text }, _cur{ _lex.next() } {}

    Formula parse_all()
    {
        Formula f = parse_iff();
        if ( _cur.kind != Tok::End )
            fail( { "end of input", "&", "|", "->", "<->" } );
        return f;
    }
};

} // namespace detail

// Grammar, loosest to tightest: `<->` (left), `->` (right), `|`, `&`, then
// prefix `!`, `[]`, `[[]]`.
[[nodiscard]] inline Formula parse( std::string_view text ) { return detail::parser( text ).parse_all(); }

} // namespace infra
