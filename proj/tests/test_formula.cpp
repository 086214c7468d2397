#include <infra/formula.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace infra;
using namespace infra::fml;

namespace
{

std::size_t parse_error_offset( std::string_view text )
{
    try
    {
        (void)parse( text );
    }
    catch ( const ParseError& e )
    {
        EXPECT_EQ( e.kind(), ErrorKind::ParseError );
        return e.offset();
    }
    ADD_FAILURE() << "no parse error for " << text;
    return 0;
}

Formula random_formula( std::mt19937_64& rng, int depth )
{
    std::uniform_int_distribution< int > pick( 0, depth <= 0 ? 3 : 11 );
    static const char* const names[] = { "p", "q", "r" };
    switch ( pick( rng ) )
    {
    case 0: return top();
    case 1: return bottom();
    case 2:
    case 3: return var( names[ rng() % 3 ] );
    case 4: return neg( random_formula( rng, depth - 1 ) );
    case 5: return box( random_formula( rng, depth - 1 ) );
    case 6: return bbox( random_formula( rng, depth - 1 ) );
    case 7: return conj( random_formula( rng, depth - 1 ), random_formula( rng, depth - 1 ) );
    case 8: return disj( random_formula( rng, depth - 1 ), random_formula( rng, depth - 1 ) );
    case 9: return imp( random_formula( rng, depth - 1 ), random_formula( rng, depth - 1 ) );
    default: return iff( random_formula( rng, depth - 1 ), random_formula( rng, depth - 1 ) );
    }
}

} // namespace

TEST( Parse, BoxToBBox )
{
    EXPECT_EQ( parse( "[]p -> [[]]p" ), imp( box( var( "p" ) ), bbox( var( "p" ) ) ) );
}

TEST( Parse, MBoxInstance )
{
    const auto p = var( "p" );
    const auto q = var( "q" );
    EXPECT_EQ( parse( "[](p & q) -> []p & []q" ), imp( box( conj( p, q ) ), conj( box( p ), box( q ) ) ) );
}

TEST( Parse, ErrorOffset )
{
    EXPECT_EQ( parse_error_offset( "p -> -> q" ), 5U );
    EXPECT_EQ( parse_error_offset( "" ), 0U );
    EXPECT_EQ( parse_error_offset( "(p & q" ), 6U );
    EXPECT_EQ( parse_error_offset( "p q" ), 2U );
    EXPECT_EQ( parse_error_offset( "p # q" ), 2U );
}

TEST( Parse, ExpectedTokensAreReported )
{
    try
    {
        (void)parse( "p -> -> q" );
        FAIL();
    }
    catch ( const ParseError& e )
    {
        EXPECT_FALSE( e.expected().empty() );
        EXPECT_NE( std::string( e.what() ).find( "offset 5" ), std::string::npos );
    }
}

TEST( Parse, Precedence )
{
    const auto p = var( "p" );
    const auto q = var( "q" );
    const auto r = var( "r" );
    EXPECT_EQ( parse( "p | q & r" ), disj( p, conj( q, r ) ) );
    EXPECT_EQ( parse( "p -> q -> r" ), imp( p, imp( q, r ) ) );
    EXPECT_EQ( parse( "p <-> q <-> r" ), iff( iff( p, q ), r ) );
    EXPECT_EQ( parse( "!p & q" ), conj( neg( p ), q ) );
    EXPECT_EQ( parse( "[]!p" ), box( neg( p ) ) );
    EXPECT_EQ( parse( "p -> q <-> r" ), iff( imp( p, q ), r ) );
    EXPECT_EQ( parse( "  true|false " ), disj( top(), bottom() ) );
}

TEST( Parse, UnicodeAliases )
{
    EXPECT_EQ( parse( "□p → ■p" ), parse( "[]p -> [[]]p" ) );
    EXPECT_EQ( parse( "¬p ∧ q ∨ r ↔ ⊤" ), parse( "!p & q | r <-> true" ) );
}

TEST( Parse, Identifiers )
{
    EXPECT_EQ( parse( "p_1 & qQ2" ), conj( var( "p_1" ), var( "qQ2" ) ) );
}

TEST( Render, Examples )
{
    EXPECT_EQ( render( box( var( "p" ) ) ), "[]p" );
    EXPECT_EQ( render( imp( var( "p" ), imp( var( "q" ), var( "p" ) ) ) ), "p -> q -> p" );
    EXPECT_EQ( render( conj( disj( var( "p" ), var( "q" ) ), var( "r" ) ) ), "(p | q) & r" );
    EXPECT_EQ( render( imp( imp( var( "p" ), var( "q" ) ), var( "r" ) ) ), "(p -> q) -> r" );
    EXPECT_EQ( render( box( conj( var( "p" ), var( "q" ) ) ) ), "[](p & q)" );
}

TEST( Render, RoundTripOnRandomFormulas )
{
    std::mt19937_64 rng( 20261019 );
    for ( int i = 0; i < 5000; ++i )
    {
        const auto f = random_formula( rng, 6 );
        ASSERT_LE( f.depth(), 7U );
        const auto text = render( f );
        ASSERT_EQ( parse( text ), f ) << text;
    }
}

TEST( Formula, Measures )
{
    const auto f = parse( "[](p & [[]]q) -> r" );
    EXPECT_EQ( f.modal_depth(), 2U );
    EXPECT_EQ( f.variables(), ( std::set< std::string >{ "p", "q", "r" } ) );
    EXPECT_EQ( f.size(), 7U );
}
