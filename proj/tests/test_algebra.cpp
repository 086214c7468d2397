#include <infra/algebra.hpp>
#include <infra/oracle.hpp>

#include <gtest/gtest.h>

using namespace infra;

namespace
{

const Universe& abcd()
{
    static const Universe u = Universe::make( { "a", "b", "c", "d" } );
    return u;
}

InfraTopology space( std::initializer_list< std::initializer_list< std::string_view > > lists, bool generalized = false )
{
    std::vector< mask_t > masks;
    for ( auto l : lists )
        masks.push_back( subset_of( abcd(), l ).bits() );
    return InfraTopology::make( abcd(), std::move( masks ), generalized );
}

InfraTopology ex2() { return space( { {}, { "a", "b", "c", "d" }, { "a" }, { "c" }, { "a", "b" }, { "a", "c" } } ); }
InfraTopology ex3() { return space( { {}, { "a", "b", "c", "d" }, { "c" }, { "d" }, { "b", "c" }, { "c", "d" } } ); }
InfraTopology indiscrete() { return space( { {}, { "a", "b", "c", "d" } } ); }

} // namespace

TEST( Meet, ExamplesTwoAndThree )
{
    EXPECT_EQ( meet( ex2(), ex3() ), space( { {}, { "a", "b", "c", "d" }, { "c" } } ) );
}

TEST( Meet, IdempotentAndBottom )
{
    EXPECT_EQ( meet( ex2(), ex2() ), ex2() );
    EXPECT_EQ( meet( ex2(), indiscrete() ), indiscrete() );
}

TEST( Meet, FlagMismatch )
{
    try
    {
        (void)meet( ex2(), space( { {} }, true ) );
        FAIL();
    }
    catch ( const Error& e )
    {
        EXPECT_EQ( e.kind(), ErrorKind::FlagMismatch );
    }
}

TEST( Meet, UniverseMismatch )
{
    const auto other = InfraTopology::make( Universe::letters( 3 ), { 0, 7 } );
    EXPECT_THROW( (void)meet( ex2(), other ), Error );
}

TEST( Meet, LatticeLawsOnThreePoints )
{
    const auto all = oracle::enumerate_infra_topologies( 3, false );
    for ( const auto& a : all )
    {
        ASSERT_EQ( meet( a, a ), a );
        for ( const auto& b : all )
            ASSERT_EQ( meet( a, b ), meet( b, a ) );
    }
    for ( const auto& a : all )
        for ( const auto& b : all )
            for ( const auto& c : all )
                ASSERT_EQ( meet( meet( a, b ), c ), meet( a, meet( b, c ) ) );
}

TEST( UnionCheck, ExamplesTwoAndThree )
{
    const auto r = union_check( ex2(), ex3() );
    ASSERT_TRUE( std::holds_alternative< UnionInvalid >( r ) );
    const auto& w = std::get< UnionInvalid >( r );
    EXPECT_EQ( w.a, subset_of( abcd(), { "a", "b" } ) );
    EXPECT_EQ( w.b, subset_of( abcd(), { "b", "c" } ) );
    EXPECT_EQ( w.a & w.b, subset_of( abcd(), { "b" } ) );
}

TEST( UnionCheck, TrivialUnions )
{
    for ( const auto& other : { indiscrete(), ex2() } )
    {
        const auto r = union_check( ex2(), other );
        ASSERT_TRUE( std::holds_alternative< InfraTopology >( r ) );
        EXPECT_EQ( std::get< InfraTopology >( r ), ex2() );
    }
}

// Valid unions equal the generated space; invalid witnesses escape.
TEST( UnionCheck, AgreesWithGenerationOnThreePoints )
{
    const auto all = oracle::enumerate_infra_topologies( 3, false );
    for ( const auto& a : all )
        for ( const auto& b : all )
        {
            const auto r = union_check( a, b );
            std::vector< mask_t > joined( a.masks().begin(), a.masks().end() );
            joined.insert( joined.end(), b.masks().begin(), b.masks().end() );
            joined = canonical_family( joined );
            if ( const auto* u = std::get_if< InfraTopology >( &r ) )
            {
                ASSERT_EQ( *u, generate_infra_topology_masks( a.universe(), joined, false ) );
                for ( mask_t m : a.masks() )
                    ASSERT_TRUE( u->contains_mask( m ) );
                for ( mask_t m : b.masks() )
                    ASSERT_TRUE( u->contains_mask( m ) );
            }
            else
            {
                const auto& w = std::get< UnionInvalid >( r );
                ASSERT_TRUE( family_contains( joined, w.a.bits() ) );
                ASSERT_TRUE( family_contains( joined, w.b.bits() ) );
                ASSERT_FALSE( family_contains( joined, ( w.a & w.b ).bits() ) );
            }
        }
}
