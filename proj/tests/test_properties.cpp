#include <infra/lemmas.hpp>
#include <infra/operators.hpp>
#include <infra/setfam.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace infra;

namespace
{

std::vector< mask_t > random_seeds( std::mt19937_64& rng, const Universe& u )
{
    std::vector< mask_t > seeds( rng() % 7 );
    for ( auto& s : seeds )
        s = rng() & u.full();
    return seeds;
}

} // namespace

TEST( Generate, IdempotentMonotoneValid )
{
    std::mt19937_64 rng( 42 );
    for ( int i = 0; i < 2000; ++i )
    {
        const std::size_t n = 1 + rng() % 10;
        const Universe u = Universe::letters( n );
        const bool gen = rng() % 2;
        auto seeds = random_seeds( rng, u );
        const auto t = generate_infra_topology_masks( u, seeds, gen );

        std::vector< mask_t > members( t.masks().begin(), t.masks().end() );
        ASSERT_EQ( generate_infra_topology_masks( u, members, gen ), t );
        ASSERT_TRUE( std::holds_alternative< InfraTopology >( InfraTopology::validate( u, members, gen ) ) );
        for ( mask_t s : seeds )
            ASSERT_TRUE( t.contains_mask( s ) );

        auto more = seeds;
        more.push_back( rng() & u.full() );
        const auto bigger = generate_infra_topology_masks( u, more, gen );
        for ( mask_t m : t.masks() )
            ASSERT_TRUE( bigger.contains_mask( m ) );
    }
}

TEST( Operators, InteriorAndClosureLawsOnEightPoints )
{
    std::mt19937_64 rng( 5 );
    const Universe u = Universe::letters( 8 );
    for ( int i = 0; i < 2000; ++i )
    {
        const auto t = generate_infra_topology_masks( u, random_seeds( rng, u ), false );
        const mask_t a = rng() & u.full();
        const mask_t b = rng() & u.full();
        const mask_t ia = i_interior_mask( t, a );
        const mask_t ca = i_closure_mask( t, a );
        ASSERT_TRUE( is_subset_mask( ia, a ) );
        ASSERT_TRUE( is_subset_mask( a, ca ) );
        ASSERT_EQ( i_interior_mask( t, ia ), ia );
        ASSERT_EQ( i_closure_mask( t, ca ), ca );
        ASSERT_EQ( i_closure_mask( t, a ), ~i_interior_mask( t, ~a & u.full() ) & u.full() );
        if ( is_subset_mask( a, b ) )
        {
            ASSERT_TRUE( is_subset_mask( ia, i_interior_mask( t, b ) ) );
            ASSERT_TRUE( is_subset_mask( ca, i_closure_mask( t, b ) ) );
        }
        ASSERT_TRUE( is_subset_mask( i_interior_mask( t, a & b ), i_interior_mask( t, a ) & i_interior_mask( t, b ) ) );
    }
}

TEST( Lemmas, SweepHasNoViolations )
{
    const auto results = sweep_laws();
    EXPECT_EQ( results.size(), laws().size() );
    for ( const auto& r : results )
    {
        EXPECT_TRUE( r.passed() ) << r.name << ": " << r.first_violation.value_or( "" );
        EXPECT_GT( r.checked, 0U ) << r.name;
    }
}

TEST( Lemmas, GroupFilter )
{
    for ( const auto& r : sweep_laws( 3, "closure" ) )
        EXPECT_EQ( r.group, "closure" );
    EXPECT_TRUE( sweep_laws( 3, "nothing" ).empty() );
}
