#include <infra/operators.hpp>
#include <infra/oracle.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace infra;

namespace
{

InfraTopology random_space( std::mt19937_64& rng, std::size_t n )
{
    const Universe u = Universe::letters( n );
    std::vector< mask_t > seeds( rng() % 6 );
    for ( auto& s : seeds )
        s = rng() & u.full();
    return generate_infra_topology_masks( u, seeds, false );
}

} // namespace

// Frozen from the enumerator; they match the sequence 1, 4, 45, 2271.
TEST( Oracle, FrozenCounts )
{
    const std::uint64_t expected[] = { 1, 4, 45, 2271 };
    for ( std::size_t n = 1; n <= 4; ++n )
    {
        EXPECT_EQ( oracle::count_infra_topologies( n, false ), expected[ n - 1 ] ) << n;
        EXPECT_EQ( oracle::count_infra_topologies( n, true ), 2 * expected[ n - 1 ] ) << n;
    }
}

TEST( Oracle, CountsStableAcrossJobs )
{
    for ( unsigned jobs : { 1U, 2U, 4U } )
    {
        EXPECT_EQ( oracle::count_infra_topologies( 4, false, jobs ), 2271U );
        EXPECT_EQ( oracle::count_infra_topologies( 4, true, jobs ), 4542U );
    }
}

TEST( Oracle, StreamMatchesEnumeration )
{
    oracle::InfraTopologyStream stream( 3, false );
    const auto all = oracle::enumerate_infra_topologies( 3, false );
    std::size_t i = 0;
    while ( auto t = stream.next() )
    {
        ASSERT_LT( i, all.size() );
        EXPECT_EQ( *t, all[ i++ ] );
        EXPECT_TRUE( t->contains_mask( 0 ) );
        EXPECT_TRUE( t->contains_mask( t->universe().full() ) );
    }
    EXPECT_EQ( i, all.size() );
}

TEST( Oracle, ShardsPartitionTheStream )
{
    std::size_t total = 0;
    for ( std::uint64_t shard = 0; shard < 3; ++shard )
    {
        oracle::InfraTopologyStream stream( 4, true, shard, 3 );
        while ( stream.next() )
            ++total;
    }
    EXPECT_EQ( total, 4542U );
}

TEST( Oracle, UniverseTooLarge )
{
    try
    {
        (void)oracle::count_infra_topologies( 5, false );
        FAIL();
    }
    catch ( const Error& e )
    {
        EXPECT_EQ( e.kind(), ErrorKind::UniverseTooLarge );
    }
}

TEST( Oracle, ClassifyMatchesBruteForceUpToFour )
{
    for ( std::size_t n = 1; n <= 4; ++n )
        for ( bool gen : { false, true } )
            for ( const auto& t : oracle::enumerate_infra_topologies( n, gen ) )
                for ( mask_t a = 0; a <= t.universe().full(); ++a )
                {
                    const Subset s{ t.universe(), a };
                    ASSERT_EQ( classify( t, s ), oracle::brute_classify( t, s ) ) << format( s );
                }
}

TEST( Oracle, ClassifyMatchesBruteForceOnEightPoints )
{
    std::mt19937_64 rng( 8 );
    for ( int i = 0; i < 2000; ++i )
    {
        const auto t = random_space( rng, 8 );
        const Subset s{ t.universe(), rng() & t.universe().full() };
        ASSERT_EQ( classify( t, s ), oracle::brute_classify( t, s ) ) << format( s );
    }
}

TEST( Witness, CatalogVerifies )
{
    const auto ids = oracle::witness_properties();
    EXPECT_EQ( ids.size(), 8U );
    for ( const auto& id : ids )
    {
        const auto b = oracle::find_witness( id );
        EXPECT_TRUE( b.verified ) << id << ": " << b.notes;
        EXPECT_GT( b.searched, 0U ) << id;
        if ( b.quantifier == oracle::Quantifier::May )
            EXPECT_TRUE( b.witness ) << id;
        else
            EXPECT_FALSE( b.witness ) << id;
    }
}

TEST( Witness, PublishedIntersectionWitnessFails )
{
    const auto b = oracle::find_witness( "non-i-genuine-intersection-may-be-i-genuine" );
    ASSERT_TRUE( b.seeded );
    EXPECT_FALSE( b.seeded_verifies );
    EXPECT_FALSE( b.seeded->space.contains_mask( ( b.seeded->a & b.seeded->b ).bits() ) );
    ASSERT_TRUE( b.witness );
    const auto& w = *b.witness;
    EXPECT_FALSE( classify( w.space, w.a ).i_genuine );
    EXPECT_FALSE( classify( w.space, w.b ).i_genuine );
    EXPECT_TRUE( classify( w.space, w.a & w.b ).i_genuine );
}

TEST( Witness, SeededWitnessesRecheck )
{
    for ( const auto& id : oracle::witness_properties() )
    {
        const auto b = oracle::find_witness( id );
        if ( b.seeded && id != "non-i-genuine-intersection-may-be-i-genuine" )
        {
            EXPECT_TRUE( b.seeded_verifies ) << id;
        }
    }
}

TEST( Witness, UnknownProperty )
{
    try
    {
        (void)oracle::find_witness( "no-such-property" );
        FAIL();
    }
    catch ( const Error& e )
    {
        EXPECT_EQ( e.kind(), ErrorKind::UnknownProperty );
    }
}
