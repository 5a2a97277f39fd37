#include <gtest/gtest.h>

#include <random>

#include <proofsys/graph_synth.hpp>

#include "support.hpp"

using namespace proofsys;
using testing_support::brute_range;

namespace
{

// Oracles written against the adjacency matrix directly.

bool degrees_even( const Bits& g, std::size_t n )
{
  for ( std::size_t u = 0; u < n; ++u )
  {
    int d = 0;
    for ( std::size_t v = 0; v < n; ++v )
    {
      d += g[u * n + v];
    }
    if ( d % 2 )
    {
      return false;
    }
  }
  return true;
}

bool connected_first_last( const Bits& g, std::size_t n )
{
  std::vector<std::size_t> root( n );
  for ( std::size_t i = 0; i < n; ++i )
  {
    root[i] = i;
  }
  auto find = [&]( std::size_t x ) {
    while ( root[x] != x )
    {
      x = root[x];
    }
    return x;
  };
  for ( std::size_t u = 0; u < n; ++u )
  {
    for ( std::size_t v = 0; v < n; ++v )
    {
      if ( g[u * n + v] )
      {
        root[find( u )] = find( v );
      }
    }
  }
  return find( 0 ) == find( n - 1 );
}

bool last_unreachable( const Bits& g, std::size_t n )
{
  std::vector<bool> seen( n );
  std::vector<std::size_t> stack{ 0 };
  seen[0] = true;
  while ( !stack.empty() )
  {
    const auto u = stack.back();
    stack.pop_back();
    for ( std::size_t v = 0; v < n; ++v )
    {
      if ( g[u * n + v] && !seen[v] )
      {
        seen[v] = true;
        stack.push_back( v );
      }
    }
  }
  return !seen[n - 1];
}

// Undirected graph from the bits of `code`, one per pair in row-major order.
Bits graph_of( std::uint64_t code, std::size_t n )
{
  Bits g( n * n, 0 );
  std::size_t k = 0;
  for ( std::size_t u = 0; u < n; ++u )
  {
    for ( std::size_t v = u + 1; v < n; ++v, ++k )
    {
      g[u * n + v] = g[v * n + u] = ( code >> k ) & 1u;
    }
  }
  return g;
}

std::set<std::string> undirected_slice( std::size_t n, const std::function<bool( const Bits& )>& pred )
{
  std::set<std::string> out;
  for ( std::uint64_t code = 0; code < ( std::uint64_t{ 1 } << ( n * ( n - 1 ) / 2 ) ); ++code )
  {
    const auto g = graph_of( code, n );
    if ( pred( g ) )
    {
      out.insert( to_string( g ) );
    }
  }
  return out;
}

Bits edges( std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> list )
{
  return undirected_word( n, std::vector( list ) );
}

} // namespace

TEST( TriangleBasis, SmallCases )
{
  const auto b3 = triangle_basis( 3 );
  ASSERT_EQ( b3.triangles.size(), 1u );
  EXPECT_EQ( b3.triangles[0], ( Triangle{ 0, 1, 2 } ) );
  const auto b4 = triangle_basis( 4 );
  EXPECT_EQ( b4.triangles, ( std::vector<Triangle>{ { 0, 1, 2 }, { 0, 1, 3 }, { 1, 2, 3 } } ) );
  EXPECT_TRUE( triangle_basis( 2 ).triangles.empty() );
}

TEST( TriangleBasis, BoundsUpTo200 )
{
  for ( std::size_t n = 3; n <= 200; ++n )
  {
    const auto b = triangle_basis( n );
    EXPECT_LE( b.max_incidence(), 6u ) << n;
    EXPECT_LE( 2 * b.triangles.size(), 3 * n * n ) << n;
    EXPECT_EQ( b.triangles.size(), n * ( n - 1 ) / 2 - ( n - 1 ) ) << n;
    for ( const auto& t : b.triangles )
    {
      const auto a = t.v - t.u, c = t.w - t.v;
      ASSERT_TRUE( a == c || c == a + 1 );
    }
    for ( std::size_t u = 0; u < n; ++u )
    {
      for ( std::size_t w = u + 2; w < n; ++w )
      {
        const auto t = b.longest_of[pair_index( u, w, n )];
        ASSERT_NE( t, TriangleBasis::none );
        EXPECT_EQ( b.triangles[t], ( Triangle{ u, u + ( w - u ) / 2, w } ) );
      }
    }
  }
}

TEST( Cycles, SingleTriangle )
{
  const auto c = synth_cycles( 3 );
  EXPECT_EQ( eval( c, parse_bits( "1" ) ), edges( 3, { { 0, 1 }, { 1, 2 }, { 0, 2 } } ) );
  EXPECT_EQ( to_string( eval( c, parse_bits( "0" ) ) ), "000000000" );
}

TEST( Cycles, ExhaustiveRange )
{
  for ( std::size_t n = 3; n <= 6; ++n )
  {
    EXPECT_EQ( brute_range( synth_cycles( n ) ), undirected_slice( n, [&]( const Bits& g ) { return degrees_even( g, n ); } ) )
        << n;
  }
}

TEST( Decompose, Triangle )
{
  const auto d = decompose_cycles( edges( 3, { { 0, 1 }, { 1, 2 }, { 0, 2 } } ) );
  EXPECT_EQ( to_string( d.coefficients ), "1" );
  EXPECT_EQ( d.trace, ( std::vector<Potential>{ { 2, 1 }, { 0, 0 } } ) );
}

TEST( Decompose, FourCycle )
{
  const auto g = edges( 4, { { 0, 1 }, { 1, 2 }, { 2, 3 }, { 0, 3 } } );
  const auto d = decompose_cycles( g );
  // (0,3) goes with middle vertex 1, leaving the triangle (1,2,3)
  EXPECT_EQ( to_string( d.coefficients ), "011" );
  EXPECT_EQ( d.trace, ( std::vector<Potential>{ { 3, 1 }, { 2, 1 }, { 0, 0 } } ) );
  EXPECT_EQ( eval( synth_cycles( 4 ), d.coefficients ), g );
}

TEST( Decompose, ExhaustiveUpToSix )
{
  for ( std::size_t n = 1; n <= 6; ++n )
  {
    const auto c = synth_cycles( n );
    for ( std::uint64_t code = 0; code < ( std::uint64_t{ 1 } << ( n * ( n - 1 ) / 2 ) ); ++code )
    {
      const auto g = graph_of( code, n );
      if ( !degrees_even( g, n ) )
      {
        EXPECT_THROW( decompose_cycles( g ), witness_error );
        continue;
      }
      const auto d = decompose_cycles( g );
      for ( std::size_t i = 0; i + 1 < d.trace.size(); ++i )
      {
        ASSERT_LT( d.trace[i + 1], d.trace[i] );
      }
      EXPECT_EQ( eval( c, d.coefficients ), g );
    }
  }
}

TEST( Decompose, RejectsDirected )
{
  EXPECT_THROW( decompose_cycles( parse_bits( "0100" ) ), encoding_error );
}

TEST( Cycles, XorClosure )
{
  std::mt19937_64 rng( 7 );
  for ( std::size_t n = 3; n <= 8; ++n )
  {
    const auto c = synth_cycles( n );
    for ( int trial = 0; trial < 200; ++trial )
    {
      const auto g1 = eval( c, random_bits( rng, c.num_inputs() ) );
      const auto g2 = eval( c, random_bits( rng, c.num_inputs() ) );
      Bits sum( g1.size() );
      for ( std::size_t i = 0; i < sum.size(); ++i )
      {
        sum[i] = g1[i] ^ g2[i];
      }
      EXPECT_TRUE( degrees_even( sum, n ) );
    }
  }
}

TEST( USTConn, AllZeroProofGivesTheEdge )
{
  for ( std::size_t n = 2; n <= 6; ++n )
  {
    const auto c = synth_ustconn( n );
    EXPECT_EQ( eval( c, Bits( c.num_inputs(), 0 ) ), edges( n, { { 0, n - 1 } } ) ) << n;
  }
}

TEST( USTConn, FullMaskIsComplete )
{
  const std::size_t n = 5;
  const auto c = synth_ustconn( n );
  std::mt19937_64 rng( 3 );
  auto x = random_bits( rng, c.num_inputs() );
  std::fill( x.end() - n * ( n - 1 ) / 2, x.end(), 1 );
  EXPECT_EQ( popcount( eval( c, x ) ), n * ( n - 1 ) );
}

TEST( USTConn, ExhaustiveRange )
{
  for ( std::size_t n = 2; n <= 4; ++n )
  {
    EXPECT_EQ( brute_range( synth_ustconn( n ) ),
               undirected_slice( n, [&]( const Bits& g ) { return connected_first_last( g, n ); } ) )
        << n;
  }
}

TEST( USTConn, PathWitness )
{
  const std::size_t n = 5;
  const auto g = edges( n, { { 0, 1 }, { 1, 2 }, { 2, 3 }, { 3, 4 } } );
  const auto proof = witness_graph( GraphKind::ustconn, g );
  const auto coefficients = triangle_basis( n ).triangles.size();
  EXPECT_EQ( popcount( std::span( proof ).subspan( coefficients ) ), 0u );
  EXPECT_EQ( eval( synth_ustconn( n ), proof ), g );
  EXPECT_THROW( witness_graph( GraphKind::ustconn, edges( n, { { 0, 1 } } ) ), witness_error );
}

TEST( USTConn, CompletenessAndSoundness )
{
  std::mt19937_64 rng( 11 );
  for ( std::size_t n = 5; n <= 6; ++n )
  {
    const auto c = synth_ustconn( n );
    for ( std::uint64_t code = 0; code < ( std::uint64_t{ 1 } << ( n * ( n - 1 ) / 2 ) ); code += n == 5 ? 1 : 7 )
    {
      const auto g = graph_of( code, n );
      if ( connected_first_last( g, n ) )
      {
        ASSERT_EQ( eval( c, witness_graph( GraphKind::ustconn, g ) ), g );
      }
    }
    for ( int trial = 0; trial < 20000; ++trial )
    {
      ASSERT_TRUE( connected_first_last( eval( c, biased_bits( rng, c.num_inputs(), ( trial % 8 + 1 ) * 7000 ) ), n ) );
    }
  }
}

TEST( UnReach, Examples )
{
  const auto c = synth_unreach( 3 );
  EXPECT_EQ( c.num_inputs(), 10u );
  EXPECT_EQ( popcount( eval( c, Bits( 10, 0 ) ) ), 0u );
  // A = {(1,2)}, X_2 = 1
  const auto b = eval( c, parse_bits( "010000000" "1" ) );
  EXPECT_EQ( to_string( b ), "010000000" );
  EXPECT_TRUE( last_unreachable( b, 3 ) );
  // X_2 = 0 cuts the edge
  EXPECT_EQ( popcount( eval( c, parse_bits( "010000000" "0" ) ) ), 0u );
}

TEST( UnReach, ExhaustiveRange )
{
  for ( std::size_t n = 2; n <= 3; ++n )
  {
    EXPECT_EQ( brute_range( synth_unreach( n ) ),
               testing_support::brute_slice( n * n, [&]( const Bits& g ) { return last_unreachable( g, n ); } ) );
  }
}

TEST( UnReach, Completeness )
{
  const std::size_t n = 4;
  const auto c = synth_unreach( n );
  for ( std::uint64_t code = 0; code < ( 1u << 16 ); ++code )
  {
    const auto g = bits_of( code, 16 );
    if ( last_unreachable( g, n ) )
    {
      ASSERT_EQ( eval( c, witness_graph( GraphKind::unreach, g ) ), g );
    }
    else
    {
      EXPECT_THROW( witness_graph( GraphKind::unreach, g ), witness_error );
    }
  }
  const auto empty = witness_graph( GraphKind::unreach, Bits( 16, 0 ) );
  EXPECT_EQ( to_string( std::span( empty ).subspan( 16 ) ), "00" );
}

TEST( GraphSynth, Locality )
{
  for ( std::size_t n : { 3u, 4u, 5u, 8u, 13u, 50u, 200u } )
  {
    EXPECT_LE( metrics( synth_cycles( n ) ).max_cone(), 6u ) << n;
    EXPECT_LE( metrics( synth_ustconn( n ) ).max_cone(), 8u ) << n;
    EXPECT_LE( metrics( synth_unreach( n ) ).max_cone(), 3u ) << n;
  }
}

TEST( GraphSynth, ParameterErrors )
{
  EXPECT_THROW( synth_ustconn( 1 ), synthesis_error );
  EXPECT_THROW( synth_unreach( 1 ), synthesis_error );
}
