#include <gtest/gtest.h>

#include <random>

#include <proofsys/languages.hpp>

#include "support.hpp"

using namespace proofsys;
using testing_support::read_sample;

namespace
{

std::vector<std::string> strings( const std::vector<Bits>& words )
{
  std::vector<std::string> out;
  for ( const auto& w : words )
  {
    out.push_back( to_string( w ) );
  }
  return out;
}

Bits graph( std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> edges )
{
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for ( auto [u, v] : edges )
  {
    e.emplace_back( u - 1, v - 1 );
  }
  return undirected_word( n, e );
}

} // namespace

TEST( Member, Cycles )
{
  EXPECT_TRUE( member( Cycles{}, graph( 4, {} ) ) );
  EXPECT_FALSE( member( Cycles{}, graph( 4, { { 1, 2 } } ) ) );
  EXPECT_TRUE( member( Cycles{}, graph( 4, { { 1, 2 }, { 2, 3 }, { 1, 3 } } ) ) );
}

TEST( Member, Threshold )
{
  EXPECT_TRUE( member( Threshold{ 2 }, parse_bits( "0110" ) ) );
  EXPECT_FALSE( member( Threshold{ 2 }, parse_bits( "0100" ) ) );
}

TEST( Member, GraphEncodingErrors )
{
  auto g = graph( 3, { { 1, 2 } } );
  g[1 * 3 + 0] = 0;
  EXPECT_THROW( member( USTConn{}, g ), encoding_error );
  auto d = graph( 3, {} );
  d[4] = 1;
  EXPECT_THROW( member( Cycles{}, d ), encoding_error );
  EXPECT_THROW( member( Cycles{}, Bits( 5, 0 ) ), encoding_error );
}

TEST( Member, Connectivity )
{
  EXPECT_TRUE( member( USTConn{}, graph( 4, { { 1, 3 }, { 3, 4 } } ) ) );
  EXPECT_FALSE( member( USTConn{}, graph( 4, { { 1, 3 }, { 2, 4 } } ) ) );
  Bits directed( 9, 0 );
  directed[0 * 3 + 1] = 1; // 1 -> 2
  directed[2 * 3 + 1] = 1; // 3 -> 2
  EXPECT_TRUE( member( UnReach{}, directed ) );
  directed[1 * 3 + 2] = 1; // 2 -> 3
  EXPECT_FALSE( member( UnReach{}, directed ) );
}

TEST( Member, ConnectivityIsMonotone )
{
  std::mt19937_64 rng( 1 );
  for ( int trial = 0; trial < 300; ++trial )
  {
    const std::size_t n = 6;
    Bits g( n * n, 0 );
    for ( std::size_t u = 0; u < n; ++u )
    {
      for ( std::size_t v = u + 1; v < n; ++v )
      {
        g[u * n + v] = g[v * n + u] = rng() % 3 == 0;
      }
    }
    if ( !member( USTConn{}, g ) )
    {
      continue;
    }
    for ( std::size_t u = 0; u < n; ++u )
    {
      for ( std::size_t v = u + 1; v < n; ++v )
      {
        auto h = g;
        h[u * n + v] = h[v * n + u] = 1;
        EXPECT_TRUE( member( USTConn{}, h ) );
      }
    }
  }
}

TEST( Enumerate, ExactCount )
{
  EXPECT_EQ( strings( enumerate_slice( ExactCount{ 1 }, 3 ) ), ( std::vector<std::string>{ "001", "010", "100" } ) );
}

TEST( Enumerate, ParityTwo )
{
  const auto a = parse_automaton( read_sample( "parity.dfa" ) );
  EXPECT_EQ( strings( enumerate_slice( Regular{ a }, 2 ) ), ( std::vector<std::string>{ "00", "11" } ) );
}

TEST( Enumerate, CyclesOnFour )
{
  // independent count: subsets of the 6 edges of K4 with all degrees even
  std::size_t expected = 0;
  const std::pair<int, int> edges[] = { { 0, 1 }, { 0, 2 }, { 0, 3 }, { 1, 2 }, { 1, 3 }, { 2, 3 } };
  for ( int mask = 0; mask < 64; ++mask )
  {
    int degree[4] = {};
    for ( int e = 0; e < 6; ++e )
    {
      if ( mask >> e & 1 )
      {
        ++degree[edges[e].first];
        ++degree[edges[e].second];
      }
    }
    expected += degree[0] % 2 == 0 && degree[1] % 2 == 0 && degree[2] % 2 == 0 && degree[3] % 2 == 0;
  }
  const auto slice = enumerate_slice( Cycles{}, 4 );
  EXPECT_EQ( slice.size(), expected );
  EXPECT_EQ( expected, 8u );
  EXPECT_TRUE( std::is_sorted( slice.begin(), slice.end() ) );
}

TEST( Enumerate, AgreesWithMember )
{
  const auto a = parse_automaton( read_sample( "th2.dfa" ) );
  const LanguageSpec spec = Regular{ a };
  const auto slice = enumerate_slice( spec, 6 );
  std::size_t count = 0;
  testing_support::brute_slice( 6, [&]( const Bits& w ) {
    count += member( spec, w );
    EXPECT_EQ( std::binary_search( slice.begin(), slice.end(), w ), member( spec, w ) );
    return false;
  } );
  EXPECT_EQ( count, slice.size() );
}

TEST( Enumerate, Budget ) { EXPECT_THROW( enumerate_slice( Threshold{ 1 }, 30, 1u << 20 ), budget_error ); }

TEST( RandomMember, InSlice )
{
  Rng rng( 4 );
  const LanguageSpec specs[] = { Threshold{ 3 }, ExactCount{ 2 }, Cycles{}, USTConn{}, UnReach{} };
  for ( const auto& spec : specs )
  {
    const auto len = slice_length( spec, 5 );
    for ( int i = 0; i < 50; ++i )
    {
      const auto w = random_member( spec, len, rng );
      ASSERT_TRUE( w.has_value() ) << describe( spec );
      EXPECT_TRUE( member( spec, *w ) ) << describe( spec );
    }
  }
}

TEST( ParseAutomaton, Parity )
{
  const auto a = parse_automaton( read_sample( "parity.dfa" ) );
  EXPECT_EQ( a.num_states, 2u );
  EXPECT_TRUE( a.is_deterministic() );
  EXPECT_EQ( parse_automaton( serialize( a ) ), a );
}

TEST( ParseAutomaton, OutOfRange )
{
  EXPECT_THROW( parse_automaton( "states 2\nstart 0\nfinal 0\ntrans 0 0 5\n" ), structure_error );
}

TEST( ParseAutomaton, MissingTransition )
{
  EXPECT_THROW( parse_automaton( "states 2\nstart 0\nfinal 0\ntrans 0 0 1\ntrans 0 1 1\ntrans 1 0 0\n" ),
                structure_error );
}

TEST( ParseAutomaton, Nondeterministic )
{
  const auto a = parse_automaton( read_sample( "ends_with_1.nfa" ) );
  EXPECT_FALSE( a.is_deterministic() );
  EXPECT_TRUE( a.accepts( parse_bits( "0101" ) ) );
  EXPECT_FALSE( a.accepts( parse_bits( "0110" ) ) );
}

TEST( ParseAutomaton, Syntax )
{
  try
  {
    parse_automaton( "states 2\nstart 0\nbogus\n" );
    FAIL();
  }
  catch ( const parse_error& e )
  {
    EXPECT_EQ( e.line(), 3u );
  }
}
