#include <gtest/gtest.h>

#include <proofsys/combinators.hpp>
#include <proofsys/counting.hpp>
#include <proofsys/graph_synth.hpp>

#include "support.hpp"

using namespace proofsys;
using testing_support::brute_range;

namespace
{

using Range = std::set<std::string>;

std::vector<Bits> words( std::initializer_list<const char*> list )
{
  std::vector<Bits> out;
  for ( auto w : list )
  {
    out.push_back( parse_bits( w ) );
  }
  return out;
}

Range all_words( std::size_t n )
{
  return testing_support::brute_slice( n, []( const Bits& ) { return true; } );
}

std::string reversed( std::string s ) { return { s.rbegin(), s.rend() }; }

} // namespace

TEST( Finite, SingleWordIsConstant )
{
  const auto c = finite_language( words( { "101" } ) );
  EXPECT_EQ( c.num_inputs(), 0u );
  EXPECT_EQ( to_string( eval( c, Bits{} ) ), "101" );
}

TEST( Finite, SelectorClamps )
{
  const auto c = finite_language( words( { "00", "01", "11" } ) );
  ASSERT_EQ( c.num_inputs(), 2u );
  EXPECT_EQ( to_string( eval( c, parse_bits( "10" ) ) ), "11" );
  EXPECT_EQ( to_string( eval( c, parse_bits( "11" ) ) ), "11" );
  EXPECT_EQ( brute_range( c ), ( Range{ "00", "01", "11" } ) );
  EXPECT_THROW( finite_language( std::vector<Bits>{} ), structure_error );
  EXPECT_THROW( finite_language( words( { "0", "01" } ) ), structure_error );
}

TEST( Union, Ranges )
{
  const auto a = finite_language( words( { "00" } ) ), b = finite_language( words( { "11" } ) );
  EXPECT_EQ( brute_range( union_circuits( std::vector{ a } ) ), brute_range( a ) );
  EXPECT_EQ( brute_range( union_circuits( std::vector{ a, b } ) ), ( Range{ "00", "11" } ) );
  const auto u = union_circuits( std::vector{ synth_exact_count( 3, 1 ).circuit, synth_exact_count( 3, 3 ).circuit } );
  EXPECT_EQ( brute_range( u ), ( Range{ "001", "010", "100", "111" } ) );
  // three branches: selector value 3 clamps to the last
  const auto c = finite_language( words( { "01" } ) );
  EXPECT_EQ( brute_range( union_circuits( std::vector{ a, b, c } ) ), ( Range{ "00", "11", "01" } ) );
  EXPECT_THROW( union_circuits( std::vector{ a, finite_language( words( { "1" } ) ) } ), structure_error );
}

TEST( Concat, Ranges )
{
  const auto all2 = finite_language( words( { "00", "01", "10", "11" } ) );
  EXPECT_EQ( brute_range( concat_finite( words( { "" } ), all2, Side::left ) ), all_words( 2 ) );
  EXPECT_EQ( brute_range( concat_finite( words( { "1" } ), all2, Side::left ) ), ( Range{ "100", "101", "110", "111" } ) );
  EXPECT_EQ( brute_range( concat_finite( words( { "1" } ), all2, Side::right ) ), ( Range{ "001", "011", "101", "111" } ) );
  const auto cycles = synth_cycles( 3 );
  Range expected;
  for ( const auto& u : { "01", "10" } )
  {
    for ( const auto& g : brute_range( cycles ) )
    {
      expected.insert( u + g );
    }
  }
  EXPECT_EQ( brute_range( concat_finite( words( { "01", "10" } ), cycles, Side::left ) ), expected );
}

TEST( Reverse, Ranges )
{
  const auto c = synth_exact_count( 4, 1 );
  const auto r = reverse( c.circuit );
  Range expected;
  for ( const auto& w : brute_range( c.circuit ) )
  {
    expected.insert( reversed( w ) );
  }
  EXPECT_EQ( brute_range( r ), expected );
  EXPECT_EQ( brute_range( reverse( r ) ), brute_range( c.circuit ) );
  const auto pal = finite_language( words( { "0110", "1001" } ) );
  EXPECT_EQ( brute_range( reverse( pal ) ), brute_range( pal ) );
}

TEST( Morphism, Ranges )
{
  const auto c = synth_exact_count( 3, 1 ).circuit;
  EXPECT_EQ( brute_range( apply_morphism( { parse_bits( "0" ), parse_bits( "1" ) }, c ) ), brute_range( c ) );
  EXPECT_EQ( brute_range( apply_morphism( { parse_bits( "00" ), parse_bits( "11" ) }, finite_language( words( { "01" } ) ) ) ),
             ( Range{ "0011" } ) );
  const Morphism h{ parse_bits( "10" ), parse_bits( "01" ) };
  Range expected;
  for ( const auto& w : brute_range( c ) )
  {
    std::string image;
    for ( auto ch : w )
    {
      image += ch == '1' ? "01" : "10";
    }
    expected.insert( image );
  }
  EXPECT_EQ( brute_range( apply_morphism( h, c ) ), expected );
}

TEST( InverseMorphism, Ranges )
{
  const Morphism injective{ parse_bits( "01" ), parse_bits( "10" ) };
  EXPECT_EQ( brute_range( inverse_morphism( injective, finite_language( words( { "0110" } ) ) ) ), ( Range{ "01" } ) );
  const Morphism collide{ parse_bits( "00" ), parse_bits( "00" ) };
  EXPECT_EQ( brute_range( inverse_morphism( collide, finite_language( words( { "0000" } ) ) ) ), all_words( 2 ) );
  EXPECT_THROW( inverse_morphism( injective, finite_language( words( { "011" } ) ) ), structure_error );
  // preimages of the image of an exact-count range
  const auto c = apply_morphism( injective, synth_exact_count( 3, 2 ).circuit );
  EXPECT_EQ( brute_range( inverse_morphism( injective, c ) ), brute_range( synth_exact_count( 3, 2 ).circuit ) );
}

TEST( InverseMorphism, NonImageBlocksAreFound )
{
  const Morphism injective{ parse_bits( "01" ), parse_bits( "10" ) };
  const auto bad = finite_language( words( { "0110", "0111" } ) );
  const auto x = find_non_image_block( injective, bad, 1u << 20 );
  ASSERT_TRUE( x.has_value() );
  EXPECT_EQ( to_string( eval( bad, *x ) ), "0111" );
  EXPECT_FALSE( find_non_image_block( injective, finite_language( words( { "0110", "1001" } ) ), 1u << 20 ) );
}

TEST( UpClose, RangeAndMetrics )
{
  const auto c = synth_exact_count( 3, 1 ).circuit;
  const auto u = upclose( c );
  EXPECT_EQ( brute_range( u ), ( Range{ "001", "010", "011", "100", "101", "110", "111" } ) );
  // zero mask keeps the output
  auto x = Bits( c.num_inputs(), 0 );
  x[0] = 1;
  auto y = x;
  y.resize( u.num_inputs(), 0 );
  EXPECT_EQ( eval( u, y ), eval( c, x ) );
  EXPECT_EQ( brute_range( upclose( finite_language( words( { "0000" } ) ) ) ), all_words( 4 ) );
  for ( const auto& base : { c, synth_cycles( 4 ), finite_language( words( { "0000" } ) ), synth_threshold( 7, 3 ).circuit } )
  {
    const auto before = metrics( base ), after = metrics( upclose( base ) );
    EXPECT_EQ( after.depth, before.depth + 1 );
    EXPECT_EQ( after.size, before.size + base.num_outputs() );
    EXPECT_LE( after.alternations, before.alternations + 1 );
  }
}
