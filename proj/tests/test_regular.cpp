#include <gtest/gtest.h>

#include <functional>
#include <random>

#include <proofsys/circuit_io.hpp>
#include <proofsys/regular.hpp>

#include "support.hpp"

using namespace proofsys;
using testing_support::brute_range;
using testing_support::brute_slice;
using testing_support::read_sample;

namespace
{

Automaton parity() { return parse_automaton( read_sample( "parity.dfa" ) ); }
Automaton th2() { return parse_automaton( read_sample( "th2.dfa" ) ); }
Automaton ends_with_1() { return parse_automaton( read_sample( "ends_with_1.nfa" ) ); }

// All s-t paths consistent with x, by explicit enumeration of state sequences.
bool bp_accepts_by_paths( const LayeredBp& bp, const Bits& x )
{
  std::function<bool( std::size_t, State )> walk = [&]( std::size_t g, State from ) {
    if ( g == bp.num_layers() )
    {
      return true;
    }
    for ( const auto& e : bp.gaps[g] )
    {
      if ( e.from == from && e.allows( x[e.variable] ) && walk( g + 1, e.to ) )
      {
        return true;
      }
    }
    return false;
  };
  return walk( 1, 0 );
}

} // namespace

TEST( Unroll, ParityShape )
{
  const auto bp = unroll( parity(), 2 );
  EXPECT_EQ( bp.widths, ( std::vector<std::size_t>{ 1, 2, 2, 1 } ) );
  ASSERT_EQ( bp.gaps.size(), 4u );
  EXPECT_EQ( bp.gaps[1].size(), 2u );
  EXPECT_EQ( bp.gaps[2].size(), 4u );
  ASSERT_EQ( bp.gaps[3].size(), 1u );
  EXPECT_EQ( bp.gaps[3][0].from, 0u );
  EXPECT_EQ( bp.gaps[3][0].label, EdgeLabel::always );
}

TEST( Unroll, PathsMatchAutomaton )
{
  for ( const auto& a : { parity(), th2(), ends_with_1() } )
  {
    for ( std::size_t n = 1; n <= 6; ++n )
    {
      const auto bp = unroll( a, n );
      const auto sigma = gap_variables( bp );
      for ( std::size_t g = 0; g < n; ++g )
      {
        EXPECT_EQ( sigma[g], g );
      }
      brute_slice( n, [&]( const Bits& w ) {
        EXPECT_EQ( bp_accepts_by_paths( bp, w ), a.accepts( w ) ) << to_string( w );
        EXPECT_EQ( bp_accepts( bp, w ), a.accepts( w ) );
        return false;
      } );
    }
  }
}

TEST( Unroll, NfaHasParallelEdges )
{
  const auto bp = unroll( ends_with_1(), 3 );
  std::size_t ones_from_0 = 0;
  for ( const auto& e : bp.gaps[2] )
  {
    ones_from_0 += e.from == 0 && e.label == EdgeLabel::positive;
  }
  EXPECT_EQ( ones_from_0, 2u );
}

TEST( Reach, ParityRootWitness )
{
  const auto bp = unroll( parity(), 2 );
  const auto r = node_reach( bp, 0, 3 );
  ASSERT_TRUE( r.reachable( 0, 0 ) );
  EXPECT_EQ( to_string( r.witness_for( 0, 0 ) ).substr( 0, 2 ), "00" );
}

TEST( Reach, MatchesExhaustivePaths )
{
  const auto a = th2();
  const auto bp = unroll( a, 5 );
  const IntervalTree tree( 6 );
  const auto table = reach_and_witness( bp, tree );
  ASSERT_EQ( table.size(), tree.size() );
  for ( const auto& r : table )
  {
    for ( std::size_t p = 0; p < r.from_width; ++p )
    {
      for ( std::size_t q = 0; q < r.to_width; ++q )
      {
        // enumerate every assignment of the gap bits and walk the layers
        bool exists = false;
        const auto len = r.hi - r.lo;
        for ( std::uint64_t v = 0; v < ( std::uint64_t{ 1 } << len ); ++v )
        {
          std::vector<std::uint8_t> cur( bp.widths[r.lo], 0 );
          cur[p] = 1;
          for ( auto g = r.lo + 1; g <= r.hi; ++g )
          {
            std::vector<std::uint8_t> next( bp.widths[g], 0 );
            const std::uint8_t bit = ( v >> ( g - r.lo - 1 ) ) & 1u;
            for ( const auto& e : bp.gaps[g] )
            {
              if ( cur[e.from] && e.allows( bit ) )
              {
                next[e.to] = 1;
              }
            }
            cur.swap( next );
          }
          exists = exists || cur[q];
        }
        EXPECT_EQ( r.reachable( p, q ), exists ) << r.lo << " " << r.hi << " " << p << " " << q;
        if ( r.reachable( p, q ) )
        {
          // replay the witness
          const auto& w = r.witness_for( p, q );
          ASSERT_EQ( w.size(), len );
          std::vector<std::uint8_t> cur( bp.widths[r.lo], 0 );
          cur[p] = 1;
          for ( auto g = r.lo + 1; g <= r.hi; ++g )
          {
            std::vector<std::uint8_t> next( bp.widths[g], 0 );
            for ( const auto& e : bp.gaps[g] )
            {
              if ( cur[e.from] && e.allows( w[g - r.lo - 1] ) )
              {
                next[e.to] = 1;
              }
            }
            cur.swap( next );
          }
          EXPECT_TRUE( cur[q] );
        }
        else
        {
          EXPECT_TRUE( r.witness_for( p, q ).empty() );
        }
      }
    }
  }
}

TEST( Layout, PreOrderSlots )
{
  const auto sys = synth_regular( parity(), 2 );
  const auto& l = sys.layout;
  EXPECT_EQ( l.word_bits, 2u );
  ASSERT_EQ( l.labels.size(), 5u );
  // (0,3] (0,1] (1,3] (1,2] (2,3]
  EXPECT_EQ( l.labels[0].lo, 0u );
  EXPECT_EQ( l.labels[0].hi, 3u );
  EXPECT_EQ( l.labels[0].p_bits + l.labels[0].q_bits, 0u );
  EXPECT_EQ( l.labels[1].hi, 1u );
  EXPECT_EQ( l.labels[2].lo, 1u );
  EXPECT_EQ( l.labels[2].hi, 3u );
  std::size_t offset = l.word_bits;
  for ( const auto& s : l.labels )
  {
    EXPECT_EQ( s.offset, offset );
    offset += s.p_bits + s.q_bits;
  }
  EXPECT_EQ( l.total_bits, offset );
  EXPECT_EQ( sys.circuit.num_inputs(), l.total_bits );
  EXPECT_EQ( l.to_text().substr( 0, 8 ), "word 0 2" );
}

TEST( SynthRegular, ParityHonestProof )
{
  const auto a = parity();
  const auto sys = synth_regular( a, 2 );
  const auto proof = witness_regular( a, parse_bits( "11" ) );
  EXPECT_EQ( to_string( eval( sys.circuit, proof ) ), "11" );
}

TEST( SynthRegular, ParityMismatchedChildren )
{
  const auto a = parity();
  const auto sys = synth_regular( a, 2 );
  auto proof = witness_regular( a, parse_bits( "11" ) );
  // the root's children (0,1] and (1,3] share layer 1; flip the right child's p
  const auto& right = sys.layout.labels[2];
  ASSERT_EQ( right.lo, 1u );
  ASSERT_EQ( right.p_bits, 1u );
  proof[right.offset] ^= 1;
  EXPECT_EQ( to_string( eval( sys.circuit, proof ) ), "00" );
}

TEST( SynthRegular, ExhaustiveRangeEqualsSlice )
{
  for ( const auto& a : { parity(), th2(), ends_with_1() } )
  {
    for ( std::size_t n = 1; n <= 3; ++n )
    {
      const auto slice = brute_slice( n, [&]( const Bits& w ) { return a.accepts( w ); } );
      if ( slice.empty() )
      {
        EXPECT_THROW( synth_regular( a, n ), synthesis_error );
        continue;
      }
      const auto sys = synth_regular( a, n );
      EXPECT_EQ( brute_range( sys.circuit ), slice ) << serialize( a ) << n;
    }
  }
}

TEST( SynthRegular, CompletenessAndRoundtrip )
{
  for ( const auto& a : { parity(), th2(), ends_with_1() } )
  {
    for ( std::size_t n = 4; n <= 9; ++n )
    {
      const auto sys = synth_regular( a, n );
      EXPECT_EQ( parse_circuit( serialize( sys.circuit ) ), sys.circuit );
      brute_slice( n, [&]( const Bits& w ) {
        if ( a.accepts( w ) )
        {
          EXPECT_EQ( eval( sys.circuit, witness_regular( a, w ) ), w );
        }
        else
        {
          EXPECT_THROW( witness_regular( a, w ), witness_error );
        }
        return false;
      } );
    }
  }
}

TEST( SynthRegular, RandomProofsAreSound )
{
  std::mt19937_64 rng( 7 );
  for ( const auto& a : { parity(), th2(), ends_with_1() } )
  {
    for ( std::size_t n : { 5u, 11u, 17u } )
    {
      const auto sys = synth_regular( a, n );
      Evaluator ev( sys.circuit );
      for ( int trial = 0; trial < 3000; ++trial )
      {
        const auto x = random_bits( rng, sys.circuit.num_inputs() );
        EXPECT_TRUE( a.accepts( ev( x ) ) );
      }
    }
  }
}

TEST( SynthRegular, EmptySliceNamesLength )
{
  try
  {
    synth_regular( th2(), 1 );
    FAIL();
  }
  catch ( const synthesis_error& e )
  {
    EXPECT_NE( std::string( e.what() ).find( "length 1" ), std::string::npos );
  }
}

TEST( SynthRegular, WitnessRejectsNonMember )
{
  EXPECT_THROW( witness_regular( parity(), parse_bits( "10" ) ), witness_error );
}

// Re-derives every output from the labels. Below the fully consistent
// nodes hangs a frontier of leaves and topmost inconsistent nodes; it must
// tile (0,n+1], and each output bit comes from the frontier node covering it.
TEST( SynthRegular, FrontierPartitionsPositions )
{
  std::mt19937_64 rng( 11 );
  for ( const auto& a : { parity(), th2(), ends_with_1() } )
  {
    const std::size_t n = 6;
    const auto bp = unroll( a, n );
    const auto sys = synth_regular( a, n );
    const IntervalTree tree( n + 1 );
    const auto reach = reach_and_witness( bp, tree );
    const auto& layout = sys.layout;
    const auto honest = witness_regular( a, parse_bits( "110011" ) );
    for ( int trial = 0; trial < 4000; ++trial )
    {
      auto x = honest;
      const auto flips = 1 + uniform_below( rng, 3 );
      for ( std::uint64_t f = 0; f < flips; ++f )
      {
        x[uniform_below( rng, x.size() )] ^= 1;
      }
      if ( trial % 4 == 0 )
      {
        x = random_bits( rng, x.size() );
      }
      auto decode = [&]( std::size_t off, std::size_t bits, std::size_t width ) {
        const auto v = value_of( std::span<const std::uint8_t>( x ).subspan( off, bits ) );
        return static_cast<std::size_t>( v < width ? v : width - 1 );
      };
      const auto count = tree.size();
      std::vector<std::size_t> p( count ), q( count );
      for ( std::size_t v = 0; v < count; ++v )
      {
        const auto& s = layout.labels[v];
        p[v] = decode( s.offset, s.p_bits, bp.widths[s.lo] );
        q[v] = decode( s.offset + s.p_bits, s.q_bits, bp.widths[s.hi] );
      }
      auto feasible = [&]( std::size_t v ) { return reach[v].reachable( p[v], q[v] ); };
      std::vector<bool> ok( count );
      for ( std::size_t v = 0; v < count; ++v )
      {
        const auto& node = tree.node( v );
        if ( node.is_leaf() )
        {
          bool edge = false;
          for ( const auto& e : bp.gaps[node.hi] )
          {
            edge = edge || ( e.from == p[v] && e.to == q[v] && e.allows( x[e.variable] ) );
          }
          ok[v] = edge;
        }
        else
        {
          ok[v] = feasible( v ) && feasible( node.left ) && feasible( node.right ) && p[v] == p[node.left] &&
                  q[v] == q[node.right] && q[node.left] == p[node.right];
        }
      }
      std::vector<bool> full( count );
      std::vector<std::size_t> frontier;
      for ( std::size_t v = 0; v < count; ++v )
      {
        const auto& node = tree.node( v );
        const bool parent_full = node.parent == IntervalTree::none || full[node.parent];
        full[v] = parent_full && ok[v];
        if ( parent_full && node.parent != IntervalTree::none && ( !ok[v] || node.is_leaf() ) )
        {
          frontier.push_back( v );
        }
      }
      Bits expected( n, 0 );
      if ( !ok[0] )
      {
        const auto& w = reach[0].witness_for( 0, 0 );
        std::copy( w.begin(), w.begin() + n, expected.begin() );
      }
      else
      {
        std::vector<std::size_t> hits( n + 2, 0 );
        std::size_t state = 0;
        for ( auto v : frontier )
        {
          const auto& node = tree.node( v );
          EXPECT_TRUE( feasible( v ) );
          EXPECT_EQ( p[v], state ); // the frontier chains from s to t
          state = q[v];
          for ( auto k = node.lo + 1; k <= node.hi; ++k )
          {
            ++hits[k];
            if ( k <= n )
            {
              expected[k - 1] = full[v] ? x[k - 1] : reach[v].witness_for( p[v], q[v] )[k - node.lo - 1];
            }
          }
        }
        for ( std::size_t k = 1; k <= n + 1; ++k )
        {
          EXPECT_EQ( hits[k], 1u );
        }
      }
      EXPECT_EQ( eval( sys.circuit, x ), expected );
      EXPECT_TRUE( a.accepts( expected ) );
    }
  }
}

TEST( SynthStructured, InterleavedSquares )
{
  const auto bp = parse_branching_program( read_sample( "square_interleaved.bp" ) );
  EXPECT_EQ( gap_variables( bp ), ( std::vector<std::uint32_t>{ 0, 2, 1, 3 } ) );
  const auto sys = synth_structured( bp );
  EXPECT_EQ( brute_range( sys.circuit ), ( std::set<std::string>{ "0000", "0101", "1010", "1111" } ) );
  for ( const auto* w : { "0000", "0101", "1010", "1111" } )
  {
    EXPECT_EQ( to_string( eval( sys.circuit, witness_structured( bp, parse_bits( w ) ) ) ), w );
  }
  EXPECT_THROW( witness_structured( bp, parse_bits( "0110" ) ), witness_error );
}

TEST( SynthStructured, UnrolledMatchesRegular )
{
  for ( const auto& a : { parity(), th2(), ends_with_1() } )
  {
    for ( std::size_t n = 2; n <= 3; ++n )
    {
      EXPECT_EQ( brute_range( synth_structured( unroll( a, n ) ).circuit ),
                 brute_range( synth_regular( a, n ).circuit ) );
    }
  }
}

TEST( SynthStructured, MixedGapIsRejected )
{
  const auto text = read_sample( "square_interleaved.bp" ) + "edge 2 0 1 x2\n";
  const auto bp = parse_branching_program( text );
  EXPECT_THROW( synth_structured( bp ), structure_error );
}

TEST( SynthStructured, RepeatedVariableIsRejected )
{
  const std::string text = "bp 2 1\nstart 0\naccept 0\nedge 1 0 0 x1\nedge 2 0 0 x1\n";
  EXPECT_THROW( synth_structured( parse_branching_program( text ) ), structure_error );
}

TEST( ParseBranchingProgram, Errors )
{
  EXPECT_THROW( parse_branching_program( "bp 2 2\nstart 0\nedge 1 0 0 y1\n" ), parse_error );
  EXPECT_THROW( parse_branching_program( "bp 2 2\nstart 0\nedge 1 0 5 x1\n" ), structure_error );
  EXPECT_THROW( parse_branching_program( "start 0\n" ), parse_error );
}
