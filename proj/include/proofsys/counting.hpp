#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "arith.hpp"
#include "bits.hpp"
#include "circuit.hpp"
#include "errors.hpp"
#include "interval_tree.hpp"

namespace proofsys
{

struct CountSlot
{
  std::size_t lo = 0, hi = 0; ///< node (lo, hi]
  std::size_t offset = 0;
  std::size_t bits = 0;

  friend bool operator==( const CountSlot&, const CountSlot& ) = default;
};

/// Word bits [0, n), then one count slot per internal non-root node of the
/// interval tree over (0, n] in pre-order, MSB first.
struct CountLayout
{
  std::size_t word_bits = 0;
  std::size_t total_bits = 0;
  std::vector<CountSlot> counts;

  std::string to_text() const
  {
    std::string out = "word 0 " + std::to_string( word_bits ) + "\n";
    for ( const auto& s : counts )
    {
      out += "count " + std::to_string( s.lo ) + " " + std::to_string( s.hi ) + " " + std::to_string( s.offset ) + " " +
             std::to_string( s.bits ) + "\n";
    }
    return out;
  }

  friend bool operator==( const CountLayout&, const CountLayout& ) = default;
};

enum class CountKind
{
  threshold, ///< at least t ones
  exact      ///< exactly t ones
};

struct CountSystem
{
  Circuit circuit;
  CountLayout layout;
};

inline CountLayout make_count_layout( const IntervalTree& tree )
{
  CountLayout layout;
  layout.word_bits = tree.length();
  auto offset = layout.word_bits;
  for ( std::size_t v = 1; v < tree.size(); ++v )
  {
    const auto& node = tree.node( v );
    if ( node.is_leaf() )
    {
      continue;
    }
    const CountSlot s{ node.lo, node.hi, offset, ceil_log2( node.length() + 1 ) };
    offset += s.bits;
    layout.counts.push_back( s );
  }
  layout.total_bits = offset;
  return layout;
}

namespace detail
{

inline void check_count_parameters( CountKind kind, std::size_t n, std::size_t t )
{
  if ( n == 0 )
  {
    throw synthesis_error( "counting proof systems need n >= 1" );
  }
  if ( t > n || ( kind == CountKind::threshold && t == 0 ) )
  {
    throw synthesis_error( "count " + std::to_string( t ) + " out of range for n = " + std::to_string( n ) );
  }
}

inline CountSystem synth_count( CountKind kind, std::size_t n, std::size_t t )
{
  check_count_parameters( kind, n, t );
  const IntervalTree tree( n );
  auto layout = make_count_layout( tree );
  CircuitBuilder b( layout.total_bits );
  if ( n == 1 )
  {
    // the single leaf is the root; its count is t
    b.create_po( b.get_constant( kind == CountKind::threshold || t == 1 ) );
    return { std::move( b ).build(), std::move( layout ) };
  }
  // arithmetic without folding keeps every node's gadget the same shape,
  // so the alternation count does not depend on n
  GateOps ops( b, false );
  const auto count = tree.size();
  std::vector<WordGates> raw( count ), label( count );
  std::size_t slot = 0;
  for ( std::size_t v = 0; v < count; ++v )
  {
    const auto& node = tree.node( v );
    if ( node.is_leaf() )
    {
      raw[v] = label[v] = { b.input( node.hi - 1 ) };
    }
    else if ( v == 0 )
    {
      raw[v] = label[v] = constant_word( ops, t, bit_length( t ) );
    }
    else
    {
      const auto& s = layout.counts[slot++];
      auto bits = b.inputs( s.offset, s.bits );
      raw[v].assign( bits.rbegin(), bits.rend() );
      label[v] = clamp( ops, raw[v], node.length() );
    }
  }
  std::vector<GateId> cons( count );
  for ( std::size_t v = 0; v < count; ++v )
  {
    const auto& node = tree.node( v );
    if ( node.is_leaf() )
    {
      cons[v] = b.get_constant( true );
      continue;
    }
    const auto sum = add( ops, label[node.left], label[node.right] );
    cons[v] = kind == CountKind::threshold ? less_equal( ops, label[v], sum ) : equal( ops, label[v], sum );
  }
  // full[v]: v and its ancestors consistent; topmost_bad[v]: v is the
  // topmost inconsistent node on its paths
  std::vector<GateId> full( count ), topmost_bad( count );
  if ( kind == CountKind::exact )
  {
    std::vector<std::vector<GateId>> chain( count );
    for ( std::size_t v = 0; v < count; ++v )
    {
      const auto& node = tree.node( v );
      if ( node.is_leaf() )
      {
        continue;
      }
      const auto above = v == 0 ? b.get_constant( true ) : full[node.parent];
      topmost_bad[v] = b.create_and( above, b.create_not( cons[v] ) );
      if ( v != 0 )
      {
        chain[v] = chain[node.parent];
      }
      chain[v].push_back( cons[v] );
      full[v] = b.create_nary_and( chain[v] );
    }
  }
  for ( std::size_t k = 1; k <= n; ++k )
  {
    const auto path = tree.path_to_root( k ); // leaf first
    const auto a = b.input( k - 1 );
    if ( kind == CountKind::threshold )
    {
      std::vector<GateId> terms{ a };
      for ( std::size_t h = 1; h < path.size(); ++h )
      {
        terms.push_back( b.create_not( cons[path[h]] ) );
      }
      b.create_po( b.create_nary_or( terms ) );
      continue;
    }
    // exact: the topmost inconsistent node u = (p,q] emits 1^l(u) 0^(q-p-l(u))
    std::vector<GateId> terms{ b.create_and( a, full[path[1]] ) };
    for ( std::size_t h = 1; h < path.size(); ++h )
    {
      const auto u = path[h];
      terms.push_back( b.create_and( topmost_bad[u], at_least( ops, raw[u], k - tree.node( u ).lo ) ) );
    }
    b.create_po( b.create_nary_or( terms ) );
  }
  return { std::move( b ).build(), std::move( layout ) };
}

} // namespace detail

/// Proof system for the words of length n with at least t ones, 1 <= t <= n.
inline CountSystem synth_threshold( std::size_t n, std::size_t t )
{
  return detail::synth_count( CountKind::threshold, n, t );
}

/// Proof system for the words of length n with exactly t ones, 0 <= t <= n.
inline CountSystem synth_exact_count( std::size_t n, std::size_t t )
{
  return detail::synth_count( CountKind::exact, n, t );
}

/// The word followed by the true popcount of every labelled subword.
inline Bits witness_count( CountKind kind, std::size_t n, std::size_t t, std::span<const std::uint8_t> word )
{
  detail::check_count_parameters( kind, n, t );
  if ( word.size() != n )
  {
    throw arity_error( "word of length " + std::to_string( word.size() ) + ", expected " + std::to_string( n ) );
  }
  const auto ones = popcount( word );
  if ( kind == CountKind::threshold ? ones < t : ones != t )
  {
    throw witness_error( "word " + to_string( word ) + " has " + std::to_string( ones ) + " ones" );
  }
  const IntervalTree tree( n );
  const auto layout = make_count_layout( tree );
  Bits proof( word.begin(), word.end() );
  for ( const auto& s : layout.counts )
  {
    const auto c = popcount( word.subspan( s.lo, s.hi - s.lo ) );
    const auto bits = bits_of( c, s.bits );
    proof.insert( proof.end(), bits.begin(), bits.end() );
  }
  return proof;
}

} // namespace proofsys
