#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "automaton.hpp"
#include "bits.hpp"
#include "branching_program.hpp"
#include "circuit.hpp"
#include "errors.hpp"
#include "interval_tree.hpp"

namespace proofsys
{

struct LabelSlot
{
  std::size_t lo = 0, hi = 0; ///< node (lo, hi]
  std::size_t offset = 0;
  std::size_t p_bits = 0, q_bits = 0;

  friend bool operator==( const LabelSlot&, const LabelSlot& ) = default;
};

/// Proof input layout: word bits [0, word_bits), then one label slot per
/// interval tree node in pre-order (p bits before q bits, MSB first).
struct ProofLayout
{
  std::size_t word_bits = 0;
  std::size_t total_bits = 0;
  std::vector<LabelSlot> labels;

  std::string to_text() const
  {
    std::string out = "word 0 " + std::to_string( word_bits ) + "\n";
    for ( const auto& s : labels )
    {
      out += "label " + std::to_string( s.lo ) + " " + std::to_string( s.hi ) + " " + std::to_string( s.offset ) + " " +
             std::to_string( s.p_bits ) + " " + std::to_string( s.q_bits ) + "\n";
    }
    return out;
  }

  friend bool operator==( const ProofLayout&, const ProofLayout& ) = default;
};

inline ProofLayout make_layout( const LayeredBp& bp, const IntervalTree& tree )
{
  ProofLayout layout;
  layout.word_bits = bp.num_variables();
  auto offset = layout.word_bits;
  for ( const auto& node : tree.nodes() )
  {
    LabelSlot s{ node.lo, node.hi, offset, ceil_log2( bp.widths[node.lo] ), ceil_log2( bp.widths[node.hi] ) };
    offset += s.p_bits + s.q_bits;
    layout.labels.push_back( s );
  }
  layout.total_bits = offset;
  return layout;
}

/// Reachability between layers lo and hi of a branching program, with one
/// fixed witness assignment per reachable pair.
struct NodeReach
{
  std::size_t lo = 0, hi = 0;
  std::size_t from_width = 0, to_width = 0;
  std::vector<std::uint8_t> reach; ///< index p * to_width + q
  /// Bits for gaps lo+1..hi (entry g-lo-1); empty when unreachable. The
  /// bit of an unlabelled gap is 0.
  std::vector<Bits> witness;

  bool reachable( std::size_t p, std::size_t q ) const { return reach[p * to_width + q] != 0; }
  const Bits& witness_for( std::size_t p, std::size_t q ) const { return witness[p * to_width + q]; }
};

/*! \brief Reachability table and witnesses for layers lo < hi.
 *
 * The witness path is the lexicographically smallest state sequence; a gap
 * whose chosen edge pair allows bit 0 gets bit 0.
 */
inline NodeReach node_reach( const LayeredBp& bp, std::size_t lo, std::size_t hi )
{
  NodeReach r;
  r.lo = lo;
  r.hi = hi;
  r.from_width = bp.widths[lo];
  r.to_width = bp.widths[hi];
  r.reach.assign( r.from_width * r.to_width, 0 );
  r.witness.resize( r.reach.size() );
  std::vector<std::vector<std::uint8_t>> back( hi - lo + 1 );
  for ( std::size_t q = 0; q < r.to_width; ++q )
  {
    back[hi - lo].assign( r.to_width, 0 );
    back[hi - lo][q] = 1;
    for ( auto l = hi; l > lo; --l )
    {
      auto& cur = back[l - 1 - lo];
      cur.assign( bp.widths[l - 1], 0 );
      for ( const auto& e : bp.gaps[l] )
      {
        if ( back[l - lo][e.to] )
        {
          cur[e.from] = 1;
        }
      }
    }
    for ( std::size_t p = 0; p < r.from_width; ++p )
    {
      if ( !back[0][p] )
      {
        continue;
      }
      r.reach[p * r.to_width + q] = 1;
      Bits w( hi - lo, 0 );
      auto state = p;
      for ( auto l = lo + 1; l <= hi; ++l )
      {
        auto next = IntervalTree::none;
        for ( const auto& e : bp.gaps[l] )
        {
          if ( e.from == state && back[l - lo][e.to] && e.to < next )
          {
            next = e.to;
          }
        }
        bool zero_ok = false;
        for ( const auto& e : bp.gaps[l] )
        {
          if ( e.from == state && e.to == next && e.allows( 0 ) )
          {
            zero_ok = true;
          }
        }
        w[l - lo - 1] = zero_ok ? 0 : 1;
        state = next;
      }
      r.witness[p * r.to_width + q] = std::move( w );
    }
  }
  return r;
}

/// node_reach for every node of `tree`, in pre-order.
inline std::vector<NodeReach> reach_and_witness( const LayeredBp& bp, const IntervalTree& tree )
{
  std::vector<NodeReach> out;
  out.reserve( tree.size() );
  for ( const auto& node : tree.nodes() )
  {
    out.push_back( node_reach( bp, node.lo, node.hi ) );
  }
  return out;
}

struct RegularSystem
{
  Circuit circuit;
  ProofLayout layout;
  std::vector<std::uint32_t> sigma; ///< variable read by gap g at entry g-1
};

namespace detail
{

inline std::size_t clamp_state( std::size_t code, std::size_t width ) { return code < width ? code : width - 1; }

class RegularSynth
{
public:
  RegularSynth( const LayeredBp& bp, std::vector<std::uint32_t> sigma )
      : bp_( bp ), sigma_( std::move( sigma ) ), n_( bp.num_variables() ), tree_( n_ + 1 ),
        layout_( make_layout( bp, tree_ ) ), b_( layout_.total_bits )
  {
  }

  RegularSystem run()
  {
    const auto root_reach = node_reach( bp_, 0, n_ + 1 );
    if ( !root_reach.reachable( 0, 0 ) )
    {
      throw synthesis_error( "language has no words of length " + std::to_string( n_ ) );
    }
    const auto& nodes = tree_.nodes();
    const auto count = nodes.size();
    feas_.resize( count );
    for ( std::size_t v = 0; v < count; ++v )
    {
      feas_[v] = feasible( v );
    }
    cons_.resize( count );
    for ( std::size_t v = 0; v < count; ++v )
    {
      cons_[v] = nodes[v].is_leaf() ? leaf_consistent( v ) : node_consistent( v );
    }
    // S(v): v and all of its ancestors consistent; pre-order visits parents
    // first. Each S(v) is one balanced AND over the path.
    std::vector<GateId> suffix( count );
    std::vector<std::vector<GateId>> chain( count );
    for ( std::size_t v = 0; v < count; ++v )
    {
      if ( nodes[v].parent != IntervalTree::none )
      {
        chain[v] = chain[nodes[v].parent];
      }
      chain[v].push_back( cons_[v] );
      suffix[v] = b_.create_nary_and( chain[v] );
      if ( nodes[v].is_leaf() )
      {
        chain[v].clear();
        chain[v].shrink_to_fit();
      }
    }
    chain.clear();

    std::vector<std::vector<GateId>> terms( n_ );
    for ( std::size_t k = 1; k <= n_; ++k )
    {
      const auto leaf = tree_.leaf( k );
      const auto a = b_.input( sigma_[k - 1] );
      terms[k - 1].push_back( b_.create_and( a, suffix[leaf] ) );
    }
    // A node c that is inconsistent below a fully consistent parent is the
    // topmost inconsistent node on the paths through it. The parent's check
    // makes c feasible, so c's own witness fits between its neighbours.
    for ( std::size_t c = 1; c < count; ++c )
    {
      if ( nodes[c].lo < n_ )
      {
        const auto sel = b_.create_and( b_.create_not( cons_[c] ), suffix[nodes[c].parent] );
        add_witness_terms( c, node_reach( bp_, nodes[c].lo, nodes[c].hi ), sel, terms );
      }
    }
    const auto& w_st = root_reach.witness_for( 0, 0 );
    const auto root_bad = b_.create_not( cons_[0] );
    for ( std::size_t k = 1; k <= n_; ++k )
    {
      if ( w_st[k - 1] )
      {
        terms[k - 1].push_back( root_bad );
      }
    }
    std::vector<GateId> outputs( n_ );
    for ( std::size_t k = 1; k <= n_; ++k )
    {
      outputs[sigma_[k - 1]] = b_.create_nary_or( terms[k - 1] );
      terms[k - 1].clear();
      terms[k - 1].shrink_to_fit();
    }
    for ( auto o : outputs )
    {
      b_.create_po( o );
    }
    return { std::move( b_ ).build(), layout_, sigma_ };
  }

private:
  std::vector<GateId> p_wires( std::size_t v )
  {
    const auto& s = layout_.labels[v];
    return b_.inputs( s.offset, s.p_bits );
  }

  std::vector<GateId> q_wires( std::size_t v )
  {
    const auto& s = layout_.labels[v];
    return b_.inputs( s.offset + s.p_bits, s.q_bits );
  }

  std::vector<GateId> label_wires( std::size_t v )
  {
    auto w = p_wires( v );
    const auto q = q_wires( v );
    w.insert( w.end(), q.begin(), q.end() );
    return w;
  }

  /// Table over the label bits of v: f(clamped p, clamped q).
  template<class Fn>
  Bits label_table( std::size_t v, Fn&& fn ) const
  {
    const auto& s = layout_.labels[v];
    const auto wp = bp_.widths[s.lo], wq = bp_.widths[s.hi];
    Bits table( std::size_t{ 1 } << ( s.p_bits + s.q_bits ) );
    for ( std::size_t r = 0; r < table.size(); ++r )
    {
      const auto p = clamp_state( r >> s.q_bits, wp );
      const auto q = clamp_state( r & ( ( std::size_t{ 1 } << s.q_bits ) - 1 ), wq );
      table[r] = fn( p, q ) ? 1 : 0;
    }
    return table;
  }

  /// Clamped equality of two equally wide state codes.
  GateId equal_states( std::vector<GateId> x, const std::vector<GateId>& y, std::size_t width )
  {
    const auto bits = x.size();
    Bits table( std::size_t{ 1 } << ( 2 * bits ) );
    for ( std::size_t r = 0; r < table.size(); ++r )
    {
      const auto a = clamp_state( r >> bits, width );
      const auto c = clamp_state( r & ( ( std::size_t{ 1 } << bits ) - 1 ), width );
      table[r] = a == c ? 1 : 0;
    }
    x.insert( x.end(), y.begin(), y.end() );
    return table_to_subcircuit( b_, table, x );
  }

  /// Leaf (k-1,k]: some edge p -> q agreeing with the word bit of gap k; the
  /// sink gap only needs an edge.
  GateId leaf_consistent( std::size_t v )
  {
    const auto& node = tree_.node( v );
    const auto gap = node.hi;
    const auto& edges = bp_.gaps[gap];
    const auto wires = label_wires( v );
    if ( gap == n_ + 1 )
    {
      const auto table = label_table( v, [&]( std::size_t p, std::size_t q ) {
        for ( const auto& e : edges )
        {
          if ( e.from == p && e.to == q )
          {
            return true;
          }
        }
        return false;
      } );
      return table_to_subcircuit( b_, table, wires );
    }
    const auto t0 = label_table( v, [&]( std::size_t p, std::size_t q ) {
      for ( const auto& e : edges )
      {
        if ( e.from == p && e.to == q && e.allows( 0 ) )
        {
          return true;
        }
      }
      return false;
    } );
    const auto t1 = label_table( v, [&]( std::size_t p, std::size_t q ) {
      for ( const auto& e : edges )
      {
        if ( e.from == p && e.to == q && e.allows( 1 ) )
        {
          return true;
        }
      }
      return false;
    } );
    Bits table;
    table.reserve( 2 * t0.size() );
    table.insert( table.end(), t0.begin(), t0.end() );
    table.insert( table.end(), t1.begin(), t1.end() );
    std::vector<GateId> all{ b_.input( sigma_[gap - 1] ) };
    all.insert( all.end(), wires.begin(), wires.end() );
    return table_to_subcircuit( b_, table, all );
  }

  /// FEAS(v): a path between the labelled nodes (an edge for a leaf).
  GateId feasible( std::size_t v )
  {
    const auto& node = tree_.node( v );
    const auto reach = node_reach( bp_, node.lo, node.hi );
    return table_to_subcircuit(
        b_, label_table( v, [&]( std::size_t p, std::size_t q ) { return reach.reachable( p, q ); } ), label_wires( v ) );
  }

  /// FEAS of v and both children, plus the three boundary equalities.
  GateId node_consistent( std::size_t v )
  {
    const auto& node = tree_.node( v );
    const auto l = node.left, r = node.right;
    const auto mid = tree_.node( l ).hi;
    const GateId parts[] = { feas_[v],
                             feas_[l],
                             feas_[r],
                             equal_states( p_wires( v ), p_wires( l ), bp_.widths[node.lo] ),
                             equal_states( q_wires( v ), q_wires( r ), bp_.widths[node.hi] ),
                             equal_states( q_wires( l ), p_wires( r ), bp_.widths[mid] ) };
    return b_.create_nary_and( parts );
  }

  /// For every output position k inside node c: c's witness bit for k under
  /// c's label, guarded by `sel`.
  void add_witness_terms( std::size_t c, const NodeReach& reach, GateId sel, std::vector<std::vector<GateId>>& terms )
  {
    const auto& node = tree_.node( c );
    const auto wires = label_wires( c );
    std::map<Bits, GateId> cache;
    for ( auto k = node.lo + 1; k <= node.hi && k <= n_; ++k )
    {
      const auto table = label_table( c, [&]( std::size_t p, std::size_t q ) {
        return reach.reachable( p, q ) && reach.witness_for( p, q )[k - node.lo - 1] != 0;
      } );
      auto it = cache.find( table );
      if ( it == cache.end() )
      {
        it = cache.emplace( table, table_to_subcircuit( b_, table, wires ) ).first;
      }
      const auto t = b_.create_and( it->second, sel );
      if ( !b_.is_constant( t, false ) )
      {
        terms[k - 1].push_back( t );
      }
    }
  }

  const LayeredBp& bp_;
  std::vector<std::uint32_t> sigma_;
  std::size_t n_;
  IntervalTree tree_;
  ProofLayout layout_;
  CircuitBuilder b_;
  std::vector<GateId> feas_;
  std::vector<GateId> cons_;
};

} // namespace detail

/// Proof system for the words accepted by a structured branching program.
inline RegularSystem synth_structured( const LayeredBp& bp )
{
  auto sigma = gap_variables( bp );
  return detail::RegularSynth( bp, std::move( sigma ) ).run();
}

/// Proof system for L(a) restricted to length n.
inline RegularSystem synth_regular( const Automaton& a, std::size_t n ) { return synth_structured( unroll( a, n ) ); }

/// Proof for `x` (indexed by variable): x followed by the labels of one
/// accepting path.
inline Bits witness_structured( const LayeredBp& bp, std::span<const std::uint8_t> x )
{
  gap_variables( bp );
  const auto n = bp.num_variables();
  if ( x.size() != n )
  {
    throw arity_error( "word of length " + std::to_string( x.size() ) + ", expected " + std::to_string( n ) );
  }
  // forward reachable sets, then walk back from the sink
  const auto layers = bp.num_layers();
  std::vector<std::vector<std::uint8_t>> fwd( layers );
  fwd[0].assign( 1, 1 );
  for ( std::size_t g = 1; g < layers; ++g )
  {
    fwd[g].assign( bp.widths[g], 0 );
    for ( const auto& e : bp.gaps[g] )
    {
      if ( fwd[g - 1][e.from] && e.allows( x[e.variable] ) )
      {
        fwd[g][e.to] = 1;
      }
    }
  }
  if ( !fwd[layers - 1][0] )
  {
    throw witness_error( "word " + to_string( x ) + " is not accepted" );
  }
  std::vector<std::size_t> state( layers, 0 );
  for ( auto g = layers - 1; g > 0; --g )
  {
    auto pick = IntervalTree::none;
    for ( const auto& e : bp.gaps[g] )
    {
      if ( e.to == state[g] && fwd[g - 1][e.from] && e.allows( x[e.variable] ) && e.from < pick )
      {
        pick = e.from;
      }
    }
    state[g - 1] = pick;
  }
  const IntervalTree tree( n + 1 );
  const auto layout = make_layout( bp, tree );
  Bits proof( x.begin(), x.end() );
  proof.reserve( layout.total_bits );
  for ( const auto& s : layout.labels )
  {
    const auto p = bits_of( state[s.lo], s.p_bits );
    const auto q = bits_of( state[s.hi], s.q_bits );
    proof.insert( proof.end(), p.begin(), p.end() );
    proof.insert( proof.end(), q.begin(), q.end() );
  }
  return proof;
}

inline Bits witness_regular( const Automaton& a, std::span<const std::uint8_t> word )
{
  if ( word.empty() )
  {
    throw witness_error( "empty word" );
  }
  if ( !a.accepts( word ) )
  {
    throw witness_error( "word " + to_string( word ) + " is not accepted" );
  }
  return witness_structured( unroll( a, word.size() ), word );
}

} // namespace proofsys
