#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"

namespace proofsys
{

using GateId = std::uint32_t;

enum class GateKind : std::uint8_t
{
  Input,
  Const,
  Not,
  And,
  Or
};

/// One gate of a bounded-fanin circuit. For `Input` the field `a` is the
/// input index, for `Const` it is the constant bit, for `Not` the operand,
/// for `And`/`Or` the two operands.
struct Gate
{
  GateKind kind = GateKind::Const;
  std::uint32_t a = 0;
  std::uint32_t b = 0;

  bool is_leaf() const noexcept { return kind == GateKind::Input || kind == GateKind::Const; }
  std::size_t fanin() const noexcept
  {
    switch ( kind )
    {
    case GateKind::Not:
      return 1;
    case GateKind::And:
    case GateKind::Or:
      return 2;
    default:
      return 0;
    }
  }

  friend bool operator==( const Gate&, const Gate& ) = default;
};

/// A bounded-fanin circuit over AND/OR/NOT with a designated list of outputs.
/// Gates are stored in topological order: every operand id is smaller than
/// the id of the gate reading it. Immutable once constructed.
class Circuit
{
public:
  Circuit() = default;

  Circuit( std::size_t num_inputs, std::vector<Gate> gates, std::vector<GateId> outputs )
      : num_inputs_( num_inputs ), gates_( std::move( gates ) ), outputs_( std::move( outputs ) )
  {
    validate();
  }

  std::size_t num_inputs() const noexcept { return num_inputs_; }
  std::size_t num_gates() const noexcept { return gates_.size(); }
  std::size_t num_outputs() const noexcept { return outputs_.size(); }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  const std::vector<GateId>& outputs() const noexcept { return outputs_; }
  const Gate& gate( GateId id ) const { return gates_.at( id ); }

  friend bool operator==( const Circuit&, const Circuit& ) = default;

private:
  void validate() const
  {
    for ( std::size_t id = 0; id < gates_.size(); ++id )
    {
      const auto& g = gates_[id];
      switch ( g.kind )
      {
      case GateKind::Input:
        if ( g.a >= num_inputs_ )
        {
          throw structure_error( "gate " + std::to_string( id ) + " reads input " + std::to_string( g.a ) +
                                 " of " + std::to_string( num_inputs_ ) );
        }
        break;
      case GateKind::Const:
        if ( g.a > 1 )
        {
          throw structure_error( "gate " + std::to_string( id ) + " has non-binary constant" );
        }
        break;
      case GateKind::Not:
        if ( g.a >= id )
        {
          throw structure_error( "gate " + std::to_string( id ) + " reads non-earlier gate " + std::to_string( g.a ) );
        }
        break;
      case GateKind::And:
      case GateKind::Or:
        if ( g.a >= id || g.b >= id )
        {
          throw structure_error( "gate " + std::to_string( id ) + " reads a non-earlier gate" );
        }
        break;
      }
    }
    for ( auto o : outputs_ )
    {
      if ( o >= gates_.size() )
      {
        throw structure_error( "output references missing gate " + std::to_string( o ) );
      }
    }
  }

  std::size_t num_inputs_ = 0;
  std::vector<Gate> gates_;
  std::vector<GateId> outputs_;
};

/*! \brief Incremental circuit construction.
 *
 * The `create_*` functions fold constants, idempotent operands and double
 * negation, and share one INPUT gate per input index and one NOT per
 * operand. The `raw_*` variants always append a fresh gate; combinators use
 * them where exact structural deltas matter.
 */
class CircuitBuilder
{
public:
  explicit CircuitBuilder( std::size_t num_inputs = 0 ) : input_gate_( num_inputs, none ) , num_inputs_( num_inputs ) {}

  /// Appends `count` fresh inputs; returns the index of the first one.
  std::size_t add_inputs( std::size_t count )
  {
    const auto first = num_inputs_;
    num_inputs_ += count;
    input_gate_.resize( num_inputs_, none );
    return first;
  }

  std::size_t num_inputs() const noexcept { return num_inputs_; }
  std::size_t num_gates() const noexcept { return gates_.size(); }
  const Gate& gate( GateId id ) const { return gates_[id]; }

  GateId input( std::size_t index )
  {
    if ( index >= num_inputs_ )
    {
      throw structure_error( "input index " + std::to_string( index ) + " out of range" );
    }
    if ( input_gate_[index] == none )
    {
      input_gate_[index] = append( { GateKind::Input, static_cast<std::uint32_t>( index ), 0 } );
    }
    return input_gate_[index];
  }

  /// Gates for inputs [first, first + count).
  std::vector<GateId> inputs( std::size_t first, std::size_t count )
  {
    std::vector<GateId> out( count );
    for ( std::size_t i = 0; i < count; ++i )
    {
      out[i] = input( first + i );
    }
    return out;
  }

  GateId get_constant( bool value )
  {
    auto& slot = const_gate_[value ? 1 : 0];
    if ( slot == none )
    {
      slot = append( { GateKind::Const, value ? 1u : 0u, 0 } );
    }
    return slot;
  }

  /// True and sets `value` when `id` is a constant gate.
  bool as_constant( GateId id, bool& value ) const
  {
    const auto& g = gates_[id];
    if ( g.kind != GateKind::Const )
    {
      return false;
    }
    value = g.a != 0;
    return true;
  }

  bool is_constant( GateId id, bool value ) const
  {
    bool v;
    return as_constant( id, v ) && v == value;
  }

  GateId create_not( GateId a )
  {
    bool v;
    if ( as_constant( a, v ) )
    {
      return get_constant( !v );
    }
    if ( gates_[a].kind == GateKind::Not )
    {
      return gates_[a].a;
    }
    if ( not_of_[a] == none )
    {
      const auto id = append( { GateKind::Not, a, 0 } );
      not_of_[a] = id;
      not_of_[id] = a;
    }
    return not_of_[a];
  }

  GateId create_and( GateId a, GateId b )
  {
    bool v;
    if ( as_constant( a, v ) )
    {
      return v ? b : a;
    }
    if ( as_constant( b, v ) )
    {
      return v ? a : b;
    }
    if ( a == b )
    {
      return a;
    }
    return append( { GateKind::And, std::min( a, b ), std::max( a, b ) } );
  }

  GateId create_or( GateId a, GateId b )
  {
    bool v;
    if ( as_constant( a, v ) )
    {
      return v ? a : b;
    }
    if ( as_constant( b, v ) )
    {
      return v ? b : a;
    }
    if ( a == b )
    {
      return a;
    }
    return append( { GateKind::Or, std::min( a, b ), std::max( a, b ) } );
  }

  /// (a AND NOT b) OR (NOT a AND b).
  GateId create_xor( GateId a, GateId b )
  {
    return create_or( create_and( a, create_not( b ) ), create_and( create_not( a ), b ) );
  }

  /// (a AND b) OR (NOT a AND NOT b).
  GateId create_xnor( GateId a, GateId b )
  {
    return create_or( create_and( a, b ), create_and( create_not( a ), create_not( b ) ) );
  }

  /// if sel then a else b
  GateId create_ite( GateId sel, GateId a, GateId b )
  {
    return create_or( create_and( sel, a ), create_and( create_not( sel ), b ) );
  }

  /// Balanced fanin-2 AND tree; CONST 1 for an empty list.
  GateId create_nary_and( std::span<const GateId> operands ) { return balanced( operands, true ); }
  GateId create_nary_or( std::span<const GateId> operands ) { return balanced( operands, false ); }
  GateId create_nary_xor( std::span<const GateId> operands )
  {
    if ( operands.empty() )
    {
      return get_constant( false );
    }
    std::vector<GateId> level( operands.begin(), operands.end() );
    while ( level.size() > 1 )
    {
      std::vector<GateId> next;
      for ( std::size_t i = 0; i + 1 < level.size(); i += 2 )
      {
        next.push_back( create_xor( level[i], level[i + 1] ) );
      }
      if ( level.size() % 2 == 1 )
      {
        next.push_back( level.back() );
      }
      level = std::move( next );
    }
    return level.front();
  }

  GateId raw_and( GateId a, GateId b ) { return append( { GateKind::And, a, b } ); }
  GateId raw_or( GateId a, GateId b ) { return append( { GateKind::Or, a, b } ); }
  GateId raw_not( GateId a ) { return append( { GateKind::Not, a, 0 } ); }

  /// Copies `c` verbatim, its input i becoming input `input_offset + i` of
  /// this builder. Returns the ids of the copied outputs.
  std::vector<GateId> embed( const Circuit& c, std::size_t input_offset )
  {
    if ( input_offset + c.num_inputs() > num_inputs_ )
    {
      throw structure_error( "embedded circuit inputs exceed builder inputs" );
    }
    std::vector<GateId> wires( c.num_inputs() );
    for ( std::size_t i = 0; i < wires.size(); ++i )
    {
      wires[i] = input( input_offset + i );
    }
    return embed( c, std::span<const GateId>( wires ) );
  }

  /// Copies `c` with its input i replaced by the gate `wires[i]`.
  std::vector<GateId> embed( const Circuit& c, std::span<const GateId> wires )
  {
    if ( wires.size() != c.num_inputs() )
    {
      throw structure_error( "embedded circuit has " + std::to_string( c.num_inputs() ) + " inputs, " +
                             std::to_string( wires.size() ) + " wires given" );
    }
    std::vector<GateId> map( c.num_gates() );
    for ( std::size_t id = 0; id < c.num_gates(); ++id )
    {
      const auto& g = c.gates()[id];
      switch ( g.kind )
      {
      case GateKind::Input:
        map[id] = wires[g.a];
        break;
      case GateKind::Const:
        map[id] = get_constant( g.a != 0 );
        break;
      case GateKind::Not:
        map[id] = raw_not( map[g.a] );
        break;
      case GateKind::And:
        map[id] = raw_and( map[g.a], map[g.b] );
        break;
      case GateKind::Or:
        map[id] = raw_or( map[g.a], map[g.b] );
        break;
      }
    }
    std::vector<GateId> outs;
    outs.reserve( c.num_outputs() );
    for ( auto o : c.outputs() )
    {
      outs.push_back( map[o] );
    }
    return outs;
  }

  void create_po( GateId id ) { outputs_.push_back( id ); }

  Circuit build() &&
  {
    return Circuit( num_inputs_, std::move( gates_ ), std::move( outputs_ ) );
  }

private:
  static constexpr GateId none = ~GateId{ 0 };

  GateId append( Gate g )
  {
    gates_.push_back( g );
    not_of_.push_back( none );
    return static_cast<GateId>( gates_.size() - 1 );
  }

  GateId balanced( std::span<const GateId> operands, bool is_and )
  {
    std::vector<GateId> level;
    level.reserve( operands.size() );
    for ( auto op : operands )
    {
      bool v;
      if ( as_constant( op, v ) )
      {
        if ( v != is_and )
        {
          return get_constant( v );
        }
        continue;
      }
      level.push_back( op );
    }
    if ( level.empty() )
    {
      return get_constant( is_and );
    }
    while ( level.size() > 1 )
    {
      std::vector<GateId> next;
      next.reserve( ( level.size() + 1 ) / 2 );
      for ( std::size_t i = 0; i + 1 < level.size(); i += 2 )
      {
        next.push_back( is_and ? create_and( level[i], level[i + 1] ) : create_or( level[i], level[i + 1] ) );
      }
      if ( level.size() % 2 == 1 )
      {
        next.push_back( level.back() );
      }
      level = std::move( next );
    }
    return level.front();
  }

  std::vector<Gate> gates_;
  std::vector<GateId> not_of_;
  std::vector<GateId> outputs_;
  std::vector<GateId> input_gate_;
  GateId const_gate_[2] = { none, none };
  std::size_t num_inputs_ = 0;
};

/// Evaluator with its own scratch buffers; one per thread.
class Evaluator
{
public:
  explicit Evaluator( const Circuit& c ) : circuit_( &c ) {}

  Bits operator()( std::span<const std::uint8_t> x )
  {
    const auto& c = *circuit_;
    if ( x.size() != c.num_inputs() )
    {
      throw arity_error( "circuit has " + std::to_string( c.num_inputs() ) + " inputs, got " +
                         std::to_string( x.size() ) );
    }
    values_.resize( c.num_gates() );
    const auto& gates = c.gates();
    for ( std::size_t id = 0; id < gates.size(); ++id )
    {
      const auto& g = gates[id];
      std::uint8_t v = 0;
      switch ( g.kind )
      {
      case GateKind::Input:
        v = x[g.a] ? 1 : 0;
        break;
      case GateKind::Const:
        v = static_cast<std::uint8_t>( g.a );
        break;
      case GateKind::Not:
        v = values_[g.a] ^ 1u;
        break;
      case GateKind::And:
        v = values_[g.a] & values_[g.b];
        break;
      case GateKind::Or:
        v = values_[g.a] | values_[g.b];
        break;
      }
      values_[id] = v;
    }
    Bits out( c.num_outputs() );
    for ( std::size_t k = 0; k < out.size(); ++k )
    {
      out[k] = values_[c.outputs()[k]];
    }
    return out;
  }

  /// Bit-sliced evaluation: bit l of `lanes[i]` is input i of proof l. Returns
  /// one 64-lane word per output.
  const std::vector<std::uint64_t>& eval_lanes( std::span<const std::uint64_t> lanes )
  {
    const auto& c = *circuit_;
    if ( lanes.size() != c.num_inputs() )
    {
      throw arity_error( "circuit has " + std::to_string( c.num_inputs() ) + " inputs, got " +
                         std::to_string( lanes.size() ) );
    }
    lane_values_.resize( c.num_gates() );
    const auto& gates = c.gates();
    for ( std::size_t id = 0; id < gates.size(); ++id )
    {
      const auto& g = gates[id];
      std::uint64_t v = 0;
      switch ( g.kind )
      {
      case GateKind::Input:
        v = lanes[g.a];
        break;
      case GateKind::Const:
        v = g.a ? ~std::uint64_t{ 0 } : 0;
        break;
      case GateKind::Not:
        v = ~lane_values_[g.a];
        break;
      case GateKind::And:
        v = lane_values_[g.a] & lane_values_[g.b];
        break;
      case GateKind::Or:
        v = lane_values_[g.a] | lane_values_[g.b];
        break;
      }
      lane_values_[id] = v;
    }
    lane_outputs_.resize( c.num_outputs() );
    for ( std::size_t k = 0; k < lane_outputs_.size(); ++k )
    {
      lane_outputs_[k] = lane_values_[c.outputs()[k]];
    }
    return lane_outputs_;
  }

private:
  const Circuit* circuit_;
  std::vector<std::uint8_t> values_;
  std::vector<std::uint64_t> lane_values_;
  std::vector<std::uint64_t> lane_outputs_;
};

/// Output word of `c` on proof `x`.
inline Bits eval( const Circuit& c, std::span<const std::uint8_t> x )
{
  return Evaluator( c )( x );
}

/*! \brief Structural measures of a circuit.
 *
 * Depth: INPUT and CONST gates have depth 0, every AND/OR/NOT adds one.
 * Size: number of AND/OR/NOT gates; leaves are not counted.
 * Alternations: along a path, the number of maximal runs of equal gate type
 * after pushing negations to the leaves (a lone AND tree has one).
 * Cone size: number of distinct inputs an output transitively reads.
 */
struct CircuitMetrics
{
  std::size_t depth = 0;
  std::size_t size = 0;
  std::size_t alternations = 0;
  std::vector<std::size_t> cone_sizes;
  std::vector<std::size_t> output_depths;
  std::vector<std::size_t> output_alternations;

  std::size_t max_cone() const
  {
    return cone_sizes.empty() ? 0 : *std::max_element( cone_sizes.begin(), cone_sizes.end() );
  }
};

inline CircuitMetrics metrics( const Circuit& c )
{
  const auto& gates = c.gates();
  const auto n = gates.size();
  CircuitMetrics m;

  std::vector<std::uint32_t> depth( n, 0 );
  // alternation value per (gate, polarity); type 0 = none (leaf), 1 = AND, 2 = OR
  std::vector<std::uint32_t> alt[2] = { std::vector<std::uint32_t>( n, 0 ), std::vector<std::uint32_t>( n, 0 ) };
  std::vector<std::uint8_t> type[2] = { std::vector<std::uint8_t>( n, 0 ), std::vector<std::uint8_t>( n, 0 ) };

  for ( std::size_t id = 0; id < n; ++id )
  {
    const auto& g = gates[id];
    switch ( g.kind )
    {
    case GateKind::Input:
    case GateKind::Const:
      break;
    case GateKind::Not:
      ++m.size;
      depth[id] = depth[g.a] + 1;
      for ( int pol = 0; pol < 2; ++pol )
      {
        alt[pol][id] = alt[1 - pol][g.a];
        type[pol][id] = type[1 - pol][g.a];
      }
      break;
    case GateKind::And:
    case GateKind::Or:
      ++m.size;
      depth[id] = std::max( depth[g.a], depth[g.b] ) + 1;
      for ( int pol = 0; pol < 2; ++pol )
      {
        const bool is_and = ( g.kind == GateKind::And ) != ( pol == 1 );
        const std::uint8_t t = is_and ? 1 : 2;
        std::uint32_t best = 0;
        for ( auto op : { g.a, g.b } )
        {
          const auto ot = type[pol][op];
          const std::uint32_t v = ot == 0 ? 1 : alt[pol][op] + ( ot != t ? 1 : 0 );
          best = std::max( best, v );
        }
        alt[pol][id] = best;
        type[pol][id] = t;
      }
      break;
    }
  }

  m.cone_sizes.resize( c.num_outputs() );
  m.output_depths.resize( c.num_outputs() );
  m.output_alternations.resize( c.num_outputs() );
  std::vector<std::uint32_t> stamp( n, 0 );
  std::vector<std::uint32_t> input_stamp( c.num_inputs(), 0 );
  std::vector<GateId> stack;
  for ( std::size_t k = 0; k < c.num_outputs(); ++k )
  {
    const auto root = c.outputs()[k];
    const auto mark = static_cast<std::uint32_t>( k + 1 );
    std::size_t cone = 0;
    stack.assign( 1, root );
    stamp[root] = mark;
    while ( !stack.empty() )
    {
      const auto id = stack.back();
      stack.pop_back();
      const auto& g = gates[id];
      if ( g.kind == GateKind::Input )
      {
        if ( input_stamp[g.a] != mark )
        {
          input_stamp[g.a] = mark;
          ++cone;
        }
        continue;
      }
      const auto fanin = g.fanin();
      if ( fanin >= 1 && stamp[g.a] != mark )
      {
        stamp[g.a] = mark;
        stack.push_back( g.a );
      }
      if ( fanin == 2 && stamp[g.b] != mark )
      {
        stamp[g.b] = mark;
        stack.push_back( g.b );
      }
    }
    m.cone_sizes[k] = cone;
    m.output_depths[k] = depth[root];
    m.output_alternations[k] = alt[0][root];
    m.depth = std::max<std::size_t>( m.depth, depth[root] );
    m.alternations = std::max<std::size_t>( m.alternations, alt[0][root] );
  }
  return m;
}

/*! \brief Lowers a truth table over `wires` to a DNF subcircuit.
 *
 * `table` has 2^k entries for k = wires.size(); wire 0 is the most
 * significant bit of the row index. True rows become balanced AND trees of
 * literals joined by a balanced OR tree, so the local depth is at most
 * ceil(log2 k) + ceil(log2 #true rows) + 1. All-false and all-true tables
 * become constants.
 */
inline GateId table_to_subcircuit( CircuitBuilder& b, std::span<const std::uint8_t> table,
                                   std::span<const GateId> wires )
{
  const auto k = wires.size();
  if ( table.size() != ( std::size_t{ 1 } << k ) )
  {
    throw structure_error( "truth table of size " + std::to_string( table.size() ) + " for " +
                           std::to_string( k ) + " wires" );
  }
  std::size_t ones = 0;
  for ( auto v : table )
  {
    ones += v ? 1 : 0;
  }
  if ( ones == 0 )
  {
    return b.get_constant( false );
  }
  if ( ones == table.size() )
  {
    return b.get_constant( true );
  }
  std::vector<GateId> rows;
  rows.reserve( ones );
  std::vector<GateId> literals( k );
  for ( std::size_t r = 0; r < table.size(); ++r )
  {
    if ( !table[r] )
    {
      continue;
    }
    for ( std::size_t j = 0; j < k; ++j )
    {
      const bool bit = ( r >> ( k - 1 - j ) ) & 1u;
      literals[j] = bit ? wires[j] : b.create_not( wires[j] );
    }
    rows.push_back( b.create_nary_and( literals ) );
  }
  return b.create_nary_or( rows );
}

/// Collapsed fanin of maximal same-kind AND/OR trees, the view in which a
/// balanced fanin-2 tree stands for one unbounded gate.
struct FaninReport
{
  std::size_t max_and_fanin = 0;
  std::size_t max_or_fanin = 0;
};

inline FaninReport fanin_report( const Circuit& c )
{
  const auto& gates = c.gates();
  const auto n = gates.size();
  // a gate is a tree root unless every reader is a gate of the same kind
  std::vector<std::uint8_t> has_other_reader( n, 0 );
  std::vector<std::uint8_t> has_reader( n, 0 );
  for ( std::size_t id = 0; id < n; ++id )
  {
    const auto& g = gates[id];
    for ( std::size_t i = 0; i < g.fanin(); ++i )
    {
      const auto op = i == 0 ? g.a : g.b;
      has_reader[op] = 1;
      if ( gates[op].kind != g.kind )
      {
        has_other_reader[op] = 1;
      }
    }
  }
  for ( auto o : c.outputs() )
  {
    has_other_reader[o] = 1;
  }
  // collapsed fanin: leaves of the same-kind subtree below each gate
  std::vector<std::size_t> leaves( n, 0 );
  FaninReport r;
  for ( std::size_t id = 0; id < n; ++id )
  {
    const auto& g = gates[id];
    if ( g.kind != GateKind::And && g.kind != GateKind::Or )
    {
      continue;
    }
    std::size_t count = 0;
    for ( auto op : { g.a, g.b } )
    {
      count += gates[op].kind == g.kind ? leaves[op] : 1;
    }
    leaves[id] = count;
    if ( has_other_reader[id] || !has_reader[id] )
    {
      auto& slot = g.kind == GateKind::And ? r.max_and_fanin : r.max_or_fanin;
      slot = std::max( slot, count );
    }
  }
  return r;
}

/// True when every NOT gate reads an INPUT gate.
inline bool negations_at_leaves( const Circuit& c )
{
  for ( const auto& g : c.gates() )
  {
    if ( g.kind == GateKind::Not && c.gates()[g.a].kind != GateKind::Input )
    {
      return false;
    }
  }
  return true;
}

} // namespace proofsys
