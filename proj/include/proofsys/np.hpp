#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bits.hpp"
#include "circuit.hpp"
#include "circuit_io.hpp"
#include "errors.hpp"

namespace proofsys
{

namespace detail
{

/// Logic gates (AND/OR/NOT) of `c` in id order; entry is the z slot, or
/// `none` for inputs and constants.
inline std::vector<std::size_t> z_slots( const Circuit& c, std::size_t& count )
{
  constexpr auto none = ~std::size_t{ 0 };
  std::vector<std::size_t> slot( c.num_gates(), none );
  count = 0;
  for ( std::size_t id = 0; id < c.num_gates(); ++id )
  {
    if ( !c.gates()[id].is_leaf() )
    {
      slot[id] = count++;
    }
  }
  return slot;
}

/// Truth table of "z equals the gate applied to its operands" over the
/// wires (z, a, b), z most significant.
inline Bits gate_consistency_table( GateKind kind )
{
  Bits table( 8 );
  for ( std::size_t r = 0; r < 8; ++r )
  {
    const bool z = r & 4u, a = r & 2u, b = r & 1u;
    const bool value = kind == GateKind::Not ? !a : kind == GateKind::And ? ( a && b ) : ( a || b );
    table[r] = z == value;
  }
  return table;
}

/// CNF of a truth table: one clause of literals per false row, joined by a
/// balanced AND tree. Wire 0 is the most significant bit.
inline GateId table_to_cnf( CircuitBuilder& b, std::span<const std::uint8_t> table, std::span<const GateId> wires )
{
  const auto k = wires.size();
  std::vector<GateId> clauses;
  std::vector<GateId> literals( k );
  for ( std::size_t r = 0; r < table.size(); ++r )
  {
    if ( table[r] )
    {
      continue;
    }
    for ( std::size_t j = 0; j < k; ++j )
    {
      const bool bit = ( r >> ( k - 1 - j ) ) & 1u;
      literals[j] = bit ? b.create_not( wires[j] ) : wires[j];
    }
    clauses.push_back( b.create_nary_or( literals ) );
  }
  return b.create_nary_and( clauses );
}

/*! \brief Shared body of the two constructions.
 *
 * Returns, for every gate of the verifier, the 3-literal consistency (CNF)
 * or inconsistency (DNF) term together with the claimed output value.
 */
inline std::vector<GateId> gate_checks( CircuitBuilder& b, const VerifierCircuit& v, bool consistency,
                                        GateId& claimed_output )
{
  const auto& c = v.circuit;
  std::size_t count = 0;
  const auto slot = z_slots( c, count );
  const auto z_offset = v.x_bits + v.y_bits;
  std::vector<GateId> value( c.num_gates() );
  std::vector<GateId> checks;
  for ( std::size_t id = 0; id < c.num_gates(); ++id )
  {
    const auto& g = c.gates()[id];
    switch ( g.kind )
    {
    case GateKind::Input:
      value[id] = b.input( g.a );
      continue;
    case GateKind::Const:
      value[id] = b.get_constant( g.a != 0 );
      continue;
    default:
      break;
    }
    value[id] = b.input( z_offset + slot[id] );
    const GateId wires[3] = { value[id], value[g.a], g.kind == GateKind::Not ? value[g.a] : value[g.b] };
    auto table = gate_consistency_table( g.kind );
    if ( consistency )
    {
      checks.push_back( table_to_cnf( b, table, wires ) );
    }
    else
    {
      for ( auto& t : table )
      {
        t = !t;
      }
      checks.push_back( table_to_subcircuit( b, table, wires ) );
    }
  }
  claimed_output = value[c.outputs()[0]];
  return checks;
}

} // namespace detail

/// Number of z bits (one per AND/OR/NOT gate of the verifier).
inline std::size_t z_bits( const VerifierCircuit& v )
{
  std::size_t count = 0;
  detail::z_slots( v.circuit, count );
  return count;
}

/*! \brief co-SAC proof system for L plus 0^n.
 *
 * Inputs x, y, z. Output w_i = x_i AND every gate consistent AND the claimed
 * output is 1; negations only on inputs, ORs of at most 3 literals.
 */
inline Circuit synth_co_sac( const VerifierCircuit& v )
{
  CircuitBuilder b( v.x_bits + v.y_bits + z_bits( v ) );
  GateId out = 0;
  auto checks = detail::gate_checks( b, v, true, out );
  checks.push_back( out );
  const auto ok = b.create_nary_and( checks );
  for ( std::size_t i = 0; i < v.x_bits; ++i )
  {
    b.create_po( b.create_and( b.input( i ), ok ) );
  }
  return std::move( b ).build();
}

/*! \brief SAC proof system for L plus 1^n.
 *
 * Output w_i = x_i OR some gate inconsistent OR the claimed output is 0;
 * negations only on inputs, ANDs of at most 3 literals.
 */
inline Circuit synth_sac( const VerifierCircuit& v )
{
  CircuitBuilder b( v.x_bits + v.y_bits + z_bits( v ) );
  GateId out = 0;
  auto checks = detail::gate_checks( b, v, false, out );
  checks.push_back( b.create_not( out ) );
  const auto bad = b.create_nary_or( checks );
  for ( std::size_t i = 0; i < v.x_bits; ++i )
  {
    b.create_po( b.create_or( b.input( i ), bad ) );
  }
  return std::move( b ).build();
}

/*! \brief Verifier for 1.L.0 plus `extra`^(n+2).
 *
 * Inputs w (n+2 bits) then the certificate; accepts when w = 1x0 with
 * v(x, y) = 1, or when w is all `extra`.
 */
inline VerifierCircuit padded_verifier( const VerifierCircuit& v, bool extra )
{
  const auto n = v.x_bits + 2;
  CircuitBuilder b( n + v.y_bits );
  std::vector<GateId> wires;
  for ( std::size_t i = 0; i < v.x_bits; ++i )
  {
    wires.push_back( b.input( 1 + i ) );
  }
  for ( std::size_t j = 0; j < v.y_bits; ++j )
  {
    wires.push_back( b.input( n + j ) );
  }
  const auto inner = b.embed( v.circuit, wires )[0];
  const auto framed = b.create_and( b.create_and( b.input( 0 ), b.create_not( b.input( n - 1 ) ) ), inner );
  std::vector<GateId> all( n );
  for ( std::size_t i = 0; i < n; ++i )
  {
    all[i] = extra ? b.input( i ) : b.create_not( b.input( i ) );
  }
  b.create_po( b.create_or( framed, b.create_nary_and( all ) ) );
  return VerifierCircuit( std::move( b ).build(), n, v.y_bits );
}

struct PaddedSystems
{
  Circuit sac;
  Circuit co_sac;
};

/// Both proof systems for ( 1.L.0 ) plus 0^n plus 1^n, n = x_bits + 2.
inline PaddedSystems pad_language( const VerifierCircuit& v )
{
  return { synth_sac( padded_verifier( v, false ) ), synth_co_sac( padded_verifier( v, true ) ) };
}

/// Value of every logic gate of the verifier on (x, y), in z order.
inline Bits gate_values( const VerifierCircuit& v, std::span<const std::uint8_t> x, std::span<const std::uint8_t> y )
{
  if ( x.size() != v.x_bits || y.size() != v.y_bits )
  {
    throw arity_error( "verifier expects " + std::to_string( v.x_bits ) + "+" + std::to_string( v.y_bits ) +
                       " input bits" );
  }
  const auto& c = v.circuit;
  Bits value( c.num_gates() ), z;
  for ( std::size_t id = 0; id < c.num_gates(); ++id )
  {
    const auto& g = c.gates()[id];
    switch ( g.kind )
    {
    case GateKind::Input:
      value[id] = g.a < x.size() ? x[g.a] : y[g.a - x.size()];
      continue;
    case GateKind::Const:
      value[id] = g.a != 0;
      continue;
    case GateKind::Not:
      value[id] = !value[g.a];
      break;
    case GateKind::And:
      value[id] = value[g.a] && value[g.b];
      break;
    case GateKind::Or:
      value[id] = value[g.a] || value[g.b];
      break;
    }
    z.push_back( value[id] );
  }
  return z;
}

/// Proof x.y.z for an instance x; the certificate is the first y (in
/// increasing binary order) the verifier accepts.
inline Bits witness_np( const VerifierCircuit& v, std::span<const std::uint8_t> x )
{
  if ( x.size() != v.x_bits )
  {
    throw arity_error( "instance of length " + std::to_string( x.size() ) + ", expected " +
                       std::to_string( v.x_bits ) );
  }
  if ( v.y_bits >= 63 )
  {
    throw budget_error( "certificate of " + std::to_string( v.y_bits ) + " bits is too long to search" );
  }
  for ( std::uint64_t code = 0; code < ( std::uint64_t{ 1 } << v.y_bits ); ++code )
  {
    const auto y = bits_of( code, v.y_bits );
    if ( v.accepts( x, y ) )
    {
      Bits proof( x.begin(), x.end() );
      proof.insert( proof.end(), y.begin(), y.end() );
      const auto z = gate_values( v, x, y );
      proof.insert( proof.end(), z.begin(), z.end() );
      return proof;
    }
  }
  throw witness_error( "no certificate for " + to_string( x ) );
}

/// Proof x = bit^n with y and z zero. Under synth_co_sac (bit 0) or
/// synth_sac (bit 1) it yields bit^n whatever the checks say.
inline Bits collapse_proof( const VerifierCircuit& v, bool bit )
{
  Bits proof( v.x_bits, bit );
  proof.resize( v.x_bits + v.y_bits + z_bits( v ), 0 );
  return proof;
}

} // namespace proofsys
