#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "circuit.hpp"

namespace proofsys
{

/// Unsigned number as gate ids, least significant bit first.
using WordGates = std::vector<GateId>;

/*! \brief Gate construction with or without constant folding.
 *
 * With `fold == false` every operation appends fresh gates, so a gadget
 * keeps the same shape (and alternation count) whether its operands are
 * constants or not.
 */
class GateOps
{
public:
  GateOps( CircuitBuilder& b, bool fold ) : b_( b ), fold_( fold ) {}

  CircuitBuilder& builder() noexcept { return b_; }
  GateId constant( bool v ) { return b_.get_constant( v ); }
  GateId not1( GateId a ) { return fold_ ? b_.create_not( a ) : b_.raw_not( a ); }
  GateId and2( GateId a, GateId c ) { return fold_ ? b_.create_and( a, c ) : b_.raw_and( a, c ); }
  GateId or2( GateId a, GateId c ) { return fold_ ? b_.create_or( a, c ) : b_.raw_or( a, c ); }
  GateId xor2( GateId a, GateId c ) { return or2( and2( a, not1( c ) ), and2( not1( a ), c ) ); }
  GateId xnor2( GateId a, GateId c ) { return or2( and2( a, c ), and2( not1( a ), not1( c ) ) ); }
  GateId nary_and( std::span<const GateId> ops ) { return fold_ ? b_.create_nary_and( ops ) : balanced( ops, true ); }
  GateId nary_or( std::span<const GateId> ops ) { return fold_ ? b_.create_nary_or( ops ) : balanced( ops, false ); }

private:
  GateId balanced( std::span<const GateId> ops, bool is_and )
  {
    if ( ops.empty() )
    {
      return constant( is_and );
    }
    std::vector<GateId> level( ops.begin(), ops.end() );
    while ( level.size() > 1 )
    {
      std::vector<GateId> next;
      for ( std::size_t i = 0; i + 1 < level.size(); i += 2 )
      {
        next.push_back( is_and ? b_.raw_and( level[i], level[i + 1] ) : b_.raw_or( level[i], level[i + 1] ) );
      }
      if ( level.size() % 2 == 1 )
      {
        next.push_back( level.back() );
      }
      level = std::move( next );
    }
    return level.front();
  }

  CircuitBuilder& b_;
  bool fold_;
};

inline WordGates constant_word( GateOps& g, std::uint64_t value, std::size_t width )
{
  WordGates w( width );
  for ( std::size_t i = 0; i < width; ++i )
  {
    w[i] = g.constant( ( value >> i ) & 1u );
  }
  return w;
}

/// Number of bits needed for `value` (0 for 0).
inline std::size_t bit_length( std::uint64_t value )
{
  std::size_t width = 0;
  while ( width < 64 && ( value >> width ) )
  {
    ++width;
  }
  return width;
}

namespace detail
{

inline GateId bit_or_zero( GateOps& g, const WordGates& w, std::size_t i )
{
  return i < w.size() ? w[i] : g.constant( false );
}

} // namespace detail

/*! \brief Sum of two words, one bit wider than the wider operand.
 *
 * Carry into bit i is OR_j ( g_j AND p_{j+1} AND ... AND p_{i-1} ) with
 * g = a AND b and p = a OR b, every OR/AND a balanced tree, so the adder
 * has constant alternation depth.
 */
inline WordGates add( GateOps& o, const WordGates& x, const WordGates& y )
{
  const auto width = std::max( x.size(), y.size() );
  std::vector<GateId> g( width ), p( width );
  for ( std::size_t i = 0; i < width; ++i )
  {
    const auto xi = detail::bit_or_zero( o, x, i ), yi = detail::bit_or_zero( o, y, i );
    g[i] = o.and2( xi, yi );
    p[i] = o.or2( xi, yi );
  }
  WordGates sum( width + 1 );
  for ( std::size_t i = 0; i <= width; ++i )
  {
    std::vector<GateId> terms;
    for ( std::size_t j = 0; j < i; ++j )
    {
      std::vector<GateId> chain{ g[j] };
      chain.insert( chain.end(), p.begin() + j + 1, p.begin() + i );
      terms.push_back( o.nary_and( chain ) );
    }
    const auto carry = o.nary_or( terms );
    if ( i == width )
    {
      sum[i] = carry;
    }
    else
    {
      const auto half = o.xor2( detail::bit_or_zero( o, x, i ), detail::bit_or_zero( o, y, i ) );
      sum[i] = i == 0 ? half : o.xor2( half, carry );
    }
  }
  return sum;
}

/// x > y: OR_i ( x_i AND NOT y_i AND all higher bits equal ).
inline GateId greater_than( GateOps& o, const WordGates& x, const WordGates& y )
{
  const auto width = std::max( x.size(), y.size() );
  std::vector<GateId> eq( width );
  for ( std::size_t i = 0; i < width; ++i )
  {
    eq[i] = o.xnor2( detail::bit_or_zero( o, x, i ), detail::bit_or_zero( o, y, i ) );
  }
  std::vector<GateId> terms;
  for ( std::size_t i = 0; i < width; ++i )
  {
    std::vector<GateId> chain{ detail::bit_or_zero( o, x, i ), o.not1( detail::bit_or_zero( o, y, i ) ) };
    chain.insert( chain.end(), eq.begin() + i + 1, eq.end() );
    terms.push_back( o.nary_and( chain ) );
  }
  return o.nary_or( terms );
}

inline GateId less_equal( GateOps& o, const WordGates& x, const WordGates& y )
{
  return o.not1( greater_than( o, x, y ) );
}

inline GateId equal( GateOps& o, const WordGates& x, const WordGates& y )
{
  const auto width = std::max( x.size(), y.size() );
  std::vector<GateId> eq( width );
  for ( std::size_t i = 0; i < width; ++i )
  {
    eq[i] = o.xnor2( detail::bit_or_zero( o, x, i ), detail::bit_or_zero( o, y, i ) );
  }
  return o.nary_and( eq );
}

/// x >= c for a constant c.
inline GateId at_least( GateOps& o, const WordGates& x, std::uint64_t c )
{
  if ( c == 0 )
  {
    return o.constant( true );
  }
  return greater_than( o, x, constant_word( o, c - 1, bit_length( c - 1 ) ) );
}

/// min(x, limit), as wide as x; x itself when it cannot exceed the limit.
inline WordGates clamp( GateOps& o, const WordGates& x, std::uint64_t limit )
{
  if ( x.size() >= 64 || ( std::uint64_t{ 1 } << x.size() ) - 1 <= limit )
  {
    return x;
  }
  const auto over = greater_than( o, x, constant_word( o, limit, bit_length( limit ) ) );
  const auto under = o.not1( over );
  WordGates out( x.size() );
  for ( std::size_t i = 0; i < x.size(); ++i )
  {
    out[i] = o.or2( o.and2( x[i], under ), o.and2( o.constant( ( limit >> i ) & 1u ), over ) );
  }
  return out;
}

} // namespace proofsys
