#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace proofsys
{

/// A bit vector, one byte per bit holding 0 or 1.
using Bits = std::vector<std::uint8_t>;

/// Seeded generator used everywhere randomness is needed. All draws go
/// through the helpers below so results do not depend on the standard
/// library's distribution implementations.
using Rng = std::mt19937_64;

inline Bits parse_bits( std::string_view text )
{
  Bits out;
  out.reserve( text.size() );
  for ( auto c : text )
  {
    if ( c != '0' && c != '1' )
    {
      throw parse_error( 0, "expected a 0/1 string, got '" + std::string( text ) + "'" );
    }
    out.push_back( static_cast<std::uint8_t>( c - '0' ) );
  }
  return out;
}

inline std::string to_string( std::span<const std::uint8_t> bits )
{
  std::string s;
  s.reserve( bits.size() );
  for ( auto b : bits )
  {
    s.push_back( b ? '1' : '0' );
  }
  return s;
}

inline std::size_t popcount( std::span<const std::uint8_t> bits )
{
  std::size_t count = 0;
  for ( auto b : bits )
  {
    count += b ? 1u : 0u;
  }
  return count;
}

/// `width` bits of `value`, most significant first.
inline Bits bits_of( std::uint64_t value, std::size_t width )
{
  Bits out( width );
  for ( std::size_t i = 0; i < width; ++i )
  {
    out[width - 1 - i] = static_cast<std::uint8_t>( ( value >> i ) & 1u );
  }
  return out;
}

/// Inverse of `bits_of`.
inline std::uint64_t value_of( std::span<const std::uint8_t> bits )
{
  std::uint64_t v = 0;
  for ( auto b : bits )
  {
    v = ( v << 1 ) | ( b ? 1u : 0u );
  }
  return v;
}

/// Number of bits needed to encode values in [0, count), i.e. ceil(log2 count).
inline std::size_t bit_width_for( std::size_t count )
{
  std::size_t bits = 0;
  while ( ( std::size_t{ 1 } << bits ) < count )
  {
    ++bits;
  }
  return bits;
}

inline std::size_t ceil_log2( std::size_t x )
{
  return x <= 1 ? 0 : bit_width_for( x );
}

/// Uniform integer in [0, bound); bound > 0.
inline std::uint64_t uniform_below( Rng& rng, std::uint64_t bound )
{
  if ( ( bound & ( bound - 1 ) ) == 0 )
  {
    return rng() & ( bound - 1 );
  }
  const std::uint64_t limit = ~std::uint64_t{ 0 } - ( ~std::uint64_t{ 0 } % bound );
  std::uint64_t r;
  do
  {
    r = rng();
  } while ( r >= limit );
  return r % bound;
}

inline Bits random_bits( Rng& rng, std::size_t length )
{
  Bits out( length );
  std::uint64_t pool = 0;
  for ( std::size_t i = 0; i < length; ++i )
  {
    if ( i % 64 == 0 )
    {
      pool = rng();
    }
    out[i] = static_cast<std::uint8_t>( ( pool >> ( i % 64 ) ) & 1u );
  }
  return out;
}

/// Bits that are 1 independently with probability numerator / 2^16.
inline Bits biased_bits( Rng& rng, std::size_t length, std::uint32_t numerator )
{
  Bits out( length );
  for ( auto& b : out )
  {
    b = static_cast<std::uint8_t>( ( rng() & 0xffffu ) < numerator );
  }
  return out;
}

} // namespace proofsys
