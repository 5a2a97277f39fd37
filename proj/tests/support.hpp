#pragma once

// Brute-force oracles shared by the unit tests. They deliberately avoid the
// verify module so that module can be tested against them.

#include <cstdint>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include <proofsys/bits.hpp>
#include <proofsys/circuit.hpp>

namespace testing_support
{

inline std::string read_sample( const std::string& name )
{
  std::ifstream in( std::string( PROOFSYS_SAMPLES ) + "/" + name );
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// All outputs of `c` over every input assignment.
inline std::set<std::string> brute_range( const proofsys::Circuit& c )
{
  std::set<std::string> out;
  const auto m = c.num_inputs();
  proofsys::Evaluator ev( c );
  proofsys::Bits x( m, 0 );
  for ( std::uint64_t v = 0; v < ( std::uint64_t{ 1 } << m ); ++v )
  {
    for ( std::size_t i = 0; i < m; ++i )
    {
      x[i] = ( v >> ( m - 1 - i ) ) & 1u;
    }
    out.insert( proofsys::to_string( ev( x ) ) );
  }
  return out;
}

/// All words of length n satisfying `pred`.
inline std::set<std::string> brute_slice( std::size_t n, const std::function<bool( const proofsys::Bits& )>& pred )
{
  std::set<std::string> out;
  proofsys::Bits w( n, 0 );
  for ( std::uint64_t v = 0; v < ( std::uint64_t{ 1 } << n ); ++v )
  {
    for ( std::size_t i = 0; i < n; ++i )
    {
      w[i] = ( v >> ( n - 1 - i ) ) & 1u;
    }
    if ( pred( w ) )
    {
      out.insert( proofsys::to_string( w ) );
    }
  }
  return out;
}

} // namespace testing_support
