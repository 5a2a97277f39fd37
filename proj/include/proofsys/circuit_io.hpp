#pragma once

#include <charconv>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "circuit.hpp"
#include "errors.hpp"

namespace proofsys
{

namespace detail
{

inline std::vector<std::string_view> split_words( std::string_view line )
{
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while ( i < line.size() )
  {
    while ( i < line.size() && ( line[i] == ' ' || line[i] == '\t' || line[i] == '\r' ) )
    {
      ++i;
    }
    const auto start = i;
    while ( i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' )
    {
      ++i;
    }
    if ( i > start )
    {
      words.push_back( line.substr( start, i - start ) );
    }
  }
  return words;
}

inline std::vector<std::string_view> split_lines( std::string_view text )
{
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while ( start <= text.size() )
  {
    const auto end = text.find( '\n', start );
    if ( end == std::string_view::npos )
    {
      if ( start < text.size() )
      {
        lines.push_back( text.substr( start ) );
      }
      break;
    }
    lines.push_back( text.substr( start, end - start ) );
    start = end + 1;
  }
  return lines;
}

inline std::uint64_t parse_number( std::string_view word, std::size_t line )
{
  std::uint64_t value = 0;
  const auto* first = word.data();
  const auto* last = word.data() + word.size();
  auto [ptr, ec] = std::from_chars( first, last, value );
  if ( word.empty() || ec != std::errc() || ptr != last )
  {
    throw parse_error( line, "expected a non-negative integer, got '" + std::string( word ) + "'" );
  }
  return value;
}

} // namespace detail

/*! \brief Line-oriented text form of a circuit.
 *
 *   circuit <num_inputs> <num_gates> <num_outputs>
 *   <id> INPUT <i> | <id> CONST <b> | <id> NOT <a> | <id> AND <a> <b> | <id> OR <a> <b>
 *   outputs <id...>
 *
 * Every line ends in a newline; there is no trailing whitespace.
 */
inline std::string serialize( const Circuit& c )
{
  std::string out;
  out.reserve( 16 * ( c.num_gates() + 2 ) );
  out += "circuit " + std::to_string( c.num_inputs() ) + " " + std::to_string( c.num_gates() ) + " " +
         std::to_string( c.num_outputs() ) + "\n";
  for ( std::size_t id = 0; id < c.num_gates(); ++id )
  {
    const auto& g = c.gates()[id];
    out += std::to_string( id );
    switch ( g.kind )
    {
    case GateKind::Input:
      out += " INPUT " + std::to_string( g.a );
      break;
    case GateKind::Const:
      out += " CONST " + std::to_string( g.a );
      break;
    case GateKind::Not:
      out += " NOT " + std::to_string( g.a );
      break;
    case GateKind::And:
      out += " AND " + std::to_string( g.a ) + " " + std::to_string( g.b );
      break;
    case GateKind::Or:
      out += " OR " + std::to_string( g.a ) + " " + std::to_string( g.b );
      break;
    }
    out += '\n';
  }
  out += "outputs";
  for ( auto o : c.outputs() )
  {
    out += " " + std::to_string( o );
  }
  out += '\n';
  return out;
}

namespace detail
{

/// Parses a circuit starting at `lines[first]`; line numbers are reported
/// relative to the whole text.
inline Circuit parse_circuit_lines( const std::vector<std::string_view>& lines, std::size_t first )
{
  using detail::parse_number;
  if ( first >= lines.size() )
  {
    throw parse_error( first + 1, "missing circuit header" );
  }
  const auto header = split_words( lines[first] );
  if ( header.size() != 4 || header[0] != "circuit" )
  {
    throw parse_error( first + 1, "expected 'circuit <inputs> <gates> <outputs>'" );
  }
  const auto num_inputs = parse_number( header[1], first + 1 );
  const auto num_gates = parse_number( header[2], first + 1 );
  const auto num_outputs = parse_number( header[3], first + 1 );

  std::vector<Gate> gates;
  gates.reserve( num_gates );
  std::size_t line_index = first + 1;
  for ( ; line_index < lines.size(); ++line_index )
  {
    const auto words = split_words( lines[line_index] );
    const auto lineno = line_index + 1;
    if ( words.empty() )
    {
      throw parse_error( lineno, "empty line" );
    }
    if ( words[0] == "outputs" )
    {
      break;
    }
    if ( words.size() < 2 )
    {
      throw parse_error( lineno, "truncated gate line" );
    }
    const auto id = parse_number( words[0], lineno );
    if ( id != gates.size() )
    {
      throw parse_error( lineno, "gate id " + std::to_string( id ) + " out of sequence" );
    }
    const auto kind = words[1];
    auto arity = [&]( std::size_t expected ) {
      if ( words.size() != 2 + expected )
      {
        throw parse_error( lineno, std::string( kind ) + " takes " + std::to_string( expected ) + " argument(s)" );
      }
    };
    auto operand = [&]( std::size_t word_index ) {
      const auto op = parse_number( words[word_index], lineno );
      if ( op >= id )
      {
        throw structure_error( "line " + std::to_string( lineno ) + ": gate " + std::to_string( id ) +
                               " references gate " + std::to_string( op ) + " which is not earlier" );
      }
      return static_cast<std::uint32_t>( op );
    };
    Gate g;
    if ( kind == "INPUT" )
    {
      arity( 1 );
      const auto index = parse_number( words[2], lineno );
      if ( index >= num_inputs )
      {
        throw structure_error( "line " + std::to_string( lineno ) + ": input index out of range" );
      }
      g = { GateKind::Input, static_cast<std::uint32_t>( index ), 0 };
    }
    else if ( kind == "CONST" )
    {
      arity( 1 );
      const auto bit = parse_number( words[2], lineno );
      if ( bit > 1 )
      {
        throw parse_error( lineno, "constant must be 0 or 1" );
      }
      g = { GateKind::Const, static_cast<std::uint32_t>( bit ), 0 };
    }
    else if ( kind == "NOT" )
    {
      arity( 1 );
      g = { GateKind::Not, operand( 2 ), 0 };
    }
    else if ( kind == "AND" || kind == "OR" )
    {
      arity( 2 );
      g = { kind == "AND" ? GateKind::And : GateKind::Or, operand( 2 ), operand( 3 ) };
    }
    else
    {
      throw parse_error( lineno, "unknown gate kind '" + std::string( kind ) + "'" );
    }
    gates.push_back( g );
  }
  if ( line_index >= lines.size() )
  {
    throw parse_error( line_index, "missing 'outputs' line" );
  }
  if ( gates.size() != num_gates )
  {
    throw parse_error( line_index + 1, "header declares " + std::to_string( num_gates ) + " gates, found " +
                                           std::to_string( gates.size() ) );
  }
  const auto words = split_words( lines[line_index] );
  std::vector<GateId> outputs;
  for ( std::size_t i = 1; i < words.size(); ++i )
  {
    const auto o = parse_number( words[i], line_index + 1 );
    if ( o >= gates.size() )
    {
      throw structure_error( "line " + std::to_string( line_index + 1 ) + ": output references missing gate" );
    }
    outputs.push_back( static_cast<GateId>( o ) );
  }
  if ( outputs.size() != num_outputs )
  {
    throw parse_error( line_index + 1, "header declares " + std::to_string( num_outputs ) + " outputs, found " +
                                           std::to_string( outputs.size() ) );
  }
  for ( auto i = line_index + 1; i < lines.size(); ++i )
  {
    if ( !split_words( lines[i] ).empty() )
    {
      throw parse_error( i + 1, "trailing content after outputs" );
    }
  }
  return Circuit( num_inputs, std::move( gates ), std::move( outputs ) );
}

} // namespace detail

/// Inverse of `serialize`.
inline Circuit parse_circuit( std::string_view text )
{
  return detail::parse_circuit_lines( detail::split_lines( text ), 0 );
}

/// An NP verifier: a single-output circuit whose first `x_bits` inputs are
/// the instance and whose remaining `y_bits` inputs are the certificate.
struct VerifierCircuit
{
  Circuit circuit;
  std::size_t x_bits = 0;
  std::size_t y_bits = 0;

  VerifierCircuit() = default;
  VerifierCircuit( Circuit c, std::size_t x, std::size_t y ) : circuit( std::move( c ) ), x_bits( x ), y_bits( y )
  {
    if ( circuit.num_outputs() != 1 )
    {
      throw structure_error( "verifier must have exactly one output" );
    }
    if ( x + y != circuit.num_inputs() )
    {
      throw structure_error( "verifier split " + std::to_string( x ) + "+" + std::to_string( y ) +
                             " does not match " + std::to_string( circuit.num_inputs() ) + " inputs" );
    }
  }

  /// Accepts `x` under certificate `y`.
  bool accepts( std::span<const std::uint8_t> x, std::span<const std::uint8_t> y ) const
  {
    Bits in( x.begin(), x.end() );
    in.insert( in.end(), y.begin(), y.end() );
    return eval( circuit, in )[0] != 0;
  }

  friend bool operator==( const VerifierCircuit&, const VerifierCircuit& ) = default;
};

/// Verifier text: a `split <x_bits> <y_bits>` line followed by the circuit.
inline std::string serialize( const VerifierCircuit& v )
{
  return "split " + std::to_string( v.x_bits ) + " " + std::to_string( v.y_bits ) + "\n" + serialize( v.circuit );
}

inline VerifierCircuit parse_verifier( std::string_view text )
{
  const auto lines = detail::split_lines( text );
  if ( lines.empty() )
  {
    throw parse_error( 1, "missing 'split' line" );
  }
  const auto words = detail::split_words( lines[0] );
  if ( words.size() != 3 || words[0] != "split" )
  {
    throw parse_error( 1, "expected 'split <x_bits> <y_bits>'" );
  }
  const auto x = detail::parse_number( words[1], 1 );
  const auto y = detail::parse_number( words[2], 1 );
  return VerifierCircuit( detail::parse_circuit_lines( lines, 1 ), x, y );
}

} // namespace proofsys
