#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "automaton.hpp"
#include "circuit_io.hpp"
#include "errors.hpp"

namespace proofsys
{

enum class EdgeLabel : std::uint8_t
{
  negative, ///< taken when the gap's variable is 0
  positive, ///< taken when the gap's variable is 1
  always
};

struct BpEdge
{
  State from = 0;
  State to = 0;
  EdgeLabel label = EdgeLabel::always;
  std::uint32_t variable = 0; ///< 0-based; meaningful for literal labels

  bool allows( std::uint8_t bit ) const noexcept
  {
    return label == EdgeLabel::always || ( label == EdgeLabel::positive ) == ( bit != 0 );
  }

  friend bool operator==( const BpEdge&, const BpEdge& ) = default;
};

/*! \brief Layered branching program with layers 0..n+1.
 *
 * Layer 0 holds only the source and layer n+1 only the sink. `gaps[g]`
 * holds the edges from layer g-1 to layer g for g in [1, n+1]; gap n+1
 * connects accepting nodes to the sink with `always` edges.
 */
struct LayeredBp
{
  std::vector<std::size_t> widths;
  std::vector<std::vector<BpEdge>> gaps;

  std::size_t num_variables() const noexcept { return widths.size() < 2 ? 0 : widths.size() - 2; }
  std::size_t num_layers() const noexcept { return widths.size(); }

  std::size_t max_width() const noexcept
  {
    return widths.empty() ? 0 : *std::max_element( widths.begin(), widths.end() );
  }

  friend bool operator==( const LayeredBp&, const LayeredBp& ) = default;
};

/// Unrolls `a` on inputs of length `n`: widths (1, w, ..., w, 1), gap g
/// reads variable g-1, accepting copies at layer n lead to the sink.
inline LayeredBp unroll( const Automaton& a, std::size_t n )
{
  a.validate();
  if ( n == 0 )
  {
    throw synthesis_error( "unrolling needs n >= 1" );
  }
  LayeredBp bp;
  const auto w = a.num_states;
  bp.widths.assign( n + 2, w );
  bp.widths.front() = 1;
  bp.widths.back() = 1;
  bp.gaps.resize( n + 2 );
  for ( std::size_t g = 1; g <= n; ++g )
  {
    const auto var = static_cast<std::uint32_t>( g - 1 );
    for ( State p = 0; p < w; ++p )
    {
      if ( g == 1 && p != a.start )
      {
        continue;
      }
      const State from = g == 1 ? 0 : p;
      for ( int bit = 0; bit < 2; ++bit )
      {
        for ( auto q : a.successors[p][bit] )
        {
          bp.gaps[g].push_back( { from, q, bit ? EdgeLabel::positive : EdgeLabel::negative, var } );
        }
      }
    }
  }
  for ( State p = 0; p < w; ++p )
  {
    if ( a.is_final( p ) )
    {
      bp.gaps[n + 1].push_back( { p, 0, EdgeLabel::always, 0 } );
    }
  }
  return bp;
}

/*! \brief Checks the structured-program conditions and returns the variable
 * read by each gap (entry g-1 for gap g).
 *
 * Every gap g <= n must read a single variable through its literal edges,
 * the variables must form a permutation of [0, n), edges must stay inside
 * the layer widths, and the last gap may only hold `always` edges.
 */
inline std::vector<std::uint32_t> gap_variables( const LayeredBp& bp )
{
  const auto layers = bp.num_layers();
  if ( layers < 3 || bp.gaps.size() != layers )
  {
    throw structure_error( "branching program needs layers 0..n+1 with n >= 1" );
  }
  if ( bp.widths.front() != 1 || bp.widths.back() != 1 )
  {
    throw structure_error( "source and sink layers must have width 1" );
  }
  const auto n = bp.num_variables();
  std::vector<std::uint32_t> sigma( n );
  std::vector<std::uint8_t> used( n, 0 );
  for ( std::size_t g = 1; g < layers; ++g )
  {
    bool have_var = false;
    for ( const auto& e : bp.gaps[g] )
    {
      if ( e.from >= bp.widths[g - 1] || e.to >= bp.widths[g] )
      {
        throw structure_error( "edge in gap " + std::to_string( g ) + " leaves the layer widths" );
      }
      if ( e.label == EdgeLabel::always )
      {
        continue;
      }
      if ( g == layers - 1 )
      {
        throw structure_error( "edges into the sink must be unlabelled" );
      }
      if ( e.variable >= n )
      {
        throw structure_error( "gap " + std::to_string( g ) + " reads variable " + std::to_string( e.variable + 1 ) +
                               " of " + std::to_string( n ) );
      }
      if ( have_var && sigma[g - 1] != e.variable )
      {
        throw structure_error( "gap " + std::to_string( g ) + " reads two variables (x" +
                               std::to_string( sigma[g - 1] + 1 ) + " and x" + std::to_string( e.variable + 1 ) + ")" );
      }
      sigma[g - 1] = e.variable;
      have_var = true;
    }
    if ( g < layers - 1 )
    {
      if ( !have_var )
      {
        throw structure_error( "gap " + std::to_string( g ) + " reads no variable" );
      }
      if ( used[sigma[g - 1]]++ )
      {
        throw structure_error( "variable x" + std::to_string( sigma[g - 1] + 1 ) + " is read by two gaps" );
      }
    }
  }
  return sigma;
}

/// Source-to-sink path consistent with the assignment `x` (indexed by
/// variable).
inline bool bp_accepts( const LayeredBp& bp, std::span<const std::uint8_t> x )
{
  std::vector<std::uint8_t> current( 1, 1 );
  for ( std::size_t g = 1; g < bp.num_layers(); ++g )
  {
    std::vector<std::uint8_t> next( bp.widths[g], 0 );
    for ( const auto& e : bp.gaps[g] )
    {
      if ( current[e.from] && ( e.label == EdgeLabel::always || e.allows( x[e.variable] ) ) )
      {
        next[e.to] = 1;
      }
    }
    current.swap( next );
  }
  return current[0] != 0;
}

/*! \brief Reads the structured branching program text format.
 *
 *   bp <n> <w>
 *   start <p>
 *   accept <q...>
 *   edge <gap> <p> <q> <literal>    # gap in [1,n], literal x<v> or ~x<v>
 *
 * Layer 0 keeps only the start node; accepting nodes of layer n are joined
 * to a fresh sink. `#` starts a comment.
 */
inline LayeredBp parse_branching_program( std::string_view text )
{
  using detail::parse_number;
  const auto lines = detail::split_lines( text );
  std::size_t n = 0, w = 0, start = 0;
  bool have_header = false, have_start = false;
  std::vector<std::size_t> accept;
  struct RawEdge
  {
    std::size_t gap, from, to;
    EdgeLabel label;
    std::size_t variable;
    std::size_t line;
  };
  std::vector<RawEdge> edges;
  for ( std::size_t i = 0; i < lines.size(); ++i )
  {
    auto line = lines[i];
    if ( const auto hash = line.find( '#' ); hash != std::string_view::npos )
    {
      line = line.substr( 0, hash );
    }
    const auto words = detail::split_words( line );
    const auto lineno = i + 1;
    if ( words.empty() )
    {
      continue;
    }
    if ( words[0] == "bp" )
    {
      if ( words.size() != 3 )
      {
        throw parse_error( lineno, "expected 'bp <n> <w>'" );
      }
      n = parse_number( words[1], lineno );
      w = parse_number( words[2], lineno );
      if ( n == 0 || w == 0 )
      {
        throw parse_error( lineno, "branching program needs n >= 1 and w >= 1" );
      }
      have_header = true;
    }
    else if ( words[0] == "start" )
    {
      if ( words.size() != 2 )
      {
        throw parse_error( lineno, "expected 'start <p>'" );
      }
      start = parse_number( words[1], lineno );
      have_start = true;
    }
    else if ( words[0] == "accept" )
    {
      for ( std::size_t k = 1; k < words.size(); ++k )
      {
        accept.push_back( parse_number( words[k], lineno ) );
      }
    }
    else if ( words[0] == "edge" )
    {
      if ( words.size() != 5 )
      {
        throw parse_error( lineno, "expected 'edge <gap> <p> <q> <literal>'" );
      }
      auto literal = words[4];
      EdgeLabel label = EdgeLabel::positive;
      if ( !literal.empty() && literal[0] == '~' )
      {
        label = EdgeLabel::negative;
        literal.remove_prefix( 1 );
      }
      if ( literal.size() < 2 || literal[0] != 'x' )
      {
        throw parse_error( lineno, "literal must be x<v> or ~x<v>" );
      }
      const auto var = parse_number( literal.substr( 1 ), lineno );
      if ( var == 0 )
      {
        throw parse_error( lineno, "variables are numbered from 1" );
      }
      edges.push_back( { parse_number( words[1], lineno ), parse_number( words[2], lineno ),
                         parse_number( words[3], lineno ), label, var - 1, lineno } );
    }
    else
    {
      throw parse_error( lineno, "unknown directive '" + std::string( words[0] ) + "'" );
    }
  }
  if ( !have_header || !have_start )
  {
    throw parse_error( 0, "missing 'bp' or 'start' line" );
  }
  if ( start >= w )
  {
    throw structure_error( "start node out of range" );
  }
  LayeredBp bp;
  bp.widths.assign( n + 2, w );
  bp.widths.front() = 1;
  bp.widths.back() = 1;
  bp.gaps.resize( n + 2 );
  for ( const auto& e : edges )
  {
    if ( e.gap == 0 || e.gap > n || e.from >= w || e.to >= w || e.variable >= n )
    {
      throw structure_error( "line " + std::to_string( e.line ) + ": edge out of range" );
    }
    if ( e.gap == 1 && e.from != start )
    {
      continue;
    }
    bp.gaps[e.gap].push_back( { static_cast<State>( e.gap == 1 ? 0 : e.from ), static_cast<State>( e.to ), e.label,
                                static_cast<std::uint32_t>( e.variable ) } );
  }
  std::sort( accept.begin(), accept.end() );
  accept.erase( std::unique( accept.begin(), accept.end() ), accept.end() );
  for ( auto q : accept )
  {
    if ( q >= w )
    {
      throw structure_error( "accepting node out of range" );
    }
    bp.gaps[n + 1].push_back( { static_cast<State>( q ), 0, EdgeLabel::always, 0 } );
  }
  return bp;
}

} // namespace proofsys
