#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bits.hpp"
#include "circuit_io.hpp"
#include "errors.hpp"

namespace proofsys
{

using State = std::uint32_t;

/*! \brief Finite automaton over {0,1}.
 *
 * Deterministic when every (state, bit) has exactly one successor; otherwise
 * nondeterministic with possibly empty successor sets.
 */
struct Automaton
{
  std::size_t num_states = 0;
  State start = 0;
  std::vector<std::uint8_t> accepting;
  /// successors[q][b], sorted and duplicate free
  std::vector<std::array<std::vector<State>, 2>> successors;

  Automaton() = default;
  explicit Automaton( std::size_t w ) : num_states( w ), accepting( w, 0 ), successors( w ) {}

  void add_transition( State p, int bit, State q )
  {
    auto& s = successors.at( p )[bit];
    if ( std::find( s.begin(), s.end(), q ) == s.end() )
    {
      s.insert( std::upper_bound( s.begin(), s.end(), q ), q );
    }
  }

  bool is_final( State q ) const { return accepting[q] != 0; }

  bool is_deterministic() const
  {
    for ( const auto& s : successors )
    {
      if ( s[0].size() != 1 || s[1].size() != 1 )
      {
        return false;
      }
    }
    return true;
  }

  void validate() const
  {
    if ( num_states == 0 )
    {
      throw structure_error( "automaton needs at least one state" );
    }
    if ( start >= num_states )
    {
      throw structure_error( "start state out of range" );
    }
    if ( accepting.size() != num_states || successors.size() != num_states )
    {
      throw structure_error( "automaton tables do not match state count" );
    }
    for ( const auto& s : successors )
    {
      for ( const auto& set : s )
      {
        for ( auto q : set )
        {
          if ( q >= num_states )
          {
            throw structure_error( "transition target out of range" );
          }
        }
      }
    }
  }

  /// Subset simulation.
  bool accepts( std::span<const std::uint8_t> word ) const
  {
    std::vector<std::uint8_t> current( num_states, 0 ), next( num_states, 0 );
    current[start] = 1;
    for ( auto bit : word )
    {
      std::fill( next.begin(), next.end(), 0 );
      bool any = false;
      for ( State p = 0; p < num_states; ++p )
      {
        if ( current[p] )
        {
          for ( auto q : successors[p][bit ? 1 : 0] )
          {
            next[q] = 1;
            any = true;
          }
        }
      }
      if ( !any )
      {
        return false;
      }
      current.swap( next );
    }
    for ( State q = 0; q < num_states; ++q )
    {
      if ( current[q] && accepting[q] )
      {
        return true;
      }
    }
    return false;
  }

  friend bool operator==( const Automaton&, const Automaton& ) = default;
};

/*! \brief Reads the automaton text format.
 *
 *   states <w>
 *   start <q0>
 *   final <q...>
 *   trans <p> <bit> <q>
 *
 * `#` starts a comment. If some (state, bit) has two or more transitions the
 * automaton is nondeterministic and may be partial; otherwise every
 * (state, bit) must have a transition.
 */
inline Automaton parse_automaton( std::string_view text )
{
  using detail::parse_number;
  const auto lines = detail::split_lines( text );
  Automaton a;
  bool have_states = false, have_start = false;
  std::vector<std::size_t> finals;
  struct Trans
  {
    std::size_t p, bit, q, line;
  };
  std::vector<Trans> trans;
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
    if ( words[0] == "states" )
    {
      if ( words.size() != 2 )
      {
        throw parse_error( lineno, "expected 'states <w>'" );
      }
      const auto w = parse_number( words[1], lineno );
      if ( w == 0 )
      {
        throw parse_error( lineno, "automaton needs at least one state" );
      }
      a = Automaton( w );
      have_states = true;
    }
    else if ( words[0] == "start" )
    {
      if ( words.size() != 2 )
      {
        throw parse_error( lineno, "expected 'start <q0>'" );
      }
      a.start = static_cast<State>( parse_number( words[1], lineno ) );
      have_start = true;
    }
    else if ( words[0] == "final" )
    {
      for ( std::size_t k = 1; k < words.size(); ++k )
      {
        finals.push_back( parse_number( words[k], lineno ) );
      }
    }
    else if ( words[0] == "trans" )
    {
      if ( words.size() != 4 )
      {
        throw parse_error( lineno, "expected 'trans <p> <bit> <q>'" );
      }
      const auto bit = parse_number( words[2], lineno );
      if ( bit > 1 )
      {
        throw parse_error( lineno, "transition bit must be 0 or 1" );
      }
      trans.push_back( { parse_number( words[1], lineno ), bit, parse_number( words[3], lineno ), lineno } );
    }
    else
    {
      throw parse_error( lineno, "unknown directive '" + std::string( words[0] ) + "'" );
    }
  }
  if ( !have_states )
  {
    throw parse_error( 0, "missing 'states' line" );
  }
  if ( !have_start )
  {
    throw parse_error( 0, "missing 'start' line" );
  }
  if ( a.start >= a.num_states )
  {
    throw structure_error( "start state " + std::to_string( a.start ) + " out of range" );
  }
  for ( auto q : finals )
  {
    if ( q >= a.num_states )
    {
      throw structure_error( "final state " + std::to_string( q ) + " out of range" );
    }
    a.accepting[q] = 1;
  }
  for ( const auto& t : trans )
  {
    if ( t.p >= a.num_states || t.q >= a.num_states )
    {
      throw structure_error( "line " + std::to_string( t.line ) + ": state index out of range (" +
                             std::to_string( a.num_states ) + " states)" );
    }
    a.add_transition( static_cast<State>( t.p ), static_cast<int>( t.bit ), static_cast<State>( t.q ) );
  }
  bool nondeterministic = false;
  for ( const auto& s : a.successors )
  {
    nondeterministic = nondeterministic || s[0].size() > 1 || s[1].size() > 1;
  }
  if ( !nondeterministic )
  {
    for ( State p = 0; p < a.num_states; ++p )
    {
      for ( int bit = 0; bit < 2; ++bit )
      {
        if ( a.successors[p][bit].empty() )
        {
          throw structure_error( "missing transition from state " + std::to_string( p ) + " on " +
                                 std::to_string( bit ) );
        }
      }
    }
  }
  return a;
}

inline std::string serialize( const Automaton& a )
{
  std::string out = "states " + std::to_string( a.num_states ) + "\nstart " + std::to_string( a.start ) + "\nfinal";
  for ( State q = 0; q < a.num_states; ++q )
  {
    if ( a.accepting[q] )
    {
      out += " " + std::to_string( q );
    }
  }
  out += "\n";
  for ( State p = 0; p < a.num_states; ++p )
  {
    for ( int bit = 0; bit < 2; ++bit )
    {
      for ( auto q : a.successors[p][bit] )
      {
        out += "trans " + std::to_string( p ) + " " + std::to_string( bit ) + " " + std::to_string( q ) + "\n";
      }
    }
  }
  return out;
}

} // namespace proofsys
