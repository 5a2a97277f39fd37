#pragma once

/*! \file
 * Language expressions, shared by `--expr` and `--lang` on the command line.
 *
 *   regular:<automaton-file>:<n>     regular(<file>, n)
 *   threshold:<n>:<t>                threshold(n, t)
 *   exact:<n>:<t>                    exact(n, t)
 *   cycles:<n>  ustconn:<n>  unreach:<n>
 *   co-sac:<verifier-file>           sac:<verifier-file>
 *   padded:<verifier-file>[:sac]     padded(<file>[, sac|co-sac])
 *   finite(w1, w2, ...)              words of 0/1, `eps` for the empty word
 *   union(e1, e2, ...)
 *   concat({w1, ...}, e)             concat(e, {w1, ...})
 *   reverse(e)  upclose(e)
 *   morphism(h0, h1, e)              inverse(h0, h1, e)
 */

#include <cctype>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "automaton.hpp"
#include "circuit_io.hpp"
#include "errors.hpp"
#include "systems.hpp"

namespace proofsys
{

inline std::string read_file( const std::string& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw error( "cannot read " + path );
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail
{

class ExpressionParser
{
public:
  explicit ExpressionParser( std::string_view text ) { tokenize( text ); }

  ProofSystem parse()
  {
    auto s = expression();
    if ( pos_ != tokens_.size() )
    {
      fail( "unexpected '" + tokens_[pos_] + "'" );
    }
    return s;
  }

private:
  static bool punctuation( char c ) { return c == '(' || c == ')' || c == '{' || c == '}' || c == ','; }

  void tokenize( std::string_view text )
  {
    std::size_t i = 0;
    while ( i < text.size() )
    {
      if ( std::isspace( static_cast<unsigned char>( text[i] ) ) )
      {
        ++i;
      }
      else if ( punctuation( text[i] ) )
      {
        tokens_.emplace_back( 1, text[i++] );
      }
      else
      {
        const auto start = i;
        while ( i < text.size() && !punctuation( text[i] ) && !std::isspace( static_cast<unsigned char>( text[i] ) ) )
        {
          ++i;
        }
        tokens_.emplace_back( text.substr( start, i - start ) );
      }
    }
  }

  [[noreturn]] void fail( const std::string& what ) const { throw parse_error( 1, "expression: " + what ); }

  const std::string& next()
  {
    if ( pos_ == tokens_.size() )
    {
      fail( "unexpected end" );
    }
    return tokens_[pos_++];
  }

  bool peek( std::string_view t ) const { return pos_ < tokens_.size() && tokens_[pos_] == t; }

  void expect( std::string_view t )
  {
    if ( next() != t )
    {
      fail( "expected '" + std::string( t ) + "' before '" + tokens_[pos_ - 1] + "'" );
    }
  }

  static std::size_t number( const std::string& s )
  {
    if ( s.empty() || s.size() > 9 || !std::all_of( s.begin(), s.end(), []( char c ) { return c >= '0' && c <= '9'; } ) )
    {
      throw parse_error( 1, "expression: expected a number, got '" + s + "'" );
    }
    return std::stoul( s );
  }

  static Bits word( const std::string& s )
  {
    if ( s == "eps" )
    {
      return {};
    }
    if ( !std::all_of( s.begin(), s.end(), []( char c ) { return c == '0' || c == '1'; } ) )
    {
      throw parse_error( 1, "expression: expected a 0/1 word, got '" + s + "'" );
    }
    return parse_bits( s );
  }

  std::vector<Bits> word_set()
  {
    expect( "{" );
    std::vector<Bits> out{ word( next() ) };
    while ( peek( "," ) )
    {
      ++pos_;
      out.push_back( word( next() ) );
    }
    expect( "}" );
    return out;
  }

  ProofSystem expression()
  {
    const auto head = next();
    if ( !peek( "(" ) )
    {
      return base( split_colon( head ) );
    }
    ++pos_;
    ProofSystem out = head == "union"      ? union_args()
                      : head == "concat"   ? concat_args()
                      : head == "reverse"  ? reverse_system( expression() )
                      : head == "upclose"  ? upclose_system( expression() )
                      : head == "morphism" ? morphism_args( false )
                      : head == "inverse"  ? morphism_args( true )
                      : head == "finite"   ? finite_args()
                                           : base( plain_args( head ) );
    expect( ")" );
    return out;
  }

  static std::vector<std::string> split_colon( const std::string& s )
  {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for ( ;; )
    {
      const auto colon = s.find( ':', start );
      parts.push_back( s.substr( start, colon - start ) );
      if ( colon == std::string::npos )
      {
        return parts;
      }
      start = colon + 1;
    }
  }

  std::vector<std::string> plain_args( const std::string& head )
  {
    std::vector<std::string> parts{ head };
    if ( peek( ")" ) )
    {
      return parts;
    }
    parts.push_back( next() );
    while ( peek( "," ) )
    {
      ++pos_;
      parts.push_back( next() );
    }
    return parts;
  }

  ProofSystem base( const std::vector<std::string>& p ) const
  {
    const auto& name = p[0];
    auto arity = [&]( std::size_t lo, std::size_t hi ) {
      if ( p.size() - 1 < lo || p.size() - 1 > hi )
      {
        fail( "'" + name + "' takes " + std::to_string( lo ) + ( lo == hi ? "" : "-" + std::to_string( hi ) ) +
              " arguments" );
      }
    };
    if ( name == "regular" )
    {
      arity( 2, 2 );
      return regular_system( parse_automaton( read_file( p[1] ) ), number( p[2] ) );
    }
    if ( name == "threshold" || name == "exact" )
    {
      arity( 2, 2 );
      return name == "threshold" ? threshold_system( number( p[1] ), number( p[2] ) )
                                 : exact_system( number( p[1] ), number( p[2] ) );
    }
    if ( name == "cycles" || name == "ustconn" || name == "unreach" )
    {
      arity( 1, 1 );
      const auto n = number( p[1] );
      return name == "cycles" ? cycles_system( n ) : name == "ustconn" ? ustconn_system( n ) : unreach_system( n );
    }
    if ( name == "co-sac" || name == "sac" )
    {
      arity( 1, 1 );
      const auto v = parse_verifier( read_file( p[1] ) );
      return name == "sac" ? sac_system( v ) : co_sac_system( v );
    }
    if ( name == "padded" )
    {
      arity( 1, 2 );
      if ( p.size() == 3 && p[2] != "sac" && p[2] != "co-sac" )
      {
        fail( "padded variant must be sac or co-sac" );
      }
      return padded_system( parse_verifier( read_file( p[1] ) ), p.size() == 3 && p[2] == "sac" );
    }
    fail( "unknown language '" + name + "'" );
  }

  ProofSystem union_args()
  {
    std::vector<ProofSystem> branches{ expression() };
    while ( peek( "," ) )
    {
      ++pos_;
      branches.push_back( expression() );
    }
    return union_system( std::move( branches ) );
  }

  ProofSystem concat_args()
  {
    if ( peek( "{" ) )
    {
      auto words = word_set();
      expect( "," );
      return concat_system( std::move( words ), expression(), Side::left );
    }
    auto inner = expression();
    expect( "," );
    return concat_system( word_set(), std::move( inner ), Side::right );
  }

  ProofSystem morphism_args( bool inverse )
  {
    Morphism h;
    h.image0 = word( next() );
    expect( "," );
    h.image1 = word( next() );
    expect( "," );
    auto inner = expression();
    return inverse ? inverse_morphism_system( h, std::move( inner ) ) : morphism_system( h, std::move( inner ) );
  }

  ProofSystem finite_args()
  {
    std::vector<Bits> words{ word( next() ) };
    while ( peek( "," ) )
    {
      ++pos_;
      words.push_back( word( next() ) );
    }
    return finite_system( std::move( words ) );
  }

  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Proof system described by a language expression (see the file comment).
inline ProofSystem parse_system( std::string_view text ) { return detail::ExpressionParser( text ).parse(); }

} // namespace proofsys
