#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <type_traits>
#include <vector>

#include "automaton.hpp"
#include "bits.hpp"
#include "circuit_io.hpp"
#include "errors.hpp"
#include "graph.hpp"

namespace proofsys
{

/// Default cap on enumerated candidates and evaluated proofs.
inline constexpr std::uint64_t default_budget = std::uint64_t{ 1 } << 24;

struct Regular
{
  Automaton automaton;
};

/// Words with at least `t` ones.
struct Threshold
{
  std::size_t t = 0;
};

/// Words with exactly `t` ones.
struct ExactCount
{
  std::size_t t = 0;
};

/// Undirected graphs whose vertices all have even degree.
struct Cycles
{
};

/// Undirected graphs with vertices 1 and n in one component.
struct USTConn
{
};

/// Directed graphs with no path from vertex 1 to vertex n.
struct UnReach
{
};

enum class PadKind
{
  none,   ///< L
  zeros,  ///< L plus 0^n
  ones,   ///< L plus 1^n
  padded  ///< 1.L.0 plus 0^n plus 1^n
};

/// The NP language {x : exists y, V(x,y) = 1}, optionally padded.
struct NpLanguage
{
  VerifierCircuit verifier;
  PadKind pad = PadKind::none;
};

/// Fixed-length morphism {0,1} -> {0,1}^k.
struct Morphism
{
  Bits image0;
  Bits image1;

  std::size_t block() const noexcept { return image0.size(); }
  const Bits& operator()( bool bit ) const { return bit ? image1 : image0; }
  friend bool operator==( const Morphism&, const Morphism& ) = default;
};

enum class CombinatorKind
{
  union_of,
  concat_left,
  concat_right,
  reverse,
  morphism,
  inverse_morphism,
  upclose,
  finite
};

struct LanguageSpec;

/// Language built from other languages by one closure operation.
struct Combined
{
  CombinatorKind op = CombinatorKind::finite;
  std::vector<LanguageSpec> operands;
  std::vector<Bits> words; ///< the finite set for concatenation and finite
  Morphism h;
};

struct LanguageSpec
{
  std::variant<Regular, Threshold, ExactCount, Cycles, USTConn, UnReach, NpLanguage, Combined> kind;

  template<typename T>
    requires( !std::is_same_v<std::decay_t<T>, LanguageSpec> )
  LanguageSpec( T value ) : kind( std::move( value ) )
  {
  }

  template<typename T>
  bool is() const
  {
    return std::holds_alternative<T>( kind );
  }
};

inline bool is_graph_language( const LanguageSpec& spec )
{
  return spec.is<Cycles>() || spec.is<USTConn>() || spec.is<UnReach>();
}

inline bool is_undirected_language( const LanguageSpec& spec ) { return spec.is<Cycles>() || spec.is<USTConn>(); }

/// Word length of the slice for size parameter `n` (vertex count for graph
/// languages, word length otherwise).
inline std::size_t slice_length( const LanguageSpec& spec, std::size_t n )
{
  return is_graph_language( spec ) ? n * n : n;
}

inline std::string describe( const LanguageSpec& spec )
{
  struct
  {
    std::string operator()( const Regular& r ) const
    {
      return "regular(" + std::to_string( r.automaton.num_states ) + " states)";
    }
    std::string operator()( const Threshold& t ) const { return "threshold(" + std::to_string( t.t ) + ")"; }
    std::string operator()( const ExactCount& t ) const { return "exact(" + std::to_string( t.t ) + ")"; }
    std::string operator()( const Cycles& ) const { return "cycles"; }
    std::string operator()( const USTConn& ) const { return "ustconn"; }
    std::string operator()( const UnReach& ) const { return "unreach"; }
    std::string operator()( const NpLanguage& l ) const
    {
      static const char* names[] = { "np", "np+0*", "np+1*", "np-padded" };
      return std::string( names[static_cast<int>( l.pad )] ) + "(" + std::to_string( l.verifier.x_bits ) + "+" +
             std::to_string( l.verifier.y_bits ) + ")";
    }
    std::string operator()( const Combined& c ) const
    {
      static const char* names[] = { "union", "concat_left", "concat_right", "reverse",
                                     "morph", "invmorph",    "upclose",      "finite" };
      std::string s = names[static_cast<int>( c.op )];
      s += "(";
      for ( std::size_t i = 0; i < c.operands.size(); ++i )
      {
        s += ( i ? "," : "" ) + describe( c.operands[i] );
      }
      return s + ")";
    }
  } visitor;
  return std::visit( visitor, spec.kind );
}

bool member( const LanguageSpec& spec, std::span<const std::uint8_t> word );

namespace detail
{

inline bool all_equal_to( std::span<const std::uint8_t> word, std::uint8_t bit )
{
  return std::all_of( word.begin(), word.end(), [bit]( auto b ) { return b == bit; } );
}

inline bool np_accepts( const VerifierCircuit& v, std::span<const std::uint8_t> x )
{
  if ( x.size() != v.x_bits )
  {
    return false;
  }
  if ( v.y_bits >= 63 )
  {
    throw budget_error( "certificate of " + std::to_string( v.y_bits ) + " bits is too long to search" );
  }
  Evaluator evaluate( v.circuit );
  Bits input( x.begin(), x.end() );
  input.resize( v.x_bits + v.y_bits, 0 );
  for ( std::uint64_t y = 0; y < ( std::uint64_t{ 1 } << v.y_bits ); ++y )
  {
    for ( std::size_t i = 0; i < v.y_bits; ++i )
    {
      input[v.x_bits + i] = static_cast<std::uint8_t>( ( y >> ( v.y_bits - 1 - i ) ) & 1u );
    }
    if ( evaluate( input )[0] )
    {
      return true;
    }
  }
  return false;
}

inline bool member_quiet( const LanguageSpec& spec, std::span<const std::uint8_t> word )
{
  try
  {
    return member( spec, word );
  }
  catch ( const encoding_error& )
  {
    return false;
  }
}

inline bool morphism_preimage_member( const Combined& c, std::span<const std::uint8_t> word, Bits& pre,
                                      std::size_t block )
{
  const auto k = c.h.block();
  if ( block * k == word.size() )
  {
    return member_quiet( c.operands[0], pre );
  }
  const auto chunk = word.subspan( block * k, k );
  for ( int bit = 0; bit < 2; ++bit )
  {
    const auto& image = c.h( bit == 1 );
    if ( std::equal( chunk.begin(), chunk.end(), image.begin(), image.end() ) )
    {
      pre[block] = static_cast<std::uint8_t>( bit );
      if ( morphism_preimage_member( c, word, pre, block + 1 ) )
      {
        return true;
      }
    }
  }
  return false;
}

inline bool combined_member( const Combined& c, std::span<const std::uint8_t> word )
{
  switch ( c.op )
  {
  case CombinatorKind::union_of:
    return std::any_of( c.operands.begin(), c.operands.end(),
                        [&]( const auto& op ) { return member_quiet( op, word ); } );
  case CombinatorKind::concat_left:
  case CombinatorKind::concat_right:
    for ( const auto& u : c.words )
    {
      if ( u.size() > word.size() )
      {
        continue;
      }
      const bool left = c.op == CombinatorKind::concat_left;
      const auto fixed = left ? word.first( u.size() ) : word.last( u.size() );
      const auto rest = left ? word.subspan( u.size() ) : word.first( word.size() - u.size() );
      if ( std::equal( fixed.begin(), fixed.end(), u.begin(), u.end() ) && member_quiet( c.operands[0], rest ) )
      {
        return true;
      }
    }
    return false;
  case CombinatorKind::reverse:
  {
    Bits r( word.rbegin(), word.rend() );
    return member_quiet( c.operands[0], r );
  }
  case CombinatorKind::morphism:
  {
    const auto k = c.h.block();
    if ( k == 0 || word.size() % k != 0 )
    {
      return false;
    }
    Bits pre( word.size() / k, 0 );
    return morphism_preimage_member( c, word, pre, 0 );
  }
  case CombinatorKind::inverse_morphism:
  {
    Bits image;
    for ( auto bit : word )
    {
      const auto& block = c.h( bit != 0 );
      image.insert( image.end(), block.begin(), block.end() );
    }
    return member_quiet( c.operands[0], image );
  }
  case CombinatorKind::upclose:
  {
    std::vector<std::size_t> ones;
    for ( std::size_t i = 0; i < word.size(); ++i )
    {
      if ( word[i] )
      {
        ones.push_back( i );
      }
    }
    if ( ones.size() > 24 )
    {
      throw budget_error( "upward-closure membership over " + std::to_string( ones.size() ) + " ones" );
    }
    Bits x( word.size(), 0 );
    for ( std::uint64_t mask = 0; mask < ( std::uint64_t{ 1 } << ones.size() ); ++mask )
    {
      for ( std::size_t i = 0; i < ones.size(); ++i )
      {
        x[ones[i]] = static_cast<std::uint8_t>( ( mask >> i ) & 1u );
      }
      if ( member_quiet( c.operands[0], x ) )
      {
        return true;
      }
    }
    return false;
  }
  case CombinatorKind::finite:
    return std::any_of( c.words.begin(), c.words.end(), [&]( const Bits& w ) {
      return std::equal( w.begin(), w.end(), word.begin(), word.end() );
    } );
  }
  return false;
}

} // namespace detail

/*! \brief Membership oracle.
 *
 * Graph languages read `word` as a row-major adjacency matrix; undirected
 * ones require it to be symmetric with a zero diagonal and throw
 * `encoding_error` otherwise.
 */
inline bool member( const LanguageSpec& spec, std::span<const std::uint8_t> word )
{
  struct
  {
    std::span<const std::uint8_t> word;

    bool operator()( const Regular& r ) const { return r.automaton.accepts( word ); }
    bool operator()( const Threshold& t ) const { return popcount( word ) >= t.t; }
    bool operator()( const ExactCount& t ) const { return popcount( word ) == t.t; }
    bool operator()( const Cycles& ) const
    {
      const auto n = vertex_count( word.size() );
      require_undirected( word, n );
      return all_degrees_even( word, n );
    }
    bool operator()( const USTConn& ) const
    {
      const auto n = vertex_count( word.size() );
      require_undirected( word, n );
      return st_connected_undirected( word, n );
    }
    bool operator()( const UnReach& ) const
    {
      const auto n = vertex_count( word.size() );
      if ( n == 0 )
      {
        throw encoding_error( "graph needs at least one vertex" );
      }
      return !reachable_from( word, n, 0 )[n - 1];
    }
    bool operator()( const NpLanguage& l ) const
    {
      switch ( l.pad )
      {
      case PadKind::none:
        return detail::np_accepts( l.verifier, word );
      case PadKind::zeros:
        return ( word.size() == l.verifier.x_bits && detail::all_equal_to( word, 0 ) ) ||
               detail::np_accepts( l.verifier, word );
      case PadKind::ones:
        return ( word.size() == l.verifier.x_bits && detail::all_equal_to( word, 1 ) ) ||
               detail::np_accepts( l.verifier, word );
      case PadKind::padded:
        if ( word.size() != l.verifier.x_bits + 2 )
        {
          return false;
        }
        if ( detail::all_equal_to( word, 0 ) || detail::all_equal_to( word, 1 ) )
        {
          return true;
        }
        return word.front() == 1 && word.back() == 0 &&
               detail::np_accepts( l.verifier, word.subspan( 1, word.size() - 2 ) );
      }
      return false;
    }
    bool operator()( const Combined& c ) const { return detail::combined_member( c, word ); }
  } visitor{ word };
  return std::visit( visitor, spec.kind );
}

/*! \brief Streams every word of the given length that is in the language,
 * in lexicographic order.
 *
 * Undirected graph languages only visit symmetric zero-diagonal candidates.
 * Throws `budget_error` when the candidate count exceeds `budget`. `visit`
 * may return false to stop early.
 */
inline void for_each_member( const LanguageSpec& spec, std::size_t length, std::uint64_t budget,
                             const std::function<bool( const Bits& )>& visit )
{
  std::vector<std::size_t> free_positions; // most significant first
  std::vector<std::size_t> mirror;
  std::size_t n = 0;
  const bool undirected = is_undirected_language( spec );
  if ( undirected )
  {
    n = vertex_count( length );
    for ( std::size_t u = 0; u < n; ++u )
    {
      for ( std::size_t v = u + 1; v < n; ++v )
      {
        free_positions.push_back( u * n + v );
        mirror.push_back( v * n + u );
      }
    }
  }
  else
  {
    if ( is_graph_language( spec ) )
    {
      vertex_count( length );
    }
    for ( std::size_t i = 0; i < length; ++i )
    {
      free_positions.push_back( i );
    }
  }
  const auto bits = free_positions.size();
  if ( bits >= 63 || ( std::uint64_t{ 1 } << bits ) > budget )
  {
    throw budget_error( "slice enumeration needs 2^" + std::to_string( bits ) + " candidates, budget is " +
                        std::to_string( budget ) );
  }
  Bits word( length, 0 );
  const std::uint64_t total = std::uint64_t{ 1 } << bits;
  for ( std::uint64_t count = 0; count < total; ++count )
  {
    if ( member( spec, word ) && !visit( word ) )
    {
      return;
    }
    // binary increment, least significant position last
    for ( std::size_t k = bits; k-- > 0; )
    {
      const auto pos = free_positions[k];
      word[pos] ^= 1u;
      if ( undirected )
      {
        word[mirror[k]] = word[pos];
      }
      if ( word[pos] )
      {
        break;
      }
    }
  }
}

/// All members with size parameter `n` (vertex count for graph languages).
inline std::vector<Bits> enumerate_slice( const LanguageSpec& spec, std::size_t n,
                                          std::uint64_t budget = default_budget )
{
  std::vector<Bits> out;
  for_each_member( spec, slice_length( spec, n ), budget, [&]( const Bits& w ) {
    out.push_back( w );
    return true;
  } );
  return out;
}

namespace detail
{

inline Bits random_subset( Rng& rng, std::size_t length, std::size_t ones )
{
  std::vector<std::size_t> idx( length );
  std::iota( idx.begin(), idx.end(), 0 );
  Bits w( length, 0 );
  for ( std::size_t i = 0; i < ones; ++i )
  {
    const auto j = i + uniform_below( rng, length - i );
    std::swap( idx[i], idx[j] );
    w[idx[i]] = 1;
  }
  return w;
}

inline Bits random_candidate( const LanguageSpec& spec, std::size_t length, Rng& rng )
{
  const auto density = static_cast<std::uint32_t>( 1 + uniform_below( rng, 0xffff ) );
  if ( is_undirected_language( spec ) )
  {
    const auto n = vertex_count( length );
    Bits w( length, 0 );
    for ( std::size_t u = 0; u < n; ++u )
    {
      for ( std::size_t v = u + 1; v < n; ++v )
      {
        w[u * n + v] = w[v * n + u] = static_cast<std::uint8_t>( ( rng() & 0xffffu ) < density );
      }
    }
    return w;
  }
  return biased_bits( rng, length, density );
}

} // namespace detail

/// A random member of the length-`length` slice, or nothing after
/// `max_tries` rejected candidates. Deterministic given the generator state.
inline std::optional<Bits> random_member( const LanguageSpec& spec, std::size_t length, Rng& rng,
                                          std::size_t max_tries = 4096 )
{
  if ( const auto* e = std::get_if<ExactCount>( &spec.kind ) )
  {
    if ( e->t > length )
    {
      return std::nullopt;
    }
    return detail::random_subset( rng, length, e->t );
  }
  if ( const auto* t = std::get_if<Threshold>( &spec.kind ) )
  {
    if ( t->t > length )
    {
      return std::nullopt;
    }
    const auto ones = t->t + uniform_below( rng, length - t->t + 1 );
    return detail::random_subset( rng, length, ones );
  }
  if ( spec.is<Cycles>() )
  {
    // symmetric difference of random simple cycles
    const auto n = vertex_count( length );
    Bits w( length, 0 );
    if ( n < 3 )
    {
      return w;
    }
    const auto cycles = uniform_below( rng, 4 );
    for ( std::uint64_t c = 0; c < cycles; ++c )
    {
      std::vector<std::size_t> order( n );
      std::iota( order.begin(), order.end(), 0 );
      const auto len = 3 + uniform_below( rng, n - 2 );
      for ( std::size_t i = 0; i < len; ++i )
      {
        std::swap( order[i], order[i + uniform_below( rng, n - i )] );
      }
      for ( std::size_t i = 0; i < len; ++i )
      {
        const auto u = order[i], v = order[( i + 1 ) % len];
        w[u * n + v] ^= 1u;
        w[v * n + u] ^= 1u;
      }
    }
    return w;
  }
  for ( std::size_t attempt = 0; attempt < max_tries; ++attempt )
  {
    auto w = detail::random_candidate( spec, length, rng );
    if ( detail::member_quiet( spec, w ) )
    {
      return w;
    }
  }
  return std::nullopt;
}

} // namespace proofsys
