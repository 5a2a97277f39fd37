#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bits.hpp"
#include "circuit.hpp"
#include "errors.hpp"
#include "languages.hpp"

namespace proofsys
{

enum class Side
{
  left, ///< S.L
  right ///< L.S
};

namespace detail
{

/// One indicator per branch: selector value r (MSB first) picks branch
/// min(r, k-1).
inline std::vector<GateId> selector_indicators( CircuitBuilder& b, std::span<const GateId> sel, std::size_t k )
{
  const auto rows = std::size_t{ 1 } << sel.size();
  std::vector<GateId> out( k );
  for ( std::size_t i = 0; i < k; ++i )
  {
    Bits table( rows );
    for ( std::size_t r = 0; r < rows; ++r )
    {
      table[r] = std::min( r, k - 1 ) == i;
    }
    out[i] = table_to_subcircuit( b, table, sel );
  }
  return out;
}

inline void require_equal_lengths( std::span<const Bits> words )
{
  if ( words.empty() )
  {
    throw structure_error( "empty word set" );
  }
  for ( const auto& w : words )
  {
    if ( w.size() != words.front().size() )
    {
      throw structure_error( "words " + to_string( words.front() ) + " and " + to_string( w ) +
                             " differ in length" );
    }
  }
}

/// Output gates of the finite-set selector over `sel`.
inline std::vector<GateId> finite_outputs( CircuitBuilder& b, std::span<const Bits> words, std::span<const GateId> sel )
{
  const auto rows = std::size_t{ 1 } << sel.size();
  std::vector<GateId> out;
  for ( std::size_t j = 0; j < words.front().size(); ++j )
  {
    Bits table( rows );
    for ( std::size_t r = 0; r < rows; ++r )
    {
      table[r] = words[std::min( r, words.size() - 1 )][j];
    }
    out.push_back( table_to_subcircuit( b, table, sel ) );
  }
  return out;
}

} // namespace detail

/// Selector bits ceil(log2 |S|) pick a word of S (values past the end pick
/// the last word).
inline Circuit finite_language( std::span<const Bits> words )
{
  detail::require_equal_lengths( words );
  const auto s = ceil_log2( words.size() );
  CircuitBuilder b( s );
  const auto sel = b.inputs( 0, s );
  for ( auto g : detail::finite_outputs( b, words, sel ) )
  {
    b.create_po( g );
  }
  return std::move( b ).build();
}

/// Selector bits, then the inputs of every branch; output j is branch
/// min(selector, k-1)'s output j.
inline Circuit union_circuits( std::span<const Circuit> branches )
{
  if ( branches.empty() )
  {
    throw structure_error( "union of no circuits" );
  }
  const auto n = branches.front().num_outputs();
  std::size_t total = ceil_log2( branches.size() );
  for ( const auto& c : branches )
  {
    if ( c.num_outputs() != n )
    {
      throw structure_error( "union branches have " + std::to_string( n ) + " and " +
                             std::to_string( c.num_outputs() ) + " outputs" );
    }
    total += c.num_inputs();
  }
  const auto s = ceil_log2( branches.size() );
  CircuitBuilder b( total );
  const auto sel = b.inputs( 0, s );
  const auto pick = detail::selector_indicators( b, sel, branches.size() );
  std::vector<std::vector<GateId>> outs;
  auto offset = s;
  for ( const auto& c : branches )
  {
    outs.push_back( b.embed( c, offset ) );
    offset += c.num_inputs();
  }
  for ( std::size_t j = 0; j < n; ++j )
  {
    std::vector<GateId> terms;
    for ( std::size_t i = 0; i < branches.size(); ++i )
    {
      terms.push_back( b.create_and( pick[i], outs[i][j] ) );
    }
    b.create_po( b.create_nary_or( terms ) );
  }
  return std::move( b ).build();
}

/// Selector bits for a word u of S, then c's inputs; output u.c (left) or
/// c.u (right).
inline Circuit concat_finite( std::span<const Bits> words, const Circuit& c, Side side )
{
  detail::require_equal_lengths( words );
  const auto s = ceil_log2( words.size() );
  CircuitBuilder b( s + c.num_inputs() );
  const auto sel = b.inputs( 0, s );
  const auto fixed = detail::finite_outputs( b, words, sel );
  const auto inner = b.embed( c, s );
  const auto& first = side == Side::left ? fixed : inner;
  const auto& second = side == Side::left ? inner : fixed;
  for ( auto g : first )
  {
    b.create_po( g );
  }
  for ( auto g : second )
  {
    b.create_po( g );
  }
  return std::move( b ).build();
}

inline Circuit reverse( const Circuit& c )
{
  std::vector<GateId> outs( c.outputs().rbegin(), c.outputs().rend() );
  return Circuit( c.num_inputs(), c.gates(), std::move( outs ) );
}

/// Every output bit becomes the block h(bit).
inline Circuit apply_morphism( const Morphism& h, const Circuit& c )
{
  if ( h.block() == 0 || h.image1.size() != h.block() )
  {
    throw structure_error( "morphism images must be nonempty and of equal length" );
  }
  CircuitBuilder b( c.num_inputs() );
  for ( auto bit : b.embed( c, 0 ) )
  {
    const GateId wire[1] = { bit };
    for ( std::size_t j = 0; j < h.block(); ++j )
    {
      const std::uint8_t table[2] = { h.image0[j], h.image1[j] };
      b.create_po( table_to_subcircuit( b, table, wire ) );
    }
  }
  return std::move( b ).build();
}

/*! \brief Preimages under h of c's k-blocks.
 *
 * When h(0) != h(1) the preimage bit is read off a position where the images
 * differ; when they are equal one choice bit per block (after c's inputs)
 * gives the preimage. Assumes every block c emits is h(0) or h(1); see
 * find_non_image_block.
 */
inline Circuit inverse_morphism( const Morphism& h, const Circuit& c )
{
  const auto k = h.block();
  if ( k == 0 || h.image1.size() != k )
  {
    throw structure_error( "morphism images must be nonempty and of equal length" );
  }
  if ( c.num_outputs() % k != 0 )
  {
    throw structure_error( "block length " + std::to_string( k ) + " does not divide " +
                           std::to_string( c.num_outputs() ) + " outputs" );
  }
  const auto blocks = c.num_outputs() / k;
  const bool collide = h.image0 == h.image1;
  CircuitBuilder b( c.num_inputs() + ( collide ? blocks : 0 ) );
  const auto outs = b.embed( c, 0 );
  std::size_t differ = 0;
  while ( !collide && h.image0[differ] == h.image1[differ] )
  {
    ++differ;
  }
  for ( std::size_t i = 0; i < blocks; ++i )
  {
    if ( collide )
    {
      b.create_po( b.input( c.num_inputs() + i ) );
      continue;
    }
    const auto bit = outs[i * k + differ];
    b.create_po( h.image1[differ] ? bit : b.create_not( bit ) );
  }
  return std::move( b ).build();
}

/// A proof of c (searched exhaustively when 2^m <= budget, else sampled)
/// whose output has a block outside {h(0), h(1)}.
inline std::optional<Bits> find_non_image_block( const Morphism& h, const Circuit& c, std::uint64_t budget,
                                                 std::uint64_t seed = 1 )
{
  const auto k = h.block();
  const auto m = c.num_inputs();
  const bool exhaustive = m < 63 && ( std::uint64_t{ 1 } << m ) <= budget;
  const auto trials = exhaustive ? std::uint64_t{ 1 } << m : budget;
  Rng rng( seed );
  Evaluator ev( c );
  for ( std::uint64_t t = 0; t < trials; ++t )
  {
    const auto x = exhaustive ? bits_of( t, m ) : random_bits( rng, m );
    const auto y = ev( x );
    for ( std::size_t i = 0; i + k <= y.size(); i += k )
    {
      const auto block = std::span( y ).subspan( i, k );
      if ( !std::equal( block.begin(), block.end(), h.image0.begin() ) &&
           !std::equal( block.begin(), block.end(), h.image1.begin() ) )
      {
        return x;
      }
    }
  }
  return std::nullopt;
}

/// Mask bits y after c's inputs; output i = c_i OR y_i. Adds exactly one
/// OR gate per output.
inline Circuit upclose( const Circuit& c )
{
  const auto n = c.num_outputs();
  CircuitBuilder b( c.num_inputs() + n );
  const auto outs = b.embed( c, 0 );
  for ( std::size_t i = 0; i < n; ++i )
  {
    b.create_po( b.raw_or( outs[i], b.input( c.num_inputs() + i ) ) );
  }
  return std::move( b ).build();
}

/// Maps a word of the language to a proof; throws witness_error otherwise.
using WitnessFn = std::function<Bits( std::span<const std::uint8_t> )>;

/// A circuit together with the language its range should be and a witness
/// generator for the members of that language.
struct ProofSystem
{
  Circuit circuit;
  LanguageSpec language;
  WitnessFn witness;
};

namespace detail
{

inline Bits selector_bits( std::size_t index, std::size_t count ) { return bits_of( index, ceil_log2( count ) ); }

} // namespace detail

inline ProofSystem finite_system( std::vector<Bits> words )
{
  auto circuit = finite_language( words );
  Combined lang{ CombinatorKind::finite, {}, words, {} };
  auto witness = [words]( std::span<const std::uint8_t> w ) {
    for ( std::size_t i = 0; i < words.size(); ++i )
    {
      if ( std::equal( w.begin(), w.end(), words[i].begin(), words[i].end() ) )
      {
        return detail::selector_bits( i, words.size() );
      }
    }
    throw witness_error( "word " + to_string( w ) + " is not in the finite set" );
  };
  return { std::move( circuit ), LanguageSpec( std::move( lang ) ), witness };
}

inline ProofSystem union_system( std::vector<ProofSystem> branches )
{
  std::vector<Circuit> circuits;
  Combined lang{ CombinatorKind::union_of, {}, {}, {} };
  for ( const auto& s : branches )
  {
    circuits.push_back( s.circuit );
    lang.operands.push_back( s.language );
  }
  auto circuit = union_circuits( circuits );
  auto witness = [branches]( std::span<const std::uint8_t> w ) {
    for ( std::size_t i = 0; i < branches.size(); ++i )
    {
      if ( !detail::member_quiet( branches[i].language, w ) )
      {
        continue;
      }
      auto proof = detail::selector_bits( i, branches.size() );
      for ( std::size_t j = 0; j < branches.size(); ++j )
      {
        const auto part = j == i ? branches[j].witness( w ) : Bits( branches[j].circuit.num_inputs(), 0 );
        proof.insert( proof.end(), part.begin(), part.end() );
      }
      return proof;
    }
    throw witness_error( "word " + to_string( w ) + " is in no branch of the union" );
  };
  return { std::move( circuit ), LanguageSpec( std::move( lang ) ), witness };
}

inline ProofSystem concat_system( std::vector<Bits> words, ProofSystem inner, Side side )
{
  auto circuit = concat_finite( words, inner.circuit, side );
  Combined lang{ side == Side::left ? CombinatorKind::concat_left : CombinatorKind::concat_right,
                 { inner.language },
                 words,
                 {} };
  auto witness = [words, inner = std::move( inner ), side]( std::span<const std::uint8_t> w ) {
    const auto k = words.front().size();
    if ( w.size() >= k )
    {
      const auto fixed = side == Side::left ? w.first( k ) : w.last( k );
      const auto rest = side == Side::left ? w.subspan( k ) : w.first( w.size() - k );
      for ( std::size_t i = 0; i < words.size(); ++i )
      {
        if ( std::equal( fixed.begin(), fixed.end(), words[i].begin() ) && detail::member_quiet( inner.language, rest ) )
        {
          auto proof = detail::selector_bits( i, words.size() );
          const auto part = inner.witness( rest );
          proof.insert( proof.end(), part.begin(), part.end() );
          return proof;
        }
      }
    }
    throw witness_error( "word " + to_string( w ) + " does not split over the finite set" );
  };
  return { std::move( circuit ), LanguageSpec( std::move( lang ) ), witness };
}

inline ProofSystem reverse_system( ProofSystem inner )
{
  auto circuit = reverse( inner.circuit );
  Combined lang{ CombinatorKind::reverse, { inner.language }, {}, {} };
  auto witness = [fn = inner.witness]( std::span<const std::uint8_t> w ) {
    const Bits r( w.rbegin(), w.rend() );
    return fn( r );
  };
  return { std::move( circuit ), LanguageSpec( std::move( lang ) ), witness };
}

inline ProofSystem morphism_system( const Morphism& h, ProofSystem inner )
{
  auto circuit = apply_morphism( h, inner.circuit );
  Combined lang{ CombinatorKind::morphism, { inner.language }, {}, h };
  auto witness = [lang, fn = inner.witness]( std::span<const std::uint8_t> w ) {
    const auto k = lang.h.block();
    if ( w.size() % k != 0 )
    {
      throw witness_error( "word length is not a multiple of the block length" );
    }
    Bits pre( w.size() / k, 0 );
    if ( !detail::morphism_preimage_member( lang, w, pre, 0 ) )
    {
      throw witness_error( "word " + to_string( w ) + " has no preimage in the language" );
    }
    return fn( pre );
  };
  return { std::move( circuit ), LanguageSpec( lang ), witness };
}

inline ProofSystem inverse_morphism_system( const Morphism& h, ProofSystem inner )
{
  auto circuit = inverse_morphism( h, inner.circuit );
  Combined lang{ CombinatorKind::inverse_morphism, { inner.language }, {}, h };
  auto witness = [h, fn = inner.witness]( std::span<const std::uint8_t> w ) {
    Bits image;
    for ( auto bit : w )
    {
      const auto& block = h( bit != 0 );
      image.insert( image.end(), block.begin(), block.end() );
    }
    auto proof = fn( image );
    if ( h.image0 == h.image1 )
    {
      proof.insert( proof.end(), w.begin(), w.end() );
    }
    return proof;
  };
  return { std::move( circuit ), LanguageSpec( std::move( lang ) ), witness };
}

inline ProofSystem upclose_system( ProofSystem inner )
{
  auto circuit = upclose( inner.circuit );
  Combined lang{ CombinatorKind::upclose, { inner.language }, {}, {} };
  auto witness = [inner = std::move( inner )]( std::span<const std::uint8_t> w ) {
    // a member below w, searched over the subsets of w's ones
    std::vector<std::size_t> ones;
    for ( std::size_t i = 0; i < w.size(); ++i )
    {
      if ( w[i] )
      {
        ones.push_back( i );
      }
    }
    if ( ones.size() > 24 )
    {
      throw budget_error( "upward-closure witness search over " + std::to_string( ones.size() ) + " ones" );
    }
    Bits x( w.size(), 0 );
    for ( std::uint64_t mask = 0; mask < ( std::uint64_t{ 1 } << ones.size() ); ++mask )
    {
      for ( std::size_t i = 0; i < ones.size(); ++i )
      {
        x[ones[i]] = static_cast<std::uint8_t>( ( mask >> i ) & 1u );
      }
      if ( detail::member_quiet( inner.language, x ) )
      {
        auto proof = inner.witness( x );
        proof.insert( proof.end(), w.begin(), w.end() );
        return proof;
      }
    }
    throw witness_error( "no member below " + to_string( w ) );
  };
  return { std::move( circuit ), LanguageSpec( std::move( lang ) ), witness };
}

} // namespace proofsys
