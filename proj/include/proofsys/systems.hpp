#pragma once

// The synthesizers packaged as ProofSystem values (circuit, language,
// witness generator), the common currency of the verifier, the combinators
// and the command line.

#include <cstddef>
#include <span>
#include <string>

#include "combinators.hpp"
#include "counting.hpp"
#include "graph_synth.hpp"
#include "languages.hpp"
#include "np.hpp"
#include "regular.hpp"

namespace proofsys
{

inline ProofSystem regular_system( const Automaton& a, std::size_t n )
{
  return { synth_regular( a, n ).circuit, LanguageSpec( Regular{ a } ),
           [a]( std::span<const std::uint8_t> w ) { return witness_regular( a, w ); } };
}

inline ProofSystem threshold_system( std::size_t n, std::size_t t )
{
  return { synth_threshold( n, t ).circuit, LanguageSpec( Threshold{ t } ),
           [n, t]( std::span<const std::uint8_t> w ) { return witness_count( CountKind::threshold, n, t, w ); } };
}

inline ProofSystem exact_system( std::size_t n, std::size_t t )
{
  return { synth_exact_count( n, t ).circuit, LanguageSpec( ExactCount{ t } ),
           [n, t]( std::span<const std::uint8_t> w ) { return witness_count( CountKind::exact, n, t, w ); } };
}

inline ProofSystem cycles_system( std::size_t n )
{
  return { synth_cycles( n ), LanguageSpec( Cycles{} ),
           []( std::span<const std::uint8_t> w ) { return witness_graph( GraphKind::cycles, w ); } };
}

inline ProofSystem ustconn_system( std::size_t n )
{
  return { synth_ustconn( n ), LanguageSpec( USTConn{} ),
           []( std::span<const std::uint8_t> w ) { return witness_graph( GraphKind::ustconn, w ); } };
}

inline ProofSystem unreach_system( std::size_t n )
{
  return { synth_unreach( n ), LanguageSpec( UnReach{} ),
           []( std::span<const std::uint8_t> w ) { return witness_graph( GraphKind::unreach, w ); } };
}

namespace detail
{

/// Witness for the NP systems: a certificate when the verifier accepts,
/// otherwise the collapse proof for the all-`bit` word.
inline WitnessFn np_witness( VerifierCircuit v, bool bit )
{
  return [v = std::move( v ), bit]( std::span<const std::uint8_t> w ) {
    if ( w.size() == v.x_bits && detail::np_accepts( v, w ) )
    {
      return witness_np( v, w );
    }
    if ( w.size() == v.x_bits && detail::all_equal_to( w, bit ) )
    {
      return collapse_proof( v, bit );
    }
    throw witness_error( "word " + to_string( w ) + " is not in the language" );
  };
}

} // namespace detail

inline ProofSystem co_sac_system( const VerifierCircuit& v )
{
  return { synth_co_sac( v ), LanguageSpec( NpLanguage{ v, PadKind::zeros } ), detail::np_witness( v, false ) };
}

inline ProofSystem sac_system( const VerifierCircuit& v )
{
  return { synth_sac( v ), LanguageSpec( NpLanguage{ v, PadKind::ones } ), detail::np_witness( v, true ) };
}

/// The padded language 1.L.0 + 0^n + 1^n through its SAC (`sac` true) or
/// co-SAC construction.
inline ProofSystem padded_system( const VerifierCircuit& v, bool sac )
{
  const auto inner = padded_verifier( v, !sac );
  return { sac ? synth_sac( inner ) : synth_co_sac( inner ), LanguageSpec( NpLanguage{ v, PadKind::padded } ),
           detail::np_witness( inner, sac ) };
}

} // namespace proofsys
