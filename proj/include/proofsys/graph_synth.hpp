#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "circuit.hpp"
#include "errors.hpp"
#include "graph.hpp"

namespace proofsys
{

/// Vertex triple u < v < w, 0-based.
struct Triangle
{
  std::size_t u = 0, v = 0, w = 0;

  std::array<std::pair<std::size_t, std::size_t>, 3> edges() const { return { { { u, v }, { v, w }, { u, w } } }; }
  friend bool operator==( const Triangle&, const Triangle& ) = default;
};

/*! \brief Triangles u < v < w with (v-u, w-v) = (i, i) or (i, i+1).
 *
 * Every edge (u, w) of length at least 2 is the longest edge of exactly one
 * basis triangle, whose middle vertex is u + floor((w-u)/2). The basis has
 * C(n,2) - (n-1) triangles, the dimension of the cycle space of K_n, and an
 * edge lies in at most 5 of them.
 */
struct TriangleBasis
{
  std::size_t n = 0;
  std::vector<Triangle> triangles;
  std::vector<std::vector<std::size_t>> edge_incidence; ///< by pair_index
  std::vector<std::size_t> longest_of;                  ///< by pair_index; `none` for length 1

  static constexpr auto none = ~std::size_t{ 0 };

  std::size_t max_incidence() const
  {
    std::size_t m = 0;
    for ( const auto& list : edge_incidence )
    {
      m = std::max( m, list.size() );
    }
    return m;
  }
};

inline TriangleBasis triangle_basis( std::size_t n )
{
  TriangleBasis basis;
  basis.n = n;
  basis.edge_incidence.resize( pair_count( n ) );
  basis.longest_of.assign( pair_count( n ), TriangleBasis::none );
  for ( std::size_t u = 0; u < n; ++u )
  {
    for ( std::size_t v = u + 1; v < n; ++v )
    {
      for ( std::size_t w : { v + ( v - u ), v + ( v - u ) + 1 } )
      {
        if ( w >= n )
        {
          continue;
        }
        const auto index = basis.triangles.size();
        basis.triangles.push_back( { u, v, w } );
        for ( auto [a, c] : basis.triangles.back().edges() )
        {
          basis.edge_incidence[pair_index( a, c, n )].push_back( index );
        }
        basis.longest_of[pair_index( u, w, n )] = index;
      }
    }
  }
  return basis;
}

/// Inputs: one coefficient per basis triangle. Output: the adjacency matrix
/// of the XOR of the selected triangles.
inline Circuit synth_cycles( std::size_t n )
{
  const auto basis = triangle_basis( n );
  CircuitBuilder b( basis.triangles.size() );
  std::vector<GateId> edge( pair_count( n ) );
  for ( std::size_t e = 0; e < edge.size(); ++e )
  {
    std::vector<GateId> coefficients;
    for ( auto t : basis.edge_incidence[e] )
    {
      coefficients.push_back( b.input( t ) );
    }
    edge[e] = b.create_nary_xor( coefficients );
  }
  for ( std::size_t u = 0; u < n; ++u )
  {
    for ( std::size_t v = 0; v < n; ++v )
    {
      b.create_po( u == v ? b.get_constant( false ) : edge[pair_index( std::min( u, v ), std::max( u, v ), n )] );
    }
  }
  return std::move( b ).build();
}

/// d(G) = (length of the longest edge, number of edges of that length).
struct Potential
{
  std::size_t length = 0;
  std::size_t multiplicity = 0;

  auto operator<=>( const Potential& ) const = default;
};

struct Decomposition
{
  Bits coefficients;
  std::vector<Potential> trace; ///< d(G) before each step, then the final (0, 0)
};

inline Potential potential( std::span<const std::uint8_t> word, std::size_t n )
{
  Potential d;
  for ( std::size_t u = 0; u < n; ++u )
  {
    for ( std::size_t v = u + 1; v < n; ++v )
    {
      if ( !word[u * n + v] )
      {
        continue;
      }
      if ( v - u > d.length )
      {
        d = { v - u, 0 };
      }
      if ( v - u == d.length )
      {
        ++d.multiplicity;
      }
    }
  }
  return d;
}

/// Writes an even-degree graph as a sum of basis triangles: repeatedly XOR
/// away the triangle whose longest edge is the lexicographically smallest
/// longest edge of the graph.
inline Decomposition decompose_cycles( std::span<const std::uint8_t> word )
{
  const auto n = vertex_count( word.size() );
  require_undirected( word, n );
  if ( !all_degrees_even( word, n ) )
  {
    throw witness_error( "graph has a vertex of odd degree" );
  }
  const auto basis = triangle_basis( n );
  Decomposition out;
  out.coefficients.assign( basis.triangles.size(), 0 );
  Bits g( word.begin(), word.end() );
  for ( ;; )
  {
    const auto d = potential( g, n );
    out.trace.push_back( d );
    if ( d.length == 0 )
    {
      break;
    }
    std::size_t u = 0;
    while ( !( u + d.length < n && g[u * n + u + d.length] ) )
    {
      ++u;
    }
    const auto t = basis.longest_of[pair_index( u, u + d.length, n )];
    if ( t == TriangleBasis::none )
    {
      // only edges of length 1 remain, which no even-degree graph allows
      throw witness_error( "decomposition stuck at an edge of length 1" );
    }
    out.coefficients[t] ^= 1;
    for ( auto [a, c] : basis.triangles[t].edges() )
    {
      g[a * n + c] ^= 1;
      g[c * n + a] ^= 1;
    }
  }
  return out;
}

/*! \brief uSTConn proof system.
 *
 * Inputs: the cycle coefficients, then one mask bit per unordered pair.
 * Output edge (u,v) is the cycles bit, complemented for {1,n}, OR the mask.
 */
inline Circuit synth_ustconn( std::size_t n )
{
  if ( n < 2 )
  {
    throw synthesis_error( "ustconn needs n >= 2" );
  }
  const auto cycles = synth_cycles( n );
  const auto coefficient_bits = cycles.num_inputs();
  CircuitBuilder b( coefficient_bits + pair_count( n ) );
  const auto graph = b.embed( cycles, 0 );
  std::vector<GateId> edge( pair_count( n ) );
  for ( std::size_t u = 0; u < n; ++u )
  {
    for ( std::size_t v = u + 1; v < n; ++v )
    {
      const auto e = pair_index( u, v, n );
      auto bit = graph[u * n + v];
      if ( u == 0 && v == n - 1 )
      {
        bit = b.create_not( bit );
      }
      edge[e] = b.create_or( bit, b.input( coefficient_bits + e ) );
    }
  }
  for ( std::size_t u = 0; u < n; ++u )
  {
    for ( std::size_t v = 0; v < n; ++v )
    {
      b.create_po( u == v ? b.get_constant( false ) : edge[pair_index( std::min( u, v ), std::max( u, v ), n )] );
    }
  }
  return std::move( b ).build();
}

/*! \brief UnReach proof system.
 *
 * Inputs: the n*n matrix A, then cut bits X_2..X_{n-1} (X_1 = 1, X_n = 0).
 * Output B[i,j] = A[i,j] AND NOT ( X_i AND NOT X_j ): no edge leaves the
 * set marked by X, which contains vertex 1 and not vertex n.
 */
inline Circuit synth_unreach( std::size_t n )
{
  if ( n < 2 )
  {
    throw synthesis_error( "unreach needs n >= 2" );
  }
  CircuitBuilder b( n * n + n - 2 );
  std::vector<GateId> x( n );
  x[0] = b.get_constant( true );
  x[n - 1] = b.get_constant( false );
  for ( std::size_t i = 1; i + 1 < n; ++i )
  {
    x[i] = b.input( n * n + i - 1 );
  }
  for ( std::size_t i = 0; i < n; ++i )
  {
    for ( std::size_t j = 0; j < n; ++j )
    {
      const auto leaves = b.create_and( x[i], b.create_not( x[j] ) );
      b.create_po( b.create_and( b.input( i * n + j ), b.create_not( leaves ) ) );
    }
  }
  return std::move( b ).build();
}

enum class GraphKind
{
  cycles,
  ustconn,
  unreach
};

/// Proof of a member graph for the graph proof systems above.
inline Bits witness_graph( GraphKind kind, std::span<const std::uint8_t> word )
{
  const auto n = vertex_count( word.size() );
  switch ( kind )
  {
  case GraphKind::cycles:
    return decompose_cycles( word ).coefficients;
  case GraphKind::ustconn:
  {
    require_undirected( word, n );
    if ( n < 2 )
    {
      throw witness_error( "ustconn needs n >= 2" );
    }
    const auto path = bfs_path( word, n, 0, n - 1 );
    if ( path.empty() )
    {
      throw witness_error( "vertices 1 and " + std::to_string( n ) + " are not connected" );
    }
    // the path plus the edge (1,n) is a cycle (or empty when the path is that edge)
    Bits cycle( n * n, 0 ), mask( pair_count( n ), 0 );
    for ( std::size_t u = 0; u < n; ++u )
    {
      for ( std::size_t v = u + 1; v < n; ++v )
      {
        mask[pair_index( u, v, n )] = word[u * n + v];
      }
    }
    auto flip = [&]( std::size_t a, std::size_t c ) {
      cycle[a * n + c] ^= 1;
      cycle[c * n + a] ^= 1;
    };
    for ( std::size_t i = 0; i + 1 < path.size(); ++i )
    {
      const auto a = std::min( path[i], path[i + 1] ), c = std::max( path[i], path[i + 1] );
      flip( a, c );
      mask[pair_index( a, c, n )] = 0;
    }
    flip( 0, n - 1 );
    auto proof = decompose_cycles( cycle ).coefficients;
    proof.insert( proof.end(), mask.begin(), mask.end() );
    return proof;
  }
  case GraphKind::unreach:
  {
    if ( n < 2 )
    {
      throw witness_error( "unreach needs n >= 2" );
    }
    const auto reach = reachable_from( word, n, 0 );
    if ( reach[n - 1] )
    {
      throw witness_error( "vertex " + std::to_string( n ) + " is reachable from vertex 1" );
    }
    Bits proof( word.begin(), word.end() );
    proof.insert( proof.end(), reach.begin() + 1, reach.end() - 1 );
    return proof;
  }
  }
  return {};
}

} // namespace proofsys
