#pragma once

#include <cstddef>
#include <numeric>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"

namespace proofsys
{

/// Graph words are row-major n*n adjacency matrices; vertex v (1-based in
/// the language definitions) is row v-1 here.
inline std::size_t vertex_count( std::size_t word_length )
{
  std::size_t n = 0;
  while ( n * n < word_length )
  {
    ++n;
  }
  if ( n * n != word_length )
  {
    throw encoding_error( "word length " + std::to_string( word_length ) + " is not a perfect square" );
  }
  return n;
}

/// Throws unless the matrix is symmetric with a zero diagonal.
inline void require_undirected( std::span<const std::uint8_t> word, std::size_t n )
{
  for ( std::size_t u = 0; u < n; ++u )
  {
    if ( word[u * n + u] )
    {
      throw encoding_error( "diagonal entry (" + std::to_string( u + 1 ) + "," + std::to_string( u + 1 ) + ") set" );
    }
    for ( std::size_t v = u + 1; v < n; ++v )
    {
      if ( word[u * n + v] != word[v * n + u] )
      {
        throw encoding_error( "entries (" + std::to_string( u + 1 ) + "," + std::to_string( v + 1 ) + ") and (" +
                              std::to_string( v + 1 ) + "," + std::to_string( u + 1 ) + ") differ" );
      }
    }
  }
}

/// Index of unordered pair u < v in row-major upper-triangle order.
inline std::size_t pair_index( std::size_t u, std::size_t v, std::size_t n )
{
  return u * n - u * ( u + 1 ) / 2 + ( v - u - 1 );
}

inline std::size_t pair_count( std::size_t n ) { return n * ( n - 1 ) / 2; }

/// Adjacency matrix of the undirected graph with the given edge pairs.
inline Bits undirected_word( std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges )
{
  Bits word( n * n, 0 );
  for ( auto [u, v] : edges )
  {
    word[u * n + v] = word[v * n + u] = 1;
  }
  return word;
}

class DisjointSets
{
public:
  explicit DisjointSets( std::size_t n ) : parent_( n ) { std::iota( parent_.begin(), parent_.end(), 0 ); }

  std::size_t find( std::size_t x )
  {
    while ( parent_[x] != x )
    {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite( std::size_t a, std::size_t b ) { parent_[find( a )] = find( b ); }

private:
  std::vector<std::size_t> parent_;
};

/// Vertices 1 and n in one component (union-find).
inline bool st_connected_undirected( std::span<const std::uint8_t> word, std::size_t n )
{
  if ( n <= 1 )
  {
    return true;
  }
  DisjointSets sets( n );
  for ( std::size_t u = 0; u < n; ++u )
  {
    for ( std::size_t v = u + 1; v < n; ++v )
    {
      if ( word[u * n + v] )
      {
        sets.unite( u, v );
      }
    }
  }
  return sets.find( 0 ) == sets.find( n - 1 );
}

/// Breadth-first search over directed edges from vertex `source`; entry v is
/// 1 when v is reachable.
inline Bits reachable_from( std::span<const std::uint8_t> word, std::size_t n, std::size_t source )
{
  Bits seen( n, 0 );
  std::queue<std::size_t> queue;
  seen[source] = 1;
  queue.push( source );
  while ( !queue.empty() )
  {
    const auto u = queue.front();
    queue.pop();
    for ( std::size_t v = 0; v < n; ++v )
    {
      if ( word[u * n + v] && !seen[v] )
      {
        seen[v] = 1;
        queue.push( v );
      }
    }
  }
  return seen;
}

/// Shortest path from `s` to `t` by breadth-first search visiting neighbours
/// in increasing order; empty when unreachable.
inline std::vector<std::size_t> bfs_path( std::span<const std::uint8_t> word, std::size_t n, std::size_t s,
                                          std::size_t t )
{
  constexpr auto none = ~std::size_t{ 0 };
  std::vector<std::size_t> parent( n, none );
  std::queue<std::size_t> queue;
  parent[s] = s;
  queue.push( s );
  while ( !queue.empty() && parent[t] == none )
  {
    const auto u = queue.front();
    queue.pop();
    for ( std::size_t v = 0; v < n; ++v )
    {
      if ( word[u * n + v] && parent[v] == none )
      {
        parent[v] = u;
        queue.push( v );
      }
    }
  }
  if ( parent[t] == none )
  {
    return {};
  }
  std::vector<std::size_t> path{ t };
  while ( path.back() != s )
  {
    path.push_back( parent[path.back()] );
  }
  return { path.rbegin(), path.rend() };
}

inline bool all_degrees_even( std::span<const std::uint8_t> word, std::size_t n )
{
  for ( std::size_t u = 0; u < n; ++u )
  {
    std::size_t degree = 0;
    for ( std::size_t v = 0; v < n; ++v )
    {
      degree += word[u * n + v];
    }
    if ( degree % 2 != 0 )
    {
      return false;
    }
  }
  return true;
}

} // namespace proofsys
