#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace proofsys
{

/*! \brief Balanced binary decomposition of the interval (0, length].
 *
 * Node (i,j] with j - i >= 2 has children (i,m] and (m,j] where
 * m = floor((i+j)/2); leaves are the unit intervals (k-1,k]. Nodes are
 * stored in pre-order: root first, left subtree before right subtree.
 */
class IntervalTree
{
public:
  static constexpr std::size_t none = ~std::size_t{ 0 };

  struct Node
  {
    std::size_t lo = 0; ///< i of (i,j]
    std::size_t hi = 0; ///< j of (i,j]
    std::size_t parent = none;
    std::size_t left = none;
    std::size_t right = none;
    std::size_t level = 0; ///< distance from the root

    bool is_leaf() const noexcept { return left == none; }
    std::size_t length() const noexcept { return hi - lo; }
  };

  explicit IntervalTree( std::size_t length ) : length_( length ), leaf_( length + 1, none )
  {
    if ( length == 0 )
    {
      throw structure_error( "interval tree needs a non-empty interval" );
    }
    nodes_.reserve( 2 * length - 1 );
    build( 0, length, none, 0 );
  }

  std::size_t length() const noexcept { return length_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const Node& node( std::size_t index ) const { return nodes_[index]; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::size_t root() const noexcept { return 0; }

  /// Index of the leaf (k-1,k], k in [1, length].
  std::size_t leaf( std::size_t k ) const { return leaf_.at( k ); }

  /// Nodes from the leaf (k-1,k] up to the root, leaf first.
  std::vector<std::size_t> path_to_root( std::size_t k ) const
  {
    std::vector<std::size_t> path;
    for ( auto v = leaf( k ); v != none; v = nodes_[v].parent )
    {
      path.push_back( v );
    }
    return path;
  }

  /// Number of levels (a single leaf has height 1).
  std::size_t height() const noexcept
  {
    std::size_t h = 0;
    for ( const auto& n : nodes_ )
    {
      h = n.level + 1 > h ? n.level + 1 : h;
    }
    return h;
  }

private:
  std::size_t build( std::size_t lo, std::size_t hi, std::size_t parent, std::size_t level )
  {
    const auto index = nodes_.size();
    nodes_.push_back( { lo, hi, parent, none, none, level } );
    if ( hi - lo == 1 )
    {
      leaf_[hi] = index;
      return index;
    }
    const auto mid = ( lo + hi ) / 2;
    const auto l = build( lo, mid, index, level + 1 );
    const auto r = build( mid, hi, index, level + 1 );
    nodes_[index].left = l;
    nodes_[index].right = r;
    return index;
  }

  std::size_t length_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> leaf_;
};

} // namespace proofsys
