#pragma once

#include <cstdint>
#include <vector>

#include "snd/graph.hpp"

namespace snd {

/// Every subset of `universe` with at most `max_size` elements, ordered by
/// size and then lexicographically by position in the universe.
class SubsetCursor {
 public:
  SubsetCursor(NodeSet universe, int max_size);

  bool next(NodeSet& out);
  void reset();

 private:
  NodeSet universe_;
  int max_size_;
  int size_ = 0;
  std::vector<int> idx_;
  bool started_ = false;
  bool done_ = false;
};

struct OrderedPartition {
  std::vector<NodeSet> parts;
  int r() const { return static_cast<int>(parts.size()); }
};

/// Ordered partitions of the (deduplicated) ground set into at most
/// `max_parts` non-empty parts with |parts[0]| >= first_part_min. Ordered by
/// part count, then by the label assignment read as a base-r odometer.
class OrderedPartitionCursor {
 public:
  OrderedPartitionCursor(std::vector<NodeId> ground, int max_parts, int first_part_min);

  bool next(OrderedPartition& out);

 private:
  bool advance();  // next raw label assignment for the current r

  NodeSet ground_;
  int max_parts_;
  int first_min_;
  int r_ = 0;
  std::vector<int> labels_;
  bool fresh_r_ = true;
};

/// All |universe|^length tuples, odometer order (last position fastest).
class TupleCursor {
 public:
  TupleCursor(NodeSet universe, int length);

  bool next(std::vector<NodeId>& out);

 private:
  NodeSet universe_;
  std::vector<int> idx_;
  bool started_ = false;
  bool done_ = false;
};

/// Unordered partitions of positions 0..n-1 into at most `max_parts` blocks,
/// as restricted growth strings (block label per position).
class SetPartitionCursor {
 public:
  SetPartitionCursor(int n, int max_parts);

  bool next(std::vector<int>& labels);

 private:
  int n_;
  int max_parts_;
  std::vector<int> labels_;
  std::vector<int> prefix_max_;
  bool started_ = false;
  bool done_ = false;
};

/// Ordered pairs (s, t), s != t, drawn from the union of the given parts.
/// Throws TooFewAnchors when that union has fewer than two nodes.
std::vector<std::pair<NodeId, NodeId>> anchor_pairs(const std::vector<NodeSet>& parts_so_far);

}  // namespace snd
