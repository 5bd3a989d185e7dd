#include "snd/enumerate.hpp"

#include <algorithm>

namespace snd {

SubsetCursor::SubsetCursor(NodeSet universe, int max_size)
    : universe_(make_node_set(std::move(universe))), max_size_(max_size) {
  if (max_size < 0) throw Error(ErrorCode::kInvalidArgument, "negative subset size bound");
}

void SubsetCursor::reset() {
  size_ = 0;
  idx_.clear();
  started_ = false;
  done_ = false;
}

bool SubsetCursor::next(NodeSet& out) {
  if (done_) return false;
  const int n = static_cast<int>(universe_.size());
  if (!started_) {
    started_ = true;
    size_ = 0;
    idx_.clear();
  } else {
    // Advance the combination of the current size; move to the next size
    // when exhausted.
    int i = size_ - 1;
    while (i >= 0 && idx_[static_cast<std::size_t>(i)] == n - size_ + i) --i;
    if (i >= 0) {
      ++idx_[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size_; ++j) idx_[static_cast<std::size_t>(j)] = idx_[static_cast<std::size_t>(j - 1)] + 1;
    } else {
      ++size_;
      if (size_ > max_size_ || size_ > n) {
        done_ = true;
        return false;
      }
      idx_.resize(static_cast<std::size_t>(size_));
      for (int j = 0; j < size_; ++j) idx_[static_cast<std::size_t>(j)] = j;
    }
  }
  out.clear();
  for (int i : idx_) out.push_back(universe_[static_cast<std::size_t>(i)]);
  return true;
}

OrderedPartitionCursor::OrderedPartitionCursor(std::vector<NodeId> ground, int max_parts, int first_part_min)
    : ground_(make_node_set(std::move(ground))), max_parts_(max_parts), first_min_(first_part_min) {
  if (ground_.empty()) throw Error(ErrorCode::kInvalidArgument, "ordered partitions of an empty ground set");
}

bool OrderedPartitionCursor::advance() {
  // Odometer over {0..r-1}^q with the last position fastest.
  for (int i = static_cast<int>(labels_.size()) - 1; i >= 0; --i) {
    auto& l = labels_[static_cast<std::size_t>(i)];
    if (++l < r_) return true;
    l = 0;
  }
  return false;
}

bool OrderedPartitionCursor::next(OrderedPartition& out) {
  const int q = static_cast<int>(ground_.size());
  const int r_max = std::min(max_parts_, q);
  std::vector<int> counts;
  while (true) {
    if (fresh_r_) {
      ++r_;
      if (r_ > r_max) return false;
      labels_.assign(static_cast<std::size_t>(q), 0);
      fresh_r_ = false;
    } else if (!advance()) {
      fresh_r_ = true;
      continue;
    }
    counts.assign(static_cast<std::size_t>(r_), 0);
    for (int l : labels_) ++counts[static_cast<std::size_t>(l)];
    bool surjective = std::all_of(counts.begin(), counts.end(), [](int c) { return c > 0; });
    if (!surjective || counts[0] < first_min_) continue;
    out.parts.assign(static_cast<std::size_t>(r_), {});
    for (int i = 0; i < q; ++i) out.parts[static_cast<std::size_t>(labels_[static_cast<std::size_t>(i)])].push_back(ground_[static_cast<std::size_t>(i)]);
    return true;
  }
}

TupleCursor::TupleCursor(NodeSet universe, int length)
    : universe_(make_node_set(std::move(universe))), idx_(static_cast<std::size_t>(std::max(length, 0)), 0) {
  if (length < 0) throw Error(ErrorCode::kInvalidArgument, "negative tuple length");
}

bool TupleCursor::next(std::vector<NodeId>& out) {
  if (done_) return false;
  const int n = static_cast<int>(universe_.size());
  if (!started_) {
    started_ = true;
    if (n == 0 && !idx_.empty()) {
      done_ = true;
      return false;
    }
  } else {
    int i = static_cast<int>(idx_.size()) - 1;
    for (; i >= 0; --i) {
      if (++idx_[static_cast<std::size_t>(i)] < n) break;
      idx_[static_cast<std::size_t>(i)] = 0;
    }
    if (i < 0) {
      done_ = true;
      return false;
    }
  }
  out.clear();
  for (int i : idx_) out.push_back(universe_[static_cast<std::size_t>(i)]);
  return true;
}

SetPartitionCursor::SetPartitionCursor(int n, int max_parts) : n_(n), max_parts_(max_parts) {
  if (n < 1 || max_parts < 1) throw Error(ErrorCode::kInvalidArgument, "set partitions need n, max_parts >= 1");
}

bool SetPartitionCursor::next(std::vector<int>& labels) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    labels_.assign(static_cast<std::size_t>(n_), 0);
    prefix_max_.assign(static_cast<std::size_t>(n_), 0);
  } else {
    // labels_[i] <= 1 + max(labels_[0..i-1]) and < max_parts.
    int i = n_ - 1;
    for (; i >= 1; --i) {
      int bound = std::min(prefix_max_[static_cast<std::size_t>(i - 1)] + 1, max_parts_ - 1);
      if (labels_[static_cast<std::size_t>(i)] < bound) break;
    }
    if (i < 1) {
      done_ = true;
      return false;
    }
    ++labels_[static_cast<std::size_t>(i)];
    prefix_max_[static_cast<std::size_t>(i)] = std::max(prefix_max_[static_cast<std::size_t>(i - 1)], labels_[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < n_; ++j) {
      labels_[static_cast<std::size_t>(j)] = 0;
      prefix_max_[static_cast<std::size_t>(j)] = prefix_max_[static_cast<std::size_t>(j - 1)];
    }
  }
  labels = labels_;
  return true;
}

std::vector<std::pair<NodeId, NodeId>> anchor_pairs(const std::vector<NodeSet>& parts_so_far) {
  std::vector<NodeId> all;
  for (const auto& p : parts_so_far) all.insert(all.end(), p.begin(), p.end());
  NodeSet pool = make_node_set(std::move(all));
  if (pool.size() < 2) throw Error(ErrorCode::kTooFewAnchors, "anchor pool has fewer than two nodes");
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(pool.size() * (pool.size() - 1));
  for (NodeId s : pool) {
    for (NodeId t : pool) {
      if (s != t) out.emplace_back(s, t);
    }
  }
  return out;
}

}  // namespace snd
