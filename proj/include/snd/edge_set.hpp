#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "snd/types.hpp"

namespace snd {

/// Subset of the edge ids of a parent graph, stored as a bitset.
///
/// Subgraphs are edge-id sets over their parent, so "H - e" and unions are
/// plain set operations. Ordering between sets of equal size is
/// lexicographic on the sorted id sequence.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}
  EdgeSet(std::size_t universe, std::span<const EdgeId> ids);

  std::size_t universe() const { return universe_; }

  bool contains(EdgeId e) const {
    return (words_[static_cast<std::size_t>(e) >> 6] >> (e & 63)) & 1u;
  }
  void insert(EdgeId e) { words_[static_cast<std::size_t>(e) >> 6] |= std::uint64_t{1} << (e & 63); }
  void erase(EdgeId e) { words_[static_cast<std::size_t>(e) >> 6] &= ~(std::uint64_t{1} << (e & 63)); }

  std::size_t size() const;
  bool empty() const;

  EdgeSet& operator|=(const EdgeSet& other);
  EdgeSet& operator-=(const EdgeSet& other);
  friend EdgeSet operator|(EdgeSet a, const EdgeSet& b) { return a |= b; }

  /// Size of the union without materialising it.
  std::size_t union_size(const EdgeSet& other) const;
  bool is_subset_of(const EdgeSet& other) const;

  std::vector<EdgeId> ids() const;

  /// Re-expresses the set over a larger universe (ids unchanged).
  EdgeSet resized(std::size_t universe) const;

  std::size_t hash() const;

  friend bool operator==(const EdgeSet& a, const EdgeSet& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Lexicographic comparison of the sorted id sequences.
bool lex_less(const EdgeSet& a, const EdgeSet& b);

/// Solver preference: fewer edges first, then lexicographically smaller.
inline bool size_lex_less(const EdgeSet& a, const EdgeSet& b) {
  auto sa = a.size();
  auto sb = b.size();
  if (sa != sb) return sa < sb;
  return lex_less(a, b);
}

struct EdgeSetHash {
  std::size_t operator()(const EdgeSet& s) const { return s.hash(); }
};

}  // namespace snd
