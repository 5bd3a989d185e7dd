#include "snd/edge_set.hpp"

#include <bit>

namespace snd {

EdgeSet::EdgeSet(std::size_t universe, std::span<const EdgeId> ids) : EdgeSet(universe) {
  for (EdgeId e : ids) insert(e);
}

std::size_t EdgeSet::size() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool EdgeSet::empty() const {
  for (auto w : words_) {
    if (w) return false;
  }
  return true;
}

EdgeSet& EdgeSet::operator|=(const EdgeSet& other) {
  if (other.words_.size() > words_.size()) {
    words_.resize(other.words_.size(), 0);
    universe_ = other.universe_;
  }
  for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

EdgeSet& EdgeSet::operator-=(const EdgeSet& other) {
  auto n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) words_[i] &= ~other.words_[i];
  return *this;
}

std::size_t EdgeSet::union_size(const EdgeSet& other) const {
  std::size_t n = 0;
  auto common = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < common; ++i) n += std::popcount(words_[i] | other.words_[i]);
  for (std::size_t i = common; i < words_.size(); ++i) n += std::popcount(words_[i]);
  for (std::size_t i = common; i < other.words_.size(); ++i) n += std::popcount(other.words_[i]);
  return n;
}

bool EdgeSet::is_subset_of(const EdgeSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t o = i < other.words_.size() ? other.words_[i] : 0;
    if (words_[i] & ~o) return false;
  }
  return true;
}

std::vector<EdgeId> EdgeSet::ids() const {
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    auto w = words_[i];
    while (w) {
      int bit = std::countr_zero(w);
      out.push_back(static_cast<EdgeId>(i * 64 + bit));
      w &= w - 1;
    }
  }
  return out;
}

EdgeSet EdgeSet::resized(std::size_t universe) const {
  EdgeSet out(universe);
  for (EdgeId e : ids()) out.insert(e);
  return out;
}

std::size_t EdgeSet::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto w : words_) {
    h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

bool lex_less(const EdgeSet& a, const EdgeSet& b) {
  auto ia = a.ids();
  auto ib = b.ids();
  return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
}

}  // namespace snd
