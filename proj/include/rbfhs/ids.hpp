#pragma once

#include <algorithm>
#include <ostream>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rbfhs {

// Position of an axiom in K (file order). All internal sets use positions,
// external names are only resolved at the I/O boundary.
using AxiomIndex = std::uint32_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sorted, duplicate-free set of axiom positions.
class IdSet {
 public:
  IdSet() = default;

  IdSet(std::initializer_list<AxiomIndex> ids) : ids_(ids) { normalize(); }

  explicit IdSet(std::vector<AxiomIndex> ids) : ids_(std::move(ids)) { normalize(); }

  // All positions 0..n-1.
  static IdSet range(std::size_t n) {
    IdSet s;
    s.ids_.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.ids_[i] = static_cast<AxiomIndex>(i);
    return s;
  }

  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }
  AxiomIndex operator[](std::size_t i) const { return ids_[i]; }
  std::span<const AxiomIndex> view() const noexcept { return ids_; }
  const std::vector<AxiomIndex>& values() const noexcept { return ids_; }

  bool contains(AxiomIndex id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
  }

  // this ⊇ other
  bool includes(const IdSet& other) const {
    return std::includes(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end());
  }

  bool intersects(const IdSet& other) const {
    auto a = ids_.begin();
    auto b = other.ids_.begin();
    while (a != ids_.end() && b != other.ids_.end()) {
      if (*a == *b) return true;
      if (*a < *b) ++a; else ++b;
    }
    return false;
  }

  IdSet with(AxiomIndex id) const {
    IdSet out;
    out.ids_.reserve(ids_.size() + 1);
    auto pos = std::lower_bound(ids_.begin(), ids_.end(), id);
    out.ids_.assign(ids_.begin(), pos);
    if (pos == ids_.end() || *pos != id) out.ids_.push_back(id);
    out.ids_.insert(out.ids_.end(), pos, ids_.end());
    return out;
  }

  IdSet without(AxiomIndex id) const {
    IdSet out = *this;
    auto pos = std::lower_bound(out.ids_.begin(), out.ids_.end(), id);
    if (pos != out.ids_.end() && *pos == id) out.ids_.erase(pos);
    return out;
  }

  IdSet united(const IdSet& other) const {
    IdSet out;
    out.ids_.reserve(ids_.size() + other.ids_.size());
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                   std::back_inserter(out.ids_));
    return out;
  }

  IdSet minus(const IdSet& other) const {
    IdSet out;
    std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                        std::back_inserter(out.ids_));
    return out;
  }

  IdSet intersected(const IdSet& other) const {
    IdSet out;
    std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                          std::back_inserter(out.ids_));
    return out;
  }

  friend bool operator==(const IdSet&, const IdSet&) = default;

  // Canonical order: smaller cardinality first, then lexicographic positions.
  friend bool canonical_less(const IdSet& a, const IdSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.ids_ < b.ids_;
  }

  friend bool operator<(const IdSet& a, const IdSet& b) { return a.ids_ < b.ids_; }

 private:
  void normalize() {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }

  std::vector<AxiomIndex> ids_;
};

// 0-based positions, e.g. {0,3}.
inline std::ostream& operator<<(std::ostream& os, const IdSet& s) {
  os << '{';
  bool first = true;
  for (auto id : s) {
    os << (first ? "" : ",") << id;
    first = false;
  }
  return os << '}';
}

struct IdSetHash {
  std::size_t operator()(const IdSet& s) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto id : s) {
      h ^= id + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace rbfhs
