#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkktau {

/// A subset of {1, ..., ambient}, members kept strictly increasing.
/// Indices are 1-based to match the usual minor notation A[alpha, beta].
class IndexSet {
 public:
  IndexSet() = default;

  IndexSet(std::size_t ambient, std::vector<std::size_t> members)
      : ambient_(ambient), members_(std::move(members)) {
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (members_[i] < 1 || members_[i] > ambient_)
        throw std::out_of_range("index " + std::to_string(members_[i]) +
                                " outside 1.." + std::to_string(ambient_));
      if (i > 0 && members_[i] <= members_[i - 1])
        throw std::invalid_argument("index set members must be strictly increasing");
    }
  }

  /// p:q, empty when p > q.
  static IndexSet range(std::size_t ambient, std::size_t p, std::size_t q) {
    std::vector<std::size_t> m;
    for (std::size_t i = p; i <= q; ++i) m.push_back(i);
    return IndexSet(ambient, std::move(m));
  }

  static IndexSet full(std::size_t n) { return range(n, 1, n); }
  static IndexSet empty_set(std::size_t n) { return IndexSet(n, {}); }

  /// Bit i of `mask` selects index i+1.
  static IndexSet from_mask(std::size_t n, std::uint64_t mask) {
    std::vector<std::size_t> m;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) m.push_back(i + 1);
    return IndexSet(n, std::move(m));
  }

  std::uint64_t mask() const {
    if (ambient_ > 64) throw std::length_error("mask needs ambient <= 64");
    std::uint64_t out = 0;
    for (auto i : members_) out |= std::uint64_t{1} << (i - 1);
    return out;
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<std::size_t>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool contains(std::size_t i) const {
    return std::binary_search(members_.begin(), members_.end(), i);
  }

  bool is_subset_of(const IndexSet& other) const {
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                         members_.end());
  }

  IndexSet united(const IndexSet& other) const {
    check_same_ambient(other);
    std::vector<std::size_t> m;
    std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                   other.members_.end(), std::back_inserter(m));
    return IndexSet(ambient_, std::move(m));
  }

  IndexSet intersected(const IndexSet& other) const {
    check_same_ambient(other);
    std::vector<std::size_t> m;
    std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                          other.members_.end(), std::back_inserter(m));
    return IndexSet(ambient_, std::move(m));
  }

  IndexSet without(const IndexSet& other) const {
    check_same_ambient(other);
    std::vector<std::size_t> m;
    std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                        other.members_.end(), std::back_inserter(m));
    return IndexSet(ambient_, std::move(m));
  }

  /// True when the members form a single run p, p+1, ..., q (or the set is empty).
  bool is_consecutive() const {
    return members_.empty() || members_.back() - members_.front() + 1 == members_.size();
  }

  /// Maximal runs of consecutive integers, in increasing order.
  std::vector<IndexSet> components() const {
    std::vector<IndexSet> out;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= members_.size(); ++i) {
      if (i == members_.size() || members_[i] != members_[i - 1] + 1) {
        out.push_back(range(ambient_, members_[start], members_[i - 1]));
        start = i;
      }
    }
    return out;
  }

  /// |p - q| > 1 for every p here and q in `other`.
  bool separated_from(const IndexSet& other) const {
    for (auto p : members_)
      for (auto q : other.members_)
        if ((p > q ? p - q : q - p) <= 1) return false;
    return true;
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(members_[i]);
    }
    return s + "}";
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

  /// Lexicographic on the member sequence; a proper prefix sorts first.
  friend bool lex_less(const IndexSet& a, const IndexSet& b) {
    return std::lexicographical_compare(a.members_.begin(), a.members_.end(),
                                        b.members_.begin(), b.members_.end());
  }

 private:
  void check_same_ambient(const IndexSet& other) const {
    if (other.ambient_ != ambient_)
      throw std::invalid_argument("index sets over different ambient sizes");
  }

  std::size_t ambient_ = 0;
  std::vector<std::size_t> members_;
};

}  // namespace gkktau
