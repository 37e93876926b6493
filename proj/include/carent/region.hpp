#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace carent {

/// Ordered set of lattice sites, 1-based. Indexes the local subalgebra A_I.
class Region {
 public:
  Region() = default;
  Region(std::initializer_list<int> sites);
  explicit Region(std::vector<int> sites);

  /// Sites first..last inclusive; empty when last < first.
  static Region range(int first, int last);
  /// Parses "1,3,4" (whitespace tolerated). An empty string is the empty region.
  static Region parse(std::string_view text);

  const std::vector<int>& sites() const { return sites_; }
  int size() const { return static_cast<int>(sites_.size()); }
  bool empty() const { return sites_.empty(); }
  int front() const { return sites_.front(); }
  int back() const { return sites_.back(); }

  bool contains(int site) const;
  bool contains(const Region& other) const;
  bool disjoint(const Region& other) const;

  Region unite(const Region& other) const;
  Region intersect(const Region& other) const;
  Region minus(const Region& other) const;

  /// 0-based position of `site` inside this region; -1 if absent.
  int position_of(int site) const;
  /// Positions (1-based) of each site of `sub` inside this region.
  std::vector<int> positions_of(const Region& sub) const;

  std::string to_string() const;  // "{1,3}"
  std::string to_list() const;    // "1,3"

  auto operator<=>(const Region&) const = default;

 private:
  std::vector<int> sites_;
};

}  // namespace carent
