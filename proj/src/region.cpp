#include "carent/region.hpp"

#include <algorithm>
#include <charconv>

#include "carent/error.hpp"

namespace carent {

Region::Region(std::initializer_list<int> sites) : Region(std::vector<int>(sites)) {}

Region::Region(std::vector<int> sites) : sites_(std::move(sites)) {
  std::sort(sites_.begin(), sites_.end());
  if (std::adjacent_find(sites_.begin(), sites_.end()) != sites_.end())
    throw ArgumentError("region has duplicate sites");
  if (!sites_.empty() && sites_.front() < 1)
    throw ArgumentError("region sites are 1-based");
}

Region Region::range(int first, int last) {
  std::vector<int> s;
  for (int i = first; i <= last; ++i) s.push_back(i);
  return Region(std::move(s));
}

Region Region::parse(std::string_view text) {
  std::vector<int> s;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    auto tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.empty()) {
      if (end != text.size() || !s.empty()) throw ArgumentError("empty site in region list");
    } else {
      int v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ArgumentError("invalid site '" + std::string(tok) + "'");
      s.push_back(v);
    }
    pos = end + 1;
  }
  return Region(std::move(s));
}

bool Region::contains(int site) const {
  return std::binary_search(sites_.begin(), sites_.end(), site);
}

bool Region::contains(const Region& other) const {
  return std::includes(sites_.begin(), sites_.end(), other.sites_.begin(), other.sites_.end());
}

bool Region::disjoint(const Region& other) const { return intersect(other).empty(); }

Region Region::unite(const Region& other) const {
  std::vector<int> s;
  std::set_union(sites_.begin(), sites_.end(), other.sites_.begin(), other.sites_.end(),
                 std::back_inserter(s));
  Region r;
  r.sites_ = std::move(s);
  return r;
}

Region Region::intersect(const Region& other) const {
  std::vector<int> s;
  std::set_intersection(sites_.begin(), sites_.end(), other.sites_.begin(), other.sites_.end(),
                        std::back_inserter(s));
  Region r;
  r.sites_ = std::move(s);
  return r;
}

Region Region::minus(const Region& other) const {
  std::vector<int> s;
  std::set_difference(sites_.begin(), sites_.end(), other.sites_.begin(), other.sites_.end(),
                      std::back_inserter(s));
  Region r;
  r.sites_ = std::move(s);
  return r;
}

int Region::position_of(int site) const {
  auto it = std::lower_bound(sites_.begin(), sites_.end(), site);
  if (it == sites_.end() || *it != site) return -1;
  return static_cast<int>(it - sites_.begin());
}

std::vector<int> Region::positions_of(const Region& sub) const {
  std::vector<int> out;
  out.reserve(sub.sites_.size());
  for (int s : sub.sites_) {
    int p = position_of(s);
    if (p < 0) throw ArgumentError("region " + sub.to_string() + " not contained in " + to_string());
    out.push_back(p + 1);
  }
  return out;
}

std::string Region::to_list() const {
  std::string out;
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(sites_[i]);
  }
  return out;
}

std::string Region::to_string() const { return "{" + to_list() + "}"; }

}  // namespace carent
