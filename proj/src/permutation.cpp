#include "wishart/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "wishart/error.hpp"

namespace wishart {

std::vector<int> CycleSet::type() const {
  std::vector<int> lengths;
  lengths.reserve(cycles.size());
  for (const auto& c : cycles) lengths.push_back(static_cast<int>(c.size()));
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return lengths;
}

std::string CycleSet::to_string() const {
  std::string out;
  for (const auto& c : cycles) {
    out += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(c[i] + 1);
    }
    out += ')';
  }
  return out;
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation Permutation::from_images(std::vector<int> images) {
  const auto n = images.size();
  std::vector<char> seen(n, 0);
  for (int v : images) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[static_cast<std::size_t>(v)])
      throw InvalidArgument("images do not form a bijection of {1.." + std::to_string(n) + "}");
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::from_one_based(const std::vector<int>& images) {
  std::vector<int> zero(images.size());
  std::transform(images.begin(), images.end(), zero.begin(), [](int v) { return v - 1; });
  return from_images(std::move(zero));
}

Permutation Permutation::from_cycles(std::size_t n, const std::vector<Cycle>& cycles) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 0);
  std::vector<char> seen(n, 0);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      const int v = c[i];
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw InvalidArgument("cycle element " + std::to_string(v + 1) + " outside {1.." +
                              std::to_string(n) + "}");
      if (seen[static_cast<std::size_t>(v)])
        throw InvalidArgument("cycles are not disjoint at " + std::to_string(v + 1));
      seen[static_cast<std::size_t>(v)] = 1;
      images[static_cast<std::size_t>(v)] = c[(i + 1) % c.size()];
    }
  }
  return Permutation(std::move(images));
}

Permutation Permutation::parse(std::string_view text, std::size_t n) {
  std::vector<Cycle> parsed;
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  int largest = 0;
  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '(') throw ParseError("expected '('", pos);
    ++pos;
    Cycle c;
    for (;;) {
      skip_space();
      const std::size_t start = pos;
      long value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + (text[pos] - '0');
        if (value > 1'000'000) throw ParseError("point too large", start);
        ++pos;
      }
      if (pos == start) throw ParseError("expected a positive integer", pos);
      if (value == 0) throw ParseError("points are numbered from 1", start);
      largest = std::max(largest, static_cast<int>(value));
      c.push_back(static_cast<int>(value) - 1);
      skip_space();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      throw ParseError("expected ',' or ')'", pos);
    }
    parsed.push_back(std::move(c));
    skip_space();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      skip_space();
    }
  }
  if (n == 0) n = static_cast<std::size_t>(largest);
  if (static_cast<std::size_t>(largest) > n)
    throw ParseError("point " + std::to_string(largest) + " exceeds ground set size " +
                         std::to_string(n),
                     0);
  return from_cycles(n, parsed);
}

Permutation Permutation::long_cycle(std::size_t n) {
  std::vector<int> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<int>((i + 1) % n);
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    inv[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) return false;
  return true;
}

std::string Permutation::to_string() const { return cycles(*this).to_string(); }

CycleSet cycles(const Permutation& p) {
  const auto n = p.size();
  CycleSet out;
  std::vector<char> seen(n, 0);
  // Scanning points in increasing order yields min-first cycles sorted by minimum.
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    Cycle c;
    int i = static_cast<int>(start);
    while (!seen[static_cast<std::size_t>(i)]) {
      seen[static_cast<std::size_t>(i)] = 1;
      c.push_back(i);
      i = p(i);
    }
    out.cycles.push_back(std::move(c));
  }
  return out;
}

int cycle_count(const Permutation& p) {
  const auto n = p.size();
  std::vector<char> seen(n, 0);
  int count = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    ++count;
    for (int i = static_cast<int>(start); !seen[static_cast<std::size_t>(i)]; i = p(i))
      seen[static_cast<std::size_t>(i)] = 1;
  }
  return count;
}

namespace {

void require_same_size(const Permutation& s, const Permutation& a) {
  if (s.size() != a.size())
    throw DimensionError("permutations act on ground sets of different sizes (" +
                         std::to_string(s.size()) + " vs " + std::to_string(a.size()) + ")");
}

int find_root(std::vector<int>& parent, int i) {
  while (parent[static_cast<std::size_t>(i)] != i) {
    auto& p = parent[static_cast<std::size_t>(i)];
    p = parent[static_cast<std::size_t>(p)];
    i = p;
  }
  return i;
}

}  // namespace

Permutation compose(const Permutation& s, const Permutation& a) {
  require_same_size(s, a);
  std::vector<int> images(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) images[i] = s(a(static_cast<int>(i)));
  return Permutation(std::move(images));
}

std::vector<std::vector<int>> orbits(const Permutation& s, const Permutation& a) {
  require_same_size(s, a);
  const auto n = s.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto unite = [&](int x, int y) {
    x = find_root(parent, x);
    y = find_root(parent, y);
    if (x == y) return;
    // Keep the smaller point as root so roots are block minima.
    if (x < y)
      parent[static_cast<std::size_t>(y)] = x;
    else
      parent[static_cast<std::size_t>(x)] = y;
  };
  for (std::size_t i = 0; i < n; ++i) {
    unite(static_cast<int>(i), s(static_cast<int>(i)));
    unite(static_cast<int>(i), a(static_cast<int>(i)));
  }
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto root = static_cast<std::size_t>(find_root(parent, static_cast<int>(i)));
    if (block_of[root] < 0) {
      block_of[root] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(block_of[root])].push_back(static_cast<int>(i));
  }
  return blocks;
}

bool is_transitive(const Permutation& s, const Permutation& a) {
  return s.size() == 0 || orbits(s, a).size() == 1;
}

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

EulerGenus euler_genus(const Permutation& s, const Permutation& a) {
  const auto sa = compose(s, a);
  const int chi = cycle_count(s) + cycle_count(a) + cycle_count(sa) - static_cast<int>(s.size());
  Rational genus{2 - chi, 2};
  if (genus.num % 2 == 0) genus = {genus.num / 2, 1};
  return {chi, genus};
}

}  // namespace wishart
