#include "wishart/coloring.hpp"

#include <cctype>
#include <numeric>

#include "wishart/error.hpp"

namespace wishart {

Coloring::Coloring(std::vector<int> colors, int num_colors) : colors_(std::move(colors)) {
  if (colors_.empty()) throw InvalidArgument("a coloring needs at least one position");
  int largest = 0;
  for (int c : colors_) {
    if (c < 0) throw InvalidArgument("colors are numbered from 1");
    largest = std::max(largest, c);
  }
  if (num_colors == 0) num_colors = largest + 1;
  if (largest >= num_colors)
    throw InvalidArgument("color " + std::to_string(largest + 1) + " exceeds color count " +
                          std::to_string(num_colors));
  num_colors_ = num_colors;
}

Coloring Coloring::from_one_based(const std::vector<int>& colors, int num_colors) {
  std::vector<int> zero(colors.size());
  std::transform(colors.begin(), colors.end(), zero.begin(), [](int c) { return c - 1; });
  return Coloring(std::move(zero), num_colors);
}

Coloring Coloring::constant(std::size_t n, int num_colors) {
  return Coloring(std::vector<int>(n, 0), num_colors);
}

Coloring Coloring::parse(std::string_view text, int num_colors) {
  std::vector<int> colors;
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  for (;;) {
    skip_space();
    const std::size_t start = pos;
    int value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + (text[pos] - '0');
      if (value > 1'000'000) throw ParseError("color too large", start);
      ++pos;
    }
    if (pos == start) throw ParseError("expected a color number", pos);
    if (value == 0) throw ParseError("colors are numbered from 1", start);
    colors.push_back(value - 1);
    skip_space();
    if (pos == text.size()) break;
    if (text[pos] != ',') throw ParseError("expected ','", pos);
    ++pos;
  }
  if (num_colors > 0) {
    for (std::size_t i = 0; i < colors.size(); ++i)
      if (colors[i] >= num_colors)
        throw InvalidArgument("color " + std::to_string(colors[i] + 1) + " exceeds color count " +
                              std::to_string(num_colors));
  }
  return Coloring(std::move(colors), num_colors);
}

std::vector<std::vector<int>> Coloring::classes() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(num_colors_));
  for (std::size_t i = 0; i < colors_.size(); ++i)
    out[static_cast<std::size_t>(colors_[i])].push_back(static_cast<int>(i));
  return out;
}

bool Coloring::preserved_by(const Permutation& a) const {
  if (a.size() != colors_.size()) return false;
  for (std::size_t i = 0; i < colors_.size(); ++i)
    if (colors_[static_cast<std::size_t>(a(static_cast<int>(i)))] != colors_[i]) return false;
  return true;
}

std::string Coloring::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < colors_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(colors_[i] + 1);
  }
  return out;
}

Coloring double_coloring(const Coloring& t) {
  std::vector<int> doubled(t.colors());
  doubled.insert(doubled.end(), t.colors().begin(), t.colors().end());
  return Coloring(std::move(doubled), t.num_colors());
}

std::uint64_t color_preserving_count(const Coloring& t, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (const auto& cls : t.classes()) {
    for (std::uint64_t k = 2; k <= cls.size(); ++k) {
      if (total > cap / k) return cap + 1;
      total *= k;
    }
  }
  return total <= cap ? total : cap + 1;
}

namespace {

std::uint64_t factorial(std::size_t k) {
  std::uint64_t f = 1;
  for (std::uint64_t i = 2; i <= k; ++i) f *= i;
  return f;
}

// Lexicographic unranking of the permutations of the sorted list `elems`.
std::vector<int> unrank_lex(std::vector<int> elems, std::uint64_t rank) {
  std::vector<int> out;
  out.reserve(elems.size());
  while (!elems.empty()) {
    const std::uint64_t block = factorial(elems.size() - 1);
    const auto idx = static_cast<std::size_t>(rank / block);
    rank %= block;
    out.push_back(elems[idx]);
    elems.erase(elems.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return out;
}

}  // namespace

ColorPreservingEnumeration::ColorPreservingEnumeration(const Coloring& t, std::uint64_t cap)
    : coloring_(t), classes_(t.classes()) {
  size_ = color_preserving_count(t, cap);
  if (size_ > cap)
    throw EnumerationLimitError("color-preserving enumeration for coloring " + t.to_string(), cap);
}

std::pair<std::uint64_t, std::uint64_t> ColorPreservingEnumeration::shard_range(
    std::size_t shard, std::size_t num_shards) const {
  if (num_shards == 0 || shard >= num_shards)
    throw InvalidArgument("shard index out of range");
  // size_ <= cap <= 1e8 or so; the products fit comfortably in 128 bits.
  const auto lo = static_cast<std::uint64_t>((static_cast<unsigned __int128>(size_) * shard) / num_shards);
  const auto hi =
      static_cast<std::uint64_t>((static_cast<unsigned __int128>(size_) * (shard + 1)) / num_shards);
  return {lo, hi};
}

ColorPreservingEnumeration::Cursor::Cursor(const ColorPreservingEnumeration& e, std::uint64_t rank)
    : owner(&e), current(Permutation::identity(e.coloring_.size())) {
  const auto& classes = e.classes_;
  images.resize(classes.size());
  // Mixed radix with the last class varying fastest.
  for (std::size_t j = classes.size(); j-- > 0;) {
    const std::uint64_t radix = factorial(classes[j].size());
    images[j] = unrank_lex(classes[j], rank % radix);
    rank /= radix;
  }
  auto& img = mutable_images(current);
  for (std::size_t j = 0; j < classes.size(); ++j)
    for (std::size_t i = 0; i < classes[j].size(); ++i)
      img[static_cast<std::size_t>(classes[j][i])] = images[j][i];
}

void ColorPreservingEnumeration::Cursor::advance() {
  const auto& classes = owner->classes_;
  std::size_t j = classes.size();
  while (j-- > 0) {
    if (std::next_permutation(images[j].begin(), images[j].end())) break;
  }
  // Classes from j on changed (the ones after j wrapped back to sorted order).
  auto& img = mutable_images(current);
  const std::size_t from = j < classes.size() ? j : 0;
  for (std::size_t c = from; c < classes.size(); ++c)
    for (std::size_t i = 0; i < classes[c].size(); ++i)
      img[static_cast<std::size_t>(classes[c][i])] = images[c][i];
}

std::vector<Permutation> ColorPreservingEnumeration::to_vector() const {
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(size_));
  for_each([&](const Permutation& a) { out.push_back(a); });
  return out;
}

bool ColorPreservingEnumeration::Stream::next(Permutation& out) {
  if (position_ >= enumeration_->size()) return false;
  if (position_ == 0 || cursor_.empty()) {
    cursor_.clear();
    cursor_.emplace_back(*enumeration_, position_);
  } else {
    cursor_.front().advance();
  }
  out = cursor_.front().current;
  ++position_;
  return true;
}

std::vector<int> color_cycle_counts(const Permutation& a, const Coloring& t) {
  if (!t.preserved_by(a))
    throw InvalidArgument("permutation " + a.to_string() + " does not preserve coloring " +
                          t.to_string());
  std::vector<int> counts(static_cast<std::size_t>(t.num_colors()), 0);
  std::vector<char> seen(a.size(), 0);
  for (std::size_t start = 0; start < a.size(); ++start) {
    if (seen[start]) continue;
    ++counts[static_cast<std::size_t>(t[start])];
    for (int i = static_cast<int>(start); !seen[static_cast<std::size_t>(i)]; i = a(i))
      seen[static_cast<std::size_t>(i)] = 1;
  }
  return counts;
}

std::vector<Permutation> planar_set(const Coloring& t, const Permutation& sigma,
                                    std::uint64_t cap) {
  if (sigma.size() != t.size())
    throw DimensionError("sigma and coloring have different ground sets");
  const int target = static_cast<int>(t.size()) + 1;
  std::vector<Permutation> out;
  ColorPreservingEnumeration(t, cap).for_each([&](const Permutation& a) {
    if (cycle_count(a) + cycle_count(compose(sigma, a)) == target) out.push_back(a);
  });
  return out;
}

Permutation two_star_forward(std::size_t n) {
  std::vector<Cycle> cyc(2);
  for (std::size_t i = 0; i < n; ++i) {
    cyc[0].push_back(static_cast<int>(i));
    cyc[1].push_back(static_cast<int>(n + i));
  }
  return Permutation::from_cycles(2 * n, cyc);
}

Permutation two_star_reversed(std::size_t n) {
  std::vector<Cycle> cyc(2);
  for (std::size_t i = 0; i < n; ++i) {
    cyc[0].push_back(static_cast<int>(n - 1 - i));
    cyc[1].push_back(static_cast<int>(n + i));
  }
  return Permutation::from_cycles(2 * n, cyc);
}

ConnectingPlanarSets connecting_planar_sets(const Coloring& t, std::uint64_t cap) {
  const std::size_t n = t.size();
  const Coloring doubled = double_coloring(t);
  const Permutation forward = two_star_forward(n);
  const Permutation reversed = two_star_reversed(n);
  const int target = static_cast<int>(2 * n);
  ConnectingPlanarSets out;
  ColorPreservingEnumeration(doubled, cap).for_each([&](const Permutation& a) {
    bool connects = false;
    for (std::size_t i = 0; i < n && !connects; ++i)
      connects = static_cast<std::size_t>(a(static_cast<int>(i))) >= n;
    if (!connects) return;
    const int ca = cycle_count(a);
    if (ca + cycle_count(compose(forward, a)) == target) out.forward.push_back(a);
    if (ca + cycle_count(compose(reversed, a)) == target) out.reversed.push_back(a);
  });
  return out;
}

}  // namespace wishart
