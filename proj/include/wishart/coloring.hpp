#ifndef WISHART_COLORING_HPP
#define WISHART_COLORING_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "wishart/permutation.hpp"

namespace wishart {

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

/// Map from positions {0..n-1} to colors {0..s-1}. The text form is the
/// one-based comma list "1,2,1,2".
class Coloring {
 public:
  Coloring() = default;
  /// Zero-based colors; with num_colors == 0 the count is 1 + the largest color.
  explicit Coloring(std::vector<int> colors, int num_colors = 0);

  static Coloring from_one_based(const std::vector<int>& colors, int num_colors = 0);
  static Coloring constant(std::size_t n, int num_colors = 1);
  static Coloring parse(std::string_view text, int num_colors = 0);

  std::size_t size() const { return colors_.size(); }
  int num_colors() const { return num_colors_; }
  int operator[](std::size_t i) const { return colors_[i]; }
  const std::vector<int>& colors() const { return colors_; }

  /// For each color, the increasing list of positions carrying it (possibly empty).
  std::vector<std::vector<int>> classes() const;
  /// t o a == t.
  bool preserved_by(const Permutation& a) const;
  std::string to_string() const;

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  std::vector<int> colors_;
  int num_colors_ = 0;
};

/// The coloring on {0..2n-1} that repeats t on both halves.
Coloring double_coloring(const Coloring& t);

/// |S_n(t)| = prod_j |t^{-1}(j)|!, or the cap + 1 when larger than the cap.
std::uint64_t color_preserving_count(const Coloring& t, std::uint64_t cap = kDefaultEnumerationCap);

/// Restartable enumeration of S_n(t), the permutations a with t o a = t.
///
/// Order: the tuple of per-class permutations in lexicographic order, the
/// first color class outermost and each class permuted lexicographically.
/// Elements are addressed by their rank in this order, which is what the
/// sharding contract relies on: shard w of W visits ranks
/// [w*size/W, (w+1)*size/W).
class ColorPreservingEnumeration {
 public:
  explicit ColorPreservingEnumeration(const Coloring& t,
                                      std::uint64_t cap = kDefaultEnumerationCap);

  std::uint64_t size() const { return size_; }
  const Coloring& coloring() const { return coloring_; }

  /// Calls f(const Permutation&) for ranks in [first, last).
  template <class F>
  void for_each(F&& f, std::uint64_t first = 0,
                std::uint64_t last = std::numeric_limits<std::uint64_t>::max()) const {
    last = std::min(last, size_);
    if (first >= last) return;
    Cursor cursor(*this, first);
    for (std::uint64_t rank = first; rank < last; ++rank) {
      f(cursor.current);
      if (rank + 1 < last) cursor.advance();
    }
  }

  template <class F>
  void for_each_in_shard(std::size_t shard, std::size_t num_shards, F&& f) const {
    const auto [first, last] = shard_range(shard, num_shards);
    for_each(std::forward<F>(f), first, last);
  }

  std::pair<std::uint64_t, std::uint64_t> shard_range(std::size_t shard,
                                                      std::size_t num_shards) const;

  std::vector<Permutation> to_vector() const;

  struct Cursor {
    Cursor(const ColorPreservingEnumeration& e, std::uint64_t rank);
    void advance();

    const ColorPreservingEnumeration* owner;
    std::vector<std::vector<int>> images;  // per class, images of the class positions
    Permutation current;
  };

  /// Single-consumer pull interface over the same order.
  class Stream {
   public:
    explicit Stream(const ColorPreservingEnumeration& e) : enumeration_(&e) {}
    /// Writes the next element into out; false once exhausted.
    bool next(Permutation& out);
    void reset() { position_ = 0; }

   private:
    const ColorPreservingEnumeration* enumeration_;
    std::uint64_t position_ = 0;
    std::vector<Cursor> cursor_;  // empty until the first call to next()
  };

  Stream stream() const { return Stream(*this); }

 private:
  static std::vector<int>& mutable_images(Permutation& p) { return p.images_; }

  Coloring coloring_;
  std::vector<std::vector<int>> classes_;
  std::uint64_t size_ = 0;
};

/// Entry j is the number of cycles of a lying in color class j.
/// Throws InvalidArgument if a does not preserve t.
std::vector<int> color_cycle_counts(const Permutation& a, const Coloring& t);

/// Elements a of S_n(t) with #C(a) + #C(sigma a) = n + 1. With sigma the
/// long cycle these are exactly the genus-0 single-star hypermaps.
std::vector<Permutation> planar_set(const Coloring& t, const Permutation& sigma,
                                    std::uint64_t cap = kDefaultEnumerationCap);

/// (0..n-1)(n..2n-1)
Permutation two_star_forward(std::size_t n);
/// (n-1..0)(n..2n-1): the first star read backwards.
Permutation two_star_reversed(std::size_t n);

struct ConnectingPlanarSets {
  std::vector<Permutation> forward;   ///< S*_{2n}(t), genus 0 for two_star_forward
  std::vector<Permutation> reversed;  ///< S**_{2n}(t), genus 0 for two_star_reversed
};

/// Elements a of S_{2n}(double_coloring(t)) with some cycle meeting both
/// halves and #C(a) + #C(sigma a) = 2n, for both two-star sigmas.
ConnectingPlanarSets connecting_planar_sets(const Coloring& t,
                                            std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace wishart

#endif  // WISHART_COLORING_HPP
