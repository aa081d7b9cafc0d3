#ifndef WISHART_PERMUTATION_HPP
#define WISHART_PERMUTATION_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace wishart {

class ColorPreservingEnumeration;

/// A cycle as a cyclically ordered list of zero-based points.
using Cycle = std::vector<int>;

/// Disjoint cycles covering the ground set, in canonical presentation:
/// every cycle starts at its minimal element and cycles are sorted by that minimum.
struct CycleSet {
  std::vector<Cycle> cycles;

  std::size_t size() const { return cycles.size(); }
  /// Multiset of cycle lengths, sorted decreasingly (the cycle type).
  std::vector<int> type() const;
  /// One-based cycle notation, fixed points included: "(1,2,3)(4)".
  std::string to_string() const;

  friend bool operator==(const CycleSet&, const CycleSet&) = default;
};

/// Bijection of {0..n-1}. The text formats are one-based; everything
/// in the C++ interface is zero-based.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(std::size_t n);
  /// Zero-based images; throws InvalidArgument unless they form a bijection.
  static Permutation from_images(std::vector<int> images);
  /// One-based images, as written in documentation: [2,3,1] is (1,2,3).
  static Permutation from_one_based(const std::vector<int>& images);
  /// Builds a permutation of {0..n-1} from zero-based cycles; points not
  /// mentioned are fixed.
  static Permutation from_cycles(std::size_t n, const std::vector<Cycle>& cycles);
  /// Parses one-based cycle notation such as "(1,2,3)(4,5,6)". Commas
  /// between cycles are tolerated. With n == 0 the ground set is the
  /// largest point mentioned.
  static Permutation parse(std::string_view text, std::size_t n = 0);
  /// The single n-cycle (0,1,...,n-1).
  static Permutation long_cycle(std::size_t n);

  std::size_t size() const { return images_.size(); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  bool is_identity() const;
  /// Canonical cycle notation, identical to cycles(*this).to_string().
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend Permutation compose(const Permutation& s, const Permutation& a);
  friend class ColorPreservingEnumeration;

 private:
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {}
  std::vector<int> images_;
};

CycleSet cycles(const Permutation& p);

/// Number of cycles without materializing them.
int cycle_count(const Permutation& p);

/// (s a)(i) = s(a(i)). Throws DimensionError on mismatched sizes.
Permutation compose(const Permutation& s, const Permutation& a);

/// Finest partition of the ground set closed under both s and a, blocks
/// sorted internally and ordered by their minimal element.
std::vector<std::vector<int>> orbits(const Permutation& s, const Permutation& a);

bool is_transitive(const Permutation& s, const Permutation& a);

/// Reduced fraction num/den with den > 0.
struct Rational {
  long num = 0;
  long den = 1;

  bool is_integer() const { return den == 1; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;
};

struct EulerGenus {
  int chi;        ///< #C(s) + #C(a) + #C(sa) - n
  Rational genus; ///< (2 - chi) / 2
};

/// Euler characteristic and genus of the pair (s, a). The genus is an
/// integer whenever <s, a> acts transitively; otherwise it may be a half-integer
/// or negative, and callers should restrict to an orbit first.
EulerGenus euler_genus(const Permutation& s, const Permutation& a);

}  // namespace wishart

#endif  // WISHART_PERMUTATION_HPP
