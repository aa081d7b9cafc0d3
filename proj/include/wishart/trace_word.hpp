#ifndef WISHART_TRACE_WORD_HPP
#define WISHART_TRACE_WORD_HPP

#include <compare>
#include <string>
#include <vector>

#include "wishart/coloring.hpp"
#include "wishart/permutation.hpp"

namespace wishart {

/// One factor h x_color of a trace; an empty hslot stands for the identity.
struct Letter {
  int color = 0;  ///< zero-based
  std::string hslot;

  friend bool operator==(const Letter&, const Letter&) = default;
  friend std::strong_ordering operator<=>(const Letter&, const Letter&) = default;
};

/// A trace of a product of letters, identified up to cyclic rotation only.
/// Letters are stored in the lexicographically least rotation, so equality
/// and ordering are representation independent. Reversal is a different word.
class TraceWord {
 public:
  TraceWord() = default;
  /// Throws InvalidArgument on an empty sequence.
  explicit TraceWord(std::vector<Letter> letters);
  static TraceWord from_colors(const std::vector<int>& colors);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool has_hslots() const;
  /// Same letters with every color replaced by `color`.
  TraceWord recolored(int color) const;
  /// "x1 x2[h] x3", one-based colors; x2[h] denotes the product h x2.
  std::string to_string() const;

  friend bool operator==(const TraceWord&, const TraceWord&) = default;
  friend std::strong_ordering operator<=>(const TraceWord& a, const TraceWord& b) {
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<Letter> letters_;
};

/// Index of the lexicographically least rotation.
std::size_t least_rotation(const std::vector<Letter>& letters);

/// Word read off a cycle: letters (h(j), t(j)) for j in cycle order. `hslots`
/// is either empty or holds one (possibly empty) slot name per position.
TraceWord word_from_cycle(const Cycle& cycle, const Coloring& t,
                          const std::vector<std::string>& hslots = {});

/// Words of every cycle of p, sorted.
std::vector<TraceWord> words_from_cycles(const Permutation& p, const Coloring& t,
                                         const std::vector<std::string>& hslots = {});

}  // namespace wishart

#endif  // WISHART_TRACE_WORD_HPP
