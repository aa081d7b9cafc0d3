#include "wishart/trace_word.hpp"

#include <algorithm>

#include "wishart/error.hpp"

namespace wishart {

std::size_t least_rotation(const std::vector<Letter>& letters) {
  const std::size_t n = letters.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto& a = letters[(r + k) % n];
      const auto& b = letters[(best + k) % n];
      if (a == b) continue;
      if (a < b) best = r;
      break;
    }
  }
  return best;
}

TraceWord::TraceWord(std::vector<Letter> letters) {
  if (letters.empty()) throw InvalidArgument("a trace word needs at least one letter");
  const auto shift = least_rotation(letters);
  std::rotate(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(shift), letters.end());
  letters_ = std::move(letters);
}

TraceWord TraceWord::from_colors(const std::vector<int>& colors) {
  std::vector<Letter> letters;
  letters.reserve(colors.size());
  for (int c : colors) letters.push_back({c, {}});
  return TraceWord(std::move(letters));
}

bool TraceWord::has_hslots() const {
  return std::any_of(letters_.begin(), letters_.end(),
                     [](const Letter& l) { return !l.hslot.empty(); });
}

TraceWord TraceWord::recolored(int color) const {
  auto letters = letters_;
  for (auto& l : letters) l.color = color;
  return TraceWord(std::move(letters));
}

std::string TraceWord::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += ' ';
    out += 'x';
    out += std::to_string(letters_[i].color + 1);
    if (!letters_[i].hslot.empty()) out += '[' + letters_[i].hslot + ']';
  }
  return out;
}

TraceWord word_from_cycle(const Cycle& cycle, const Coloring& t,
                          const std::vector<std::string>& hslots) {
  std::vector<Letter> letters;
  letters.reserve(cycle.size());
  for (int j : cycle) {
    const auto pos = static_cast<std::size_t>(j);
    if (pos >= t.size()) throw DimensionError("cycle element outside the colored ground set");
    letters.push_back({t[pos], hslots.empty() ? std::string() : hslots.at(pos)});
  }
  return TraceWord(std::move(letters));
}

std::vector<TraceWord> words_from_cycles(const Permutation& p, const Coloring& t,
                                         const std::vector<std::string>& hslots) {
  if (p.size() != t.size()) throw DimensionError("permutation and coloring sizes differ");
  if (!hslots.empty() && hslots.size() != t.size())
    throw DimensionError("h-slot list and coloring sizes differ");
  std::vector<TraceWord> words;
  for (const auto& c : cycles(p).cycles) words.push_back(word_from_cycle(c, t, hslots));
  std::sort(words.begin(), words.end());
  return words;
}

}  // namespace wishart
