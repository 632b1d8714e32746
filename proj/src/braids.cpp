#include "recouple/braids.hpp"

#include <sstream>

#include "recouple/error.hpp"

namespace recouple {

BraidWord::BraidWord(std::size_t strands, std::vector<Generator> letters)
    : strands_(strands), letters_(std::move(letters)) {
  for (const Generator& g : letters_) {
    if (g.index < 1 || static_cast<std::size_t>(g.index) >= strands_ || (g.sign != 1 && g.sign != -1)) {
      throw Error(ErrorCode::PositionOutOfRange,
                  "generator t" + std::to_string(g.index) + " on " + std::to_string(strands_) + " strands");
    }
  }
}

int BraidWord::writhe() const noexcept {
  int w = 0;
  for (const Generator& g : letters_) w += g.sign;
  return w;
}

BraidWord BraidWord::inverse() const {
  std::vector<Generator> out(letters_.rbegin(), letters_.rend());
  for (Generator& g : out) g.sign = -g.sign;
  return BraidWord(strands_, std::move(out));
}

namespace {

void push_reduced(std::vector<Generator>& out, Generator g) {
  if (!out.empty() && out.back().index == g.index && out.back().sign == -g.sign) {
    out.pop_back();
  } else {
    out.push_back(g);
  }
}

}  // namespace

BraidWord BraidWord::free_reduced() const {
  std::vector<Generator> out;
  for (const Generator& g : letters_) push_reduced(out, g);
  return BraidWord(strands_, std::move(out));
}

BraidWord operator*(const BraidWord& a, const BraidWord& b) {
  if (a.strands() != b.strands()) {
    throw Error(ErrorCode::StrandMismatch, std::to_string(a.strands()) + " vs " + std::to_string(b.strands()));
  }
  std::vector<Generator> out = a.letters();
  out.insert(out.end(), b.letters().begin(), b.letters().end());
  return BraidWord(a.strands(), std::move(out));
}

Permutation underlying_perm(const BraidWord& w) {
  Permutation p = Permutation::identity(w.strands());
  for (const Generator& g : w.letters()) {
    p = compose(p, Permutation::transposition(w.strands(), g.index, g.index + 1));
  }
  return p;
}

BraidWord handle_reduce(const BraidWord& w) {
  std::vector<Generator> word = w.free_reduced().letters();
  for (;;) {
    // First-ending handle t_i^e v t_i^-e with no t_i, t_{i-1} inside v;
    // its t_{i+1} letters then share one sign.
    std::size_t start = 0, end = 0;
    bool found = false;
    for (std::size_t j = 1; j < word.size() && !found; ++j) {
      for (std::size_t k = j; k-- > 0;) {
        const Generator& g = word[k];
        if (g.index == word[j].index) {
          if (g.sign == -word[j].sign) {
            start = k;
            end = j;
            found = true;
          }
          break;
        }
        if (g.index == word[j].index - 1) break;
      }
    }
    if (!found) break;
    const int i = word[start].index;
    const int e = word[start].sign;
    std::vector<Generator> out(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(start));
    for (std::size_t k = start + 1; k < end; ++k) {
      const Generator g = word[k];
      if (g.index == i + 1) {
        push_reduced(out, {i + 1, -e});
        push_reduced(out, {i, g.sign});
        push_reduced(out, {i + 1, e});
      } else {
        push_reduced(out, g);
      }
    }
    for (std::size_t k = end + 1; k < word.size(); ++k) push_reduced(out, word[k]);
    word = std::move(out);
  }
  return BraidWord(w.strands(), std::move(word));
}

bool is_trivial(const BraidWord& w) {
  if (w.writhe() != 0 || !underlying_perm(w).is_identity()) return false;
  return handle_reduce(w).empty();
}

bool braid_equal(const BraidWord& a, const BraidWord& b) {
  if (a.strands() != b.strands()) {
    throw Error(ErrorCode::StrandMismatch, std::to_string(a.strands()) + " vs " + std::to_string(b.strands()));
  }
  return is_trivial(a * b.inverse());
}

XBraidArrow::XBraidArrow(Permutation source, BraidWord word)
    : source_(std::move(source)), word_(std::move(word)) {
  if (source_.size() != word_.strands()) {
    throw Error(ErrorCode::StrandMismatch, "permutation of " + std::to_string(source_.size()) +
                                               " points with a braid on " +
                                               std::to_string(word_.strands()) + " strands");
  }
}

Permutation XBraidArrow::target() const { return compose(source_, underlying_perm(word_)); }

bool XBraidArrow::equivalent(const XBraidArrow& other) const {
  return source_ == other.source_ && word_.strands() == other.word_.strands() &&
         braid_equal(word_, other.word_);
}

XBraidArrow compose_x(const XBraidArrow& a, const XBraidArrow& b) {
  if (!(a.target() == b.source())) {
    throw Error(ErrorCode::SourceTargetMismatch,
                "target " + a.target().to_cycles() + " differs from source " + b.source().to_cycles());
  }
  return XBraidArrow(a.source(), a.word() * b.word());
}

std::string to_string(const BraidWord& w) {
  if (w.empty()) return "e";
  std::ostringstream os;
  bool first = true;
  for (const Generator& g : w.letters()) {
    if (!first) os << ' ';
    os << 't' << g.index << (g.sign < 0 ? "'" : "");
    first = false;
  }
  return os.str();
}

}  // namespace recouple
