#include "recouple/permutation.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

#include "recouple/error.hpp"

namespace recouple {

Permutation Permutation::identity(std::size_t n) {
  Permutation p;
  p.image_.resize(n);
  std::iota(p.image_.begin(), p.image_.end(), 1);
  return p;
}

Permutation Permutation::from_image(std::vector<int> image) {
  std::vector<bool> seen(image.size() + 1, false);
  for (int x : image) {
    if (x < 1 || static_cast<std::size_t>(x) > image.size() || seen[static_cast<std::size_t>(x)]) {
      throw Error(ErrorCode::NotAPermutation, "image is not a bijection");
    }
    seen[static_cast<std::size_t>(x)] = true;
  }
  Permutation p;
  p.image_ = std::move(image);
  return p;
}

Permutation Permutation::transposition(std::size_t n, int i, int j) {
  Permutation p = identity(n);
  if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n || static_cast<std::size_t>(j) > n) {
    throw Error(ErrorCode::PositionOutOfRange, "transposition outside 1..n");
  }
  std::swap(p.image_[static_cast<std::size_t>(i - 1)], p.image_[static_cast<std::size_t>(j - 1)]);
  return p;
}

Permutation Permutation::from_cycles(const std::string& text, std::size_t n) {
  Permutation result = identity(n);
  if (text == "1" || text == "()" || text.empty()) return result;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::ParseError, "cycle notation '" + text + "': " + why);
  };
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    if (text[pos] != '(') fail("expected '('");
    ++pos;
    std::vector<int> cycle;
    const bool spaced = text.find_first_of(" ,", pos) < text.find(')', pos);
    while (pos < text.size() && text[pos] != ')') {
      if (text[pos] == ' ' || text[pos] == ',') {
        ++pos;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) fail("expected a digit");
      if (spaced) {
        std::size_t end = pos;
        while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
        cycle.push_back(std::stoi(text.substr(pos, end - pos)));
        pos = end;
      } else {
        cycle.push_back(text[pos] - '0');
        ++pos;
      }
    }
    if (pos == text.size()) fail("unterminated cycle");
    ++pos;
    for (int x : cycle) {
      if (x < 1 || static_cast<std::size_t>(x) > n) fail("point out of range");
    }
    // Cycles compose right to left, each acting as c_k -> c_{k+1}.
    std::vector<int> img = identity(n).image_;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      img[static_cast<std::size_t>(cycle[k] - 1)] = cycle[(k + 1) % cycle.size()];
    }
    result = compose(result, from_image(img));
  }
  return result;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t k = 0; k < image_.size(); ++k) {
    if (image_[k] != static_cast<int>(k + 1)) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.image_.resize(image_.size());
  for (std::size_t k = 0; k < image_.size(); ++k) {
    p.image_[static_cast<std::size_t>(image_[k] - 1)] = static_cast<int>(k + 1);
  }
  return p;
}

std::string Permutation::to_cycles() const {
  std::ostringstream os;
  std::vector<bool> seen(image_.size(), false);
  for (std::size_t start = 0; start < image_.size(); ++start) {
    if (seen[start] || image_[start] == static_cast<int>(start + 1)) continue;
    os << '(';
    std::size_t k = start;
    bool first = true;
    while (!seen[k]) {
      seen[k] = true;
      if (!first) os << ' ';
      os << k + 1;
      first = false;
      k = static_cast<std::size_t>(image_[k] - 1);
    }
    os << ')';
  }
  const std::string s = os.str();
  return s.empty() ? "()" : s;
}

Permutation compose(const Permutation& f, const Permutation& g) {
  if (f.size() != g.size()) throw Error(ErrorCode::LengthMismatch, "permutation sizes differ");
  std::vector<int> img(f.size());
  for (std::size_t k = 0; k < img.size(); ++k) img[k] = f(g(static_cast<int>(k + 1)));
  return Permutation::from_image(std::move(img));
}

}  // namespace recouple
