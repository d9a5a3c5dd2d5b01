#include "normlab/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "normlab/errors.hpp"

namespace normlab {

Permutation::Permutation(int degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), 0);
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= degree() || seen[v])
      throw InvalidPermutation("image list is not a bijection");
    seen[v] = 1;
  }
}

Permutation Permutation::compose(const Permutation& then) const {
  std::vector<int> out(images_.size());
  for (int i = 0; i < degree(); ++i) out[i] = then.images_[images_[i]];
  Permutation p;
  p.images_ = std::move(out);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<int> out(images_.size());
  for (int i = 0; i < degree(); ++i) out[images_[i]] = i;
  Permutation p;
  p.images_ = std::move(out);
  return p;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::string Permutation::to_cycle_string() const {
  std::ostringstream os;
  std::vector<char> done(images_.size(), 0);
  bool any = false;
  for (int i = 0; i < degree(); ++i) {
    if (done[i] || images_[i] == i) continue;
    any = true;
    os << '(';
    int j = i;
    bool first = true;
    do {
      if (!first) os << ' ';
      os << (j + 1);
      done[j] = 1;
      j = images_[j];
      first = false;
    } while (j != i);
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

namespace {

std::vector<int> parse_int_list(const std::string& body) {
  std::vector<int> out;
  std::string cur;
  for (char c : body) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      cur += c;
    } else if (c == ' ' || c == ',' || c == '\t') {
      if (!cur.empty()) {
        out.push_back(std::stoi(cur));
        cur.clear();
      }
    } else {
      throw InvalidPermutation("unexpected character in permutation: '" +
                               std::string(1, c) + "'");
    }
  }
  if (!cur.empty()) out.push_back(std::stoi(cur));
  return out;
}

}  // namespace

Permutation parse_permutation(const std::string& text, int degree) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) || c == ' ') s += c;

  // strip outer whitespace
  size_t b = s.find_first_not_of(' ');
  size_t e = s.find_last_not_of(' ');
  if (b == std::string::npos) return Permutation(degree);
  s = s.substr(b, e - b + 1);

  if (s.front() == '[') {
    if (s.back() != ']') throw InvalidPermutation("unterminated image list");
    auto vals = parse_int_list(s.substr(1, s.size() - 2));
    if (static_cast<int>(vals.size()) != degree)
      throw InvalidPermutation("image list length does not match degree");
    std::vector<int> images(degree);
    for (int i = 0; i < degree; ++i) {
      if (vals[i] < 1 || vals[i] > degree)
        throw InvalidPermutation("image out of range");
      images[i] = vals[i] - 1;
    }
    return Permutation(std::move(images));  // bijectivity checked by ctor
  }

  // cycle notation; "()" or "" is the identity
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 0);
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] == ' ') {
      ++i;
      continue;
    }
    if (s[i] != '(') throw InvalidPermutation("expected '(' in cycle notation");
    size_t close = s.find(')', i);
    if (close == std::string::npos)
      throw InvalidPermutation("unterminated cycle");
    auto pts = parse_int_list(s.substr(i + 1, close - i - 1));
    for (size_t k = 0; k < pts.size(); ++k) {
      int from = pts[k] - 1;
      int to = pts[(k + 1) % pts.size()] - 1;
      if (from < 0 || from >= degree || to < 0 || to >= degree)
        throw InvalidPermutation("cycle point out of range");
      if (images[from] != from)
        throw InvalidPermutation("point repeated across cycles");
      images[from] = to;
    }
    i = close + 1;
  }
  return Permutation(std::move(images));
}

}  // namespace normlab
