#pragma once

#include <string>
#include <vector>

namespace normlab {

// Permutation on {0, ..., degree-1}, stored as an image list.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(int degree);                 // identity
  explicit Permutation(std::vector<int> images);    // validates bijectivity

  int degree() const { return static_cast<int>(images_.size()); }
  int operator[](int i) const { return images_[i]; }
  const std::vector<int>& images() const { return images_; }

  Permutation compose(const Permutation& then) const;  // apply *this first
  Permutation inverse() const;
  bool is_identity() const;

  bool operator==(const Permutation& o) const { return images_ == o.images_; }
  bool operator<(const Permutation& o) const { return images_ < o.images_; }

  // Renders in 1-based disjoint cycle notation, "()" for the identity.
  std::string to_cycle_string() const;

 private:
  std::vector<int> images_;
};

// Accepts 1-based cycle notation "(1 2 3)(4 5)" (spaces or commas) and
// 1-based image-list notation "[2,3,1,5,4]". Throws InvalidPermutation.
Permutation parse_permutation(const std::string& text, int degree);

struct PermHash {
  size_t operator()(const Permutation& p) const {
    uint64_t h = 1469598103934665603ull;
    for (int v : p.images()) {
      h ^= static_cast<uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

}  // namespace normlab
