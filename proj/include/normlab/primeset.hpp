#pragma once

#include <string>
#include <vector>

namespace normlab {

// A set of primes: explicit finite set, complement of one, or all primes.
// Complement of a complement normalizes back to explicit.
class PrimeSet {
 public:
  enum class Kind { Explicit, Complement, All };

  PrimeSet() : kind_(Kind::Explicit) {}

  static PrimeSet all() {
    PrimeSet s;
    s.kind_ = Kind::All;
    return s;
  }
  static PrimeSet of(std::vector<int> primes);             // explicit
  static PrimeSet complement_of(std::vector<int> primes);  // P \ primes

  Kind kind() const { return kind_; }
  const std::vector<int>& base() const { return primes_; }

  bool contains(int p) const;
  bool empty() const { return kind_ == Kind::Explicit && primes_.empty(); }
  bool is_all() const {
    return kind_ == Kind::All ||
           (kind_ == Kind::Complement && primes_.empty());
  }
  bool is_finite() const { return kind_ == Kind::Explicit; }

  PrimeSet complement() const;
  PrimeSet set_union(const PrimeSet& o) const;
  bool subset_of(const PrimeSet& o) const;
  bool disjoint_with(const PrimeSet& o) const;
  bool operator==(const PrimeSet& o) const;

  // "P", "{2,3}", "{2,3}'"
  std::string to_string() const;
  // Accepts the three syntaxes above; validates primality.
  static PrimeSet parse(const std::string& text);

 private:
  Kind kind_;
  std::vector<int> primes_;  // sorted, deduplicated
};

}  // namespace normlab
