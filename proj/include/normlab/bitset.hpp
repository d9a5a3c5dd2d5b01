#pragma once

#include <cstdint>
#include <vector>

namespace normlab {

// Fixed-width bit vector keyed by element index. The norm computations
// intersect thousands of normalizers, so these stay word-parallel.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(int n) : size_(n), words_((n + 63) / 64, 0) {}

  int size() const { return size_; }

  void set(int i) { words_[i >> 6] |= (uint64_t{1} << (i & 63)); }
  void reset(int i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
  bool test(int i) const {
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  void set_all() {
    for (auto& w : words_) w = ~uint64_t{0};
    trim();
  }

  int count() const {
    int c = 0;
    for (auto w : words_) c += __builtin_popcountll(w);
    return c;
  }

  DynBitset& operator&=(const DynBitset& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  DynBitset& operator|=(const DynBitset& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  bool operator==(const DynBitset& o) const {
    return size_ == o.size_ && words_ == o.words_;
  }

  bool is_subset_of(const DynBitset& o) const {
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  std::vector<int> to_indices() const {
    std::vector<int> out;
    out.reserve(count());
    for (size_t w = 0; w < words_.size(); ++w) {
      uint64_t bits = words_[w];
      while (bits) {
        int b = __builtin_ctzll(bits);
        out.push_back(static_cast<int>(w * 64 + b));
        bits &= bits - 1;
      }
    }
    return out;
  }

  static DynBitset from_indices(int n, const std::vector<int>& idx) {
    DynBitset b(n);
    for (int i : idx) b.set(i);
    return b;
  }

  uint64_t hash() const {
    uint64_t h = 1469598103934665603ull;
    for (auto w : words_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  void trim() {
    int extra = size_ & 63;
    if (extra && !words_.empty())
      words_.back() &= (uint64_t{1} << extra) - 1;
  }

  int size_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace normlab
