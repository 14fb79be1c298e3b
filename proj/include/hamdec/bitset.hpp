#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace hamdec {

// Fixed-size bitset with a run-time bit count. Vertex sets in the search
// engine and the certifier are all instances of this.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  int size() const { return bits_; }

  void set(int i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const {
    return (words_[i >> 6] >> (i & 63)) & std::uint64_t{1};
  }

  void clear() { std::fill(words_.begin(), words_.end(), std::uint64_t{0}); }

  void set_all() {
    std::fill(words_.begin(), words_.end(), ~std::uint64_t{0});
    trim();
  }

  int count() const {
    int c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  bool any() const {
    for (std::uint64_t w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  // this \ o
  Bitset& operator-=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

  bool operator==(const Bitset& o) const { return words_ == o.words_; }

  bool intersects(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  int intersection_count(const Bitset& o) const {
    int c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += std::popcount(words_[i] & o.words_[i]);
    return c;
  }

  // Lowest set bit at position >= from, or -1.
  int next(int from = 0) const {
    if (from >= bits_) return -1;
    int wi = from >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w) {
        int bit = (wi << 6) + std::countr_zero(w);
        return bit < bits_ ? bit : -1;
      }
      if (++wi >= static_cast<int>(words_.size())) return -1;
      w = words_[wi];
    }
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (int v = next(0); v != -1; v = next(v + 1)) fn(v);
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    for_each([&](int v) { out.push_back(v); });
    return out;
  }

 private:
  void trim() {
    if (bits_ & 63) words_.back() &= (~std::uint64_t{0} >> (64 - (bits_ & 63)));
  }

  int bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace hamdec
