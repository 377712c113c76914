#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace sqperc {

// Word-packed dynamic bitset. Bits past size() are always zero.
class Bitset {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Bitset() = default;
  explicit Bitset(std::size_t size) : size_(size), words_(word_count(size), 0) {}
  Bitset(std::size_t size, std::initializer_list<std::size_t> bits) : Bitset(size) {
    for (auto b : bits) set(b);
  }

  static constexpr std::size_t word_count(std::size_t bits) {
    return (bits + kWordBits - 1) / kWordBits;
  }

  static Bitset from_words(std::size_t size, std::span<const Word> words) {
    Bitset out(size);
    for (std::size_t i = 0; i < out.words_.size() && i < words.size(); ++i)
      out.words_[i] = words[i];
    out.trim();
    return out;
  }

  std::size_t size() const { return size_; }
  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }

  bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i) {
    check(i);
    words_[i / kWordBits] |= Word{1} << (i % kWordBits);
  }
  void reset(std::size_t i) {
    check(i);
    words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
  }
  void set_all() {
    for (auto& w : words_) w = ~Word{0};
    trim();
  }
  void clear() {
    for (auto& w : words_) w = 0;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  bool is_subset_of(const Bitset& other) const {
    same_size(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  Bitset& operator&=(const Bitset& o) {
    same_size(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    same_size(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  // Set difference.
  Bitset& operator-=(const Bitset& o) {
    same_size(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }
  friend bool operator==(const Bitset& a, const Bitset& b) = default;

  Bitset complement() const {
    Bitset out(size_);
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
    out.trim();
    return out;
  }

  // Calls f(index) for each set bit in ascending order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      Word w = words_[wi];
      while (w) {
        f(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  template <class T = std::size_t>
  std::vector<T> to_vector() const {
    std::vector<T> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(static_cast<T>(i)); });
    return out;
  }

 private:
  void check(std::size_t i) const {
    if (i >= size_) throw std::out_of_range("Bitset index out of range");
  }
  void same_size(const Bitset& o) const {
    if (o.size_ != size_) throw std::invalid_argument("Bitset size mismatch");
  }
  void trim() {
    if (size_ % kWordBits && !words_.empty())
      words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

using VertexSet = Bitset;

}  // namespace sqperc
