#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace tightham {

using Vertex = int;

// fixed-universe bitset over 0..n-1
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n) : n_(n), words_((n + 63) / 64, 0) {}
  VertexSet(int n, std::initializer_list<Vertex> vs) : VertexSet(n) {
    for (Vertex v : vs) set(v);
  }

  static VertexSet full(int n) {
    VertexSet s(n);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }
  static VertexSet from(int n, const std::vector<Vertex>& vs) {
    VertexSet s(n);
    for (Vertex v : vs) s.set(v);
    return s;
  }

  int universe() const { return n_; }

  bool test(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1u; }
  bool contains(Vertex v) const { return v >= 0 && v < n_ && test(v); }
  void set(Vertex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void reset(Vertex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  void clear() {
    for (auto& w : words_) w = 0;
  }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  VertexSet& operator&=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator|=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  VertexSet complement() const {
    VertexSet s(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = ~words_[i];
    s.trim();
    return s;
  }

  int intersect_count(const VertexSet& o) const {
    int c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += std::popcount(words_[i] & o.words_[i]);
    return c;
  }
  // |this & a & b|
  int intersect_count(const VertexSet& a, const VertexSet& b) const {
    int c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += std::popcount(words_[i] & a.words_[i] & b.words_[i]);
    return c;
  }
  bool intersects(const VertexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  bool is_subset_of(const VertexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        int b = std::countr_zero(w);
        f(static_cast<Vertex>(i * 64 + b));
        w &= w - 1;
      }
    }
  }

  Vertex first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return static_cast<Vertex>(i * 64 + std::countr_zero(words_[i]));
    return -1;
  }

  // k-th member in increasing order, -1 if out of range
  Vertex nth(int k) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      int c = std::popcount(words_[i]);
      if (k < c) {
        std::uint64_t w = words_[i];
        for (int j = 0; j < k; ++j) w &= w - 1;
        return static_cast<Vertex>(i * 64 + std::countr_zero(w));
      }
      k -= c;
    }
    return -1;
  }

  std::vector<Vertex> to_vector() const {
    std::vector<Vertex> out;
    out.reserve(count());
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  bool operator==(const VertexSet& o) const = default;

 private:
  void trim() {
    if (n_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace tightham
