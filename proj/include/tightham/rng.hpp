#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "tightham/vertex_set.hpp"

namespace tightham {

// mt19937_64 is fully specified by the standard; the std distributions are not,
// so everything below works from raw 64-bit draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }

  // uniform in [0, bound)
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do x = eng_();
    while (x >= limit);
    return x % bound;
  }
  int below(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(static_cast<std::uint64_t>(i))]);
  }

  // random member of a nonempty set
  Vertex pick(const VertexSet& s) { return s.nth(below(s.count())); }

  // k distinct members (all if fewer), random order
  std::vector<Vertex> sample(const VertexSet& s, int k) {
    auto v = s.to_vector();
    int take = std::min<int>(k, static_cast<int>(v.size()));
    for (int i = 0; i < take; ++i) std::swap(v[i], v[i + below(static_cast<int>(v.size()) - i)]);
    v.resize(take);
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

std::uint64_t splitmix64(std::uint64_t x);

// named per-stage seed
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stage, std::uint64_t index = 0);

}  // namespace tightham
