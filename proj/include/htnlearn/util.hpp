#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace htnlearn {

// Fixed-universe bit vector. States and observations over a ground-atom
// universe are represented as one of these; all set algebra used by the
// learners goes through it.
class Bitset {
public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }

  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }
  // this \ o
  Bitset& subtract(const Bitset& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
    return *this;
  }

  bool subset_of(const Bitset& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  bool intersects(const Bitset& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & o.w_[k]) return true;
    return false;
  }
  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  bool operator==(const Bitset&) const = default;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      std::uint64_t w = w_[k];
      while (w) {
        unsigned b = static_cast<unsigned>(__builtin_ctzll(w));
        fn(k * 64 + b);
        w &= w - 1;
      }
    }
  }
  std::vector<std::uint32_t> to_vector() const {
    std::vector<std::uint32_t> v;
    for_each([&](std::size_t i) { v.push_back(static_cast<std::uint32_t>(i)); });
    return v;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto w : w_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Deterministic per-stream seed derivation, so independent walks / cells can
// run concurrently without sharing generator state.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base ^ splitmix64(stream + 0x51ed2701));
}

inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
}

template <class It, class Fn>
std::string join(It begin, It end, const std::string& sep, Fn&& fmt) {
  std::ostringstream out;
  for (It it = begin; it != end; ++it) {
    if (it != begin) out << sep;
    out << fmt(*it);
  }
  return out.str();
}

template <class Container>
std::string join(const Container& c, const std::string& sep) {
  return join(c.begin(), c.end(), sep, [](const auto& x) { return x; });
}

}  // namespace htnlearn
