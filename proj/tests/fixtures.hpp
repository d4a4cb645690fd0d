#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "expobs/circle.hpp"
#include "expobs/relation.hpp"

namespace fixtures {

using expobs::FiniteSystem;
using expobs::Gaussian;
using expobs::Observable;
using expobs::PointIndex;
using expobs::Rational;

// splitmix64, so fixtures do not depend on standard library distributions.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::size_t below(std::size_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do v = next(); while (v >= limit);
    return static_cast<std::size_t>(v % n);
  }

  std::vector<PointIndex> permutation(std::size_t n) {
    std::vector<PointIndex> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[below(i)]);
    return p;
  }

 private:
  std::uint64_t state_;
};

inline std::vector<std::string> numbered_ids(std::size_t n, const std::string& prefix = "") {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
  return ids;
}

inline FiniteSystem l4() {
  std::vector<std::vector<Rational>> m(4, std::vector<Rational>(4));
  for (long i = 0; i < 4; ++i)
    for (long j = 0; j < 4; ++j) m[i][j] = Rational(i > j ? i - j : j - i);
  return FiniteSystem(numbered_ids(4), std::move(m), {1, 0, 3, 2});
}

// Z/n with the circle metric, i -> i + step.
inline FiniteSystem zn(std::size_t n, std::size_t step = 1) {
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  std::vector<PointIndex> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = (i + step) % n;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t g = i > j ? i - j : j - i;
      m[i][j] = Rational(static_cast<long>(std::min(g, n - g)), static_cast<long>(n));
    }
  }
  return FiniteSystem(numbered_ids(n), std::move(m), std::move(f));
}

inline FiniteSystem r8() { return zn(8); }

// (Z/5)^2 with the max of circle distances / 5, (x, y) -> (2x + y, x + y).
inline FiniteSystem cat5() {
  auto c5 = [](long t) {
    const long r = ((t % 5) + 5) % 5;
    return std::min(r, 5 - r);
  };
  std::vector<std::string> ids;
  for (long a = 0; a < 5; ++a)
    for (long b = 0; b < 5; ++b) ids.push_back(std::to_string(a) + "." + std::to_string(b));
  std::vector<std::vector<Rational>> m(25, std::vector<Rational>(25));
  std::vector<PointIndex> f(25);
  for (long p = 0; p < 25; ++p) {
    const long a = p / 5, b = p % 5;
    f[p] = static_cast<PointIndex>(((2 * a + b) % 5) * 5 + (a + b) % 5);
    for (long q = 0; q < 25; ++q) m[p][q] = Rational(std::max(c5(a - q / 5), c5(b - q % 5)), 5);
  }
  return FiniteSystem(std::move(ids), std::move(m), std::move(f));
}

inline Observable real_obs(const FiniteSystem& s, const std::vector<long>& v) {
  std::vector<Gaussian> g;
  for (long x : v) g.emplace_back(Rational(x));
  return Observable(s.point_set(), std::move(g));
}

inline void shortest_paths(std::vector<std::vector<Rational>>& m) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (m[i][k] + m[k][j] < m[i][j]) m[i][j] = m[i][k] + m[k][j];
}

// Random positive weights repaired by shortest paths, random permutation.
inline FiniteSystem random_system(std::uint64_t seed, std::size_t max_points = 12) {
  TestRng rng(seed);
  const std::size_t n = 2 + rng.below(max_points - 1);
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m[i][j] = Rational(static_cast<long>(1 + rng.below(12)), static_cast<long>(1 + rng.below(3)));
      m[j][i] = m[i][j];
    }
  shortest_paths(m);
  return FiniteSystem(numbered_ids(n, "p"), std::move(m), rng.permutation(n));
}

inline std::vector<FiniteSystem> corpus(std::size_t count = 200, std::uint64_t base = 1000) {
  std::vector<FiniteSystem> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_system(base + i));
  return out;
}

// Weights constant on orbits of unordered pairs, then shortest paths: the
// permutation stays an isometry.
inline FiniteSystem random_isometric_system(std::uint64_t seed, std::size_t max_points = 10) {
  TestRng rng(seed);
  const std::size_t n = 1 + rng.below(max_points);
  const auto perm = rng.permutation(n);
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  std::vector<std::vector<bool>> done(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (done[i][j]) continue;
      const Rational w(static_cast<long>(1 + rng.below(6)), static_cast<long>(1 + rng.below(2)));
      std::size_t a = i, b = j;
      do {
        m[a][b] = m[b][a] = w;
        done[a][b] = done[b][a] = true;
        a = perm[a];
        b = perm[b];
      } while (!(a == i && b == j) && !(a == j && b == i));
    }
  shortest_paths(m);
  return FiniteSystem(numbered_ids(n, "q"), std::move(m), perm);
}

// Block partition with values from a small palette, so collisions are common.
inline Observable random_observable(const FiniteSystem& s, TestRng& rng) {
  static const std::vector<Gaussian> palette{Gaussian(Rational(0)), Gaussian(Rational(1)),
                                             Gaussian(Rational(0), Rational(1)), Gaussian(Rational(1), Rational(1)),
                                             Gaussian(Rational(1, 2)), Gaussian(Rational(-3), Rational(2))};
  const std::size_t k = 1 + rng.below(palette.size());
  std::vector<Gaussian> v;
  for (std::size_t i = 0; i < s.size(); ++i) v.push_back(palette[rng.below(k)]);
  return Observable(s.point_set(), std::move(v));
}

inline FiniteSystem relabeled(const FiniteSystem& x, const std::vector<PointIndex>& h, const std::string& prefix) {
  // Y has points y_0..y_{n-1}; h(y_i) = x_{h[i]}.
  const std::size_t n = x.size();
  std::vector<PointIndex> inv(n);
  for (PointIndex i = 0; i < n; ++i) inv[h[i]] = i;
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  std::vector<PointIndex> g(n);
  for (PointIndex i = 0; i < n; ++i) {
    g[i] = inv[x.f(h[i])];
    for (PointIndex j = 0; j < n; ++j) m[i][j] = x.d(h[i], h[j]);
  }
  return FiniteSystem(numbered_ids(n, prefix), std::move(m), std::move(g));
}

inline FiniteSystem scaled(const FiniteSystem& x, const Rational& c) {
  auto rows = x.metric_rows();
  for (auto& r : rows)
    for (auto& v : r) v *= c;
  return FiniteSystem(numbered_ids(x.size(), "y"), std::move(rows), x.map());
}

inline expobs::circle::PLCircleMap m0() {
  return expobs::circle::PLCircleMap({Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4)},
                                     {Rational(0), Rational(3, 8), Rational(1, 2), Rational(7, 8)});
}

// The same data on [0, 1]: Fix = {0, 1/2, 1}, pushing right on both gaps.
inline expobs::circle::PLIntervalMap m0_interval() {
  return expobs::circle::PLIntervalMap({Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)},
                                       {Rational(0), Rational(3, 8), Rational(1, 2), Rational(7, 8), Rational(1)});
}

inline expobs::circle::PLIntervalMap interval_identity() {
  return expobs::circle::PLIntervalMap({Rational(0), Rational(1)}, {Rational(0), Rational(1)});
}

inline expobs::circle::PLIntervalMap interval_reflection() {
  return expobs::circle::PLIntervalMap({Rational(0), Rational(1)}, {Rational(1), Rational(0)});
}

}  // namespace fixtures
