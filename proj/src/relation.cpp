#include "expobs/relation.hpp"

#include <algorithm>
#include <numeric>

namespace expobs {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller root wins so roots are stable first members.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

  Partition partition() {
    Partition p;
    std::vector<std::size_t> slot(parent_.size(), parent_.size());
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      const std::size_t r = find(i);
      if (slot[r] == parent_.size()) {
        slot[r] = p.blocks.size();
        p.blocks.emplace_back();
      }
      p.blocks[slot[r]].push_back(i);
    }
    return p;
  }

 private:
  std::vector<std::size_t> parent_;
};

template <typename EdgePredicate>
Partition components(std::size_t n, EdgePredicate&& edge) {
  DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (edge(i, j)) sets.unite(i, j);
    }
  }
  return sets.partition();
}

}  // namespace

std::size_t Partition::block_of(PointIndex p) const {
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (std::find(blocks[b].begin(), blocks[b].end(), p) != blocks[b].end()) return b;
  }
  throw Error(ErrorCode::UnknownPoint, "point index " + std::to_string(p) + " not in partition");
}

bool Partition::all_singletons() const {
  return std::all_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.size() == 1; });
}

Rational pair_orbit_sup(const FiniteSystem& s, PointIndex x, PointIndex y) {
  Rational best = s.d(x, y);
  PointIndex a = s.f(x);
  PointIndex b = s.f(y);
  while (a != x || b != y) {
    best = max(best, s.d(a, b));
    a = s.f(a);
    b = s.f(b);
  }
  return best;
}

Rational pair_orbit_sup(const FiniteSystem& s, std::string_view x, std::string_view y) {
  return pair_orbit_sup(s, s.points().index_of(x), s.points().index_of(y));
}

OrbitDistanceTable::OrbitDistanceTable(const FiniteSystem& s) : system_(s) {
  const std::size_t n = s.size();
  table_.assign(n * n, Rational(0));
  std::vector<char> seen(n * n, 0);
  std::vector<std::size_t> members;
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = 0; y < n; ++y) {
      if (seen[x * n + y]) continue;
      ++cycles_;
      members.clear();
      Rational best(0);
      PointIndex a = x, b = y;
      do {
        seen[a * n + b] = 1;
        members.push_back(a * n + b);
        best = max(best, s.d(a, b));
        a = s.f(a);
        b = s.f(b);
      } while (a != x || b != y);
      for (std::size_t m : members) table_[m] = best;
    }
  }
}

OrbitDistanceTable orbit_distance_table(const FiniteSystem& s) { return OrbitDistanceTable(s); }

Rational e_star(const OrbitDistanceTable& t) {
  if (t.size() < 2) throw Error(ErrorCode::DegenerateSpace, "e* needs at least two points");
  Rational best = t(0, 1);
  for (PointIndex i = 0; i < t.size(); ++i) {
    for (PointIndex j = i + 1; j < t.size(); ++j) best = min(best, t(i, j));
  }
  return best;
}

Rational e_star(const FiniteSystem& s) { return e_star(OrbitDistanceTable(s)); }

ExtRational delta_star(const OrbitDistanceTable& t, const Observable& phi) {
  require_domain(t.system(), phi);
  std::optional<Rational> best;
  for (PointIndex i = 0; i < t.size(); ++i) {
    for (PointIndex j = i + 1; j < t.size(); ++j) {
      if (phi[i] != phi[j] && (!best || t(i, j) < *best)) best = t(i, j);
    }
  }
  return best ? ExtRational(*best) : ExtRational::infinity();
}

ExtRational delta_star(const FiniteSystem& s, const Observable& phi) {
  require_domain(s, phi);
  return delta_star(OrbitDistanceTable(s), phi);
}

ExtRational sigma_star_squared(const FiniteSystem& s, const Observable& phi) {
  require_domain(s, phi);
  const std::size_t n = s.size();
  // The orbit maximum is constant along each pair-cycle, so walk each cycle once.
  std::vector<char> seen(n * n, 0);
  std::vector<Rational> orbit_max(n * n);
  std::vector<std::size_t> members;
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = 0; y < n; ++y) {
      if (seen[x * n + y]) continue;
      members.clear();
      Rational best(0);
      PointIndex a = x, b = y;
      do {
        seen[a * n + b] = 1;
        members.push_back(a * n + b);
        best = max(best, (phi[a] - phi[b]).norm2());
        a = s.f(a);
        b = s.f(b);
      } while (a != x || b != y);
      for (std::size_t m : members) orbit_max[m] = best;
    }
  }
  std::optional<Rational> best;
  for (PointIndex i = 0; i < n; ++i) {
    for (PointIndex j = i + 1; j < n; ++j) {
      if (phi[i] != phi[j] && (!best || orbit_max[i * n + j] < *best)) best = orbit_max[i * n + j];
    }
  }
  return best ? ExtRational(*best) : ExtRational::infinity();
}

Rational omega_map(const OrbitDistanceTable& t, const Rational& threshold) {
  const auto& s = t.system();
  Rational best(0);
  for (PointIndex i = 0; i < t.size(); ++i) {
    for (PointIndex j = i + 1; j < t.size(); ++j) {
      if (s.d(i, j) <= threshold) best = max(best, t(i, j));
    }
  }
  return best;
}

Rational omega_map(const FiniteSystem& s, const Rational& threshold) {
  return omega_map(OrbitDistanceTable(s), threshold);
}

Rational omega_obs(const FiniteSystem& s, const Observable& phi, const Rational& threshold) {
  require_domain(s, phi);
  Rational best(0);
  for (PointIndex i = 0; i < s.size(); ++i) {
    for (PointIndex j = i + 1; j < s.size(); ++j) {
      if (s.d(i, j) <= threshold) best = max(best, (phi[i] - phi[j]).norm2());
    }
  }
  return best;
}

Quotient indistinguishability_quotient(const OrbitDistanceTable& t, const Rational& delta) {
  if (delta.sign() < 0) throw Error(ErrorCode::InvalidArgument, "threshold must be >= 0");
  return {delta, components(t.size(), [&](PointIndex i, PointIndex j) { return t(i, j) <= delta; })};
}

Quotient indistinguishability_quotient(const FiniteSystem& s, const Rational& delta) {
  return indistinguishability_quotient(OrbitDistanceTable(s), delta);
}

Partition chain_components(const FiniteSystem& s, const Rational& threshold) {
  if (threshold.sign() < 0) throw Error(ErrorCode::InvalidArgument, "threshold must be >= 0");
  return components(s.size(), [&](PointIndex i, PointIndex j) { return s.d(i, j) <= threshold; });
}

std::vector<Rational> pointwise_constants(const OrbitDistanceTable& t) {
  if (t.size() < 2) throw Error(ErrorCode::DegenerateSpace, "pointwise constants need at least two points");
  std::vector<Rational> out;
  out.reserve(t.size());
  for (PointIndex x = 0; x < t.size(); ++x) {
    std::optional<Rational> best;
    for (PointIndex y = 0; y < t.size(); ++y) {
      if (y != x && (!best || t(x, y) < *best)) best = t(x, y);
    }
    out.push_back(*best);
  }
  return out;
}

std::vector<PointIndex> fixed_points(const FiniteSystem& s, long k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  std::vector<PointIndex> out;
  for (PointIndex x = 0; x < s.size(); ++x) {
    if (s.f_pow(x, k) == x) out.push_back(x);
  }
  return out;
}

PeriodicLevelReport periodic_level_report(const FiniteSystem& s, const Observable& phi, long k) {
  require_domain(s, phi);
  PeriodicLevelReport r;
  r.k = k;
  r.fixed = fixed_points(s, k);
  for (PointIndex x : r.fixed) {
    if (std::find(r.distinct_values.begin(), r.distinct_values.end(), phi[x]) == r.distinct_values.end()) {
      r.distinct_values.push_back(phi[x]);
    }
  }
  r.power_delta_star = delta_star(power_system(s, k), phi);
  for (std::size_t a = 0; a < r.fixed.size(); ++a) {
    for (std::size_t b = a + 1; b < r.fixed.size(); ++b) {
      const PointIndex x = r.fixed[a], y = r.fixed[b];
      if (ExtRational(s.d(x, y)) < r.power_delta_star && phi[x] != phi[y]) {
        r.levels_agree = false;
        r.violations.emplace_back(x, y);
      }
    }
  }
  return r;
}

FiniteSystem power_system(const FiniteSystem& s, long k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "power must be nonzero");
  std::vector<PointIndex> map(s.size());
  for (PointIndex x = 0; x < s.size(); ++x) map[x] = s.f_pow(x, k);
  return FiniteSystem(s.point_set(), s.metric_rows(), std::move(map));
}

Rational gamma_k(const FiniteSystem& s, long k, const Rational& e) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  if (e.sign() < 0) throw Error(ErrorCode::InvalidArgument, "e must be >= 0");
  const std::size_t n = s.size();
  // Spread of each pair over the first k steps.
  std::vector<std::pair<Rational, Rational>> pairs;  // (d, spread)
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = x + 1; y < n; ++y) {
      Rational spread(0);
      PointIndex a = x, b = y;
      for (long i = 0; i < k; ++i) {
        spread = max(spread, s.d(a, b));
        a = s.f(a);
        b = s.f(b);
      }
      pairs.emplace_back(s.d(x, y), std::move(spread));
    }
  }
  Rational best(0);
  for (const Rational& t : realized_distances(s)) {
    const bool ok = std::all_of(pairs.begin(), pairs.end(),
                                [&](const auto& p) { return p.first > t || p.second <= e; });
    if (!ok) break;  // qualification is monotone in t
    best = t;
  }
  return best;
}

}  // namespace expobs
