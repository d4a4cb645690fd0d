#pragma once

#include <string_view>
#include <vector>

#include "expobs/system.hpp"

namespace expobs {

/// D(x, y) = max over i in Z of d(f^i x, f^i y).
///
/// D is the least threshold for which the orbits of x and y stay
/// delta-close at every time, so an observable satisfies
///
///     D(x, y) <= delta  ==>  phi(x) = phi(y)
///
/// exactly when delta < delta_star(phi). The table is f-invariant and
/// dominates the metric entrywise.
class OrbitDistanceTable {
 public:
  explicit OrbitDistanceTable(const FiniteSystem& s);

  const FiniteSystem& system() const { return system_; }
  std::size_t size() const { return system_.size(); }
  const Rational& operator()(PointIndex x, PointIndex y) const { return table_[x * size() + y]; }

  /// Number of distinct pair-cycles walked while building the table.
  std::size_t cycle_count() const { return cycles_; }

 private:
  FiniteSystem system_;
  std::vector<Rational> table_;
  std::size_t cycles_ = 0;
};

/// A partition of the points into blocks. Blocks are ordered by their first
/// member and members within a block are in document order.
struct Partition {
  std::vector<std::vector<PointIndex>> blocks;

  std::size_t block_of(PointIndex p) const;
  bool single_block() const { return blocks.size() == 1; }
  bool all_singletons() const;
  friend bool operator==(const Partition&, const Partition&) = default;
};

struct Quotient {
  Rational threshold;
  Partition partition;
};

/// Walks the cycle of (x, y) under (a, b) -> (f a, f b); the forward cycle is
/// the whole Z-orbit because the pair map is a permutation.
Rational pair_orbit_sup(const FiniteSystem& s, PointIndex x, PointIndex y);
Rational pair_orbit_sup(const FiniteSystem& s, std::string_view x, std::string_view y);

OrbitDistanceTable orbit_distance_table(const FiniteSystem& s);

/// min over distinct pairs of D; the system is expansive at resolution h iff
/// e_star > h.
Rational e_star(const OrbitDistanceTable& t);
Rational e_star(const FiniteSystem& s);

/// min { D(x, y) : phi(x) != phi(y) }, +inf for constants. phi satisfies the
/// expansivity implication with constant delta iff delta < delta_star.
ExtRational delta_star(const OrbitDistanceTable& t, const Observable& phi);
ExtRational delta_star(const FiniteSystem& s, const Observable& phi);

/// Squared strong expansivity constant: min over phi-separated pairs of
/// max_i |phi(f^i x) - phi(f^i y)|^2, +inf for constants. phi is strongly
/// expansive with constant eps iff eps^2 < the returned value.
ExtRational sigma_star_squared(const FiniteSystem& s, const Observable& phi);

/// Equicontinuity modulus max { D(x, y) : d(x, y) <= t }; 0 when vacuous.
Rational omega_map(const OrbitDistanceTable& t, const Rational& threshold);
Rational omega_map(const FiniteSystem& s, const Rational& threshold);

/// Squared continuity modulus of phi: max { |phi(a) - phi(b)|^2 : d(a, b) <= t }.
Rational omega_obs(const FiniteSystem& s, const Observable& phi, const Rational& threshold);

/// Components of the graph with an edge {x, y} iff D(x, y) <= delta. An
/// observable has delta_star > delta iff it is constant on every block.
Quotient indistinguishability_quotient(const OrbitDistanceTable& t, const Rational& delta);
Quotient indistinguishability_quotient(const FiniteSystem& s, const Rational& delta);

/// Components of the graph with an edge {x, y} iff d(x, y) <= t.
Partition chain_components(const FiniteSystem& s, const Rational& threshold);

/// delta_x = min { D(x, y) : y != x } for every point, in document order.
std::vector<Rational> pointwise_constants(const OrbitDistanceTable& t);

/// { x : f^k(x) = x }, k >= 1.
std::vector<PointIndex> fixed_points(const FiniteSystem& s, long k);

struct PeriodicLevelReport {
  long k = 1;
  std::vector<PointIndex> fixed;
  std::vector<Gaussian> distinct_values;
  /// delta_star of phi for the power system f^k.
  ExtRational power_delta_star = ExtRational::infinity();
  /// Every pair of Fix(f^k) with d < power_delta_star has equal values.
  bool levels_agree = true;
  std::vector<std::pair<PointIndex, PointIndex>> violations;
};

PeriodicLevelReport periodic_level_report(const FiniteSystem& s, const Observable& phi, long k);

/// Same points and metric, map f^k. k must be nonzero.
FiniteSystem power_system(const FiniteSystem& s, long k);

/// Largest realized distance t such that every pair with d(x, y) <= t keeps
/// max_{0 <= i < k} d(f^i x, f^i y) <= e; 0 when no realized t qualifies.
Rational gamma_k(const FiniteSystem& s, long k, const Rational& e);

}  // namespace expobs
