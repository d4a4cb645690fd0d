#pragma once

#include <optional>
#include <string>
#include <vector>

#include "expobs/relation.hpp"

namespace expobs::circle {

/// Closed interval [lo, hi]; lo == hi is a single point.
struct Interval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  bool is_point() const { return lo == hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Degree-one lift F of an orientation-preserving piecewise-linear circle
/// homeomorphism: linear between consecutive breakpoints of [0, 1), and
/// F(x + 1) = F(x) + 1.
class PLCircleMap {
 public:
  PLCircleMap(std::vector<Rational> breakpoints, std::vector<Rational> lift_values);

  /// x -> x + rho.
  static PLCircleMap rotation(const Rational& rho);

  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const std::vector<Rational>& lift_values() const { return values_; }

  Rational operator()(const Rational& x) const;
  Rational inverse(const Rational& y) const;

  /// (*this) o inner.
  PLCircleMap compose(const PLCircleMap& inner) const;
  /// F^q for q >= 1.
  PLCircleMap power(long q) const;
  /// x -> F(x) - p.
  PLCircleMap translated(long p) const;
  /// x -> F(x + c) - c.
  PLCircleMap conjugated_by_rotation(const Rational& c) const;

  bool is_rigid() const;
  Rational max_slope() const;
  /// Breakpoints of the lift lying strictly inside (lo, hi).
  std::vector<Rational> breakpoints_between(const Rational& lo, const Rational& hi) const;

  friend bool operator==(const PLCircleMap&, const PLCircleMap&) = default;

 private:
  std::pair<Rational, Rational> next_vertex(std::size_t j) const;

  std::vector<Rational> breaks_;
  std::vector<Rational> values_;
};

/// Increasing or decreasing piecewise-linear homeomorphism of [0, 1];
/// breakpoints run from 0 to 1 inclusive.
class PLIntervalMap {
 public:
  PLIntervalMap(std::vector<Rational> breakpoints, std::vector<Rational> values);

  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const std::vector<Rational>& values() const { return values_; }
  bool is_increasing() const { return values_.front() < values_.back(); }
  bool is_identity() const { return breaks_ == values_; }

  Rational operator()(const Rational& x) const;
  Rational inverse(const Rational& y) const;
  PLIntervalMap compose(const PLIntervalMap& inner) const;
  Rational max_slope() const;

  /// The degree-one lift of an increasing map (0 and 1 become the same fixed
  /// point of the circle). InvalidArgument for decreasing maps.
  PLCircleMap to_lift() const;

  friend bool operator==(const PLIntervalMap&, const PLIntervalMap&) = default;

 private:
  std::vector<Rational> breaks_;
  std::vector<Rational> values_;
};

struct RotationNumber {
  long p = 0;
  long q = 1;
  Rational value() const { return Rational(p, q); }
};

/// The reduced p/q with q <= q_max such that F^q(x) - x - p has a zero,
/// decided exactly from the values of F^q at its breakpoints. nullopt when
/// no periodic orbit of period <= q_max exists.
std::optional<RotationNumber> rotation_number(const PLCircleMap& f, long q_max);

/// Solutions of G(x) = x + p in [0, 1) as merged closed intervals; an
/// interval ending at 1 stands for [lo, 1).
std::vector<Interval> solve_translation(const PLCircleMap& g, long p);

/// Solutions of F^q(x) = x + p in [0, 1). InconsistentRotationNumber if empty.
std::vector<Interval> periodic_points(const PLCircleMap& f, long p, long q);

/// Open interval (lo, hi) in lift coordinates, 0 <= lo < 1, free of fixed
/// points of g. direction is +1 if g moves points toward hi, -1 toward lo.
struct WanderingComponent {
  Rational lo;
  Rational hi;
  int direction = 0;
  Rational length() const { return hi - lo; }
};

struct WanderingAnalysis {
  RotationNumber rotation;
  PLCircleMap g;  // F^q - p
  std::vector<Interval> fixed;
  std::vector<WanderingComponent> components;
};

/// Components of the circle minus Fix(g), g = F^q - p. Each consists of
/// points wandering for g. NoPeriodicOrbit when no rational rotation number
/// with denominator <= q_max exists.
WanderingAnalysis wandering_intervals(const PLCircleMap& f, long q_max = 64);

/// Components of [0, 1] minus Fix(g) for an increasing lift g of an
/// interval map.
std::vector<WanderingComponent> components_of_complement(const PLCircleMap& g, const std::vector<Interval>& fixed);

struct PropertyPReport {
  WanderingComponent component;
  Interval probe;
  long n_max = 0;
  std::vector<Interval> forward;   // g^n(U), n = 0..n_max
  std::vector<Interval> backward;  // g^-n(U), n = 0..n_max
  bool disjoint = false;
  Rational total_length;
  /// First n from which diameters are non-increasing (n_max if never).
  long forward_monotone_from = 0;
  long backward_monotone_from = 0;
  bool passed() const;
};

/// Checks property (P) on a probe U inside a wandering component J of g:
/// pairwise disjoint iterates for |n| <= n_max, total length <= |J|, and
/// eventually monotone diameters in both directions. NotWandering if U
/// meets a fixed point or its iterates overlap; InvalidArgument if U is not
/// inside J.
PropertyPReport property_P_check(const PLCircleMap& g, const WanderingComponent& j, const Interval& probe,
                                 long n_max);
/// Same, locating g and J from F.
PropertyPReport property_P_check(const PLCircleMap& f, const Interval& component, const Interval& probe,
                                 long n_max, long q_max = 64);

enum class Space { Circle, Interval };
enum class TailKind {
  /// |J| <= delta: every iterate lies in J.
  ContainedInComponent,
  /// g^N U and g^-N U sit in the affine pieces adjacent to the limiting
  /// fixed points, where g (resp. g^-1) contracts.
  AffineContraction,
};

struct TraceEntry {
  long n = 0;
  Interval image;  // g^n(U)
};

/// Replayable witness that every observable with expansivity constant
/// >= delta for g = F^q - p is constant on U, hence that the expansive
/// observables do not separate the points of U.
struct Certificate {
  std::string map_id;
  Space space = Space::Circle;
  std::optional<PLCircleMap> circle_map;
  std::optional<PLIntervalMap> interval_map;
  RotationNumber rotation;
  WanderingComponent component;
  Interval probe;
  Rational delta;
  long horizon = 0;
  std::vector<TraceEntry> trace;  // n = -horizon .. horizon
  TailKind tail = TailKind::ContainedInComponent;
  /// Threshold for F itself: every observable whose F-expansivity constant
  /// is >= this value is constant on U.
  Rational map_threshold;
};

struct CertifyOptions {
  std::string map_id = "map";
  long q_max = 64;
  long n_max = 100000;
};

/// Picks the first wandering component J, starts from the middle third of
/// J and halves toward its midpoint until every |n| <= N iterate has
/// diameter <= delta and the trace is disjoint. NoWanderingInterval when
/// g has no wandering component, HorizonExceeded when n_max is too small.
Certificate certify(const PLCircleMap& f, const Rational& delta, const CertifyOptions& options = {});

/// Same for [0, 1]; a decreasing map is handled through its square (q = 2).
/// AllFixed when g is the identity.
Certificate interval_pipeline(const PLIntervalMap& f, const Rational& delta, const CertifyOptions& options = {});

struct VerifyReport {
  std::vector<std::string> violations;
  std::size_t checks = 0;
  bool passed() const { return violations.empty(); }
};

/// Replays a certificate from its map data alone.
VerifyReport verify_certificate(const Certificate& cert);

/// Real piecewise-linear function on [0, 1] (a chart of the circle; the
/// values at 0 and 1 may differ). Optional imaginary part on the same grid.
struct PLObservable {
  std::vector<Rational> breakpoints;
  std::vector<Rational> values;
  std::vector<Rational> imag_values;  // empty for real targets
};

/// osc_U(target) / 2: a lower bound on the sup-distance from `target` to any
/// observable that is constant on U. Complex targets use
/// max(osc_re, osc_im) / 2.
Rational separation_gap(const Certificate& cert, const PLObservable& target);

struct RotationCaseReport {
  RotationNumber rotation;
  std::size_t grid_size = 0;
  FiniteSystem grid;
  bool isometry = false;
  Rational resolution;
  Quotient quotient;
  Partition chain;
  bool single_block = false;
  bool quotient_equals_chain = false;
};

/// Rigid rotation x -> x + p/q: an isometry, hence equicontinuous. The
/// finite pipeline runs on the orbit grid of n points (n the least multiple
/// of q that is >= min_grid) at threshold 1/n. NotRigid otherwise.
RotationCaseReport analyze_rotation_case(const PLCircleMap& f, std::size_t min_grid = 8);

std::string to_string(Space s);
std::string to_string(TailKind k);

}  // namespace expobs::circle
