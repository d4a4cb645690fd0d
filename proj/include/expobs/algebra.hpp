#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "expobs/relation.hpp"

namespace expobs {

// Pointwise algebra on C(X). All operands must share a domain.
Observable add(const Observable& a, const Observable& b);
Observable multiply(const Observable& a, const Observable& b);
Observable scale(const Gaussian& lambda, const Observable& a);
Observable conjugate(const Observable& a);

/// Seeded sampler of observables: a random partition of the points with
/// block values drawn from the palette {0, 1, i, 1+i, 1/2}. Small palettes
/// force value collisions, which is where the min-laws are tight.
class ObservableSampler {
 public:
  explicit ObservableSampler(std::uint64_t seed) : rng_(seed) {}

  Observable observable(const FiniteSystem& s);
  /// Scalar from {0, 1, i, 1+i, 1/2, 2}.
  Gaussian scalar();
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 rng_;
};

const std::vector<Gaussian>& observable_palette();

struct LawViolation {
  std::size_t trial = 0;
  std::string law;
  std::string detail;
};

struct LawReport {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t checks = 0;
  std::vector<LawViolation> violations;
  /// Observed failures of sigma*(phi + psi) >= min(sigma*(phi), sigma*(psi)).
  /// Recorded only: strongly expansive observables need not be closed under sums.
  std::vector<LawViolation> sigma_sum_observations;

  bool passed() const { return violations.empty(); }
};

/// Samples `trials` triples (phi, psi, lambda) and checks
///   delta*(phi + psi) >= min(delta*(phi), delta*(psi))
///   delta*(phi * psi) >= min(delta*(phi), delta*(psi))
///   delta*(lambda phi) = delta*(phi) for lambda != 0, +inf for lambda = 0
///   delta*(conj phi)   = delta*(phi)
///   delta*(c + phi)    = delta*(phi) for constant c
/// Trials may run on several workers; the report is independent of that.
LawReport law_suite(const FiniteSystem& s, std::uint64_t seed, std::size_t trials, unsigned workers = 1);

struct LimitReport {
  Observable limit;
  Rational threshold;
  ExtRational limit_delta_star;
  bool limit_constant_on_blocks = false;
  bool passed() const { return limit_constant_on_blocks; }
};

/// Closedness of C_delta(f): the pointwise limit of observables with
/// delta_star > delta again has delta_star > delta.
///
/// The sequence must have at least two elements, every element must satisfy
/// delta_star > delta (InvalidArgument otherwise), and the last two elements
/// must induce the same separated-pair set (NonConvergent otherwise). With no
/// explicit limit the last element is the limit; an explicit limit further
/// requires max_z |phi_i(z) - limit(z)|^2 to be non-increasing in i.
LimitReport limit_stability_check(const FiniteSystem& s, const std::vector<Observable>& sequence,
                                  const Rational& delta, const std::optional<Observable>& limit = std::nullopt);

/// h: Y -> X with f(h(y)) = h(g(y)); `source` is (Y, g), `target` is (X, f).
class Conjugacy {
 public:
  /// Throws NotAConjugacy if h is not a bijection or does not intertwine.
  Conjugacy(FiniteSystem source, FiniteSystem target, std::vector<PointIndex> h);

  const FiniteSystem& source() const { return source_; }
  const FiniteSystem& target() const { return target_; }
  PointIndex h(PointIndex y) const { return h_[y]; }
  PointIndex h_inverse(PointIndex x) const { return h_inv_[x]; }
  bool is_isometry() const;

 private:
  FiniteSystem source_;
  FiniteSystem target_;
  std::vector<PointIndex> h_;
  std::vector<PointIndex> h_inv_;
};

/// H(phi) = phi o h, an observable on the source.
Observable transport(const Conjugacy& c, const Observable& phi_on_target);
/// H^{-1}(psi) = psi o h^{-1}.
Observable transport_back(const Conjugacy& c, const Observable& psi_on_source);

/// omega_h(t) = max { d_X(h a, h b) : d_Y(a, b) <= t }.
Rational conjugacy_modulus(const Conjugacy& c, const Rational& t);

struct ConjugacyObservation {
  Observable phi;                 // on the target
  ExtRational target_delta_star;  // delta*_f(phi)
  ExtRational source_delta_star;  // delta*_g(H phi)
};

struct ConjugacyReport {
  std::vector<std::pair<Rational, Rational>> modulus;  // (t, omega_h(t)) over realized t of Y
  bool isometry = false;
  std::vector<ConjugacyObservation> observations;
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

/// For sampled phi on X and every realized t of Y with omega_h(t) <
/// delta*_f(phi), checks delta*_g(H phi) > t; for isometries checks equality
/// of delta*; and checks that every Y-quotient block at t maps into a single
/// X-quotient block at omega_h(t).
ConjugacyReport conjugacy_invariance_report(const Conjugacy& c, std::uint64_t seed, std::size_t samples,
                                            const std::vector<Observable>& extra = {});

}  // namespace expobs
