#include "expobs/algebra.hpp"

#include <algorithm>
#include <set>

#include "expobs/parallel.hpp"

namespace expobs {

namespace {

template <typename Op>
Observable pointwise(const Observable& a, const Observable& b, Op op) {
  require_same_domain(a, b);
  std::vector<Gaussian> out;
  out.reserve(a.size());
  for (PointIndex i = 0; i < a.size(); ++i) out.push_back(op(a[i], b[i]));
  return Observable(a.domain_ptr(), std::move(out));
}

std::set<std::pair<PointIndex, PointIndex>> separated_pairs(const Observable& phi) {
  std::set<std::pair<PointIndex, PointIndex>> out;
  for (PointIndex i = 0; i < phi.size(); ++i) {
    for (PointIndex j = i + 1; j < phi.size(); ++j) {
      if (phi[i] != phi[j]) out.emplace(i, j);
    }
  }
  return out;
}

ExtRational ext_min(const ExtRational& a, const ExtRational& b) { return b < a ? b : a; }

}  // namespace

Observable add(const Observable& a, const Observable& b) {
  return pointwise(a, b, [](const Gaussian& x, const Gaussian& y) { return x + y; });
}

Observable multiply(const Observable& a, const Observable& b) {
  return pointwise(a, b, [](const Gaussian& x, const Gaussian& y) { return x * y; });
}

Observable scale(const Gaussian& lambda, const Observable& a) {
  std::vector<Gaussian> out;
  out.reserve(a.size());
  for (PointIndex i = 0; i < a.size(); ++i) out.push_back(lambda * a[i]);
  return Observable(a.domain_ptr(), std::move(out));
}

Observable conjugate(const Observable& a) {
  std::vector<Gaussian> out;
  out.reserve(a.size());
  for (PointIndex i = 0; i < a.size(); ++i) out.push_back(a[i].conj());
  return Observable(a.domain_ptr(), std::move(out));
}

const std::vector<Gaussian>& observable_palette() {
  static const std::vector<Gaussian> palette = {
      Gaussian(0), Gaussian(1), Gaussian(0, 1), Gaussian(1, 1), Gaussian(Rational(1, 2))};
  return palette;
}

std::uint64_t ObservableSampler::below(std::uint64_t bound) {
  // Rejection sampling on the raw engine output keeps the draw identical
  // across standard library implementations.
  const std::uint64_t limit = std::mt19937_64::max() - (std::mt19937_64::max() % bound + 1) % bound;
  std::uint64_t v;
  do {
    v = rng_();
  } while (v > limit);
  return v % bound;
}

Observable ObservableSampler::observable(const FiniteSystem& s) {
  const std::size_t n = s.size();
  const std::uint64_t blocks = 1 + below(n);
  const auto& palette = observable_palette();
  std::vector<Gaussian> block_value(blocks);
  for (auto& v : block_value) v = palette[below(palette.size())];
  std::vector<Gaussian> values(n);
  for (auto& v : values) v = block_value[below(blocks)];
  return Observable(s.point_set(), std::move(values));
}

Gaussian ObservableSampler::scalar() {
  static const std::vector<Gaussian> scalars = {Gaussian(0),    Gaussian(1), Gaussian(0, 1),
                                                Gaussian(1, 1), Gaussian(Rational(1, 2)), Gaussian(2)};
  return scalars[below(scalars.size())];
}

LawReport law_suite(const FiniteSystem& s, std::uint64_t seed, std::size_t trials, unsigned workers) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  const OrbitDistanceTable table(s);

  struct TrialResult {
    std::size_t checks = 0;
    std::vector<LawViolation> violations;
    std::vector<LawViolation> sigma;
  };
  std::vector<TrialResult> results(trials);

  parallel_for(trials, workers, [&](std::size_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    std::uint64_t trial_seed = 0;
    {
      std::uint32_t words[2];
      seq.generate(words, words + 2);
      trial_seed = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
    }
    ObservableSampler sampler(trial_seed);
    const Observable phi = sampler.observable(s);
    const Observable psi = sampler.observable(s);
    const Gaussian lambda = sampler.scalar();
    const Gaussian c = observable_palette()[sampler.below(observable_palette().size())];

    TrialResult& r = results[trial];
    const ExtRational dphi = delta_star(table, phi);
    const ExtRational dpsi = delta_star(table, psi);
    const ExtRational floor = ext_min(dphi, dpsi);
    auto check = [&](bool ok, const char* law, const std::string& detail) {
      ++r.checks;
      if (!ok) r.violations.push_back({trial, law, detail});
    };

    const ExtRational dsum = delta_star(table, add(phi, psi));
    check(dsum >= floor, "sum", "delta*(phi+psi)=" + dsum.str() + " < min=" + floor.str());
    const ExtRational dprod = delta_star(table, multiply(phi, psi));
    check(dprod >= floor, "product", "delta*(phi*psi)=" + dprod.str() + " < min=" + floor.str());
    const ExtRational dscaled = delta_star(table, scale(lambda, phi));
    const ExtRational expected_scaled = lambda == Gaussian(0) ? ExtRational::infinity() : dphi;
    check(dscaled == expected_scaled, "scalar",
          "lambda=" + lambda.str() + " delta*=" + dscaled.str() + " expected " + expected_scaled.str());
    const ExtRational dconj = delta_star(table, conjugate(phi));
    check(dconj == dphi, "conjugate", "delta*(conj phi)=" + dconj.str() + " != " + dphi.str());
    const ExtRational dshift = delta_star(table, add(Observable::constant(s, c), phi));
    check(dshift == dphi, "constant-shift", "delta*(c+phi)=" + dshift.str() + " != " + dphi.str());

    const ExtRational sphi = sigma_star_squared(s, phi);
    const ExtRational spsi = sigma_star_squared(s, psi);
    const ExtRational ssum = sigma_star_squared(s, add(phi, psi));
    if (ssum < ext_min(sphi, spsi)) {
      r.sigma.push_back({trial, "sigma-sum",
                         "sigma*^2(phi+psi)=" + ssum.str() + " < min(" + sphi.str() + "," + spsi.str() + ")"});
    }
  });

  LawReport report;
  report.seed = seed;
  report.trials = trials;
  for (auto& r : results) {
    report.checks += r.checks;
    for (auto& v : r.violations) report.violations.push_back(std::move(v));
    for (auto& v : r.sigma) report.sigma_sum_observations.push_back(std::move(v));
  }
  return report;
}

LimitReport limit_stability_check(const FiniteSystem& s, const std::vector<Observable>& sequence,
                                  const Rational& delta, const std::optional<Observable>& limit) {
  if (sequence.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "a limit check needs at least two observables");
  }
  const OrbitDistanceTable table(s);
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const ExtRational d = delta_star(table, sequence[i]);
    if (!(d > ExtRational(delta))) {
      throw Error(ErrorCode::InvalidArgument, "element " + std::to_string(i) + " has delta*=" + d.str() +
                                                  " which is not above " + delta.str());
    }
  }
  if (separated_pairs(sequence[sequence.size() - 2]) != separated_pairs(sequence.back())) {
    throw Error(ErrorCode::NonConvergent, "separation pattern of the last two elements differs");
  }
  const Observable& lim = limit ? *limit : sequence.back();
  require_domain(s, lim);
  if (limit) {
    std::optional<Rational> previous;
    for (std::size_t i = 0; i < sequence.size(); ++i) {
      Rational err(0);
      for (PointIndex z = 0; z < s.size(); ++z) err = max(err, (sequence[i][z] - lim[z]).norm2());
      if (previous && err > *previous) {
        throw Error(ErrorCode::NonConvergent,
                    "distance to the limit increases at element " + std::to_string(i));
      }
      previous = err;
    }
  }
  const Quotient q = indistinguishability_quotient(table, delta);
  bool constant = true;
  for (const auto& block : q.partition.blocks) {
    for (PointIndex p : block) constant = constant && lim[p] == lim[block.front()];
  }
  return LimitReport{lim, delta, delta_star(table, lim), constant};
}

Conjugacy::Conjugacy(FiniteSystem source, FiniteSystem target, std::vector<PointIndex> h)
    : source_(std::move(source)), target_(std::move(target)), h_(std::move(h)) {
  const std::size_t n = source_.size();
  if (target_.size() != n || h_.size() != n) {
    throw Error(ErrorCode::NotAConjugacy, "h must be a bijection between equally sized spaces");
  }
  h_inv_.assign(n, n);
  for (PointIndex y = 0; y < n; ++y) {
    if (h_[y] >= n || h_inv_[h_[y]] != n) throw Error(ErrorCode::NotAConjugacy, "h is not a bijection");
    h_inv_[h_[y]] = y;
  }
  for (PointIndex y = 0; y < n; ++y) {
    if (target_.f(h_[y]) != h_[source_.f(y)]) {
      throw Error(ErrorCode::NotAConjugacy, "f(h(" + source_.points()[y] + ")) != h(g(" +
                                                source_.points()[y] + "))");
    }
  }
}

bool Conjugacy::is_isometry() const {
  for (PointIndex a = 0; a < source_.size(); ++a) {
    for (PointIndex b = a + 1; b < source_.size(); ++b) {
      if (source_.d(a, b) != target_.d(h_[a], h_[b])) return false;
    }
  }
  return true;
}

Observable transport(const Conjugacy& c, const Observable& phi) {
  require_domain(c.target(), phi);
  std::vector<Gaussian> out;
  out.reserve(c.source().size());
  for (PointIndex y = 0; y < c.source().size(); ++y) out.push_back(phi[c.h(y)]);
  return Observable(c.source().point_set(), std::move(out));
}

Observable transport_back(const Conjugacy& c, const Observable& psi) {
  require_domain(c.source(), psi);
  std::vector<Gaussian> out;
  out.reserve(c.target().size());
  for (PointIndex x = 0; x < c.target().size(); ++x) out.push_back(psi[c.h_inverse(x)]);
  return Observable(c.target().point_set(), std::move(out));
}

Rational conjugacy_modulus(const Conjugacy& c, const Rational& t) {
  Rational best(0);
  const auto& y = c.source();
  for (PointIndex a = 0; a < y.size(); ++a) {
    for (PointIndex b = a + 1; b < y.size(); ++b) {
      if (y.d(a, b) <= t) best = max(best, c.target().d(c.h(a), c.h(b)));
    }
  }
  return best;
}

ConjugacyReport conjugacy_invariance_report(const Conjugacy& c, std::uint64_t seed, std::size_t samples,
                                            const std::vector<Observable>& extra) {
  ConjugacyReport report;
  report.isometry = c.is_isometry();
  const OrbitDistanceTable target_table(c.target());
  const OrbitDistanceTable source_table(c.source());
  for (const Rational& t : realized_distances(c.source())) {
    report.modulus.emplace_back(t, conjugacy_modulus(c, t));
  }

  for (const auto& [t, w] : report.modulus) {
    const Partition ys = indistinguishability_quotient(source_table, t).partition;
    const Partition xs = indistinguishability_quotient(target_table, w).partition;
    for (const auto& block : ys.blocks) {
      const std::size_t image = xs.block_of(c.h(block.front()));
      for (PointIndex y : block) {
        if (xs.block_of(c.h(y)) != image) {
          report.violations.push_back("Y-block at t=" + t.str() + " splits in the X-quotient at " + w.str());
          break;
        }
      }
    }
  }

  std::vector<Observable> phis = extra;
  ObservableSampler sampler(seed);
  for (std::size_t i = 0; i < samples; ++i) phis.push_back(sampler.observable(c.target()));
  for (auto& phi : phis) {
    const Observable hphi = transport(c, phi);
    const ExtRational df = delta_star(target_table, phi);
    const ExtRational dg = delta_star(source_table, hphi);
    for (const auto& [t, w] : report.modulus) {
      if (ExtRational(w) < df && !(dg > ExtRational(t))) {
        report.violations.push_back("omega_h(" + t.str() + ")=" + w.str() + " < delta*_f=" + df.str() +
                                    " but delta*_g(H phi)=" + dg.str());
      }
    }
    if (report.isometry && df != dg) {
      report.violations.push_back("isometric conjugacy changed delta*: " + df.str() + " vs " + dg.str());
    }
    report.observations.push_back({std::move(phi), df, dg});
  }
  return report;
}

}  // namespace expobs
