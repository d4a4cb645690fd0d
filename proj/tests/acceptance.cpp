// Runs every acceptance criterion, prints one PASS/FAIL line each, and exits
// nonzero if any fails. Each criterion produces a text report; the whole set
// is run again on 8 workers and the reports must match byte for byte.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "expobs/algebra.hpp"
#include "expobs/circle.hpp"
#include "expobs/io.hpp"
#include "expobs/parallel.hpp"
#include "expobs/report.hpp"
#include "expobs/symbolic.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace expobs;
namespace sym = expobs::symbolic;

namespace {

struct Outcome {
  bool pass = true;
  std::string report;
};

class Log {
 public:
  void line(const std::string& s) { out_ << s << '\n'; }
  void fail(const std::string& s) {
    pass_ = false;
    out_ << "FAIL " << s << '\n';
  }
  void expect(bool ok, const std::string& s) {
    if (!ok) fail(s);
  }
  // Per-item logs are joined in index order after a parallel loop.
  void merge(const std::vector<Log>& parts) {
    for (const auto& p : parts) {
      out_ << p.out_.str();
      pass_ = pass_ && p.pass_;
    }
  }
  Outcome done() const { return {pass_, out_.str()}; }

 private:
  std::ostringstream out_;
  bool pass_ = true;
};

const std::vector<FiniteSystem>& corpus() {
  static const auto c = fixtures::corpus(200, 1000);
  return c;
}

std::vector<Observable> sampled(const FiniteSystem& s, std::uint64_t seed, int count) {
  fixtures::TestRng rng(seed);
  std::vector<Observable> out;
  for (int i = 0; i < count; ++i) out.push_back(fixtures::random_observable(s, rng));
  return out;
}

template <class Body>
void per_system(Log& log, std::size_t n, unsigned workers, Body body) {
  std::vector<Log> parts(n);
  parallel_for(n, workers, [&](std::size_t i) { body(i, parts[i]); });
  log.merge(parts);
}

// e* equals the least delta* over the distance observables.
Outcome criterion1(unsigned workers) {
  Log log;
  per_system(log, corpus().size(), workers, [](std::size_t i, Log& l) {
    const auto& s = corpus()[i];
    const OrbitDistanceTable t(s);
    ExtRational best = ExtRational::infinity();
    for (PointIndex x = 0; x < s.size(); ++x) {
      const auto d = delta_star(t, distance_observable(s, x));
      if (d < best) best = d;
    }
    const Rational es = e_star(t);
    const Rational oracle_es = oracle::e_star(oracle::table(s));
    l.line("system " + std::to_string(i) + " n=" + std::to_string(s.size()) + " e*=" + es.str() +
           " min_x delta*=" + best.str());
    l.expect(ExtRational(es) == best && es == oracle_es, "system " + std::to_string(i) + ": oracle e*=" + oracle_es.str());
  });
  return log.done();
}

// delta*(phi) > delta exactly when phi satisfies the expansivity implication
// at delta, exactly when phi is constant on the quotient blocks at delta.
Outcome criterion2(unsigned workers) {
  Log log;
  per_system(log, corpus().size(), workers, [](std::size_t i, Log& l) {
    const auto& s = corpus()[i];
    const OrbitDistanceTable t(s);
    const auto ot = oracle::table(s);
    const auto deltas = oracle::realized(ot);
    std::size_t checks = 0;
    for (const auto& phi : sampled(s, 5000 + i, 5)) {
      const ExtRational ds = delta_star(t, phi);
      for (const auto& d : deltas) {
        const bool member = ds > ExtRational(d);
        const bool brute = oracle::expansive_with(ot, phi, d);
        const auto q = indistinguishability_quotient(t, d);
        bool on_blocks = true;
        for (const auto& b : q.partition.blocks)
          for (PointIndex p : b) on_blocks = on_blocks && phi[p] == phi[b.front()];
        ++checks;
        l.expect(member == brute && member == on_blocks, "system " + std::to_string(i) + " delta=" + d.str());
      }
    }
    l.line("system " + std::to_string(i) + " thresholds=" + std::to_string(deltas.size()) +
           " checks=" + std::to_string(checks));
  });
  return log.done();
}

// Subalgebra laws over 1000 sampled triples per named system and 1000 across
// the corpus.
Outcome criterion3(unsigned workers) {
  Log log;
  const std::vector<std::pair<std::string, FiniteSystem>> named{
      {"L4", fixtures::l4()}, {"R8", fixtures::r8()}, {"CAT5", fixtures::cat5()}};
  for (const auto& [name, s] : named) {
    const auto rep = law_suite(s, 42, 1000, workers);
    log.line(name + " trials=" + std::to_string(rep.trials) + " checks=" + std::to_string(rep.checks) +
             " violations=" + std::to_string(rep.violations.size()) +
             " sigma_sum_observations=" + std::to_string(rep.sigma_sum_observations.size()));
    for (const auto& v : rep.violations) log.fail(name + " trial " + std::to_string(v.trial) + " " + v.law + ": " + v.detail);
  }
  std::size_t trials = 0, checks = 0;
  std::vector<LawReport> reports(corpus().size());
  parallel_for(corpus().size(), workers, [&](std::size_t i) { reports[i] = law_suite(corpus()[i], 7000 + i, 5); });
  for (std::size_t i = 0; i < reports.size(); ++i) {
    trials += reports[i].trials;
    checks += reports[i].checks;
    for (const auto& v : reports[i].violations)
      log.fail("corpus " + std::to_string(i) + " trial " + std::to_string(v.trial) + " " + v.law + ": " + v.detail);
  }
  log.line("corpus trials=" + std::to_string(trials) + " checks=" + std::to_string(checks));
  return log.done();
}

// delta* is the same for f and f^-1; f^k can only shrink it, but not below
// gamma_k(e) for realized e < delta*_f.
Outcome criterion4(unsigned workers) {
  Log log;
  per_system(log, corpus().size(), workers, [](std::size_t i, Log& l) {
    const auto& s = corpus()[i];
    const OrbitDistanceTable t(s);
    const OrbitDistanceTable inv(power_system(s, -1));
    std::vector<OrbitDistanceTable> powers;
    for (long k : {2L, 3L, 5L}) powers.emplace_back(power_system(s, k));
    const auto realized = oracle::realized(oracle::table(s));
    std::vector<std::vector<Rational>> gammas;
    for (long k : {2L, 3L, 5L}) {
      gammas.emplace_back();
      for (const auto& e : realized) gammas.back().push_back(gamma_k(s, k, e));
    }
    std::size_t checks = 0;
    for (const auto& phi : sampled(s, 9000 + i, 5)) {
      const ExtRational ds = delta_star(t, phi);
      ++checks;
      l.expect(delta_star(inv, phi) == ds, "system " + std::to_string(i) + ": inverse");
      for (std::size_t p = 0; p < powers.size(); ++p) {
        const ExtRational dk = delta_star(powers[p], phi);
        ++checks;
        l.expect(dk <= ds, "system " + std::to_string(i) + ": power exceeds");
        for (std::size_t r = 0; r < realized.size(); ++r) {
          if (!(ExtRational(realized[r]) < ds)) continue;
          ++checks;
          l.expect(dk > ExtRational(gammas[p][r]),
                   "system " + std::to_string(i) + ": gamma at e=" + realized[r].str());
        }
      }
    }
    l.line("system " + std::to_string(i) + " checks=" + std::to_string(checks));
  });
  return log.done();
}

// Isometric grids collapse to one block at their own resolution.
Outcome criterion5(unsigned workers) {
  Log log;
  const std::vector<std::size_t> sizes{5, 8, 12};
  per_system(log, sizes.size() + 1, workers, [&](std::size_t i, Log& l) {
    const std::size_t n = i < sizes.size() ? sizes[i] : 8;
    const auto s = i < sizes.size() ? fixtures::zn(n, 1) : fixtures::r8();
    const std::string name = i < sizes.size() ? "Z/" + std::to_string(n) : "R8";
    const Rational h(1, static_cast<long>(n));
    const auto q = indistinguishability_quotient(s, h);
    l.line(name + " h=" + h.str() + " blocks=" + std::to_string(q.partition.blocks.size()));
    l.expect(q.partition.single_block(), name + ": more than one block");
    const OrbitDistanceTable t(s);
    for (const auto& phi : sampled(s, 300 + i, 40))
      l.expect((delta_star(t, phi) > ExtRational(h)) == phi.is_constant(), name + ": expansive nonconstant observable");
  });
  return log.done();
}

// omega(h) < e* together with h-chain-connectedness forces a single point.
Outcome criterion6(unsigned workers) {
  Log log;
  const std::size_t isometric = 400;
  std::vector<FiniteSystem> systems;
  for (std::size_t i = 0; i < isometric; ++i) systems.push_back(fixtures::random_isometric_system(20000 + i));
  for (const auto& s : corpus()) systems.push_back(s);
  std::vector<std::size_t> premises(systems.size(), 0), cases(systems.size(), 0);
  per_system(log, systems.size(), workers, [&](std::size_t i, Log& l) {
    const auto& s = systems[i];
    if (s.size() < 2) return;
    const OrbitDistanceTable t(s);
    if (i < isometric) {
      for (PointIndex x = 0; x < s.size(); ++x)
        for (PointIndex y = 0; y < s.size(); ++y) l.expect(t(x, y) == s.d(x, y), "isometric " + std::to_string(i) + ": D != d");
    }
    auto hs = realized_distances(s);
    hs.push_back(mesh(s) / Rational(2));
    const Rational es = e_star(t);
    for (const auto& h : hs) {
      ++cases[i];
      const bool connected = chain_components(s, h).single_block();
      if (omega_map(t, h) < es && connected) {
        ++premises[i];
        l.fail("system " + std::to_string(i) + " h=" + h.str() + ": premise holds with " + std::to_string(s.size()) +
               " points");
      }
    }
  });
  std::size_t total_cases = 0, total_premises = 0, singletons = 0;
  for (std::size_t i = 0; i < systems.size(); ++i) {
    total_cases += cases[i];
    total_premises += premises[i];
    singletons += systems[i].size() < 2 ? 1 : 0;
  }
  log.line("systems=" + std::to_string(systems.size()) + " singletons=" + std::to_string(singletons) +
           " cases=" + std::to_string(total_cases) + " counterexamples=" + std::to_string(total_premises));
  return log.done();
}

Outcome criterion7(unsigned) {
  Log log;
  const auto s = fixtures::cat5();
  const Rational es = e_star(s);
  const auto ot = oracle::table(s);
  log.line("CAT5 e*=" + es.str() + " mesh=" + mesh(s).str() + " pairs=" + std::to_string(oracle::realized(ot).size()));
  log.expect(es == Rational(2, 5), "e* is not 2/5");
  log.expect(es == oracle::e_star(ot), "pair oracle disagrees");
  log.expect(es == oracle::cat5_e_star(), "difference-cycle oracle disagrees");
  log.expect(es > mesh(s), "not above the mesh");
  std::size_t pairs = 0;
  const OrbitDistanceTable t(s);
  for (PointIndex x = 0; x < s.size(); ++x)
    for (PointIndex y = x + 1; y < s.size(); ++y) {
      ++pairs;
      log.expect(t(x, y) == ot(x, y), "table entry " + std::to_string(x) + "," + std::to_string(y));
    }
  log.line("pairs compared=" + std::to_string(pairs));
  return log.done();
}

// Relabeled isometric conjugates share delta*; doubling the metric doubles it.
Outcome criterion8(unsigned workers) {
  Log log;
  per_system(log, corpus().size(), workers, [](std::size_t i, Log& l) {
    const auto& x = corpus()[i];
    fixtures::TestRng rng(11000 + i);
    const auto h = rng.permutation(x.size());
    const Conjugacy c(fixtures::relabeled(x, h, "r"), x, h);
    const OrbitDistanceTable tx(x), ty(c.source());
    const auto obs = sampled(x, 12000 + i, 5);
    std::string spectrum;
    for (const auto& phi : obs) {
      const auto a = delta_star(tx, phi);
      const auto b = delta_star(ty, transport(c, phi));
      spectrum += " " + a.str();
      l.expect(a == b, "system " + std::to_string(i) + ": spectra differ");
    }
    const auto rep = conjugacy_invariance_report(c, 13000 + i, 5, obs);
    l.expect(rep.passed() && rep.isometry, "system " + std::to_string(i) + ": invariance report");
    l.line("system " + std::to_string(i) + " spectrum" + spectrum);
  });
  const auto l4 = fixtures::l4();
  std::vector<PointIndex> id(l4.size());
  for (PointIndex p = 0; p < id.size(); ++p) id[p] = p;
  const Conjugacy doubled(fixtures::scaled(l4, Rational(2)), l4, id);
  const OrbitDistanceTable tx(l4), ty(doubled.source());
  auto obs = sampled(l4, 14000, 30);
  obs.push_back(fixtures::real_obs(l4, {0, 0, 1, 1}));
  obs.push_back(fixtures::real_obs(l4, {0, 1, 2, 3}));
  std::string spectrum;
  for (const auto& phi : obs) {
    const auto a = delta_star(tx, phi);
    const auto b = delta_star(ty, transport(doubled, phi));
    const ExtRational twice = a.is_finite() ? ExtRational(a.value() * Rational(2)) : a;
    spectrum += " " + a.str() + "->" + b.str();
    log.expect(b == twice, "L4 doubled: " + a.str() + " -> " + b.str());
  }
  log.line("L4 doubled" + spectrum);
  return log.done();
}

// Pairs of f^k-fixed points closer than delta*_{f^k} carry equal values.
Outcome criterion9(unsigned workers) {
  Log log;
  per_system(log, corpus().size(), workers, [](std::size_t i, Log& l) {
    const auto& s = corpus()[i];
    std::string counts;
    for (long k = 1; k <= 6; ++k) {
      const auto ot = oracle::table(s, k);
      std::vector<PointIndex> fixed;
      for (PointIndex x = 0; x < s.size(); ++x) {
        PointIndex y = x;
        for (long j = 0; j < k; ++j) y = s.map()[y];
        if (y == x) fixed.push_back(x);
      }
      for (const auto& phi : sampled(s, 15000 + i * 10 + k, 5)) {
        const auto rep = periodic_level_report(s, phi, k);
        const auto ds = oracle::delta_star(ot, phi);
        bool agree = true;
        for (PointIndex a : fixed)
          for (PointIndex b : fixed)
            if (ExtRational(s.d(a, b)) < ds && phi[a] != phi[b]) agree = false;
        std::vector<Gaussian> distinct;
        for (PointIndex a : fixed)
          if (std::find(distinct.begin(), distinct.end(), phi[a]) == distinct.end()) distinct.push_back(phi[a]);
        l.expect(agree && rep.levels_agree && rep.violations.empty(),
                 "system " + std::to_string(i) + " k=" + std::to_string(k) + ": level violation");
        l.expect(rep.fixed == fixed && rep.power_delta_star == ds && rep.distinct_values.size() == distinct.size(),
                 "system " + std::to_string(i) + " k=" + std::to_string(k) + ": oracle mismatch");
        counts += " " + std::to_string(rep.distinct_values.size());
      }
    }
    l.line("system " + std::to_string(i) + " distinct" + counts);
  });
  return log.done();
}

std::vector<sym::CylinderObservable> cylinder_family() {
  const std::string ab = "01";
  std::vector<sym::CylinderObservable> out;
  for (long w = 0; w <= 2; ++w) out.push_back(sym::CylinderObservable::injective(ab, w));
  out.push_back(sym::CylinderObservable::coordinate(ab));
  auto words = [&](long w) {
    std::vector<std::string> ws;
    const std::size_t len = static_cast<std::size_t>(2 * w + 1);
    for (unsigned m = 0; m < (1u << len); ++m) {
      std::string s;
      for (std::size_t b = len; b-- > 0;) s += (m >> b) & 1u ? '1' : '0';
      ws.push_back(s);
    }
    return ws;
  };
  for (long w = 0; w <= 1; ++w) {
    const auto ws = words(w);
    for (unsigned mask = 0; mask < (1u << ws.size()); ++mask) {
      std::map<sym::Word, Gaussian> table;
      for (std::size_t j = 0; j < ws.size(); ++j) table.emplace(ws[j], Gaussian(Rational((mask >> j) & 1u)));
      out.emplace_back(ab, w, std::move(table));
    }
  }
  fixtures::TestRng rng(16000);
  const auto ws = words(2);
  for (int r = 0; r < 64; ++r) {
    std::map<sym::Word, Gaussian> table;
    for (const auto& word : ws) table.emplace(word, Gaussian(Rational(static_cast<long>(rng.below(4)))));
    out.emplace_back(ab, 2, std::move(table));
  }
  return out;
}

// Dynamical balls sit inside the observable stable sets; the full shift has
// an asymptotic pair on which every sampled observable converges.
Outcome criterion10(unsigned workers) {
  Log log;
  const std::size_t bound = 8;
  const auto points = sym::enumerate_points("01", bound);
  log.line("enumerated=" + std::to_string(points.size()));
  log.expect(points.size() >= 2000, "fewer points than expected");
  const auto family = cylinder_family();
  log.line("observables=" + std::to_string(family.size()));
  const std::vector<sym::EPPoint> centers{sym::EPPoint::periodic("0"), sym::EPPoint::periodic("01")};
  const std::vector<Rational> radii{Rational(1), Rational(1, 2), Rational(1, 4)};
  const std::vector<sym::Side> sides{sym::Side::Stable, sym::Side::Unstable};
  struct Case {
    std::size_t center, radius, side;
  };
  std::vector<Case> cases;
  for (std::size_t c = 0; c < centers.size(); ++c)
    for (std::size_t r = 0; r < radii.size(); ++r)
      for (std::size_t s = 0; s < sides.size(); ++s) cases.push_back({c, r, s});

  per_system(log, cases.size(), workers, [&](std::size_t i, Log& l) {
    const auto& [c, r, sd] = cases[i];
    const auto& x = centers[c];
    const auto side = sides[sd];
    // The ball does not depend on the observable, so it is filtered once.
    std::vector<sym::EPPoint> ball;
    for (const auto& y : points)
      if (sym::in_dynamical_ball(x, y, radii[r], side)) ball.push_back(y);
    std::size_t checked = 0;
    for (const auto& phi : family) {
      const auto rep = sym::check_ball_inclusion(x, phi, radii[r], side, ball);
      ++checked;
      l.expect(rep.passed() && rep.in_ball == ball.size(),
               "center " + x.str() + " eps=" + radii[r].str() + ": counterexample");
    }
    // Independent replay with the finest observable, which refines every other one in the family.
    const auto& phi = family[2];
    std::size_t replayed = 0;
    for (const auto& y : ball) {
      ++replayed;
      l.expect(oracle::phi_asymptotic(x, y, phi, side == sym::Side::Stable),
               "center " + x.str() + ": oracle rejects " + y.str());
    }
    l.line("center=" + x.str() + " eps=" + radii[r].str() + " side=" + (side == sym::Side::Stable ? "s" : "u") +
           " ball=" + std::to_string(ball.size()) + " observables=" + std::to_string(checked) +
           " replayed=" + std::to_string(replayed));
  });

  const auto [x, y] = sym::find_asymptotic_pair(sym::Subshift{"01", {}}, bound);
  log.line("pair " + x.str() + " " + y.str());
  log.expect(x == sym::EPPoint::periodic("0") && y == sym::EPPoint("0", "1", "0", 0), "unexpected asymptotic pair");
  log.expect(x != y && sym::stable_equiv(x, y, sym::Side::Stable), "pair is not stable-equivalent");
  fixtures::TestRng rng(17000);
  for (int k = 0; k < 20; ++k) {
    const auto& phi = family[rng.below(family.size())];
    const bool lib = sym::obs_stable_equiv(x, y, phi, sym::Side::Stable);
    const bool brute = oracle::phi_asymptotic(x, y, phi, true);
    log.expect(lib && brute, "limit fails for sample " + std::to_string(k));
  }
  log.line("limit verified for 20 sampled observables");
  return log.done();
}

Outcome criterion11(unsigned) {
  Log log;
  const auto f = fixtures::m0();
  const auto cert = circle::certify(f, Rational(1, 16), {"M0", 64, 100000});
  const auto text = io::dump(io::to_json(cert));
  const auto replay = circle::verify_certificate(io::certificate_from_json(io::parse_json(text)));
  log.line("probe=[" + cert.probe.lo.str() + ", " + cert.probe.hi.str() + "] horizon=" + std::to_string(cert.horizon) +
           " threshold=" + cert.map_threshold.str());
  log.line("verify checks=" + std::to_string(replay.checks) + " violations=" + std::to_string(replay.violations.size()));
  log.expect(replay.passed(), "replay reported violations");
  const circle::PLObservable identity{{Rational(0), Rational(1)}, {Rational(0), Rational(1)}, {}};
  const Rational gap = circle::separation_gap(cert, identity);
  log.line("gap=" + gap.str());
  log.expect(gap > Rational(0), "gap is not positive");
  const auto rc = circle::analyze_rotation_case(circle::PLCircleMap::rotation(Rational(3, 8)));
  const auto q = indistinguishability_quotient(rc.grid, Rational(1, 8));
  log.line("rotation 3/8 grid=" + std::to_string(rc.grid_size) + " resolution=" + rc.resolution.str() +
           " blocks=" + std::to_string(q.partition.blocks.size()));
  log.expect(rc.grid_size == 8 && rc.resolution == Rational(1, 8), "grid is not Z/8 at 1/8");
  log.expect(rc.grid.metric_rows() == fixtures::r8().metric_rows(), "grid metric differs from R8");
  log.expect(rc.single_block && q.partition.single_block() && rc.quotient_equals_chain, "grid quotient splits");
  return log.done();
}

Outcome criterion12(unsigned) {
  Log log;
  const auto c = circle::interval_pipeline(fixtures::m0_interval(), Rational(1, 16), {"fix-0-half-1", 64, 100000});
  const auto v = circle::verify_certificate(io::certificate_from_json(io::to_json(c)));
  log.line("component=(" + c.component.lo.str() + ", " + c.component.hi.str() + ") probe=[" + c.probe.lo.str() + ", " +
           c.probe.hi.str() + "] violations=" + std::to_string(v.violations.size()));
  log.expect(v.passed(), "interval certificate rejected");
  auto all_fixed = [&](const circle::PLIntervalMap& g, const std::string& name, bool square) {
    try {
      circle::interval_pipeline(g, Rational(1, 16));
      log.fail(name + ": accepted");
    } catch (const Error& e) {
      const bool via_square = std::string(e.what()).find("q=2") != std::string::npos;
      log.line(name + ": " + std::string(to_string(e.code())) + (via_square ? " via square" : ""));
      log.expect(e.code() == ErrorCode::AllFixed && via_square == square, name + ": wrong failure");
    }
  };
  all_fixed(fixtures::interval_identity(), "identity", false);
  all_fixed(fixtures::interval_reflection(), "reflection", true);
  return log.done();
}

struct Criterion {
  int number;
  double limit_seconds;
  std::function<Outcome(unsigned)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, 10, criterion1}, {2, 0, criterion2},  {3, 0, criterion3},   {4, 0, criterion4},
      {5, 0, criterion5},  {6, 0, criterion6},  {7, 1, criterion7},   {8, 0, criterion8},
      {9, 0, criterion9},  {10, 30, criterion10}, {11, 5, criterion11}, {12, 0, criterion12},
  };
  std::filesystem::path report_dir;
  if (argc > 1) {
    report_dir = argv[1];
    std::filesystem::create_directories(report_dir);
  }

  bool all = true;
  std::vector<std::string> serial;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(1);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what() + "\n"};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_seconds == 0 || seconds < c.limit_seconds;
    const bool pass = o.pass && in_time;
    all = all && pass;
    serial.push_back(o.report);
    std::printf("criterion %2d: %s (%.2f s%s)\n", c.number, pass ? "PASS" : "FAIL", seconds,
                in_time ? "" : ", over the time limit");
    if (!o.pass) {
      std::istringstream lines(o.report);
      std::string line;
      int shown = 0;
      while (std::getline(lines, line) && shown < 10)
        if (line.rfind("FAIL", 0) == 0 || line.rfind("exception", 0) == 0) {
          std::printf("    %s\n", line.c_str());
          ++shown;
        }
    }
    if (!report_dir.empty())
      io::write_text_file((report_dir / ("criterion" + std::to_string(c.number) + ".txt")).string(), o.report);
    std::fflush(stdout);
  }

  bool identical = true;
  std::string first_difference;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run(8);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what() + "\n"};
    }
    if (o.report != serial[i]) {
      identical = false;
      if (first_difference.empty()) first_difference = "criterion " + std::to_string(criteria[i].number);
    }
  }
  all = all && identical;
  std::printf("criterion 13: %s (8 workers%s)\n", identical ? "PASS" : "FAIL",
              identical ? ", all reports byte-identical" : (", first difference in " + first_difference).c_str());
  return all ? 0 : 1;
}
