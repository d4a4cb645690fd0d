#include "expobs/report.hpp"

#include <algorithm>

#include "expobs/parallel.hpp"

namespace expobs {
namespace {

using io::Json;

Json ids_of(const FiniteSystem& s, const std::vector<PointIndex>& members) {
  Json a = Json::array();
  for (PointIndex p : members) a.push_back(s.points()[p]);
  return a;
}

Json values_of(const Observable& phi) {
  Json v = Json::object();
  for (PointIndex i = 0; i < phi.size(); ++i) v[phi.domain()[i]] = io::to_json(phi[i]);
  return v;
}

Observable indicator(const FiniteSystem& s, const std::vector<PointIndex>& block) {
  std::vector<Gaussian> v(s.size(), Gaussian(Rational(0)));
  for (PointIndex p : block) v[p] = Gaussian(Rational(1));
  return Observable(s.point_set(), std::move(v));
}

struct ObservableRow {
  ExtRational dstar = ExtRational::infinity();
  ExtRational sigma2 = ExtRational::infinity();
  std::vector<PeriodicLevelReport> levels;
};

}  // namespace

std::string tool_version() { return EXPOBS_VERSION; }

Json analyze_report(const FiniteSystem& s, const std::vector<Observable>& observables, const AnalyzeOptions& options) {
  for (const auto& phi : observables) require_domain(s, phi);
  if (options.max_period < 1) throw Error(ErrorCode::InvalidArgument, "max period must be >= 1");
  const OrbitDistanceTable table(s);
  const Rational h = options.resolution ? *options.resolution : mesh(s);
  if (h.sign() < 0) throw Error(ErrorCode::InvalidArgument, "resolution must be nonnegative");
  const Rational es = e_star(table);

  std::vector<Rational> thresholds{h};
  for (const auto& t : options.thresholds)
    if (std::find(thresholds.begin(), thresholds.end(), t) == thresholds.end()) thresholds.push_back(t);
  std::vector<Quotient> quotients;
  for (const auto& t : thresholds) quotients.push_back(indistinguishability_quotient(table, t));

  std::vector<std::pair<std::string, Observable>> named;
  for (std::size_t i = 0; i < observables.size(); ++i) named.emplace_back("input[" + std::to_string(i) + "]", observables[i]);
  if (options.generators)
    for (std::size_t b = 0; b < quotients.front().partition.blocks.size(); ++b)
      named.emplace_back("block_indicator[" + std::to_string(b) + "]", indicator(s, quotients.front().partition.blocks[b]));

  std::vector<ObservableRow> rows(named.size());
  parallel_for(named.size(), options.workers, [&](std::size_t i) {
    const Observable& phi = named[i].second;
    rows[i].dstar = delta_star(table, phi);
    rows[i].sigma2 = sigma_star_squared(s, phi);
    for (long k = 1; k <= options.max_period; ++k) rows[i].levels.push_back(periodic_level_report(s, phi, k));
  });

  Json r;
  r["kind"] = "analysis";
  r["provenance"] = {{"tool", "expobs"}, {"version", tool_version()}, {"seed", options.seed}};
  r["system"] = io::to_json(s);

  const auto pointwise = pointwise_constants(table);
  const auto realized = realized_distances(s);
  Json summary;
  summary["points"] = s.size();
  summary["mesh"] = mesh(s).str();
  summary["realized_distances"] = Json::array();
  for (const auto& t : realized) summary["realized_distances"].push_back(t.str());
  summary["orbit_pair_cycles"] = table.cycle_count();
  r["summary"] = std::move(summary);

  r["resolution"] = h.str();
  r["e_star"] = es.str();
  Json pw = Json::object();
  bool pointwise_ok = true;
  for (PointIndex i = 0; i < s.size(); ++i) {
    pw[s.points()[i]] = pointwise[i].str();
    pointwise_ok = pointwise_ok && pointwise[i] > h;
  }
  r["pointwise_constants"] = std::move(pw);

  Json omega = Json::array();
  for (const auto& t : realized) omega.push_back({{"t", t.str()}, {"omega", omega_map(table, t).str()}});
  const Rational omega_h = omega_map(table, h);
  r["flags"] = {
      {"expansive_at_resolution", es > h},
      {"pointwise_at_resolution", pointwise_ok},
      {"separating_at_resolution", quotients.front().partition.all_singletons()},
      {"omega_at_resolution", omega_h.str()},
      {"equicontinuity_modulus", std::move(omega)},
  };

  Json obs = Json::array();
  for (std::size_t i = 0; i < named.size(); ++i) {
    Json o;
    o["name"] = named[i].first;
    o["values"] = values_of(named[i].second);
    o["delta_star"] = rows[i].dstar.str();
    o["sigma_star_squared"] = rows[i].sigma2.str();
    o["expansive_at_resolution"] = rows[i].dstar > ExtRational(h);
    obs.push_back(std::move(o));
  }
  r["observables"] = std::move(obs);

  Json qs = Json::array();
  for (const auto& q : quotients) {
    Json blocks = Json::array();
    for (const auto& b : q.partition.blocks) blocks.push_back(ids_of(s, b));
    Json edges = Json::array();
    for (PointIndex a = 0; a < s.size(); ++a)
      for (PointIndex b = a + 1; b < s.size(); ++b)
        if (table(a, b) <= q.threshold) edges.push_back({s.points()[a], s.points()[b], table(a, b).str()});
    qs.push_back({{"threshold", q.threshold.str()}, {"blocks", std::move(blocks)}, {"edges", std::move(edges)}});
  }
  r["quotients"] = std::move(qs);

  Json levels = Json::array();
  for (std::size_t i = 0; i < named.size(); ++i)
    for (const auto& lv : rows[i].levels) {
      Json distinct = Json::array();
      for (const auto& v : lv.distinct_values) distinct.push_back(io::to_json(v));
      Json viol = Json::array();
      for (const auto& [a, b] : lv.violations) viol.push_back({s.points()[a], s.points()[b]});
      levels.push_back({{"observable", named[i].first},
                        {"k", lv.k},
                        {"fixed", ids_of(s, lv.fixed)},
                        {"distinct_values", std::move(distinct)},
                        {"power_delta_star", lv.power_delta_star.str()},
                        {"holds", lv.levels_agree},
                        {"violations", std::move(viol)}});
    }
  r["periodic_levels"] = std::move(levels);
  return r;
}

Json law_report_json(const LawReport& rep) {
  auto list = [](const std::vector<LawViolation>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) a.push_back({{"trial", v.trial}, {"law", v.law}, {"detail", v.detail}});
    return a;
  };
  Json r;
  r["kind"] = "laws";
  r["provenance"] = {{"tool", "expobs"}, {"version", tool_version()}, {"seed", rep.seed}};
  r["trials"] = rep.trials;
  r["checks"] = rep.checks;
  r["passed"] = rep.passed();
  r["violations"] = list(rep.violations);
  r["sigma_sum_observations"] = list(rep.sigma_sum_observations);
  return r;
}

}  // namespace expobs
