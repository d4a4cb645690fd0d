#include <algorithm>

#include "expobs/circle.hpp"

namespace expobs::circle {
namespace {

struct Attempt {
  Interval probe;
  long horizon = 0;
  std::vector<TraceEntry> trace;
  TailKind tail = TailKind::ContainedInComponent;
};

Interval image(const PLCircleMap& g, const Interval& u) { return {g(u.lo), g(u.hi)}; }
Interval preimage(const PLCircleMap& g, const Interval& u) { return {g.inverse(u.lo), g.inverse(u.hi)}; }

// g is affine between v and the fixed point it converges to under forward
// (resp. backward) iteration.
bool forward_settled(const PLCircleMap& g, const WanderingComponent& j, const Interval& v) {
  return j.direction > 0 ? g.breakpoints_between(v.lo, j.hi).empty() : g.breakpoints_between(j.lo, v.hi).empty();
}

bool backward_settled(const PLCircleMap& g, const WanderingComponent& j, const Interval& w) {
  return j.direction > 0 ? g.breakpoints_between(j.lo, w.hi).empty() : g.breakpoints_between(w.lo, j.hi).empty();
}

bool ordered_apart(const WanderingComponent& j, const Interval& earlier, const Interval& later) {
  return j.direction > 0 ? earlier.hi < later.lo : later.hi < earlier.lo;
}

std::vector<TraceEntry> build_trace(const PLCircleMap& g, const Interval& u, long horizon) {
  std::vector<Interval> back{u}, fwd{u};
  for (long n = 1; n <= horizon; ++n) {
    back.push_back(preimage(g, back.back()));
    fwd.push_back(image(g, fwd.back()));
  }
  std::vector<TraceEntry> trace;
  for (long n = horizon; n >= 1; --n) trace.push_back({-n, back[n]});
  for (long n = 0; n <= horizon; ++n) trace.push_back({n, fwd[n]});
  return trace;
}

Attempt construct(const PLCircleMap& g, const WanderingComponent& j, const Rational& delta, long n_max) {
  const Rational third = j.length() / Rational(3);
  Interval u{j.lo + third, j.hi - third};
  if (j.length() <= delta) return Attempt{u, 0, {{0, u}}, TailKind::ContainedInComponent};

  const Rational mid = (j.lo + j.hi) / Rational(2);
  for (int halvings = 0; halvings < 256; ++halvings) {
    long nf = 0, nb = 0;
    Interval v = u, w = u;
    while (!forward_settled(g, j, v)) {
      if (++nf > n_max) throw Error(ErrorCode::HorizonExceeded, "forward orbit not settled within n_max iterations");
      v = image(g, v);
    }
    while (!backward_settled(g, j, w)) {
      if (++nb > n_max) throw Error(ErrorCode::HorizonExceeded, "backward orbit not settled within n_max iterations");
      w = preimage(g, w);
    }
    const long horizon = std::max(nf, nb);
    auto trace = build_trace(g, u, horizon);
    bool ok = true;
    for (std::size_t i = 0; i < trace.size() && ok; ++i) {
      ok = trace[i].image.length() <= delta;
      if (ok && i + 1 < trace.size()) ok = ordered_apart(j, trace[i].image, trace[i + 1].image);
    }
    if (ok) return Attempt{u, horizon, std::move(trace), TailKind::AffineContraction};
    const Rational quarter = u.length() / Rational(4);
    u = {mid - quarter, mid + quarter};
  }
  throw Error(ErrorCode::HorizonExceeded, "no probe found after 256 halvings");
}

// Iterates of F (not g) applied to an interval, for i = 0..q-1, and their
// largest length.
struct Source {
  Space space;
  const PLCircleMap* circle = nullptr;
  const PLIntervalMap* interval = nullptr;

  Interval step(const Interval& u) const {
    if (circle) return image(*circle, u);
    const Rational a = (*interval)(u.lo), b = (*interval)(u.hi);
    return {min(a, b), max(a, b)};
  }
  Rational lipschitz() const { return circle ? circle->max_slope() : interval->max_slope(); }
};

Rational map_threshold(const Source& src, long q, const std::vector<TraceEntry>& trace, const Rational& tail_len) {
  Rational best;
  for (const TraceEntry& e : trace) {
    Interval v = e.image;
    for (long i = 0; i < q; ++i) {
      best = max(best, v.length());
      if (i + 1 < q) v = src.step(v);
    }
  }
  Rational lip_pow(1);
  const Rational lip = src.lipschitz();
  for (long i = 1; i < q; ++i) lip_pow *= lip;
  return max(best, lip_pow * tail_len);
}

Rational tail_length(const Certificate& c) {
  if (c.tail == TailKind::ContainedInComponent) return c.component.length();
  return max(c.trace.front().image.length(), c.trace.back().image.length());
}

Source source_of(const Certificate& c) {
  if (c.space == Space::Circle) {
    if (!c.circle_map) throw Error(ErrorCode::MalformedDocument, "circle certificate without a circle map");
    return Source{Space::Circle, &*c.circle_map, nullptr};
  }
  if (!c.interval_map) throw Error(ErrorCode::MalformedDocument, "interval certificate without an interval map");
  return Source{Space::Interval, nullptr, &*c.interval_map};
}

PLCircleMap interval_power_lift(const PLIntervalMap& f, long q) {
  PLIntervalMap h = f;
  for (long i = 1; i < q; ++i) h = f.compose(h);
  return h.to_lift();
}

Certificate finish(Certificate c, const PLCircleMap& g, const WanderingComponent& j, const Rational& delta,
                   long n_max) {
  Attempt a = construct(g, j, delta, n_max);
  c.component = j;
  c.probe = a.probe;
  c.delta = delta;
  c.horizon = a.horizon;
  c.trace = std::move(a.trace);
  c.tail = a.tail;
  c.map_threshold = map_threshold(source_of(c), c.rotation.q, c.trace, tail_length(c));
  return c;
}

}  // namespace

Certificate certify(const PLCircleMap& f, const Rational& delta, const CertifyOptions& options) {
  if (delta.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  auto analysis = wandering_intervals(f, options.q_max);
  if (analysis.components.empty())
    throw Error(ErrorCode::NoWanderingInterval, "g = F^" + std::to_string(analysis.rotation.q) +
                                                    " - " + std::to_string(analysis.rotation.p) +
                                                    " fixes every point; see the rotation case analysis");
  Certificate c;
  c.map_id = options.map_id;
  c.space = Space::Circle;
  c.circle_map = f;
  c.rotation = analysis.rotation;
  return finish(std::move(c), analysis.g, analysis.components.front(), delta, options.n_max);
}

Certificate interval_pipeline(const PLIntervalMap& f, const Rational& delta, const CertifyOptions& options) {
  if (delta.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  const long q = f.is_increasing() ? 1 : 2;
  const PLCircleMap g = interval_power_lift(f, q);
  const auto fixed = solve_translation(g, 0);
  const auto comps = components_of_complement(g, fixed);
  if (comps.empty())
    throw Error(ErrorCode::AllFixed, q == 1 ? std::string("every point of [0,1] is fixed by F")
                                            : std::string("every point of [0,1] is fixed by g = F^2 (q=2)"));
  Certificate c;
  c.map_id = options.map_id;
  c.space = Space::Interval;
  c.interval_map = f;
  c.rotation = RotationNumber{0, q};
  return finish(std::move(c), g, comps.front(), delta, options.n_max);
}

VerifyReport verify_certificate(const Certificate& cert) {
  VerifyReport r;
  auto check = [&r](bool ok, const std::string& what) {
    ++r.checks;
    if (!ok) r.violations.push_back(what);
  };

  std::optional<PLCircleMap> g;
  try {
    if (cert.rotation.q < 1) throw Error(ErrorCode::InvalidArgument, "q must be >= 1");
    if (cert.space == Space::Circle) {
      if (!cert.circle_map) throw Error(ErrorCode::MalformedDocument, "missing circle map");
      g = cert.circle_map->power(cert.rotation.q).translated(cert.rotation.p);
    } else {
      if (!cert.interval_map) throw Error(ErrorCode::MalformedDocument, "missing interval map");
      if (cert.rotation.p != 0 || cert.rotation.q > 2) throw Error(ErrorCode::InvalidArgument, "interval power must be 1 or 2");
      g = interval_power_lift(*cert.interval_map, cert.rotation.q);
    }
  } catch (const Error& e) {
    check(false, std::string("map: ") + e.what());
    return r;
  }

  const WanderingComponent& j = cert.component;
  check(cert.delta.sign() > 0, "delta > 0");
  check(cert.horizon >= 0, "horizon >= 0");
  check(j.lo < j.hi, "component is a nonempty interval");
  check(j.direction == 1 || j.direction == -1, "direction is +1 or -1");
  if (!r.passed()) return r;

  check((*g)(j.lo) == j.lo, "g fixes the left end of the component");
  check((*g)(j.hi) == j.hi, "g fixes the right end of the component");
  std::vector<Rational> probes = g->breakpoints_between(j.lo, j.hi);
  probes.push_back((j.lo + j.hi) / Rational(2));
  bool sign_ok = true;
  for (const Rational& x : probes) sign_ok = sign_ok && ((*g)(x) - x).sign() == j.direction;
  check(sign_ok, "g - id has constant sign on the component");
  if (cert.space == Space::Interval)
    check(Rational(0) <= j.lo && j.hi <= Rational(1), "component lies in [0,1]");

  check(cert.probe.lo <= cert.probe.hi && j.lo < cert.probe.lo && cert.probe.hi < j.hi, "probe inside the component");

  const auto expected = static_cast<std::size_t>(2 * cert.horizon + 1);
  check(cert.trace.size() == expected, "trace has 2N+1 entries");
  if (!r.passed()) return r;
  const auto replay = build_trace(*g, cert.probe, cert.horizon);
  for (std::size_t i = 0; i < replay.size(); ++i) {
    const auto& e = cert.trace[i];
    const std::string at = "trace n=" + std::to_string(replay[i].n);
    check(e.n == replay[i].n && e.image == replay[i].image, at + " replays exactly");
    check(e.image.length() <= cert.delta, at + " diameter " + e.image.length().str() + " <= delta " + cert.delta.str());
    if (i + 1 < replay.size()) check(ordered_apart(j, e.image, cert.trace[i + 1].image), at + " disjoint from successor");
  }

  const Interval& first = cert.trace.front().image;
  const Interval& last = cert.trace.back().image;
  if (cert.tail == TailKind::ContainedInComponent) {
    check(j.length() <= cert.delta, "component length <= delta");
  } else {
    check(forward_settled(*g, j, last), "g affine between g^N U and its limiting fixed point");
    check(backward_settled(*g, j, first), "g affine between g^-N U and its limiting fixed point");
    const Rational& fwd_fix = j.direction > 0 ? j.hi : j.lo;
    const Rational& bwd_fix = j.direction > 0 ? j.lo : j.hi;
    const Rational fwd_slope = ((*g)(last.lo) - (*g)(last.hi)) / (last.lo - last.hi);
    const Rational bwd_slope = ((*g)(first.lo) - (*g)(first.hi)) / (first.lo - first.hi);
    if (last.lo != last.hi) check(fwd_slope < Rational(1), "g contracts toward " + fwd_fix.str());
    if (first.lo != first.hi) check(bwd_slope > Rational(1), "g^-1 contracts toward " + bwd_fix.str());
  }

  const Rational threshold = map_threshold(source_of(cert), cert.rotation.q, cert.trace, tail_length(cert));
  check(threshold == cert.map_threshold, "map threshold " + cert.map_threshold.str() + " recomputes");
  return r;
}

}  // namespace expobs::circle
