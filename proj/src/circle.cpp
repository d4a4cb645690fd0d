#include "expobs/circle.hpp"

#include <algorithm>
#include <numeric>

namespace expobs::circle {
namespace {

long to_long(const mpz_class& z) {
  if (!z.fits_slong_p()) throw Error(ErrorCode::InvalidArgument, "integer out of range: " + z.get_str());
  return z.get_si();
}

Rational floor_of(const Rational& x) { return Rational(mpq_class(x.floor())); }

// Drops interior vertices whose neighbouring slopes agree. `closing` is the
// vertex after the last one.
void drop_collinear(std::vector<Rational>& xs, std::vector<Rational>& vs, const std::pair<Rational, Rational>& closing) {
  std::vector<Rational> kx{xs.front()}, kv{vs.front()};
  for (std::size_t j = 1; j < xs.size(); ++j) {
    const Rational& nx = j + 1 < xs.size() ? xs[j + 1] : closing.first;
    const Rational& nv = j + 1 < xs.size() ? vs[j + 1] : closing.second;
    const Rational left = (vs[j] - kv.back()) / (xs[j] - kx.back());
    const Rational right = (nv - vs[j]) / (nx - xs[j]);
    if (left != right) {
      kx.push_back(xs[j]);
      kv.push_back(vs[j]);
    }
  }
  xs = std::move(kx);
  vs = std::move(kv);
}

void sort_unique(std::vector<Rational>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

}  // namespace

PLCircleMap::PLCircleMap(std::vector<Rational> breakpoints, std::vector<Rational> lift_values)
    : breaks_(std::move(breakpoints)), values_(std::move(lift_values)) {
  if (breaks_.empty() || breaks_.size() != values_.size())
    throw Error(ErrorCode::MalformedDocument, "breakpoints and lift_values must be nonempty and of equal length");
  if (!breaks_.front().is_zero()) throw Error(ErrorCode::MalformedDocument, "first breakpoint must be 0");
  for (std::size_t j = 0; j < breaks_.size(); ++j) {
    if (breaks_[j] >= Rational(1)) throw Error(ErrorCode::MalformedDocument, "breakpoints must lie in [0,1)");
    if (j > 0 && breaks_[j] <= breaks_[j - 1])
      throw Error(ErrorCode::MalformedDocument, "breakpoints must be strictly increasing");
    if (j > 0 && values_[j] <= values_[j - 1])
      throw Error(ErrorCode::MalformedDocument, "lift must be strictly increasing (at breakpoint " + breaks_[j].str() + ")");
  }
  if (values_.back() >= values_.front() + 1)
    throw Error(ErrorCode::MalformedDocument, "lift must be strictly increasing across 1 (F(1) = F(0) + 1)");
}

PLCircleMap PLCircleMap::rotation(const Rational& rho) { return PLCircleMap({Rational(0)}, {rho}); }

std::pair<Rational, Rational> PLCircleMap::next_vertex(std::size_t j) const {
  if (j + 1 < breaks_.size()) return {breaks_[j + 1], values_[j + 1]};
  return {Rational(1), values_.front() + 1};
}

Rational PLCircleMap::operator()(const Rational& x) const {
  const Rational n = floor_of(x);
  const Rational t = x - n;
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  const auto j = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  const auto [bx, bv] = next_vertex(j);
  return values_[j] + (t - breaks_[j]) * (bv - values_[j]) / (bx - breaks_[j]) + n;
}

Rational PLCircleMap::inverse(const Rational& y) const {
  const Rational n = floor_of(y - values_.front());
  const Rational t = y - n;
  const auto it = std::upper_bound(values_.begin(), values_.end(), t);
  const auto j = static_cast<std::size_t>(it - values_.begin()) - 1;
  const auto [bx, bv] = next_vertex(j);
  return breaks_[j] + (t - values_[j]) * (bx - breaks_[j]) / (bv - values_[j]) + n;
}

PLCircleMap PLCircleMap::compose(const PLCircleMap& inner) const {
  std::vector<Rational> xs = inner.breaks_;
  const Rational y0 = inner(Rational(0));
  for (const Rational& b : breaks_) {
    const Rational y = b + Rational(mpq_class((y0 - b).ceil()));
    const Rational x = inner.inverse(y);
    if (x < Rational(1)) xs.push_back(x);
  }
  sort_unique(xs);
  std::vector<Rational> vs;
  vs.reserve(xs.size());
  for (const Rational& x : xs) vs.push_back((*this)(inner(x)));
  drop_collinear(xs, vs, {Rational(1), vs.front() + 1});
  return PLCircleMap(std::move(xs), std::move(vs));
}

PLCircleMap PLCircleMap::power(long q) const {
  if (q < 1) throw Error(ErrorCode::InvalidArgument, "power must be >= 1");
  PLCircleMap result = *this;
  for (long i = 1; i < q; ++i) result = compose(result);
  return result;
}

PLCircleMap PLCircleMap::translated(long p) const {
  std::vector<Rational> vs = values_;
  for (Rational& v : vs) v -= Rational(p);
  return PLCircleMap(breaks_, std::move(vs));
}

PLCircleMap PLCircleMap::conjugated_by_rotation(const Rational& c) const {
  std::vector<Rational> xs;
  for (const Rational& b : breaks_) {
    const Rational s = b - c;
    xs.push_back(s - floor_of(s));
  }
  xs.push_back(Rational(0));
  sort_unique(xs);
  std::vector<Rational> vs;
  for (const Rational& x : xs) vs.push_back((*this)(x + c) - c);
  drop_collinear(xs, vs, {Rational(1), vs.front() + 1});
  return PLCircleMap(std::move(xs), std::move(vs));
}

bool PLCircleMap::is_rigid() const {
  for (std::size_t j = 0; j < breaks_.size(); ++j)
    if (values_[j] - breaks_[j] != values_.front()) return false;
  return true;
}

Rational PLCircleMap::max_slope() const {
  Rational best;
  for (std::size_t j = 0; j < breaks_.size(); ++j) {
    const auto [bx, bv] = next_vertex(j);
    best = j == 0 ? (bv - values_[j]) / (bx - breaks_[j]) : max(best, (bv - values_[j]) / (bx - breaks_[j]));
  }
  return best;
}

std::vector<Rational> PLCircleMap::breakpoints_between(const Rational& lo, const Rational& hi) const {
  std::vector<Rational> out;
  const long k0 = to_long(lo.floor());
  const long k1 = to_long(hi.ceil());
  for (long k = k0; k <= k1; ++k)
    for (const Rational& b : breaks_) {
      const Rational x = b + Rational(k);
      if (lo < x && x < hi) out.push_back(x);
    }
  return out;
}

PLIntervalMap::PLIntervalMap(std::vector<Rational> breakpoints, std::vector<Rational> values)
    : breaks_(std::move(breakpoints)), values_(std::move(values)) {
  if (breaks_.size() < 2 || breaks_.size() != values_.size())
    throw Error(ErrorCode::MalformedDocument, "interval map needs at least two breakpoints and matching values");
  if (!breaks_.front().is_zero() || breaks_.back() != Rational(1))
    throw Error(ErrorCode::MalformedDocument, "breakpoints must run from 0 to 1");
  const bool up = values_.front().is_zero() && values_.back() == Rational(1);
  const bool down = values_.front() == Rational(1) && values_.back().is_zero();
  if (!up && !down) throw Error(ErrorCode::MalformedDocument, "interval map must send {0, 1} onto {0, 1}");
  for (std::size_t j = 1; j < breaks_.size(); ++j) {
    if (breaks_[j] <= breaks_[j - 1])
      throw Error(ErrorCode::MalformedDocument, "breakpoints must be strictly increasing");
    if (up ? values_[j] <= values_[j - 1] : values_[j] >= values_[j - 1])
      throw Error(ErrorCode::MalformedDocument, "interval map must be strictly monotone");
  }
}

Rational PLIntervalMap::operator()(const Rational& x) const {
  if (x < Rational(0) || x > Rational(1)) throw Error(ErrorCode::InvalidArgument, "point outside [0,1]: " + x.str());
  if (x == Rational(1)) return values_.back();
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  const auto j = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  return values_[j] + (x - breaks_[j]) * (values_[j + 1] - values_[j]) / (breaks_[j + 1] - breaks_[j]);
}

Rational PLIntervalMap::inverse(const Rational& y) const {
  if (y < Rational(0) || y > Rational(1)) throw Error(ErrorCode::InvalidArgument, "point outside [0,1]: " + y.str());
  for (std::size_t j = 0; j + 1 < breaks_.size(); ++j) {
    const Rational& a = values_[j];
    const Rational& b = values_[j + 1];
    if ((a <= y && y <= b) || (b <= y && y <= a))
      return breaks_[j] + (y - a) * (breaks_[j + 1] - breaks_[j]) / (b - a);
  }
  throw Error(ErrorCode::InvalidArgument, "point outside the range: " + y.str());
}

PLIntervalMap PLIntervalMap::compose(const PLIntervalMap& inner) const {
  std::vector<Rational> xs = inner.breaks_;
  for (const Rational& b : breaks_) xs.push_back(inner.inverse(b));
  sort_unique(xs);
  std::vector<Rational> vs;
  for (const Rational& x : xs) vs.push_back((*this)(inner(x)));
  const std::pair<Rational, Rational> last{xs.back(), vs.back()};
  xs.pop_back();
  vs.pop_back();
  drop_collinear(xs, vs, last);
  xs.push_back(last.first);
  vs.push_back(last.second);
  return PLIntervalMap(std::move(xs), std::move(vs));
}

Rational PLIntervalMap::max_slope() const {
  Rational best;
  for (std::size_t j = 0; j + 1 < breaks_.size(); ++j)
    best = max(best, ((values_[j + 1] - values_[j]) / (breaks_[j + 1] - breaks_[j])).abs());
  return best;
}

PLCircleMap PLIntervalMap::to_lift() const {
  if (!is_increasing()) throw Error(ErrorCode::InvalidArgument, "only increasing interval maps have a degree-one lift");
  return PLCircleMap(std::vector<Rational>(breaks_.begin(), breaks_.end() - 1),
                     std::vector<Rational>(values_.begin(), values_.end() - 1));
}

std::optional<RotationNumber> rotation_number(const PLCircleMap& f, long q_max) {
  if (q_max < 1) throw Error(ErrorCode::InvalidArgument, "q_max must be >= 1");
  PLCircleMap g = f;
  for (long q = 1; q <= q_max; ++q) {
    if (q > 1) g = f.compose(g);
    Rational lo, hi;
    for (std::size_t j = 0; j < g.breakpoints().size(); ++j) {
      const Rational v = g.lift_values()[j] - g.breakpoints()[j];
      lo = j == 0 ? v : min(lo, v);
      hi = j == 0 ? v : max(hi, v);
    }
    const Rational p = Rational(mpq_class(lo.ceil()));
    if (p <= hi) {
      const long pl = to_long(p.numerator());
      const long d = std::gcd(pl, q);
      return RotationNumber{pl / d, q / d};
    }
  }
  return std::nullopt;
}

std::vector<Interval> solve_translation(const PLCircleMap& g, long p) {
  std::vector<Interval> found;
  const auto& bs = g.breakpoints();
  for (std::size_t j = 0; j < bs.size(); ++j) {
    const Rational a = bs[j];
    const Rational b = j + 1 < bs.size() ? bs[j + 1] : Rational(1);
    const Rational ha = g(a) - a - Rational(p);
    const Rational hb = g(b) - b - Rational(p);
    if (ha.is_zero() && hb.is_zero()) {
      found.push_back({a, b});
    } else if (ha.is_zero()) {
      found.push_back({a, a});
    } else if (hb.is_zero()) {
      found.push_back({b, b});
    } else if (ha.sign() != hb.sign()) {
      const Rational x = a + ha * (b - a) / (ha - hb);
      found.push_back({x, x});
    }
  }
  std::sort(found.begin(), found.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::vector<Interval> merged;
  for (const Interval& iv : found) {
    if (!merged.empty() && iv.lo <= merged.back().hi)
      merged.back().hi = max(merged.back().hi, iv.hi);
    else
      merged.push_back(iv);
  }
  if (merged.size() > 1 && merged.front().lo.is_zero() && merged.back() == Interval{Rational(1), Rational(1)})
    merged.pop_back();
  return merged;
}

std::vector<Interval> periodic_points(const PLCircleMap& f, long p, long q) {
  if (q < 1) throw Error(ErrorCode::InvalidArgument, "period must be >= 1");
  auto out = solve_translation(f.power(q), p);
  if (out.empty())
    throw Error(ErrorCode::InconsistentRotationNumber,
                "F^" + std::to_string(q) + "(x) = x + " + std::to_string(p) + " has no solution");
  return out;
}

std::vector<WanderingComponent> components_of_complement(const PLCircleMap& g, const std::vector<Interval>& fixed) {
  std::vector<WanderingComponent> out;
  if (fixed.empty()) return out;
  auto add = [&](const Rational& lo, const Rational& hi) {
    if (lo >= hi) return;
    const Rational mid = (lo + hi) / Rational(2);
    out.push_back({lo, hi, (g(mid) - mid).sign()});
  };
  for (std::size_t i = 0; i + 1 < fixed.size(); ++i) add(fixed[i].hi, fixed[i + 1].lo);
  add(fixed.back().hi, fixed.front().lo + 1);
  return out;
}

WanderingAnalysis wandering_intervals(const PLCircleMap& f, long q_max) {
  const auto rot = rotation_number(f, q_max);
  if (!rot)
    throw Error(ErrorCode::NoPeriodicOrbit, "no periodic orbit of period <= " + std::to_string(q_max));
  PLCircleMap g = f.power(rot->q).translated(rot->p);
  auto fixed = solve_translation(g, 0);
  if (fixed.empty()) throw Error(ErrorCode::InconsistentRotationNumber, "g has no fixed point");
  auto comps = components_of_complement(g, fixed);
  return WanderingAnalysis{*rot, std::move(g), std::move(fixed), std::move(comps)};
}

bool PropertyPReport::passed() const {
  return disjoint && total_length <= Rational(1) && total_length <= component.length() &&
         forward_monotone_from < n_max && backward_monotone_from < n_max;
}

namespace {

long monotone_from(const std::vector<Interval>& seq) {
  long n = static_cast<long>(seq.size()) - 1;
  while (n > 0 && seq[n - 1].length() >= seq[n].length()) --n;
  return n;
}

void require_no_fixed_point(const PLCircleMap& g, const Interval& u) {
  const auto fixed = solve_translation(g, 0);
  const long k0 = to_long(u.lo.floor()) - 1;
  const long k1 = to_long(u.hi.ceil());
  for (long k = k0; k <= k1; ++k)
    for (const Interval& c : fixed)
      if (c.lo + Rational(k) <= u.hi && u.lo <= c.hi + Rational(k))
        throw Error(ErrorCode::NotWandering, "probe [" + u.lo.str() + ", " + u.hi.str() + "] contains a fixed point of g");
}

}  // namespace

PropertyPReport property_P_check(const PLCircleMap& g, const WanderingComponent& j, const Interval& probe, long n_max) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
  if (probe.hi < probe.lo) throw Error(ErrorCode::InvalidArgument, "probe endpoints out of order");
  require_no_fixed_point(g, probe);
  if (!(j.lo < probe.lo && probe.hi < j.hi))
    throw Error(ErrorCode::InvalidArgument, "probe is not inside (" + j.lo.str() + ", " + j.hi.str() + ")");

  PropertyPReport r{j, probe, n_max, {}, {}, true, Rational(0), 0, 0};
  r.forward.push_back(probe);
  r.backward.push_back(probe);
  for (long n = 1; n <= n_max; ++n) {
    const Interval& f = r.forward.back();
    r.forward.push_back({g(f.lo), g(f.hi)});
    const Interval& b = r.backward.back();
    r.backward.push_back({g.inverse(b.lo), g.inverse(b.hi)});
  }
  // Endpoint orbits are monotone, so consecutive disjointness is pairwise disjointness.
  auto apart = [&](const Interval& earlier, const Interval& later) {
    return j.direction > 0 ? earlier.hi < later.lo : later.hi < earlier.lo;
  };
  for (long n = 0; n < n_max; ++n) {
    if (!apart(r.forward[n], r.forward[n + 1]) || !apart(r.backward[n + 1], r.backward[n]))
      throw Error(ErrorCode::NotWandering, "iterates " + std::to_string(n) + " and " + std::to_string(n + 1) +
                                               " of the probe overlap");
  }
  r.total_length = probe.length();
  for (long n = 1; n <= n_max; ++n) r.total_length += r.forward[n].length() + r.backward[n].length();
  r.forward_monotone_from = monotone_from(r.forward);
  r.backward_monotone_from = monotone_from(r.backward);
  return r;
}

PropertyPReport property_P_check(const PLCircleMap& f, const Interval& component, const Interval& probe, long n_max,
                                 long q_max) {
  const auto a = wandering_intervals(f, q_max);
  if (a.components.empty()) throw Error(ErrorCode::NoWanderingInterval, "g = F^q - p fixes every point");
  if (!(component.lo < probe.lo && probe.hi < component.hi)) {
    require_no_fixed_point(a.g, probe);
    throw Error(ErrorCode::InvalidArgument, "probe is not inside the given interval");
  }
  for (const auto& c : a.components)
    for (long k = -1; k <= 1; ++k)
      if (c.lo + Rational(k) <= component.lo && component.hi <= c.hi + Rational(k))
        return property_P_check(a.g, WanderingComponent{c.lo + Rational(k), c.hi + Rational(k), c.direction}, probe,
                                n_max);
  require_no_fixed_point(a.g, probe);
  throw Error(ErrorCode::InvalidArgument, "(" + component.lo.str() + ", " + component.hi.str() +
                                              ") is not inside a wandering component");
}

namespace {

Rational plo_eval(const std::vector<Rational>& xs, const std::vector<Rational>& vs, const Rational& t) {
  if (t == xs.back()) return vs.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), t);
  const auto j = static_cast<std::size_t>(it - xs.begin()) - 1;
  return vs[j] + (t - xs[j]) * (vs[j + 1] - vs[j]) / (xs[j + 1] - xs[j]);
}

Rational oscillation(const PLObservable& obs, const std::vector<Rational>& vs, const Interval& u) {
  std::vector<Rational> samples;
  const long k0 = to_long(u.lo.floor());
  const long k1 = std::max(k0, to_long(u.hi.ceil()) - 1);
  for (long k = k0; k <= k1; ++k) {
    const Rational s = max(u.lo, Rational(k)) - Rational(k);
    const Rational t = min(u.hi, Rational(k + 1)) - Rational(k);
    if (t < s) continue;
    samples.push_back(plo_eval(obs.breakpoints, vs, s));
    samples.push_back(plo_eval(obs.breakpoints, vs, t));
    for (std::size_t j = 0; j < obs.breakpoints.size(); ++j)
      if (s < obs.breakpoints[j] && obs.breakpoints[j] < t) samples.push_back(vs[j]);
  }
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  return *hi - *lo;
}

}  // namespace

Rational separation_gap(const Certificate& cert, const PLObservable& target) {
  const auto& xs = target.breakpoints;
  if (xs.size() < 2 || xs.size() != target.values.size() || !xs.front().is_zero() || xs.back() != Rational(1))
    throw Error(ErrorCode::MalformedDocument, "observable breakpoints must run from 0 to 1 with matching values");
  for (std::size_t j = 1; j < xs.size(); ++j)
    if (xs[j] <= xs[j - 1]) throw Error(ErrorCode::MalformedDocument, "observable breakpoints must be increasing");
  if (!target.imag_values.empty() && target.imag_values.size() != xs.size())
    throw Error(ErrorCode::MalformedDocument, "imaginary values must match the breakpoints");
  Rational osc = oscillation(target, target.values, cert.probe);
  if (!target.imag_values.empty()) osc = max(osc, oscillation(target, target.imag_values, cert.probe));
  return osc / Rational(2);
}

RotationCaseReport analyze_rotation_case(const PLCircleMap& f, std::size_t min_grid) {
  if (!f.is_rigid()) throw Error(ErrorCode::NotRigid, "the map is not a rigid rotation");
  if (min_grid < 2) throw Error(ErrorCode::InvalidArgument, "grid must have at least 2 points");
  const Rational rho = f(Rational(0));
  const long p = to_long(rho.numerator());
  const long q = to_long(rho.denominator());
  const auto qs = static_cast<std::size_t>(q);
  const std::size_t n = qs * ((min_grid + qs - 1) / qs);
  const Rational frac = rho - floor_of(rho);
  const auto step = static_cast<std::size_t>(to_long((frac * Rational(static_cast<long>(n))).numerator()));

  std::vector<std::string> ids;
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
  std::vector<PointIndex> map(n);
  const auto nl = static_cast<long>(n);
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back(Rational(static_cast<long>(i), nl).str());
    map[i] = (i + step) % n;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      rows[i][j] = Rational(static_cast<long>(std::min(gap, n - gap)), nl);
    }
  }
  FiniteSystem grid(std::move(ids), std::move(rows), std::move(map));
  const OrbitDistanceTable table(grid);
  bool iso = true;
  for (PointIndex i = 0; i < n && iso; ++i)
    for (PointIndex j = 0; j < n && iso; ++j) iso = table(i, j) == grid.d(i, j);
  const Rational res(1, nl);
  Quotient quotient = indistinguishability_quotient(table, res);
  Partition chain = chain_components(grid, res);
  const bool single = quotient.partition.single_block();
  const bool same = quotient.partition == chain;
  return RotationCaseReport{RotationNumber{p, q}, n,      std::move(grid), iso, res, std::move(quotient),
                            std::move(chain),       single, same};
}

std::string to_string(Space s) { return s == Space::Circle ? "circle" : "interval"; }

std::string to_string(TailKind k) {
  return k == TailKind::ContainedInComponent ? "contained_in_component" : "affine_contraction";
}

}  // namespace expobs::circle
