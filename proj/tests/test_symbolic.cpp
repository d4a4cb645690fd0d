#include "check.hpp"
#include "expobs/symbolic.hpp"
#include "oracles.hpp"

using namespace expobs;
using namespace expobs::symbolic;

namespace {

const EPPoint zero = EPPoint::periodic("0");
const EPPoint one_at_zero("0", "1", "0", 0);

EPPoint spike(long at) { return EPPoint("0", "1", "0", at); }

}  // namespace

TEST_CASE("canonical forms") {
  CHECK(EPPoint("00", "", "0") == zero);
  CHECK(EPPoint("0", "000", "0", 5) == zero);
  CHECK(EPPoint("01", "", "01") == EPPoint::periodic("01"));
  CHECK(EPPoint("0101", "01", "0101", 4) == EPPoint::periodic("01"));
  CHECK(EPPoint("0", "01", "0", -1) == one_at_zero);
  CHECK(EPPoint("10", "", "10") != EPPoint::periodic("01"));
  CHECK(shift(EPPoint::periodic("01"), 1) == EPPoint::periodic("10"));
  CHECK(EPPoint("0", "", "1", 3).at(2) == '0');
  CHECK(EPPoint("0", "", "1", 3).at(3) == '1');
  CHECK(one_at_zero.at(0) == '1');
  CHECK(one_at_zero.at(-7) == '0');
}

TEST_CASE("shift") {
  CHECK(shift(zero, 17) == zero);
  CHECK(shift(one_at_zero, 1) == spike(-1));
  CHECK(shift(EPPoint::periodic("01"), 2) == EPPoint::periodic("01"));
  for (long n = -5; n <= 5; ++n) {
    const EPPoint x("011", "10", "1", 2);
    for (long i = -10; i <= 10; ++i) CHECK(shift(x, n).at(i) == x.at(i + n));
    CHECK(shift(shift(x, n), -n) == x);
  }
}

TEST_CASE("distance and orbit sup") {
  CHECK(sym_distance(zero, one_at_zero) == Rational(1));
  CHECK(sym_distance(zero, shift(one_at_zero, -3)) == Rational(1, 8));
  CHECK(sym_distance(zero, zero) == Rational(0));
  CHECK(sym_orbit_sup(zero, spike(9)) == Rational(1));
  CHECK(sym_orbit_sup(zero, zero) == Rational(0));
  CHECK(sym_orbit_sup(zero, EPPoint::periodic("01")) == Rational(1));
  CHECK_THROWS_CODE(require_alphabet("01", EPPoint::periodic("a")), ErrorCode::AlphabetMismatch);
}

TEST_CASE("metric axioms and shift Lipschitz bounds on enumerated points") {
  const auto pts = enumerate_points("01", 4);
  for (std::size_t a = 0; a < pts.size(); a += 7)
    for (std::size_t b = 0; b < pts.size(); b += 5) {
      const auto dab = sym_distance(pts[a], pts[b]);
      CHECK(dab == sym_distance(pts[b], pts[a]));
      CHECK((dab.is_zero()) == (pts[a] == pts[b]));
      const auto ds = sym_distance(shift(pts[a], 1), shift(pts[b], 1));
      CHECK(ds <= dab * Rational(2));
      CHECK(ds * Rational(2) >= dab);
      for (std::size_t c = 0; c < pts.size(); c += 31)
        CHECK(dab <= max(sym_distance(pts[a], pts[c]), sym_distance(pts[c], pts[b])));
    }
}

TEST_CASE("dynamical balls") {
  const auto y = spike(-5);
  CHECK(in_dynamical_ball(zero, y, Rational(1, 8), Side::Stable));
  CHECK_FALSE(in_dynamical_ball(zero, y, Rational(1, 8), Side::Unstable));
  CHECK(in_dynamical_ball(y, y, Rational(1, 1024), Side::Stable));
  CHECK(in_dynamical_ball(y, y, Rational(1, 1024), Side::Unstable));
  CHECK(snap_exponent(Rational(1, 3)) == 2);
  CHECK(snap_exponent(Rational(1, 4)) == 2);
  CHECK(snap_exponent(Rational(1)) == 0);
  CHECK(snap_exponent(Rational(5)) == 0);
  CHECK_THROWS_CODE(snap_exponent(Rational(0)), ErrorCode::InvalidArgument);
}

TEST_CASE("stable sets") {
  CHECK(stable_equiv(zero, one_at_zero, Side::Stable));
  CHECK(stable_equiv(zero, one_at_zero, Side::Unstable));
  CHECK_FALSE(stable_equiv(zero, EPPoint::periodic("01"), Side::Stable));
  CHECK(stable_equiv(EPPoint::periodic("01"), EPPoint::periodic("01"), Side::Stable));
  CHECK(stable_equiv(EPPoint("1", "", "01"), EPPoint("0", "", "10", 1), Side::Stable));
  CHECK_FALSE(stable_equiv(EPPoint("1", "", "01"), EPPoint("0", "", "10", 1), Side::Unstable));

  const auto coord = CylinderObservable::coordinate("01");
  CHECK(obs_stable_equiv(zero, one_at_zero, coord, Side::Stable));
  CHECK(obs_stable_equiv(zero, one_at_zero, CylinderObservable::injective("01", 2), Side::Stable));
  CHECK_FALSE(obs_stable_equiv(zero, EPPoint::periodic("01"), coord, Side::Stable));
  CHECK(obs_stable_equiv(zero, zero, coord, Side::Unstable));
  CHECK_THROWS_CODE(obs_stable_equiv(zero, EPPoint::periodic("2"), coord, Side::Stable), ErrorCode::AlphabetMismatch);

  // A constant observable makes every pair asymptotic.
  std::map<Word, Gaussian> table{{"0", Gaussian(Rational(1))}, {"1", Gaussian(Rational(1))}};
  CHECK(obs_stable_equiv(zero, EPPoint::periodic("01"), CylinderObservable("01", 0, table), Side::Stable));
}

TEST_CASE("cylinder observables validate their table") {
  std::map<Word, Gaussian> partial{{"0", Gaussian(Rational(1))}};
  CHECK_THROWS_CODE(CylinderObservable("01", 0, partial), ErrorCode::InvalidArgument);
  CHECK(CylinderObservable::injective("01", 1).table().size() == 8);
  const auto phi = CylinderObservable::injective("01", 1);
  const EPPoint x("0", "110", "01", -2);
  for (long n = -6; n <= 6; ++n) {
    Word w;
    for (long i = n - 1; i <= n + 1; ++i) w += x.at(i);
    CHECK(phi.at(x, n) == phi.value(w));
    CHECK(phi.reflected().at(reflect(x), -n) == phi.at(x, n));
  }
}

TEST_CASE("obs_stable_equiv agrees with a long-window oracle") {
  const auto pts = enumerate_points("01", 4);
  const auto phi = CylinderObservable::injective("01", 1);
  const auto coord = CylinderObservable::coordinate("01");
  for (std::size_t a = 0; a < pts.size(); a += 3)
    for (std::size_t b = 0; b < pts.size(); b += 4) {
      CHECK(obs_stable_equiv(pts[a], pts[b], phi, Side::Stable) == oracle::phi_asymptotic(pts[a], pts[b], phi, true));
      CHECK(obs_stable_equiv(pts[a], pts[b], coord, Side::Unstable) ==
            oracle::phi_asymptotic(pts[a], pts[b], coord, false));
    }
}

TEST_CASE("enumeration") {
  const auto pts = enumerate_points("01", 3);
  CHECK(std::is_sorted(pts.begin(), pts.end()));
  CHECK(std::adjacent_find(pts.begin(), pts.end()) == pts.end());
  CHECK(std::find(pts.begin(), pts.end(), zero) != pts.end());
  CHECK(std::find(pts.begin(), pts.end(), one_at_zero) != pts.end());
  for (const auto& p : pts) CHECK(p.description_size() <= 3);
  CHECK(enumerate_points("01", 0).empty());
}

TEST_CASE("ball inclusion") {
  const auto phi = CylinderObservable::injective("01", 1);
  const auto r = check_ball_inclusion(zero, phi, Rational(1, 2), Side::Stable, 6);
  CHECK(r.passed());
  CHECK(r.in_ball >= 2);
  CHECK(r.k == 1);
  const auto r1 = check_ball_inclusion(zero, CylinderObservable::coordinate("01"), Rational(1), Side::Stable, 6);
  CHECK(r1.passed());
  CHECK(r1.effective_eps == Rational(1));
  const auto r0 = check_ball_inclusion(zero, phi, Rational(1, 2), Side::Unstable, 0);
  CHECK(r0.passed());
  CHECK(r0.in_ball == 1);

  // The oracle ball: agreement on [-k, 60] for points of size <= 6.
  const auto pts = enumerate_points("01", 5);
  std::size_t count = 1;
  for (const auto& y : pts)
    if (y != zero && oracle::agree_on(zero, y, -1, 60)) ++count;
  CHECK(check_ball_inclusion(zero, phi, Rational(1, 2), Side::Stable, 5).in_ball == count);
}

TEST_CASE("asymptotic pairs") {
  const auto [x, y] = find_asymptotic_pair(Subshift{"01", {}}, 4);
  CHECK(x == zero);
  CHECK(y == one_at_zero);
  const auto [gx, gy] = find_asymptotic_pair(Subshift{"01", {"11"}}, 4);
  CHECK(gx == zero);
  CHECK(gy == one_at_zero);
  CHECK_THROWS_CODE(find_asymptotic_pair(Subshift{"0", {}}, 6), ErrorCode::NoPairFound);
  CHECK(Subshift{"01", {"11"}}.admits(one_at_zero));
  CHECK_FALSE(Subshift{"01", {"11"}}.admits(EPPoint("0", "11", "0")));
  CHECK_FALSE(Subshift{"01", {"11"}}.admits(EPPoint::periodic("1")));
}
