#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "expobs/rational.hpp"

namespace expobs::symbolic {

/// Symbols are single characters; an alphabet is a string of distinct symbols.
using Word = std::string;

enum class Side { Stable, Unstable };

/// Eventually periodic bi-infinite sequence
///
///     ... left left left [core] right right right ...
///
/// with the core occupying coordinates [offset, offset + |core|) and the
/// left word ending at coordinate offset - 1.
///
/// Always held in canonical form: both tails primitive, the core trimmed
/// against both tail continuations, the boundary pushed as far left as the
/// right tail allows, and purely periodic points anchored at offset 0 with
/// left == right. Equality of points is equality of canonical forms.
class EPPoint {
 public:
  EPPoint(Word left, Word core, Word right, long offset = 0);

  /// The purely periodic point (word)^Z with word[0] at coordinate 0.
  static EPPoint periodic(const Word& word) { return EPPoint(word, "", word, 0); }

  const Word& left() const { return left_; }
  const Word& core() const { return core_; }
  const Word& right() const { return right_; }
  long offset() const { return offset_; }
  /// First coordinate of the right-periodic region.
  long core_end() const { return offset_ + static_cast<long>(core_.size()); }

  char at(long i) const;
  bool is_periodic() const { return core_.empty() && left_ == right_; }
  /// |left| + |core| + |right|.
  std::size_t description_size() const { return left_.size() + core_.size() + right_.size(); }

  std::string str() const;

  friend bool operator==(const EPPoint&, const EPPoint&) = default;
  /// Size first, then the words, then |offset|, then offset.
  friend bool operator<(const EPPoint& a, const EPPoint& b);

 private:
  Word left_, core_, right_;
  long offset_ = 0;
};

/// shift(x, n)_i = x_{i + n}.
EPPoint shift(const EPPoint& x, long n);

/// The mirror image: reflect(x)_i = x_{-i}.
EPPoint reflect(const EPPoint& x);

/// 0 if x = y, else 2^{-m} with m = min { |i| : x_i != y_i }.
Rational sym_distance(const EPPoint& x, const EPPoint& y);

/// sup_i d(shift(x, i), shift(y, i)): 0 if x = y, otherwise 1.
Rational sym_orbit_sup(const EPPoint& x, const EPPoint& y);

/// Largest k >= 0 with 2^{-k} <= eps (eps > 0). eps >= 1 gives k = 0.
long snap_exponent(const Rational& eps);

/// Local stable (unstable) set membership at radius eps, snapped to
/// 2^{-k}. The radius is a strict bound on the distance along the forward
/// (backward) orbit, which for the shift metric reads: x_i = y_i for all
/// i >= -k (side s), or for all i <= k (side u).
bool in_dynamical_ball(const EPPoint& x, const EPPoint& y, const Rational& eps, Side side);

/// y in W^s(x) (side s): the right tails eventually agree. Mirrored for u.
bool stable_equiv(const EPPoint& x, const EPPoint& y, Side side);

/// phi(z) = table[z_{-w} ... z_{w}], a function of the central window.
class CylinderObservable {
 public:
  /// The table must cover every word of length 2w+1 over the alphabet.
  CylinderObservable(std::string alphabet, long window, std::map<Word, Gaussian> table);

  /// phi(word) = value of the central coordinate (window 0) read as an
  /// integer index into the alphabet.
  static CylinderObservable coordinate(const std::string& alphabet);
  /// A distinct integer for every window word; separating for its window.
  static CylinderObservable injective(const std::string& alphabet, long window);

  const std::string& alphabet() const { return alphabet_; }
  long window() const { return window_; }
  const std::map<Word, Gaussian>& table() const { return table_; }

  const Gaussian& value(const Word& window_word) const;
  /// phi(shift(x, n)).
  const Gaussian& at(const EPPoint& x, long n) const;
  /// The same observable read on mirrored sequences.
  CylinderObservable reflected() const;

 private:
  std::string alphabet_;
  long window_;
  std::map<Word, Gaussian> table_;
};

/// Throws AlphabetMismatch if x uses a symbol outside `alphabet`.
void require_alphabet(const std::string& alphabet, const EPPoint& x);

/// lim |phi(shift(x, n)) - phi(shift(y, n))| = 0 as n -> +inf (side s) or
/// n -> -inf (side u). Decided exactly over one common tail period.
bool obs_stable_equiv(const EPPoint& x, const EPPoint& y, const CylinderObservable& phi, Side side);

/// All canonical points over `alphabet` with description size <= bound and
/// |offset| <= bound, sorted by EPPoint ordering.
std::vector<EPPoint> enumerate_points(const std::string& alphabet, std::size_t bound);

struct BallInclusionReport {
  EPPoint center;
  Side side = Side::Stable;
  Rational requested_eps;
  Rational effective_eps;
  long k = 0;
  std::size_t enumerated = 0;
  std::size_t in_ball = 0;
  std::vector<EPPoint> counterexamples;
  bool passed() const { return counterexamples.empty(); }
};

/// For every enumerated y in the dynamical ball of radius eps around x,
/// asserts y is phi-asymptotic to x on the same side. x itself is always
/// among the candidates.
BallInclusionReport check_ball_inclusion(const EPPoint& x, const CylinderObservable& phi, const Rational& eps,
                                         Side side, std::size_t bound);
BallInclusionReport check_ball_inclusion(const EPPoint& x, const CylinderObservable& phi, const Rational& eps,
                                         Side side, std::span<const EPPoint> candidates);

/// Subshift of finite type: sequences over `alphabet` avoiding every
/// forbidden word.
struct Subshift {
  std::string alphabet;
  std::vector<Word> forbidden;

  bool admits(const EPPoint& x) const;
};

/// Distinct admissible x != y in W^s(x), smallest descriptions first.
/// Homoclinic pairs (also in W^u(x)) are preferred over merely stable ones.
/// NoPairFound if none exists within the bound.
std::pair<EPPoint, EPPoint> find_asymptotic_pair(const Subshift& sub, std::size_t bound);

}  // namespace expobs::symbolic
