#include "expobs/symbolic.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

namespace expobs::symbolic {

namespace {

long mod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

// Shortest word u with w = u^k, via the prefix function.
Word primitive_root(const Word& w) {
  const std::size_t n = w.size();
  std::vector<std::size_t> fail(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = fail[i - 1];
    while (k > 0 && w[i] != w[k]) k = fail[k - 1];
    if (w[i] == w[k]) ++k;
    fail[i] = k;
  }
  const std::size_t period = n - fail[n - 1];
  return n % period == 0 ? w.substr(0, period) : w;
}

Word rotate_left(const Word& w, std::size_t k) {
  k %= w.size();
  return w.substr(k) + w.substr(0, k);
}

Word rotate_right_one(const Word& w) { return w.back() + w.substr(0, w.size() - 1); }

long lcm_len(const Word& a, const Word& b) {
  return std::lcm(static_cast<long>(a.size()), static_cast<long>(b.size()));
}

// x_i = y_i for every i >= start.
bool agree_from(const EPPoint& x, const EPPoint& y, long start) {
  const long k = std::max({x.core_end(), y.core_end(), start});
  const long stop = k + lcm_len(x.right(), y.right());
  for (long i = start; i < stop; ++i) {
    if (x.at(i) != y.at(i)) return false;
  }
  return true;
}

// x_i = y_i for every i <= end.
bool agree_upto(const EPPoint& x, const EPPoint& y, long end) { return agree_from(reflect(x), reflect(y), -end); }

bool obs_stable_forward(const EPPoint& x, const EPPoint& y, const CylinderObservable& phi) {
  const long start = std::max(x.core_end(), y.core_end()) + phi.window();
  const long stop = start + lcm_len(x.right(), y.right());
  for (long n = start; n < stop; ++n) {
    bool same_window = true;
    for (long i = n - phi.window(); i <= n + phi.window() && same_window; ++i) same_window = x.at(i) == y.at(i);
    if (!same_window && phi.at(x, n) != phi.at(y, n)) return false;
  }
  return true;
}

void all_words(const std::string& alphabet, std::size_t length, std::vector<Word>& out) {
  out.clear();
  out.emplace_back();
  for (std::size_t l = 0; l < length; ++l) {
    std::vector<Word> next;
    next.reserve(out.size() * alphabet.size());
    for (const auto& w : out) {
      for (char c : alphabet) next.push_back(w + c);
    }
    out = std::move(next);
  }
}

void validate_alphabet(const std::string& alphabet) {
  if (alphabet.empty()) throw Error(ErrorCode::InvalidArgument, "alphabet is empty");
  std::string sorted = alphabet;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::InvalidArgument, "alphabet has repeated symbols");
  }
}

}  // namespace

EPPoint::EPPoint(Word left, Word core, Word right, long offset)
    : left_(std::move(left)), core_(std::move(core)), right_(std::move(right)), offset_(offset) {
  if (left_.empty() || right_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "left and right words must be nonempty");
  }
  left_ = primitive_root(left_);
  right_ = primitive_root(right_);
  while (!core_.empty() && core_.front() == left_.front()) {
    left_ = rotate_left(left_, 1);
    core_.erase(0, 1);
    ++offset_;
  }
  while (!core_.empty() && core_.back() == right_.back()) {
    right_ = rotate_right_one(right_);
    core_.pop_back();
  }
  if (!core_.empty()) return;
  if (left_ == right_) {
    right_ = rotate_left(right_, static_cast<std::size_t>(mod(-offset_, static_cast<long>(right_.size()))));
    left_ = right_;
    offset_ = 0;
    return;
  }
  // Move the boundary left while the right tail still explains the symbol.
  // Primitive, unequal tails disagree within lcm(|left|, |right|) steps.
  while (left_.back() == right_.back()) {
    left_ = rotate_right_one(left_);
    right_ = rotate_right_one(right_);
    --offset_;
  }
}

char EPPoint::at(long i) const {
  if (i < offset_) return left_[mod(i - offset_, static_cast<long>(left_.size()))];
  if (i < core_end()) return core_[i - offset_];
  return right_[mod(i - core_end(), static_cast<long>(right_.size()))];
}

std::string EPPoint::str() const {
  return "(" + left_ + ")^-inf [" + core_ + "]@" + std::to_string(offset_) + " (" + right_ + ")^+inf";
}

bool operator<(const EPPoint& a, const EPPoint& b) {
  using Key = std::tuple<std::size_t, const Word&, const Word&, const Word&, long, long>;
  const auto key = [](const EPPoint& p) {
    return Key(p.description_size(), p.left(), p.core(), p.right(), std::labs(p.offset()), p.offset());
  };
  return key(a) < key(b);
}

EPPoint shift(const EPPoint& x, long n) { return EPPoint(x.left(), x.core(), x.right(), x.offset() - n); }

EPPoint reflect(const EPPoint& x) {
  Word left(x.right().rbegin(), x.right().rend());
  Word core(x.core().rbegin(), x.core().rend());
  Word right(x.left().rbegin(), x.left().rend());
  return EPPoint(std::move(left), std::move(core), std::move(right), 1 - x.core_end());
}

Rational sym_distance(const EPPoint& x, const EPPoint& y) {
  if (x == y) return Rational(0);
  const long reach = std::max({std::labs(x.offset()), std::labs(y.offset()), std::labs(x.core_end()),
                               std::labs(y.core_end())}) +
                     std::max(lcm_len(x.left(), y.left()), lcm_len(x.right(), y.right())) + 1;
  for (long m = 0; m <= reach; ++m) {
    if (x.at(m) != y.at(m) || x.at(-m) != y.at(-m)) return Rational::pow2(-m);
  }
  // Unreachable for canonical forms: distinct points differ within reach.
  throw Error(ErrorCode::InvalidArgument, "points differ but no disagreement found");
}

Rational sym_orbit_sup(const EPPoint& x, const EPPoint& y) { return x == y ? Rational(0) : Rational(1); }

long snap_exponent(const Rational& eps) {
  if (eps.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  long k = 0;
  while (Rational::pow2(-k) > eps) ++k;
  return k;
}

bool in_dynamical_ball(const EPPoint& x, const EPPoint& y, const Rational& eps, Side side) {
  const long k = snap_exponent(eps);
  return side == Side::Stable ? agree_from(x, y, -k) : agree_upto(x, y, k);
}

bool stable_equiv(const EPPoint& x, const EPPoint& y, Side side) {
  if (side == Side::Stable) return agree_from(x, y, std::max(x.core_end(), y.core_end()));
  return agree_upto(x, y, std::min(x.offset(), y.offset()) - 1);
}

CylinderObservable::CylinderObservable(std::string alphabet, long window, std::map<Word, Gaussian> table)
    : alphabet_(std::move(alphabet)), window_(window), table_(std::move(table)) {
  validate_alphabet(alphabet_);
  if (window_ < 0) throw Error(ErrorCode::InvalidArgument, "window must be >= 0");
  const std::size_t length = static_cast<std::size_t>(2 * window_ + 1);
  for (const auto& [word, value] : table_) {
    if (word.size() != length) {
      throw Error(ErrorCode::InvalidArgument, "table word \"" + word + "\" has the wrong length");
    }
    if (word.find_first_not_of(alphabet_) != Word::npos) {
      throw Error(ErrorCode::AlphabetMismatch, "table word \"" + word + "\" leaves the alphabet");
    }
  }
  double expected = 1;
  for (std::size_t i = 0; i < length; ++i) expected *= static_cast<double>(alphabet_.size());
  if (static_cast<double>(table_.size()) != expected) {
    throw Error(ErrorCode::InvalidArgument, "table is not total on the window words");
  }
}

CylinderObservable CylinderObservable::coordinate(const std::string& alphabet) {
  std::map<Word, Gaussian> table;
  for (std::size_t i = 0; i < alphabet.size(); ++i) table[Word(1, alphabet[i])] = Gaussian(static_cast<long>(i));
  return CylinderObservable(alphabet, 0, std::move(table));
}

CylinderObservable CylinderObservable::injective(const std::string& alphabet, long window) {
  std::vector<Word> words;
  all_words(alphabet, static_cast<std::size_t>(2 * window + 1), words);
  std::map<Word, Gaussian> table;
  for (std::size_t i = 0; i < words.size(); ++i) table[words[i]] = Gaussian(static_cast<long>(i));
  return CylinderObservable(alphabet, window, std::move(table));
}

const Gaussian& CylinderObservable::value(const Word& window_word) const {
  auto it = table_.find(window_word);
  if (it == table_.end()) {
    throw Error(ErrorCode::AlphabetMismatch, "no table entry for window \"" + window_word + "\"");
  }
  return it->second;
}

const Gaussian& CylinderObservable::at(const EPPoint& x, long n) const {
  Word w;
  w.reserve(static_cast<std::size_t>(2 * window_ + 1));
  for (long i = n - window_; i <= n + window_; ++i) w.push_back(x.at(i));
  return value(w);
}

CylinderObservable CylinderObservable::reflected() const {
  std::map<Word, Gaussian> table;
  for (const auto& [word, value] : table_) table[Word(word.rbegin(), word.rend())] = value;
  return CylinderObservable(alphabet_, window_, std::move(table));
}

void require_alphabet(const std::string& alphabet, const EPPoint& x) {
  for (const Word* w : {&x.left(), &x.core(), &x.right()}) {
    if (w->find_first_not_of(alphabet) != Word::npos) {
      throw Error(ErrorCode::AlphabetMismatch, "point " + x.str() + " leaves alphabet \"" + alphabet + "\"");
    }
  }
}

bool obs_stable_equiv(const EPPoint& x, const EPPoint& y, const CylinderObservable& phi, Side side) {
  require_alphabet(phi.alphabet(), x);
  require_alphabet(phi.alphabet(), y);
  if (side == Side::Stable) return obs_stable_forward(x, y, phi);
  return obs_stable_forward(reflect(x), reflect(y), phi.reflected());
}

std::vector<EPPoint> enumerate_points(const std::string& alphabet, std::size_t bound) {
  validate_alphabet(alphabet);
  std::set<EPPoint> found;
  std::vector<std::vector<Word>> words(bound + 1);
  for (std::size_t l = 0; l <= bound; ++l) all_words(alphabet, l, words[l]);
  const long reach = static_cast<long>(bound);
  for (std::size_t nl = 1; nl <= bound; ++nl) {
    for (std::size_t nr = 1; nl + nr <= bound; ++nr) {
      for (std::size_t nc = 0; nl + nr + nc <= bound; ++nc) {
        for (const auto& l : words[nl]) {
          for (const auto& c : words[nc]) {
            for (const auto& r : words[nr]) {
              for (long o = -reach; o <= reach; ++o) {
                EPPoint p(l, c, r, o);
                if (std::labs(p.offset()) <= reach) found.insert(std::move(p));
              }
            }
          }
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

BallInclusionReport check_ball_inclusion(const EPPoint& x, const CylinderObservable& phi, const Rational& eps,
                                         Side side, std::size_t bound) {
  const auto candidates = enumerate_points(phi.alphabet(), bound);
  return check_ball_inclusion(x, phi, eps, side, std::span<const EPPoint>(candidates));
}

BallInclusionReport check_ball_inclusion(const EPPoint& x, const CylinderObservable& phi, const Rational& eps,
                                         Side side, std::span<const EPPoint> candidates) {
  require_alphabet(phi.alphabet(), x);
  BallInclusionReport r{x, side, eps, Rational(0), snap_exponent(eps), 0, 0, {}};
  r.effective_eps = Rational::pow2(-r.k);
  const CylinderObservable mirrored = phi.reflected();
  const EPPoint x_mirror = reflect(x);
  auto visit = [&](const EPPoint& y) {
    ++r.enumerated;
    if (!in_dynamical_ball(x, y, r.effective_eps, side)) return;
    ++r.in_ball;
    const bool ok = side == Side::Stable ? obs_stable_forward(x, y, phi)
                                         : obs_stable_forward(x_mirror, reflect(y), mirrored);
    if (!ok) r.counterexamples.push_back(y);
  };
  bool saw_center = false;
  for (const auto& y : candidates) {
    saw_center = saw_center || y == x;
    visit(y);
  }
  if (!saw_center) visit(x);
  return r;
}

bool Subshift::admits(const EPPoint& x) const {
  require_alphabet(alphabet, x);
  for (const auto& f : forbidden) {
    const long len = static_cast<long>(f.size());
    const long lo = x.offset() - len - static_cast<long>(x.left().size());
    const long hi = x.core_end() + static_cast<long>(x.right().size());
    for (long i = lo; i <= hi; ++i) {
      bool match = true;
      for (long j = 0; j < len && match; ++j) match = x.at(i + j) == f[static_cast<std::size_t>(j)];
      if (match) return false;
    }
  }
  return true;
}

std::pair<EPPoint, EPPoint> find_asymptotic_pair(const Subshift& sub, std::size_t bound) {
  validate_alphabet(sub.alphabet);
  std::vector<EPPoint> candidates;
  for (auto& p : enumerate_points(sub.alphabet, bound)) {
    if (sub.admits(p)) candidates.push_back(std::move(p));
  }
  for (const bool homoclinic : {true, false}) {
    for (const auto& x : candidates) {
      for (const auto& y : candidates) {
        if (x == y || !stable_equiv(x, y, Side::Stable)) continue;
        if (homoclinic && !stable_equiv(x, y, Side::Unstable)) continue;
        return {x, y};
      }
    }
  }
  throw Error(ErrorCode::NoPairFound, "no asymptotic pair with description size <= " + std::to_string(bound));
}

}  // namespace expobs::symbolic
