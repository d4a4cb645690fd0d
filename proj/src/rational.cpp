#include "expobs/rational.hpp"

#include <cctype>

namespace expobs {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedRational: return "MalformedRational";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::MetricViolation: return "MetricViolation";
    case ErrorCode::NotABijection: return "NotABijection";
    case ErrorCode::DegenerateSpace: return "DegenerateSpace";
    case ErrorCode::UnknownPoint: return "UnknownPoint";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ArithmeticOnInfinity: return "ArithmeticOnInfinity";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::NotAConjugacy: return "NotAConjugacy";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::NoPairFound: return "NoPairFound";
    case ErrorCode::InconsistentRotationNumber: return "InconsistentRotationNumber";
    case ErrorCode::NoPeriodicOrbit: return "NoPeriodicOrbit";
    case ErrorCode::NotWandering: return "NotWandering";
    case ErrorCode::NoWanderingInterval: return "NoWanderingInterval";
    case ErrorCode::HorizonExceeded: return "HorizonExceeded";
    case ErrorCode::NotRigid: return "NotRigid";
    case ErrorCode::AllFixed: return "AllFixed";
    case ErrorCode::MalformedReport: return "MalformedReport";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::MalformedRational, "zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string original(text);
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw Error(ErrorCode::MalformedRational, "cannot parse \"" + original + "\"");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw Error(ErrorCode::MalformedRational, "zero denominator in \"" + original + "\"");
  if (negative) n = -n;
  return Rational(mpq_class(n, d));
}

Rational Rational::pow2(long k) {
  mpz_class p = 1;
  const unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), e);
  return k < 0 ? Rational(mpq_class(mpz_class(1), p)) : Rational(mpq_class(p));
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

mpz_class Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

mpz_class Rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
  v_ /= o.v_;
  return *this;
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

const Rational& ExtRational::value() const {
  if (!v_) throw Error(ErrorCode::ArithmeticOnInfinity, "+inf has no rational value");
  return *v_;
}

ExtRational ExtRational::parse(std::string_view text) {
  if (text == "inf") return infinity();
  return Rational::parse(text);
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
  }
  return *a.v_ <=> *b.v_;
}

std::string Gaussian::str() const {
  if (im.is_zero()) return re.str();
  return re.str() + (im.sign() < 0 ? "-" : "+") + im.abs().str() + "i";
}

}  // namespace expobs
