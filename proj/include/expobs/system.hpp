#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "expobs/rational.hpp"

namespace expobs {

using PointIndex = std::size_t;

/// Ordered point identifiers shared between a system and the observables
/// defined on it. Iteration order is always document order.
class PointSet {
 public:
  explicit PointSet(std::vector<std::string> ids);

  std::size_t size() const { return ids_.size(); }
  const std::string& operator[](PointIndex i) const { return ids_[i]; }
  const std::vector<std::string>& ids() const { return ids_; }

  /// Throws UnknownPoint.
  PointIndex index_of(std::string_view id) const;
  bool contains(std::string_view id) const;

  friend bool operator==(const PointSet& a, const PointSet& b) { return a.ids_ == b.ids_; }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, PointIndex> index_;
};

/// A finite metric space with a bijection: the discrete stand-in for a
/// homeomorphism f of a compact metric space (X, d).
///
/// Construction validates every invariant: symmetry, zero diagonal,
/// positivity off the diagonal, the triangle inequality for all triples,
/// and bijectivity of the map.
class FiniteSystem {
 public:
  FiniteSystem(std::vector<std::string> points, std::vector<std::vector<Rational>> metric,
               std::vector<PointIndex> map);

  /// Same validation, reusing an existing point set (so observables built
  /// for one system stay valid on the other).
  FiniteSystem(std::shared_ptr<const PointSet> points, std::vector<std::vector<Rational>> metric,
               std::vector<PointIndex> map);

  std::size_t size() const { return points_->size(); }
  const PointSet& points() const { return *points_; }
  const std::shared_ptr<const PointSet>& point_set() const { return points_; }

  const Rational& d(PointIndex i, PointIndex j) const { return metric_[i * size() + j]; }
  PointIndex f(PointIndex i) const { return map_[i]; }
  PointIndex f_inverse(PointIndex i) const { return inverse_[i]; }
  /// f^k for any integer k.
  PointIndex f_pow(PointIndex i, long k) const;
  const std::vector<PointIndex>& map() const { return map_; }

  std::vector<std::vector<Rational>> metric_rows() const;

  friend bool operator==(const FiniteSystem& a, const FiniteSystem& b) {
    return *a.points_ == *b.points_ && a.metric_ == b.metric_ && a.map_ == b.map_;
  }

 private:
  void validate_and_store(std::vector<std::vector<Rational>> metric, std::vector<PointIndex> map);

  std::shared_ptr<const PointSet> points_;
  std::vector<Rational> metric_;
  std::vector<PointIndex> map_;
  std::vector<PointIndex> inverse_;
};

/// An exact-valued function on the points of a system (an element of C(X)).
class Observable {
 public:
  Observable(std::shared_ptr<const PointSet> domain, std::vector<Gaussian> values);

  static Observable constant(const FiniteSystem& s, const Gaussian& c);

  const PointSet& domain() const { return *domain_; }
  const std::shared_ptr<const PointSet>& domain_ptr() const { return domain_; }
  std::size_t size() const { return values_.size(); }
  const Gaussian& operator[](PointIndex i) const { return values_[i]; }
  const Gaussian& at(std::string_view id) const { return values_[domain_->index_of(id)]; }
  std::span<const Gaussian> values() const { return values_; }

  bool is_constant() const;
  bool is_injective() const;
  /// Distinct values in order of first appearance.
  std::vector<Gaussian> distinct_values() const;

  friend bool operator==(const Observable& a, const Observable& b) {
    return *a.domain_ == *b.domain_ && a.values_ == b.values_;
  }

 private:
  std::shared_ptr<const PointSet> domain_;
  std::vector<Gaussian> values_;
};

/// Throws DomainMismatch unless `phi` lives on the points of `s`.
void require_domain(const FiniteSystem& s, const Observable& phi);
void require_same_domain(const Observable& a, const Observable& b);

/// min over distinct pairs of d(x, y). DegenerateSpace for fewer than 2 points.
Rational mesh(const FiniteSystem& s);

/// phi_x(z) = d(x, z).
Observable distance_observable(const FiniteSystem& s, std::string_view x);
Observable distance_observable(const FiniteSystem& s, PointIndex x);

/// Sorted distinct positive values of the metric.
std::vector<Rational> realized_distances(const FiniteSystem& s);

}  // namespace expobs
