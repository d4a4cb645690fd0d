#include "expobs/system.hpp"

#include <algorithm>

namespace expobs {

PointSet::PointSet(std::vector<std::string> ids) : ids_(std::move(ids)) {
  for (PointIndex i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) {
      throw Error(ErrorCode::MalformedDocument, "duplicate point id \"" + ids_[i] + "\"");
    }
  }
}

PointIndex PointSet::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) throw Error(ErrorCode::UnknownPoint, "no point \"" + std::string(id) + "\"");
  return it->second;
}

bool PointSet::contains(std::string_view id) const { return index_.count(std::string(id)) != 0; }

FiniteSystem::FiniteSystem(std::vector<std::string> points, std::vector<std::vector<Rational>> metric,
                           std::vector<PointIndex> map)
    : points_(std::make_shared<const PointSet>(std::move(points))) {
  validate_and_store(std::move(metric), std::move(map));
}

FiniteSystem::FiniteSystem(std::shared_ptr<const PointSet> points, std::vector<std::vector<Rational>> metric,
                           std::vector<PointIndex> map)
    : points_(std::move(points)) {
  validate_and_store(std::move(metric), std::move(map));
}

void FiniteSystem::validate_and_store(std::vector<std::vector<Rational>> metric, std::vector<PointIndex> map) {
  const std::size_t n = points_->size();
  const auto& id = *points_;
  if (metric.size() != n) {
    throw Error(ErrorCode::MalformedDocument, "metric has " + std::to_string(metric.size()) +
                                                  " rows for " + std::to_string(n) + " points");
  }
  for (const auto& row : metric) {
    if (row.size() != n) throw Error(ErrorCode::MalformedDocument, "metric is not square");
  }
  for (PointIndex i = 0; i < n; ++i) {
    if (!metric[i][i].is_zero()) {
      throw Error(ErrorCode::MetricViolation, "d(" + id[i] + "," + id[i] + ") = " + metric[i][i].str() + " != 0");
    }
    for (PointIndex j = i + 1; j < n; ++j) {
      if (metric[i][j] != metric[j][i]) {
        throw Error(ErrorCode::MetricViolation, "asymmetric pair (" + id[i] + "," + id[j] + ")");
      }
      if (metric[i][j].sign() <= 0) {
        throw Error(ErrorCode::MetricViolation,
                    "non-positive distance for distinct pair (" + id[i] + "," + id[j] + ")");
      }
    }
  }
  for (PointIndex i = 0; i < n; ++i) {
    for (PointIndex j = 0; j < n; ++j) {
      for (PointIndex k = 0; k < n; ++k) {
        if (metric[i][k] > metric[i][j] + metric[j][k]) {
          throw Error(ErrorCode::MetricViolation,
                      "triangle inequality fails for (" + id[i] + "," + id[j] + "," + id[k] + ")");
        }
      }
    }
  }
  if (map.size() != n) throw Error(ErrorCode::NotABijection, "map must have one image per point");
  inverse_.assign(n, n);
  for (PointIndex i = 0; i < n; ++i) {
    if (map[i] >= n) throw Error(ErrorCode::NotABijection, "image of " + id[i] + " out of range");
    if (inverse_[map[i]] != n) {
      throw Error(ErrorCode::NotABijection, "point " + id[map[i]] + " is the image of two points");
    }
    inverse_[map[i]] = i;
  }
  metric_.reserve(n * n);
  for (auto& row : metric) {
    for (auto& v : row) metric_.push_back(std::move(v));
  }
  map_ = std::move(map);
}

PointIndex FiniteSystem::f_pow(PointIndex i, long k) const {
  const auto& step = k >= 0 ? map_ : inverse_;
  for (long t = 0, e = k >= 0 ? k : -k; t < e; ++t) i = step[i];
  return i;
}

std::vector<std::vector<Rational>> FiniteSystem::metric_rows() const {
  const std::size_t n = size();
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
  for (PointIndex i = 0; i < n; ++i) {
    for (PointIndex j = 0; j < n; ++j) rows[i][j] = d(i, j);
  }
  return rows;
}

Observable::Observable(std::shared_ptr<const PointSet> domain, std::vector<Gaussian> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != domain_->size()) {
    throw Error(ErrorCode::DomainMismatch, "observable has " + std::to_string(values_.size()) +
                                               " values for " + std::to_string(domain_->size()) + " points");
  }
}

Observable Observable::constant(const FiniteSystem& s, const Gaussian& c) {
  return Observable(s.point_set(), std::vector<Gaussian>(s.size(), c));
}

bool Observable::is_constant() const {
  return std::all_of(values_.begin(), values_.end(), [&](const Gaussian& v) { return v == values_.front(); });
}

bool Observable::is_injective() const { return distinct_values().size() == values_.size(); }

std::vector<Gaussian> Observable::distinct_values() const {
  std::vector<Gaussian> out;
  for (const auto& v : values_) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

void require_domain(const FiniteSystem& s, const Observable& phi) {
  if (s.point_set() != phi.domain_ptr() && s.points() != phi.domain()) {
    throw Error(ErrorCode::DomainMismatch, "observable is not defined on the points of this system");
  }
}

void require_same_domain(const Observable& a, const Observable& b) {
  if (a.domain_ptr() != b.domain_ptr() && a.domain() != b.domain()) {
    throw Error(ErrorCode::DomainMismatch, "observables live on different point sets");
  }
}

Rational mesh(const FiniteSystem& s) {
  if (s.size() < 2) throw Error(ErrorCode::DegenerateSpace, "mesh needs at least two points");
  Rational best = s.d(0, 1);
  for (PointIndex i = 0; i < s.size(); ++i) {
    for (PointIndex j = i + 1; j < s.size(); ++j) best = min(best, s.d(i, j));
  }
  return best;
}

Observable distance_observable(const FiniteSystem& s, std::string_view x) {
  return distance_observable(s, s.points().index_of(x));
}

Observable distance_observable(const FiniteSystem& s, PointIndex x) {
  std::vector<Gaussian> values;
  values.reserve(s.size());
  for (PointIndex z = 0; z < s.size(); ++z) values.emplace_back(s.d(x, z));
  return Observable(s.point_set(), std::move(values));
}

std::vector<Rational> realized_distances(const FiniteSystem& s) {
  std::vector<Rational> out;
  for (PointIndex i = 0; i < s.size(); ++i) {
    for (PointIndex j = i + 1; j < s.size(); ++j) out.push_back(s.d(i, j));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace expobs
