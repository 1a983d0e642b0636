#include "mobco/poset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <limits>
#include <stdexcept>

#include "mobco/errors.hpp"

namespace mobco::poset {

ExtNonNeg ExtNonNeg::finite(double value) {
  if (std::isnan(value) || value < 0.0)
    throw std::invalid_argument("ExtNonNeg: value must be finite and >= 0, got " +
                                std::to_string(value));
  if (std::isinf(value)) return top();
  return ExtNonNeg(value, false);
}

double ExtNonNeg::value() const {
  if (top_) throw std::logic_error("ExtNonNeg: top has no finite value");
  return value_;
}

double ExtNonNeg::as_double() const {
  return top_ ? std::numeric_limits<double>::infinity() : value_;
}

std::weak_ordering ExtNonNeg::operator<=>(const ExtNonNeg& other) const {
  if (top_ || other.top_) {
    if (top_ && other.top_) return std::weak_ordering::equivalent;
    return top_ ? std::weak_ordering::greater : std::weak_ordering::less;
  }
  if (value_ < other.value_) return std::weak_ordering::less;
  if (value_ > other.value_) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

bool ExtNonNeg::operator==(const ExtNonNeg& other) const {
  return (*this <=> other) == std::weak_ordering::equivalent;
}

ExtNonNeg operator+(ExtNonNeg a, ExtNonNeg b) {
  if (a.is_top() || b.is_top()) return ExtNonNeg::top();
  return ExtNonNeg::finite(a.value() + b.value());
}

std::ostream& operator<<(std::ostream& os, const ExtNonNeg& x) {
  if (x.is_top()) return os << "T";
  return os << x.value();
}

Point::Point(std::initializer_list<double> finite_coords) {
  coords_.reserve(finite_coords.size());
  for (double v : finite_coords) coords_.push_back(ExtNonNeg::finite(v));
}

Point Point::of(std::span<const double> finite_coords) {
  std::vector<ExtNonNeg> c;
  c.reserve(finite_coords.size());
  for (double v : finite_coords) c.push_back(ExtNonNeg::finite(v));
  return Point(std::move(c));
}

Point Point::concat(const Point& other) const {
  std::vector<ExtNonNeg> c = coords_;
  c.insert(c.end(), other.coords_.begin(), other.coords_.end());
  return Point(std::move(c));
}

std::weak_ordering Point::operator<=>(const Point& other) const {
  return std::lexicographical_compare_three_way(coords_.begin(), coords_.end(),
                                                other.coords_.begin(), other.coords_.end());
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
  os << '(';
  for (std::size_t i = 0; i < p.dim(); ++i) os << (i ? "," : "") << p[i];
  return os << ')';
}

namespace {

// -1: a below b, 0: equal, 1: a above b (within tol).
int compare_coord(const ExtNonNeg& a, const ExtNonNeg& b, double tol) {
  if (a.is_top() || b.is_top()) {
    if (a.is_top() && b.is_top()) return 0;
    return a.is_top() ? 1 : -1;
  }
  const double d = a.value() - b.value();
  if (std::abs(d) <= tol) return 0;
  return d < 0 ? -1 : 1;
}

}  // namespace

Ordering compare(const Point& p, const Point& q, double tol) {
  if (p.dim() != q.dim())
    throw DimensionError("compare: arity " + std::to_string(p.dim()) + " vs " +
                         std::to_string(q.dim()));
  bool some_less = false, some_greater = false;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const int c = compare_coord(p[i], q[i], tol);
    some_less |= c < 0;
    some_greater |= c > 0;
    if (some_less && some_greater) return Ordering::Incomparable;
  }
  if (some_less) return Ordering::Less;
  if (some_greater) return Ordering::Greater;
  return Ordering::Equal;
}

bool leq(const Point& p, const Point& q, double tol) {
  const Ordering o = compare(p, q, tol);
  return o == Ordering::Less || o == Ordering::Equal;
}

Space::Space(std::vector<Axis> axes, double tolerance)
    : axes_(std::move(axes)), tolerance_(tolerance) {
  if (tolerance_ < 0.0) throw std::invalid_argument("Space: negative tolerance");
}

std::size_t Space::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < axes_.size(); ++i)
    if (axes_[i].name == name) return i;
  throw std::out_of_range("Space: no axis named '" + name + "'");
}

bool Space::compatible(const Space& other) const {
  if (dim() != other.dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i)
    if (axes_[i].unit != other.axes_[i].unit || axes_[i].kind != other.axes_[i].kind)
      return false;
  return true;
}

void Space::check(const Point& p) const {
  if (p.dim() != dim())
    throw DimensionError("point of arity " + std::to_string(p.dim()) +
                         " in space of arity " + std::to_string(dim()));
  for (std::size_t i = 0; i < dim(); ++i) {
    if (axes_[i].kind != AxisKind::Natural || p[i].is_top()) continue;
    const double v = p[i].value();
    if (v != std::floor(v))
      throw std::invalid_argument("axis '" + axes_[i].name + "' is natural, got " +
                                  std::to_string(v));
  }
}

Space Space::product(const Space& other) const {
  std::vector<Axis> axes = axes_;
  axes.insert(axes.end(), other.axes_.begin(), other.axes_.end());
  return Space(std::move(axes), std::max(tolerance_, other.tolerance_));
}

MinimalSet pareto_min_indices(std::span<const Point> points, double tol) {
  MinimalSet out;
  if (points.empty()) return out;
  const std::size_t dim = points[0].dim();
  for (const Point& p : points)
    if (p.dim() != dim) throw DimensionError("pareto_min: mixed arities");

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  // Lexicographic order: a dominator never sorts after what it dominates.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });

  for (std::size_t idx : order) {
    const Point& p = points[idx];
    bool dominated = false;
    for (std::size_t k = 0; k < out.kept.size(); ++k) {
      const Ordering o = compare(points[out.kept[k]], p, tol);
      if (o == Ordering::Equal) {
        out.ties[k].push_back(idx);
        dominated = true;
        break;
      }
      if (o == Ordering::Less) {
        dominated = true;
        break;
      }
    }
    if (!dominated) {
      out.kept.push_back(idx);
      out.ties.emplace_back();
    }
  }
  return out;
}

Antichain pareto_min(std::size_t dim, std::span<const Point> points, double tol) {
  for (const Point& p : points)
    if (p.dim() != dim)
      throw DimensionError("pareto_min: point of arity " + std::to_string(p.dim()) +
                           " in space of arity " + std::to_string(dim));
  Antichain out(dim, tol);
  const MinimalSet min = pareto_min_indices(points, tol);
  out.points_.reserve(min.kept.size());
  for (std::size_t i : min.kept) out.points_.push_back(points[i]);
  return out;
}

Antichain antichain_union_min(const Antichain& a, const Antichain& b) {
  if (a.dim() != b.dim())
    throw DimensionError("antichain union: arity " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  std::vector<Point> all = a.points();
  all.insert(all.end(), b.points().begin(), b.points().end());
  return pareto_min(a.dim(), all, std::max(a.tolerance(), b.tolerance()));
}

bool dominates(const Antichain& a, const Point& r) {
  if (a.dim() != r.dim())
    throw DimensionError("dominates: antichain arity " + std::to_string(a.dim()) +
                         " vs point arity " + std::to_string(r.dim()));
  return std::any_of(a.begin(), a.end(),
                     [&](const Point& x) { return leq(x, r, a.tolerance()); });
}

}  // namespace mobco::poset
