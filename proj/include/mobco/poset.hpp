#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mobco::poset {

/// Element of the completed nonnegative reals (or naturals): a finite value
/// >= 0, or the adjoined top element that sits above every finite value.
class ExtNonNeg {
 public:
  constexpr ExtNonNeg() = default;
  /// Throws std::invalid_argument for negative or NaN input.
  static ExtNonNeg finite(double value);
  static constexpr ExtNonNeg top() { return ExtNonNeg(0.0, true); }

  constexpr bool is_top() const { return top_; }
  /// Throws std::logic_error on top.
  double value() const;
  /// Finite value, or +inf for top. For printing and plotting only.
  double as_double() const;

  std::weak_ordering operator<=>(const ExtNonNeg& other) const;
  bool operator==(const ExtNonNeg& other) const;

 private:
  constexpr ExtNonNeg(double v, bool top) : value_(v), top_(top) {}
  double value_ = 0.0;
  bool top_ = false;
};

ExtNonNeg operator+(ExtNonNeg a, ExtNonNeg b);
std::ostream& operator<<(std::ostream& os, const ExtNonNeg& x);

enum class Ordering { Less, Equal, Greater, Incomparable };

/// The same relation read in the opposite poset.
constexpr Ordering opposite(Ordering o) {
  switch (o) {
    case Ordering::Less: return Ordering::Greater;
    case Ordering::Greater: return Ordering::Less;
    default: return o;
  }
}

/// Point of a product of completed chains, ordered coordinate-wise.
/// operator< is the lexicographic order used for deterministic storage; it is
/// not the product order (use compare / leq for that).
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<ExtNonNeg> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<double> finite_coords);
  static Point of(std::span<const double> finite_coords);

  std::size_t dim() const { return coords_.size(); }
  const ExtNonNeg& operator[](std::size_t i) const { return coords_[i]; }
  ExtNonNeg& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<ExtNonNeg>& coords() const { return coords_; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  /// Concatenation, the point of the product space.
  Point concat(const Point& other) const;

  std::weak_ordering operator<=>(const Point& other) const;
  bool operator==(const Point& other) const = default;

 private:
  std::vector<ExtNonNeg> coords_;
};

std::ostream& operator<<(std::ostream& os, const Point& p);

/// Product-order comparison. A positive tolerance treats finite coordinates
/// within `tol` of each other as equal. Throws DimensionError on arity mismatch.
Ordering compare(const Point& p, const Point& q, double tol = 0.0);
bool leq(const Point& p, const Point& q, double tol = 0.0);

enum class AxisKind { Real, Natural };

struct Axis {
  std::string name;
  std::string unit;
  AxisKind kind = AxisKind::Real;
};

/// Descriptor of a product of completed chains: named axes with units.
class Space {
 public:
  Space() = default;
  explicit Space(std::vector<Axis> axes, double tolerance = 0.0);

  std::size_t dim() const { return axes_.size(); }
  const std::vector<Axis>& axes() const { return axes_; }
  const Axis& axis(std::size_t i) const { return axes_.at(i); }
  double tolerance() const { return tolerance_; }
  /// Throws std::out_of_range when absent.
  std::size_t index_of(const std::string& name) const;

  /// Same arity, and each axis agrees in unit and kind.
  bool compatible(const Space& other) const;
  /// Throws DimensionError on arity mismatch, std::invalid_argument on a
  /// fractional value for a natural axis.
  void check(const Point& p) const;

  Space product(const Space& other) const;

 private:
  std::vector<Axis> axes_;
  double tolerance_ = 0.0;
};

/// Finite set of pairwise incomparable points of one space, stored in
/// lexicographic order. The empty antichain denotes infeasibility.
class Antichain {
 public:
  explicit Antichain(std::size_t dim = 0, double tol = 0.0) : dim_(dim), tol_(tol) {}

  std::size_t dim() const { return dim_; }
  double tolerance() const { return tol_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<Point>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  bool operator==(const Antichain& other) const {
    return dim_ == other.dim_ && points_ == other.points_;
  }

 private:
  friend Antichain pareto_min(std::size_t, std::span<const Point>, double);
  std::size_t dim_;
  double tol_;
  std::vector<Point> points_;
};

/// Indices of the minimal points of `points`, in lexicographic order of the
/// points. Equal points collapse onto the earliest input index; the other
/// indices are reported in `ties`.
struct MinimalSet {
  std::vector<std::size_t> kept;
  std::vector<std::vector<std::size_t>> ties;  // parallel to kept
};

MinimalSet pareto_min_indices(std::span<const Point> points, double tol = 0.0);
Antichain pareto_min(std::size_t dim, std::span<const Point> points, double tol = 0.0);
Antichain antichain_union_min(const Antichain& a, const Antichain& b);
/// True iff some point of `a` is below `r`.
bool dominates(const Antichain& a, const Point& r);

}  // namespace mobco::poset
