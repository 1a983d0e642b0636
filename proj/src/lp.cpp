#include "mobco/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>

namespace mobco::lp {

std::size_t LinearProgram::add_column(double cost, std::string name,
                                      std::optional<double> upper) {
  if (!std::isfinite(cost)) throw std::invalid_argument("LP: non-finite cost");
  if (upper && !(*upper >= 0.0)) throw std::invalid_argument("LP: upper bound must be >= 0");
  cost_.push_back(cost);
  upper_.push_back(upper);
  names_.push_back(std::move(name));
  return cost_.size() - 1;
}

std::size_t LinearProgram::add_row(std::vector<Term> terms, Sense sense, double rhs,
                                   std::string name) {
  if (!std::isfinite(rhs)) throw std::invalid_argument("LP: non-finite right-hand side");
  for (const Term& t : terms) {
    if (t.column >= cost_.size()) throw std::invalid_argument("LP: unknown column in row");
    if (!std::isfinite(t.coefficient)) throw std::invalid_argument("LP: non-finite coefficient");
  }
  rows_.push_back({std::move(terms), sense, rhs, std::move(name)});
  return rows_.size() - 1;
}

void LinearProgram::set_cost(std::size_t column, double cost) {
  if (!std::isfinite(cost)) throw std::invalid_argument("LP: non-finite cost");
  cost_.at(column) = cost;
}

double LinearProgram::objective(const std::vector<double>& x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < cost_.size(); ++j) s += cost_[j] * x.at(j);
  return s;
}

namespace {

double violation(Sense sense, double activity, double rhs) {
  switch (sense) {
    case Sense::Le: return std::max(0.0, activity - rhs);
    case Sense::Ge: return std::max(0.0, rhs - activity);
    case Sense::Eq: return std::abs(activity - rhs);
  }
  return 0.0;
}

}  // namespace

double LinearProgram::scaled_residual(const std::vector<double>& x) const {
  double worst = 0.0;
  for (const Row& r : rows_) {
    double act = 0.0, mag = std::max(1.0, std::abs(r.rhs));
    for (const Term& t : r.terms) {
      act += t.coefficient * x.at(t.column);
      mag = std::max(mag, std::abs(t.coefficient * x[t.column]));
    }
    worst = std::max(worst, violation(r.sense, act, r.rhs) / mag);
  }
  for (std::size_t j = 0; j < cost_.size(); ++j) {
    worst = std::max(worst, std::max(0.0, -x.at(j)) / std::max(1.0, std::abs(x[j])));
    if (upper_[j])
      worst = std::max(worst, std::max(0.0, x[j] - *upper_[j]) / std::max(1.0, *upper_[j]));
  }
  return worst;
}

double LinearProgram::residual(const std::vector<double>& x) const {
  double worst = 0.0;
  for (const Row& r : rows_) {
    double act = 0.0;
    for (const Term& t : r.terms) act += t.coefficient * x.at(t.column);
    worst = std::max(worst, violation(r.sense, act, r.rhs));
  }
  for (std::size_t j = 0; j < cost_.size(); ++j) {
    worst = std::max(worst, -x.at(j));
    if (upper_[j]) worst = std::max(worst, x[j] - *upper_[j]);
  }
  return worst;
}

const char* to_string(Status status) {
  switch (status) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::NumericalFailure: return "numerical_failure";
  }
  return "?";
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

using Entries = std::vector<std::pair<std::uint32_t, double>>;

// Standard form A x = b, x >= 0, over structural, slack and artificial
// columns, with each row scaled by a power of two.
class Engine {
 public:
  Engine(const LinearProgram& lp, const SimplexOptions& opt) : lp_(lp), opt_(opt) {
    n_struct_ = lp.num_columns();
    std::vector<Row> rows;
    rows.reserve(lp.num_rows());
    for (const Row& r : lp.rows()) {
      Row copy;
      copy.sense = r.sense;
      copy.rhs = r.rhs;
      // Merge duplicate columns and drop zeros.
      std::vector<Term> t = r.terms;
      std::sort(t.begin(), t.end(),
                [](const Term& a, const Term& b) { return a.column < b.column; });
      for (const Term& term : t) {
        if (!copy.terms.empty() && copy.terms.back().column == term.column)
          copy.terms.back().coefficient += term.coefficient;
        else
          copy.terms.push_back(term);
      }
      std::erase_if(copy.terms, [](const Term& x) { return x.coefficient == 0.0; });
      rows.push_back(std::move(copy));
    }
    for (std::size_t j = 0; j < n_struct_; ++j)
      if (lp.upper()[j]) rows.push_back({{{j, 1.0}}, Sense::Le, *lp.upper()[j], {}});

    cols_.assign(n_struct_, {});
    for (const Row& r : rows) {
      if (r.terms.empty()) {
        // Constant row: feasible or not on its own.
        if (violation(r.sense, 0.0, r.rhs) > opt_.feasibility_tolerance * (1 + std::abs(r.rhs)))
          trivially_infeasible_ = true;
        continue;
      }
      double amax = 0.0;
      for (const Term& t : r.terms) amax = std::max(amax, std::abs(t.coefficient));
      const double scale = std::ldexp(1.0, -std::ilogb(amax));
      double sign = r.rhs < 0.0 ? -1.0 : 1.0;
      const auto i = static_cast<std::uint32_t>(b_.size());
      b_.push_back(sign * scale * r.rhs);
      for (const Term& t : r.terms) cols_[t.column].emplace_back(i, sign * scale * t.coefficient);
      double slack = 0.0;
      if (r.sense == Sense::Le) slack = sign;
      if (r.sense == Sense::Ge) slack = -sign;
      std::size_t unit = kNone;
      if (slack != 0.0) {
        cols_.push_back({{i, slack}});
        kind_.resize(cols_.size(), Kind::Structural);
        kind_.back() = Kind::Slack;
        if (slack > 0.0) unit = cols_.size() - 1;
      }
      if (unit == kNone) {
        cols_.push_back({{i, 1.0}});
        kind_.resize(cols_.size(), Kind::Structural);
        kind_.back() = Kind::Artificial;
        unit = cols_.size() - 1;
      }
      row_unit_.push_back(unit);
    }
    kind_.resize(cols_.size(), Kind::Structural);
    m_ = b_.size();
    n_ = cols_.size();

    double cmax = 0.0;
    for (double c : lp.cost()) cmax = std::max(cmax, std::abs(c));
    cost_.assign(n_, 0.0);
    if (cmax > 0.0)
      for (std::size_t j = 0; j < n_struct_; ++j) cost_[j] = lp.cost()[j] / cmax;
    for (std::size_t i = 0; i < m_; ++i)
      if (kind_[row_unit_[i]] == Kind::Artificial) art_bmax_ = std::max(art_bmax_, std::abs(b_[i]));

    max_iter_ = opt_.max_iterations ? opt_.max_iterations
                                    : std::max<std::size_t>(20000, 50 * (m_ + n_));
  }

  Result run(const std::vector<std::size_t>& hint) {
    Result res;
    if (trivially_infeasible_) {
      res.status = Status::Infeasible;
      res.message = "constant row violated";
      return res;
    }
    if (m_ == 0) return finish_empty();

    bool warm = !hint.empty() && try_warm_start(hint);
    if (!warm) {
      basis_ = row_unit_;
      pos_.assign(n_, kNone);
      for (std::size_t i = 0; i < m_; ++i) pos_[basis_[i]] = i;
      binv_.assign(m_ * m_, 0.0);
      for (std::size_t i = 0; i < m_; ++i) binv_[i * m_ + i] = 1.0;
      xb_ = b_;
      since_refactor_ = 0;

      bool need_phase1 = false;
      for (std::size_t i = 0; i < m_; ++i) need_phase1 |= kind_[basis_[i]] == Kind::Artificial;
      if (need_phase1) {
        std::vector<double> c1(n_, 0.0);
        for (std::size_t j = 0; j < n_; ++j)
          if (kind_[j] == Kind::Artificial) c1[j] = 1.0;
        const Status s = iterate(c1);
        if (s != Status::Optimal) return fail(s, "phase 1");
        double infeas = 0.0;
        for (std::size_t i = 0; i < m_; ++i)
          if (kind_[basis_[i]] == Kind::Artificial) infeas += std::max(0.0, xb_[i]);
        if (infeas > 1e-8 * (1.0 + art_bmax_)) {
          res.status = Status::Infeasible;
          res.iterations = iterations_;
          res.message = "phase 1 optimum " + std::to_string(infeas);
          return res;
        }
      }
    }
    const Status s = iterate(cost_);
    if (s != Status::Optimal) return fail(s, "phase 2");

    res.x.assign(n_struct_, 0.0);
    double xmax = 0.0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_struct_) {
        res.x[basis_[i]] = xb_[i];
        xmax = std::max(xmax, std::abs(xb_[i]));
      }
    for (double& v : res.x) {
      if (v < 0.0) {
        if (v < -opt_.feasibility_tolerance * (1.0 + xmax))
          return fail(Status::NumericalFailure, "negative basic variable " + std::to_string(v));
        v = 0.0;
      }
    }
    const double resid = lp_.scaled_residual(res.x);
    if (resid > opt_.residual_tolerance)
      return fail(Status::NumericalFailure, "residual " + std::to_string(resid));
    res.status = Status::Optimal;
    res.objective = lp_.objective(res.x);
    res.iterations = iterations_;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_struct_) res.basis.push_back(basis_[i]);
    std::sort(res.basis.begin(), res.basis.end());
    return res;
  }

 private:
  enum class Kind : unsigned char { Structural, Slack, Artificial };

  Result finish_empty() {
    Result res;
    res.x.assign(n_struct_, 0.0);
    for (std::size_t j = 0; j < n_struct_; ++j) {
      if (lp_.cost()[j] < 0.0 && !lp_.upper()[j]) {
        res.status = Status::Unbounded;
        return res;
      }
    }
    res.status = Status::Optimal;
    return res;
  }

  Result fail(Status s, const std::string& where) {
    Result res;
    res.status = s;
    res.iterations = iterations_;
    res.message = where + (message_.empty() ? "" : ": " + message_);
    return res;
  }

  bool refactor() {
    // Gauss-Jordan on [B | I], row-major, partial pivoting.
    const std::size_t w = 2 * m_;
    std::vector<double> a(m_ * w, 0.0);
    for (std::size_t k = 0; k < m_; ++k) {
      for (const auto& [i, v] : cols_[basis_[k]]) a[i * w + k] = v;
      a[k * w + m_ + k] = 1.0;
    }
    for (std::size_t c = 0; c < m_; ++c) {
      std::size_t p = c;
      for (std::size_t r = c + 1; r < m_; ++r)
        if (std::abs(a[r * w + c]) > std::abs(a[p * w + c])) p = r;
      if (std::abs(a[p * w + c]) < 1e-11) {
        message_ = "singular basis";
        return false;
      }
      if (p != c)
        std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(p * w),
                         a.begin() + static_cast<std::ptrdiff_t>(p * w + w),
                         a.begin() + static_cast<std::ptrdiff_t>(c * w));
      const double inv = 1.0 / a[c * w + c];
      for (std::size_t k = c; k < w; ++k) a[c * w + k] *= inv;
      for (std::size_t r = 0; r < m_; ++r) {
        if (r == c) continue;
        const double f = a[r * w + c];
        if (f == 0.0) continue;
        for (std::size_t k = c; k < w; ++k) a[r * w + k] -= f * a[c * w + k];
      }
    }
    // binv_ is column-major: binv_[k * m + i] = (B^-1)_{i,k}.
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t k = 0; k < m_; ++k) binv_[k * m_ + i] = a[i * w + m_ + k];
    xb_.assign(m_, 0.0);
    for (std::size_t k = 0; k < m_; ++k) {
      if (b_[k] == 0.0) continue;
      const double* col = &binv_[k * m_];
      for (std::size_t i = 0; i < m_; ++i) xb_[i] += col[i] * b_[k];
    }
    since_refactor_ = 0;
    return true;
  }

  // Picks an independent set of columns: hinted ones first, then the unit
  // column of each remaining row. Accepts it if primal feasible.
  bool try_warm_start(const std::vector<std::size_t>& hint) {
    std::vector<std::size_t> candidates;
    for (std::size_t j : hint)
      if (j < n_struct_) candidates.push_back(j);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (std::size_t u : row_unit_) candidates.push_back(u);
    std::vector<std::vector<double>> reduced;  // eliminated pivot columns (dense)
    std::vector<std::size_t> pivot_row;
    std::vector<char> row_used(m_, 0);
    std::vector<std::size_t> chosen;
    for (std::size_t j : candidates) {
      if (chosen.size() == m_) break;
      std::vector<double> v(m_, 0.0);
      for (const auto& [i, a] : cols_[j]) v[i] = a;
      for (std::size_t k = 0; k < reduced.size(); ++k) {
        const double f = v[pivot_row[k]];
        if (f == 0.0) continue;
        const std::vector<double>& u = reduced[k];
        for (std::size_t i = 0; i < m_; ++i) v[i] -= f * u[i];
      }
      // Earliest row with a pivot of reasonable size.
      double vmax = 0.0;
      for (std::size_t i = 0; i < m_; ++i)
        if (!row_used[i]) vmax = std::max(vmax, std::abs(v[i]));
      if (vmax <= 1e-9) continue;
      std::size_t p = 0;
      while (row_used[p] || std::abs(v[p]) < 0.01 * vmax) ++p;
      const double inv = 1.0 / v[p];
      for (double& x : v) x *= inv;
      row_used[p] = 1;
      reduced.push_back(std::move(v));
      pivot_row.push_back(p);
      chosen.push_back(j);
    }
    if (chosen.size() != m_) return false;
    basis_ = chosen;
    pos_.assign(n_, kNone);
    for (std::size_t i = 0; i < m_; ++i) pos_[basis_[i]] = i;
    binv_.assign(m_ * m_, 0.0);
    if (!refactor()) {
      message_.clear();
      return false;
    }
    const double tol = 1e-10;
    for (std::size_t i = 0; i < m_; ++i) {
      if (xb_[i] < -tol) return false;
      if (kind_[basis_[i]] == Kind::Artificial && xb_[i] > tol) return false;
    }
    return true;
  }

  Status iterate(const std::vector<double>& c) {
    std::vector<double> y(m_), cb(m_), alpha(m_);
    std::size_t degenerate = 0;
    bool bland = false;
    for (;;) {
      if (iterations_ >= max_iter_) {
        message_ = "iteration limit";
        return Status::NumericalFailure;
      }
      if (since_refactor_ >= opt_.refactor_interval && !refactor())
        return Status::NumericalFailure;

      for (std::size_t i = 0; i < m_; ++i) cb[i] = c[basis_[i]];
      for (std::size_t k = 0; k < m_; ++k) {
        const double* col = &binv_[k * m_];
        double s = 0.0;
        for (std::size_t i = 0; i < m_; ++i) s += cb[i] * col[i];
        y[k] = s;
      }

      std::size_t q = kNone;
      double best = -opt_.optimality_tolerance;
      for (std::size_t j = 0; j < n_; ++j) {
        if (pos_[j] != kNone || kind_[j] == Kind::Artificial) continue;
        double d = c[j];
        for (const auto& [i, a] : cols_[j]) d -= y[i] * a;
        if (d < best) {
          q = j;
          if (bland) break;
          best = d;
        }
      }
      if (q == kNone) {
        if (since_refactor_ == 0) return Status::Optimal;
        if (!refactor()) return Status::NumericalFailure;
        continue;
      }

      std::fill(alpha.begin(), alpha.end(), 0.0);
      for (const auto& [k, a] : cols_[q]) {
        const double* col = &binv_[k * m_];
        for (std::size_t i = 0; i < m_; ++i) alpha[i] += a * col[i];
      }

      double theta = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double r = ratio(i, alpha[i]);
        if (r < theta) theta = r;
      }
      if (!std::isfinite(theta)) return Status::Unbounded;
      const double tie = theta + 1e-12 * (1.0 + theta);
      std::size_t leave = kNone;
      for (std::size_t i = 0; i < m_; ++i) {
        if (ratio(i, alpha[i]) > tie) continue;
        if (leave == kNone) {
          leave = i;
        } else if (bland) {
          if (basis_[i] < basis_[leave]) leave = i;
        } else if (std::abs(alpha[i]) > std::abs(alpha[leave])) {
          leave = i;
        }
      }
      const double step = ratio(leave, alpha[leave]);
      pivot(leave, q, alpha, step);
      ++iterations_;

      if (step <= 1e-12) {
        if (++degenerate >= opt_.degenerate_limit) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }
    }
  }

  double ratio(std::size_t i, double a) const {
    if (kind_[basis_[i]] == Kind::Artificial && std::abs(a) > opt_.pivot_tolerance) {
      // An artificial must stay at zero once feasibility is reached.
      if (a > 0.0) return std::max(0.0, xb_[i]) / a;
      if (xb_[i] <= opt_.feasibility_tolerance) return 0.0;
      return std::numeric_limits<double>::infinity();
    }
    if (a > opt_.pivot_tolerance) return std::max(0.0, xb_[i]) / a;
    return std::numeric_limits<double>::infinity();
  }

  void pivot(std::size_t r, std::size_t q, const std::vector<double>& alpha, double step) {
    for (std::size_t i = 0; i < m_; ++i) xb_[i] -= step * alpha[i];
    xb_[r] = step;
    const double ar = alpha[r];
    for (std::size_t k = 0; k < m_; ++k) {
      double* col = &binv_[k * m_];
      const double p = col[r] / ar;
      if (p != 0.0)
        for (std::size_t i = 0; i < m_; ++i) col[i] -= alpha[i] * p;
      col[r] = p;
    }
    pos_[basis_[r]] = kNone;
    basis_[r] = q;
    pos_[q] = r;
    ++since_refactor_;
  }

  const LinearProgram& lp_;
  const SimplexOptions& opt_;
  std::size_t n_struct_ = 0, m_ = 0, n_ = 0;
  std::vector<Entries> cols_;
  std::vector<Kind> kind_;
  std::vector<double> b_, cost_;
  std::vector<std::size_t> row_unit_;
  double art_bmax_ = 0.0;
  bool trivially_infeasible_ = false;

  std::vector<std::size_t> basis_, pos_;
  std::vector<double> binv_, xb_;
  std::size_t since_refactor_ = 0, iterations_ = 0, max_iter_ = 0;
  std::string message_;
};

}  // namespace

Result RevisedSimplex::solve(const LinearProgram& lp, const std::vector<std::size_t>& hint) const {
  if (!hint.empty()) {
    Engine warm(lp, options_);
    Result r = warm.run(hint);
    if (r.status != Status::NumericalFailure) return r;
  }
  Engine engine(lp, options_);
  return engine.run({});
}

Result solve_lp(const LinearProgram& lp) { return RevisedSimplex().solve(lp); }

}  // namespace mobco::lp
