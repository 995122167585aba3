#pragma once

// Budget meshes and value tables, plus the budget-split merges shared by the
// expected-capture and adaptive-adversary engines.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twolayer/curve.hpp"
#include "twolayer/error.hpp"

namespace twolayer {

/// Uniform partition {0, step, 2 step, ..., budget} of one budget axis.
class Mesh {
 public:
  static constexpr double kDivisibilityTolerance = 1e-9;

  static Mesh make(double budget, double step) {
    if (!std::isfinite(step) || step <= 0.0) {
      throw Error(ErrorKind::NonpositiveStep, "epsilon must be positive, got " + std::to_string(step));
    }
    if (!std::isfinite(budget) || budget < 0.0) {
      throw Error(ErrorKind::NegativeBudget, "budget must be finite and nonnegative");
    }
    const double ratio = budget / step;
    const double intervals = std::round(ratio);
    if (std::abs(ratio - intervals) > kDivisibilityTolerance) {
      throw Error(ErrorKind::NonDivisibleBudget,
                  "budget " + std::to_string(budget) + " is not a multiple of " + std::to_string(step));
    }
    if (intervals >= static_cast<double>(std::numeric_limits<std::uint32_t>::max())) {
      throw Error(ErrorKind::InvalidArgument, "mesh too large");
    }
    return Mesh(step, static_cast<std::size_t>(intervals) + 1, budget);
  }

  double step() const { return step_; }
  std::size_t size() const { return count_; }
  double max() const { return budget_; }

  /// k-th mesh point; the last point is the budget itself.
  double at(std::size_t k) const { return k + 1 == count_ ? budget_ : static_cast<double>(k) * step_; }

  std::vector<double> points() const {
    std::vector<double> out(count_);
    for (std::size_t k = 0; k < count_; ++k) out[k] = at(k);
    return out;
  }

  friend bool operator==(const Mesh&, const Mesh&) = default;

 private:
  Mesh(double step, std::size_t count, double budget) : step_(step), count_(count), budget_(budget) {}

  double step_;
  std::size_t count_;
  double budget_;
};

inline Mesh make_mesh(double budget, double step) { return Mesh::make(budget, step); }

/// Sum merge: expected captured flow adds across subsystems.
struct SumCombine {
  static double apply(double a, double b) { return a + b; }
};

/// Min merge: the adversary takes the weakest subsystem.
struct MinCombine {
  static double apply(double a, double b) { return std::min(a, b); }
};

enum class TableKind { Pair, OuterMerge, InnerMerge };

/// Identifies the sensors behind a pair table (indices into the network).
struct PairTag {
  std::size_t inner = 0;
  std::size_t outer = 0;
};

/// Per-sensor mesh indices recovered from a table cell.
struct IndexAllocation {
  std::vector<std::size_t> inner;
  std::vector<std::size_t> outer;
};

/// Dense row-major |X| x |Y| grid of optimal values. Rows index the inner
/// budget, columns the outer budget.
///
/// Merged tables keep their operands alive and record, per cell, the budget
/// granted to the left operand; the right operand receives the remainder.
/// Merges scan exact splits y' + y'' = Y_b only. Operands are nondecreasing in
/// both indices (pair tables are, and both merges preserve it), so this attains
/// the max over y' + y'' <= Y_b. Ties go to the smallest left share.
/// Pair tables record nothing: a leaf always spends the full cell budget.
class ValueTable {
 public:
  const Mesh& x_mesh() const { return x_mesh_; }
  const Mesh& y_mesh() const { return y_mesh_; }
  std::size_t rows() const { return x_mesh_.size(); }
  std::size_t cols() const { return y_mesh_.size(); }
  std::size_t cell_count() const { return values_.size(); }
  TableKind kind() const { return kind_; }

  double operator()(std::size_t a, std::size_t b) const { return values_[a * cols() + b]; }
  std::span<const double> row(std::size_t a) const { return {values_.data() + a * cols(), cols()}; }
  const std::vector<double>& values() const { return values_; }

  /// Inner / outer sensor indices covered by this table, in fold order.
  const std::vector<std::size_t>& inner_sensors() const { return inner_; }
  const std::vector<std::size_t>& outer_sensors() const { return outer_; }

  const ValueTable* left() const { return left_.get(); }
  const ValueTable* right() const { return right_.get(); }

  /// Left operand's inner-budget index at a cell (inner merges only).
  std::size_t x_split(std::size_t a, std::size_t b) const {
    return kind_ == TableKind::InnerMerge ? x_split_[a * cols() + b] : a;
  }
  /// Left operand's outer-budget index at a cell (merges only).
  std::size_t y_split(std::size_t a, std::size_t b) const {
    return kind_ == TableKind::Pair ? b : y_split_[a * cols() + b];
  }

  /// values(a, b) = F * (D_y + D_x (1 - D_y)) at the mesh budgets.
  static ValueTable pair(const PwlCurve& inner_curve, const PwlCurve& outer_curve, double flow,
                         const Mesh& x_mesh, const Mesh& y_mesh, PairTag tag = {}) {
    if (x_mesh.max() > inner_curve.domain_max() + PwlCurve::kDomainTolerance) {
      throw Error(ErrorKind::DomainExceeded, "inner budget " + std::to_string(x_mesh.max()) +
                                                 " beyond curve domain " +
                                                 std::to_string(inner_curve.domain_max()));
    }
    if (y_mesh.max() > outer_curve.domain_max() + PwlCurve::kDomainTolerance) {
      throw Error(ErrorKind::DomainExceeded, "outer budget " + std::to_string(y_mesh.max()) +
                                                 " beyond curve domain " +
                                                 std::to_string(outer_curve.domain_max()));
    }
    ValueTable t(TableKind::Pair, x_mesh, y_mesh);
    t.inner_ = {tag.inner};
    t.outer_ = {tag.outer};
    std::vector<double> outer_miss(y_mesh.size());
    for (std::size_t b = 0; b < y_mesh.size(); ++b) outer_miss[b] = 1.0 - outer_curve(y_mesh.at(b));
    for (std::size_t a = 0; a < x_mesh.size(); ++a) {
      const double inner_miss = 1.0 - inner_curve(x_mesh.at(a));
      double* out = t.values_.data() + a * t.cols();
      // miss-probability form keeps the grid exactly monotone under rounding
      for (std::size_t b = 0; b < y_mesh.size(); ++b) out[b] = flow * (1.0 - inner_miss * outer_miss[b]);
    }
    return t;
  }

  /// Siblings under one inner sensor: both see the full inner budget of the
  /// row; only the outer budget is split.
  template <class Combine>
  static ValueTable merge_outer(const ValueTable& left, const ValueTable& right) {
    check_meshes(left, right);
    if (left.kind_ == TableKind::InnerMerge || right.kind_ == TableKind::InnerMerge ||
        left.inner_ != right.inner_) {
      throw Error(ErrorKind::BranchMismatch, "outer merge operands must share one inner sensor");
    }
    check_disjoint(left.outer_, right.outer_, "outer");

    ValueTable t(TableKind::OuterMerge, left.x_mesh_, left.y_mesh_);
    t.adopt(left, right);
    t.inner_ = left.inner_;
    t.y_split_.assign(t.cell_count(), 0);
    const std::size_t ny = t.cols();
    for (std::size_t a = 0; a < t.rows(); ++a) {
      const double* lrow = left.values_.data() + a * ny;
      const double* rrow = right.values_.data() + a * ny;
      for (std::size_t b = 0; b < ny; ++b) {
        double best = -std::numeric_limits<double>::infinity();
        std::uint32_t arg = 0;
        for (std::size_t ys = 0; ys <= b; ++ys) {
          const double v = Combine::apply(lrow[ys], rrow[b - ys]);
          if (v > best) {
            best = v;
            arg = static_cast<std::uint32_t>(ys);
          }
        }
        t.values_[a * ny + b] = best;
        t.y_split_[a * ny + b] = arg;
      }
    }
    return t;
  }

  /// Disjoint branches: both the inner and the outer budget are split.
  template <class Combine>
  static ValueTable merge_inner(const ValueTable& left, const ValueTable& right) {
    check_meshes(left, right);
    check_disjoint(left.inner_, right.inner_, "inner");
    check_disjoint(left.outer_, right.outer_, "outer");

    ValueTable t(TableKind::InnerMerge, left.x_mesh_, left.y_mesh_);
    t.adopt(left, right);
    t.inner_ = left.inner_;
    t.inner_.insert(t.inner_.end(), right.inner_.begin(), right.inner_.end());
    t.x_split_.assign(t.cell_count(), 0);
    t.y_split_.assign(t.cell_count(), 0);
    const std::size_t ny = t.cols();
    const double* lv = left.values_.data();
    const double* rv = right.values_.data();
    for (std::size_t a = 0; a < t.rows(); ++a) {
      for (std::size_t b = 0; b < ny; ++b) {
        double best = -std::numeric_limits<double>::infinity();
        std::uint32_t arg_x = 0;
        std::uint32_t arg_y = 0;
        for (std::size_t xs = 0; xs <= a; ++xs) {
          const double* lrow = lv + xs * ny;
          const double* rrow = rv + (a - xs) * ny;
          for (std::size_t ys = 0; ys <= b; ++ys) {
            const double v = Combine::apply(lrow[ys], rrow[b - ys]);
            if (v > best) {
              best = v;
              arg_x = static_cast<std::uint32_t>(xs);
              arg_y = static_cast<std::uint32_t>(ys);
            }
          }
        }
        t.values_[a * ny + b] = best;
        t.x_split_[a * ny + b] = arg_x;
        t.y_split_[a * ny + b] = arg_y;
      }
    }
    return t;
  }

  /// Walks the merge tree from cell (a, b) down to the leaves.
  /// `n_inner` / `n_outer` size the result; sensors not covered by the
  /// table get index 0.
  IndexAllocation recover(std::size_t a, std::size_t b, std::size_t n_inner, std::size_t n_outer) const {
    if (a >= rows() || b >= cols()) throw Error(ErrorKind::InvalidArgument, "cell out of range");
    IndexAllocation out{std::vector<std::size_t>(n_inner, 0), std::vector<std::size_t>(n_outer, 0)};
    walk(a, b, out);
    return out;
  }

 private:
  ValueTable(TableKind kind, const Mesh& x_mesh, const Mesh& y_mesh)
      : x_mesh_(x_mesh), y_mesh_(y_mesh), values_(x_mesh.size() * y_mesh.size(), 0.0), kind_(kind) {}

  static void check_meshes(const ValueTable& left, const ValueTable& right) {
    if (!(left.x_mesh_ == right.x_mesh_) || !(left.y_mesh_ == right.y_mesh_)) {
      throw Error(ErrorKind::MeshMismatch, "operands use different budget meshes");
    }
  }

  static void check_disjoint(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                             const char* layer) {
    for (std::size_t x : a) {
      if (std::find(b.begin(), b.end(), x) != b.end()) {
        throw Error(ErrorKind::BranchMismatch,
                    std::string("operands share ") + layer + " sensor index " + std::to_string(x));
      }
    }
  }

  void adopt(const ValueTable& left, const ValueTable& right) {
    left_ = std::make_shared<const ValueTable>(left);
    right_ = std::make_shared<const ValueTable>(right);
    outer_ = left.outer_;
    outer_.insert(outer_.end(), right.outer_.begin(), right.outer_.end());
  }

  void walk(std::size_t a, std::size_t b, IndexAllocation& out) const {
    switch (kind_) {
      case TableKind::Pair:
        if (inner_[0] < out.inner.size()) out.inner[inner_[0]] = a;
        if (outer_[0] < out.outer.size()) out.outer[outer_[0]] = b;
        return;
      case TableKind::OuterMerge: {
        const std::size_t ys = y_split_[a * cols() + b];
        left_->walk(a, ys, out);
        right_->walk(a, b - ys, out);
        return;
      }
      case TableKind::InnerMerge: {
        const std::size_t xs = x_split_[a * cols() + b];
        const std::size_t ys = y_split_[a * cols() + b];
        left_->walk(xs, ys, out);
        right_->walk(a - xs, b - ys, out);
        return;
      }
    }
  }

  Mesh x_mesh_;
  Mesh y_mesh_;
  std::vector<double> values_;
  TableKind kind_;
  std::vector<std::uint32_t> x_split_;
  std::vector<std::uint32_t> y_split_;
  std::shared_ptr<const ValueTable> left_;
  std::shared_ptr<const ValueTable> right_;
  std::vector<std::size_t> inner_;
  std::vector<std::size_t> outer_;
};

}  // namespace twolayer
