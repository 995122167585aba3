#pragma once

// Concave nondecreasing piecewise-linear detection curves.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "twolayer/error.hpp"

namespace twolayer {

/// r -> slope * r + intercept, one piece of a min-of-lines curve.
struct AffineLine {
  double slope = 0.0;
  double intercept = 0.0;

  double operator()(double r) const { return slope * r + intercept; }
};

struct Breakpoint {
  double budget = 0.0;
  double value = 0.0;

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// One linear piece of a curve, as consumed by slope-ordered allocation.
struct Segment {
  double start = 0.0;
  double length = 0.0;
  double slope = 0.0;
};

/// A detection curve D(r) on [0, domain_max], stored as breakpoints.
///
/// Invariants (checked at construction):
///   - first breakpoint at budget 0 with value >= 0
///   - budgets strictly increasing, values nondecreasing and within [0, 1]
///   - segment slopes nonincreasing (concave)
///   - no two adjacent segments share a slope (colinear points are merged)
///
/// Instances are immutable.
class PwlCurve {
 public:
  static constexpr double kSlopeTolerance = 1e-12;
  static constexpr double kDomainTolerance = 1e-9;

  /// Pointwise min of `lines` and the constant 1 over [0, domain_max].
  static PwlCurve from_lines(std::span<const AffineLine> lines, double domain_max) {
    if (lines.empty()) throw Error(ErrorKind::EmptyLines, "at least one line is required");
    check_domain(domain_max);
    for (const auto& line : lines) {
      if (!std::isfinite(line.slope) || !std::isfinite(line.intercept) || line.slope < 0.0) {
        throw Error(ErrorKind::InvalidLine, "line slopes must be finite and nonnegative");
      }
    }

    auto envelope = [&](double r) {
      double v = lines.front()(r);
      for (const auto& line : lines) v = std::min(v, line(r));
      return v;
    };
    if (envelope(0.0) < 0.0) {
      throw Error(ErrorKind::NegativeAtZero, "min of lines is negative at zero budget");
    }

    std::vector<AffineLine> pieces(lines.begin(), lines.end());
    pieces.push_back({0.0, 1.0});
    std::vector<double> knots{0.0, domain_max};
    for (std::size_t a = 0; a < pieces.size(); ++a) {
      for (std::size_t b = a + 1; b < pieces.size(); ++b) {
        const double ds = pieces[a].slope - pieces[b].slope;
        if (ds == 0.0) continue;
        const double r = (pieces[b].intercept - pieces[a].intercept) / ds;
        if (r > 0.0 && r < domain_max) knots.push_back(r);
      }
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    std::vector<Breakpoint> points;
    points.reserve(knots.size());
    for (double r : knots) points.push_back({r, std::min(1.0, envelope(r))});

    PwlCurve curve;
    curve.clamped_ = envelope(domain_max) > 1.0;
    curve.points_ = merge_colinear(std::move(points));
    curve.finish();
    return curve;
  }

  /// Direct breakpoint input. Values above 1 are clamped (see clamped()).
  static PwlCurve from_breakpoints(std::vector<Breakpoint> points) {
    if (points.size() < 2) {
      throw Error(ErrorKind::InvalidBreakpoints, "need at least two breakpoints");
    }
    for (const auto& p : points) {
      if (!std::isfinite(p.budget) || !std::isfinite(p.value)) {
        throw Error(ErrorKind::InvalidBreakpoints, "breakpoints must be finite");
      }
    }
    if (points.front().budget != 0.0) {
      throw Error(ErrorKind::InvalidBreakpoints, "first breakpoint must be at budget 0");
    }
    if (points.front().value < 0.0) {
      throw Error(ErrorKind::NegativeAtZero, "value at zero budget is negative");
    }
    for (std::size_t k = 1; k < points.size(); ++k) {
      if (!(points[k].budget > points[k - 1].budget)) {
        throw Error(ErrorKind::InvalidBreakpoints, "budgets must be strictly increasing");
      }
      if (points[k].value < points[k - 1].value) {
        throw Error(ErrorKind::InvalidBreakpoints, "values must be nondecreasing");
      }
    }
    for (std::size_t k = 2; k < points.size(); ++k) {
      if (slope(points[k - 1], points[k]) > slope(points[k - 2], points[k - 1]) + kSlopeTolerance) {
        throw Error(ErrorKind::NotConcaveRepresentable,
                    "slope increases at budget " + std::to_string(points[k - 1].budget));
      }
    }

    PwlCurve curve;
    if (points.back().value > 1.0) {
      curve.clamped_ = true;
      std::vector<Breakpoint> clipped;
      for (std::size_t k = 0; k < points.size(); ++k) {
        if (points[k].value <= 1.0) {
          clipped.push_back(points[k]);
          continue;
        }
        if (k == 0) {
          clipped.push_back({0.0, 1.0});
        } else if (const Breakpoint& prev = points[k - 1]; prev.value < 1.0) {
          const double r = prev.budget + (1.0 - prev.value) / slope(prev, points[k]);
          if (r > prev.budget && r < points[k].budget) clipped.push_back({r, 1.0});
        }
        clipped.push_back({points.back().budget, 1.0});
        break;
      }
      points = std::move(clipped);
    }
    curve.points_ = merge_colinear(std::move(points));
    curve.finish();
    return curve;
  }

  /// Constant curve at `value` over [0, domain_max].
  static PwlCurve constant(double value, double domain_max) {
    check_domain(domain_max);
    return from_breakpoints({{0.0, value}, {domain_max, value}});
  }

  const std::vector<Breakpoint>& breakpoints() const { return points_; }
  const std::vector<Segment>& segments() const { return segments_; }
  double domain_max() const { return points_.back().budget; }

  /// True when construction had to cap the curve at rate 1 inside its domain.
  bool clamped() const { return clamped_; }

  /// Linear interpolation on the containing segment; exact at breakpoints.
  double operator()(double r) const {
    if (!(r >= -kDomainTolerance && r <= domain_max() + kDomainTolerance)) {
      throw Error(ErrorKind::OutOfDomain, "budget " + std::to_string(r) +
                                              " outside [0, " + std::to_string(domain_max()) + "]");
    }
    if (r <= 0.0) return points_.front().value;
    if (r >= domain_max()) return points_.back().value;
    const auto it = std::upper_bound(points_.begin(), points_.end(), r,
                                     [](double b, const Breakpoint& p) { return b < p.budget; });
    const Breakpoint& lo = *(it - 1);
    if (r == lo.budget) return lo.value;
    const Breakpoint& hi = *it;
    const double v = lo.value + (hi.value - lo.value) * ((r - lo.budget) / (hi.budget - lo.budget));
    // rounding must not break monotonicity across breakpoints
    return std::clamp(v, lo.value, hi.value);
  }

  double eval(double r) const { return (*this)(r); }

  /// Largest (first) segment slope; a valid Lipschitz constant for the curve.
  double max_slope() const { return segments_.front().slope; }

  /// Slope of the segment strictly containing r. Domain endpoints use their
  /// only adjacent segment; interior breakpoints throw AtBreakpoint.
  double slope_at(double r) const {
    if (!(r >= -kDomainTolerance && r <= domain_max() + kDomainTolerance)) {
      throw Error(ErrorKind::OutOfDomain, "budget " + std::to_string(r));
    }
    for (std::size_t k = 1; k + 1 < points_.size(); ++k) {
      const double b = points_[k].budget;
      if (std::abs(r - b) <= kSlopeTolerance * std::max(1.0, std::abs(b))) {
        throw Error(ErrorKind::AtBreakpoint, "gradient undefined at budget " + std::to_string(b));
      }
    }
    for (const auto& seg : segments_) {
      if (r < seg.start + seg.length) return seg.slope;
    }
    return segments_.back().slope;
  }

  /// Distance from r to the nearest interior breakpoint (infinity if none).
  double distance_to_kink(double r) const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k + 1 < points_.size(); ++k) d = std::min(d, std::abs(r - points_[k].budget));
    return d;
  }

 private:
  PwlCurve() = default;

  static double slope(const Breakpoint& a, const Breakpoint& b) {
    return (b.value - a.value) / (b.budget - a.budget);
  }

  static void check_domain(double domain_max) {
    if (!std::isfinite(domain_max) || domain_max <= 0.0) {
      throw Error(ErrorKind::InvalidArgument, "domain_max must be finite and positive");
    }
  }

  static std::vector<Breakpoint> merge_colinear(std::vector<Breakpoint> points) {
    std::vector<Breakpoint> out;
    out.reserve(points.size());
    for (const auto& p : points) {
      if (!out.empty() && p.budget - out.back().budget <= kSlopeTolerance) {
        out.back().value = std::max(out.back().value, p.value);
        continue;
      }
      while (out.size() >= 2 &&
             std::abs(slope(out[out.size() - 2], out.back()) - slope(out.back(), p)) <= kSlopeTolerance) {
        out.pop_back();
      }
      out.push_back(p);
    }
    return out;
  }

  void finish() {
    segments_.clear();
    for (std::size_t k = 1; k < points_.size(); ++k) {
      segments_.push_back({points_[k - 1].budget, points_[k].budget - points_[k - 1].budget,
                           slope(points_[k - 1], points_[k])});
    }
  }

  std::vector<Breakpoint> points_;
  std::vector<Segment> segments_;
  bool clamped_ = false;
};

inline double curve_eval(const PwlCurve& curve, double r) { return curve(r); }
inline double curve_max_slope(const PwlCurve& curve) { return curve.max_slope(); }

inline PwlCurve curve_from_lines(std::span<const AffineLine> lines, double domain_max) {
  return PwlCurve::from_lines(lines, domain_max);
}

inline PwlCurve curve_from_lines(std::initializer_list<AffineLine> lines, double domain_max) {
  return PwlCurve::from_lines(std::span<const AffineLine>(lines.begin(), lines.size()), domain_max);
}

}  // namespace twolayer
