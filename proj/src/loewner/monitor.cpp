#include "sle/loewner/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace sle {

HullBoundary HullBoundary::vertical_segment(double base, double height) {
  if (!(height > 0)) throw std::invalid_argument("segment height must be positive");
  return HullBoundary(Kind::Segment, base, height);
}

HullBoundary HullBoundary::semicircle(double center, double radius) {
  if (!(radius > 0)) throw std::invalid_argument("radius must be positive");
  return HullBoundary(Kind::Arc, center, radius);
}

Complex HullBoundary::point(double s) const {
  if (kind_ == Kind::Segment) return Complex(base_, s * size_);
  if (s <= 0) return Complex(base_ - size_, 0);
  if (s >= 1) return Complex(base_ + size_, 0);
  double theta = std::numbers::pi * (1 - s);
  return Complex(base_ + size_ * std::cos(theta), size_ * std::sin(theta));
}

double HullBoundary::guard_scale(double s) const {
  if (kind_ == Kind::Segment) return s * size_ / std::numbers::sqrt2;
  return (s <= 0 || s >= 1) ? 0.0 : size_;
}

double HullBoundary::distance(Complex p) const {
  if (kind_ == Kind::Segment) {
    double y = std::clamp(p.imag(), 0.0, size_);
    return std::abs(p - Complex(base_, y));
  }
  return std::abs(std::abs(p - Complex(base_, 0)) - size_);
}

bool HullBoundary::crosses(Complex p, Complex q) const {
  if (kind_ == Kind::Segment) {
    double a = p.real() - base_;
    double b = q.real() - base_;
    if (a * b > 0) return false;
    double y = a == b ? std::min(p.imag(), q.imag()) : p.imag() + (q.imag() - p.imag()) * (a / (a - b));
    return y >= 0 && y <= size_;
  }
  const Complex c(base_, 0);
  double rp = std::abs(p - c);
  double rq = std::abs(q - c);
  if ((rp - size_) * (rq - size_) <= 0) return true;
  if (rp < size_) return false;
  // both outside: does the chord dip into the disk?
  Complex dir = q - p;
  double len2 = std::norm(dir);
  if (len2 == 0) return false;
  double t = std::clamp(((c - p) * std::conj(dir)).real() / len2, 0.0, 1.0);
  return std::abs(p + t * dir - c) <= size_;
}

double HullBoundary::left() const { return kind_ == Kind::Segment ? base_ : base_ - size_; }
double HullBoundary::right() const { return kind_ == Kind::Segment ? base_ : base_ + size_; }
double HullBoundary::top() const { return size_; }

namespace {

struct Node {
  double s;
  Complex z;
  // |g'|^2 at the node, to measure gaps in the original plane
  double stretch2 = 1;
};

int sign_of(double v) { return (v > 0) - (v < 0); }

class Monitor {
 public:
  Monitor(const DrivingPath& d, const HullBoundary& b, const MonitorOptions& opt)
      : d_(d), b_(b), opt_(opt), bridge_(path_engine(d.seed, d.path_index, 1)) {
    if (opt.initial_nodes < 2) throw std::invalid_argument("need at least two boundary nodes");
    for (int i = 0; i < opt.initial_nodes; ++i) {
      double s = static_cast<double>(i) / (opt.initial_nodes - 1);
      nodes_.push_back(Node{s, b.point(s), 1});
    }
    rec_.min_gap = std::abs(nodes_.front().z);
    for (const auto& n : nodes_) rec_.min_gap = std::min(rec_.min_gap, std::abs(n.z));
  }

  HitRecord run() {
    for (int k = 0; k < d_.n_steps() && active_; ++k) {
      advance(d_.w[static_cast<std::size_t>(k)], d_.w[static_cast<std::size_t>(k) + 1], d_.dt, 0, k);
    }
    rec_.nodes_used = static_cast<int>(nodes_.size());
    rec_.substeps = static_cast<int>(log_.size());
    return rec_;
  }

 private:
  bool is_base(std::size_t i) const { return i == 0 || (b_.two_bases() && i + 1 == nodes_.size()); }

  std::optional<Node> replay(double s) const {
    Node n{s, b_.point(s), 1};
    for (const auto& a : log_) {
      auto next = step_map(n.z, a.w, a.dt, n.stretch2);
      if (!next) return std::nullopt;
      n.z = *next;
    }
    return n;
  }

  void refine(double w, double dt) {
    const double floor2 = dt;
    const double ratio2 = opt_.refine_ratio * opt_.refine_ratio;
    std::size_t i = 0;
    while (i + 1 < nodes_.size()) {
      const Node& a = nodes_[i];
      const Node& c = nodes_[i + 1];
      Complex za = a.z - w;
      Complex zc = c.z - w;
      double len2 = std::norm(za - zc);
      double dist2 = std::max(std::min(std::norm(za), std::norm(zc)), floor2);
      if (len2 <= ratio2 * dist2 || c.s - a.s <= opt_.min_spacing) {
        ++i;
        continue;
      }
      if (static_cast<int>(nodes_.size()) >= opt_.max_nodes) return;
      double mid = 0.5 * (a.s + c.s);
      auto n = replay(mid);
      if (!n) {
        ++i;
        continue;
      }
      nodes_.insert(nodes_.begin() + static_cast<std::ptrdiff_t>(i) + 1, *n);
    }
  }

  double nearest2(double w) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& n : nodes_) best = std::min(best, std::norm(n.z - w));
    return best;
  }

  void record_hit(double s, int k) {
    if (!rec_.hit) rec_.first_hit_step = k;
    rec_.hit = true;
    rec_.lowest = std::min(rec_.lowest, s);
    if (!opt_.track_lowest || b_.two_bases() || s <= 0) {
      active_ = false;
      return;
    }
    while (!nodes_.empty() && nodes_.back().s >= s) nodes_.pop_back();
    if (nodes_.size() < 2) active_ = false;
  }

  // Runs [w0 -> w1] over time dt, splitting it with Brownian bridge midpoints
  // while the obstacle image is close on the scale of the step.
  void advance(double w0, double w1, double dt, int depth, int k) {
    if (!active_) return;
    refine(w0, dt);
    const double reach = opt_.bridge_ratio * (2 * std::sqrt(dt) + std::abs(w1 - w0));
    if (depth < opt_.max_bridge_depth && std::min(nearest2(w0), nearest2(w1)) < reach * reach) {
      std::normal_distribution<double> normal(0.0, 1.0);
      double mid = 0.5 * (w0 + w1) + 0.5 * std::sqrt(d_.kappa * dt) * normal(bridge_);
      advance(w0, mid, 0.5 * dt, depth + 1, k);
      advance(mid, w1, 0.5 * dt, depth + 1, k);
      return;
    }
    apply(w0, dt, k);
  }

  void apply(double w, double dt, int k) {
    if (opt_.record_steps) rec_.steps.push_back(FlowStep{w, dt});
    // Crossings of the image polyline with the vertical line through w.
    const double reach = 2 * std::sqrt(dt);
    double low_cross = 2.0;
    double any_cross = 2.0;
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
      Complex za = nodes_[i].z - w;
      Complex zc = nodes_[i + 1].z - w;
      int sa = sign_of(za.real());
      int sc = sign_of(zc.real());
      if (sa == sc && sa != 0) continue;
      if (sa == 0 && sc == 0) continue;
      double f = za.real() / (za.real() - zc.real());
      double y = za.imag() + (zc.imag() - za.imag()) * f;
      double s = nodes_[i].s + (nodes_[i + 1].s - nodes_[i].s) * f;
      any_cross = std::min(any_cross, s);
      if (y <= reach) low_cross = std::min(low_cross, s);
    }

    double hit_at = 2.0;
    if (low_cross <= 1.0) {
      hit_at = low_cross;
    } else if (b_.two_bases()) {
      if (sign_of((nodes_.front().z - w).real()) * sign_of((nodes_.back().z - w).real()) < 0) hit_at = any_cross;
    }
    if (hit_at > 1.0 && !log_.empty()) {
      const double prev = log_.back().w;
      bool flipped = (nodes_.front().z.real() - prev) * (nodes_.front().z.real() - w) <= 0;
      if (b_.two_bases()) flipped = flipped && (nodes_.back().z.real() - prev) * (nodes_.back().z.real() - w) <= 0;
      if (flipped) {
        // The driving value jumped over the base. Unless the whole obstacle
        // image sits within the jump's reach (an enclosed fjord), the curve
        // ran into it on the way.
        const double enclose = 2 * (std::abs(w - prev) + reach);
        bool enclosed = true;
        for (const auto& n : nodes_) enclosed = enclosed && std::norm(n.z - w) <= enclose * enclose;
        if (enclosed) {
          rec_.swallowed = true;
          active_ = false;
          return;
        }
        hit_at = any_cross <= 1.0 ? any_cross : 0.0;
      }
    }

    double min_gap2 = rec_.min_gap * rec_.min_gap;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      double gap2 = std::norm(nodes_[i].z - w);
      min_gap2 = std::min(min_gap2, gap2);
      if (is_base(i)) continue;
      double guard = opt_.delta_hit * b_.guard_scale(nodes_[i].s);
      if (gap2 < guard * guard * nodes_[i].stretch2) hit_at = std::min(hit_at, nodes_[i].s);
    }
    rec_.min_gap = std::sqrt(min_gap2);
    if (hit_at <= 1.0) {
      record_hit(hit_at, k);
      if (!active_) return;
    }

    double lost = 2.0;
    for (auto& n : nodes_) {
      auto next = step_map(n.z, w, dt, n.stretch2);
      if (next) {
        n.z = *next;
      } else {
        lost = std::min(lost, n.s);
      }
    }
    log_.push_back(FlowStep{w, dt});
    if (lost <= 1.0) record_hit(lost, k);
  }

  const DrivingPath& d_;
  const HullBoundary& b_;
  MonitorOptions opt_;
  std::mt19937_64 bridge_;
  std::vector<Node> nodes_;
  std::vector<FlowStep> log_;
  HitRecord rec_;
  bool active_ = true;
};

}  // namespace

HitRecord monitor_hull(const DrivingPath& d, const HullBoundary& boundary, const MonitorOptions& opt) {
  return Monitor(d, boundary, opt).run();
}

TraceHitRecord trace_hit(std::span<const FlowStep> steps, double kappa, const HullBoundary& boundary, double tolerance,
                         int coarse_stride) {
  if (coarse_stride < 1) throw std::invalid_argument("stride must be positive");
  const std::size_t n = steps.size();
  const auto stride = static_cast<std::size_t>(coarse_stride);
  TraceHitRecord rec;
  rec.min_distance = std::numeric_limits<double>::infinity();
  auto visit = [&](Complex p) {
    ++rec.points_used;
    rec.min_distance = std::min(rec.min_distance, boundary.distance(p));
  };

  Complex prev = trace_point(steps, 0);
  visit(prev);
  for (std::size_t k0 = 0; k0 < n; k0 += stride) {
    const std::size_t k1 = std::min(n, k0 + stride);
    Complex next = trace_point(steps, k1);
    visit(next);
    // how far the trace may stray between the two coarse points
    double span = 0;
    for (std::size_t k = k0; k < k1; ++k) span += steps[k].dt;
    double reach = std::abs(next - prev) + 4 * std::sqrt(kappa * span) + 4 * std::sqrt(span) + tolerance;
    if (boundary.distance(prev) <= reach || boundary.distance(next) <= reach) {
      Complex a = prev;
      for (std::size_t k = k0 + 1; k <= k1; ++k) {
        Complex b = k == k1 ? next : trace_point(steps, k);
        if (k != k1) visit(b);
        if (boundary.crosses(a, b)) rec.hit = true;
        a = b;
      }
    } else if (boundary.crosses(prev, next)) {
      rec.hit = true;
    }
    if (rec.min_distance <= tolerance) rec.hit = true;
    if (rec.hit) break;
    prev = next;
  }
  return rec;
}

bool hit_slit(const DrivingPath& d, double x, double eps, double delta_hit) {
  if (x == 0) throw std::invalid_argument("slit base must be away from the origin");
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  MonitorOptions opt;
  opt.delta_hit = delta_hit;
  return monitor_hull(d, HullBoundary::vertical_segment(x, eps * std::numbers::sqrt2), opt).hit;
}

}  // namespace sle
