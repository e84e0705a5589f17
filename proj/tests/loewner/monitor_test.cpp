#include <doctest.h>

#include <cmath>

#include "sle/loewner/monitor.hpp"

using namespace sle;

TEST_CASE("hull boundary geometry") {
  auto slit = HullBoundary::vertical_segment(1.0, 0.5);
  CHECK(slit.point(0) == Complex(1, 0));
  CHECK(slit.point(1) == Complex(1, 0.5));
  CHECK(slit.distance(Complex(1.3, 0.2)) == doctest::Approx(0.3));
  CHECK(slit.distance(Complex(1, 0.9)) == doctest::Approx(0.4));
  CHECK(slit.crosses(Complex(0.8, 0.2), Complex(1.2, 0.3)));
  CHECK_FALSE(slit.crosses(Complex(0.8, 0.7), Complex(1.2, 0.7)));
  auto disk = HullBoundary::semicircle(2.0, 1.0);
  CHECK(disk.two_bases());
  CHECK(std::abs(disk.point(0.5) - Complex(2, 1)) < 1e-12);
  CHECK(disk.distance(Complex(2, 3)) == doctest::Approx(2.0));
  CHECK(disk.crosses(Complex(2, 2), Complex(2, 0.5)));
  // a chord that dips inside between two outside endpoints
  CHECK(disk.crosses(Complex(0.5, 0.5), Complex(3.5, 0.5)));
}

TEST_CASE("no hit without driving noise") {
  SleParams p{0.0, 4.0, 4000, 1};
  auto d = sample_driving(p);
  for (double eps : {0.05, 0.2, 0.4}) CHECK_FALSE(hit_slit(d, 1.0, eps));
}

TEST_CASE("unreachable slit is never hit") {
  SleParams p{8.0 / 3.0, 1.0, 2000, 3};
  for (std::uint64_t i = 0; i < 20; ++i) {
    auto d = sample_driving(p, i);
    double range = 0;
    for (double w : d.w) range = std::max(range, std::abs(w));
    double x = range + 2 * std::sqrt(p.capacity) + 2.0;
    CHECK_FALSE(hit_slit(d, x, 0.4));
    CHECK_FALSE(hit_slit(d, -x, 0.4));
  }
}

TEST_CASE("kappa 6 hits a nearby slit sometimes") {
  SleParams p{6.0, 16.0, 4000, 11};
  int hits = 0;
  const int n = 200;
  for (int i = 0; i < n; ++i) hits += hit_slit(sample_driving(p, static_cast<std::uint64_t>(i)), 0.5, 0.5);
  CHECK(hits > 0);
  CHECK(hits < n);
}

TEST_CASE("hit is monotone in the threshold") {
  SleParams p{8.0 / 3.0, 9.0, 4000, 5};
  for (std::uint64_t i = 0; i < 60; ++i) {
    auto d = sample_driving(p, i);
    bool small = hit_slit(d, 1.0, 0.2, 0.005);
    bool mid = hit_slit(d, 1.0, 0.2, 0.02);
    bool large = hit_slit(d, 1.0, 0.2, 0.2);
    CHECK((!small || mid));
    CHECK((!mid || large));
  }
}

TEST_CASE("nested slits: lower hits imply hits of every taller slit") {
  SleParams p{8.0 / 3.0, 9.0, 4000, 21};
  MonitorOptions opt;
  opt.track_lowest = true;
  auto boundary = HullBoundary::vertical_segment(1.0, 0.4 * std::sqrt(2.0));
  for (std::uint64_t i = 0; i < 40; ++i) {
    auto r = monitor_hull(sample_driving(p, i), boundary, opt);
    CHECK(r.lowest <= 1.0);
    CHECK(r.lowest >= 0.0);
    if (!r.hit) CHECK(r.lowest == 1.0);
  }
}

TEST_CASE("monitor is deterministic and records its steps") {
  SleParams p{8.0 / 3.0, 9.0, 2000, 8};
  MonitorOptions opt;
  opt.record_steps = true;
  auto boundary = HullBoundary::semicircle(2.0, 1.0);
  for (std::uint64_t i = 0; i < 10; ++i) {
    auto d = sample_driving(p, i);
    auto a = monitor_hull(d, boundary, opt);
    auto b = monitor_hull(d, boundary, opt);
    CHECK(a.hit == b.hit);
    CHECK(a.substeps == b.substeps);
    // the step that hits is recorded but not applied
    CHECK(static_cast<int>(a.steps.size()) == a.substeps + ((a.hit || a.swallowed) ? 1 : 0));
    double total = 0;
    for (auto s : a.steps) total += s.dt;
    CHECK(total <= p.capacity * (1 + 1e-12));
    if (!a.hit && !a.swallowed) CHECK(total == doctest::Approx(p.capacity));
  }
}

TEST_CASE("trace detector on a zero-driving step list") {
  std::vector<FlowStep> steps(1000, FlowStep{0.0, 0.001});
  // trace is [0, 2i]
  auto far = trace_hit(steps, 0.0, HullBoundary::vertical_segment(1.0, 1.0), 0.01);
  CHECK_FALSE(far.hit);
  CHECK(far.min_distance == doctest::Approx(1.0).epsilon(1e-6));
  auto near = trace_hit(steps, 0.0, HullBoundary::vertical_segment(0.005, 1.0), 0.01);
  CHECK(near.hit);
  auto across = trace_hit(steps, 0.0, HullBoundary::semicircle(0.0 + 1.5, 1.6), 0.001);
  CHECK(across.hit);
}
