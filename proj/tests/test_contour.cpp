#include <doctest.h>

#include <cmath>
#include <limits>

#include "hhdr/contour.hpp"
#include "hhdr/errors.hpp"

namespace {

template <class F>
hhdr::SweepGrid make_grid(std::size_t n, double lo, double hi, F f) {
  hhdr::SweepGrid g;
  g.quantity = "test";
  g.delta_axis = hhdr::SweepAxis{lo, hi, n}.values();
  g.omega_b1_axis = hhdr::SweepAxis{lo, hi, n}.values();
  for (double x : g.delta_axis) {
    for (double y : g.omega_b1_axis) g.values.push_back(f(x, y));
  }
  return g;
}

}  // namespace

TEST_CASE("circle gives one closed loop on the level set") {
  const auto g = make_grid(41, -1.0, 1.0, [](double x, double y) { return x * x + y * y; });
  const auto lines = hhdr::contour_alpha(g, 0.25);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].closed);
  CHECK(lines[0].points.size() > 20);
  for (const auto& p : lines[0].points) CHECK(std::hypot(p.x, p.y) == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("plane gives one open line") {
  const auto g = make_grid(11, 0.0, 1.0, [](double x, double y) { return x + 2.0 * y; });
  const auto lines = hhdr::contour_alpha(g, 1.0);
  REQUIRE(lines.size() == 1);
  CHECK_FALSE(lines[0].closed);
  for (const auto& p : lines[0].points) CHECK(p.x + 2.0 * p.y == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two separated wells give two loops") {
  const auto g = make_grid(61, -2.0, 2.0, [](double x, double y) {
    return std::min((x - 1) * (x - 1) + y * y, (x + 1) * (x + 1) + y * y);
  });
  const auto lines = hhdr::contour_alpha(g, 0.16);
  CHECK(lines.size() == 2);
  for (const auto& l : lines) CHECK(l.closed);
}

TEST_CASE("no crossing gives no lines") {
  const auto g = make_grid(5, 0.0, 1.0, [](double, double) { return 3.0; });
  CHECK(hhdr::contour_alpha(g, 1.0).empty());
}

TEST_CASE("NaN corners are skipped") {
  auto g = make_grid(21, -1.0, 1.0, [](double x, double y) { return x * x + y * y; });
  g.values[0] = std::numeric_limits<double>::quiet_NaN();
  const auto lines = hhdr::contour_alpha(g, 0.25);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].closed);
}

TEST_CASE("grids smaller than 2x2 are rejected") {
  const auto g = make_grid(1, 0.0, 0.0, [](double, double) { return 0.0; });
  CHECK_THROWS_AS(hhdr::contour_alpha(g, 0.0), hhdr::PreconditionError);
}
