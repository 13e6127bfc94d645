#include "gaugekit/geometry.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace gaugekit;

TEST_CASE("cylindrical round trip") {
  for (const auto& p : testsupport::random_points(1, 200, 1e-6, 50.0, 10.0)) {
    const Vector c = to_cylindrical(p);
    CHECK(c.x() >= 0.0);
    const Point back = from_cylindrical(c.x(), c.y(), c.z());
    CHECK((back - p).norm() <= 1e-12 * p.norm());
  }
}

TEST_CASE("continuous azimuth of simple paths") {
  CHECK(continuous_azimuth(Path::circle({0, 0, 0}, 1.0), 1024).total_change() == doctest::Approx(2 * kPi).epsilon(1e-14));
  CHECK(continuous_azimuth(Path::segment({2, 0, 0}, {2, 1, 0})).total_change() ==
        doctest::Approx(std::atan(0.5)).epsilon(1e-14));
  CHECK(continuous_azimuth(Path::circle({0, 0, 0}, 1.0, 2)).total_change() == doctest::Approx(4 * kPi).epsilon(1e-14));
}

TEST_CASE("azimuth sequence has no jumps") {
  const auto seq = continuous_azimuth(Path::circle({0.2, -0.1, 0}, 1.5, 3, false), 4096);
  for (std::size_t i = 1; i < seq.phi.size(); ++i) CHECK(std::abs(seq.phi[i] - seq.phi[i - 1]) < kPi);
}

TEST_CASE("axis crossing is rejected") {
  CHECK_THROWS_AS(continuous_azimuth(Path::segment({-1, 0, 0}, {1, 0, 0})), GaugeError);
  try {
    continuous_azimuth(Path::segment({-1, 0, 0}, {1, 0, 0}));
  } catch (const GaugeError& e) {
    CHECK(e.kind() == ErrorKind::AxisCrossing);
  }
}

TEST_CASE("winding numbers") {
  CHECK(winding_number(LoopSpec(Path::circle({0, 0, 0}, 2.0))) == 1);
  CHECK(winding_number(LoopSpec(Path::circle({5, 0, 0}, 0.3))) == 0);
  CHECK(winding_number(LoopSpec(Path::circle({0, 0, 0}, 2.0, 1, false))) == -1);
  CHECK(winding_number(LoopSpec(Path::circle({0.5, 0.5, 3}, 2.0, 2, false))) == -2);
  const Path square = Path::polyline({{-1, -1, 0}, {1, -1, 0}, {1, 1, 0}, {-1, 1, 0}, {-1, -1, 0}});
  CHECK(winding_number(LoopSpec(square)) == 1);
}

TEST_CASE("loop closure is enforced") {
  try {
    LoopSpec loop(Path::arc({0, 0, 0}, 1.0, 0.0, 3.0));
    FAIL("expected NotClosed");
  } catch (const GaugeError& e) {
    CHECK(e.kind() == ErrorKind::NotClosed);
  }
}

TEST_CASE("reversal negates azimuth change exactly") {
  const std::vector<Path> paths{Path::circle({0.3, 0.1, 0}, 2.0, 2), Path::segment({2, 0, 0}, {-1, 3, 1}),
                                Path::arc({0, 0, 0}, 1.3, 0.2, -4.0),
                                Path::polyline({{1, 0, 0}, {0, 2, 0}, {-3, 0, 0}, {0, -1, 0}})};
  for (const auto& p : paths) {
    CHECK(continuous_azimuth(p.reversed()).total_change() == -continuous_azimuth(p).total_change());
    CHECK(azimuth_change(p.reversed()) == -azimuth_change(p));
  }
}

TEST_CASE("concatenation adds azimuth changes") {
  const Path a = Path::arc({0, 0, 0}, 2.0, 0.0, 2.5);
  const Path b = Path::segment(a.end(), {-1, -2, 0});
  const double sum = azimuth_change(a) + azimuth_change(b);
  CHECK(std::abs(azimuth_change(a.then(b)) - sum) <= 1e-12);
}

TEST_CASE("path construction invariants") {
  CHECK_THROWS_AS(Path::polyline({{0, 0, 0}}), GaugeError);
  CHECK(Path::circle({0, 0, 0}, 1.0).continuity_ratio() < 10.0);
}

TEST_CASE("discontinuous parametric map is rejected") {
  CHECK_THROWS_AS(Path::parametric([](double t) { return Point(t < 0.5 ? 0.0 : 10.0, t, 0.0); }), GaugeError);
}

TEST_CASE("disc validation and boundary") {
  CHECK_THROWS_AS(DiscSpec({0, 0, 0}, 0.0), GaugeError);
  CHECK_THROWS_AS(DiscSpec({0, 0, 0}, 1.0, 2), GaugeError);
  const DiscSpec up({0, 0, 0}, 2.0);
  const DiscSpec down({0, 0, 0}, 2.0, -1);
  CHECK(up.contains_axis());
  CHECK_FALSE(DiscSpec({5, 0, 0}, 1.0).contains_axis());
  CHECK(up.boundary().winding() == 1);
  CHECK(down.boundary().winding() == -1);
  CHECK(std::abs(up.normal().norm() - 1.0) <= 1e-12);
}

TEST_CASE("reparametrization keeps the curve") {
  const Path c = Path::arc({0, 0, 0}, 2.0, 0.0, 1.0);
  const Path r = c.reparametrized([](double t) { return t * t * t; }, [](double t) { return 3 * t * t; });
  CHECK((r.at(0.5) - c.at(0.125)).norm() < 1e-14);
  CHECK((r.end() - c.end()).norm() < 1e-14);
}
