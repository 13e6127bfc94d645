#include "gaugekit/calculus.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace gaugekit;

namespace {

const SolenoidSpec unit{1.0, 1.0};

FieldExpr grad_of(const PolynomialGauge& poly) { return FieldExpr::gauge_gradient(GaugeChoice::regular(poly)); }

// chi = x^2 + y^2
PolynomialGauge paraboloid() { return PolynomialGauge{{{1.0, 2, 0, 0}, {1.0, 0, 2, 0}}}; }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const GaugeError& e) {
    return e.kind();
  }
  FAIL("expected a GaugeError");
  return ErrorKind::InvalidArgument;
}

Path random_polyline(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<int> count(2, 7);
  std::vector<Point> v;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) v.emplace_back(u(rng), u(rng), u(rng));
  return Path::polyline(v);
}

}  // namespace

TEST_CASE("numeric curl") {
  CHECK((numeric_curl(FieldExpr::solenoid_transverse(unit), {0.5, 0, 0}) - Vector(0, 0, 1)).norm() <= 1e-6);
  CHECK(numeric_curl(FieldExpr::gauge_gradient(GaugeChoice::landau_link1(1.0)), {1.3, -0.4, 2}).norm() <= 1e-8);
  CHECK((numeric_curl(FieldExpr::landau(LandauGauge::L1, 1.0), {3, 2, 0}) - Vector(0, 0, 1)).norm() <= 1e-8);
  const DiffConfig order4{1e-3, 4};
  CHECK((numeric_curl(FieldExpr::solenoid_transverse(unit), {0.3, 0.2, 0}, order4) - Vector(0, 0, 1)).norm() <= 1e-10);
}

TEST_CASE("numeric divergence") {
  CHECK(std::abs(numeric_divergence(FieldExpr::solenoid_transverse(unit), {2, 1, 0})) <= 1e-6);
  CHECK(std::abs(numeric_divergence(FieldExpr::landau(LandauGauge::L2, 1.0), {-4, 2, 1})) <= 1e-8);
  CHECK(numeric_divergence(grad_of(paraboloid()), {1, 1, 0}) == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("stencils must avoid excluded sets") {
  CHECK(kind_of([] { numeric_curl(FieldExpr::solenoid_b(unit), {1.0001, 0, 0}); }) == ErrorKind::DomainViolation);
  CHECK(kind_of([] { numeric_curl(FieldExpr::gauge_gradient(GaugeChoice::singular(unit)), {1e-4, 0, 0}); }) ==
        ErrorKind::DomainViolation);
  CHECK_THROWS_AS(DiffConfig({0.0, 2}).validate(), GaugeError);
  CHECK_THROWS_AS(DiffConfig({1e-4, 3}).validate(), GaugeError);
}

TEST_CASE("line integrals") {
  const auto as = FieldExpr::solenoid_transverse(unit);
  const auto r = line_integral(as, Path::circle({0, 0, 0}, 2.0), 1e-8);
  CHECK(std::abs(r.value - kPi) <= 1e-8);
  CHECK(r.error_estimate < 1e-8);
  CHECK(std::abs(line_integral(as, Path::circle({5, 0, 0}, 0.3), 1e-8).value) <= 1e-8);
  const auto chi1 = FieldExpr::gauge_gradient(GaugeChoice::landau_link1(1.0));
  CHECK(std::abs(line_integral(chi1, Path::polyline({{0, 0, 0}, {1, 2, 0}, {3, 2, 0}}), 1e-8).value - 3.0) <= 1e-8);
  CHECK(kind_of([&] { line_integral(as, Path::circle({0, 0, 0}, 2.0), 1e-300); }) == ErrorKind::NoConvergence);
}

TEST_CASE("gradient theorem on random polylines") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const PolynomialGauge poly = testsupport::random_polynomial(rng);
    const Path path = random_polyline(rng);
    const double expected = testsupport::evaluate(poly, path.end()) - testsupport::evaluate(poly, path.start());
    CHECK(std::abs(line_integral(grad_of(poly), path).value - expected) <= 1e-8);
  }
  for (const auto& g : {GaugeChoice::landau_link1(0.7), GaugeChoice::landau_link2(0.7)}) {
    const Path path = random_polyline(rng);
    const double expected = gauge_value(g, path.end()) - gauge_value(g, path.start());
    CHECK(std::abs(line_integral(FieldExpr::gauge_gradient(g), path).value - expected) <= 1e-8);
  }
}

TEST_CASE("singular gradient circulation is proportional to winding") {
  const auto sing = FieldExpr::gauge_gradient(GaugeChoice::singular(unit));
  for (int w = -2; w <= 2; ++w) {
    const Path loop = w == 0 ? Path::circle({3, 0, 0}, 1.0) : Path::circle({0.2, 0.1, 0}, 1.5, std::abs(w), w > 0);
    CHECK(LoopSpec(loop).winding() == w);
    CHECK(std::abs(line_integral(sing, loop).value + w * unit.flux()) <= 1e-8);
  }
}

TEST_CASE("orientation antisymmetry is exact") {
  const std::vector<std::pair<FieldExpr, Path>> cases{
      {FieldExpr::solenoid_transverse(unit), Path::circle({0.3, 0, 0}, 2.0)},
      {FieldExpr::gauge_gradient(GaugeChoice::singular(unit)), Path::arc({0, 0, 0}, 1.2, 0.3, 5.0)},
      {FieldExpr::landau(LandauGauge::BawinBurnel, 1.0), Path::polyline({{1, 1, 0}, {-2, 1, 0}, {-1, -1, 0}})},
      {FieldExpr::transformed_potential(unit), Path::segment({0.2, 0.3, 0}, {3, -1, 1})}};
  for (const auto& [f, path] : cases) {
    CHECK(line_integral(f, path.reversed()).value == -line_integral(f, path).value);
  }
}

TEST_CASE("loop circulation is the difference of open arms") {
  const auto as = FieldExpr::solenoid_transverse(unit);
  const Path c1 = Path::arc({0, 0, 0}, 2.0, 0.0, kPi);
  const Path c2 = Path::arc({0, 0, 0}, 2.0, 0.0, -kPi);
  const double loop = line_integral(as, c1.then(c2.reversed())).value;
  CHECK(std::abs(loop - (line_integral(as, c1).value - line_integral(as, c2).value)) <= 1e-10);
}

TEST_CASE("disc flux") {
  const auto b = FieldExpr::solenoid_b(unit);
  const std::vector<DeltaSource> string{StringField{string_flux(unit)}};
  const auto total = disc_flux(b, DiscSpec({0, 0, 0}, 1.0), string);
  CHECK(std::abs(total.value) <= 1e-8);
  CHECK(total.smooth_part == doctest::Approx(kPi).epsilon(1e-10));
  CHECK(total.delta_part == doctest::Approx(-kPi).epsilon(1e-15));
  CHECK(std::abs(disc_flux(b, DiscSpec({0, 0, 0}, 0.5)).value - kPi / 4) <= 1e-8);
  CHECK(std::abs(disc_flux(b, DiscSpec({0, 0, 0}, 3.0)).value - kPi) <= 1e-6);
  CHECK(std::abs(disc_flux(b, DiscSpec({0, 0, 0}, 3.0, -1)).value + kPi) <= 1e-6);
  CHECK(kind_of([] {
          disc_flux(FieldExpr::landau(LandauGauge::BawinBurnel, 1.0).curl(), DiscSpec({0, 0, 0}, 1.0));
        }) == ErrorKind::DomainViolation);
}

TEST_CASE("Stokes residuals") {
  const auto s1 = stokes_residual(FieldExpr::solenoid_transverse(unit), DiscSpec({0, 0, 0}, 2.0));
  CHECK(s1.residual < 1e-5);
  CHECK(s1.circulation == doctest::Approx(kPi).epsilon(1e-8));
  const auto s2 = stokes_residual(FieldExpr::landau(LandauGauge::Symmetric, 1.0), DiscSpec({4, 0, 0}, 1.0));
  CHECK(s2.residual < 1e-5);
  CHECK(s2.flux == doctest::Approx(kPi).epsilon(1e-6));
  const auto s3 =
      stokes_residual(FieldExpr::gauge_gradient(GaugeChoice::landau_link2(1.0)), DiscSpec({-1, 2, 0}, 1.5));
  CHECK(s3.residual < 1e-8);
  CHECK(std::abs(s3.circulation) < 1e-8);
  const DiscSpec disc({0, 0, 0}, 2.0);
  CHECK_THROWS_AS(stokes_residual(FieldExpr::solenoid_transverse(unit), LoopSpec(Path::circle({0, 0, 0}, 1.0)), disc),
                  GaugeError);
}

TEST_CASE("shrinking loop circulation") {
  const std::vector<double> coarse{1e-1, 1e-2, 1e-3};
  const auto sing = shrinking_loop_circulation(FieldExpr::gauge_gradient(GaugeChoice::singular(unit)), {0, 0, 0}, coarse);
  CHECK(std::abs(sing.limit + kPi) <= 1e-9);
  for (double c : sing.circulations) CHECK(std::abs(c + kPi) <= 1e-9);
  const auto chi1 = shrinking_loop_circulation(FieldExpr::gauge_gradient(GaugeChoice::landau_link1(1.0)), {0, 0, 0}, coarse);
  CHECK(std::abs(chi1.limit) <= 1e-9);
  const auto ap = shrinking_loop_circulation(FieldExpr::transformed_potential(unit), {0, 0, 0}, coarse);
  CHECK(std::abs(ap.limit + kPi) <= 1e-6);
  // The smooth part contributes Phi eps^2 / R^2.
  CHECK(ap.circulations[0] == doctest::Approx(-kPi + kPi * 1e-2).epsilon(1e-10));
  const std::vector<double> far{3.0, 0.9, 0.5};
  CHECK(kind_of([&] { shrinking_loop_circulation(FieldExpr::transformed_potential(unit), {0, 0, 0}, far); }) ==
        ErrorKind::NoLimit);
  const std::vector<double> ascending{1e-3, 1e-2, 1e-1};
  CHECK_THROWS_AS(shrinking_loop_circulation(FieldExpr::transformed_potential(unit), {0, 0, 0}, ascending), GaugeError);
}

TEST_CASE("Helmholtz classification") {
  const auto off_shell = [] {
    std::vector<Point> pts;
    for (const auto& p : testsupport::random_points(9, 400, 0.1, 5.0)) {
      if (std::abs(std::hypot(p.x(), p.y()) - 1.0) > 5e-4) pts.push_back(p);
      if (pts.size() == 100) break;
    }
    return pts;
  }();
  CHECK(helmholtz_classify(FieldExpr::solenoid_transverse(unit), off_shell).classification == HelmholtzClass::Transverse);
  CHECK(helmholtz_classify(FieldExpr::gauge_gradient(GaugeChoice::landau_link1(1.0)), off_shell).classification ==
        HelmholtzClass::Longitudinal);
  // Fourth order: the 1/rho field's third derivatives are large near rho = 0.1.
  const auto sing =
      helmholtz_classify(FieldExpr::gauge_gradient(GaugeChoice::singular(unit)), off_shell, DiffConfig{1e-4, 4});
  CHECK(sing.max_abs_div < 1e-6);
  CHECK(sing.max_abs_curl < 1e-6);
  CHECK(sing.classification == HelmholtzClass::Transverse);
  CHECK(sing.harmonic);
  CHECK(sing.notes.find("harmonic") != std::string::npos);
  const std::vector<Point> outside{{2, 0, 0}, {0, 3, 1}, {-4, -1, 0}};
  CHECK(helmholtz_classify(FieldExpr::solenoid_b(unit), outside).classification == HelmholtzClass::BothZeroField);
  const auto mixed = FieldExpr::solenoid_transverse(unit) + grad_of(paraboloid());
  const std::vector<Point> inside{{0.2, 0.3, 0}, {-0.4, 0.1, 0}};
  CHECK(helmholtz_classify(mixed, inside).classification == HelmholtzClass::Neither);
  CHECK(std::string(to_string(HelmholtzClass::BothZeroField)) == "both");
}

TEST_CASE("divergence and curl of the solenoid potential") {
  const double h = 1e-4;
  const auto as = FieldExpr::solenoid_transverse(unit);
  int checked = 0;
  for (const auto& p : testsupport::random_points(10, 200, 0.1, 5.0)) {
    const double rho = std::hypot(p.x(), p.y());
    if (std::abs(rho - 1.0) <= 5 * h) continue;
    CHECK(std::abs(numeric_divergence(as, p)) < 1e-6);
    const Vector expected = rho < 1.0 ? Vector(0, 0, 1) : Vector(0, 0, 0);
    CHECK((numeric_curl(as, p) - expected).norm() < 1e-5);
    if (++checked == 100) break;
  }
}

TEST_CASE("interior curl of the transformed potential") {
  const auto ap = FieldExpr::transformed_potential(unit);
  for (const auto& p : testsupport::random_points(11, 100, 0.3, 1.0 - 5e-4)) {
    CHECK((numeric_curl(ap, p) - Vector(0, 0, 1)).norm() < 1e-5);
  }
}

TEST_CASE("Landau potentials are transverse with uniform curl") {
  const double b = 1.0;
  for (auto g : {LandauGauge::Symmetric, LandauGauge::L1, LandauGauge::L2}) {
    const auto f = FieldExpr::landau(g, b);
    for (const auto& p : testsupport::random_points(12, 30, 0.0, 5.0)) {
      CHECK(std::abs(numeric_divergence(f, p)) < 1e-8);
      CHECK((numeric_curl(f, p) - Vector(0, 0, b)).norm() < 1e-5);
    }
  }
}

TEST_CASE("curl of gauge gradients vanishes off the axis") {
  std::mt19937_64 rng(13);
  std::vector<GaugeChoice> gauges{GaugeChoice::landau_link1(1.0), GaugeChoice::landau_link2(1.0),
                                  GaugeChoice::singular(unit), GaugeChoice::bawin_burnel(1.0)};
  for (int i = 0; i < 5; ++i) gauges.push_back(GaugeChoice::regular(testsupport::random_polynomial(rng)));
  for (const auto& g : gauges) {
    const auto f = FieldExpr::gauge_gradient(g);
    for (const auto& p : testsupport::random_points(14, 20, 0.2, 3.0)) {
      CHECK(numeric_curl(f, p, DiffConfig{1e-4, 4}, std::atan2(p.y(), p.x())).norm() < 1e-8);
    }
  }
}

TEST_CASE("no bulk current inside: the string current lives only in the ledger") {
  const auto b_prime = FieldExpr::transformed_potential(unit).curl();
  const auto flux = disc_flux(b_prime.curl(), DiscSpec({0.5, 0.1, 0}, 0.1));
  CHECK(std::abs(flux.value) < 1e-6);
  auto has_string_current = [](const FieldExpr& f) {
    for (const auto& d : delta_ledger(f)) {
      if (std::holds_alternative<StringCurrent>(d)) return true;
    }
    return false;
  };
  CHECK(has_string_current(FieldExpr::transformed_potential(unit)));
  CHECK_FALSE(has_string_current(FieldExpr::solenoid_transverse(unit)));
}
