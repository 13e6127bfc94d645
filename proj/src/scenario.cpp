#include "gaugekit/scenario.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

#ifndef GAUGEKIT_VERSION
#define GAUGEKIT_VERSION "0.0.0"
#endif

namespace gaugekit {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw GaugeError(ErrorKind::ParseError, what); }

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing key '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) parse_fail(std::string(what) + " must be a number");
  return j.get<double>();
}

double number_or(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  return number(j.at(key), key);
}

double positive_tol(const Json& j, const char* key, double fallback) {
  const double tol = number_or(j, key, fallback);
  if (!(tol > 0.0)) parse_fail(std::string(key) + " must be positive");
  return tol;
}

Vector vec3(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) parse_fail(std::string(what) + " must be an array of three numbers");
  return {number(j[0], what), number(j[1], what), number(j[2], what)};
}

PolynomialGauge polynomial_from_json(const Json& spec) {
  PolynomialGauge poly;
  const Json& coeffs = require(spec, "coefficients");
  if (!coeffs.is_array()) parse_fail("coefficients must be an array");
  for (const auto& row : coeffs) {
    if (!row.is_array() || row.size() != 4) parse_fail("each coefficient row is [c, px, py, pz]");
    Monomial m;
    m.coefficient = number(row[0], "coefficient");
    for (int k = 1; k < 4; ++k) {
      if (!row[k].is_number_integer() || row[k].get<int>() < 0) parse_fail("exponents must be non-negative integers");
    }
    m.px = row[1].get<int>();
    m.py = row[2].get<int>();
    m.pz = row[3].get<int>();
    poly.terms.push_back(m);
  }
  return poly;
}

std::string id_of(const Json& spec) {
  if (spec.is_string()) return spec.get<std::string>();
  if (spec.is_object()) {
    const Json& id = require(spec, "id");
    if (!id.is_string()) parse_fail("id must be a string");
    return id.get<std::string>();
  }
  parse_fail("expected an id string or object");
}

template <typename T>
T parse_guard(const std::function<T()>& build) {
  try {
    return build();
  } catch (const GaugeError& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    parse_fail(e.what());
  }
}

std::vector<Point> samples_from_json(const Json& spec, std::uint64_t seed) {
  std::vector<Point> pts;
  if (spec.contains("points")) {
    for (const auto& p : spec.at("points")) pts.push_back(vec3(p, "sample point"));
    return pts;
  }
  const Json& count = require(spec, "random");
  if (!count.is_number_integer() || count.get<int>() <= 0) parse_fail("random sample count must be a positive integer");
  const double rho_min = number_or(spec, "rho_min", 0.1);
  const double rho_max = number_or(spec, "rho_max", 5.0);
  const double z_min = number_or(spec, "z_min", -1.0);
  const double z_max = number_or(spec, "z_max", 1.0);
  const double avoid = number_or(spec, "avoid_radius", -1.0);
  const double band = number_or(spec, "avoid_band", 0.0);
  if (!(rho_max > rho_min) || rho_min < 0.0 || z_max < z_min) parse_fail("invalid sampling region");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  while (static_cast<int>(pts.size()) < count.get<int>()) {
    // Uniform in area over the annulus.
    const double rho = std::sqrt(rho_min * rho_min + u(rng) * (rho_max * rho_max - rho_min * rho_min));
    const double phi = kTwoPi * u(rng);
    const double z = z_min + u(rng) * (z_max - z_min);
    if (avoid > 0.0 && std::abs(rho - avoid) <= band) continue;
    pts.push_back(from_cylindrical(rho, phi, z));
  }
  return pts;
}

std::vector<std::optional<GaugeChoice>> gauges_from_json(const Json& list, const ScenarioContext& ctx) {
  if (!list.is_array()) parse_fail("gauges must be an array");
  std::vector<std::optional<GaugeChoice>> out;
  for (const auto& g : list) out.push_back(gauge_from_json(g, ctx));
  return out;
}

PhaseProbe probe_from_json(const Json& op, const ScenarioContext& ctx) {
  const double charge = number_or(op, "charge", ctx.charge);
  if (charge == 0.0) parse_fail("charge must be non-zero");
  std::optional<GaugeChoice> gauge = op.contains("gauge") ? gauge_from_json(op.at("gauge"), ctx) : std::nullopt;
  PhaseProbe probe = PhaseProbe::solenoid(ctx.solenoid, std::move(gauge), charge);
  if (op.contains("base")) probe.base = field_from_json(op.at("base"), ctx);
  return probe;
}

Json phase_details(const PhaseReport& r) {
  return Json{{"phase", r.phase},
              {"transverse_part", r.transverse_part},
              {"gauge_part", r.gauge_part},
              {"singular_gauge", r.singular_gauge},
              {"notes", r.notes}};
}

Json vector_json(const Vector& v) { return Json::array({v.x(), v.y(), v.z()}); }

CompiledOperation compile_operation(const Json& op, const ScenarioContext& ctx, std::uint64_t seed) {
  if (!op.is_object()) parse_fail("operation must be an object");
  const Json& name_json = require(op, "op");
  if (!name_json.is_string()) parse_fail("op must be a string");
  CompiledOperation c;
  c.op = name_json.get<std::string>();
  const std::string& name = c.op;

  if (op.contains("expect")) {
    const Json& e = op.at("expect");
    const Json& v = require(e, "value");
    Expectation ex;
    if (v.is_string()) {
      ex.value = v.get<std::string>();
      ex.tol = 0.0;
    } else {
      ex.value = v.is_array() ? OperationValue(vec3(v, "expected value")) : OperationValue(number(v, "expected value"));
      ex.tol = positive_tol(e, "tol", 1e-8);
    }
    c.expect = ex;
  }

  auto tol_of = [&](double fallback) { return positive_tol(op, "tol", fallback); };

  if (name == "eval") {
    FieldExpr f = field_from_json(require(op, "field"), ctx);
    const Point at = vec3(require(op, "at"), "at");
    c.target = f.id();
    c.run = [f, at] { return OperationOutcome{f(at), 0.0, {}}; };
  } else if (name == "circulation" || name == "line_integral") {
    FieldExpr f = field_from_json(require(op, "field"), ctx);
    Path path = path_from_json(require(op, "path"));
    const double tol = tol_of(1e-10);
    c.target = f.id();
    c.run = [f, path, tol] {
      const auto r = line_integral(f, path, tol);
      return OperationOutcome{r.value, r.error_estimate, {{"n_points", r.n_points}}};
    };
  } else if (name == "winding") {
    Path path = path_from_json(require(op, "path"));
    c.target = "path";
    c.run = [path] { return OperationOutcome{static_cast<double>(LoopSpec(path).winding()), 0.0, {}}; };
  } else if (name == "open_phase" || name == "loop_phase") {
    PhaseProbe probe = probe_from_json(op, ctx);
    Path path = path_from_json(require(op, "path"));
    const double tol = tol_of(kPhaseTolerance);
    const bool loop = name == "loop_phase";
    c.target = probe.gauge_id();
    c.run = [probe, path, tol, loop] {
      const PhaseReport r = loop ? loop_phase(probe, LoopSpec(path), tol) : open_path_phase(probe, path, tol);
      return OperationOutcome{r.phase, r.error_estimate, phase_details(r)};
    };
  } else if (name == "interference") {
    PhaseProbe probe = probe_from_json(op, ctx);
    Path c1 = path_from_json(require(op, "c1"));
    Path c2 = path_from_json(require(op, "c2"));
    const double tol = tol_of(kPhaseTolerance);
    c.target = probe.gauge_id();
    c.run = [probe, c1, c2, tol] {
      const PhaseReport r = interference_shift(probe, c1, c2, tol);
      return OperationOutcome{r.phase, r.error_estimate, phase_details(r)};
    };
  } else if (name == "gauge_scan") {
    PhaseProbe probe = probe_from_json(op, ctx);
    Path path = path_from_json(require(op, "path"));
    auto gauges = gauges_from_json(require(op, "gauges"), ctx);
    const double tol = tol_of(kPhaseTolerance);
    c.target = "gauges";
    c.run = [probe, path, gauges, tol] {
      const GaugeScanTable t = gauge_dependence_scan(probe, path, gauges, tol);
      Json rows = Json::array();
      for (const auto& row : t.rows) {
        rows.push_back({{"gauge", row.gauge_id}, {"phase", row.report.phase},
                        {"transverse_part", row.report.transverse_part}, {"gauge_part", row.report.gauge_part}});
      }
      Json diffs = Json::array();
      for (const auto& d : t.differences) {
        diffs.push_back({{"a", d.gauge_a}, {"b", d.gauge_b}, {"phase_difference", d.phase_difference},
                         {"expected_shift", d.expected_shift}});
      }
      const double value = t.differences.empty() ? 0.0 : t.differences.back().phase_difference;
      return OperationOutcome{value, t.max_shift_error,
                              {{"rows", rows},
                               {"differences", diffs},
                               {"max_shift_error", t.max_shift_error},
                               {"max_transverse_spread", t.max_transverse_spread},
                               {"consistent", t.consistent}}};
    };
  } else if (name == "disc_flux") {
    FieldExpr f = field_from_json(require(op, "field"), ctx);
    DiscSpec disc = disc_from_json(require(op, "disc"));
    std::vector<DeltaSource> deltas;
    if (op.contains("deltas")) {
      for (const auto& d : op.at("deltas")) {
        const std::string kind = d.is_string() ? d.get<std::string>() : std::string();
        if (kind == "string_field") {
          deltas.emplace_back(StringField{string_flux(ctx.solenoid)});
        } else if (kind == "surface_current") {
          deltas.emplace_back(SurfaceCurrent{ctx.solenoid.radius, ctx.solenoid.field});
        } else if (kind == "string_current") {
          deltas.emplace_back(StringCurrent{ctx.solenoid.flux()});
        } else {
          parse_fail("unknown delta source '" + kind + "'");
        }
      }
    }
    const double tol = tol_of(1e-10);
    c.target = f.id();
    c.run = [f, disc, deltas, tol] {
      const FluxReport r = disc_flux(f, disc, deltas, tol);
      return OperationOutcome{r.value, r.error_estimate,
                              {{"smooth_part", r.smooth_part}, {"delta_part", r.delta_part}, {"n_points", r.n_points}}};
    };
  } else if (name == "string_flux") {
    const SolenoidSpec s = ctx.solenoid;
    c.target = "string_field";
    c.run = [s] { return OperationOutcome{string_flux(s), 0.0, {}}; };
  } else if (name == "shrinking_loop") {
    FieldExpr f = field_from_json(require(op, "field"), ctx);
    const Point center = op.contains("center") ? vec3(op.at("center"), "center") : Point::Zero();
    std::vector<double> radii;
    for (const auto& r : require(op, "radii")) radii.push_back(number(r, "radius"));
    const double tol = tol_of(1e-12);
    c.target = f.id();
    c.run = [f, center, radii, tol] {
      const auto r = shrinking_loop_circulation(f, center, radii, tol);
      return OperationOutcome{r.limit, r.spread, {{"radii", r.radii}, {"circulations", r.circulations}}};
    };
  } else if (name == "stokes") {
    FieldExpr f = field_from_json(require(op, "field"), ctx);
    DiscSpec disc = disc_from_json(require(op, "disc"));
    DiffConfig cfg{number_or(op, "h", 1e-4), static_cast<int>(number_or(op, "order", 2))};
    parse_guard<int>([&] { cfg.validate(); return 0; });
    const double tol = tol_of(1e-10);
    c.target = f.id();
    c.run = [f, disc, cfg, tol] {
      const auto r = stokes_residual(f, disc, cfg, tol);
      return OperationOutcome{r.residual, 0.0, {{"circulation", r.circulation}, {"flux", r.flux}}};
    };
  } else if (name == "helmholtz" || name == "max_norm") {
    FieldExpr f = field_from_json(require(op, "field"), ctx);
    auto samples = samples_from_json(require(op, "samples"), seed);
    DiffConfig cfg{number_or(op, "h", 1e-4), static_cast<int>(number_or(op, "order", 2))};
    parse_guard<int>([&] { cfg.validate(); return 0; });
    c.target = f.id();
    if (name == "helmholtz") {
      c.run = [f, samples, cfg] {
        const auto r = helmholtz_classify(f, samples, cfg);
        return OperationOutcome{std::string(to_string(r.classification)), 0.0,
                                {{"max_abs_div", r.max_abs_div},
                                 {"max_abs_curl", r.max_abs_curl},
                                 {"harmonic", r.harmonic},
                                 {"notes", r.notes}}};
      };
    } else {
      c.run = [f, samples] {
        double m = 0.0;
        for (const auto& p : samples) m = std::max(m, f(p).norm());
        return OperationOutcome{m, 0.0, {{"samples", samples.size()}}};
      };
    }
  } else if (name == "biot_savart" || name == "biot_savart_b") {
    const Point at = vec3(require(op, "at"), "at");
    const QuadratureConfig cfg = op.contains("quadrature") ? quadrature_from_json(op.at("quadrature"), ctx.quadrature)
                                                           : ctx.quadrature;
    const SolenoidSpec s = ctx.solenoid;
    c.target = "solenoid";
    if (name == "biot_savart") {
      c.run = [at, cfg, s] {
        const auto r = numeric_potential(at, s, cfg);
        Json per = Json::array();
        for (const auto& v : r.per_length) per.push_back(vector_json(v));
        return OperationOutcome{r.value, r.error_estimate, {{"per_length", per}}};
      };
    } else {
      const double h = positive_tol(op, "h", 1e-3);
      c.run = [at, cfg, s, h] { return OperationOutcome{numeric_b_field(at, s, cfg, h), 0.0, {}}; };
    }
  } else if (name == "interaction_energy" || name == "energy_cancellation") {
    const Vector v = vec3(require(op, "velocity"), "velocity");
    const Point x = vec3(require(op, "position"), "position");
    if (!(v.norm() < 1.0)) parse_fail("velocity must have |v| < 1");
    const double charge = number_or(op, "charge", ctx.charge);
    const SolenoidSpec s = ctx.solenoid;
    if (name == "interaction_energy") {
      const std::string model = require(op, "model").get<std::string>();
      if (model != "boyer" && model != "virtual_photon") parse_fail("model must be boyer or virtual_photon");
      const EnergyModel m = model == "boyer" ? EnergyModel::Boyer : EnergyModel::VirtualPhoton;
      c.target = model;
      c.run = [m, v, x, s, charge] {
        return OperationOutcome{interaction_energy(m, VelocitySample(v, x), s, charge), 0.0, {}};
      };
    } else {
      c.target = "boyer+virtual_photon";
      c.run = [v, x, s, charge] { return OperationOutcome{energy_cancellation(VelocitySample(v, x), s, charge), 0.0, {}}; };
    }
  } else if (name == "plot") {
    FieldExpr f = field_from_json(require(op, "field"), ctx);
    PlotWindow w;
    if (op.contains("window")) {
      const Json& win = op.at("window");
      if (!win.is_array() || win.size() != 4) parse_fail("window is [x_min, x_max, y_min, y_max]");
      w = {number(win[0], "window"), number(win[1], "window"), number(win[2], "window"), number(win[3], "window"), 0.0};
    }
    const int res = static_cast<int>(number_or(op, "resolution", 24));
    const Json& out_json = require(op, "out");
    if (!out_json.is_string()) parse_fail("out must be a path string");
    const std::string name_out = out_json.get<std::string>();
    const std::filesystem::path out = ctx.base_dir / name_out;
    const double radius = ctx.solenoid.radius;
    c.target = f.id();
    c.run = [f, w, res, out, name_out, radius] {
      emit_field_map(f, w, res, out, radius);
      return OperationOutcome{name_out, 0.0, {}};
    };
  } else {
    parse_fail("unknown operation '" + name + "'");
  }
  return c;
}

bool check(const OperationValue& value, const Expectation& e) {
  if (const auto* s = std::get_if<std::string>(&e.value)) {
    const auto* got = std::get_if<std::string>(&value);
    return got && *got == *s;
  }
  if (const auto* d = std::get_if<double>(&e.value)) {
    const auto* got = std::get_if<double>(&value);
    return got && std::abs(*got - *d) <= e.tol;
  }
  const auto& v = std::get<Vector>(e.value);
  const auto* got = std::get_if<Vector>(&value);
  return got && (*got - v).norm() <= e.tol;
}

std::string full_precision(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

Json value_json(const OperationValue& v) {
  return std::visit([](const auto& x) -> Json {
    using T = std::decay_t<decltype(x)>;
    if constexpr (std::is_same_v<T, Vector>) {
      return vector_json(x);
    } else {
      return x;
    }
  }, v);
}

}  // namespace

FieldExpr field_from_json(const Json& spec, const ScenarioContext& ctx) {
  const std::string id = id_of(spec);
  const SolenoidSpec& s = ctx.solenoid;
  if (id == "solenoid.AS") return FieldExpr::solenoid_transverse(s);
  if (id == "solenoid.Aprime") return FieldExpr::transformed_potential(s);
  if (id == "solenoid.B") return FieldExpr::solenoid_b(s);
  if (id == "biot_savart.A") return FieldExpr::numeric_biot_savart(s, ctx.quadrature);
  if (id == "landau.S") return FieldExpr::landau(LandauGauge::Symmetric, ctx.landau_field);
  if (id == "landau.L1") return FieldExpr::landau(LandauGauge::L1, ctx.landau_field);
  if (id == "landau.L2") return FieldExpr::landau(LandauGauge::L2, ctx.landau_field);
  if (id == "landau.BB") return FieldExpr::landau(LandauGauge::BawinBurnel, ctx.landau_field);
  if (id.rfind("gauge.", 0) == 0 || id == "custom.regular") {
    auto g = gauge_from_json(spec, ctx);
    if (!g) parse_fail("field id 'none' has no field");
    return FieldExpr::gauge_gradient(*g);
  }
  parse_fail("unknown field id '" + id + "'");
}

std::optional<GaugeChoice> gauge_from_json(const Json& spec, const ScenarioContext& ctx) {
  if (spec.is_null()) return std::nullopt;
  const std::string id = id_of(spec);
  if (id == "none") return std::nullopt;
  if (id == "gauge.sing") return GaugeChoice::singular(ctx.solenoid);
  if (id == "gauge.chi1") return GaugeChoice::landau_link1(ctx.landau_field);
  if (id == "gauge.chi2") return GaugeChoice::landau_link2(ctx.landau_field);
  if (id == "gauge.chitilde") return GaugeChoice::bawin_burnel(ctx.landau_field);
  if (id == "custom.regular") {
    const std::string label = spec.contains("label") ? spec.at("label").get<std::string>() : id;
    return GaugeChoice::regular(polynomial_from_json(spec), label);
  }
  parse_fail("unknown gauge id '" + id + "'");
}

Path path_from_json(const Json& spec) {
  const std::string type = require(spec, "type").get<std::string>();
  Path path = parse_guard<Path>([&]() -> Path {
    if (type == "circle") {
      const Point center = spec.contains("center") ? vec3(spec.at("center"), "center") : Point::Zero();
      const int turns = static_cast<int>(number_or(spec, "turns", 1));
      const bool ccw = !spec.contains("ccw") || spec.at("ccw").get<bool>();
      return Path::circle(center, number(require(spec, "radius"), "radius"), turns, ccw,
                          number_or(spec, "phase", 0.0));
    }
    if (type == "arc") {
      const Point center = spec.contains("center") ? vec3(spec.at("center"), "center") : Point::Zero();
      return Path::arc(center, number(require(spec, "radius"), "radius"), number(require(spec, "phi0"), "phi0"),
                       number(require(spec, "phi1"), "phi1"));
    }
    if (type == "segment") return Path::segment(vec3(require(spec, "from"), "from"), vec3(require(spec, "to"), "to"));
    if (type == "polyline") {
      std::vector<Point> v;
      for (const auto& p : require(spec, "vertices")) v.push_back(vec3(p, "vertex"));
      return Path::polyline(std::move(v));
    }
    if (type == "concat") {
      const Json& parts = require(spec, "parts");
      if (!parts.is_array() || parts.empty()) parse_fail("concat needs a non-empty parts array");
      Path out = path_from_json(parts[0]);
      for (std::size_t i = 1; i < parts.size(); ++i) out = out.then(path_from_json(parts[i]));
      return out;
    }
    parse_fail("unknown path type '" + type + "'");
  });
  if (spec.contains("reverse") && spec.at("reverse").get<bool>()) path = path.reversed();
  return path;
}

DiscSpec disc_from_json(const Json& spec) {
  return parse_guard<DiscSpec>([&] {
    const Point center = spec.contains("center") ? vec3(spec.at("center"), "center") : Point::Zero();
    return DiscSpec(center, number(require(spec, "radius"), "radius"), static_cast<int>(number_or(spec, "normal", 1)));
  });
}

QuadratureConfig quadrature_from_json(const Json& spec, QuadratureConfig cfg) {
  if (spec.contains("n_phi")) cfg.n_phi = static_cast<int>(number(spec.at("n_phi"), "n_phi"));
  if (spec.contains("n_z")) cfg.n_z = static_cast<int>(number(spec.at("n_z"), "n_z"));
  if (spec.contains("half_lengths")) {
    cfg.half_lengths.clear();
    for (const auto& l : spec.at("half_lengths")) cfg.half_lengths.push_back(number(l, "half_length"));
  }
  if (spec.contains("extrapolation")) {
    const std::string e = spec.at("extrapolation").get<std::string>();
    if (e == "richardson") cfg.extrapolation = Extrapolation::Richardson;
    else if (e == "none") cfg.extrapolation = Extrapolation::None;
    else parse_fail("extrapolation must be none or richardson");
  }
  parse_guard<int>([&] { cfg.validate(); return 0; });
  return cfg;
}

Scenario parse_scenario(const Json& doc, const std::filesystem::path& base_dir) {
  try {
    if (!doc.is_object()) parse_fail("scenario must be a JSON object");
    Scenario sc;
    sc.name = require(doc, "name").get<std::string>();
    sc.paper_claim = doc.value("paper_claim", std::string());
    sc.seed = doc.value("seed", std::uint64_t{0});
    sc.context.base_dir = base_dir;
    if (doc.contains("solenoid")) {
      const Json& s = doc.at("solenoid");
      sc.context.solenoid = parse_guard<SolenoidSpec>(
          [&] { return SolenoidSpec(number_or(s, "radius", 1.0), number_or(s, "field", 1.0)); });
    }
    sc.context.charge = number_or(doc, "charge", 1.0);
    if (sc.context.charge == 0.0) parse_fail("charge must be non-zero");
    sc.context.landau_field = number_or(doc, "landau_field", sc.context.solenoid.field);
    if (doc.contains("quadrature")) sc.context.quadrature = quadrature_from_json(doc.at("quadrature"));
    if (doc.contains("output")) {
      const Json& out = doc.at("output");
      if (out.contains("format")) {
        const std::string f = out.at("format").get<std::string>();
        if (f != "csv" && f != "json") parse_fail("output format must be csv or json");
        sc.output_format = f;
      }
      if (out.contains("path")) sc.output_path = base_dir / out.at("path").get<std::string>();
    }
    const Json& ops = require(doc, "operations");
    if (!ops.is_array() || ops.empty()) parse_fail("operations must be a non-empty array");
    for (std::size_t i = 0; i < ops.size(); ++i) {
      sc.operations.push_back(compile_operation(ops[i], sc.context, sc.seed + i));
    }
    return sc;
  } catch (const Json::exception& e) {
    parse_fail(e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) parse_fail("cannot open scenario file " + file.string());
  Json doc;
  try {
    in >> doc;
  } catch (const Json::exception& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  return parse_scenario(doc, file.parent_path());
}

bool RunRecord::all_passed() const {
  for (const auto& r : reports) {
    if (r.error || (r.pass && !*r.pass)) return false;
  }
  return true;
}

bool RunRecord::any_error() const {
  for (const auto& r : reports) {
    if (r.error) return true;
  }
  return false;
}

RunRecord run_scenario(const Scenario& scenario, const RunOptions& options) {
  RunRecord record;
  record.scenario = scenario.name;
  record.paper_claim = scenario.paper_claim;
  record.version = GAUGEKIT_VERSION;
  {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    record.timestamp = buf;
  }

  auto execute = [&](std::size_t i) {
    const CompiledOperation& op = scenario.operations[i];
    OperationReport r;
    r.index = i;
    r.op = op.op;
    r.target = op.target;
    r.expect = op.expect;
    try {
      OperationOutcome out = op.run();
      r.value = out.value;
      r.error_estimate = out.error_estimate;
      r.details = std::move(out.details);
      if (op.expect) r.pass = check(out.value, *op.expect);
    } catch (const GaugeError& e) {
      r.error = e.what();
      if (op.expect) r.pass = false;
    }
    return r;
  };

  if (options.parallel) {
    std::vector<std::future<OperationReport>> futures;
    for (std::size_t i = 0; i < scenario.operations.size(); ++i) {
      futures.push_back(std::async(std::launch::async, execute, i));
    }
    for (auto& f : futures) record.reports.push_back(f.get());
  } else {
    for (std::size_t i = 0; i < scenario.operations.size(); ++i) record.reports.push_back(execute(i));
  }
  return record;
}

int exit_code(const RunRecord& record) {
  if (record.any_error()) return 3;
  return record.all_passed() ? 0 : 1;
}

std::string format_value(const OperationValue& v) {
  return std::visit([](const auto& x) -> std::string {
    using T = std::decay_t<decltype(x)>;
    if constexpr (std::is_same_v<T, double>) {
      return full_precision(x);
    } else if constexpr (std::is_same_v<T, Vector>) {
      return full_precision(x.x()) + ";" + full_precision(x.y()) + ";" + full_precision(x.z());
    } else {
      return x;
    }
  }, v);
}

Json to_json(const RunRecord& record) {
  Json reports = Json::array();
  for (const auto& r : record.reports) {
    Json j{{"index", r.index}, {"op", r.op}, {"target", r.target}, {"error_estimate", r.error_estimate}};
    j["value"] = r.value ? value_json(*r.value) : Json();
    if (r.expect) {
      j["expected"] = value_json(r.expect->value);
      j["tol"] = r.expect->tol;
    }
    j["pass"] = r.pass ? Json(*r.pass) : Json();
    if (r.error) j["error"] = *r.error;
    j["details"] = r.details;
    reports.push_back(std::move(j));
  }
  return Json{{"scenario", record.scenario},
              {"paper_claim", record.paper_claim},
              {"version", record.version},
              {"all_passed", record.all_passed()},
              {"reports", reports},
              {"sidecar", {{"timestamp", record.timestamp}}}};
}

std::string to_csv(const RunRecord& record) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : record.reports) {
    out << csv_field(record.scenario) << ',' << csv_field(r.op) << ',' << csv_field(r.target) << ','
        << csv_field(r.value ? format_value(*r.value) : (r.error ? "error: " + *r.error : std::string())) << ','
        << full_precision(r.error_estimate) << ',' << csv_field(r.expect ? format_value(r.expect->value) : "") << ','
        << (r.expect ? full_precision(r.expect->tol) : "") << ',' << (r.pass ? (*r.pass ? "true" : "false") : "")
        << '\n';
  }
  return out.str();
}

}  // namespace gaugekit
