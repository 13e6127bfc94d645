#include "gaugekit/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace gaugekit;

namespace {

struct OutputFlags {
  std::string out;
  std::string format;
  bool parallel = false;
};

struct QuadratureFlags {
  int nphi = 0;
  int nz = 0;
  std::vector<double> half_lengths;

  bool any() const { return nphi > 0 || nz > 0 || !half_lengths.empty(); }

  void apply(Json& doc) const {
    Json& q = doc["quadrature"];
    if (q.is_null()) q = Json::object();
    if (nphi > 0) q["n_phi"] = nphi;
    if (nz > 0) q["n_z"] = nz;
    if (!half_lengths.empty()) q["half_lengths"] = half_lengths;
  }
};

Json parse_triple(const std::string& text) {
  std::stringstream ss(text);
  std::string item;
  Json out = Json::array();
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw GaugeError(ErrorKind::ParseError, "expected comma-separated numbers, got '" + text + "'");
    }
  }
  return out;
}

int emit(const RunRecord& record, const std::string& format, const std::string& out) {
  const std::string text = format == "json" ? to_json(record).dump(2) + "\n" : to_csv(record);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "error: cannot write " << out << "\n";
      return 2;
    }
    f << text;
  }
  for (const auto& r : record.reports) {
    if (r.error) std::cerr << "op " << r.index << " (" << r.op << "): " << *r.error << "\n";
  }
  return exit_code(record);
}

int run_document(Json doc, const OutputFlags& o, const QuadratureFlags& q, const std::filesystem::path& base) {
  if (q.any()) q.apply(doc);
  const Scenario sc = parse_scenario(doc, base);
  const RunRecord record = run_scenario(sc, RunOptions{o.parallel});
  std::string format = o.format;
  std::string out = o.out;
  if (format.empty()) format = sc.output_format.value_or("csv");
  if (out.empty() && sc.output_path) out = sc.output_path->string();
  return emit(record, format, out);
}

Json single(const std::string& name, Json op) {
  return Json{{"name", name}, {"operations", Json::array({std::move(op)})}};
}

Json circle_path(double radius, int turns, bool cw) {
  return Json{{"type", "circle"}, {"radius", radius}, {"turns", turns}, {"ccw", !cw}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gaugekit: solenoid gauge fields, Aharonov-Bohm phases and scenario runs"};
  app.set_version_flag("--version", GAUGEKIT_VERSION);
  app.require_subcommand(1);

  OutputFlags o;
  QuadratureFlags q;
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out, "Write the report to this file instead of stdout");
    cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_quadrature = [&](CLI::App* cmd) {
    cmd->add_option("--nphi", q.nphi, "Azimuthal Gauss-Legendre order")->check(CLI::PositiveNumber);
    cmd->add_option("--nz", q.nz, "Axial Gauss-Legendre order per half")->check(CLI::PositiveNumber);
    cmd->add_option("--half-lengths", q.half_lengths, "Truncation half-lengths in units of R")->delimiter(',');
  };
  double tol = 0.0;
  auto add_tol = [&](CLI::App* cmd) {
    cmd->add_option("--tol", tol, "Numerical tolerance of the operation")->check(CLI::PositiveNumber);
  };

  std::string scenario_file;
  auto* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("scenario", scenario_file, "Scenario JSON file")->required();
  run->add_flag("--parallel", o.parallel, "Run operations concurrently");
  add_output(run);
  add_quadrature(run);

  std::string field;
  std::string at;
  auto* eval = app.add_subcommand("eval", "Evaluate a field at a point");
  eval->add_option("field", field, "Field id")->required();
  eval->add_option("--at", at, "Point x,y,z")->required();
  add_output(eval);
  add_quadrature(eval);

  std::string gauge = "none";
  double radius = 2.0;
  int turns = 1;
  bool cw = false;
  std::vector<double> arc;
  auto* phase = app.add_subcommand("phase", "Aharonov-Bohm phase along a path");
  phase->require_subcommand(1);
  auto* phase_open = phase->add_subcommand("open", "Open arc about the axis");
  phase_open->add_option("--gauge", gauge, "Gauge id");
  phase_open->add_option("--arc", arc, "radius,phi0,phi1")->delimiter(',')->expected(3)->required();
  auto* phase_loop = phase->add_subcommand("loop", "Closed circle about the axis");
  phase_loop->add_option("--gauge", gauge, "Gauge id");
  phase_loop->add_option("--radius", radius, "Loop radius")->check(CLI::PositiveNumber);
  phase_loop->add_option("--turns", turns, "Number of turns")->check(CLI::PositiveNumber);
  phase_loop->add_flag("--cw", cw, "Traverse clockwise");
  for (auto* cmd : {phase_open, phase_loop}) {
    add_output(cmd);
    add_tol(cmd);
  }

  bool with_string = false;
  auto* flux = app.add_subcommand("flux", "Magnetic flux through an axis-centred disc");
  flux->add_option("--field", field, "Field id")->default_val("solenoid.B");
  flux->add_option("--radius", radius, "Disc radius")->check(CLI::PositiveNumber);
  flux->add_flag("--string", with_string, "Include the string field of the singular gauge");
  add_output(flux);
  add_tol(flux);

  std::vector<double> radii{0.1, 0.05, 0.025, 0.0125};
  auto* str = app.add_subcommand("string", "Shrinking-loop circulation about the axis");
  str->add_option("--field", field, "Field id")->default_val("gauge.sing");
  str->add_option("--radii", radii, "Descending loop radii")->delimiter(',');
  add_output(str);

  auto* landau = app.add_subcommand("landau", "Uniform-field gauge family");
  landau->require_subcommand(1);
  double side = 1.0;
  auto* compare = landau->add_subcommand("compare", "Loop phase of a square in every gauge");
  compare->add_option("--side", side, "Square side length")->check(CLI::PositiveNumber);
  add_output(compare);
  add_tol(compare);

  PlotWindow window;
  std::vector<double> window_values;
  int resolution = 24;
  auto* plot = app.add_subcommand("plot", "Static SVG field maps");
  plot->require_subcommand(1);
  auto* plot_field = plot->add_subcommand("field", "Arrow map of a field in the z=0 plane");
  plot_field->add_option("field", field, "Field id")->required();
  plot_field->add_option("--window", window_values, "x_min,x_max,y_min,y_max")->delimiter(',')->expected(4);
  plot_field->add_option("--resolution", resolution, "Arrows per side")->check(CLI::PositiveNumber);
  plot_field->add_option("--out", o.out, "SVG file")->required();

  CLI11_PARSE(app, argc, argv);

  auto with_tol = [&](Json op) {
    if (tol > 0.0) op["tol"] = tol;
    return op;
  };

  try {
    if (*run) {
      const std::filesystem::path file(scenario_file);
      std::ifstream in(file);
      if (!in) throw GaugeError(ErrorKind::ParseError, "cannot open scenario file " + scenario_file);
      Json doc;
      try {
        in >> doc;
      } catch (const Json::exception& e) {
        throw GaugeError(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
      }
      return run_document(std::move(doc), o, q, file.parent_path());
    }
    if (*eval) {
      return run_document(single("cli.eval", {{"op", "eval"}, {"field", field}, {"at", parse_triple(at)}}), o, q, ".");
    }
    if (*phase_open) {
      const Json path{{"type", "arc"}, {"radius", arc[0]}, {"phi0", arc[1]}, {"phi1", arc[2]}};
      return run_document(single("cli.phase.open", with_tol({{"op", "open_phase"}, {"gauge", gauge}, {"path", path}})),
                          o, q, ".");
    }
    if (*phase_loop) {
      return run_document(single("cli.phase.loop", with_tol({{"op", "loop_phase"},
                                                              {"gauge", gauge},
                                                              {"path", circle_path(radius, turns, cw)}})),
                          o, q, ".");
    }
    if (*flux) {
      Json op{{"op", "disc_flux"}, {"field", field}, {"disc", {{"radius", radius}}}};
      if (with_string) op["deltas"] = Json::array({"string_field"});
      return run_document(single("cli.flux", with_tol(std::move(op))), o, q, ".");
    }
    if (*str) {
      return run_document(single("cli.string", {{"op", "shrinking_loop"}, {"field", field}, {"radii", radii}}), o, q,
                          ".");
    }
    if (*compare) {
      const double lo = 0.5;
      const double hi = lo + side;
      const Json square{{"type", "polyline"},
                        {"vertices", {{lo, lo, 0.0}, {hi, lo, 0.0}, {hi, hi, 0.0}, {lo, hi, 0.0}, {lo, lo, 0.0}}}};
      Json doc{{"name", "cli.landau.compare"}, {"operations", Json::array()}};
      for (const char* id : {"landau.S", "landau.L1", "landau.L2", "landau.BB"}) {
        doc["operations"].push_back(with_tol({{"op", "circulation"}, {"field", id}, {"path", square}}));
      }
      return run_document(std::move(doc), o, q, ".");
    }
    if (*plot_field) {
      if (!window_values.empty()) {
        window = {window_values[0], window_values[1], window_values[2], window_values[3], 0.0};
      }
      SolenoidSpec s;
      ScenarioContext ctx;
      const FieldExpr f = field_from_json(Json(field), ctx);
      emit_field_map(f, window, resolution, o.out, s.radius);
      std::cout << o.out << "\n";
      return 0;
    }
  } catch (const GaugeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::InvalidArgument ? 2 : 3;
  }
  return 0;
}
