#pragma once

#include "gaugekit/ab_phase.hpp"
#include "gaugekit/field_map.hpp"

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gaugekit {

using Json = nlohmann::json;

/// Ids, solenoid and defaults that scenario entries are resolved against.
struct ScenarioContext {
  SolenoidSpec solenoid;
  double charge = 1.0;
  double landau_field = 1.0;
  QuadratureConfig quadrature;
  std::filesystem::path base_dir = ".";
};

/// Field ids: solenoid.AS, solenoid.Aprime, solenoid.B, biot_savart.A,
/// landau.{S,L1,L2,BB}, gauge.{sing,chi1,chi2,chitilde} (as gradients) and
/// {"id": "custom.regular", "coefficients": [[c, px, py, pz], ...]}.
FieldExpr field_from_json(const Json& spec, const ScenarioContext& ctx);
/// "none" or null gives std::nullopt.
std::optional<GaugeChoice> gauge_from_json(const Json& spec, const ScenarioContext& ctx);
Path path_from_json(const Json& spec);
DiscSpec disc_from_json(const Json& spec);
QuadratureConfig quadrature_from_json(const Json& spec, QuadratureConfig defaults = {});

struct Expectation {
  std::variant<double, Vector, std::string> value;
  double tol = 0.0;
};

using OperationValue = std::variant<double, Vector, std::string>;

struct OperationOutcome {
  OperationValue value = 0.0;
  double error_estimate = 0.0;
  Json details = Json::object();
};

struct CompiledOperation {
  std::string op;
  std::string target;
  std::optional<Expectation> expect;
  std::function<OperationOutcome()> run;
};

struct Scenario {
  std::string name;
  std::string paper_claim;
  std::uint64_t seed = 0;
  ScenarioContext context;
  std::vector<CompiledOperation> operations;
  std::optional<std::string> output_format;
  std::optional<std::filesystem::path> output_path;
};

/// Validates and compiles a scenario document; throws GaugeError(ParseError).
Scenario parse_scenario(const Json& doc, const std::filesystem::path& base_dir = ".");
Scenario load_scenario(const std::filesystem::path& file);

struct OperationReport {
  std::size_t index = 0;
  std::string op;
  std::string target;
  std::optional<OperationValue> value;
  double error_estimate = 0.0;
  std::optional<Expectation> expect;
  std::optional<bool> pass;
  std::optional<std::string> error;
  Json details = Json::object();
};

struct RunRecord {
  std::string scenario;
  std::string paper_claim;
  std::string version;
  std::string timestamp;
  std::vector<OperationReport> reports;

  bool all_passed() const;
  bool any_error() const;
};

struct RunOptions {
  bool parallel = false;
};

RunRecord run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// 0 when every expectation passes, 3 if an operation raised a numerical
/// error, 1 otherwise.
int exit_code(const RunRecord& record);

/// Deterministic serialisations; the timestamp lives under "sidecar" in JSON
/// and is absent from CSV.
Json to_json(const RunRecord& record);
std::string to_csv(const RunRecord& record);
std::string format_value(const OperationValue& v);

inline constexpr const char* kCsvHeader = "scenario,op,target,value,error_estimate,expected,tol,pass";

}  // namespace gaugekit
