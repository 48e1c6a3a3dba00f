#pragma once

// JSON config records and CSV/JSON result emission.
//
// Parameter records are JSON objects whose keys are exactly the field names
// (snake_case); complex couplings are {"re": x, "im": y}. The full run-config
// layout is documented in docs/config.schema.json.

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nonrecip/model.hpp"
#include "nonrecip/pendulum.hpp"
#include "nonrecip/scattering.hpp"
#include "nonrecip/steady_state.hpp"
#include "nonrecip/sweep.hpp"

namespace nonrecip::io {

using nlohmann::json;

/// Malformed or invalid configuration; the message names the offending key.
class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

json to_json(const PendulumParams& p);
json to_json(const OptomechDriveParams& p);
json to_json(const EffectiveParams& p);
json to_json(const SweepSpec& s);

PendulumParams pendulum_from_json(const json& j);
OptomechDriveParams drives_from_json(const json& j);
EffectiveParams effective_from_json(const json& j);
SweepSpec sweep_from_json(const json& j);

enum class OutputFormat { csv, json };

OutputFormat output_format_from_string(const std::string& name);

struct OutputSpec {
  std::optional<std::string> path;
  std::optional<OutputFormat> format;
};

struct IsolationSettings {
  std::optional<double> omega_min;
  std::optional<double> omega_max;
  int points = 2001;
  double refine_tol = 1e-6;
};

struct RunConfig {
  std::optional<PendulumParams> pendulum;
  std::optional<OptomechDriveParams> drives;
  std::optional<EffectiveParams> effective;
  std::optional<SweepSpec> sweep;
  OutputSpec output;
  SolverOptions solver;
  SolveMode mode;
  std::optional<double> probe_omega;
  IsolationSettings isolation;
  CouplingForm coupling_form = CouplingForm::symmetric;
};

/// Parses and validates a run config. Throws ConfigError.
RunConfig run_config_from_json(const json& j);
RunConfig run_config_from_text(const std::string& text);

/// Full-precision (17 significant digit) decimal rendering.
std::string format_double(double v);

void write_pendulum_csv(std::ostream& os, const std::vector<PendulumSpectrumRow>& rows);

/// Transmission table. When `leading` is given, its name becomes the first
/// column and its values are written ahead of the standard columns.
void write_transmission_csv(
    std::ostream& os, const std::vector<TransmissionRow>& rows,
    const std::optional<std::pair<std::string, std::vector<double>>>& leading = std::nullopt);

json pendulum_rows_to_json(const std::vector<PendulumSpectrumRow>& rows);
json transmission_rows_to_json(
    const std::vector<TransmissionRow>& rows,
    const std::optional<std::pair<std::string, std::vector<double>>>& leading = std::nullopt);

json to_json(const IsolationResult& r);
json to_json(const SteadyState& ss);
json to_json(const PhaseReport& r);
json complex_to_json(const Complex<double>& z);

}  // namespace nonrecip::io
