#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ahdcov/network.hpp"
#include "json.hpp"

// Analytic CP checked against the simulator over a model x height x density
// grid. A point passes when |MC - analytic| <= max(2 * ci95, 0.01).

namespace ahdcov {

/// sspm(4), dspm(1.5/4;10), mspm(1.5/3/4.5;10/50).
std::vector<PathlossModel> default_validation_models();

struct ValidationSpec {
  std::vector<PathlossModel> models = default_validation_models();
  std::vector<double> ahds_m{0.0, 2.0, 4.5, 8.5};
  std::vector<double> lambdas_per_km2{1e2, 1e3, 1e4, 1e5};
  double tau = 1.0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  /// Also simulate every point under this Rice law (reported, never graded).
  std::optional<FadingModel> rice;
  /// Paired estimate of the bias from truncating the interference field.
  bool truncation_check = true;
  int threads = 0;
};

struct ValidationPoint {
  std::string model_id;
  std::string fading;
  double delta_h_m = 0.0;
  double lambda_per_km2 = 0.0;
  std::optional<double> cp_analytic;
  /// Variants: plain K_i for the cross-segment pieces, and unlifted breakpoints.
  std::optional<double> cp_absolute;
  std::optional<double> cp_ground;
  /// "relative_lifted", "absolute" or "ground", whichever lies nearest the MC value.
  std::string closest_variant;
  std::optional<double> cp_mc;
  std::optional<double> cp_mc_ci95;
  /// CP with the window doubled minus CP with the nominal window, same streams.
  std::optional<double> truncation_bias;
  /// Unset for points without an analytic reference.
  std::optional<bool> pass;
  std::string note;
  std::string error;
};

struct ValidationReport {
  std::vector<ValidationPoint> points;
  /// Per (model, height): Rice and Rayleigh ST peaks on the density grid.
  nlohmann::json rice_shape = nlohmann::json::array();
  bool pass = true;
};

using AnalyticFn = std::function<double(const NetworkConfig&)>;

/// Runs the grid. `analytic` defaults to ahdcov::cp; tests inject broken
/// formulas to make sure failures are caught.
ValidationReport run_validate(const ValidationSpec& spec, const AnalyticFn& analytic = {});

nlohmann::json to_json(const ValidationReport& report);
void write_csv(std::ostream& out, const ValidationReport& report);

}  // namespace ahdcov
