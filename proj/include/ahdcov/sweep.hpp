#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ahdcov/config.hpp"
#include "json.hpp"

namespace ahdcov {

/// One grid point of a density or height sweep. ST columns are in
/// bits/(s Hz km^2) to match the per-km^2 density column.
struct SweepRecord {
  double lambda_per_km2 = 0.0;
  double delta_h_m = 0.0;
  std::string model_id;
  std::optional<double> cp_analytic;
  std::optional<double> st_analytic;
  std::optional<double> cp_mc;
  std::optional<double> cp_mc_ci95;
  std::optional<double> st_mc;
  std::optional<double> cp_lower;
  std::optional<double> cp_upper;
  /// Empty on success.
  std::string error;

  bool operator==(const SweepRecord&) const = default;
};

/// Evaluates every grid point in grid order. Analytic columns are computed in
/// parallel across points; Monte Carlo columns run one point at a time with
/// the trials spread over threads. Per-point failures land in `error`.
std::vector<SweepRecord> run_sweep(const RunConfig& rc);

/// Critical densities at one antenna height difference.
struct CriticalRecord {
  double delta_h_m = 0.0;
  std::string model_id;
  std::optional<double> epsilon;
  /// "closed_form" or "numeric".
  std::string method;
  std::optional<double> lambda_star_per_km2;
  std::optional<double> lambda_dagger_per_km2;
  /// "ok", "infeasible" or "unbounded"; anything else is an error message.
  std::string status;
};

/// Evaluates critical densities over the height grid (or the single
/// configured height). Single-slope models use the closed forms unless
/// `force_numeric` is set.
std::vector<CriticalRecord> run_critical(const RunConfig& rc, bool force_numeric = false);

/// Formats a value with 9 significant digits, locale-independent.
std::string format_number(double v);

void write_csv(std::ostream& out, std::span<const SweepRecord> records);
std::vector<SweepRecord> read_csv(std::istream& in);
nlohmann::json to_json(std::span<const SweepRecord> records);

void write_csv(std::ostream& out, std::span<const CriticalRecord> records);
nlohmann::json to_json(std::span<const CriticalRecord> records);

/// Splits one RFC 4180 record (no embedded newlines).
std::vector<std::string> split_csv_line(const std::string& line);
/// Quotes a field when it contains a comma, quote or whitespace.
std::string csv_field(const std::string& text);

}  // namespace ahdcov
