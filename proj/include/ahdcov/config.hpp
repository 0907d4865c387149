#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ahdcov/network.hpp"

// Run configuration for the command-line front end.
//
// Documents are flat "key = value" files with dotted section names, e.g.
//
//   model.alphas       = 1.5, 4
//   model.breakpoints_m = 10
//   net.tau_db         = 0
//   net.delta_h_m      = 8.5
//   net.lambda_per_km2 = 1000
//
// or the equivalent JSON, nested ({"model": {"alphas": [1.5, 4]}}) or flat.
// Boundary units are BS/km^2, dB, dBm and meters; NetworkConfig holds SI.

namespace ahdcov {

/// Schema or value error, tagged with the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

using KeyValues = std::map<std::string, std::string>;

struct SweepSpec {
  enum class Variable { Lambda, Ahd };

  Variable variable = Variable::Lambda;
  /// BS/km^2 for lambda sweeps, meters for ahd sweeps. Strictly increasing.
  std::vector<double> grid;
  bool analytic = true;
  bool mc = false;
  bool bounds = false;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
};

struct RunConfig {
  NetworkConfig network;
  SweepSpec sweep;
  /// qos.epsilon, when given.
  std::optional<double> epsilon;
  /// Informational remarks (e.g. that transmit power does not affect SIR).
  std::vector<std::string> notes;
};

/// Parses "key = value" lines; '#' starts a comment.
KeyValues read_key_values(std::istream& in);

/// Flattens a JSON document into dotted keys. Arrays become comma lists.
KeyValues read_json_config(const std::string& text);

/// Reads a file in either format (JSON when the first non-blank char is '{').
KeyValues load_config_file(const std::filesystem::path& path);

/// Validates keys and values and applies unit conversions. Later entries of
/// `overrides` win over `base`.
RunConfig parse_config(const KeyValues& base, const KeyValues& overrides = {});

/// Splits "a, b, c" or "[a, b, c]" into numbers.
std::vector<double> parse_number_list(const std::string& key, const std::string& text);

/// The set of keys parse_config understands.
const std::vector<std::string>& known_config_keys();

}  // namespace ahdcov
