#include "ahdcov/sweep.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "ahdcov/analytic.hpp"
#include "ahdcov/density.hpp"
#include "ahdcov/montecarlo.hpp"

namespace ahdcov {
namespace {

constexpr const char* kSweepHeader =
    "lambda_per_km2,delta_h_m,model_id,cp_analytic,st_analytic,cp_mc,cp_mc_ci95,st_mc,cp_lower,cp_upper,error";
constexpr const char* kCriticalHeader =
    "delta_h_m,model_id,epsilon,method,lambda_star_per_km2,lambda_dagger_per_km2,status";

std::string opt_field(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::optional<double> parse_opt(const std::string& field) {
  if (field.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::runtime_error("csv: not a number: '" + field + "'");
  }
  return v;
}

nlohmann::json opt_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

NetworkConfig point_config(const RunConfig& rc, double x) {
  NetworkConfig cfg = rc.network;
  if (rc.sweep.variable == SweepSpec::Variable::Lambda) {
    cfg.lambda = per_km2_to_per_m2(x);
  } else {
    cfg.ahd = x;
  }
  return cfg;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  if (ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, ptr);
}

std::vector<SweepRecord> run_sweep(const RunConfig& rc) {
  const auto& grid = rc.sweep.grid;
  const auto n = static_cast<std::int64_t>(grid.size());
  std::vector<SweepRecord> records(grid.size());
  const double rate_km2 = 1e6 * std::log2(1.0 + rc.network.tau);

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    const NetworkConfig cfg = point_config(rc, grid[i]);
    SweepRecord& rec = records[i];
    rec.lambda_per_km2 = per_m2_to_per_km2(cfg.lambda);
    rec.delta_h_m = cfg.ahd;
    rec.model_id = cfg.model.id();
    try {
      if (rc.sweep.analytic) {
        rec.cp_analytic = cp(cfg);
        rec.st_analytic = cfg.lambda * *rec.cp_analytic * rate_km2;
      }
      if (rc.sweep.bounds) {
        const CpBounds b = cp_bounds_mspm(cfg);
        rec.cp_lower = b.lower;
        rec.cp_upper = b.upper;
      }
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
  }

  if (rc.sweep.mc) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      SweepRecord& rec = records[i];
      if (!rec.error.empty()) continue;
      const NetworkConfig cfg = point_config(rc, grid[i]);
      try {
        const CpEstimate est = estimate_cp(cfg, rc.sweep.trials, rc.sweep.seed);
        rec.cp_mc = est.mean;
        rec.cp_mc_ci95 = est.ci95_halfwidth;
        rec.st_mc = cfg.lambda * est.mean * rate_km2;
      } catch (const std::exception& e) {
        rec.error = e.what();
      }
    }
  }
  return records;
}

std::vector<CriticalRecord> run_critical(const RunConfig& rc, bool force_numeric) {
  std::vector<double> heights =
      rc.sweep.variable == SweepSpec::Variable::Ahd ? rc.sweep.grid : std::vector<double>{rc.network.ahd};
  const auto& model = rc.network.model;
  const double tau = rc.network.tau;
  const bool closed = model.segments() == 1 && !force_numeric;

  std::vector<CriticalRecord> out(heights.size());
  const auto n = static_cast<std::int64_t>(heights.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    CriticalRecord& rec = out[i];
    rec.delta_h_m = heights[i];
    rec.model_id = model.id();
    rec.epsilon = rc.epsilon;
    rec.method = closed ? "closed_form" : "numeric";
    rec.status = "ok";
    try {
      if (closed) {
        const double a0 = model.exponent(0);
        if (!(heights[i] > 0.0)) {
          rec.status = "unbounded";
          continue;
        }
        rec.lambda_dagger_per_km2 = per_m2_to_per_km2(lambda_dagger(a0, tau, heights[i]));
        if (rc.epsilon) {
          const auto star = lambda_star(a0, tau, heights[i], QosConstraint(*rc.epsilon));
          if (star) {
            rec.lambda_star_per_km2 = per_m2_to_per_km2(*star);
          } else {
            rec.status = "infeasible";
          }
        }
      } else {
        const auto dagger = critical_density_numeric(model, heights[i], tau, std::nullopt);
        rec.lambda_dagger_per_km2 = per_m2_to_per_km2(*dagger);
        if (rc.epsilon) {
          const auto star = critical_density_numeric(model, heights[i], tau, QosConstraint(*rc.epsilon));
          if (star) {
            rec.lambda_star_per_km2 = per_m2_to_per_km2(*star);
          } else {
            rec.status = "infeasible";
          }
        }
      }
    } catch (const std::domain_error& e) {
      rec.status = std::string(e.what()).find("unbounded") != std::string::npos ? "unbounded" : e.what();
    } catch (const std::exception& e) {
      rec.status = e.what();
    }
  }
  return out;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n ") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted) throw std::runtime_error("csv: unterminated quoted field");
  fields.push_back(std::move(cur));
  return fields;
}

void write_csv(std::ostream& out, std::span<const SweepRecord> records) {
  out << kSweepHeader << "\r\n";
  for (const auto& r : records) {
    out << format_number(r.lambda_per_km2) << ',' << format_number(r.delta_h_m) << ',' << csv_field(r.model_id) << ','
        << opt_field(r.cp_analytic) << ',' << opt_field(r.st_analytic) << ',' << opt_field(r.cp_mc) << ','
        << opt_field(r.cp_mc_ci95) << ',' << opt_field(r.st_mc) << ',' << opt_field(r.cp_lower) << ','
        << opt_field(r.cp_upper) << ',' << csv_field(r.error) << "\r\n";
  }
}

std::vector<SweepRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSweepHeader) throw std::runtime_error("csv: unexpected header");
  std::vector<SweepRecord> out;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 11) throw std::runtime_error("csv: expected 11 fields, got " + std::to_string(f.size()));
    SweepRecord r;
    r.lambda_per_km2 = parse_opt(f[0]).value_or(0.0);
    r.delta_h_m = parse_opt(f[1]).value_or(0.0);
    r.model_id = f[2];
    r.cp_analytic = parse_opt(f[3]);
    r.st_analytic = parse_opt(f[4]);
    r.cp_mc = parse_opt(f[5]);
    r.cp_mc_ci95 = parse_opt(f[6]);
    r.st_mc = parse_opt(f[7]);
    r.cp_lower = parse_opt(f[8]);
    r.cp_upper = parse_opt(f[9]);
    r.error = f[10];
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::json to_json(std::span<const SweepRecord> records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    arr.push_back({{"lambda_per_km2", r.lambda_per_km2},
                   {"delta_h_m", r.delta_h_m},
                   {"model_id", r.model_id},
                   {"cp_analytic", opt_json(r.cp_analytic)},
                   {"st_analytic", opt_json(r.st_analytic)},
                   {"cp_mc", opt_json(r.cp_mc)},
                   {"cp_mc_ci95", opt_json(r.cp_mc_ci95)},
                   {"st_mc", opt_json(r.st_mc)},
                   {"cp_lower", opt_json(r.cp_lower)},
                   {"cp_upper", opt_json(r.cp_upper)},
                   {"error", r.error.empty() ? nlohmann::json() : nlohmann::json(r.error)}});
  }
  return arr;
}

void write_csv(std::ostream& out, std::span<const CriticalRecord> records) {
  out << kCriticalHeader << "\r\n";
  for (const auto& r : records) {
    out << format_number(r.delta_h_m) << ',' << csv_field(r.model_id) << ',' << opt_field(r.epsilon) << ','
        << r.method << ',' << opt_field(r.lambda_star_per_km2) << ',' << opt_field(r.lambda_dagger_per_km2) << ','
        << csv_field(r.status) << "\r\n";
  }
}

nlohmann::json to_json(std::span<const CriticalRecord> records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    arr.push_back({{"delta_h_m", r.delta_h_m},
                   {"model_id", r.model_id},
                   {"epsilon", opt_json(r.epsilon)},
                   {"method", r.method},
                   {"lambda_star_per_km2", opt_json(r.lambda_star_per_km2)},
                   {"lambda_dagger_per_km2", opt_json(r.lambda_dagger_per_km2)},
                   {"status", r.status}});
  }
  return arr;
}

}  // namespace ahdcov
