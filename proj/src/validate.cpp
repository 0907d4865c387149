#include "ahdcov/validate.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ahdcov/analytic.hpp"
#include "ahdcov/montecarlo.hpp"
#include "ahdcov/sweep.hpp"

namespace ahdcov {
namespace {

constexpr double kMinTolerance = 0.01;

std::string fading_name(const FadingModel& f) {
  if (f.kind == FadingModel::Kind::Rayleigh) return "rayleigh";
  return "rice(" + format_number(f.nu_nc) + "/" + format_number(f.nu_dof) + ")";
}

void fill_analytic(ValidationPoint& p, const NetworkConfig& cfg, const AnalyticFn& analytic) {
  p.cp_analytic = analytic ? analytic(cfg) : cp(cfg);
  AnalyticOptions absolute;
  absolute.scaling = AnalyticOptions::Scaling::Absolute;
  AnalyticOptions ground;
  ground.breakpoints = AnalyticOptions::Breakpoints::Ground;
  p.cp_absolute = cp_mspm(cfg, absolute);
  p.cp_ground = cp_mspm(cfg, ground);
}

constexpr double kVariantTie = 1e-9;

void grade(ValidationPoint& p) {
  const double mc = *p.cp_mc;
  const double tol = std::max(2.0 * *p.cp_mc_ci95, kMinTolerance);
  p.pass = std::abs(mc - *p.cp_analytic) <= tol;
  const std::pair<const char*, double> variants[] = {
      {"relative_lifted", std::abs(mc - *p.cp_analytic)},
      {"absolute", std::abs(mc - *p.cp_absolute)},
      {"ground", std::abs(mc - *p.cp_ground)},
  };
  // Variants that agree to quadrature accuracy count as tied, and ties go to
  // the earlier entry, so single-segment points report the default.
  p.closest_variant = std::min_element(std::begin(variants), std::end(variants), [](const auto& a, const auto& b) {
                        return a.second < b.second - kVariantTie;
                      })->first;
}

std::string opt_field(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

nlohmann::json opt_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

}  // namespace

std::vector<PathlossModel> default_validation_models() {
  return {PathlossModel::single_slope(4.0), PathlossModel::dual_slope(1.5, 4.0, 10.0),
          PathlossModel({1.5, 3.0, 4.5}, {10.0, 50.0})};
}

ValidationReport run_validate(const ValidationSpec& spec, const AnalyticFn& analytic) {
  ValidationReport report;
  std::vector<FadingModel> fadings{FadingModel::rayleigh()};
  if (spec.rice) fadings.push_back(*spec.rice);
  const McOptions nominal{1.0, spec.threads};
  const McOptions doubled{2.0, spec.threads};
  const std::uint64_t bias_trials = std::max<std::uint64_t>(1000, spec.trials / 10);

  for (const auto& model : spec.models) {
    for (double ahd : spec.ahds_m) {
      // ST at each density for the Rice shape comparison, per fading law.
      std::vector<std::vector<double>> st_by_fading(fadings.size());
      for (std::size_t f = 0; f < fadings.size(); ++f) {
        for (double lambda_km2 : spec.lambdas_per_km2) {
          NetworkConfig cfg;
          cfg.model = model;
          cfg.ahd = ahd;
          cfg.tau = spec.tau;
          cfg.lambda = per_km2_to_per_m2(lambda_km2);
          cfg.fading = fadings[f];

          ValidationPoint p;
          p.model_id = model.id();
          p.fading = fading_name(cfg.fading);
          p.delta_h_m = ahd;
          p.lambda_per_km2 = lambda_km2;
          try {
            const CpEstimate est = estimate_cp(cfg, spec.trials, spec.seed, nominal);
            p.cp_mc = est.mean;
            p.cp_mc_ci95 = est.ci95_halfwidth;
            st_by_fading[f].push_back(cfg.lambda * est.mean);
            if (cfg.fading.kind == FadingModel::Kind::Rayleigh) {
              fill_analytic(p, cfg, analytic);
              grade(p);
              if (spec.truncation_check) {
                p.truncation_bias = estimate_cp(cfg, bias_trials, spec.seed, doubled).mean -
                                    estimate_cp(cfg, bias_trials, spec.seed, nominal).mean;
              }
            } else {
              p.note = "no analytic reference; scaling-shape check only";
            }
          } catch (const std::exception& e) {
            p.error = e.what();
            p.pass = false;
            st_by_fading[f].push_back(std::nan(""));
          }
          if (p.pass && !*p.pass) report.pass = false;
          report.points.push_back(std::move(p));
        }
      }

      if (fadings.size() > 1 && !spec.lambdas_per_km2.empty()) {
        auto peak = [&](const std::vector<double>& st) {
          const auto it = std::max_element(st.begin(), st.end(), [](double a, double b) {
            return std::isnan(a) || (!std::isnan(b) && a < b);
          });
          return spec.lambdas_per_km2[static_cast<std::size_t>(it - st.begin())];
        };
        const double rayleigh_peak = peak(st_by_fading[0]);
        const double rice_peak = peak(st_by_fading[1]);
        report.rice_shape.push_back({{"model_id", model.id()},
                                     {"delta_h_m", ahd},
                                     {"rayleigh_peak_lambda_per_km2", rayleigh_peak},
                                     {"rice_peak_lambda_per_km2", rice_peak},
                                     {"peaks_within_factor_3", std::abs(std::log(rice_peak / rayleigh_peak)) <=
                                                                   std::log(3.0) + 1e-12}});
      }
    }
  }
  return report;
}

nlohmann::json to_json(const ValidationReport& report) {
  nlohmann::json points = nlohmann::json::array();
  std::size_t failed = 0;
  for (const auto& p : report.points) {
    if (p.pass && !*p.pass) ++failed;
    points.push_back({{"model_id", p.model_id},
                      {"fading", p.fading},
                      {"delta_h_m", p.delta_h_m},
                      {"lambda_per_km2", p.lambda_per_km2},
                      {"cp_analytic", opt_json(p.cp_analytic)},
                      {"cp_absolute", opt_json(p.cp_absolute)},
                      {"cp_ground", opt_json(p.cp_ground)},
                      {"closest_variant", p.closest_variant.empty() ? nlohmann::json() : nlohmann::json(p.closest_variant)},
                      {"cp_mc", opt_json(p.cp_mc)},
                      {"cp_mc_ci95", opt_json(p.cp_mc_ci95)},
                      {"truncation_bias", opt_json(p.truncation_bias)},
                      {"pass", p.pass ? nlohmann::json(*p.pass) : nlohmann::json()},
                      {"note", p.note.empty() ? nlohmann::json() : nlohmann::json(p.note)},
                      {"error", p.error.empty() ? nlohmann::json() : nlohmann::json(p.error)}});
  }
  return {{"pass", report.pass},
          {"points_total", report.points.size()},
          {"points_failed", failed},
          {"points", std::move(points)},
          {"rice_shape", report.rice_shape}};
}

void write_csv(std::ostream& out, const ValidationReport& report) {
  out << "model_id,fading,delta_h_m,lambda_per_km2,cp_analytic,cp_absolute,cp_ground,closest_variant,cp_mc,"
         "cp_mc_ci95,truncation_bias,pass,note,error\r\n";
  for (const auto& p : report.points) {
    out << csv_field(p.model_id) << ',' << csv_field(p.fading) << ',' << format_number(p.delta_h_m) << ','
        << format_number(p.lambda_per_km2) << ',' << opt_field(p.cp_analytic) << ',' << opt_field(p.cp_absolute)
        << ',' << opt_field(p.cp_ground) << ',' << p.closest_variant << ',' << opt_field(p.cp_mc) << ','
        << opt_field(p.cp_mc_ci95) << ',' << opt_field(p.truncation_bias) << ','
        << (p.pass ? (*p.pass ? "true" : "false") : "") << ',' << csv_field(p.note) << ',' << csv_field(p.error)
        << "\r\n";
  }
}

}  // namespace ahdcov
