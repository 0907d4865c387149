#include <clocale>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ahdcov/analytic.hpp"
#include "ahdcov/config.hpp"
#include "ahdcov/sweep.hpp"
#include "ahdcov/validate.hpp"
#include "doctest.h"

using namespace ahdcov;

namespace {

RunConfig from_text(const std::string& text, const KeyValues& overrides = {}) {
  std::istringstream in(text);
  return parse_config(read_key_values(in), overrides);
}

}  // namespace

TEST_CASE("key/value documents") {
  const auto rc = from_text(
      "# figure 2\n"
      "model.alphas = 1.5, 4\n"
      "model.breakpoints_m = [10]\n"
      "net.tau_db = 0\n"
      "net.p_dbm = 23   # stored only\n"
      "net.delta_h_m = 8.5\n"
      "net.lambda_per_km2 = 1000\n");
  CHECK(rc.network.tau == 1.0);
  CHECK(rc.network.lambda == doctest::Approx(1e-3).epsilon(1e-15));
  CHECK(rc.network.ahd == 8.5);
  CHECK(rc.network.power == doctest::Approx(0.19952623149688797).epsilon(1e-14));
  CHECK(rc.network.model == PathlossModel::dual_slope(1.5, 4.0, 10.0));
  REQUIRE(rc.notes.size() == 1);
  CHECK(rc.notes[0].find("no effect on SIR") != std::string::npos);
  CHECK(rc.sweep.grid == std::vector<double>{1000.0});
  CHECK(from_text("net.tau_db = 10\n").network.tau == doctest::Approx(10.0).epsilon(1e-15));
}

TEST_CASE("JSON documents and overrides") {
  const auto kv = read_json_config(
      R"({"model": {"alphas": [1.5, 3, 4.5], "breakpoints_m": [10, 50]}, "net.delta_h_m": 4,
          "sweep": {"lo": 10, "hi": 1e5, "points": 5, "outputs": ["analytic", "bounds"]}})");
  const auto rc = parse_config(kv, {{"net.delta_h_m", "2"}});
  CHECK(rc.network.model.segments() == 3);
  CHECK(rc.network.ahd == 2.0);
  REQUIRE(rc.sweep.grid.size() == 5);
  CHECK(rc.sweep.grid.front() == 10.0);
  CHECK(rc.sweep.grid[1] == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(rc.sweep.grid.back() == 1e5);
  CHECK(rc.sweep.bounds);
  CHECK_FALSE(rc.sweep.mc);
}

TEST_CASE("schema errors name the key") {
  auto key_of = [](const std::string& text) {
    try {
      from_text(text);
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("<none>");
  };
  CHECK(key_of("model.alphas = 2\n") == "model");
  CHECK(key_of("net.lambda_per_km2 = abc\n") == "net.lambda_per_km2");
  CHECK(key_of("net.lamda_per_km2 = 5\n") == "net.lamda_per_km2");
  CHECK(key_of("sweep.grid = 3, 2\n") == "sweep.grid");
  CHECK(key_of("sweep.outputs = mc\nmc.trials = 10\n") == "mc.trials");
  CHECK(key_of("sweep.outputs = bounds\n") == "sweep.outputs");
  CHECK(key_of("qos.epsilon = 1\n") == "qos.epsilon");
  CHECK(key_of("net.fading = nakagami\n") == "net.fading");
  CHECK(key_of("sweep.lo = 1\n") == "sweep");
  CHECK(key_of("no equals sign\n") == "line 1");
  CHECK_THROWS_WITH(from_text("model.alphas = 1.5, 2\nmodel.breakpoints_m = 10\n"),
                    doctest::Contains("alpha_{N-1} > 2"));
  CHECK_THROWS_AS(read_json_config("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(read_json_config("{\"a\": "), ConfigError);
}

TEST_CASE("sweep rows follow the grid") {
  const auto rc = from_text("sweep.grid = 100, 1000, 10000, 100000\n");
  const auto rows = run_sweep(rc);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    REQUIRE(r.cp_analytic);
    CHECK(*r.cp_analytic == doctest::Approx(0.5601).epsilon(1e-3));
    CHECK(*r.st_analytic == doctest::Approx(*r.cp_analytic * r.lambda_per_km2).epsilon(1e-12));
    CHECK_FALSE(r.cp_mc);
    CHECK_FALSE(r.cp_lower);
    CHECK(r.error.empty());
  }
  CHECK(rows[2].lambda_per_km2 == 10000.0);

  const auto tall = run_sweep(from_text("net.delta_h_m = 4.5\nsweep.lo = 10\nsweep.hi = 1e7\nsweep.points = 13\n"));
  for (std::size_t i = 1; i < tall.size(); ++i) CHECK(*tall[i].cp_analytic < *tall[i - 1].cp_analytic);
  CHECK(*tall.back().cp_analytic < 1e-12);
}

TEST_CASE("height sweep with simulation and bounds") {
  const auto rc = from_text(
      "model.alphas = 1.5, 3, 4.5\nmodel.breakpoints_m = 10, 50\nsweep.variable = ahd\nsweep.grid = 0, 4\n"
      "sweep.outputs = analytic, mc, bounds\nmc.trials = 2000\nmc.seed = 5\n");
  const auto rows = run_sweep(rc);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].delta_h_m == 4.0);
  CHECK(rows[1].lambda_per_km2 == doctest::Approx(1000.0));
  for (const auto& r : rows) {
    REQUIRE(r.cp_mc);
    REQUIRE(r.cp_lower);
    CHECK(*r.cp_lower <= *r.cp_analytic);
    CHECK(*r.cp_analytic <= *r.cp_upper);
    CHECK(std::abs(*r.cp_mc - *r.cp_analytic) <= std::max(2 * *r.cp_mc_ci95, 0.01) + 0.02);
  }
}

TEST_CASE("CSV round trip and formatting") {
  const auto rc = from_text(
      "model.alphas = 1.5, 3, 4.5\nmodel.breakpoints_m = 10, 50\nnet.delta_h_m = 4\nsweep.lo = 10\n"
      "sweep.hi = 1e5\nsweep.points = 9\nsweep.outputs = analytic, bounds, mc\nmc.trials = 1000\n");
  auto rows = run_sweep(rc);
  rows.back().error = "quoted, \"with\" commas";
  std::ostringstream out;
  write_csv(out, std::span<const SweepRecord>(rows));
  std::istringstream in(out.str());
  const auto back = read_csv(in);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].model_id == rows[i].model_id);
    CHECK(back[i].error == rows[i].error);
    CHECK(back[i].lambda_per_km2 == doctest::Approx(rows[i].lambda_per_km2).epsilon(1e-8));
    CHECK(*back[i].cp_analytic == doctest::Approx(*rows[i].cp_analytic).epsilon(1e-8));
    CHECK(*back[i].cp_upper == doctest::Approx(*rows[i].cp_upper).epsilon(1e-8));
    CHECK(*back[i].cp_mc == doctest::Approx(*rows[i].cp_mc).epsilon(1e-8));
    CHECK_FALSE(back[i].st_mc.has_value() != rows[i].st_mc.has_value());
  }
  // Writing the parsed rows again is a fixed point.
  std::ostringstream again;
  write_csv(again, std::span<const SweepRecord>(back));
  CHECK(again.str() == out.str());

  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1e-10) == "1e-10");
  CHECK(format_number(123456789012.0) == "1.23456789e+11");
  CHECK(split_csv_line("a,\"b,c\",,\"d\"\"e\"") == std::vector<std::string>{"a", "b,c", "", "d\"e"});
}

TEST_CASE("CSV does not depend on the locale") {
  const auto rc = from_text("sweep.grid = 100, 1000\n");
  const auto rows = run_sweep(rc);
  std::ostringstream c_locale;
  write_csv(c_locale, std::span<const SweepRecord>(rows));
  if (std::setlocale(LC_ALL, "de_DE.UTF-8") != nullptr) {
    std::ostringstream german;
    write_csv(german, std::span<const SweepRecord>(rows));
    CHECK(german.str() == c_locale.str());
    std::setlocale(LC_ALL, "C");
  }
  CHECK(c_locale.str().find("0.560099154") != std::string::npos);
}

TEST_CASE("empty grid gives a header-only table") {
  const auto rows = run_sweep(from_text("sweep.lo = 1\nsweep.hi = 10\nsweep.points = 0\n"));
  CHECK(rows.empty());
  std::ostringstream out;
  write_csv(out, std::span<const SweepRecord>(rows));
  CHECK(out.str() ==
        "lambda_per_km2,delta_h_m,model_id,cp_analytic,st_analytic,cp_mc,cp_mc_ci95,st_mc,cp_lower,cp_upper,error\r\n");
  CHECK(to_json(std::span<const SweepRecord>(rows)).dump() == "[]");
}

TEST_CASE("JSON output uses null for absent values") {
  const auto rows = run_sweep(from_text("sweep.grid = 100\n"));
  const auto j = to_json(std::span<const SweepRecord>(rows));
  CHECK(j[0]["cp_mc"].is_null());
  CHECK(j[0]["error"].is_null());
  CHECK(j[0]["cp_analytic"].get<double>() == doctest::Approx(0.5601).epsilon(1e-3));
}

TEST_CASE("critical mode") {
  const auto rows = run_critical(from_text("model.alphas = 5\nsweep.variable = ahd\nsweep.grid = 0, 2\nqos.epsilon = 0.5\n"));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].status == "unbounded");
  CHECK_FALSE(rows[0].lambda_star_per_km2);
  CHECK(rows[1].status == "ok");
  CHECK(rows[1].method == "closed_form");
  CHECK(*rows[1].lambda_dagger_per_km2 == doctest::Approx(156801.932184445594).epsilon(1e-12));
  CHECK(*rows[1].lambda_dagger_per_km2 / *rows[1].lambda_star_per_km2 == doctest::Approx(3.537413136).epsilon(1e-9));

  const auto infeasible = run_critical(from_text("model.alphas = 5\nnet.delta_h_m = 2\nqos.epsilon = 0.9\n"));
  REQUIRE(infeasible.size() == 1);
  CHECK(infeasible[0].status == "infeasible");
  CHECK(infeasible[0].lambda_dagger_per_km2);

  const auto numeric = run_critical(from_text("model.alphas = 5\nnet.delta_h_m = 2\nqos.epsilon = 0.5\n"), true);
  CHECK(numeric[0].method == "numeric");
  CHECK(*numeric[0].lambda_star_per_km2 == doctest::Approx(*rows[1].lambda_star_per_km2).epsilon(0.01));

  const auto dual = run_critical(from_text("model.alphas = 1.5, 4\nmodel.breakpoints_m = 10\nnet.delta_h_m = 0\n"));
  CHECK(dual[0].status == "unbounded");
}

TEST_CASE("validation report flags a corrupted formula") {
  ValidationSpec spec;
  spec.models = {PathlossModel::single_slope(4.0)};
  spec.trials = 4000;
  spec.truncation_check = false;
  const auto good = run_validate(spec);
  CHECK(good.pass);
  REQUIRE(good.points.size() == 16);
  for (const auto& p : good.points) {
    CHECK(p.pass.value());
    CHECK(p.closest_variant == "relative_lifted");
  }

  // Interference constant off by a factor of ten.
  auto broken = [](const NetworkConfig& cfg) {
    const double c1 = interference_constant(cfg.tau, cfg.model.exponent(0)) / 10.0;
    return std::exp(-std::numbers::pi * cfg.lambda * c1 * cfg.ahd * cfg.ahd) / (1.0 + c1);
  };
  const auto bad = run_validate(spec, broken);
  CHECK_FALSE(bad.pass);
  for (const auto& p : bad.points) CHECK_FALSE(p.pass.value());
}

TEST_CASE("validation report details") {
  ValidationSpec spec;
  spec.models = {PathlossModel::dual_slope(1.5, 4.0, 10.0)};
  spec.ahds_m = {4.5};
  spec.lambdas_per_km2 = {1e3, 1e4};
  spec.trials = 2000;
  spec.rice = FadingModel::rice(1.0, 12.0);
  const auto report = run_validate(spec);
  REQUIRE(report.points.size() == 4);
  CHECK(report.points[0].truncation_bias.has_value());
  CHECK(std::abs(*report.points[0].truncation_bias) < 0.01);
  CHECK(report.points[0].cp_absolute.has_value());
  const auto& rice = report.points[2];
  CHECK(rice.fading == "rice(1/12)");
  CHECK_FALSE(rice.pass.has_value());
  CHECK(rice.note == "no analytic reference; scaling-shape check only");
  REQUIRE(report.rice_shape.size() == 1);
  const auto j = to_json(report);
  CHECK(j["points_total"] == 4);
  CHECK(j["points"][2]["pass"].is_null());
  std::ostringstream csv;
  write_csv(csv, report);
  CHECK(csv.str().find("no analytic reference; scaling-shape check only") != std::string::npos);
}
