#include <numbers>
#include <string>

#include "doctest.h"
#include "opamech/config.hpp"
#include "opamech/errors.hpp"

using namespace opamech;
using std::numbers::pi;

namespace {

std::string thrown_message(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("empty config yields the reference defaults") {
    for (const std::string& text : {std::string{}, std::string{"   \n"},
                                    std::string{"{}"}}) {
        const RunConfig cfg = parse_config(text);
        CHECK(cfg.params.mass == 5.0e-12);
        CHECK(cfg.params.omega_m == 2.0 * pi * 1.0e7);
        CHECK(cfg.params.gamma_m == 2.0 * pi * 100.0);
        CHECK(cfg.params.cavity_length == 5.0e-3);
        CHECK(cfg.params.finesse == 1.0e5);
        CHECK(cfg.params.wavelength_1 == 1.064e-6);
        CHECK(cfg.params.power_1 == 0.1);
        CHECK(cfg.params.power_2 == 0.08);
        CHECK(cfg.params.detuning_mode == DetuningMode::Effective);
        CHECK(cfg.params.detuning_1 == cfg.params.omega_m);
        CHECK(cfg.params.detuning_2 == -cfg.params.omega_m);
        CHECK(cfg.params.opa_phase == pi / 2.0);
        CHECK(cfg.params.temperature == 0.01);
        const double kappa =
            cavity_decay_rate(cfg.params.finesse, cfg.params.cavity_length);
        CHECK(cfg.params.opa_gain == 5.6 * kappa);
        CHECK(cfg.model == AmplitudeModel::ClosedForm);
        CHECK(cfg.theta_points == 201);
        CHECK(cfg.theta_min == 0.0);
        CHECK(cfg.theta_max == pi);
        CHECK(cfg.gain_points == 141);
        CHECK(cfg.gain_max_in_kappa == 7.0);
        CHECK(cfg.temp_points == 25);
        CHECK(cfg.temp_min == 5.0e-3);
        CHECK(cfg.temp_max == 2.0);
        CHECK(cfg.fixed_point_damping == 0.5);
        CHECK(!cfg.output_path.has_value());
    }
}

TEST_CASE("frequency keys are converted to angular units") {
    const RunConfig cfg = parse_config(R"({
        "omega_m_hz": 5.0e6,
        "gamma_m_hz": 50.0,
        "detuning_2_hz": -3.0e6,
        "opa_gain_hz": 1.0e5
    })");
    CHECK(cfg.params.omega_m == 2.0 * pi * 5.0e6);
    CHECK(cfg.params.gamma_m == 2.0 * pi * 50.0);
    // detuning_1 tracks the new omega_m because no key overrides it...
    CHECK(cfg.params.detuning_1 == 2.0 * pi * 5.0e6);
    // ...while detuning_2 was given explicitly.
    CHECK(cfg.params.detuning_2 == -2.0 * pi * 3.0e6);
    CHECK(cfg.params.opa_gain == 2.0 * pi * 1.0e5);
}

TEST_CASE("gain key exclusivity") {
    CHECK_THROWS_AS(parse_config(
                        R"({"opa_gain_hz": 1.0, "opa_gain_in_kappa": 2.0})"),
                    ValidationError);
    const RunConfig cfg = parse_config(R"({"opa_gain_in_kappa": 3.0})");
    const double kappa =
        cavity_decay_rate(cfg.params.finesse, cfg.params.cavity_length);
    CHECK(cfg.params.opa_gain == 3.0 * kappa);
    // The kappa conversion uses the geometry from the same config.
    const RunConfig small = parse_config(
        R"({"opa_gain_in_kappa": 3.0, "finesse": 2.0e5})");
    CHECK(small.params.opa_gain == doctest::Approx(cfg.params.opa_gain / 2.0)
                                       .epsilon(1e-15));
}

TEST_CASE("unknown keys are rejected by name") {
    const std::string msg = thrown_message(R"({"bogus_key": 1.0})");
    CHECK(msg.find("bogus_key") != std::string::npos);
}

TEST_CASE("field errors are precise") {
    CHECK(thrown_message(R"({"finesse": -1.0})").find("finesse") !=
          std::string::npos);
    CHECK(thrown_message(R"({"finesse": "high"})").find("finesse") !=
          std::string::npos);
    CHECK(thrown_message(R"({"theta_points": 2.5})").find("theta_points") !=
          std::string::npos);
    CHECK(thrown_message(R"({"theta_points": 0})").find("theta_points") !=
          std::string::npos);
    CHECK(thrown_message(R"({"temp_min_k": 0.0})").find("temp_min_k") !=
          std::string::npos);
    CHECK(thrown_message(R"({"fixed_point_damping": 0.0})")
              .find("fixed_point_damping") != std::string::npos);
    CHECK(thrown_message(R"({"fixed_point_damping": 1.5})")
              .find("fixed_point_damping") != std::string::npos);
    CHECK(thrown_message(R"({"detuning_mode": "sideways"})")
              .find("detuning_mode") != std::string::npos);
    CHECK(thrown_message(R"({"amplitude_model": "both"})")
              .find("amplitude_model") != std::string::npos);
    CHECK(thrown_message(R"({"output_path": ""})").find("output_path") !=
          std::string::npos);
}

TEST_CASE("malformed JSON is a validation error") {
    CHECK_THROWS_AS(parse_config("{"), ValidationError);
    CHECK_THROWS_AS(parse_config("[1, 2]"), ValidationError);
    CHECK(thrown_message("{,}").find("parse") != std::string::npos);
}

TEST_CASE("mode and model strings") {
    CHECK(parse_config(R"({"detuning_mode": "bare"})").params.detuning_mode ==
          DetuningMode::Bare);
    CHECK(parse_config(R"({"amplitude_model": "exact"})").model ==
          AmplitudeModel::Exact);
    CHECK(parse_config(R"({"amplitude_model": "paper"})").model ==
          AmplitudeModel::ClosedForm);
}

TEST_CASE("grid consistency checks") {
    CHECK_THROWS_AS(
        parse_config(R"({"theta_min_rad": 2.0, "theta_max_rad": 1.0})"),
        ValidationError);
    CHECK_THROWS_AS(
        parse_config(R"({"gain_min_in_kappa": 5.0, "gain_max_in_kappa": 1.0})"),
        ValidationError);
    CHECK_THROWS_AS(
        parse_config(R"({"temp_min_k": 1.0, "temp_max_k": 0.5})"),
        ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"optimal_gain_lo_in_kappa": 3.0,
                                     "optimal_gain_hi_in_kappa": 1.0})"),
                    ValidationError);
    // Single-point grids do not need max > min.
    CHECK_NOTHROW(parse_config(
        R"({"theta_points": 1, "theta_min_rad": 2.0, "theta_max_rad": 1.0})"));
}

TEST_CASE("grid construction from a config") {
    const RunConfig cfg = parse_config(R"({
        "theta_min_rad": 0.0, "theta_max_rad": 3.0, "theta_points": 4,
        "gain_min_in_kappa": 1.0, "gain_max_in_kappa": 2.0, "gain_points": 3,
        "temp_min_k": 0.01, "temp_max_k": 1.0, "temp_points": 3
    })");
    const auto thetas = cfg.theta_grid();
    REQUIRE(thetas.size() == 4);
    CHECK(thetas[0] == 0.0);
    CHECK(thetas[3] == 3.0);
    const auto gains = cfg.gain_grid(2.0);
    REQUIRE(gains.size() == 3);
    CHECK(gains[0] == 2.0);
    CHECK(gains[2] == 4.0);
    const auto temps = cfg.temperature_grid();
    REQUIRE(temps.size() == 3);
    CHECK(temps[0] == 0.01);
    CHECK(temps[1] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(temps[2] == 1.0);
}

TEST_CASE("output path and pipeline options") {
    const RunConfig cfg = parse_config(R"({
        "output_path": "runs/out.csv",
        "amplitude_model": "exact",
        "fixed_point_damping": 0.25
    })");
    REQUIRE(cfg.output_path.has_value());
    CHECK(*cfg.output_path == "runs/out.csv");
    const PipelineOptions options = cfg.pipeline_options();
    CHECK(options.model == AmplitudeModel::Exact);
    CHECK(options.fixed_point_damping == 0.25);
}
