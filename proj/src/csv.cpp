#include "opamech/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "opamech/errors.hpp"

namespace opamech {

std::string format_double(double value) {
    if (!std::isfinite(value)) return {};
    char buffer[64];
    const auto [ptr, ec] =
        std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc()) {
        throw Error("failed to format a floating-point value");
    }
    return std::string(buffer, ptr);
}

namespace {

std::string format_optional(const std::optional<double>& value) {
    return value ? format_double(*value) : std::string{};
}

} // namespace

std::string render_sweep_csv(const std::vector<SweepRecord>& records,
                             double value_divisor) {
    if (!(value_divisor != 0.0) || !std::isfinite(value_divisor)) {
        throw ValidationError("value_divisor must be finite and nonzero");
    }
    std::string out =
        "sweep_value,stable,E_N,nu_minus_tilde,ratio_mode1,ratio_mode2,"
        "spectral_abscissa\n";
    for (const SweepRecord& rec : records) {
        out += format_double(rec.sweep_value / value_divisor);
        out += rec.stable ? ",true," : ",false,";
        out += format_optional(rec.E_N);
        out += ',';
        out += format_optional(rec.nu_minus_tilde);
        out += ',';
        out += format_optional(rec.ratio_mode1);
        out += ',';
        out += format_optional(rec.ratio_mode2);
        out += ',';
        out += format_double(rec.spectral_abscissa);
        out += '\n';
    }
    return out;
}

std::string render_optimal_gain_csv(const std::vector<OptimalGainResult>& results,
                                    double kappa) {
    if (!(kappa > 0.0)) {
        throw ValidationError("kappa must be positive");
    }
    std::string out =
        "temperature_k,gain_opt_in_kappa,E_N_opt,baseline_E_N,"
        "enhancement_percent,bracket_lo_in_kappa,bracket_hi_in_kappa,"
        "boundary_maximum\n";
    for (const OptimalGainResult& r : results) {
        out += format_double(r.temperature);
        out += ',';
        out += format_double(r.gain_opt_in_kappa);
        out += ',';
        out += format_double(r.E_N_opt);
        out += ',';
        out += format_double(r.baseline_E_N);
        out += ',';
        out += format_optional(r.enhancement_percent);
        out += ',';
        out += format_double(r.bracket_lo / kappa);
        out += ',';
        out += format_double(r.bracket_hi / kappa);
        out += r.boundary_maximum ? ",true\n" : ",false\n";
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
    const std::filesystem::path dir = path.has_parent_path()
                                          ? path.parent_path()
                                          : std::filesystem::path(".");
    std::filesystem::path tmp = dir / (path.filename().string() + ".tmp");
    {
        std::ofstream stream(tmp, std::ios::binary | std::ios::trunc);
        if (!stream) {
            throw Error("cannot open temporary file " + tmp.string());
        }
        stream.write(content.data(),
                     static_cast<std::streamsize>(content.size()));
        stream.flush();
        if (!stream) {
            throw Error("failed to write " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error("failed to move " + tmp.string() + " to " + path.string() +
                    ": " + ec.message());
    }
}

} // namespace opamech
