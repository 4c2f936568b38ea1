#include "opamech/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "opamech/entanglement.hpp"
#include "opamech/errors.hpp"
#include "opamech/linear_model.hpp"
#include "opamech/lyapunov.hpp"

namespace opamech {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Index-parallel map with deterministic output placement. Exceptions raised
// by fn (beyond what fn handles itself) are rethrown on the calling thread.
template <typename Fn>
void parallel_for_index(int count, int threads, Fn&& fn) {
    if (count <= 0) return;
    int n_threads =
        threads > 0 ? threads
                    : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::clamp(n_threads, 1, count);
    if (n_threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

void validate_grid(const std::vector<double>& grid, bool require_nonnegative,
                   const char* name) {
    if (grid.empty()) {
        throw ValidationError(std::string(name) + " grid must be nonempty");
    }
    for (size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) {
            throw ValidationError(std::string(name) +
                                  " grid must contain finite values");
        }
        if (require_nonnegative && grid[i] < 0.0) {
            throw ValidationError(std::string(name) +
                                  " grid values must be nonnegative");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw ValidationError(std::string(name) +
                                  " grid must be strictly increasing");
        }
    }
}

} // namespace

SweepRecord evaluate_point(const PhysicalParams& params,
                           const PipelineOptions& options) {
    SweepRecord rec;
    rec.spectral_abscissa = kNan;
    try {
        params.validate();
        const DerivedParams derived = derive_constants(params);
        SteadyStateOptions sopts;
        sopts.model = options.model;
        sopts.damping = options.fixed_point_damping;
        const SteadyState steady = solve_steady_state(params, derived, sopts);
        const LinearModel model = build_linear_model(params, derived, steady);
        rec.spectral_abscissa = spectral_abscissa(model.drift);
        if (rec.spectral_abscissa < -stability_margin(model.drift)) {
            const CovarianceMatrix cov =
                solve_lyapunov(model.drift, model.diffusion);
            const EntanglementReport report =
                analyze_covariance(Matrix6(cov.V));
            rec.stable = true;
            rec.E_N = report.E_N;
            rec.nu_minus_tilde = report.nu_minus_tilde;
            rec.ratio_mode1 = report.ratio_mode1;
            rec.ratio_mode2 = report.ratio_mode2;
            rec.lyapunov_residual = cov.residual_norm;
        }
    } catch (const Error& e) {
        rec.stable = false;
        rec.E_N.reset();
        rec.nu_minus_tilde.reset();
        rec.ratio_mode1.reset();
        rec.ratio_mode2.reset();
        rec.lyapunov_residual.reset();
        rec.error = e.what();
    }
    return rec;
}

std::vector<SweepRecord> sweep_theta(const PhysicalParams& base,
                                     const std::vector<double>& grid,
                                     const PipelineOptions& options) {
    validate_grid(grid, false, "phase");
    std::vector<SweepRecord> records(grid.size());
    parallel_for_index(static_cast<int>(grid.size()), options.threads,
                       [&](int i) {
                           PhysicalParams p = base;
                           p.opa_phase = grid[static_cast<size_t>(i)];
                           SweepRecord rec = evaluate_point(p, options);
                           rec.sweep_value = grid[static_cast<size_t>(i)];
                           records[static_cast<size_t>(i)] = std::move(rec);
                       });
    return records;
}

std::vector<SweepRecord> sweep_gain(const PhysicalParams& base,
                                    const std::vector<double>& grid,
                                    const PipelineOptions& options) {
    validate_grid(grid, true, "gain");
    std::vector<SweepRecord> records(grid.size());
    parallel_for_index(static_cast<int>(grid.size()), options.threads,
                       [&](int i) {
                           PhysicalParams p = base;
                           p.opa_gain = grid[static_cast<size_t>(i)];
                           SweepRecord rec = evaluate_point(p, options);
                           rec.sweep_value = grid[static_cast<size_t>(i)];
                           records[static_cast<size_t>(i)] = std::move(rec);
                       });
    return records;
}

std::vector<SweepRecord> sweep_ratios(const PhysicalParams& base,
                                      const std::vector<double>& grid,
                                      const PipelineOptions& options) {
    return sweep_gain(base, grid, options);
}

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double tol) {
    if (!(hi >= lo)) {
        throw ValidationError("golden_section_max requires hi >= lo");
    }
    if (!(tol > 0.0)) {
        throw ValidationError("golden_section_max requires tol > 0");
    }
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    if (b - a <= tol) return (a + b) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return (a + b) / 2.0;
}

namespace {

OptimalGainResult optimal_gain_impl(const PhysicalParams& base, double gain_lo,
                                    double gain_hi,
                                    const PipelineOptions& options) {
    if (!(gain_lo >= 0.0) || !(gain_hi >= gain_lo)) {
        throw ValidationError(
            "optimal_gain requires 0 <= gain_lo <= gain_hi");
    }
    const DerivedParams derived = derive_constants(base);
    const double kappa = derived.kappa;

    auto objective = [&](double gain) -> double {
        PhysicalParams p = base;
        p.opa_gain = gain;
        const SweepRecord rec = evaluate_point(p, options);
        return rec.stable ? *rec.E_N : kNegInf;
    };

    // Coarse scan at step kappa/20 (endpoints always included).
    const double step = kappa / 20.0;
    std::vector<double> grid;
    const int n_steps =
        static_cast<int>(std::floor((gain_hi - gain_lo) / step + 1.0e-9));
    for (int i = 0; i <= n_steps; ++i) grid.push_back(gain_lo + i * step);
    if (grid.back() < gain_hi - 1.0e-9 * step) grid.push_back(gain_hi);

    std::vector<double> values(grid.size(), kNegInf);
    parallel_for_index(static_cast<int>(grid.size()), options.threads,
                       [&](int i) {
                           values[static_cast<size_t>(i)] =
                               objective(grid[static_cast<size_t>(i)]);
                       });

    size_t best = 0;
    for (size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
    }
    if (values[best] == kNegInf) {
        throw NoStablePointError(
            "no stable operating point inside the gain bounds");
    }

    const size_t last = grid.size() - 1;
    const double bracket_lo = grid[best > 0 ? best - 1 : 0];
    const double bracket_hi = grid[best < last ? best + 1 : last];

    double g_opt = grid[best];
    double e_opt = values[best];
    if (bracket_hi > bracket_lo) {
        const double refined = golden_section_max(objective, bracket_lo,
                                                  bracket_hi, 1.0e-3 * kappa);
        const double refined_value = objective(refined);
        if (refined_value > e_opt) {
            g_opt = refined;
            e_opt = refined_value;
        }
    }

    OptimalGainResult result;
    result.temperature = base.temperature;
    result.gain_opt = g_opt;
    result.gain_opt_in_kappa = g_opt / kappa;
    result.E_N_opt = e_opt;
    result.bracket_lo = bracket_lo;
    result.bracket_hi = bracket_hi;
    result.boundary_maximum = (best == 0 || best == last);

    const double baseline = objective(0.0);
    if (baseline == kNegInf) {
        result.baseline_E_N = kNan;
    } else {
        result.baseline_E_N = baseline;
        if (baseline > 0.0) {
            result.enhancement_percent =
                100.0 * (e_opt - baseline) / baseline;
        }
    }
    return result;
}

} // namespace

OptimalGainResult optimal_gain(const PhysicalParams& base, double gain_lo,
                               double gain_hi,
                               const PipelineOptions& options) {
    return optimal_gain_impl(base, gain_lo, gain_hi, options);
}

TemperatureScan optimal_gain_vs_temperature(const PhysicalParams& base,
                                            const std::vector<double>& temps,
                                            double gain_lo, double gain_hi,
                                            const PipelineOptions& options) {
    if (temps.empty()) {
        throw ValidationError("temperature grid must be nonempty");
    }
    for (size_t i = 0; i < temps.size(); ++i) {
        if (!(temps[i] > 0.0) || !std::isfinite(temps[i])) {
            throw ValidationError("temperatures must be positive and finite");
        }
        if (i > 0 && temps[i] < temps[i - 1]) {
            throw ValidationError("temperatures must be nondecreasing");
        }
    }

    TemperatureScan scan;
    scan.results.reserve(temps.size());
    for (double t : temps) {
        PhysicalParams p = base;
        p.temperature = t;
        try {
            scan.results.push_back(optimal_gain(p, gain_lo, gain_hi, options));
        } catch (const Error& e) {
            OptimalGainResult failed;
            failed.temperature = t;
            failed.gain_opt = kNan;
            failed.gain_opt_in_kappa = kNan;
            failed.E_N_opt = kNan;
            failed.bracket_lo = kNan;
            failed.bracket_hi = kNan;
            failed.baseline_E_N = kNan;
            failed.error = e.what();
            scan.results.push_back(std::move(failed));
        }
    }

    for (size_t i = 0; i + 1 < scan.results.size(); ++i) {
        const double a = scan.results[i].gain_opt;
        const double b = scan.results[i + 1].gain_opt;
        if (std::isfinite(a) && std::isfinite(b) &&
            b > a + 1.0e-9 * std::max(std::abs(a), std::abs(b))) {
            ++scan.gain_monotonicity_violations;
        }
    }
    return scan;
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw ValidationError("linspace requires n >= 1");
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw ValidationError("linspace requires finite bounds");
    }
    std::vector<double> out(static_cast<size_t>(n));
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    for (int i = 0; i < n; ++i) {
        out[static_cast<size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    }
    out.back() = hi;
    return out;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > 0.0)) {
        throw ValidationError("log_spaced requires positive bounds");
    }
    if (n < 1) throw ValidationError("log_spaced requires n >= 1");
    const double llo = std::log(lo), lhi = std::log(hi);
    std::vector<double> out(static_cast<size_t>(n));
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    for (int i = 0; i < n; ++i) {
        out[static_cast<size_t>(i)] = std::exp(llo + (lhi - llo) * i / (n - 1));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

} // namespace opamech
