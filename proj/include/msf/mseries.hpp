// Evaluator for the generalized M-series
//   sum_m  prod(kappa_i)_m / prod(mu_j)_m * z^m / Gamma(alpha m + beta).
//
// Series coefficients are built once per instance in TwoFloat<long double>
// and rounded down for the cheaper tiers. Summation runs a precision ladder
// (double -> double-double -> long-double-double); alternating series at
// deep negative arguments escalate when the cancellation ratio exceeds the
// escalation threshold. Arguments below the decay floor, or beyond the
// per-parameter-set precision frontier, short-circuit to 0 with a fitted
// decay bound as the error estimate (kernel evaluations only).
//
// For p = q + 1 outside the series' convergence region at z < 0 the value
// is recovered from the index reduction
//   K(z) = 1/Gamma(kappa_j) * int_0^inf e^-u u^{kappa_j - 1} K_red(z u) du,
// which follows from (kappa_j)_m = Gamma(kappa_j + m) / Gamma(kappa_j).

#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "msf/params.hpp"
#include "msf/twofloat.hpp"
#include "msf/types.hpp"

namespace msf {

struct MSeriesOptions {
    double rel_tol = 1e-10;
    std::int64_t term_cap = 100000;
    int consecutive_small = 3;
    double escalation_ratio = 1e6;
    double z_floor = -746.0;
};

class MSeries {
public:
    explicit MSeries(ParameterSet params, MSeriesOptions opts = {});
    ~MSeries();

    const ParameterSet& params() const { return params_; }
    const MSeriesOptions& options() const { return opts_; }

    // The defining series (integral-reduced where the series itself
    // diverges but the function exists). converged == false when the value
    // cannot be produced honestly.
    EvalResult evaluate(double z, double rel_tol) const;
    EvalResult evaluate(double z) const { return evaluate(z, opts_.rel_tol); }

    // Kernel-flavored evaluation: below the decay floor returns 0 with the
    // floor bound as abs_error_estimate and converged = true, so quadrature
    // can integrate through regions the series cannot reach.
    EvalResult evaluate_kernel(double z, double rel_tol) const;
    EvalResult evaluate_kernel(double z) const { return evaluate_kernel(z, opts_.rel_tol); }

private:
    struct FloorInfo {
        double frontier;     // most negative argument evaluated honestly
        double bound;        // |M| + err there
        double decay_power;  // fitted |M(z)| ~ bound * (frontier/z)^power
    };
    struct Tables;

    EvalResult evaluate_series(double z, double rel_tol) const;
    EvalResult evaluate_reduced(double z, double rel_tol) const;
    template <typename T>
    EvalResult sum_tier(double z, double rel_tol, PrecisionTier label) const;
    const FloorInfo& floor_info() const;

    ParameterSet params_;
    MSeriesOptions opts_;
    std::unique_ptr<Tables> tables_;
    mutable std::mutex floor_mutex_;
    mutable std::optional<FloorInfo> floor_;
    mutable std::mutex reduced_mutex_;
    mutable std::unique_ptr<MSeries> reduced_;
};

EvalResult m_series(const ParameterSet& params, double z, double rel_tol = 1e-10);

// The modified-beta integrand kernel M(-rho / (t (1-t))) at 0 < t < 1.
EvalResult m_series_kernel_beta(const ParameterSet& params, double t, double rho,
                                double rel_tol = 1e-10);

} // namespace msf
