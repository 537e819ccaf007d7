#include "msf/mseries.hpp"

#include <cmath>
#include <deque>
#include <limits>

#include "msf/gamma_ext.hpp"
#include "msf/kahan.hpp"
#include "msf/quadrature.hpp"

namespace msf {

namespace {

constexpr double kRelTolMin = 1e-15;
constexpr double kRelTolMax = 1e-2;

void check_rel_tol(double rel_tol) {
    if (!(rel_tol > kRelTolMin && rel_tol < kRelTolMax)) {
        throw domain_error("rel_tol must lie in (1e-15, 1e-2)");
    }
}

DD to_dd(XD c) {
    double h = static_cast<double>(c.hi + c.lo);
    if (!std::isfinite(h)) return DD{h, 0.0};
    double l = static_cast<double>((c.hi - static_cast<long double>(h)) + c.lo);
    return DD::fast_two_sum(h, l);
}

template <typename T> T from_double(double x);
template <> double from_double<double>(double x) { return x; }
template <> DD from_double<DD>(double x) { return DD(x); }
template <> XD from_double<XD>(double x) { return XD(static_cast<long double>(x)); }

template <typename T> double tier_eps();
template <> double tier_eps<double>() { return 1.1e-16; }
template <> double tier_eps<DD>() { return 4.9e-32; }
template <> double tier_eps<XD>() { return 5.9e-39; }

// Relative error of the coefficient table itself.
constexpr double kCoeffRel = 2e-36;

} // namespace

struct MSeries::Tables {
    explicit Tables(const ParameterSet& p) : params(p) {}

    const ParameterSet& params;
    std::mutex mutex;
    std::deque<XD> xd;
    std::deque<DD> dd;
    std::deque<double> d;
    XD ratio_mant{1.0L};
    long ratio_e2 = 0;
    std::size_t built = 0;

    void ensure(std::size_t up_to) {
        std::lock_guard<std::mutex> lock(mutex);
        while (built <= up_to) append_one();
    }

    std::size_t size() {
        std::lock_guard<std::mutex> lock(mutex);
        return built;
    }

    void append_one() {
        long double m = static_cast<long double>(built);
        XD arg = XD(static_cast<long double>(params.alpha())) * m +
                 XD(static_cast<long double>(params.beta()));
        ScaledXD rg = rgamma_scaled_xd(arg);
        XD mant = ratio_mant * rg.mant;
        long e2 = ratio_e2 + rg.e2;
        XD c;
        if (e2 < -16400 || mant.hi == 0.0L) {
            c = XD(0.0L);
        } else if (e2 > 16300) {
            c = XD(std::numeric_limits<long double>::infinity());
        } else {
            c = XD{std::ldexp(mant.hi, static_cast<int>(e2)),
                   std::ldexp(mant.lo, static_cast<int>(e2))};
        }
        xd.push_back(c);
        dd.push_back(to_dd(c));
        d.push_back(c.to_double());

        for (double k : params.upper()) {
            ratio_mant = ratio_mant * XD(static_cast<long double>(k) + m);
        }
        for (double u : params.lower()) {
            ratio_mant = ratio_mant / XD(static_cast<long double>(u) + m);
        }
        if (ratio_mant.hi != 0.0L) {
            int e = 0;
            (void)std::frexp(ratio_mant.hi, &e);
            if (e > 512 || e < -512) {
                ratio_mant = XD{std::ldexp(ratio_mant.hi, -e), std::ldexp(ratio_mant.lo, -e)};
                ratio_e2 += e;
            }
        }
        ++built;
    }

    template <typename T> T coeff(std::size_t m);
};

template <> double MSeries::Tables::coeff<double>(std::size_t m) { return d[m]; }
template <> DD MSeries::Tables::coeff<DD>(std::size_t m) { return dd[m]; }
template <> XD MSeries::Tables::coeff<XD>(std::size_t m) { return xd[m]; }

MSeries::MSeries(ParameterSet params, MSeriesOptions opts)
    : params_(std::move(params)), opts_(opts), tables_(std::make_unique<Tables>(params_)) {}

MSeries::~MSeries() = default;

template <typename T>
EvalResult MSeries::sum_tier(double z, double rel_tol, PrecisionTier label) const {
    const T zT = from_double<T>(z);
    T zm = from_double<T>(1.0);
    CompensatedAccumulator<T> acc;
    double abs_sum = 0.0;
    int small_run = 0;
    double prev_abs = std::numeric_limits<double>::infinity();
    bool converged = false;
    bool need_wider = false;
    std::int64_t m = 0;
    double last_abs = 0.0;

    for (; m < opts_.term_cap; ++m) {
        if (static_cast<std::size_t>(m) >= tables_->size()) {
            tables_->ensure(static_cast<std::size_t>(m) + 63);
        }
        T c = tables_->coeff<T>(static_cast<std::size_t>(m));
        double cd = detail::as_double(c);
        if (!std::isfinite(cd)) {
            return EvalResult::failure("coefficient overflow");
        }
        if constexpr (!std::is_same_v<T, XD>) {
            // coefficient underflowed this tier but is alive in the wide table
            if (cd == 0.0 && tables_->coeff<XD>(static_cast<std::size_t>(m)).hi != 0.0L) {
                need_wider = true;
                break;
            }
        }
        T term = c * zm;
        double at = detail::abs_as_double(term);
        if (!std::isfinite(at)) {
            need_wider = true;
            break;
        }
        acc.add(term);
        abs_sum += at;
        last_abs = at;
        double running = std::fabs(acc.result_as_double());
        bool small = acc.max_abs_term > 0.0 && at <= rel_tol * running;
        bool decaying = at <= prev_abs;
        small_run = (small && decaying) ? small_run + 1 : 0;
        if (at > 0.0) prev_abs = at;
        if (small_run >= opts_.consecutive_small) {
            converged = true;
            ++m;
            break;
        }
        zm = zm * zT;
        if (!std::isfinite(detail::abs_as_double(zm))) {
            need_wider = true;
            break;
        }
    }

    EvalResult r;
    r.value = acc.result_as_double();
    r.terms_used = m;
    r.max_term_magnitude = acc.max_abs_term;
    r.precision_tier = label;
    r.converged = converged;
    if (need_wider) {
        r.converged = false;
        r.note = "needs wider tier";
        return r;
    }
    double tail = 0.0;
    if (converged) {
        // bound the dropped tail by a geometric extension of the last term
        tables_->ensure(static_cast<std::size_t>(m));
        double cnext = std::fabs(detail::as_double(tables_->coeff<XD>(static_cast<std::size_t>(m))));
        double znext = std::fabs(detail::abs_as_double(zm) * z);
        double next = cnext * znext;
        if (last_abs > 0.0 && next < last_abs) {
            double ratio = next / last_abs;
            tail = next / (1.0 - ratio);
        } else {
            tail = next + last_abs;
        }
    } else if (r.note.empty()) {
        r.note = "term cap exceeded";
    }
    r.abs_error_estimate = 2.0 * tier_eps<T>() * abs_sum + tail + kCoeffRel * abs_sum;
    return r;
}

EvalResult MSeries::evaluate_series(double z, double rel_tol) const {
    int start = 0;  // 0: double, 1: DD, 2: XD
    if (z < -34.0) {
        start = 2;
    } else if (z < -15.0) {
        start = 1;
    }

    EvalResult r;
    for (int tier = start; tier <= 2; ++tier) {
        PrecisionTier label = tier == 0 ? PrecisionTier::standard : PrecisionTier::extended;
        switch (tier) {
            case 0: r = sum_tier<double>(z, rel_tol, label); break;
            case 1: r = sum_tier<DD>(z, rel_tol, label); break;
            default: r = sum_tier<XD>(z, rel_tol, label); break;
        }
        if (r.note == "needs wider tier") {
            if (tier == 0) tier = 1;  // magnitude problems skip straight to XD
            continue;
        }
        if (!r.converged) return r;
        double av = std::fabs(r.value);
        bool cancellation = z < 0.0 && av > 0.0 &&
                            r.max_term_magnitude / av > opts_.escalation_ratio &&
                            tier == 0;
        bool precision_short = r.abs_error_estimate > rel_tol * std::max(av, 1e-300);
        if (tier < 2 && (cancellation || precision_short)) continue;
        return r;
    }
    if (r.note == "needs wider tier") r.note = "magnitude out of range";
    return r;
}

EvalResult MSeries::evaluate_reduced(double z, double rel_tol) const {
    // Reduce by one upper parameter; prefer an exact 1.0 (the appended
    // parameter in the Laplace transform theorems) for the smooth weight.
    const auto& up = params_.upper();
    int pick = -1;
    for (std::size_t i = 0; i < up.size(); ++i) {
        if (up[i] == 1.0) { pick = static_cast<int>(i); break; }
    }
    if (pick < 0) {
        double best = 0.0;
        for (std::size_t i = 0; i < up.size(); ++i) {
            if (up[i] > best) { best = up[i]; pick = static_cast<int>(i); }
        }
    }
    if (pick < 0) {
        return EvalResult::failure("series diverges and no positive upper parameter to reduce by");
    }
    double kappa = up[static_cast<std::size_t>(pick)];

    {
        std::lock_guard<std::mutex> lock(reduced_mutex_);
        if (!reduced_) {
            std::vector<double> ru = up;
            ru.erase(ru.begin() + pick);
            reduced_ = std::make_unique<MSeries>(
                ParameterSet(std::move(ru), params_.lower(), params_.alpha(), params_.beta()),
                opts_);
        }
    }

    double lg = std::lgamma(kappa);
    PrecisionTier seen = PrecisionTier::standard;
    HalfLineIntegrand f = [&](double u) -> PointValue {
        EvalResult k = reduced_->evaluate_kernel(z * u, rel_tol * 0.25);
        if (!k.converged) {
            return {std::numeric_limits<double>::quiet_NaN(), 0.0};
        }
        if (k.precision_tier == PrecisionTier::extended) seen = PrecisionTier::extended;
        double w = std::exp((kappa - 1.0) * std::log(u) - u - lg);
        return {w * k.value, w * k.abs_error_estimate};
    };

    QuadratureConfig cfg;
    cfg.rel_tol = std::max(rel_tol * 0.5, 1e-13);
    cfg.scheme = QuadratureScheme::half_line;
    QuadratureResult qr = integrate_half_line(f, cfg);

    EvalResult r;
    r.value = qr.value;
    r.abs_error_estimate = qr.abs_error_estimate;
    r.terms_used = qr.nodes_evaluated;
    r.max_term_magnitude = std::fabs(qr.value);
    r.precision_tier = seen;
    r.converged = qr.converged;
    r.note = qr.converged ? "integral-reduced" : "integral reduction failed: " + qr.note;
    return r;
}

EvalResult MSeries::evaluate(double z, double rel_tol) const {
    check_rel_tol(rel_tol);
    if (!std::isfinite(z)) throw domain_error("m_series argument must be finite");

    if (z == 0.0) {  // only the m = 0 term survives: 1 / Gamma(beta)
        tables_->ensure(0);
        EvalResult r;
        r.value = tables_->coeff<double>(0);
        r.abs_error_estimate = kCoeffRel * std::fabs(r.value);
        r.terms_used = 1;
        r.max_term_magnitude = std::fabs(r.value);
        r.converged = true;
        return r;
    }

    if (params_.series_converges_at(z)) {
        EvalResult r = evaluate_series(z, rel_tol);
        if (!r.converged && params_.p() == params_.q() + 1 && z < 0.0) {
            return evaluate_reduced(z, rel_tol);
        }
        return r;
    }
    if (params_.p() == params_.q() + 1 && z < 0.0) {
        return evaluate_reduced(z, rel_tol);
    }
    return EvalResult::failure("series diverges at this argument (p = q + 1 convergence guard)");
}

const MSeries::FloorInfo& MSeries::floor_info() const {
    std::lock_guard<std::mutex> lock(floor_mutex_);
    if (floor_) return *floor_;

    FloorInfo fi{-4.0, 0.0, 6.0};
    double prev_v = 0.0;
    double prev_z = 0.0;
    bool have_honest = false;
    for (double zj = -4.0; zj >= opts_.z_floor; zj *= 2.0) {
        EvalResult r = evaluate(zj, 1e-9);
        double av = std::fabs(r.value);
        bool honest = r.converged && av > 0.0 && r.abs_error_estimate <= 0.1 * av;
        if (!honest) break;
        if (have_honest && prev_v > 0.0 && av > 0.0 && av < prev_v) {
            double p = std::log(prev_v / av) / std::log(zj / prev_z);
            fi.decay_power = std::min(std::max(p, 1.0), 60.0);
        }
        fi.frontier = zj;
        fi.bound = av + r.abs_error_estimate;
        prev_v = av;
        prev_z = zj;
        have_honest = true;
        if (av < 1e-280) break;
    }
    if (!have_honest) {
        EvalResult r = evaluate(-4.0, 1e-9);
        fi.frontier = -4.0;
        fi.bound = std::fabs(r.value) + r.abs_error_estimate;
        fi.decay_power = 1.0;
    }
    floor_ = fi;
    return *floor_;
}

EvalResult MSeries::evaluate_kernel(double z, double rel_tol) const {
    check_rel_tol(rel_tol);
    if (!std::isfinite(z)) throw domain_error("kernel argument must be finite");
    if (z >= 0.0) return evaluate(z, rel_tol);

    const FloorInfo& fi = floor_info();
    double eff = std::max(opts_.z_floor, fi.frontier);
    if (z >= eff) {
        return evaluate(z, rel_tol);
    }
    EvalResult r;
    r.value = 0.0;
    r.abs_error_estimate = fi.bound * std::pow(fi.frontier / z, fi.decay_power);
    r.converged = true;
    r.precision_tier = PrecisionTier::extended;
    r.note = "decay floor";
    return r;
}

EvalResult m_series(const ParameterSet& params, double z, double rel_tol) {
    MSeries ms(params);
    return ms.evaluate(z, rel_tol);
}

EvalResult m_series_kernel_beta(const ParameterSet& params, double t, double rho,
                                double rel_tol) {
    if (!(t > 0.0 && t < 1.0)) throw domain_error("kernel abscissa must satisfy 0 < t < 1");
    if (!(rho >= 0.0)) throw domain_error("rho must be nonnegative");
    MSeries ms(params);
    return ms.evaluate_kernel(-rho / (t * (1.0 - t)), rel_tol);
}

} // namespace msf
