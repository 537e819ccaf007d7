#include "msf/scalar.hpp"

#include <cmath>
#include <limits>

#include "msf/kahan.hpp"

namespace msf::scalar {

namespace {

constexpr std::int64_t kTermCap = 100000;
constexpr int kConsecutiveSmall = 3;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_not_nonpositive_integer(double l3) {
    if (l3 <= 0.0 && l3 == std::floor(l3)) {
        throw domain_error("lower hypergeometric parameter is a nonpositive integer");
    }
}

struct SeriesSum {
    double value = 0.0;
    double abs_sum = 0.0;
    double max_term = 0.0;
    std::int64_t terms = 0;
    double last_ratio = 0.0;
    bool converged = false;
};

// Sums T_0 = 1, T_{n+1} = T_n * step(n) with the shared truncation rule:
// |T| <= rel_tol |sum| for `kConsecutiveSmall` consecutive terms while the
// term ratio shows decay.
template <typename StepFn>
SeriesSum sum_hypergeometric(StepFn step, double rel_tol) {
    SeriesSum out;
    CompensatedAccumulator<double> acc;
    double term = 1.0;
    int small_run = 0;
    double prev_abs = 1.0;
    for (std::int64_t n = 0; n < kTermCap; ++n) {
        acc.add(term);
        out.abs_sum += std::fabs(term);
        double running = std::fabs(acc.result());
        double at = std::fabs(term);
        bool small = at <= rel_tol * running;
        bool decaying = at <= prev_abs;
        small_run = (small && decaying) ? small_run + 1 : 0;
        prev_abs = at;
        double next = term * step(static_cast<double>(n));
        if (next == 0.0) {  // terminating (polynomial) case
            out.converged = true;
            out.terms = n + 1;
            break;
        }
        if (small_run >= kConsecutiveSmall) {
            out.converged = true;
            out.terms = n + 1;
            out.last_ratio = std::fabs(next / term);
            break;
        }
        term = next;
        out.terms = n + 1;
    }
    out.value = acc.result();
    out.max_term = acc.max_abs_term;
    return out;
}

EvalResult to_result(const SeriesSum& s, double rel_tol) {
    EvalResult r;
    r.value = s.value;
    r.terms_used = s.terms;
    r.max_term_magnitude = s.max_term;
    r.converged = s.converged;
    double tail = 0.0;
    if (s.converged && s.last_ratio > 0.0 && s.last_ratio < 1.0) {
        tail = rel_tol * std::fabs(s.value) * s.last_ratio / (1.0 - s.last_ratio);
    }
    r.abs_error_estimate = 2.0 * kEps * s.abs_sum + tail;
    if (!s.converged) r.note = "term cap exceeded";
    return r;
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw domain_error("log_gamma requires x > 0");
    return std::lgamma(x);
}

double gamma(double x) {
    if (!(x > 0.0)) throw domain_error("gamma requires x > 0");
    return std::tgamma(x);
}

double pochhammer(double lambda, int n) {
    if (n < 0) throw domain_error("pochhammer requires n >= 0");
    double prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= lambda + i;
    return prod;
}

double classical_beta(double x, double y) {
    if (!(x > 0.0 && y > 0.0)) throw domain_error("classical_beta requires x, y > 0");
    return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

EvalResult classical_2f1(double l1, double l2, double l3, double z, double rel_tol) {
    check_not_nonpositive_integer(l3);
    if (!(std::fabs(z) < 1.0)) {
        throw domain_error("classical_2f1 requires |z| < 1");
    }
    SeriesSum s = sum_hypergeometric(
        [=](double n) { return (l1 + n) * (l2 + n) / ((l3 + n) * (1.0 + n)) * z; },
        rel_tol);
    return to_result(s, rel_tol);
}

EvalResult classical_phi(double l2, double l3, double z, double rel_tol) {
    check_not_nonpositive_integer(l3);
    if (z < 0.0) {
        // Kummer transform keeps every summed term at a positive argument.
        EvalResult inner = classical_phi(l3 - l2, l3, -z, rel_tol);
        double scale = std::exp(z);
        inner.value *= scale;
        inner.abs_error_estimate = inner.abs_error_estimate * scale +
                                   std::fabs(inner.value) * kEps;
        return inner;
    }
    SeriesSum s = sum_hypergeometric(
        [=](double n) { return (l2 + n) / ((l3 + n) * (1.0 + n)) * z; }, rel_tol);
    return to_result(s, rel_tol);
}

} // namespace msf::scalar
