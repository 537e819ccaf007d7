// Foundation scalar functions: log-gamma, Pochhammer, classical beta,
// classical Gauss and confluent hypergeometric series.

#pragma once

#include "msf/types.hpp"

namespace msf::scalar {

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// Gamma(x) for x > 0.
double gamma(double x);

// Rising factorial (lambda)_n = lambda (lambda+1) ... (lambda+n-1), n >= 0.
// Computed as the direct product so nonpositive real lambda works wherever
// the product is finite (the Gamma-quotient form is singular there).
double pochhammer(double lambda, int n);

// B(x, y) = exp(lgamma x + lgamma y - lgamma(x+y)); x, y > 0.
double classical_beta(double x, double y);

// 2F1(l1, l2; l3; z) partial-sum evaluation, |z| < 1.
EvalResult classical_2f1(double l1, double l2, double l3, double z,
                         double rel_tol = 1e-12);

// Phi(l2; l3; z) = 1F1, all real z. Negative z is routed through the
// Kummer transform exp(z) Phi(l3-l2; l3; -z) to avoid alternating-series
// cancellation.
EvalResult classical_phi(double l2, double l3, double z,
                         double rel_tol = 1e-12);

} // namespace msf::scalar
