// Double-exponential (tanh-sinh / exp-sinh) adaptive quadrature for the
// three integral shapes used here: (0,1) with endpoint singularities or
// essential decay, (0,inf) with algebraic-times-decaying integrands, and a
// tensor rule for the one double integral.
//
// Integrands may return a pointwise |error| bound alongside the value; the
// engine integrates that error field with the same weights and folds it
// into the final estimate. Unit-interval integrands receive both t and 1-t
// so endpoint factors like (1-t)^{y-1} keep full precision near t = 1.

#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "msf/types.hpp"

namespace msf {

enum class QuadratureScheme { unit_interval, half_line, tensor_2d };

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_level = 10;   // doubling levels
    QuadratureScheme scheme = QuadratureScheme::unit_interval;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::int64_t nodes_evaluated = 0;
    bool converged = false;
    std::string note;
};

struct PointValue {
    double value = 0.0;
    double err = 0.0;
};

using UnitIntegrand = std::function<PointValue(double t, double one_minus_t)>;
using HalfLineIntegrand = std::function<PointValue(double t)>;
using PlaneIntegrand = std::function<PointValue(double theta, double r)>;

QuadratureResult integrate_unit(const UnitIntegrand& f, QuadratureConfig cfg);
QuadratureResult integrate_half_line(const HalfLineIntegrand& f, QuadratureConfig cfg);

// Iterated tensor rule over (0, pi/2) x (0, inf); the unit rule drives theta
// and the half-line rule drives r.
QuadratureResult integrate_2d(const PlaneIntegrand& f, QuadratureConfig cfg);

// Conveniences for plain closed-form integrands (no pointwise error field).
QuadratureResult integrate_unit(const std::function<double(double)>& f, QuadratureConfig cfg);
QuadratureResult integrate_half_line(const std::function<double(double)>& f, QuadratureConfig cfg);

} // namespace msf
