#pragma once

#include <string>
#include <vector>

#include "msf/types.hpp"

namespace msf {

// Shape of the generalized M-series: upper parameters kappa_1..kappa_p,
// lower parameters mu_1..mu_q, exponents alpha > 0 and beta.
//
// Construction enforces: no kappa or mu equal to a nonpositive integer,
// alpha > 0, and p <= q + 1 (the series is hopeless beyond that).
class ParameterSet {
public:
    ParameterSet(std::vector<double> upper, std::vector<double> lower,
                 double alpha, double beta);

    // kappa = mu = 1, alpha = beta = 1: the series collapses to exp(z).
    static ParameterSet classical();

    const std::vector<double>& upper() const { return upper_; }
    const std::vector<double>& lower() const { return lower_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    int p() const { return static_cast<int>(upper_.size()); }
    int q() const { return static_cast<int>(lower_.size()); }

    ParameterSet with_appended_upper(double kappa) const;
    ParameterSet with_appended_pair(double kappa, double mu) const;

    // Whether the defining power series converges at argument z:
    //   p <= q           : everywhere
    //   p == q+1, a > 1  : everywhere
    //   p == q+1, a == 1 : |z| < 1
    //   p == q+1, a < 1  : z == 0 only
    // For p == q+1 and z < 0 outside that region the evaluator still works
    // through the integral reduction (see MSeries), so "false" here does not
    // always mean unevaluable.
    bool series_converges_at(double z) const;

    bool is_classical() const;

    std::string describe() const;

    friend bool operator==(const ParameterSet& a, const ParameterSet& b) = default;

private:
    std::vector<double> upper_;
    std::vector<double> lower_;
    double alpha_;
    double beta_;
};

} // namespace msf
