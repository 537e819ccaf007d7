#include "msf/params.hpp"

#include <cmath>
#include <sstream>

namespace msf {

namespace {

bool is_nonpositive_integer(double v) {
    return v <= 0.0 && v == std::floor(v);
}

void check_parameter_list(const std::vector<double>& vals, const char* which) {
    for (double v : vals) {
        if (!std::isfinite(v)) {
            throw domain_error(std::string(which) + " parameter must be finite");
        }
        if (is_nonpositive_integer(v)) {
            throw domain_error(std::string(which) +
                               " parameter must not be a nonpositive integer");
        }
    }
}

} // namespace

ParameterSet::ParameterSet(std::vector<double> upper, std::vector<double> lower,
                           double alpha, double beta)
    : upper_(std::move(upper)), lower_(std::move(lower)), alpha_(alpha), beta_(beta) {
    check_parameter_list(upper_, "upper");
    check_parameter_list(lower_, "lower");
    if (!(std::isfinite(alpha_) && alpha_ > 0.0)) {
        throw domain_error("alpha must be positive and finite");
    }
    if (!std::isfinite(beta_)) {
        throw domain_error("beta must be finite");
    }
    if (p() > q() + 1) {
        throw domain_error("p <= q + 1 required for a convergent M-series");
    }
}

ParameterSet ParameterSet::classical() {
    return ParameterSet({1.0}, {1.0}, 1.0, 1.0);
}

ParameterSet ParameterSet::with_appended_upper(double kappa) const {
    std::vector<double> up = upper_;
    up.push_back(kappa);
    return ParameterSet(std::move(up), lower_, alpha_, beta_);
}

ParameterSet ParameterSet::with_appended_pair(double kappa, double mu) const {
    std::vector<double> up = upper_;
    std::vector<double> lo = lower_;
    up.push_back(kappa);
    lo.push_back(mu);
    return ParameterSet(std::move(up), std::move(lo), alpha_, beta_);
}

bool ParameterSet::series_converges_at(double z) const {
    if (p() <= q()) return true;
    if (alpha_ > 1.0) return true;
    if (alpha_ == 1.0) return std::fabs(z) < 1.0;
    return z == 0.0;
}

bool ParameterSet::is_classical() const {
    return p() == 1 && q() == 1 && upper_[0] == 1.0 && lower_[0] == 1.0 &&
           alpha_ == 1.0 && beta_ == 1.0;
}

std::string ParameterSet::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "M[p=" << p() << ",q=" << q() << ";k=";
    for (size_t i = 0; i < upper_.size(); ++i) os << (i ? "," : "") << upper_[i];
    os << ";m=";
    for (size_t i = 0; i < lower_.size(); ++i) os << (i ? "," : "") << lower_[i];
    os << ";a=" << alpha_ << ";b=" << beta_ << "]";
    return os.str();
}

} // namespace msf
