#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace msf {

// Thrown on precondition violations (bad arguments, domains, grids).
class domain_error : public std::domain_error {
    using std::domain_error::domain_error;
};

enum class PrecisionTier { standard, extended };

inline const char* to_string(PrecisionTier t) {
    return t == PrecisionTier::standard ? "standard" : "extended";
}

// A computed value with an error estimate and evaluation diagnostics.
// `converged == false` means the value must not be trusted; identity
// checkers propagate that as a failed report rather than comparing numbers.
struct EvalResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::int64_t terms_used = 0;
    double max_term_magnitude = 0.0;
    PrecisionTier precision_tier = PrecisionTier::standard;
    bool converged = false;
    std::string note;

    static EvalResult failure(std::string why) {
        EvalResult r;
        r.converged = false;
        r.note = std::move(why);
        return r;
    }
};

} // namespace msf
