// Extended-tier transcendentals on TwoFloat<long double> (~38 digits):
// exp, log, sin(pi x), gamma and reciprocal gamma. These back the series
// coefficient tables, where double-precision Gamma(alpha m + beta) would
// dominate the error budget long before cancellation does.

#pragma once

#include "msf/twofloat.hpp"

namespace msf {

XD exp_xd(XD x);
XD log_xd(XD x);   // requires x > 0
XD sinpi_xd(XD x);

// Gamma for any real non-pole argument; +/-inf at poles.
XD gamma_xd(XD x);

// 1/Gamma, zero at the poles (x = 0, -1, -2, ...). Underflows to zero for
// arguments large enough that Gamma overflows long double.
XD rgamma_xd(XD x);

// 1/Gamma as mant * 2^e2 so series coefficients never hit the long double
// exponent range prematurely.
struct ScaledXD {
    XD mant;
    long e2 = 0;
};
ScaledXD rgamma_scaled_xd(XD x);

} // namespace msf
