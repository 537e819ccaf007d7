// Compensated (Kahan-Babuska-Neumaier) accumulation, generic over the
// scalar type so it also works on top of TwoFloat tiers.

#pragma once

#include <cmath>
#include <cstdint>

#include "msf/twofloat.hpp"

namespace msf {

namespace detail {
inline double as_double(double x) { return x; }
inline double as_double(long double x) { return static_cast<double>(x); }
template <typename T>
double as_double(TwoFloat<T> x) { return x.to_double(); }

inline double abs_as_double(double x) { return std::fabs(x); }
inline double abs_as_double(long double x) { return static_cast<double>(std::fabs(x)); }
template <typename T>
double abs_as_double(TwoFloat<T> x) { return std::fabs(x.to_double()); }
} // namespace detail

template <typename T>
struct CompensatedAccumulator {
    T sum{};
    T compensation{};
    double max_abs_term = 0.0;
    std::int64_t terms = 0;

    void add(T term) {
        T t = sum + term;
        if (detail::abs_as_double(sum) >= detail::abs_as_double(term)) {
            compensation += (sum - t) + term;
        } else {
            compensation += (term - t) + sum;
        }
        sum = t;
        double m = detail::abs_as_double(term);
        if (m > max_abs_term) max_abs_term = m;
        ++terms;
    }

    T result() const { return sum + compensation; }
    double result_as_double() const { return detail::as_double(result()); }
};

} // namespace msf
