// Double-word ("two-float") arithmetic built on error-free transformations.
// Algorithms follow M. Joldes et al., ACM Trans. Math. Softw. 44 (2018).
// TwoFloat<double> gives ~32 significant digits, TwoFloat<long double>
// (64-bit mantissa on x86) ~38.5, which is what the series evaluator's
// extended tier needs to survive deep alternating-series cancellation.

#pragma once

#include <cmath>
#include <limits>
#include <type_traits>

namespace msf {

namespace detail {

// Veltkamp splitter constant: 2^ceil(digits/2) + 1.
template <typename T>
constexpr T splitter() {
    constexpr int shift = (std::numeric_limits<T>::digits + 1) / 2;
    T s = 1;
    for (int i = 0; i < shift; ++i) s *= 2;
    return s + 1;
}

} // namespace detail

template <typename T>
struct TwoFloat {
    static_assert(std::is_floating_point_v<T>);

    T hi{};
    T lo{};

    constexpr TwoFloat() = default;
    constexpr TwoFloat(T x) : hi(x), lo(0) {}
    constexpr TwoFloat(T h, T l) : hi(h), lo(l) {}

    // |a| >= |b| is NOT required.
    static TwoFloat two_sum(T a, T b) {
        T s = a + b;
        T bb = s - a;
        T err = (a - (s - bb)) + (b - bb);
        return {s, err};
    }

    // Requires |a| >= |b| or a == 0.
    static TwoFloat fast_two_sum(T a, T b) {
        T s = a + b;
        return {s, b - (s - a)};
    }

    static TwoFloat two_prod(T a, T b) {
        if constexpr (std::is_same_v<T, double>) {
            T p = a * b;
            return {p, std::fma(a, b, -p)};
        } else {
            // Dekker product via Veltkamp splitting.
            T p = a * b;
            T ca = detail::splitter<T>() * a;
            T ahi = ca - (ca - a);
            T alo = a - ahi;
            T cb = detail::splitter<T>() * b;
            T bhi = cb - (cb - b);
            T blo = b - bhi;
            T err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo;
            return {p, err};
        }
    }

    friend TwoFloat operator+(TwoFloat x, TwoFloat y) {
        TwoFloat s = two_sum(x.hi, y.hi);
        TwoFloat t = two_sum(x.lo, y.lo);
        T c = s.lo + t.hi;
        TwoFloat v = fast_two_sum(s.hi, c);
        T w = t.lo + v.lo;
        return fast_two_sum(v.hi, w);
    }

    friend TwoFloat operator+(TwoFloat x, T y) {
        TwoFloat s = two_sum(x.hi, y);
        T v = x.lo + s.lo;
        return fast_two_sum(s.hi, v);
    }

    friend TwoFloat operator+(T x, TwoFloat y) { return y + x; }

    friend TwoFloat operator-(TwoFloat x) { return {-x.hi, -x.lo}; }
    friend TwoFloat operator-(TwoFloat x, TwoFloat y) { return x + (-y); }
    friend TwoFloat operator-(TwoFloat x, T y) { return x + (-y); }
    friend TwoFloat operator-(T x, TwoFloat y) { return (-y) + x; }

    friend TwoFloat operator*(TwoFloat x, TwoFloat y) {
        TwoFloat p = two_prod(x.hi, y.hi);
        T t = x.hi * y.lo + x.lo * y.hi;
        return fast_two_sum(p.hi, p.lo + t);
    }

    friend TwoFloat operator*(TwoFloat x, T y) {
        TwoFloat p = two_prod(x.hi, y);
        return fast_two_sum(p.hi, p.lo + x.lo * y);
    }

    friend TwoFloat operator*(T x, TwoFloat y) { return y * x; }

    friend TwoFloat operator/(TwoFloat x, TwoFloat y) {
        T q1 = x.hi / y.hi;
        TwoFloat r = x - y * q1;
        T q2 = r.hi / y.hi;
        r = r - y * q2;
        T q3 = r.hi / y.hi;
        TwoFloat q = fast_two_sum(q1, q2);
        return q + q3;
    }

    friend TwoFloat operator/(TwoFloat x, T y) { return x / TwoFloat(y); }
    friend TwoFloat operator/(T x, TwoFloat y) { return TwoFloat(x) / y; }

    TwoFloat& operator+=(TwoFloat y) { return *this = *this + y; }
    TwoFloat& operator+=(T y) { return *this = *this + y; }
    TwoFloat& operator-=(TwoFloat y) { return *this = *this - y; }
    TwoFloat& operator*=(TwoFloat y) { return *this = *this * y; }
    TwoFloat& operator*=(T y) { return *this = *this * y; }
    TwoFloat& operator/=(TwoFloat y) { return *this = *this / y; }

    friend bool operator==(TwoFloat x, TwoFloat y) { return x.hi == y.hi && x.lo == y.lo; }
    friend bool operator<(TwoFloat x, TwoFloat y) {
        return x.hi < y.hi || (x.hi == y.hi && x.lo < y.lo);
    }
    friend bool operator>(TwoFloat x, TwoFloat y) { return y < x; }
    friend bool operator<=(TwoFloat x, TwoFloat y) { return !(y < x); }
    friend bool operator>=(TwoFloat x, TwoFloat y) { return !(x < y); }

    friend TwoFloat abs(TwoFloat x) { return x.hi < 0 ? -x : x; }

    double to_double() const { return static_cast<double>(static_cast<long double>(hi) + static_cast<long double>(lo)); }
    T to_component() const { return hi + lo; }

    static constexpr T eps() {
        T e = std::numeric_limits<T>::epsilon();
        return e * e * T(0.5);
    }
};

using DD = TwoFloat<double>;
using XD = TwoFloat<long double>;

} // namespace msf
