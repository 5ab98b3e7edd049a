#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace weil
{

// Complex long double with a conservative absolute error bound.
struct NumericValue
{
    std::complex<long double> value{0, 0};
    long double error = 0;
    bool bound_proven = true;

    NumericValue() = default;
    NumericValue(std::complex<long double> v, long double err = 0, bool proven = true)
        : value(v), error(err), bound_proven(proven)
    {
    }

    static long double ulp_scale() { return 8 * std::numeric_limits<long double>::epsilon(); }

    NumericValue& operator+=(const NumericValue& o)
    {
        value += o.value;
        error += o.error + ulp_scale() * (std::abs(value) + std::abs(o.value));
        bound_proven = bound_proven && o.bound_proven;
        return *this;
    }
    NumericValue& operator-=(const NumericValue& o) { return *this += NumericValue(-o.value, o.error, o.bound_proven); }
    NumericValue& operator*=(const NumericValue& o)
    {
        const long double a = std::abs(value), b = std::abs(o.value);
        value *= o.value;
        error = a * o.error + b * error + error * o.error + ulp_scale() * a * b;
        bound_proven = bound_proven && o.bound_proven;
        return *this;
    }
    friend NumericValue operator+(NumericValue a, const NumericValue& b) { return a += b; }
    friend NumericValue operator-(NumericValue a, const NumericValue& b) { return a -= b; }
    friend NumericValue operator*(NumericValue a, const NumericValue& b) { return a *= b; }

    bool is_zero() const { return std::abs(value) <= error; }
};

} // namespace weil
