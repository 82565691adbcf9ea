#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace nthderiv {

/// Exact coefficient and count type. Unbounded, so sums and products never wrap.
using Integer = boost::multiprecision::cpp_int;

inline std::string to_decimal(const Integer& value) { return value.str(); }

/// 1*3*5*...*m for odd m; empty products (m <= 0) give 1.
inline Integer double_factorial(int m)
{
    Integer r = 1;
    for (int i = m; i > 1; i -= 2) {
        r *= i;
    }
    return r;
}

inline Integer binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    Integer r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

} // namespace nthderiv
