#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace freemagma {

// Exact rational scalar. Kept canonical (reduced, positive denominator)
// by the backend; all coefficient arithmetic in the library is exact.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial of negative argument");
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;  // exact at every step
    }
    return r;
}

inline std::string to_string(const Rat& r) { return r.str(); }

}  // namespace freemagma
