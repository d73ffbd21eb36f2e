#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace banana {

/// Exact rational scalar. Backed by GMP; always canonical (lowest terms,
/// positive denominator). No floating point anywhere in this library.
using Rational = mpq_class;

struct series_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rat_parse(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw series_error("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Binomial coefficient with integer top, defined for all n and k >= 0.
inline Rational binomial(long n, long k) {
    if (k < 0) return 0;
    Rational b = 1;
    for (long i = 0; i < k; ++i) b *= Rational(n - i, i + 1);
    b.canonicalize();
    return b;
}

}  // namespace banana
