#pragma once

// Modular/Jacobi building blocks as truncated expansions: the odd and even
// theta functions, the MacMahon function, Eisenstein series, the weak Jacobi
// forms phi_{-2,1} and phi_{0,1}, the Weierstrass elliptic function, and
// Bernoulli numbers.
//
// Convention: the odd theta function is stored in a real normalization
//
//   that1(q,y) = sum_{m in Z} (-1)^m q^{(2m+1)^2/8} y^{m+1/2}
//              = -q^{1/8} y^{-1/2} prod_{n>=1} (1-q^n)(1-y q^{n-1})(1-1/y q^n),
//
// which differs from the classical odd theta by a factor of -i.  Every
// consumer in this library uses theta ratios or squares in which the i's
// cancel in pairs, so all arithmetic stays over the rationals; callers are
// responsible for the resulting global signs (they are worked out where
// used).  Exponents carry denominator 8 in q and 2 in y, so that1 lives at
// exponent denominator 8.

#include <vector>

#include "banana/series.hpp"

namespace banana {

/// Bernoulli numbers B_0 = 1, B_1 = -1/2, B_2 = 1/6, ... by the defining
/// recursion sum_{j<=n} C(n+1, j) B_j = 0 for n >= 1.
class BernoulliTable {
  public:
    const Rational& operator()(long n) {
        if (n < 0) throw series_error("Bernoulli index must be nonnegative");
        while (static_cast<long>(values_.size()) <= n) {
            long m = static_cast<long>(values_.size());
            Rational s = 0;
            for (long j = 0; j < m; ++j) s += binomial(m + 1, j) * values_[j];
            values_.push_back(-s / Rational(m + 1));
        }
        return values_[n];
    }

  private:
    std::vector<Rational> values_{1};
};

inline Rational bernoulli(long n) {
    static thread_local BernoulliTable table;
    return table(n);
}

/// Real-normalized odd theta function (see header comment), exact for all
/// q-exponents <= qmax.  The y-window is derived from qmax: within the
/// q-window the y-support is finite, so y-knowledge is unlimited.
inline TruncSeries theta1_hat(long qmax) {
    if (qmax <= 0) throw series_error("theta1_hat: qmax must be positive");
    long smax = 1;  // largest odd s with s^2 <= 8*qmax; y-exponents are +-s/2
    while ((smax + 2) * (smax + 2) <= 8 * qmax) smax += 2;
    // D = 8: q-exponent units are 1/8, y-exponent units 1/8 (so y^{1/2} = 4).
    TruncSeries sum({"q", "y"}, 8, {{1, 8 * qmax}, {-4 * smax, kExpInf}});
    for (long m = -(smax + 1) / 2; m <= (smax - 1) / 2; ++m) {
        long s = 2 * m + 1;
        sum.add_term({s * s, 4 * s}, (m % 2 == 0) ? 1 : -1);
    }

    // Cross-check against the product form.  Mixed-sign y-exponents force a
    // boxed expansion: a term at y-degree d can arise from intermediates up
    // to d + (total negative y-degree), and each unit of negative y-degree
    // costs at least one unit of q, so a margin of qmax units of y is exact.
    long margin = 8 * qmax + 8;
    TruncSeries box = TruncSeries::zero(
        {"q", "y"}, 8, {{0, 8 * qmax - 1}, {-margin, 4 * smax + margin}});
    std::vector<ProductFactor> fs;
    for (long n = 1; n <= qmax + 1; ++n) {
        fs.push_back({{8 * n, 0}, -1, 1});       // (1 - q^n)
        fs.push_back({{8 * (n - 1), 8}, -1, 1});  // (1 - y q^{n-1})
        fs.push_back({{8 * n, -8}, -1, 1});       // (1 - 1/y q^n)
    }
    TruncSeries prod = product_expand(fs, box).shifted({1, -4}, -1);
    if (!agree_on_common_window(
            sum, prod.certified(TruncSeries::zero(
                     {"q", "y"}, 8, {{1, 8 * qmax}, {-4 * smax, 4 * smax}}))))
        throw series_error("theta1_hat: sum and product forms disagree");
    return sum;
}

/// theta4(q,y) = sum_{k in Z} q^{k^2} (-y)^k, exact for q-exponents <= qmax.
inline TruncSeries theta4(long qmax) {
    if (qmax < 0) throw series_error("theta4: qmax must be nonnegative");
    long kmax = 0;
    while ((kmax + 1) * (kmax + 1) <= qmax) ++kmax;
    TruncSeries s({"q", "y"}, 1, {{0, qmax}, {-kmax, kExpInf}});
    for (long k = -kmax; k <= kmax; ++k)
        s.add_term({k * k, k}, (k % 2 == 0) ? 1 : -1);
    return s;
}

/// M(u,p) = prod_{m>=1} (1 - u p^m)^{-m} expanded inside shape's window;
/// u is a monomial in shape's generators and p one of them.
inline TruncSeries macmahon(const TruncSeries& shape, const ExpVec& u_exps,
                            std::size_t p_gen) {
    TruncSeries probe = shape.cleared();
    ExpVec p_unit(probe.gens().size(), 0);
    p_unit[p_gen] = probe.expdenom();
    long mmax = escape_bound(probe, p_unit);
    std::vector<ProductFactor> fs;
    for (long m = 1; m <= mmax; ++m) {
        ExpVec v = u_exps;
        v[p_gen] += m * probe.expdenom();
        fs.push_back({v, m, 1});
    }
    return product_expand(fs, shape);
}

/// M(p) = M(1,p) as a univariate series with q-exponents <= pmax.
inline TruncSeries macmahon_p(long pmax) {
    TruncSeries shape = TruncSeries::zero({"p"}, 1, {{0, pmax}});
    return macmahon(shape, {0}, 0);
}

inline Rational sigma_power(long n, long k) {
    Rational s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) {
            Rational dk = 1;
            for (long i = 0; i < k; ++i) dk *= d;
            s += dk;
        }
    return s;
}

/// E_{2g}(q) = 1 - (4g / B_{2g}) sum_{n>=1} sigma_{2g-1}(n) q^n, g >= 2.
inline TruncSeries eisenstein(long g, long qmax) {
    if (g < 2) throw series_error("eisenstein: weight must be at least 4 (g >= 2)");
    TruncSeries e({"q"}, 1, {{0, qmax}});
    e.add_term({0}, 1);
    Rational c = Rational(-4 * g) / bernoulli(2 * g);
    for (long n = 1; n <= qmax; ++n) e.add_term({n}, c * sigma_power(n, 2 * g - 1));
    return e;
}

/// phi_{-2,1}(q,y) = 1/y (1-y)^2 prod (1-y q^n)^2 (1-1/y q^n)^2 / (1-q^n)^4,
/// the weak Jacobi form of weight -2 and index 1.  Knowledge: q <= qmax,
/// y-exponent <= lmax; y-support bound -(1+qmax) is exact.
inline TruncSeries phi_m21(long qmax, long lmax) {
    if (qmax < 0 || lmax < 1) throw series_error("phi_m21: bad caps");
    // Negative y-degree costs one q per unit beyond the 1/y prefactor, so a
    // margin of qmax+1 y-units makes the boxed product exact up to lmax.
    long hi = lmax + qmax + 1;
    TruncSeries box =
        TruncSeries::zero({"q", "y"}, 1, {{0, qmax}, {-qmax, hi + 1}});
    std::vector<ProductFactor> fs;
    fs.push_back({{0, 1}, -2, 1});  // (1-y)^2
    for (long n = 1; n <= qmax; ++n) {
        fs.push_back({{n, 1}, -2, 1});   // (1-y q^n)^2
        fs.push_back({{n, -1}, -2, 1});  // (1-1/y q^n)^2
        fs.push_back({{n, 0}, 4, 1});    // (1-q^n)^{-4}
    }
    TruncSeries prod = product_expand(fs, box).shifted({0, -1});
    return prod.certified(
        TruncSeries::zero({"q", "y"}, 1, {{0, qmax}, {-1 - qmax, lmax}}));
}

/// Weierstrass function 1/12 + y/(1-y)^2 + sum_{n>=1} sum_{d|n} d (y^d +
/// y^{-d} - 2) q^n with the rational part expanded ascending in y (|y| < 1).
inline TruncSeries weierstrass_p(long qmax, long lmax) {
    if (qmax < 0 || lmax < 1) throw series_error("weierstrass_p: bad caps");
    TruncSeries s({"q", "y"}, 1, {{0, qmax}, {-qmax, lmax}});
    s.add_term({0, 0}, rat(1, 12));
    for (long d = 1; d <= lmax; ++d) s.add_term({0, d}, d);
    for (long n = 1; n <= qmax; ++n)
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) {
                s.add_term({n, d}, d);
                s.add_term({n, -d}, d);
                s.add_term({n, 0}, -2 * d);
            }
    return s;
}

/// phi_{0,1} = 12 phi_{-2,1} wp, the weak Jacobi form of weight 0, index 1.
inline TruncSeries phi_01(long qmax, long lmax) {
    long wide = lmax + qmax + 1;
    TruncSeries p = 12 * (phi_m21(qmax, wide) * weierstrass_p(qmax, wide));
    return p.truncated({{0, qmax}, {-2 * (1 + qmax), lmax}});
}

}  // namespace banana
