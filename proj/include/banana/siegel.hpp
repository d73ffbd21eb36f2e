#pragma once

// Genus-2 Siegel expansions from Jacobi forms: Hecke operators V_m, the
// Maass lift (Hecke-sum and polylog assemblies, asserted equal), the weight
// 2g-2 index-1 forms psi_{2g-2}, the two independent routes to the genus-g
// Gromov-Witten potentials F_g (Maass lift vs the logarithm of the DT
// product), the lambda-expansion identity linking the two coefficient
// families, and the Igusa cusp-form consistency check.

#include <array>
#include <map>
#include <numeric>
#include <vector>

#include "banana/banana_dt.hpp"
#include "banana/qforms.hpp"

namespace banana {

// --------------------------------------------------------------------------
// Domain types.

/// Fourier coefficients of a genus-2 Siegel expansion: coefficient of
/// Q^m q^n y^l with Q = e^{2 pi i sigma}, q = e^{2 pi i tau}, y = e^{2 pi i z}.
/// Stored on the box m <= mmax, n <= nmax, |l| <= lwin (the y-support at
/// fixed (m,n) can be infinite for meromorphic lifts, so a box is essential).
struct SiegelExpansion {
    long weight = 0;
    long mmax = 0, nmax = 0, lwin = 0;
    bool degree0_omitted = false;  // set for the formal weight <= 0 lifts
    std::map<std::array<long, 3>, Rational> coeffs;

    Rational c(long m, long n, long l) const {
        auto it = coeffs.find({m, n, l});
        return it == coeffs.end() ? Rational(0) : it->second;
    }
    void set(long m, long n, long l, const Rational& v) {
        if (v != 0) coeffs[{m, n, l}] = v;
    }
};

/// Truncated Laurent series in lambda with support >= -2; when flagged
/// even-only, all odd coefficients are asserted zero at construction.
struct LambdaSeries {
    long order = 0;  // coefficients known for exponents in [-2, order]
    std::map<long, Rational> coeffs;
    bool even_only = false;

    LambdaSeries() = default;
    LambdaSeries(long ord, std::map<long, Rational> cs, bool even)
        : order(ord), coeffs(std::move(cs)), even_only(even) {
        for (auto it = coeffs.begin(); it != coeffs.end();) {
            if (it->second == 0) {
                it = coeffs.erase(it);
                continue;
            }
            if (it->first < -2)
                throw series_error("LambdaSeries: support below lambda^-2");
            if (it->first > order)
                throw series_error("LambdaSeries: term beyond declared order");
            if (even_only && it->first % 2 != 0)
                throw series_error("LambdaSeries: odd-power term in even-only series");
            ++it;
        }
    }
    Rational c(long e) const {
        if (e > order) throw series_error("LambdaSeries: exponent beyond order");
        auto it = coeffs.find(e);
        return it == coeffs.end() ? Rational(0) : it->second;
    }
};

namespace siegel_detail {

inline Rational rat_pow(const Rational& x, long e) {
    Rational r = 1, b = e < 0 ? Rational(1) / x : x;
    for (long n = e < 0 ? -e : e; n > 0; n >>= 1, b = b * b)
        if (n & 1) r *= b;
    return r;
}

inline Rational factorial(long n) {
    Rational r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

/// Smallest discriminant carrying a nonzero coefficient (0 for empty tables;
/// only the value's use as a vanishing cutoff matters).
inline long min_disc(const JacobiCoeffs& phi) {
    long d = 0;
    for (const auto& [nl, c] : phi.coeffs)
        if (c != 0) d = std::min(d, 4 * nl.first - nl.second * nl.second);
    return d;
}

/// c_phi(n', l') looked up through the index-1 discriminant law, with
/// out-of-range discriminants resolved to zero / errors explicitly.
inline Rational coeff_by_disc(const JacobiCoeffs& phi, long dmin, long disc) {
    if (disc < dmin) return 0;
    if (disc > 4 * phi.nmax)
        throw series_error("hecke_v: input table window insufficient");
    return phi.by_disc(disc);
}

}  // namespace siegel_detail

// --------------------------------------------------------------------------
// Hecke operators and the Maass lift.

/// m-th Hecke operator on an index-1 weak Jacobi form of even weight k:
///   (phi|V_m) = sum_{n,r} sum_{d | (n,r,m)} d^{k-1} c_phi(nm/d^2, r/d) q^n y^r
/// for m > 0, and for m = 0
///   (phi|V_0) = c_phi(0,0)(-B_k/2k)
///             + sum_{n >= 0, r (r>0 if n=0)} sum_{d | (n,r)} d^{k-1} c_phi(0, r/d).
/// The output is stored on the box n <= ncap, |r| <= rcap (the m = 0 row has
/// infinite y-support).  For weight <= 0 the m = 0 constant is omitted.
inline JacobiCoeffs hecke_v(const JacobiCoeffs& phi, long m, long ncap, long rcap) {
    if (phi.index != 1) throw series_error("hecke_v: input must have index 1");
    if (phi.weight % 2 != 0) throw series_error("hecke_v: weight must be even");
    const long k = phi.weight;
    const long dmin = siegel_detail::min_disc(phi);
    JacobiCoeffs out{k, m, ncap, {}};
    for (long n = 0; n <= ncap; ++n)
        for (long r = -rcap; r <= rcap; ++r) {
            Rational s = 0;
            if (m > 0) {
                for (long d = 1; d <= m; ++d) {
                    if (m % d || n % d || r % d) continue;
                    long nn = n * m / (d * d), rr = r / d;
                    s += siegel_detail::rat_pow(d, k - 1) *
                         siegel_detail::coeff_by_disc(phi, dmin, 4 * nn - rr * rr);
                }
            } else {
                if (n == 0 && r <= 0) continue;
                long g = n == 0 ? (r > 0 ? r : -r) : (r == 0 ? n : std::gcd(n, r < 0 ? -r : r));
                for (long d = 1; d <= g; ++d) {
                    if (g % d) continue;
                    long rr = r / d;
                    s += siegel_detail::rat_pow(d, k - 1) *
                         siegel_detail::coeff_by_disc(phi, dmin, -rr * rr);
                }
            }
            if (s != 0) out.coeffs[{n, r}] = s;
        }
    if (m == 0 && k > 0)
        out.coeffs[{0, 0}] = phi.c(0, 0) * (-bernoulli(k)) / (2 * k);
    return out;
}

/// Maass lift ML(phi) = sum_m (phi|V_m) Q^m, assembled twice — the Hecke sum
/// above and the polylog form
///   ML(phi) = c_phi(0)(-B_k/2k)
///           + sum_{n,m >= 0; l, l>0 if (n,m)=(0,0)} c_phi(4nm-l^2) Li_{1-k}(Q^m q^n y^l)
/// — and asserted equal on the whole stored box.  Exchange symmetry
/// coeff(m,n,l) = coeff(n,m,l) is asserted too.  For weight <= 0 the
/// degree-0 constant is omitted and flagged.
inline SiegelExpansion maass_lift(const JacobiCoeffs& phi, long mmax, long nmax,
                                  long lwin) {
    const long k = phi.weight;
    if (phi.nmax < mmax * nmax)
        throw series_error("maass_lift: input table window insufficient");
    SiegelExpansion se;
    se.weight = k;
    se.mmax = mmax;
    se.nmax = nmax;
    se.lwin = lwin;
    se.degree0_omitted = (k <= 0);
    for (long m = 0; m <= mmax; ++m) {
        JacobiCoeffs vm = hecke_v(phi, m, nmax, lwin);
        for (const auto& [nr, c] : vm.coeffs) se.set(m, nr.first, nr.second, c);
    }

    // Independent polylog assembly on the same box.
    const long dmin = siegel_detail::min_disc(phi);
    std::map<std::array<long, 3>, Rational> poly;
    if (k > 0) {
        Rational c0 = siegel_detail::coeff_by_disc(phi, dmin, 0) * (-bernoulli(k)) /
                      (2 * k);
        if (c0 != 0) poly[{0, 0, 0}] = c0;
    }
    for (long m0 = 0; m0 <= mmax; ++m0)
        for (long n0 = 0; n0 <= nmax; ++n0) {
            long lbound = dt_detail::isqrt_ceil(std::max(0L, 4 * n0 * m0 - dmin)) + 1;
            for (long l0 = -lbound; l0 <= lbound; ++l0) {
                if (m0 == 0 && n0 == 0 && l0 <= 0) continue;
                Rational cphi =
                    siegel_detail::coeff_by_disc(phi, dmin, 4 * n0 * m0 - l0 * l0);
                if (cphi == 0) continue;
                for (long j = 1;; ++j) {
                    long m = j * m0, n = j * n0, l = j * l0;
                    if (m > mmax || n > nmax) break;
                    if (l > lwin || l < -lwin) {
                        if (m0 == 0 && n0 == 0) break;
                        continue;
                    }
                    poly[{m, n, l}] += cphi * siegel_detail::rat_pow(j, k - 1);
                    if (m0 == 0 && n0 == 0 && l0 == 0) break;  // unreachable
                }
            }
        }
    for (auto it = poly.begin(); it != poly.end();)
        it = it->second == 0 ? poly.erase(it) : std::next(it);
    if (poly != se.coeffs)
        throw series_error("maass_lift: Hecke-sum and polylog routes disagree");
    for (const auto& [mnl, c] : se.coeffs)
        if (mnl[1] <= mmax && mnl[0] <= nmax && se.c(mnl[1], mnl[0], mnl[2]) != c)
            throw series_error("maass_lift: exchange symmetry violated");
    return se;
}

// --------------------------------------------------------------------------
// The weight 2g-2 index-1 Jacobi forms psi_{2g-2}.

/// psi_{2g-2} = phi_{-2,1} * { 1 (g=0); wp (g=1); |B_2g|/(2g(2g-2)!) E_2g (g>1) },
/// the lambda^{2g-2} coefficient of the equivariant elliptic genus of C^2 at
/// t = e^{i lambda}.  Table complete for all q-exponents <= nmax.
inline JacobiCoeffs psi(long g, long nmax) {
    if (g < 0 || nmax < 0) throw series_error("psi: bad arguments");
    long ywin = dt_detail::isqrt_ceil(4 * nmax + 2) + 1;
    if (g == 0)
        return jacobi_from_series(phi_m21(nmax, ywin), -2, 1, nmax);
    if (g == 1)
        return jacobi_from_series(rat(1, 12) * phi_01(nmax, ywin), 0, 1, nmax);
    TruncSeries p = phi_m21(nmax, ywin);
    TruncSeries e = eisenstein(g, nmax);
    Rational a = bernoulli(2 * g);
    if (a < 0) a = -a;
    a /= Rational(2 * g) * siegel_detail::factorial(2 * g - 2);
    TruncSeries out({"q", "y"}, 1, {p.windows()[0], p.windows()[1]});
    for (const auto& [qe, c] : p.terms())
        for (long n2 = 0; qe[0] + n2 <= nmax; ++n2) {
            Rational ec = e.coeff({n2});
            if (ec != 0) out.add_term({qe[0] + n2, qe[1]}, a * c * ec);
        }
    return jacobi_from_series(out, 2 * g - 2, 1, nmax);
}

// --------------------------------------------------------------------------
// The lambda expansion of the table rows.

/// Expansion of sum_k c(a,k) t^k at t = e^{i lambda}: the row rational is
/// N_a(t) t/(1-t)^2 and t/(1-t)^2|_{t=e^{i lambda}} = -1/(2-2cos lambda), so
/// the result is -N_a(e^{i lambda})/(2 - 2 cos lambda).  Computed over the
/// rationals with i adjoined formally; the imaginary part and all odd powers
/// are asserted to vanish.  Exact through lambda^order.
inline LambdaSeries lambda_row(const CRow& row, long order) {
    if (order < -2) throw series_error("lambda_row: order below -2");
    long top = order + 2;
    // kernel: 2 - 2cos(lambda) = lambda^2 * u(lambda), u(0) = 1
    TruncSeries u({"lam"}, 1, {{0, top}});
    for (long j = 0; 2 * j <= top; ++j)
        u.add_term({2 * j}, 2 * siegel_detail::rat_pow(-1, j) /
                                siegel_detail::factorial(2 * j + 2));
    TruncSeries ker = u.invert_ascending();  // 1/u; the lambda^-2 shift is applied below

    // N_a(e^{i lambda}) with i formal: re + i*im
    TruncSeries re({"lam"}, 1, {{0, top}}), im = re;
    for (const auto& [j, nj] : row.numerator)
        for (long t = 0; t <= top; ++t) {
            Rational term = nj * siegel_detail::rat_pow(j, t) /
                            siegel_detail::factorial(t);
            switch (t % 4) {
                case 0: re.add_term({t}, term); break;
                case 1: im.add_term({t}, term); break;
                case 2: re.add_term({t}, -term); break;
                case 3: im.add_term({t}, -term); break;
            }
        }
    if (!im.is_zero())
        throw series_error("lambda_row: imaginary part does not vanish");
    TruncSeries prod = Rational(-1) * (re * ker);
    std::map<long, Rational> cs;
    for (const auto& [e, c] : prod.terms())
        if (e[0] - 2 <= order) cs[e[0] - 2] = c;
    return LambdaSeries(order, std::move(cs), true);
}

// --------------------------------------------------------------------------
// Eq-style coefficient identity: lambda vs t expansions of the same row.

struct EqA1Report {
    bool ok = true;
    long first_bad = 0;  // lambda exponent of the first mismatch
    Rational lhs, rhs;
};

/// Checks sum_g c_{2g-2}(d) lambda^{2g-2} = sum_l c(d,l) e^{i l lambda}
/// through lambda^order: the left side from the psi tables, the right side
/// as the lambda expansion of the d-th table row's rational function.
inline EqA1Report eq_a1_check(long d, long order) {
    if (d < -1) throw series_error("eq_a1_check: d must be >= -1");
    CoeffTable tab = c_table(std::max(d, 0L));
    LambdaSeries rhs = lambda_row(tab.row(d), order);
    long nmax = (d + 1) / 4 + 1;
    bool lattice = ((d % 4) + 4) % 4 == 0 || ((d % 4) + 4) % 4 == 3;
    for (long e = -2; e <= order; ++e) {
        if (e % 2 != 0) continue;  // rhs asserted even-only
        Rational left =
            lattice ? siegel_detail::coeff_by_disc(psi(e / 2 + 1, nmax), -1, d)
                    : Rational(0);
        if (left != rhs.c(e)) return {false, e, left, rhs.c(e)};
    }
    return {};
}

// --------------------------------------------------------------------------
// Route 1: F_g as a Maass lift.

/// F_g = 12 ML(psi_{2g-2}); for g >= 2 this includes the degree-0 constant
/// 12 c_{2g-2}(0)(-B_{2g-2}/(4g-4)).  For g in {0,1} the lift is formal: the
/// unstable degree-0 constant is omitted and flagged.
inline SiegelExpansion fg_route_lift(long g, long mmax, long nmax, long lwin) {
    SiegelExpansion se = maass_lift(psi(g, std::max(1L, mmax * nmax)), mmax, nmax, lwin);
    for (auto& [mnl, c] : se.coeffs) c *= 12;
    return se;
}

// --------------------------------------------------------------------------
// Route 2: F_g from the logarithm of the DT product.

namespace siegel_detail {

/// Q-monomial rows of log(Z/Z|_{Q=0}) for the DT product with 12 fibers:
/// complete for d in the box (d1,d2,d3) <= (d1max,d2max,d3max) and all
/// p-exponents <= pwin (negative side complete automatically).
inline std::map<std::array<long, 3>, LaurentPoly> dt_log_rows(const CoeffTable& tab,
                                                              long d1max, long d2max,
                                                              long d3max, long pwin) {
    std::map<std::array<long, 3>, LaurentPoly> rows;
    for (long d1 = 0; d1 <= d1max; ++d1)
        for (long d2 = 0; d2 <= d2max; ++d2)
            for (long d3 = 0; d3 <= d3max; ++d3) {
                if (d1 + d2 + d3 == 0) continue;
                long a = CurveClass{{d1, d2, d3}}.norm();
                if (a < -1) continue;
                const CRow& r = tab.row(a);
                if (r.is_zero()) continue;
                for (long j = 1; j * d1 <= d1max && j * d2 <= d2max && j * d3 <= d3max;
                     ++j)
                    for (long k = r.k_min(); j * k <= pwin; ++k) {
                        Rational c = r.c(k);
                        if (c != 0) rows[{j * d1, j * d2, j * d3}][j * k] += 12 * c / j;
                    }
            }
    for (auto& [d, row] : rows)
        for (auto it = row.begin(); it != row.end();)
            it = it->second == 0 ? row.erase(it) : std::next(it);
    return rows;
}

/// The multi-cover form a row must take: sum_{r | gcd(d)} (12/r) row_{||d/r||}(p^r),
/// materialized for p-exponents <= pwin.
inline LaurentPoly claimed_row(const CoeffTable& tab, std::array<long, 3> d,
                               long pwin) {
    long g = std::gcd(std::gcd(d[0], d[1]), d[2]);
    LaurentPoly out;
    for (long r = 1; r <= g; ++r) {
        if (g % r) continue;
        long a = CurveClass{{d[0] / r, d[1] / r, d[2] / r}}.norm();
        if (a < -1) continue;
        const CRow& base = tab.row(a);
        if (base.is_zero()) continue;
        for (long k = base.k_min(); r * k <= pwin; ++k) {
            Rational c = base.c(k);
            if (c != 0) out[r * k] += Rational(12) / r * c;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace siegel_detail

/// Cross-check of the formal log against the expanded DT series at desk
/// scale: expands Z = z_banana_product on the total-degree-dmax simplex,
/// divides by the degree-0 slice, takes the Q-nilpotent logarithm row by row
/// with exact Laurent-polynomial arithmetic in p, and compares with
/// dt_log_rows.  Throws on any mismatch.
inline void dt_log_consistency_check(long dmax, long pwin) {
    if (dmax > 3) throw series_error("dt_log_consistency_check: desk scale only");
    // Knowledge margin: each multiplication by a W-row (p-support bounded
    // below by plo) loses |plo| of top knowledge; W^dmax needs dmax-1 of them.
    long amax = 0;  // over the full cube: dt_log_rows consults cube classes
    for (long d1 = 0; d1 <= dmax; ++d1)
        for (long d2 = 0; d2 <= dmax; ++d2)
            for (long d3 = 0; d3 <= dmax; ++d3)
                amax = std::max(amax, CurveClass{{d1, d2, d3}}.norm());
    CoeffTable tab = c_table(amax);
    long kneg = 0;
    for (const auto& [a, r] : tab.rows) kneg = std::min(kneg, r.k_min());
    long plo = dmax * kneg;
    long top = pwin + (dmax - 1) * (-plo);

    TruncSeries z = z_banana_product(dmax, top);
    auto zrows = z.rows_by({"Q1", "Q2", "Q3"});
    // ascending inverse of the degree-0 slice (unit constant term)
    const TruncSeries& z0 = zrows.at({0, 0, 0});
    std::vector<Rational> inv(static_cast<std::size_t>(top) + 1);
    inv[0] = 1;
    for (long n = 1; n <= top; ++n) {
        Rational s = 0;
        for (long j = 1; j <= n; ++j) s += z0.coeff({j}) * inv[static_cast<std::size_t>(n - j)];
        inv[static_cast<std::size_t>(n)] = -s;
    }
    // W rows: w_d = row_d * inv(z0), d != 0; knowledge to `top`
    std::map<std::array<long, 3>, LaurentPoly> w;
    for (const auto& [e, row] : zrows) {
        if (e[0] + e[1] + e[2] == 0) continue;
        LaurentPoly& out = w[{e[0], e[1], e[2]}];
        for (const auto& [pe, c] : row.terms())
            for (long j = 0; pe[0] + j <= top; ++j) {
                Rational v = c * inv[static_cast<std::size_t>(j)];
                if (v != 0) out[pe[0] + j] += v;
            }
    }
    // log(1+W) = sum_{j<=dmax} (-1)^{j-1} W^j / j, graded by total Q-degree
    auto convolve = [&](const std::map<std::array<long, 3>, LaurentPoly>& a,
                        const std::map<std::array<long, 3>, LaurentPoly>& b) {
        std::map<std::array<long, 3>, LaurentPoly> out;
        for (const auto& [da, ra] : a)
            for (const auto& [db, rb] : b) {
                std::array<long, 3> d{da[0] + db[0], da[1] + db[1], da[2] + db[2]};
                if (d[0] + d[1] + d[2] > dmax) continue;
                LaurentPoly& o = out[d];
                for (const auto& [ea, ca] : ra)
                    for (const auto& [eb, cb] : rb) o[ea + eb] += ca * cb;
            }
        return out;
    };
    std::map<std::array<long, 3>, LaurentPoly> logrows, wpow = w;
    Rational sign = 1;
    for (long j = 1; j <= dmax; ++j) {
        for (const auto& [d, row] : wpow)
            for (const auto& [e, c] : row) logrows[d][e] += sign * c / j;
        if (j < dmax) wpow = convolve(wpow, w);
        sign = -sign;
    }

    auto formal = siegel_detail::dt_log_rows(tab, dmax, dmax, dmax, pwin);
    for (long d1 = 0; d1 <= dmax; ++d1)
        for (long d2 = 0; d1 + d2 <= dmax; ++d2)
            for (long d3 = 0; d1 + d2 + d3 <= dmax; ++d3) {
                if (d1 + d2 + d3 == 0) continue;
                std::array<long, 3> d{d1, d2, d3};
                const LaurentPoly* got = logrows.count(d) ? &logrows.at(d) : nullptr;
                const LaurentPoly* want = formal.count(d) ? &formal.at(d) : nullptr;
                for (long e = plo; e <= pwin; ++e) {
                    Rational x = got && got->count(e) ? got->at(e) : Rational(0);
                    Rational y = want && want->count(e) ? want->at(e) : Rational(0);
                    if (x != y)
                        throw series_error(
                            "dt_log_consistency_check: series log disagrees with the "
                            "formal log");
                }
            }
}

/// F_g from the DT side, never consulting psi: the log of the DT partition
/// function is regrouped into Q-monomial p-rows, each row is recognized
/// against its claimed multi-cover rational form (error on mismatch), the
/// recognized form is lambda-expanded at p = e^{i lambda} and the
/// lambda^{2g-2} coefficient collected; finally (Q1,Q2,Q3) is re-expressed
/// through Q1 = y, Q2 = q/y, Q3 = Q/y, i.e. the coefficient of Q^m q^n y^l is
/// the class (d1,d2,d3) = (n+l+m, n, m).  For g >= 2 the degree-0 constant
/// 12 (-B_{2g-2}/(4g-4)) (-|B_2g|/(g(2g-2)!)) is added at (0,0,0).
inline SiegelExpansion fg_route_dt(long g, long mmax, long nmax, long lwin) {
    if (g < 2) throw series_error("fg_route_dt: g must be >= 2");
    long d1max = nmax + mmax + lwin, d2max = nmax, d3max = mmax;
    long amax = 0;
    for (long d1 = 0; d1 <= d1max; ++d1)
        for (long d2 = 0; d2 <= d2max; ++d2)
            for (long d3 = 0; d3 <= d3max; ++d3)
                amax = std::max(amax, CurveClass{{d1, d2, d3}}.norm());
    CoeffTable tab = c_table(amax);
    long kneg = 0;
    for (const auto& [a, r] : tab.rows) kneg = std::min(kneg, r.k_min());
    long pwin = -kneg + 6;

    // Recognition: every computed row must equal its multi-cover form.
    auto rows = siegel_detail::dt_log_rows(tab, d1max, d2max, d3max, pwin);
    for (long d1 = 0; d1 <= d1max; ++d1)
        for (long d2 = 0; d2 <= d2max; ++d2)
            for (long d3 = 0; d3 <= d3max; ++d3) {
                if (d1 + d2 + d3 == 0) continue;
                std::array<long, 3> d{d1, d2, d3};
                LaurentPoly want = siegel_detail::claimed_row(tab, d, pwin);
                LaurentPoly got = rows.count(d) ? rows.at(d) : LaurentPoly{};
                if (got != want)
                    throw series_error("fg_route_dt: row recognition failed");
            }

    // lambda-expansion of the recognized forms.
    std::map<long, LambdaSeries> lam;  // per table row a
    auto lam_of = [&](long a) -> const LambdaSeries& {
        auto it = lam.find(a);
        if (it == lam.end())
            it = lam.emplace(a, lambda_row(tab.row(a), 2 * g - 2)).first;
        return it->second;
    };
    SiegelExpansion se;
    se.weight = 2 * g - 2;
    se.mmax = mmax;
    se.nmax = nmax;
    se.lwin = lwin;
    for (long m = 0; m <= mmax; ++m)
        for (long n = 0; n <= nmax; ++n)
            for (long l = -lwin; l <= lwin; ++l) {
                long d1 = n + l + m;
                if (d1 < 0 || (d1 == 0 && n == 0 && m == 0)) continue;
                long gc = std::gcd(std::gcd(d1, n), m);
                Rational v = 0;
                for (long r = 1; r <= gc; ++r) {
                    if (gc % r) continue;
                    long a = CurveClass{{d1 / r, n / r, m / r}}.norm();
                    if (a < -1) continue;
                    // (12/r) * [lambda^{2g-2}] Lambda_a(r*lambda)
                    v += Rational(12) / r * siegel_detail::rat_pow(r, 2 * g - 2) *
                         lam_of(a).c(2 * g - 2);
                }
                se.set(m, n, l, v);
            }
    Rational b2g = bernoulli(2 * g);
    if (b2g < 0) b2g = -b2g;
    se.set(0, 0, 0,
           se.c(0, 0, 0) + Rational(12) * (-bernoulli(2 * g - 2) / (4 * g - 4)) *
                               (-b2g / (Rational(g) * siegel_detail::factorial(2 * g - 2))));
    return se;
}

/// Closed form for the degree-0 constant F_g(0,0,0), g >= 2.
inline Rational fg_constant(long g) {
    Rational b2g = bernoulli(2 * g);
    if (b2g < 0) b2g = -b2g;
    return Rational(12) * bernoulli(2 * g - 2) * b2g /
           (Rational(g) * (4 * g - 4) * siegel_detail::factorial(2 * g - 2));
}

// --------------------------------------------------------------------------
// Igusa cusp forms and the weight-12 identity (optional tier).

namespace siegel_detail {

/// Solve for the cusp line (all coefficients with 4n - l^2 <= 0 vanish) in
/// the span of the given index-1 Jacobi forms; the result is normalized so
/// its lowest-discriminant coefficient is 1.  Requires a 1-dimensional
/// solution space.
inline JacobiCoeffs cusp_combination(const std::vector<JacobiCoeffs>& basis,
                                     long weight, long nmax) {
    // conditions: c(disc) = 0 for disc in {-1, 0}
    std::vector<std::array<Rational, 2>> cond;
    for (const auto& b : basis) cond.push_back({b.by_disc(-1), b.by_disc(0)});
    // null space of the 2 x n matrix by exact elimination
    std::size_t n = basis.size();
    std::vector<Rational> sol(n, 0);
    bool found = false;
    // try all ways of expressing one basis vector through the others
    for (std::size_t free_i = 0; free_i < n && !found; ++free_i) {
        // set coefficient free_i = 1, solve the 2x(n-1) system for the rest
        std::vector<std::size_t> others;
        for (std::size_t i = 0; i < n; ++i)
            if (i != free_i) others.push_back(i);
        if (others.size() != 2) continue;
        Rational a00 = cond[others[0]][0], a01 = cond[others[1]][0];
        Rational a10 = cond[others[0]][1], a11 = cond[others[1]][1];
        Rational det = a00 * a11 - a01 * a10;
        if (det == 0) continue;
        Rational b0 = -cond[free_i][0], b1 = -cond[free_i][1];
        sol[free_i] = 1;
        sol[others[0]] = (b0 * a11 - a01 * b1) / det;
        sol[others[1]] = (a00 * b1 - b0 * a10) / det;
        found = true;
    }
    if (!found) throw series_error("cusp_combination: no cusp line found");
    JacobiCoeffs out{weight, 1, nmax, {}};
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [nl, c] : basis[i].coeffs) out.coeffs[{nl.first, nl.second}] += sol[i] * c;
    for (auto it = out.coeffs.begin(); it != out.coeffs.end();)
        it = it->second == 0 ? out.coeffs.erase(it) : std::next(it);
    // cusp check + normalization by the lowest-discriminant coefficient
    long best = kExpInf;
    for (const auto& [nl, c] : out.coeffs) {
        long disc = 4 * nl.first - nl.second * nl.second;
        if (disc <= 0) throw series_error("cusp_combination: not a cusp form");
        best = std::min(best, disc);
    }
    if (best == kExpInf) throw series_error("cusp_combination: zero form");
    Rational lead = out.by_disc(best);
    for (auto& [nl, c] : out.coeffs) c /= lead;
    return out;
}

/// phi_{-2,1} (or phi_{0,1}) times a weight-w modular form, as a JacobiCoeffs
/// table complete for q <= nmax.
inline JacobiCoeffs jacobi_times_modular(const TruncSeries& jac, long jweight,
                                         const TruncSeries& mod, long mweight,
                                         long nmax) {
    TruncSeries out({"q", "y"}, 1, {jac.windows()[0], jac.windows()[1]});
    for (const auto& [e, c] : jac.terms())
        for (long n2 = 0; e[0] + n2 <= nmax; ++n2) {
            Rational mc = mod.coeff({n2});
            if (mc != 0) out.add_term({e[0] + n2, e[1]}, c * mc);
        }
    return jacobi_from_series(out, jweight + mweight, 1, nmax);
}

}  // namespace siegel_detail

struct IgusaReport {
    bool ok = true;
    Rational kappa;            // calibration constant in 240 F2 chi10 = kappa chi12
    long weight_sum = 0;       // weight of F2 chi10 (should be 12)
    std::array<long, 3> bad{};  // first mismatching (m,n,l) when !ok
};

/// Builds the weight-10 and weight-12 index-1 Jacobi cusp forms by solving
/// for the cusp combinations in span{phi_{-2,1} M_12, phi_{0,1} M_10} and
/// span{phi_{-2,1} M_14, phi_{0,1} M_12}, lifts them to chi10 and chi12, and
/// verifies 240 F2 chi10 = kappa chi12 with one constant kappa on the box
/// m,n <= cap.  The kappa found is reported, not assumed.
inline IgusaReport igusa_check(long cap) {
    long nbig = cap * cap;
    long ywide = dt_detail::isqrt_ceil(4 * nbig + 2) + 1;
    TruncSeries pm2 = phi_m21(nbig, ywide);
    TruncSeries p0 = phi_01(nbig, ywide);
    TruncSeries e4 = eisenstein(2, nbig), e6 = eisenstein(3, nbig);
    // weight-10: E4 E6; weight-12: E4^3 and E6^2; weight-14: E4^2 E6
    TruncSeries e8 = e4 * e4;
    TruncSeries e10 = e4 * e6;
    TruncSeries e12a = e8 * e4;
    TruncSeries e12b = e6 * e6;
    TruncSeries e14 = e8 * e6;

    using siegel_detail::jacobi_times_modular;
    JacobiCoeffs cusp10 = siegel_detail::cusp_combination(
        {jacobi_times_modular(pm2, -2, e12a, 12, nbig),
         jacobi_times_modular(pm2, -2, e12b, 12, nbig),
         jacobi_times_modular(p0, 0, e10, 10, nbig)},
        10, nbig);
    JacobiCoeffs cusp12 = siegel_detail::cusp_combination(
        {jacobi_times_modular(pm2, -2, e14, 14, nbig),
         jacobi_times_modular(p0, 0, e12a, 12, nbig),
         jacobi_times_modular(p0, 0, e12b, 12, nbig)},
        12, nbig);

    long lbox = dt_detail::isqrt_ceil(4 * cap * cap + 2) + 1;
    long lwide = 2 * lbox + 2;  // F2 window wide enough for the product below
    SiegelExpansion chi10 = maass_lift(cusp10, cap, cap, lwide);
    SiegelExpansion chi12 = maass_lift(cusp12, cap, cap, lbox);
    SiegelExpansion f2 = fg_route_lift(2, cap, cap, lwide + lbox);

    IgusaReport rep;
    rep.weight_sum = f2.weight + chi10.weight;
    // product (240 F2) * chi10 on the box m,n <= cap, |l| <= lbox
    auto prod_at = [&](long m, long n, long l) {
        Rational s = 0;
        for (const auto& [mnl, c] : chi10.coeffs) {
            if (mnl[0] > m || mnl[1] > n) continue;
            long lf = l - mnl[2];
            if (lf < -(lwide + lbox) || lf > lwide + lbox) continue;
            s += c * f2.c(m - mnl[0], n - mnl[1], lf);
        }
        return Rational(240 * s);
    };
    // calibrate kappa on the first nonzero chi12 coefficient
    bool have_kappa = false;
    for (long m = 0; m <= cap && !have_kappa; ++m)
        for (long n = 0; n <= cap && !have_kappa; ++n)
            for (long l = -lbox; l <= lbox && !have_kappa; ++l)
                if (chi12.c(m, n, l) != 0) {
                    rep.kappa = prod_at(m, n, l) / chi12.c(m, n, l);
                    have_kappa = true;
                }
    if (!have_kappa) throw series_error("igusa_check: chi12 vanished on the box");
    for (long m = 0; m <= cap; ++m)
        for (long n = 0; n <= cap; ++n)
            for (long l = -lbox; l <= lbox; ++l)
                if (prod_at(m, n, l) != rep.kappa * chi12.c(m, n, l))
                    return {false, rep.kappa, rep.weight_sum, {m, n, l}};
    return rep;
}

}  // namespace banana
