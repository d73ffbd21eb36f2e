// Acceptance gate: one pass/fail line per criterion, exact arithmetic
// throughout (tolerance zero).  Criterion 13 is informative only and does not
// gate the exit code.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "banana/gv.hpp"
#include "banana/siegel.hpp"
#include "banana/vertex.hpp"

using namespace banana;

namespace {

int failures = 0;

void run(int id, const std::string& name, const std::function<bool()>& body,
         bool gating = true) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string err;
    try {
        ok = body();
    } catch (const std::exception& e) {
        err = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
    std::printf("%s %2d %s (%.2fs)%s%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                secs, gating ? "" : " [non-gating]", err.empty() ? "" : " error: ",
                err.c_str());
    std::fflush(stdout);
    if (!ok && gating) ++failures;
}

bool eq_rows(const GVTable& t, long a, const std::vector<long>& want) {
    if (t.gmax(a) != static_cast<long>(want.size()) - 1) return false;
    for (long g = 0; g < static_cast<long>(want.size()); ++g)
        if (t.n(a, g) != 12 * want[static_cast<std::size_t>(g)]) return false;
    return true;
}

const std::vector<std::vector<long>> kGolden4nm1 = {
    {1},
    {8, -6, 1},
    {39, -46, 17, -2},
    {152, -242, 139, -34, 3},
    {513, -1024, 800, -304, 56, -4},
    {1560, -3730, 3683, -1912, 548, -82, 5},
};
const std::vector<std::vector<long>> kGolden4n = {
    {-2, 1},
    {-12, 10, -2},
    {-56, 72, -30, 4},
    {-208, 352, -220, 60, -6},
    {-684, 1434, -1194, 492, -100, 8},
    {-2032, 5056, -5252, 2908, -902, 148, -10},
};

}  // namespace

int main() {
    // Shared heavyweight artifacts (built once, timed inside their criteria).
    TruncSeries fiber_sum({"x"}, 1, {{0, 0}});
    TruncSeries fiber_prod({"x"}, 1, {{0, 0}});

    run(1, "closed_rows", [] {
        CoeffTable tab = c_table(20, 20);  // theta route asserted internally
        for (long k = 1; k <= 20; ++k)
            if (tab.c(-1, k) != -k || tab.c(0, k) != 2 * k) return false;
        return tab.c(0, 0) == 1 && tab.c(-1, 0) == 0 && tab.c(-1, -2) == 0 &&
               tab.c(0, -1) == 0;
    });

    run(2, "three_route_ctable", [] {
        // delta assembly vs theta ratio (asserted inside c_table) vs the
        // elliptic-genus regroup, on a window re-checked 3 higher.
        for (long kwin : {9L, 12L}) {
            CoeffTable tab = c_table(12, kwin);
            auto rows = ell_c2_rows(3, kwin);
            for (const auto& [a, row] : rows) {
                if (a > 12) continue;
                const CRow& r = tab.row(a);
                for (long k = std::min(r.k_min(), -4L); k <= kwin; ++k) {
                    Rational got = row.count(k) ? row.at(k) : Rational(0);
                    if (got != r.c(k)) return false;
                }
            }
            for (const auto& [a, r] : tab.rows)
                if (!r.is_zero() && !rows.count(a)) return false;
        }
        return true;
    });

    run(3, "dmvv_desk_scale", [] {
        const long qmax = 3, ywin = 4, mmax = 3;
        for (long kwin : {5L, 8L}) {  // stabilized t-window: re-run higher
            TruncSeries prod = hilb_ell_product(mmax, qmax, ywin, kwin);
            auto slices = prod.rows_by({"Q"});
            for (long m = 1; m <= mmax; ++m) {
                TruncSeries loc = hilb_ell_localization(m, qmax, ywin, kwin);
                const TruncSeries& s = slices.at({m});
                long tlo = std::max(s.windows()[2].lo, loc.windows()[2].lo);
                for (long n = 0; n <= qmax; ++n)
                    for (long l = -ywin; l <= ywin; ++l)
                        for (long k = tlo; k <= kwin; ++k)
                            if (s.coeff({n, l, k}) != loc.coeff({n, l, k}))
                                return false;
            }
        }
        return true;
    });

    run(4, "vertex_oracle", [] {
        const long pmax = 8;
        std::vector<Partition> small = enumerate_partitions(2);
        for (const auto& r1 : small)
            for (const auto& r2 : small)
                for (const auto& r3 : small) {
                    TruncSeries vt = vertex_orv(r1, r2, r3, pmax + 6);
                    TruncSeries viaorv =
                        vertex_normalized_to_full(r1, r2, r3, vt, pmax);
                    TruncSeries brute =
                        vertex_bruteforce(r1, r2, r3, pmax).rescaled(2);
                    if (!agree_on_common_window(viaorv, brute)) return false;
                }
        return true;
    });

    run(5, "hook_identities", [] {
        for (const Partition& r :
             {Partition{}, Partition{1}, Partition{2}, Partition{1, 1},
              Partition{2, 1}, Partition{3, 1}}) {
            HookCheckReport rep = hook_lemma_check(r, 3, 8);
            if (!rep.ok) return false;
        }
        return true;
    });

    run(6, "fiber_sum_equals_product", [&] {
        const long dmax = 3, pwin = 4;
        fiber_sum = banana_fiber_sum(dmax, pwin);
        fiber_prod = z_fiber_product(dmax, pwin);
        long plo =
            std::max(fiber_sum.windows()[3].lo, fiber_prod.windows()[3].lo);
        auto a = fiber_prod.rows_by({"Q1", "Q2", "Q3"});
        auto b = fiber_sum.rows_by({"Q1", "Q2", "Q3"});
        for (long d1 = 0; d1 <= dmax; ++d1)
            for (long d2 = 0; d1 + d2 <= dmax; ++d2)
                for (long d3 = 0; d1 + d2 + d3 <= dmax; ++d3) {
                    ExpVec q{d1, d2, d3};
                    for (long n = plo; n <= pwin; ++n) {
                        Rational x = a.count(q) ? a.at(q).coeff({n}) : Rational(0);
                        Rational y = b.count(q) ? b.at(q).coeff({n}) : Rational(0);
                        if (x != y) return false;
                    }
                }
        return true;
    });

    run(7, "golden_gv_tables", [] {
        GVTable t = gv_banana_table(20);
        for (std::size_t n = 0; n < kGolden4nm1.size(); ++n)
            if (!eq_rows(t, 4 * static_cast<long>(n) - 1, kGolden4nm1[n]))
                return false;
        for (std::size_t n = 0; n < kGolden4n.size(); ++n)
            if (!eq_rows(t, 4 * static_cast<long>(n), kGolden4n[n])) return false;
        return true;
    });

    run(8, "gv_route_equivalence", [] {
        return gv_banana_table(20).entries == gv_genfun_table(20).entries;
    });

    run(9, "gv_divisibility_and_support", [] {
        GVTable t = gv_banana_table(20);
        if (t.entries.empty()) return false;
        for (const auto& [ag, v] : t.entries) {
            if (!is_integer(v / 12)) return false;
            long r = ((ag.first % 4) + 4) % 4;
            if (r != 0 && r != 3) return false;
        }
        return true;
    });

    run(10, "fiber_sum_norm_dependence", [&] {
        // The connected (log, multi-cover-stripped) rows of the brute-force
        // fixed-point sum agree across all Q-monomials of equal quadratic
        // norm, total degree <= 3.  The raw partition-function coefficients
        // do NOT share this property (the exponential mixes lower classes);
        // the norm-dependence lives at the connected level, where it pairs
        // the genuinely different classes (1,0,0) and (2,1,0), both norm -1.
        struct PRow {
            std::map<long, Rational> c;
            long hi = 0;  // certified through this exponent
            long lo() const { return c.empty() ? hi : c.begin()->first; }
        };
        auto cleaned = [](PRow r) {
            for (auto it = r.c.begin(); it != r.c.end();)
                it = (it->second == 0 || it->first > r.hi) ? r.c.erase(it) : ++it;
            return r;
        };
        auto conv = [&](const PRow& a, const PRow& b) {
            PRow r;
            r.hi = std::min(a.hi + b.lo(), b.hi + a.lo());
            for (const auto& [ea, ca] : a.c)
                for (const auto& [eb, cb] : b.c)
                    if (ea + eb <= r.hi) r.c[ea + eb] += ca * cb;
            return cleaned(r);
        };
        auto axpy = [&](PRow& acc, const Rational& s, const PRow& x) {
            acc.hi = std::min(acc.hi, x.hi);
            for (const auto& [e, c] : x.c) acc.c[e] += s * c;
            acc = cleaned(acc);
        };

        auto qrows = fiber_sum.rows_by({"Q1", "Q2", "Q3"});
        const long whi = fiber_sum.windows()[3].hi;
        const long wlo = fiber_sum.windows()[3].lo;
        auto as_prow = [&](const TruncSeries& s) {
            PRow r;
            r.hi = whi;
            for (long k = wlo; k <= whi; ++k)
                if (s.coeff({k}) != 0) r.c[k] = s.coeff({k});
            return r;
        };
        // Ascending inverse of the degree-0 slice (constant term 1).
        const PRow z0 = as_prow(qrows.at({0, 0, 0}));
        if (z0.lo() != 0 || z0.c.at(0) != 1) return false;
        PRow inv0;
        inv0.hi = whi;
        inv0.c[0] = 1;
        for (long e = 1; e <= whi; ++e) {
            Rational v = 0;
            for (const auto& [a, ca] : z0.c)
                if (a >= 1 && a <= e) v -= ca * inv0.c[e - a];
            if (v != 0) inv0.c[e] = v;
        }
        // W = Z/Z_0 - 1 per class; log(1+W) by nilpotent Q-powers.
        std::map<ExpVec, PRow> w;
        for (const auto& [d, row] : qrows)
            if (d != ExpVec{0, 0, 0}) w[d] = conv(as_prow(row), inv0);
        std::map<ExpVec, PRow> lrows, wpow = w;
        for (const auto& [d, r] : w) lrows[d] = r;
        for (long j = 2; j <= 3; ++j) {
            std::map<ExpVec, PRow> next;
            for (const auto& [d1, r1] : wpow)
                for (const auto& [d2, r2] : w) {
                    ExpVec d{d1[0] + d2[0], d1[1] + d2[1], d1[2] + d2[2]};
                    if (d[0] + d[1] + d[2] > 3) continue;
                    PRow p = conv(r1, r2);
                    auto [it, fresh] = next.emplace(d, p);
                    if (!fresh) axpy(it->second, 1, p);
                }
            Rational s = rat((j % 2 == 0) ? -1 : 1, j);
            for (const auto& [d, r] : next) {
                auto [it, fresh] = lrows.emplace(d, PRow{{}, r.hi});
                axpy(it->second, s, r);
            }
            wpow = std::move(next);
        }
        // Strip multi-covers: C_d = L_d - sum_{r | gcd, r > 1} (1/r) C_{d/r}(p^r).
        std::map<ExpVec, PRow> conn = lrows;
        for (auto& [d, r] : conn) {
            long g = std::gcd(std::gcd(d[0], d[1]), d[2]);
            for (long m = 2; m <= g; ++m) {
                if (g % m != 0) continue;
                const PRow& base = conn.at({d[0] / m, d[1] / m, d[2] / m});
                PRow scaled;
                scaled.hi = base.hi * m;
                for (const auto& [e, c] : base.c) scaled.c[e * m] = c;
                axpy(r, rat(-1, m), scaled);
            }
        }
        // Compare across equal-norm classes on the common certified window.
        std::map<long, ExpVec> rep;
        long nontrivial_pairs = 0;
        for (const auto& [d, r] : conn) {
            long norm = CurveClass{{d[0], d[1], d[2]}}.norm();
            auto [it, fresh] = rep.emplace(norm, d);
            if (fresh) continue;
            const PRow& s = conn.at(it->second);
            long hi = std::min(r.hi, s.hi);
            if (hi < 2) return false;  // window too small to certify anything
            for (long k = std::min(r.lo(), s.lo()); k <= hi; ++k) {
                Rational x = r.c.count(k) ? r.c.at(k) : Rational(0);
                Rational y = s.c.count(k) ? s.c.at(k) : Rational(0);
                if (x != y) return false;
            }
            ++nontrivial_pairs;
        }
        // The degree <= 3 simplex must exhibit the (1,0,0)/(2,1,0) collision.
        return nontrivial_pairs >= 8 && conn.count({2, 1, 0}) == 1;
    });

    run(11, "lambda_coefficient_identity", [] {
        for (long d : {-1L, 0L, 3L, 4L, 7L, 8L})
            if (!eq_a1_check(d, 8).ok) return false;
        return true;
    });

    run(12, "fg_two_routes_and_constants", [] {
        const long mmax = 3, nmax = 3, lwin = 7;
        for (long g : {2L, 3L}) {
            SiegelExpansion lift = fg_route_lift(g, mmax, nmax, lwin);
            SiegelExpansion dt = fg_route_dt(g, mmax, nmax, lwin);
            for (long m = 0; m <= mmax; ++m)
                for (long n = 0; n <= nmax; ++n)
                    for (long l = -lwin; l <= lwin; ++l)
                        if (lift.c(m, n, l) != dt.c(m, n, l)) return false;
        }
        if (fg_constant(2) != rat(1, 240)) return false;
        for (long g = 2; g <= 5; ++g)
            if (fg_route_lift(g, 1, 1, 2).c(0, 0, 0) != fg_constant(g))
                return false;
        return true;
    });

    run(13, "igusa_check", [] {
        IgusaReport rep = igusa_check(4);
        if (rep.ok)
            std::printf("       igusa kappa = %s, weight = %ld\n",
                        rat_str(rep.kappa).c_str(), rep.weight_sum);
        return rep.ok && rep.weight_sum == 12;
    }, /*gating=*/false);

    std::printf("%s (%d gating failure%s)\n", failures == 0 ? "ACCEPTED" : "REJECTED",
                failures, failures == 1 ? "" : "s");
    return failures == 0 ? 0 : 1;
}
