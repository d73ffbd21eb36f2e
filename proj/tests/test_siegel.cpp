#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "banana/siegel.hpp"

using namespace banana;

TEST_CASE("hecke operator basics") {
    JacobiCoeffs psi2 = psi(2, 8);
    CHECK(psi2.weight == 2);
    // V_1 is the identity
    JacobiCoeffs v1 = hecke_v(psi2, 1, 4, 8);
    for (const auto& [nr, c] : v1.coeffs) CHECK(c == psi2.c(nr.first, nr.second));
    // V_0 constant term: c(0,0) * (-B_2/4)
    JacobiCoeffs v0 = hecke_v(psi2, 0, 3, 6);
    CHECK(v0.c(0, 0) == psi2.c(0, 0) * (-bernoulli(2)) / 4);
    // divisor law at coprime (n, r): only d = 1 contributes to V_2
    JacobiCoeffs v2 = hecke_v(psi2, 2, 3, 6);
    CHECK(v2.c(1, 1) == psi2.by_disc(4 * 2 - 1));
    CHECK(v2.c(3, 1) == psi2.by_disc(4 * 6 - 1));
}

TEST_CASE("psi tables") {
    // psi_{-2} = phi_{-2,1}
    JacobiCoeffs p0 = psi(0, 4);
    CHECK(p0.by_disc(-1) == 1);
    CHECK(p0.by_disc(0) == -2);
    // psi_2 = (1/240) phi_{-2,1} E_4
    JacobiCoeffs p2 = psi(2, 4);
    CHECK(p2.by_disc(-1) == rat(1, 240));
    // c_{2g-2}(0) = -|B_2g| / (g (2g-2)!) for g = 2..5
    for (long g = 2; g <= 5; ++g) {
        Rational b = bernoulli(2 * g);
        if (b < 0) b = -b;
        Rational want = -b / (Rational(g) * siegel_detail::factorial(2 * g - 2));
        CHECK(psi(g, 2).by_disc(0) == want);
    }
    CHECK(p2.by_disc(0) == rat(-1, 120));
    // g=1 factor: psi_0 = phi_{-2,1} wp = phi_{0,1}/12, weight 0
    JacobiCoeffs p1 = psi(1, 4);
    CHECK(p1.weight == 0);
    CHECK(p1.by_disc(-1) == rat(1, 12));
    CHECK(p1.by_disc(0) == rat(10, 12));
}

TEST_CASE("maass lift routes agree and obey exchange symmetry") {
    // route equality and exchange symmetry are asserted inside maass_lift
    SiegelExpansion ml = maass_lift(psi(2, 9), 3, 3, 8);
    CHECK(ml.weight == 2);
    CHECK_FALSE(ml.degree0_omitted);
    // constant term: c_psi2(0) * (-B_2/4) = (-1/120)(-1/24)
    CHECK(ml.c(0, 0, 0) == rat(1, 2880));
    for (const auto& [mnl, c] : ml.coeffs) CHECK(ml.c(mnl[1], mnl[0], mnl[2]) == c);
}

TEST_CASE("formal weight <= 0 lifts omit the unstable constant") {
    SiegelExpansion f0 = fg_route_lift(0, 2, 2, 4);
    CHECK(f0.weight == -2);
    CHECK(f0.degree0_omitted);
    CHECK(f0.c(0, 0, 0) == 0);
    // F0 linear coefficient at (0,0,1): 12 c_{-2}(-1) Li_3 leading term = 12
    CHECK(f0.c(0, 0, 1) == 12);
    SiegelExpansion f1 = fg_route_lift(1, 2, 2, 4);
    CHECK(f1.weight == 0);
    CHECK(f1.degree0_omitted);
}

TEST_CASE("lambda expansion of the closed rows") {
    CoeffTable tab = c_table(4);
    // d = -1: 1/(4 sin^2(lambda/2)) = lambda^-2 + 1/12 + lambda^2/240 + ...
    LambdaSeries lm1 = lambda_row(tab.row(-1), 6);
    CHECK(lm1.c(-2) == 1);
    CHECK(lm1.c(0) == rat(1, 12));
    CHECK(lm1.c(2) == rat(1, 240));
    CHECK(lm1.c(4) == rat(1, 6048));
    CHECK(lm1.even_only);
    // d = 0 row: c(0,k) = 2k (k>0), c(0,0) = 1 -> N_0 = -2 + t^{-1}... check
    // against the psi tables through the identity instead
    CHECK(eq_a1_check(0, 8).ok);
}

TEST_CASE("coefficient identity between the lambda and t expansions") {
    for (long d : {-1L, 0L, 3L, 4L, 7L, 8L}) {
        EqA1Report r = eq_a1_check(d, 8);
        CAPTURE(d);
        CAPTURE(r.first_bad);
        CHECK(r.ok);
    }
}

TEST_CASE("degree-0 constants F_g(0,0,0)") {
    CHECK(fg_constant(2) == rat(1, 240));
    for (long g = 2; g <= 5; ++g) {
        SiegelExpansion fg = fg_route_lift(g, 1, 1, 2);
        CHECK(fg.c(0, 0, 0) == fg_constant(g));
    }
}

TEST_CASE("log of the DT series matches the formal log at desk scale") {
    CHECK_NOTHROW(dt_log_consistency_check(2, 6));
}

TEST_CASE("two routes to F_g agree") {
    const long mmax = 3, nmax = 3, lwin = 7;
    for (long g : {2L, 3L}) {
        SiegelExpansion lift = fg_route_lift(g, mmax, nmax, lwin);
        SiegelExpansion dt = fg_route_dt(g, mmax, nmax, lwin);
        CAPTURE(g);
        for (long m = 0; m <= mmax; ++m)
            for (long n = 0; n <= nmax; ++n)
                for (long l = -lwin; l <= lwin; ++l) {
                    CAPTURE(m);
                    CAPTURE(n);
                    CAPTURE(l);
                    CHECK(lift.c(m, n, l) == dt.c(m, n, l));
                }
    }
}

TEST_CASE("single polylog witness in the DT route") {
    // coefficient of y^1 at (m,n) = (0,0): class (1,0,0) with norm -1;
    // 12 c_2(-1) from the lambda side, 12 c_{psi_2}(-1) = 12/240 from psi
    SiegelExpansion dt2 = fg_route_dt(2, 1, 1, 2);
    CHECK(dt2.c(0, 0, 1) == rat(12, 240));
}

TEST_CASE("igusa cusp form identity (optional tier)") {
    IgusaReport rep = igusa_check(3);
    CHECK(rep.ok);
    CHECK(rep.weight_sum == 12);
    CHECK(rep.kappa != 0);
    MESSAGE("kappa = ", rat_str(rep.kappa));
}
