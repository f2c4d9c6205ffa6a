#include "cy3/bounds.hpp"
#include "cy3/error.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <set>

using namespace cy3;
using cy3::testing::cubic;
using cy3::testing::entries;
using cy3::testing::uniform;

namespace {

Ray2 ray(long x, long y) { return Ray2::integral(x, y); }

std::vector<DivisorClass> ls(const std::vector<MovableCandidate>& v) {
    std::vector<DivisorClass> out;
    for (const auto& m : v) out.push_back(m.l);
    return out;
}

}  // namespace

TEST_CASE("Riemann-Roch Euler characteristic") {
    auto t = cubic(0, 1, 1, 0);  // D^3 = 2 at (1, 1)
    LinearFormC2 c{12, 12};
    CHECK(rr_chi(t, c, {1, 1}, 1) == Q(7, 3));
    CHECK(rr_chi(t, c, {1, -1}, 2) == 0);
    CHECK(rr_chi(cubic(1, 0, 0, 0), LinearFormC2{0, 0}, {1, 0}, 2) == Q(4, 3));
    CHECK_THROWS_AS(rr_chi(t, c, {1, 1}, 0), DomainError);
    // chi(mD) computed on the class m D.
    std::mt19937_64 rng(51);
    for (int it = 0; it < 200; ++it) {
        auto s = entries(Q(uniform(rng, -5, 5)), Q(uniform(rng, -5, 5)), Q(uniform(rng, -5, 5)), Q(uniform(rng, -5, 5)));
        LinearFormC2 cc{uniform(rng, -20, 20), uniform(rng, -20, 20)};
        DivisorClass d{uniform(rng, -5, 5), uniform(rng, -5, 5)};
        long m = uniform(rng, 1, 6);
        DivisorClass md = Z(m) * d;
        REQUIRE(rr_chi(s, cc, d, m) == cube(s, md) / 6 + Q(c2_eval(cc, md)) / 12);
    }
}

TEST_CASE("minimal effective multiple") {
    // 2 D^3 + c2.D = 4 + 24 = 28 already at m = 1.
    auto r = min_effectivity_m(cubic(0, 1, 1, 0), LinearFormC2{12, 12}, {1, 1}, 100);
    CHECK(r.m == 1);
    CHECK(r.chi_at_m == Q(7, 3));
    // D^3 = 1, c2 = 0: 2 m^3 >= 24 first at m = 3.
    auto s = min_effectivity_m(cubic(1, 0, 0, 0), LinearFormC2{0, 0}, {1, 0}, 100);
    CHECK(s.m == 3);
    CHECK(s.chi_at_m == Q(9, 2));
    CHECK_FALSE(min_effectivity_m(cubic(1, 0, 0, 0), LinearFormC2{0, 0}, {1, 0}, 2).m);
    CHECK_FALSE(min_effectivity_m(cubic(0, 1, 0, 0), LinearFormC2{0, -2}, {0, 1}, 1000).m);
}

TEST_CASE("minimal effective multiple against a direct scan") {
    std::mt19937_64 rng(52);
    for (int it = 0; it < 300; ++it) {
        auto t = entries(Q(uniform(rng, -4, 4)), Q(uniform(rng, -4, 4)), Q(uniform(rng, -4, 4)), Q(uniform(rng, -4, 4)));
        LinearFormC2 c{uniform(rng, -30, 30), uniform(rng, -30, 30)};
        DivisorClass d{uniform(rng, -3, 3), uniform(rng, -3, 3)};
        const long cap = 60;
        std::optional<long> expected;
        for (long m = 1; m <= cap && !expected; ++m)
            if (rr_chi(t, c, d, m) >= 2) expected = m;
        auto r = min_effectivity_m(t, c, d, cap);
        REQUIRE(r.m == expected);
        if (r.m) REQUIRE(r.chi_at_m == rr_chi(t, c, d, *r.m));
    }
}

TEST_CASE("round-up effectivity along an irrational ray") {
    auto s2 = cy3::sqrt(RealAlgebraic(Q(2)));
    // x^3 with D0 = (1, 0), E = (0, 1): chi = m^3 / 6, relevant m are those with frac(m sqrt2) < 1/2.
    auto r = roundup_effectivity({1, 0}, {0, 1}, s2, Q(1, 2), cubic(1, 0, 0, 0), LinearFormC2{0, 0}, 100);
    CHECK(r.m == 3);
    CHECK(r.ceil_coeff == 5);
    REQUIRE(r.certificate);
    CHECK(verify_relevant(s2, Q(1, 2), *r.certificate));
    CHECK(r.chi_at_m == Q(9, 2));
    CHECK_THROWS_AS(roundup_effectivity({1, 0}, {0, 1}, s2, Q(1, 2), cubic(1, 0, 0, 0), LinearFormC2{0, 0}, 2),
                    DomainError);
    CHECK_THROWS_AS(roundup_effectivity({1, 0}, {0, 1}, RealAlgebraic(Q(3, 2)), Q(1, 2), cubic(1, 0, 0, 0),
                                        LinearFormC2{0, 0}, 10),
                    DomainError);
    CHECK_THROWS_AS(roundup_effectivity({1, 0}, {0, 1}, -s2, Q(1, 2), cubic(1, 0, 0, 0), LinearFormC2{0, 0}, 10),
                    DomainError);
}

TEST_CASE("round-up effectivity against a long double scan") {
    std::mt19937_64 rng(53);
    auto s3 = cy3::sqrt(RealAlgebraic(Q(3)));
    const long double l3 = std::sqrt(3.0L);
    for (int it = 0; it < 100; ++it) {
        auto t = entries(Q(uniform(rng, -3, 3)), Q(uniform(rng, -3, 3)), Q(uniform(rng, -3, 3)), Q(uniform(rng, -3, 3)));
        LinearFormC2 c{uniform(rng, -12, 12), uniform(rng, -12, 12)};
        DivisorClass d0{uniform(rng, -2, 2), uniform(rng, -2, 2)}, e{uniform(rng, -2, 2), uniform(rng, -2, 2)};
        if (e.is_zero()) continue;
        const Q mu0(1, 3);
        const long cap = 80;
        std::optional<long> expected;
        Z expected_k;
        for (long m = 1; m <= cap && !expected; ++m) {
            long double v = m * l3;
            long double fl = std::floor(v);
            if (v - fl >= 1.0L / 3) continue;
            Z k(static_cast<long>(fl) + 1);
            if (rr_chi(t, c, Z(m) * d0 + k * e, 1) >= 2) {
                expected = m;
                expected_k = k;
            }
        }
        if (!expected) {
            REQUIRE_THROWS_AS(roundup_effectivity(d0, e, s3, mu0, t, c, cap), DomainError);
            continue;
        }
        auto r = roundup_effectivity(d0, e, s3, mu0, t, c, cap);
        REQUIRE(r.m == expected);
        REQUIRE(r.ceil_coeff == expected_k);
    }
}

TEST_CASE("elliptic upper bound") {
    CHECK(elliptic_h0_upper(1, Z(3)) == 4);
    CHECK(elliptic_h0_upper(0, Z(5)) == 1);
    CHECK(elliptic_h0_upper(4, Z(2)) == 21);
    CHECK_THROWS_AS(elliptic_h0_upper(2, Z(0)), DomainError);
    CHECK_THROWS_AS(elliptic_h0_upper(-1, Z(1)), DomainError);
    CHECK(to_string(FibrationBranch::K3Abelian) == "k3_abelian");
}

TEST_CASE("fibration thresholds") {
    // 6x^3 + 3xy^2: D = L = (1, 0), E = (0, 1), L.E^2 = 1, chi(nD) = n^3 > 100 n first at n = 11.
    auto t = cubic(6, 0, 3, 0, FormMode::Topological);
    CHECK(triple(t, DivisorClass{1, 0}, DivisorClass{0, 1}, DivisorClass{0, 1}) == 1);
    CHECK(fibration_threshold(t, {0, 0}, {1, 0}, {1, 0}, {0, 1}, 1, 1, FibrationBranch::K3Abelian, 1000) == 11);
    // L = E = D = (1, 0) on 6x^3: L.E^2 = 6, n^2 > 600 first at n = 25.
    auto u = cubic(6, 0, 0, 0, FormMode::Topological);
    CHECK(fibration_threshold(u, {0, 0}, {1, 0}, {1, 0}, {1, 0}, 1, 1, FibrationBranch::K3Abelian, 1000) == 25);
    CHECK_FALSE(fibration_threshold(u, {0, 0}, {1, 0}, {1, 0}, {1, 0}, 1, 1, FibrationBranch::K3Abelian, 24));
    // D^3 <= 0 has no threshold.
    CHECK_FALSE(fibration_threshold(u, {0, 0}, {-1, 0}, {1, 0}, {1, 0}, 1, 1, FibrationBranch::K3Abelian, 1000));
    // Elliptic: chi(n D) = n^3 against 1 + 6 n (n + 1) / 2 on 6x^3 with L = E = (1, 0).
    long expected = 0;
    for (long n = 1; n <= 100 && !expected; ++n)
        if (Q(n * n * n) > Q(1 + 3 * n * (n + 1))) expected = n;
    CHECK(fibration_threshold(u, {0, 0}, {1, 0}, {1, 0}, {1, 0}, 1, 1, FibrationBranch::Elliptic, 1000) == expected);
    CHECK_THROWS_AS(fibration_threshold(u, {0, 0}, {1, 0}, {1, 0}, {1, 0}, 1, 0, FibrationBranch::Elliptic, 10),
                    DomainError);
}

TEST_CASE("fixed part enumeration examples") {
    auto t = cubic(0, 1, 0, 0);
    LinearFormC2 c{2, 0};
    Cone2 q1(ray(1, 0), ray(0, 1));
    auto a = fixed_part_bounds({3, 3}, {{-3, 1}}, t, c, q1);
    CHECK(ls(a) == std::vector<DivisorClass>{{3, 3}, {6, 2}, {9, 1}, {12, 0}});
    CHECK(a[2].coeffs == std::vector<Z>{2});
    auto b = fixed_part_bounds({3, 3}, {{1, 0}}, t, c, std::nullopt);
    CHECK(ls(b) == std::vector<DivisorClass>{{3, 3}, {2, 3}, {1, 3}, {0, 3}});
    CHECK(ls(fixed_part_bounds({3, 3}, {}, t, c, q1)) == std::vector<DivisorClass>{{3, 3}});
    CHECK(fixed_part_bounds({-3, 3}, {}, t, c, q1).empty());
    CHECK_THROWS_AS(fixed_part_bounds({3, 3}, {{-3, 1}}, t, c, std::nullopt), DomainError);
}

TEST_CASE("fixed part enumeration against a box scan") {
    std::mt19937_64 rng(54);
    auto t = cubic(0, 1, 0, 0);
    int compared = 0;
    for (int it = 0; it < 300; ++it) {
        LinearFormC2 c{uniform(rng, -3, 3), uniform(rng, -3, 3)};
        Ray2 lo = ray(uniform(rng, -4, 4), uniform(rng, -4, 4) | 1), hi = ray(uniform(rng, -4, 4), uniform(rng, -4, 4) | 1);
        if (cross_sign(lo, hi) == 0) continue;
        Cone2 cone = cone_between(lo, hi);
        DivisorClass md{uniform(rng, -6, 6), uniform(rng, -6, 6)};
        std::vector<DivisorClass> es;
        for (int k = 0; k < 2; ++k) {
            DivisorClass e{uniform(rng, -3, 3), uniform(rng, -3, 3)};
            if (!e.is_zero()) es.push_back(e);
        }
        std::vector<MovableCandidate> got;
        try {
            got = fixed_part_bounds(md, es, t, c, cone);
        } catch (const DomainError& e) {
            REQUIRE(std::string(e.code()) == "unbounded");
            continue;
        }
        std::set<std::vector<Z>> got_coeffs;
        for (const auto& g : got) {
            DivisorClass l = md;
            for (std::size_t i = 0; i < es.size(); ++i) l = l - g.coeffs[i] * es[i];
            REQUIRE(l == g.l);
            REQUIRE(c2_eval(c, l) >= 0);
            REQUIRE((l.is_zero() || cone_contains_closed(cone, l)));
            got_coeffs.insert(g.coeffs);
        }
        const long box = 40;
        std::vector<long> a(es.size(), 0);
        std::function<void(std::size_t, DivisorClass)> scan = [&](std::size_t i, DivisorClass l) {
            if (i == es.size()) {
                if (c2_eval(c, l) >= 0 && (l.is_zero() || cone_contains_closed(cone, l))) {
                    std::vector<Z> key(a.begin(), a.end());
                    REQUIRE(got_coeffs.count(key) == 1);
                }
                return;
            }
            for (a[i] = 0; a[i] <= box; ++a[i]) scan(i + 1, l - Z(a[i]) * es[i]);
            a[i] = 0;
        };
        scan(0, md);
        ++compared;
    }
    CHECK(compared > 50);
}
