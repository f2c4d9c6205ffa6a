#include "cy3/cone2.hpp"
#include "cy3/error.hpp"
#include "cy3/json_io.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace cy3;
using cy3::testing::cubic;
using cy3::testing::uniform;

namespace {

Ray2 ray(long x, long y) { return Ray2::integral(x, y); }

Q disc_oracle(long a, long b, long c, long d) {
    return Q(b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d);
}

double angle(const Ray2& r) {
    auto u = r.unit_direction();
    double a = std::atan2(u[1], u[0]);
    return a < 0 ? a + 2 * M_PI : a;
}

std::vector<DivisorClass> brute_points(const Cone2& c, long box) {
    std::vector<DivisorClass> out;
    for (long x = -box; x <= box; ++x)
        for (long y = -box; y <= box; ++y)
            if ((x || y) && cone_contains(c, DivisorClass{x, y})) out.push_back({x, y});
    return out;
}

double cube_d(const std::array<double, 4>& k, double x, double y) {
    return k[0] * x * x * x + k[1] * x * x * y + k[2] * x * y * y + k[3] * y * y * y;
}

}  // namespace

TEST_CASE("cubic classification on the normal forms") {
    auto a = classify_cubic(cubic(0, 1, 1, 0));
    CHECK(a.tag == CubicTag::ThreeDistinctReal);
    CHECK(a.vanishing_rays == std::vector<Ray2>{ray(1, 0), ray(0, 1), ray(-1, 1), ray(-1, 0), ray(0, -1), ray(1, -1)});
    auto b = classify_cubic(cubic(0, 1, 0, 0));
    CHECK(b.tag == CubicTag::DoubleRoot);
    CHECK(b.vanishing_rays == std::vector<Ray2>{ray(1, 0), ray(0, 1), ray(-1, 0), ray(0, -1)});
    auto c = classify_cubic(cubic(0, 1, 0, 1));
    CHECK(c.tag == CubicTag::OneRealRoot);
    CHECK(c.discriminant == -4);
    CHECK(c.vanishing_rays == std::vector<Ray2>{ray(1, 0), ray(-1, 0)});
    CHECK(to_json(c).dump() ==
          R"({"case":"one_real_root","label":"c","discriminant":"-4","vanishing_rays":[{"int":[1,0]},{"int":[-1,0]}]})");
    CHECK_THROWS_AS(classify_cubic(cubic(0, 0, 0, 0)), DomainError);
    CHECK_THROWS_AS(classify_cubic(cubic(1, 3, 3, 1)), DomainError);  // (x + y)^3
}

TEST_CASE("classification follows the discriminant") {
    std::mt19937_64 rng(21);
    for (int it = 0; it < 300; ++it) {
        long k[4];
        for (auto& x : k) x = uniform(rng, -4, 4);
        auto t = cubic(k[0], k[1], k[2], k[3]);
        auto h = hessian_coefficients(t);
        if (h[0] == 0 && h[1] == 0 && h[2] == 0) {
            REQUIRE_THROWS_AS(classify_cubic(t), DomainError);
            continue;
        }
        auto cc = classify_cubic(t);
        Q d = disc_oracle(k[0], k[1], k[2], k[3]);
        REQUIRE(cc.discriminant == d);
        REQUIRE((cc.tag == CubicTag::ThreeDistinctReal) == (d > 0));
        REQUIRE((cc.tag == CubicTag::OneRealRoot) == (d < 0));
        std::vector<Q> coeffs{Q(k[0]), Q(k[1]), Q(k[2]), Q(k[3])};
        for (const auto& r : cc.vanishing_rays) REQUIRE(form_sign(coeffs, r) == 0);
        // Distinct root lines, each giving two opposite rays.
        std::size_t lines = d > 0 ? 3 : d < 0 ? 1 : 2;
        REQUIRE(cc.vanishing_rays.size() == 2 * lines);
        for (std::size_t i = 0; i + 1 < cc.vanishing_rays.size(); ++i)
            REQUIRE(angle_less(cc.vanishing_rays[i], cc.vanishing_rays[i + 1]));
    }
}

TEST_CASE("positive index components of the normal forms") {
    auto a = positive_index_components(cubic(0, 1, 1, 0)).components;
    CHECK(a.size() == 3);
    auto b = positive_index_components(cubic(0, 1, 0, 0)).components;
    REQUIRE(b.size() == 2);
    CHECK(b[0] == Cone2(ray(1, 0), ray(0, 1)));
    CHECK(b[1] == Cone2(ray(0, 1), ray(-1, 0)));
    auto c = positive_index_components(cubic(0, 1, 0, 1)).components;
    REQUIRE(c.size() == 2);
    CHECK(c[0].lo() == ray(1, 0));
    CHECK_FALSE(c[0].hi().is_integral());
    CHECK(c[0].hi().slope().poly() == std::vector<Z>{-1, 0, 3});
    CHECK(c[1].hi() == ray(-1, 0));
    auto hr = hessian_root_rays(cubic(0, 1, 0, 1));
    CHECK(hr.size() == 4);
    CHECK(hessian_root_rays(cubic(0, 1, 1, 0)).empty());
}

TEST_CASE("components are exactly the positive index region") {
    std::mt19937_64 rng(22);
    for (int it = 0; it < 60; ++it) {
        long k[4];
        for (auto& x : k) x = uniform(rng, -3, 3);
        auto t = cubic(k[0], k[1], k[2], k[3]);
        ComponentSet cs;
        try {
            cs = positive_index_components(t);
        } catch (const DomainError&) {
            continue;
        }
        auto h = hessian_coefficients(t);
        for (long x = -6; x <= 6; ++x)
            for (long y = -6; y <= 6; ++y) {
                if (!x && !y) continue;
                DivisorClass d{x, y};
                Q hv = h[0] * x * x + h[1] * x * y + h[2] * y * y;
                bool positive = cube(t, d) > 0 && hv < 0;
                int hits = 0;
                for (const auto& p : cs.components) hits += cone_contains(p, d);
                REQUIRE(hits == (positive ? 1 : 0));
            }
    }
}

TEST_CASE("angle order and cross sign agree with floating point") {
    std::mt19937_64 rng(23);
    std::vector<Ray2> rays;
    for (int i = 0; i < 40; ++i) {
        long x = uniform(rng, -9, 9), y = uniform(rng, -9, 9);
        if (x || y) rays.push_back(ray(x, y));
    }
    auto s2 = cy3::sqrt(RealAlgebraic(Q(2)));
    for (int sx : {1, -1})
        for (long k : {1, -3}) rays.push_back(Ray2::sloped(sx, s2.affine(Q(k), Q(0))));
    for (const auto& u : rays)
        for (const auto& v : rays) {
            double au = angle(u), av = angle(v);
            if (std::abs(au - av) < 1e-9) {
                REQUIRE(u == v);
                continue;
            }
            REQUIRE(angle_less(u, v) == (au < av));
            auto du = u.unit_direction(), dv = v.unit_direction();
            double cr = du[0] * dv[1] - du[1] * dv[0];
            if (std::abs(cr) > 1e-9) REQUIRE(cross_sign(u, v) == (cr > 0 ? 1 : -1));
        }
}

TEST_CASE("canonical point is the least L1 interior class") {
    std::mt19937_64 rng(24);
    for (int it = 0; it < 200; ++it) {
        Ray2 a = ray(uniform(rng, -7, 7), uniform(rng, -7, 7) | 1), b = ray(uniform(rng, -7, 7), uniform(rng, -7, 7) | 1);
        if (cross_sign(a, b) == 0) continue;
        Cone2 c = cone_between(a, b);
        auto pts = brute_points(c, 16);
        REQUIRE_FALSE(pts.empty());
        auto l1 = [](const DivisorClass& d) -> Z { return abs(d[0]) + abs(d[1]); };
        auto best = *std::min_element(pts.begin(), pts.end(), [&](const auto& p, const auto& q) {
            if (l1(p) != l1(q)) return l1(p) < l1(q);
            return std::pair(p[0], p[1]) < std::pair(q[0], q[1]);
        });
        REQUIRE(canonical_point(c) == best);
        REQUIRE(cone_contains(c, interior_point(c)));
    }
    CHECK(canonical_point(Cone2(ray(1, 0), ray(0, 1))) == DivisorClass{1, 1});
    CHECK(canonical_point(Cone2(ray(2, -1), ray(1, 1))) == DivisorClass{1, 0});
}

TEST_CASE("cone membership and intersection") {
    Cone2 q1(ray(1, 0), ray(0, 1));
    CHECK(cone_contains(q1, DivisorClass{1, 1}));
    CHECK_FALSE(cone_contains(q1, DivisorClass{1, 0}));
    CHECK(cone_contains_closed(q1, DivisorClass{1, 0}));
    CHECK(on_boundary(q1, ray(0, 1)));
    CHECK_FALSE(cone_contains_closed(q1, DivisorClass{-1, 1}));
    auto i = cone_intersect(q1, Cone2(ray(1, 1), ray(-1, 1)));
    REQUIRE(i);
    CHECK(*i == Cone2(ray(1, 1), ray(0, 1)));
    CHECK_FALSE(cone_intersect(q1, Cone2(ray(-1, 0), ray(0, -1))));
    CHECK_THROWS_AS(Cone2(ray(0, 1), ray(1, 0)), DomainError);
    CHECK_THROWS_AS(Cone2(ray(1, 0), ray(-1, 0)), DomainError);
}

TEST_CASE("Delta ray for x^2 y") {
    auto t = cubic(0, 1, 0, 0);
    Cone2 p(ray(1, 0), ray(0, 1));
    for (long a = 1; a <= 6; ++a)
        for (long b = 1; b <= 6; ++b) {
            auto d = delta_ray(p, t, DivisorClass{-a, b});
            REQUIRE(d.ray == ray(2 * a, b));
            REQUIRE_FALSE(d.e_dot_delta_trivial);
        }
    // E = (0, 1): E.L^2 = x^2/3 kills the edge (0, 1).
    auto triv = delta_ray(p, t, DivisorClass{0, 1});
    CHECK(triv.ray == ray(0, 1));
    CHECK(triv.e_dot_delta_trivial);
}

TEST_CASE("Delta and mov bound against a floating oracle") {
    // xy(x + y) with E = (1, -2) in the first quadrant.
    auto t = cubic(0, 1, 1, 0);
    std::array<double, 4> k{0, 1, 1, 0};
    Cone2 p(ray(1, 0), ray(0, 1));
    DivisorClass e{1, -2};
    auto d = delta_ray(p, t, e);
    REQUIRE_FALSE(d.ray.is_integral());
    double tt = 1 + std::sqrt(3.0);
    CHECK(d.ray.slope().approx() == doctest::Approx(tt));
    auto m = mov_bound_ray(p, t, e, d.ray);
    CHECK(m.branch == MovBranch::CubeNonNegative);
    // alpha^2 = -Delta^3 / (Delta.E.E) for Delta = (1, t).
    double g0 = triple(t, DivisorClass{1, 0}, e, e).get_d(), g1 = triple(t, DivisorClass{0, 1}, e, e).get_d();
    double alpha = std::sqrt(-cube_d(k, 1, tt) / (g0 + g1 * tt));
    REQUIRE(m.alpha_bound);
    CHECK(m.alpha_bound->approx() == doctest::Approx(alpha));
    double rx = 1 - alpha * 1, ry = tt + alpha * 2;
    auto u = m.r.unit_direction();
    double n = std::hypot(rx, ry);
    CHECK(u[0] == doctest::Approx(rx / n));
    CHECK(u[1] == doctest::Approx(ry / n));
    CHECK(m.base == d.ray);
}

TEST_CASE("mov bound examples") {
    auto b = cubic(0, 1, 0, 0);
    Cone2 p(ray(1, 0), ray(0, 1));
    auto d = delta_ray(p, b, DivisorClass{-3, 1});
    CHECK(d.ray == ray(6, 1));
    auto m = mov_bound_ray(p, b, DivisorClass{-3, 1}, d.ray);
    CHECK(m.r == ray(12, -1));
    CHECK(m.alpha_bound->rational_value() == 2);
    // Three lines, negative cube: R = B - 2 beta* E.
    auto a = cubic(0, 1, 1, 0);
    Cone2 pa(ray(-1, 1), ray(-1, 0));
    auto da = delta_ray(pa, a, DivisorClass{-1, -1});
    auto ma = mov_bound_ray(pa, a, DivisorClass{-1, -1}, da.ray);
    CHECK(ma.branch == MovBranch::NegativeCubeThreeLines);
    CHECK(ma.base == ray(-1, 1));
    CHECK(ma.beta_star->rational_value() == 1);
    CHECK(ma.r == ray(1, 3));
    // One real root, negative cube: R is the Hessian edge and no alpha bound is recorded.
    auto c = cubic(0, 1, 0, 1);
    auto pc = positive_index_components(c).components[0];
    auto dc = delta_ray(pc, c, DivisorClass{2, -1});
    CHECK(dc.ray == ray(3, 1));
    auto mc = mov_bound_ray(pc, c, DivisorClass{2, -1}, dc.ray);
    CHECK(mc.branch == MovBranch::NegativeCubeEdge);
    CHECK(mc.r == pc.hi());
    CHECK_FALSE(mc.alpha_bound);
    CHECK_THROWS_AS(delta_ray(pc, c, DivisorClass{1, -1}), DomainError);
}

TEST_CASE("subdivision by quadrics keeps the common positive pieces") {
    std::mt19937_64 rng(25);
    auto t = cubic(0, 1, 1, 0);
    Cone2 p(ray(1, 0), ray(0, 1));
    for (int it = 0; it < 40; ++it) {
        std::vector<DivisorClass> es;
        for (int j = 0; j < 2; ++j) es.push_back({uniform(rng, -4, 4), uniform(rng, -4, 4)});
        if (std::any_of(es.begin(), es.end(), [](const auto& e) { return e.is_zero(); })) continue;
        std::vector<Cone2> pieces;
        try {
            pieces = subdivide_by_quadrics(p, t, es);
        } catch (const DomainError&) {
            continue;
        }
        for (long x = 1; x <= 12; ++x)
            for (long y = 1; y <= 12; ++y) {
                DivisorClass d{x, y};
                bool all_pos = std::all_of(es.begin(), es.end(), [&](const auto& e) { return triple(t, e, d, d) > 0; });
                bool in_piece = std::any_of(pieces.begin(), pieces.end(), [&](const Cone2& c) { return cone_contains(c, d); });
                if (in_piece) REQUIRE(all_pos);
                bool on_cut = std::any_of(es.begin(), es.end(), [&](const auto& e) { return triple(t, e, d, d) == 0; });
                if (all_pos && !on_cut) REQUIRE((in_piece || std::any_of(pieces.begin(), pieces.end(), [&](const Cone2& c) {
                                                     return on_boundary(c, Ray2::from_class(d));
                                                 })));
            }
    }
}

TEST_CASE("SVG output is deterministic") {
    auto scene = scene_for(cubic(0, 1, 0, 1));
    std::string s1 = render_svg(scene), s2 = render_svg(scene_for(cubic(0, 1, 0, 1)));
    CHECK(s1 == s2);
    CHECK(s1.rfind("<svg", 0) == 0);
    CHECK(s1.find("</svg>") != std::string::npos);
}

TEST_CASE("E along a Hessian root gives a trivial E.Delta") {
    // F = x^2 y + y^3, E along (-1, 1/sqrt3): Delta along (1, 1/sqrt3) is the Hessian edge of P.
    auto t = cubic(0, 1, 0, 1);
    auto p = positive_index_components(t).components[0];
    auto inv_sqrt3 = cy3::sqrt(RealAlgebraic(Q(1, 3)));
    auto d = delta_ray(p, t, Ray2::sloped(-1, -inv_sqrt3));
    CHECK(d.ray == Ray2::sloped(1, inv_sqrt3));
    CHECK(d.ray == p.hi());
    CHECK(d.e_dot_delta_trivial);
}
