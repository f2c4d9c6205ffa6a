#include "cy3/error.hpp"
#include "cy3/forms.hpp"
#include "cy3/json_io.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace cy3;
using cy3::testing::cubic;
using cy3::testing::entries;

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3") == Q(3));
    CHECK(parse_rational("-6/4") == Q(-3, 2));
    CHECK(parse_rational("+2/3") == Q(2, 3));
    CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
    CHECK_THROWS_AS(parse_rational("1/-2"), DomainError);
    CHECK_THROWS_AS(parse_rational("x"), DomainError);
    CHECK_THROWS_AS(parse_rational(""), DomainError);
    CHECK_THROWS_AS(parse_rational("1.5"), DomainError);
    CHECK(to_string(Q(-3, 2)) == "-3/2");
    CHECK(floor_q(Q(-3, 2)) == -2);
    CHECK(ceil_q(Q(-3, 2)) == -1);
}

TEST_CASE("tensor is filled symmetrically") {
    TrilinearForm t(2, {{{1, 0, 0}, Q(5)}, {{1, 1, 0}, Q(7)}}, FormMode::Topological);
    CHECK(t.at(0, 0, 1) == 5);
    CHECK(t.at(0, 1, 0) == 5);
    CHECK(t.at(1, 0, 0) == 5);
    CHECK(t.at(1, 0, 1) == 7);
    CHECK(t.at(0, 0, 0) == 0);
    CHECK_THROWS_AS(TrilinearForm(2, {{{0, 0, 1}, Q(1)}, {{1, 0, 0}, Q(2)}}, FormMode::NormalForm), DomainError);
    CHECK_THROWS_AS(TrilinearForm(2, {{{0, 0, 2}, Q(1)}}, FormMode::NormalForm), DomainError);
    CHECK_THROWS_AS(TrilinearForm(2, {{{0, 0, 1}, Q(1, 3)}}, FormMode::Topological), DomainError);
}

TEST_CASE("cube and triple on the normal forms") {
    auto a = cubic(0, 1, 1, 0);  // xy(x+y)
    CHECK(cube(a, {1, 1}) == 2);
    CHECK(cube(a, {2, -1}) == -2);
    CHECK(cube(a, {1, -1}) == 0);
    auto c = cubic(0, 1, 0, 1);  // x^2 y + y^3
    CHECK(cube(c, {0, 1}) == 1);
    CHECK(cube(c, {2, 1}) == 5);
    // Polarization identity: 6 T(a,b,c) from cubes.
    DivisorClass u{1, 2}, v{-3, 1}, w{2, 5};
    Q pol = cube(c, u + v + w) - cube(c, u + v) - cube(c, u + w) - cube(c, v + w) + cube(c, u) + cube(c, v) + cube(c, w);
    CHECK(pol == 6 * triple(c, u, v, w));
}

TEST_CASE("cube agrees with cubic coefficients") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
        long k[4];
        for (auto& x : k) x = cy3::testing::uniform(rng, -9, 9);
        auto t = cubic(k[0], k[1], k[2], k[3]);
        auto cc = t.cubic_coefficients();
        for (long x = -3; x <= 3; ++x)
            for (long y = -3; y <= 3; ++y) {
                Q direct = cc[0] * x * x * x + cc[1] * x * x * y + cc[2] * x * y * y + cc[3] * y * y * y;
                REQUIRE(cube(t, {x, y}) == direct);
                REQUIRE(direct == Q(k[0] * x * x * x + k[1] * x * x * y + k[2] * x * y * y + k[3] * y * y * y));
            }
    }
}

TEST_CASE("quadratic form and signature") {
    auto b = cubic(0, 1, 0, 0);  // x^2 y
    auto q = quad_form(b, {-1, 2});
    // E.L^2 for E = (-1, 2): x (2x - 2y)/3 after polarization.
    CHECK(q.a == Q(2, 3));
    CHECK(q.b == Q(-1, 3));
    CHECK(q.c == 0);
    CHECK(signature(q) == Signature{1, 1, 0});
    CHECK(index_signature(cubic(1, 0, 0, 1), {1, 1}) == Signature{2, 0, 0});
    CHECK(signature(QuadraticForm2{Q(1), Q(0), Q(0)}) == Signature{1, 0, 1});
    CHECK(signature(QuadraticForm2{Q(0), Q(0), Q(-2)}) == Signature{0, 1, 1});
    CHECK(signature(QuadraticForm2{}) == Signature{0, 0, 2});
    CHECK_THROWS_AS(index_signature(b, {0, 0}), DomainError);
}

TEST_CASE("Hessian sign matches indefiniteness of the quadratic form") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 300; ++it) {
        auto t = entries(Q(cy3::testing::uniform(rng, -5, 5)), Q(cy3::testing::uniform(rng, -5, 5)),
                         Q(cy3::testing::uniform(rng, -5, 5)), Q(cy3::testing::uniform(rng, -5, 5)));
        auto h = hessian_coefficients(t);
        DivisorClass d{cy3::testing::uniform(rng, -6, 6), cy3::testing::uniform(rng, -6, 6)};
        if (d.is_zero()) continue;
        Q hv = h[0] * Q(d[0] * d[0]) + h[1] * Q(d[0] * d[1]) + h[2] * Q(d[1] * d[1]);
        auto q = quad_form(t, d);
        REQUIRE(hv == q.a * q.c - q.b * q.b);
        REQUIRE((hv < 0) == (signature(q) == Signature{1, 1, 0}));
    }
}

TEST_CASE("Riemann-Roch integrality") {
    // Bicubic-type data: T112 = T122 = 3, c2 = (36, 36).
    auto t = entries(Q(0), Q(3), Q(3), Q(0));
    CHECK(validate_rr_integrality(t, {36, 36}).ok);
    auto bad = validate_rr_integrality(t, {36, 30});
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.witness);
    Q v = 2 * cube(t, *bad.witness) + Q(c2_eval(LinearFormC2{36, 30}, *bad.witness));
    CHECK(v.get_num() % 12 != 0);
    CHECK_THROWS_AS(validate_rr_integrality(cubic(0, 1, 1, 0), {6, 6}), DomainError);
}

TEST_CASE("integrality on the small grid decides the whole lattice") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 200; ++it) {
        auto t = entries(Q(cy3::testing::uniform(rng, -6, 6)), Q(cy3::testing::uniform(rng, -6, 6)),
                         Q(cy3::testing::uniform(rng, -6, 6)), Q(cy3::testing::uniform(rng, -6, 6)));
        LinearFormC2 c{cy3::testing::uniform(rng, -24, 24), cy3::testing::uniform(rng, -24, 24)};
        bool brute = true;
        for (long x = -7; x <= 7 && brute; ++x)
            for (long y = -7; y <= 7 && brute; ++y) {
                Q v = 2 * cube(t, {x, y}) + Q(c2_eval(c, {x, y}));
                if (v.get_num() % 12 != 0) brute = false;
            }
        REQUIRE(validate_rr_integrality(t, c).ok == brute);
    }
}

TEST_CASE("rank checks") {
    TrilinearForm t3(3, {{{0, 1, 2}, Q(1)}}, FormMode::Topological);
    CHECK(triple(t3, DivisorClass{1, 0, 0}, DivisorClass{0, 1, 0}, DivisorClass{0, 0, 1}) == 1);
    CHECK_THROWS_AS(quad_form(t3, DivisorClass{1, 0, 0}), DomainError);
    CHECK_THROWS_AS(cube(cubic(1, 0, 0, 0), DivisorClass{1, 0, 0}), DomainError);
}

TEST_CASE("forms JSON round trip") {
    auto t = entries(Q(1, 3), Q(-2), Q(0), Q(7, 2), FormMode::NormalForm);
    LinearFormC2 c{6, -4};
    Json j = forms_to_json(t, c);
    CHECK(j.dump() ==
          R"({"rank":2,"mode":"normal_form","trilinear":{"111":"1/3","112":"-2","122":"0","222":"7/2"},"c2":[6,-4]})");
    auto back = forms_from_json(parse_json(j.dump()));
    CHECK(back.trilinear == t);
    CHECK(back.c2 == c);
    CHECK_THROWS_AS(forms_from_json(parse_json(R"({"rank":2,"trilinear":{"111":"1/0"},"c2":[0,0]})")), DomainError);
    CHECK_THROWS_AS(forms_from_json(parse_json(R"({"rank":2,"trilinear":{"113":1},"c2":[0,0]})")), DomainError);
    CHECK_THROWS_AS(forms_from_json(parse_json(R"({"rank":2,"trilinear":{},"c2":[0]})")), DomainError);
    CHECK_THROWS_AS(forms_from_json(parse_json(R"({"rank":2,"trilinear":{"111":0.5},"c2":[0,0]})")), DomainError);
    CHECK_THROWS_AS(parse_json("{"), DomainError);
    Z big("123456789012345678901234567890");
    CHECK(to_json(big).is_string());
    CHECK(integer_from_json(to_json(big)) == big);
    CHECK(to_json(Z(9007199254740991L)).is_number());
    CHECK(to_json(Z(9007199254740992L)).is_string());
}
