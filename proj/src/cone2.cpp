#include "cy3/cone2.hpp"

#include "cy3/error.hpp"

#include <algorithm>
#include <cmath>

namespace cy3 {

namespace {

int half_plane(const Ray2& r) {
    if (r.is_integral()) return (sign(r.y()) > 0 || (r.y() == 0 && sign(r.x()) > 0)) ? 0 : 1;
    return r.xsign() * r.slope().sign() > 0 ? 0 : 1;
}

DivisorClass primitive_class(std::array<Q, 2> v) {
    Z den;
    mpz_lcm(den.get_mpz_t(), v[0].get_den_mpz_t(), v[1].get_den_mpz_t());
    Z x = v[0].get_num() * (den / v[0].get_den());
    Z y = v[1].get_num() * (den / v[1].get_den());
    Z g;
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    if (g == 0) return DivisorClass({Z(0), Z(0)});
    return DivisorClass({x / g, y / g});
}

// Variables for the components of a ray: integral rays are constants, sloped rays use x_var = t.
std::array<MPoly, 2> ray_components(const Ray2& r, int var, int nvars) {
    if (r.is_integral()) return {MPoly::constant(nvars, Q(r.x())), MPoly::constant(nvars, Q(r.y()))};
    Q s(r.xsign());
    return {MPoly::constant(nvars, s), s * MPoly::variable(nvars, var)};
}

RealAlgebraic ray_variable(const Ray2& r) { return r.is_integral() ? RealAlgebraic(0) : r.slope(); }

}  // namespace

Ray2 Ray2::integral(const Z& x, const Z& y) {
    if (x == 0 && y == 0) throw DomainError("zero_ray", "zero vector does not define a ray");
    Z g;
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    Ray2 r;
    r.integral_ = true;
    r.x_ = x / g;
    r.y_ = y / g;
    return r;
}

Ray2 Ray2::from_class(const DivisorClass& d) {
    if (d.rank() != 2) throw DomainError("unsupported_rank", "rays live in rank 2");
    return integral(d[0], d[1]);
}

Ray2 Ray2::sloped(int xsign, const RealAlgebraic& slope) {
    if (xsign != 1 && xsign != -1) throw DomainError("ray", "x-sign must be +1 or -1");
    if (slope.is_rational()) {
        const Q& t = slope.rational_value();
        return integral(Z(xsign) * t.get_den(), Z(xsign) * t.get_num());
    }
    Ray2 r;
    r.integral_ = false;
    r.xsign_ = xsign;
    r.slope_ = slope;
    return r;
}

Ray2 Ray2::through(const RealAlgebraic& x, const RealAlgebraic& y) {
    int sx = x.sign();
    if (sx == 0) {
        int sy = y.sign();
        if (sy == 0) throw DomainError("zero_ray", "zero vector does not define a ray");
        return integral(0, sy);
    }
    if (x.is_rational() && y.is_rational()) {
        return Ray2::from_class(primitive_class({x.rational_value(), y.rational_value()}));
    }
    return sloped(sx, quotient(y, x));
}

std::optional<DivisorClass> Ray2::as_class() const {
    if (!integral_) return std::nullopt;
    return DivisorClass({x_, y_});
}

Ray2 Ray2::opposite() const {
    if (integral_) return integral(-x_, -y_);
    return sloped(-xsign_, slope_);
}

std::array<Q, 2> Ray2::approx_direction(const Q& width) const {
    if (integral_) return {Q(x_), Q(y_)};
    RealAlgebraic t = slope_.refined(width);
    Q s(xsign_);
    return {s, s * t.midpoint()};
}

std::array<double, 2> Ray2::unit_direction() const {
    auto v = approx_direction(Q(1, 1000000));
    double x = v[0].get_d(), y = v[1].get_d();
    double n = std::hypot(x, y);
    return {x / n, y / n};
}

std::string Ray2::to_string() const {
    if (integral_) return "(" + x_.get_str() + "," + y_.get_str() + ")";
    return std::string(xsign_ > 0 ? "+" : "-") + "(1, " + slope_.to_string() + ")";
}

bool operator==(const Ray2& a, const Ray2& b) {
    if (a.integral_ != b.integral_) return false;
    if (a.integral_) return a.x_ == b.x_ && a.y_ == b.y_;
    return a.xsign_ == b.xsign_ && compare(a.slope_, b.slope_) == 0;
}

int cross_sign(const Ray2& u, const Ray2& v) {
    if (u.is_integral() && v.is_integral()) return sign(u.x() * v.y() - u.y() * v.x());
    if (u.is_integral()) {
        // (p, q) x s(1, t) = s (p t - q)
        return v.xsign() * sign_at(Poly({Q(-u.y()), Q(u.x())}), v.slope());
    }
    if (v.is_integral()) {
        // s(1, t) x (p, q) = s (q - p t)
        return u.xsign() * sign_at(Poly({Q(v.y()), Q(-v.x())}), u.slope());
    }
    return u.xsign() * v.xsign() * compare(v.slope(), u.slope());
}

bool angle_less(const Ray2& u, const Ray2& v) {
    int hu = half_plane(u), hv = half_plane(v);
    if (hu != hv) return hu < hv;
    return cross_sign(u, v) > 0;
}

int form_sign(const std::vector<Q>& coeffs, const Ray2& r) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (r.is_integral()) {
        Q s = 0;
        for (int i = 0; i <= n; ++i) {
            Q term = coeffs[i];
            for (int k = 0; k < n - i; ++k) term *= Q(r.x());
            for (int k = 0; k < i; ++k) term *= Q(r.y());
            s += term;
        }
        return sign(s);
    }
    // f(s, s t) = s^n f(1, t)
    int sg = sign_at(Poly(coeffs), r.slope());
    return (n % 2 == 1 && r.xsign() < 0) ? -sg : sg;
}

std::vector<Ray2> form_root_rays(const std::vector<Q>& coeffs) {
    Poly g(coeffs);
    if (g.is_zero()) throw DomainError("zero_form", "binary form vanishes identically");
    std::vector<Ray2> out;
    for (const auto& t : isolate_real_roots(g)) {
        out.push_back(Ray2::sloped(1, t));
        out.push_back(Ray2::sloped(-1, t));
    }
    if (coeffs.back() == 0) {
        out.push_back(Ray2::integral(0, 1));
        out.push_back(Ray2::integral(0, -1));
    }
    std::sort(out.begin(), out.end(), angle_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Cone2::Cone2(Ray2 lo, Ray2 hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (cross_sign(lo_, hi_) <= 0) throw DomainError("non_salient", "cone must have angle strictly between 0 and pi");
}

bool cone_contains(const Cone2& c, const Ray2& r) { return cross_sign(c.lo(), r) > 0 && cross_sign(r, c.hi()) > 0; }

bool cone_contains(const Cone2& c, const DivisorClass& d) {
    if (d.is_zero()) return false;
    return cone_contains(c, Ray2::from_class(d));
}

bool cone_contains_closed(const Cone2& c, const Ray2& r) {
    return cross_sign(c.lo(), r) >= 0 && cross_sign(r, c.hi()) >= 0;
}

bool cone_contains_closed(const Cone2& c, const DivisorClass& d) {
    if (d.is_zero()) return true;
    return cone_contains_closed(c, Ray2::from_class(d));
}

bool on_boundary(const Cone2& c, const Ray2& r) { return cone_contains_closed(c, r) && !cone_contains(c, r); }

std::optional<Cone2> cone_intersect(const Cone2& a, const Cone2& b) {
    const Ray2& lo = cone_contains_closed(a, b.lo()) ? b.lo() : a.lo();
    const Ray2& hi = cone_contains_closed(a, b.hi()) ? b.hi() : a.hi();
    if (!cone_contains_closed(a, lo) || !cone_contains_closed(b, lo)) return std::nullopt;
    if (!cone_contains_closed(a, hi) || !cone_contains_closed(b, hi)) return std::nullopt;
    if (cross_sign(lo, hi) <= 0) return std::nullopt;
    return Cone2(lo, hi);
}

namespace {

// Interior integral point of the arc from lo counterclockwise to hi; the arc must be < pi.
DivisorClass arc_interior_point(const Ray2& lo, const Ray2& hi) {
    for (unsigned bits = 4;; bits += 4) {
        Q w(Z(1), Z(1) << bits);
        auto u = lo.approx_direction(w);
        auto v = hi.approx_direction(w);
        Q nu = abs(u[0]) + abs(u[1]), nv = abs(v[0]) + abs(v[1]);
        DivisorClass d = primitive_class({u[0] / nu + v[0] / nv, u[1] / nu + v[1] / nv});
        if (!d.is_zero()) {
            Ray2 r = Ray2::from_class(d);
            if (cross_sign(lo, r) > 0 && cross_sign(r, hi) > 0) return d;
        }
        if (bits > 4096) throw std::logic_error("could not sample an arc interior");
    }
}

}  // namespace

DivisorClass interior_point(const Cone2& c) { return arc_interior_point(c.lo(), c.hi()); }

DivisorClass canonical_point(const Cone2& c) {
    DivisorClass seed = interior_point(c);
    Z limit = abs(seed[0]) + abs(seed[1]);
    for (Z s = 1; s <= limit; ++s) {
        for (Z x = -s; x <= s; ++x) {
            Z rest = s - abs(x);
            DivisorClass lo({x, -rest}), hi({x, rest});
            if (cone_contains(c, lo)) return lo;
            if (rest != 0 && cone_contains(c, hi)) return hi;
        }
    }
    return seed;
}

std::string to_string(CubicTag tag) {
    switch (tag) {
        case CubicTag::ThreeDistinctReal: return "three_distinct_real";
        case CubicTag::DoubleRoot: return "double_root";
        case CubicTag::OneRealRoot: return "one_real_root";
    }
    return "";
}

CubicCase classify_cubic(const TrilinearForm& t) {
    auto c = t.cubic_coefficients();
    if (c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0)
        throw DomainError("zero_cubic", "the cubic form vanishes identically");
    auto h = hessian_coefficients(t);
    if (h[0] == 0 && h[1] == 0 && h[2] == 0)
        throw DomainError("triple_root", "the cubic is the cube of a linear form (three coincident roots)");
    const Q &a = c[0], &b = c[1], &cc = c[2], &d = c[3];
    Q disc = b * b * cc * cc - 4 * a * cc * cc * cc - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * cc * d;
    CubicTag tag = disc > 0 ? CubicTag::ThreeDistinctReal : disc < 0 ? CubicTag::OneRealRoot : CubicTag::DoubleRoot;
    return {tag, form_root_rays({c.begin(), c.end()}), disc};
}

std::vector<Ray2> hessian_root_rays(const TrilinearForm& t) {
    auto h = hessian_coefficients(t);
    if (h[0] == 0 && h[1] == 0 && h[2] == 0) return {};
    std::vector<Q> coeffs(h.begin(), h.end());
    if (coeffs[1] * coeffs[1] - 4 * coeffs[0] * coeffs[2] < 0) return {};
    return form_root_rays(coeffs);
}

ComponentSet positive_index_components(const TrilinearForm& t) {
    CubicCase cc = classify_cubic(t);
    auto cubic = t.cubic_coefficients();
    std::vector<Q> cubic_v(cubic.begin(), cubic.end());
    auto hess = hessian_coefficients(t);
    std::vector<Q> hess_v(hess.begin(), hess.end());

    struct Critical {
        Ray2 ray;
        bool essential;
    };
    std::vector<Critical> crit;
    for (const auto& r : cc.vanishing_rays) crit.push_back({r, true});
    for (const auto& r : hessian_root_rays(t)) crit.push_back({r, true});
    for (auto [x, y] : {std::pair{1, 0}, {0, 1}, {-1, 0}, {0, -1}}) crit.push_back({Ray2::integral(x, y), false});
    std::sort(crit.begin(), crit.end(), [](const Critical& a, const Critical& b) { return angle_less(a.ray, b.ray); });
    std::vector<Critical> uniq;
    for (auto& c : crit) {
        if (!uniq.empty() && uniq.back().ray == c.ray) {
            uniq.back().essential = uniq.back().essential || c.essential;
        } else {
            uniq.push_back(c);
        }
    }

    // Arc i runs from uniq[i] to uniq[i + 1]; with the axes present each arc is within a quadrant.
    const std::size_t n = uniq.size();
    std::vector<bool> positive(n);
    for (std::size_t i = 0; i < n; ++i) {
        DivisorClass d = arc_interior_point(uniq[i].ray, uniq[(i + 1) % n].ray);
        Ray2 r = Ray2::from_class(d);
        positive[i] = form_sign(cubic_v, r) > 0 && form_sign(hess_v, r) < 0;
    }

    // Merge positive arcs across inessential (axis-only) rays. Start at an arc whose left edge
    // is essential or whose predecessor is not positive, so no component is split by the start.
    std::size_t start = 0;
    bool found = false;
    for (std::size_t i = 0; i < n && !found; ++i) {
        if (!positive[i]) continue;
        std::size_t prev = (i + n - 1) % n;
        if (uniq[i].essential || !positive[prev]) {
            start = i;
            found = true;
        }
    }
    ComponentSet out;
    if (!found) return out;
    struct Span {
        std::size_t first, last;
    };
    std::vector<Span> spans;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t i = (start + k) % n;
        if (!positive[i]) continue;
        std::size_t prev = (i + n - 1) % n;
        bool extend = !spans.empty() && spans.back().last == prev && !uniq[i].essential && positive[prev];
        if (extend)
            spans.back().last = i;
        else
            spans.push_back({i, i});
    }
    std::vector<std::pair<std::size_t, Cone2>> cones;
    for (const auto& s : spans) {
        const Ray2& lo = uniq[s.first].ray;
        const Ray2& hi = uniq[(s.last + 1) % n].ray;
        if (cross_sign(lo, hi) <= 0)
            throw DomainError("non_salient_component", "a positive index component is not salient");
        cones.emplace_back(s.first, Cone2(lo, hi));
    }
    // uniq[0] is (1, 0): a component straddling it (first index after last) comes first.
    std::sort(cones.begin(), cones.end(), [&](const auto& a, const auto& b) {
        auto key = [&](const auto& c) {
            bool straddles = cone_contains(c.second, Ray2::integral(1, 0));
            return std::pair{straddles ? 0 : 1, c.first};
        };
        return key(a) < key(b);
    });
    for (auto& c : cones) out.components.push_back(c.second);
    return out;
}

std::vector<Q> quad_form_binary(const TrilinearForm& t, const DivisorClass& e) {
    QuadraticForm2 q = quad_form(t, e);
    return {q.a, 2 * q.b, q.c};
}

namespace {

// Cut rays of the arcs inside P, sorted from P.lo.
std::vector<Ray2> rays_inside(const Cone2& p, const std::vector<Ray2>& rays) {
    std::vector<Ray2> out;
    for (const auto& r : rays)
        if (cone_contains(p, r)) out.push_back(r);
    std::sort(out.begin(), out.end(), [&](const Ray2& a, const Ray2& b) { return cross_sign(a, b) > 0; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<Cone2> subdivide_by_quadrics(const Cone2& p, const TrilinearForm& t, const std::vector<DivisorClass>& es) {
    std::vector<std::vector<Q>> forms;
    std::vector<Ray2> cuts;
    for (const auto& e : es) {
        QuadraticForm2 q = quad_form(t, e);
        Signature s = signature(q);
        if (s.pos == 0)
            throw DomainError("negative_definite", "quadratic form of " + to_string(e) + " has no positive region");
        auto coeffs = quad_form_binary(t, e);
        forms.push_back(coeffs);
        if (s.zero < 2) {
            auto rr = form_root_rays(coeffs);
            cuts.insert(cuts.end(), rr.begin(), rr.end());
        }
    }
    std::vector<Ray2> inner = rays_inside(p, cuts);
    std::vector<Ray2> edges{p.lo()};
    edges.insert(edges.end(), inner.begin(), inner.end());
    edges.push_back(p.hi());
    std::vector<Cone2> out;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Cone2 piece(edges[i], edges[i + 1]);
        Ray2 sample = Ray2::from_class(interior_point(piece));
        bool ok = std::all_of(forms.begin(), forms.end(), [&](const auto& f) { return form_sign(f, sample) > 0; });
        if (ok) out.push_back(piece);
    }
    return out;
}

DeltaResult delta_ray(const Cone2& p, const TrilinearForm& t, const DivisorClass& e) {
    return delta_ray(p, t, Ray2::from_class(e));
}

DeltaResult delta_ray(const Cone2& p, const TrilinearForm& t, const Ray2& e) {
    require_rank2(t);
    // Matrix entries of E.L^2 as polynomials in the slope variable of E (variable 1; variable 0 is u).
    const int nv = 2;
    auto [ex, ey] = ray_components(e, 1, nv);
    auto m = [&](int i, int j) { return t.at(0, i, j) * ex + t.at(1, i, j) * ey; };
    MPoly a = m(0, 0), b = m(0, 1), c = m(1, 1);
    std::vector<RealAlgebraic> at{ray_variable(e)};
    auto value = [&](const MPoly& f) { return evaluate(f.substitute(0, 0), at); };
    RealAlgebraic av = value(a), bv = value(b), cv = value(c);
    if (av.sign() == 0 && bv.sign() == 0 && cv.sign() == 0)
        throw DomainError("zero_quadric", "E.L^2 vanishes identically");

    // Roots (1, u) of a + 2 b u + c u^2, plus the vertical ray when c = 0.
    MPoly u = MPoly::variable(nv, 0);
    MPoly q = a + Q(2) * b * u + c * u * u;
    std::vector<Ray2> roots;
    if (!(cv.sign() == 0 && bv.sign() == 0)) {
        for (const auto& r : real_roots_over(q, at)) {
            roots.push_back(Ray2::sloped(1, r));
            roots.push_back(Ray2::sloped(-1, r));
        }
    }
    if (cv.sign() == 0) {
        roots.push_back(Ray2::integral(0, 1));
        roots.push_back(Ray2::integral(0, -1));
    }
    std::vector<Ray2> open, boundary;
    for (const auto& r : roots) {
        if (cone_contains(p, r)) {
            if (std::find(open.begin(), open.end(), r) == open.end()) open.push_back(r);
        } else if (on_boundary(p, r)) {
            if (std::find(boundary.begin(), boundary.end(), r) == boundary.end()) boundary.push_back(r);
        }
    }
    std::optional<Ray2> delta;
    if (open.size() == 1)
        delta = open.front();
    else if (open.empty() && boundary.size() == 1)
        delta = boundary.front();
    if (!delta)
        throw DomainError("no_delta", open.size() > 1 ? "E.D^2 = 0 has more than one root ray in P"
                                                      : "E.D^2 = 0 has no root ray in the closure of P");

    // E.Delta.L vanishes for all L iff the matrix of E.L^2 kills Delta.
    std::vector<RealAlgebraic> pt{ray_variable(e), ray_variable(*delta)};
    auto [dx, dy] = ray_components(*delta, 1, 2);
    auto [ex2, ey2] = ray_components(e, 0, 2);
    auto m2 = [&](int i, int j) { return t.at(0, i, j) * ex2 + t.at(1, i, j) * ey2; };
    MPoly row0 = m2(0, 0) * dx + m2(0, 1) * dy;
    MPoly row1 = m2(0, 1) * dx + m2(1, 1) * dy;
    bool trivial = sign_of(row0, pt) == 0 && sign_of(row1, pt) == 0;
    return {*delta, trivial};
}

std::string to_string(MovBranch b) {
    switch (b) {
        case MovBranch::CubeNonNegative: return "cube_nonnegative";
        case MovBranch::NegativeCubeThreeLines: return "negative_cube_three_lines";
        case MovBranch::NegativeCubeEdge: return "negative_cube_edge";
    }
    return "";
}

Cone2 cone_between(const Ray2& a, const Ray2& b) { return cross_sign(a, b) > 0 ? Cone2(a, b) : Cone2(b, a); }

namespace {

// Components of a ray as algebraic numbers.
std::array<RealAlgebraic, 2> components(const Ray2& r) {
    if (r.is_integral()) return {RealAlgebraic(Q(r.x())), RealAlgebraic(Q(r.y()))};
    Q s(r.xsign());
    return {RealAlgebraic(s), r.slope().affine(s, 0)};
}

// D.E.E for a ray D as an algebraic number (linear in D).
RealAlgebraic d_e_e(const TrilinearForm& t, const Ray2& d, const DivisorClass& e) {
    Q g0 = triple(t, DivisorClass{1, 0}, e, e), g1 = triple(t, DivisorClass{0, 1}, e, e);
    auto c = components(d);
    MPoly f(2);
    f.add_term({1, 0}, g0);
    f.add_term({0, 1}, g1);
    return evaluate(f, {c[0], c[1]});
}

// Ray through base - k * e for an algebraic k.
Ray2 ray_minus(const Ray2& base, const RealAlgebraic& k, const DivisorClass& e) {
    auto [bx, by] = ray_components(base, 0, 2);
    MPoly kv = MPoly::variable(2, 1);
    MPoly x = bx - Q(e[0]) * kv, y = by - Q(e[1]) * kv;
    std::vector<RealAlgebraic> at{ray_variable(base), k};
    int sx = sign_of(x, at);
    if (sx == 0) {
        int sy = sign_of(y, at);
        if (sy == 0) throw DomainError("zero_ray", "zero vector does not define a ray");
        return Ray2::integral(0, sy);
    }
    return Ray2::sloped(sx, evaluate_ratio(y, x, at));
}

// -D^3 / D.E.E on a ray D, in the slope variable.
RealAlgebraic cube_over_dee(const TrilinearForm& t, const Ray2& d, const DivisorClass& e) {
    auto [dx, dy] = ray_components(d, 0, 1);
    auto k = t.cubic_coefficients();
    MPoly num(1);
    for (int i = 0; i <= 3; ++i) {
        MPoly term = MPoly::constant(1, -k[i]);
        for (int j = 0; j < 3 - i; ++j) term = term * dx;
        for (int j = 0; j < i; ++j) term = term * dy;
        num = num + term;
    }
    MPoly den = triple(t, DivisorClass{1, 0}, e, e) * dx + triple(t, DivisorClass{0, 1}, e, e) * dy;
    return evaluate_ratio(num, den, {ray_variable(d)});
}

}  // namespace

MovBound mov_bound_ray(const Cone2& p, const TrilinearForm& t, const DivisorClass& e, const Ray2& delta) {
    require_rank2(t);
    CubicCase cc = classify_cubic(t);
    Q e3 = cube(t, e);
    if (e3 >= 0) {
        RealAlgebraic dee = d_e_e(t, delta, e);
        if (dee.sign() >= 0)
            throw DomainError("index_violation", "Delta.E^2 must be negative off the trivial case");
        RealAlgebraic alpha = sqrt(cube_over_dee(t, delta, e));
        return {ray_minus(delta, alpha, e), MovBranch::CubeNonNegative, alpha, std::nullopt, delta};
    }
    if (cc.tag == CubicTag::ThreeDistinctReal) {
        auto qe = quad_form_binary(t, e);
        int slo = form_sign(qe, p.lo()), shi = form_sign(qe, p.hi());
        if ((slo > 0) == (shi > 0))
            throw DomainError("edge_choice", "exactly one edge B of P must satisfy B.E^2 > 0");
        const Ray2& b = slo > 0 ? p.lo() : p.hi();
        const Ray2& a = slo > 0 ? p.hi() : p.lo();
        // B + beta E is parallel to A at beta* = -cross(A, B) / cross(A, E).
        auto [ax, ay] = ray_components(a, 0, 2);
        auto [bx, by] = ray_components(b, 1, 2);
        MPoly cab = ax * by - ay * bx;
        MPoly cae = Q(e[1]) * ax - Q(e[0]) * ay;
        std::vector<RealAlgebraic> at{ray_variable(a), ray_variable(b)};
        RealAlgebraic num = -evaluate(cab, at), den = evaluate(cae, at);
        if (den.sign() == 0) throw DomainError("beta_unbounded", "E is parallel to the edge A");
        RealAlgebraic beta = quotient(num, den);
        if (beta.sign() <= 0) throw DomainError("beta_unbounded", "B + beta E leaves P immediately");
        RealAlgebraic two_beta = beta.affine(2, 0);
        return {ray_minus(b, two_beta, e), MovBranch::NegativeCubeThreeLines, two_beta, beta, b};
    }
    auto hess = hessian_coefficients(t);
    std::vector<Q> hv(hess.begin(), hess.end());
    bool lo_h = form_sign(hv, p.lo()) == 0, hi_h = form_sign(hv, p.hi()) == 0;
    if (lo_h == hi_h) throw DomainError("edge_choice", "exactly one edge of P must be a Hessian root");
    const Ray2& a = lo_h ? p.lo() : p.hi();
    return {a, MovBranch::NegativeCubeEdge, std::nullopt, std::nullopt, a};
}

}  // namespace cy3
