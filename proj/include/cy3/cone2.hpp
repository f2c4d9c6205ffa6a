#pragma once

#include "cy3/forms.hpp"
#include "cy3/real_algebra.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace cy3 {

// A ray from the origin. Integral rays hold a primitive vector; all others hold x-sign s and an
// irrational slope t, i.e. the direction s * (1, t).
class Ray2 {
public:
    // The ray through (1, 0).
    Ray2() = default;
    static Ray2 integral(const Z& x, const Z& y);
    static Ray2 from_class(const DivisorClass& d);
    static Ray2 sloped(int xsign, const RealAlgebraic& slope);
    // Ray through (x, y) for real coordinates, not both zero.
    static Ray2 through(const RealAlgebraic& x, const RealAlgebraic& y);

    bool is_integral() const { return integral_; }
    const Z& x() const { return x_; }
    const Z& y() const { return y_; }
    int xsign() const { return xsign_; }
    const RealAlgebraic& slope() const { return slope_; }
    std::optional<DivisorClass> as_class() const;

    Ray2 opposite() const;
    // A rational vector on (integral) or near (sloped) the ray; exact for integral rays.
    std::array<Q, 2> approx_direction(const Q& width) const;
    std::array<double, 2> unit_direction() const;
    std::string to_string() const;

    friend bool operator==(const Ray2& a, const Ray2& b);

private:
    bool integral_ = true;
    Z x_ = 1, y_ = 0;
    int xsign_ = 1;
    RealAlgebraic slope_;
};

int cross_sign(const Ray2& u, const Ray2& v);
// Strict counterclockwise order by angle in [0, 2 pi) measured from (1, 0).
bool angle_less(const Ray2& u, const Ray2& v);
// Sign of the binary form sum_i c_i x^(n-i) y^i on the ray.
int form_sign(const std::vector<Q>& coeffs, const Ray2& r);
// All rays on which the binary form vanishes, both directions, ccw sorted from (1, 0).
std::vector<Ray2> form_root_rays(const std::vector<Q>& coeffs);

// Salient cone from ray_lo counterclockwise to ray_hi (angle strictly between 0 and pi).
class Cone2 {
public:
    Cone2(Ray2 lo, Ray2 hi);
    const Ray2& lo() const { return lo_; }
    const Ray2& hi() const { return hi_; }
    friend bool operator==(const Cone2&, const Cone2&) = default;

private:
    Ray2 lo_, hi_;
};

// Membership in the open cone; boundary rays are not contained.
bool cone_contains(const Cone2& c, const Ray2& r);
bool cone_contains(const Cone2& c, const DivisorClass& d);
bool cone_contains_closed(const Cone2& c, const Ray2& r);
bool cone_contains_closed(const Cone2& c, const DivisorClass& d);
bool on_boundary(const Cone2& c, const Ray2& r);
std::optional<Cone2> cone_intersect(const Cone2& a, const Cone2& b);
// Some integral class strictly inside the open cone.
DivisorClass interior_point(const Cone2& c);
// Interior integral class with the least |x| + |y|, ties broken lexicographically.
DivisorClass canonical_point(const Cone2& c);

enum class CubicTag { ThreeDistinctReal, DoubleRoot, OneRealRoot };

struct CubicCase {
    CubicTag tag;
    std::vector<Ray2> vanishing_rays;
    Q discriminant;
};

std::string to_string(CubicTag tag);

struct ComponentSet {
    std::vector<Cone2> components;
};

CubicCase classify_cubic(const TrilinearForm& t);
std::vector<Ray2> hessian_root_rays(const TrilinearForm& t);
ComponentSet positive_index_components(const TrilinearForm& t);

// Coefficients (x^2, xy, y^2) of D -> E.D^2 for an integral or sloped E.
std::vector<Q> quad_form_binary(const TrilinearForm& t, const DivisorClass& e);

std::vector<Cone2> subdivide_by_quadrics(const Cone2& p, const TrilinearForm& t, const std::vector<DivisorClass>& es);

struct DeltaResult {
    Ray2 ray;
    bool e_dot_delta_trivial;
};

DeltaResult delta_ray(const Cone2& p, const TrilinearForm& t, const Ray2& e);
DeltaResult delta_ray(const Cone2& p, const TrilinearForm& t, const DivisorClass& e);

enum class MovBranch { CubeNonNegative, NegativeCubeThreeLines, NegativeCubeEdge };

std::string to_string(MovBranch b);

struct MovBound {
    Ray2 r;
    MovBranch branch;
    // alpha* for the first branch, 2 beta* for the second; absent when R is the edge ray A.
    std::optional<RealAlgebraic> alpha_bound;
    std::optional<RealAlgebraic> beta_star;
    // Ray from which alpha is measured: Delta or B.
    Ray2 base;
};

MovBound mov_bound_ray(const Cone2& p, const TrilinearForm& t, const DivisorClass& e, const Ray2& delta);

// The closed cone spanned by E and R as a Cone2 with counterclockwise orientation.
Cone2 cone_between(const Ray2& a, const Ray2& b);

enum class RayKind { CubicRoot, HessianRoot, PEdge, E, Delta, R };

struct SceneRay {
    Ray2 ray;
    RayKind kind;
    std::string label;
};

struct SceneCone {
    Cone2 cone;
    std::string label;
};

struct Scene {
    std::vector<SceneRay> rays;
    std::vector<SceneCone> cones;
};

Scene scene_for(const TrilinearForm& t);
std::string render_svg(const Scene& scene);

}  // namespace cy3
