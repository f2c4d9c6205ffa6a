#include "cy3/bounds.hpp"

#include "cy3/error.hpp"

#include <algorithm>

namespace cy3 {

Q rr_chi(const TrilinearForm& t, const LinearFormC2& c, const DivisorClass& d, long m) {
    require_rank2(t);
    if (m < 1) throw DomainError("m_range", "m must be positive");
    Q mq(m);
    return mq * mq * mq * cube(t, d) / 6 + mq * Q(c2_eval(c, d)) / 12;
}

EffectivityResult min_effectivity_m(const TrilinearForm& t, const LinearFormC2& c, const DivisorClass& d, long m_cap) {
    require_rank2(t);
    const Q k = cube(t, d);
    const Z l = c2_eval(c, d);
    // Scale 2 m^3 k + m l >= 24 by den(k) to stay in Z.
    const Z kn = k.get_num(), kd = k.get_den();
    const Z target = 24 * kd;
    EffectivityResult out;
    for (long m = 1; m <= m_cap; ++m) {
        Z mz(m);
        Z lhs = 2 * mz * mz * mz * kn + mz * l * kd;
        if (lhs >= target) {
            out.m = m;
            out.chi_at_m = rr_chi(t, c, d, m);
            return out;
        }
        // Once 2 m^2 k + l < 0 with k <= 0 the value only decreases.
        if (kn <= 0 && 2 * mz * mz * kn + l * kd < 0) break;
        if (kn == 0 && l <= 0) break;
    }
    return out;
}

EffectivityResult roundup_effectivity(const DivisorClass& d0, const DivisorClass& e, const RealAlgebraic& lambda,
                                      const Q& mu0, const TrilinearForm& t, const LinearFormC2& c, long m_cap) {
    require_rank2(t);
    if (lambda.is_rational())
        throw DomainError("rational_lambda", "lambda is rational; use min_effectivity_m on the integral ray");
    if (lambda.sign() <= 0) throw DomainError("lambda_sign", "lambda must be positive");
    if (e.is_zero()) return min_effectivity_m(t, c, d0, m_cap);
    for (const auto& cert : relevant_m_search(lambda, mu0, m_cap)) {
        Z k = cert.floor + 1;
        DivisorClass cls = Z(cert.m) * d0 + k * e;
        Q chi = rr_chi(t, c, cls, 1);
        if (chi >= 2) {
            EffectivityResult out;
            out.m = cert.m;
            out.chi_at_m = chi;
            out.ceil_coeff = k;
            out.certificate = cert;
            return out;
        }
    }
    throw DomainError("cap_exhausted", "no relevant m up to the cap gives chi >= 2");
}

Z elliptic_h0_upper(long n, const Z& lle) {
    if (lle <= 0) throw DomainError("lle_sign", "L'^2.E must be positive");
    if (n < 0) throw DomainError("n_range", "n must be non-negative");
    Z nz(n);
    return 1 + lle * nz * (nz + 1) / 2;
}

std::string to_string(FibrationBranch b) { return b == FibrationBranch::Elliptic ? "elliptic" : "k3_abelian"; }

std::optional<long> fibration_threshold(const TrilinearForm& t, const LinearFormC2& c, const DivisorClass& d,
                                        const DivisorClass& l, const DivisorClass& e, long m, long r,
                                        FibrationBranch branch, long n_cap) {
    require_rank2(t);
    if (r < 1) throw DomainError("r_range", "r must be positive");
    if (m < 1) throw DomainError("m_range", "m must be positive");
    if (d.rank() != 2 || l.rank() != 2 || e.rank() != 2 || c.rank() != 2)
        throw DomainError("dimension", "classes must have rank 2");
    if (cube(t, d) <= 0) return std::nullopt;
    Z lle;
    if (branch == FibrationBranch::Elliptic) {
        Q v = triple(t, l, l, e);
        if (!is_integer(v)) throw DomainError("lle_integral", "L^2.E must be an integer");
        lle = v.get_num();
    }
    const Q lee = triple(t, l, e, e);
    for (long n = 1; n <= n_cap; ++n) {
        Q chi = rr_chi(t, c, d, n * m);
        Q bound = branch == FibrationBranch::K3Abelian ? Q(100 * Z(n) * m * r) * lee
                                                        : Q(elliptic_h0_upper(n * m * r, lle));
        if (chi > bound) return n;
    }
    return std::nullopt;
}

namespace {

// phi(v) = p v_x + q v_y with p, q known to lie in the given rational intervals.
struct Functional {
    Interval p, q;
    std::optional<Ray2> lo_edge, hi_edge;  // exact sign source for cone constraints
};

Interval eval_interval(const Functional& f, const DivisorClass& v) {
    auto term = [](const Interval& i, const Z& k) -> Interval {
        Q a = i.lo * k, b = i.hi * k;
        return a <= b ? Interval{a, b} : Interval{b, a};
    };
    Interval x = term(f.p, v[0]), y = term(f.q, v[1]);
    return {x.lo + y.lo, x.hi + y.hi};
}

Functional cross_functional(const Ray2& ray, bool ray_first, const Q& width) {
    // cross(ray, v) = rx v_y - ry v_x; cross(v, ray) = ry v_x - rx v_y.
    Interval rx, ry;
    if (ray.is_integral()) {
        rx = {Q(ray.x()), Q(ray.x())};
        ry = {Q(ray.y()), Q(ray.y())};
    } else {
        RealAlgebraic s = ray.slope().refined(width);
        Q sg(ray.xsign());
        rx = {sg, sg};
        ry = sg > 0 ? Interval{s.lo(), s.hi()} : Interval{-s.hi(), -s.lo()};
    }
    Functional f;
    if (ray_first) {
        f.p = {-ry.hi, -ry.lo};
        f.q = rx;
        f.lo_edge = ray;
    } else {
        f.p = ry;
        f.q = {-rx.hi, -rx.lo};
        f.hi_edge = ray;
    }
    return f;
}

int exact_sign(const Functional& f, const DivisorClass& v) {
    if (v.is_zero()) return 0;
    Ray2 r = Ray2::from_class(v);
    if (f.lo_edge) return cross_sign(*f.lo_edge, r);
    if (f.hi_edge) return cross_sign(r, *f.hi_edge);
    return sign(f.p.lo * v[0] + f.q.lo * v[1]);
}

}  // namespace

std::vector<MovableCandidate> fixed_part_bounds(const DivisorClass& md, const std::vector<DivisorClass>& es,
                                                const TrilinearForm& t, const LinearFormC2& c,
                                                const std::optional<Cone2>& cone) {
    require_rank2(t);
    if (md.rank() != 2 || c.rank() != 2) throw DomainError("dimension", "classes must have rank 2");
    for (const auto& e : es)
        if (e.rank() != 2) throw DomainError("dimension", "classes must have rank 2");
    const std::size_t n = es.size();

    Q width(1);
    mpq_div_2exp(width.get_mpq_t(), width.get_mpq_t(), 64);
    auto build = [&](const Q& w) {
        std::vector<Functional> fs;
        fs.push_back({{Q(c[0]), Q(c[0])}, {Q(c[1]), Q(c[1])}, std::nullopt, std::nullopt});
        if (cone) {
            fs.push_back(cross_functional(cone->lo(), true, w));
            fs.push_back(cross_functional(cone->hi(), false, w));
        }
        return fs;
    };
    std::vector<Functional> fs = build(width);
    std::vector<std::vector<int>> sg(fs.size(), std::vector<int>(n));
    for (std::size_t j = 0; j < fs.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) sg[j][i] = exact_sign(fs[j], es[i]);
    // Tighten the intervals until every positive weight has a positive lower bound.
    for (int round = 0;; ++round) {
        bool ok = true;
        for (std::size_t j = 0; j < fs.size() && ok; ++j)
            for (std::size_t i = 0; i < n && ok; ++i)
                if (sg[j][i] > 0 && eval_interval(fs[j], es[i]).lo <= 0) ok = false;
        if (ok) break;
        if (round > 64) throw DomainError("precision", "could not separate a cone weight from zero");
        mpq_div_2exp(width.get_mpq_t(), width.get_mpq_t(), 32);
        fs = build(width);
    }

    // Constraint j bounds a_i when its weight on E_i is positive and non-negative on every later E_k.
    std::vector<std::vector<std::size_t>> bounding(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < fs.size(); ++j) {
            if (sg[j][i] <= 0) continue;
            bool later_ok = true;
            for (std::size_t k = i + 1; k < n; ++k) later_ok = later_ok && sg[j][k] >= 0;
            if (later_ok) bounding[i].push_back(j);
        }
        if (bounding[i].empty())
            throw DomainError("unbounded", "fixed part enumeration is unbounded; supply a cone constraint");
    }

    auto feasible = [&](const DivisorClass& l) {
        if (c2_eval(c, l) < 0) return false;
        if (!cone || l.is_zero()) return true;
        return cone_contains_closed(*cone, l);
    };

    std::vector<MovableCandidate> out;
    std::vector<Z> coeffs(n);
    auto dfs = [&](auto&& self, std::size_t i, const DivisorClass& l) -> void {
        if (i == n) {
            if (feasible(l)) out.push_back({l, coeffs});
            return;
        }
        std::optional<Z> cap;
        for (std::size_t j : bounding[i]) {
            Interval g = eval_interval(fs[j], l);
            Interval w = eval_interval(fs[j], es[i]);
            Z b = g.hi < 0 ? Z(-1) : floor_q(g.hi / w.lo);
            if (!cap || b < *cap) cap = b;
        }
        DivisorClass cur = l;
        for (Z a = 0; a <= *cap; ++a) {
            coeffs[i] = a;
            self(self, i + 1, cur);
            cur = cur - es[i];
        }
        coeffs[i] = 0;
    };
    dfs(dfs, 0, md);
    return out;
}

}  // namespace cy3
