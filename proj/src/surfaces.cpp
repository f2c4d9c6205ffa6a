#include "cy3/surfaces.hpp"

#include "cy3/error.hpp"
#include "cy3/real_algebra.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace cy3 {

std::string to_string(MinimalModelKind k) { return k == MinimalModelKind::TypeII ? "type_ii" : "type_iii_g0"; }

std::pair<Z, Z> replay(const SurfacePairCandidate& p) {
    Z e3 = p.root_e3, c2 = p.root_c2e;
    for (const auto& f : p.corrections) {
        c2 += 2 * f.eta_pairing * f.n1();
        e3 -= f.eta_pairing * f.eta_pairing * f.eta_pairing * f.n3();
    }
    return {e3, c2};
}

std::vector<MinimalModelPair> minimal_model_pairs(const Z& c2e_upper) {
    std::vector<MinimalModelPair> out;
    // c2.E' = 12 - 2 E'^3; Type II has 1 <= E'^3 <= 9 (c2.E' in [-6, 10]); Type III (g = 0) has c2.E' >= -4.
    for (Z c2 = -6; c2 <= c2e_upper; c2 += 2) {
        Z e3 = (12 - c2) / 2;
        if (e3 >= 1 && e3 <= 9) out.push_back({e3, c2, MinimalModelKind::TypeII});
        if (c2 >= -4) out.push_back({e3, c2, MinimalModelKind::TypeIII_g0});
    }
    return out;
}

namespace {

// Every flop correction contributes (2 k, -k^3) per curve with k = eta-pairing * d >= 1, so the
// reachable corrections are exactly the integer partitions; a partition is recorded as one flop
// with eta-pairing 1 and counts {k -> multiplicity}.
class PartitionWalk {
public:
    PartitionWalk(long node_cap) : cap_(node_cap) {}

    template <class Visit>
    void run(const Z& max_sum, const Z& max_cubes, Visit&& visit) {
        CurveCounts parts;
        walk(max_sum, max_cubes, max_sum, Z(0), Z(0), parts, visit);
    }

private:
    template <class Visit>
    void walk(const Z& max_sum, const Z& max_cubes, Z largest, const Z& sum, const Z& cubes, CurveCounts& parts,
              Visit& visit) {
        if (++nodes_ > cap_) throw DomainError("node_cap", "enumeration node cap exceeded");
        visit(sum, cubes, parts);
        for (Z k = std::min(largest, Z(max_sum - sum)); k >= 1; --k) {
            Z k3 = k * k * k;
            if (cubes + k3 > max_cubes) continue;
            ++parts[k];
            walk(max_sum, max_cubes, k, sum + k, cubes + k3, parts, visit);
            if (--parts[k] == 0) parts.erase(k);
        }
    }

    long cap_;
    long nodes_ = 0;
};

void sort_pairs(std::vector<SurfacePairCandidate>& v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        if (a.c2_e != b.c2_e) return a.c2_e < b.c2_e;
        return a.e_cubed > b.e_cubed;
    });
}

std::vector<SurfacePairCandidate> close_under_flops(const std::vector<MinimalModelPair>& roots,
                                                    const std::function<void(const MinimalModelPair&, Z&, Z&)>& budgets,
                                                    long node_cap) {
    std::set<std::pair<Z, Z>> seen;
    std::vector<SurfacePairCandidate> out;
    PartitionWalk walk(node_cap);
    for (const auto& root : roots) {
        Z max_sum, max_cubes;
        budgets(root, max_sum, max_cubes);
        if (max_sum < 0 || max_cubes < 0) continue;
        walk.run(max_sum, max_cubes, [&](const Z& sum, const Z& cubes, const CurveCounts& parts) {
            SurfacePairCandidate p{root.e3 - cubes, root.c2e + 2 * sum, root.kind, root.e3, root.c2e, {}};
            if (!seen.insert({p.e_cubed, p.c2_e}).second) return;
            if (!parts.empty()) p.corrections.push_back({Z(1), parts});
            out.push_back(std::move(p));
        });
    }
    sort_pairs(out);
    return out;
}

}  // namespace

std::vector<SurfacePairCandidate> enumerate_pairs(const Z& c2e_upper, long node_cap) {
    auto roots = minimal_model_pairs(c2e_upper);
    return close_under_flops(
        roots,
        [&](const MinimalModelPair& r, Z& max_sum, Z& max_cubes) {
            Z slack = c2e_upper - r.c2e;
            max_sum = slack >= 0 ? Z(slack / 2) : Z(-1);
            max_cubes = max_sum >= 0 ? Z(max_sum * max_sum * max_sum) : Z(-1);
        },
        node_cap);
}

std::vector<SurfacePairCandidate> enumerate_pairs_by_cube(const Z& e3_lower, const Z& c2e_cap, long node_cap) {
    if (e3_lower > 9) return {};
    // Roots need E'^3 >= e3_lower, i.e. c2.E' <= 12 - 2 e3_lower.
    Z c2_upper = 12 - 2 * e3_lower;
    if (c2_upper > c2e_cap) throw DomainError("c2e_cap", "c2.E cap exceeded while enumerating by cube");
    auto roots = minimal_model_pairs(c2_upper);
    auto out = close_under_flops(
        roots,
        [&](const MinimalModelPair& r, Z& max_sum, Z& max_cubes) {
            max_cubes = r.e3 - e3_lower;
            // sum k <= sum k^3
            max_sum = max_cubes;
        },
        node_cap);
    for (const auto& p : out)
        if (p.c2_e > c2e_cap) throw DomainError("c2e_cap", "c2.E cap exceeded while enumerating by cube");
    return out;
}

bool neg18_filter(const Z& e_cubed, const Z& c2_e) {
    if (c2_e % 2 != 0) throw DomainError("odd_c2", "c2.E must be even");
    Z h = c2_e / 2;
    return e_cubed + h * h * h >= -18;
}

SlopeBound case_b_slope_bound(const Q& k1, const Q& k2, long denom_bound) {
    if (k1 <= 0 || k2 <= 0) throw DomainError("slope_bound", "k1 and k2 must be positive");
    if (denom_bound < 1) throw DomainError("slope_bound", "denominator bound must be positive");
    SlopeBound r;
    r.c = k2 * k2 * k2 / (4 * k1);
    r.c_prime = r.c;
    const Q d(denom_bound);
    // b > c a forces a^2 < 36 / (c k1).
    const Q a_sq_limit = 36 / (r.c * k1);
    const std::size_t list_limit = 10000;
    for (long j = 1;; ++j) {
        Q a = Q(j) / d;
        if (a * a >= a_sq_limit) break;
        Q bound = r.c * a / 2 + 18 / (k1 * a);
        Q bmax = Q(floor_q(bound * d)) / d;
        if (bmax > r.c * a) {
            Q ratio = bmax / a;
            if (ratio > r.c_prime) r.c_prime = ratio;
            if (r.exceptional.size() < list_limit) r.exceptional.emplace_back(a, bmax);
        }
        // b / a <= c / 2 + 18 / (k1 a^2) decreases in a; stop once it cannot beat c'.
        if (r.exceptional.size() >= list_limit && r.c / 2 + 18 / (k1 * a * a) <= r.c_prime) break;
    }
    return r;
}

std::vector<SurfaceClassCandidate> solve_classes(const TrilinearForm& t, const LinearFormC2& c, const Z& e3,
                                                 const Z& c2e) {
    require_rank2(t);
    if (c.rank() != 2) throw DomainError("dimension", "c2 must have rank 2");
    if (c.is_zero()) throw DomainError("c2_zero", "solve_classes needs a nonzero c2 form");
    Z g, u, v;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), c[0].get_mpz_t(), c[1].get_mpz_t());
    if (c2e % g != 0) return {};
    Z f = c2e / g;
    DivisorClass base({u * f, v * f});
    DivisorClass dir({c[1] / g, -c[0] / g});
    // base has small coefficients when reduced along dir to the segment nearest the origin.
    {
        Z num = -(base[0] * dir[0] + base[1] * dir[1]);
        Z den = dir[0] * dir[0] + dir[1] * dir[1];
        Q q(2 * num + den, 2 * den);
        q.canonicalize();
        Z s = floor_q(q);
        base = base + s * dir;
    }
    Q p0 = cube(t, base) - Q(e3);
    Q p1 = 3 * triple(t, base, base, dir);
    Q p2 = 3 * triple(t, base, dir, dir);
    Q p3 = cube(t, dir);
    Poly p({p0, p1, p2, p3});
    if (p.is_zero()) {
        SurfaceClassCandidate fam{base, e3, c2e, true, dir};
        return {fam};
    }
    std::set<Z> params;
    for (const auto& root : isolate_real_roots(p)) {
        RealAlgebraic r = root.refined(Q(1, 4));
        for (Z s = floor_q(r.lo()); s <= ceil_q(r.hi()); ++s)
            if (p(Q(s)) == 0) params.insert(s);
    }
    std::vector<SurfaceClassCandidate> out;
    for (const auto& s : params) out.push_back({base + s * dir, e3, c2e, false, std::nullopt});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.cls < b.cls; });
    return out;
}

}  // namespace cy3
