#include "cy3/pipeline.hpp"

#include "cy3/error.hpp"

#include <algorithm>
#include <set>

namespace cy3 {

std::string to_string(LineRelation r) {
    switch (r) {
        case LineRelation::EdgeOfP: return "edge_of_p";
        case LineRelation::ThirdCubicLine: return "third_cubic_line";
        case LineRelation::HessianRoot: return "hessian_root";
        case LineRelation::InteriorOfSector: return "interior_of_sector";
        case LineRelation::MissesP: return "misses_p";
    }
    return "";
}

std::string to_string(ScenarioTag t) {
    switch (t) {
        case ScenarioTag::NoRigid: return "no_rigid";
        case ScenarioTag::OneRigid: return "one_rigid";
        case ScenarioTag::TwoRigid_BothC2NonNeg: return "two_rigid_both_c2_nonneg";
        case ScenarioTag::TwoRigid_Mixed: return "two_rigid_mixed";
    }
    return "";
}

namespace {

bool contains_ray(const std::vector<Ray2>& rays, const Ray2& r) {
    return std::find(rays.begin(), rays.end(), r) != rays.end();
}

}  // namespace

C2LineRelation c2_line_relation(const TrilinearForm& t, const LinearFormC2& c) {
    require_rank2(t);
    if (c.rank() != 2) throw DomainError("dimension", "c2 must have rank 2");
    if (c.is_zero()) throw DomainError("c2_zero", "c2 vanishes identically");
    C2LineRelation out;
    Ray2 fwd = Ray2::integral(-c[1], c[0]);
    Ray2 back = fwd.opposite();
    out.direction = fwd;
    const auto cubic = classify_cubic(t);
    const auto hess = hessian_root_rays(t);
    out.on_cubic_root = contains_ray(cubic.vanishing_rays, fwd);
    out.on_hessian_root = contains_ray(hess, fwd);
    const auto comps = positive_index_components(t);
    for (std::size_t i = 0; i < comps.components.size(); ++i) {
        const Cone2& p = comps.components[i];
        ComponentLineRelation rel{i, LineRelation::MissesP, std::nullopt};
        if (on_boundary(p, fwd) || on_boundary(p, back)) {
            rel.relation = LineRelation::EdgeOfP;
        } else if (out.on_cubic_root) {
            rel.relation = LineRelation::ThirdCubicLine;
        } else if (out.on_hessian_root) {
            rel.relation = LineRelation::HessianRoot;
        } else if (cone_contains(p, fwd) || cone_contains(p, back)) {
            rel.relation = LineRelation::InteriorOfSector;
            rel.sector = i;
        }
        out.per_component.push_back(rel);
    }
    return out;
}

namespace {

struct RigidPool {
    struct Entry {
        DivisorClass cls;
        Z e3, c2e;
        MinimalModelKind kind;
    };
    std::vector<Entry> classes;
    std::vector<FamilyCandidate> families;
};

RigidPool rigid_pool(const TrilinearForm& t, const LinearFormC2& c, const AnalysisParams& params) {
    RigidPool pool;
    std::set<DivisorClass> seen;
    for (const auto& pair : enumerate_pairs(params.c2e_upper, params.node_cap)) {
        for (const auto& s : solve_classes(t, c, pair.e_cubed, pair.c2_e)) {
            if (s.degenerate) {
                pool.families.push_back({s.cls, *s.family_direction, s.e_cubed, s.c2_e});
                continue;
            }
            if (seen.insert(s.cls).second) pool.classes.push_back({s.cls, s.e_cubed, s.c2_e, pair.kind});
        }
    }
    return pool;
}

// Delta = s (1, t) rounds up as m s (1, 0) + ceil(m |t|) (0, s sgn t).
RoundupRecipe roundup_recipe(const Ray2& delta, const TrilinearForm& t, const LinearFormC2& c,
                             const AnalysisParams& params) {
    const int s = delta.xsign();
    const int st = delta.slope().sign();
    RoundupRecipe r{DivisorClass{s, 0}, DivisorClass{0, s * st}, st > 0 ? delta.slope() : -delta.slope(),
                    std::nullopt, ""};
    if (params.mu0) {
        try {
            r.result = roundup_effectivity(r.d0, r.e1, r.lambda, *params.mu0, t, c, params.m_cap);
        } catch (const DomainError& e) {
            r.error = e.code();
        }
    } else {
        r.error = "mu0_not_supplied";
    }
    return r;
}

constexpr std::size_t kFixedPartListLimit = 64;

CandidateReport candidate_report(const Cone2& p, const ComponentReport& comp, const RigidPool::Entry& entry,
                                 const TrilinearForm& t, const LinearFormC2& c, const AnalysisParams& params) {
    CandidateReport cr;
    cr.cls = entry.cls;
    cr.e_cubed = entry.e3;
    cr.c2_e = entry.c2e;
    cr.kinds = {entry.kind};
    try {
        cr.delta = delta_ray(p, t, entry.cls);
    } catch (const DomainError& e) {
        cr.diagnostics.push_back("delta: " + e.code());
        return cr;
    }
    if (auto cls = cr.delta->ray.as_class()) {
        cr.delta_effectivity = min_effectivity_m(t, c, *cls, params.m_cap);
    } else {
        cr.roundup = roundup_recipe(cr.delta->ray, t, c, params);
    }
    try {
        cr.mov = mov_bound_ray(p, t, entry.cls, cr.delta->ray);
    } catch (const DomainError& e) {
        cr.diagnostics.push_back("mov_bound: " + e.code());
        return cr;
    }
    if (comp.effectivity.m) {
        try {
            Cone2 between = cone_between(Ray2::from_class(entry.cls), cr.mov->r);
            auto list = fixed_part_bounds(Z(*comp.effectivity.m) * comp.canonical_d, {entry.cls}, t, c, between);
            if (list.size() > kFixedPartListLimit) {
                cr.diagnostics.push_back("fixed_part: truncated from " + std::to_string(list.size()));
                list.resize(kFixedPartListLimit);
            }
            cr.fixed_part = std::move(list);
        } catch (const DomainError& e) {
            cr.diagnostics.push_back("fixed_part: " + e.code());
        }
    }
    return cr;
}

std::string describe_m(const EffectivityResult& e) {
    return e.m ? "m = " + std::to_string(*e.m) : "no m up to the cap";
}

std::vector<Scenario> scenarios_for(const ComponentReport& comp, const AnalysisParams& params) {
    const std::vector<std::string> base = {"the Kahler cone lies in this component",
                                           "h^2 vanishing needed for the Riemann-Roch lower bound"};
    std::vector<Scenario> out;

    Scenario none{ScenarioTag::NoRigid,
                  "No rigid non-movable surface: the closure of the component is nef; canonical D = " +
                      to_string(comp.canonical_d) + " has chi(mD) >= 2 at " + describe_m(comp.effectivity) + ".",
                  {},
                  base};
    out.push_back(none);

    std::vector<std::size_t> all, zero_c2, neg_c2;
    bool irrational = false;
    for (std::size_t i = 0; i < comp.candidates.size(); ++i) {
        const auto& cand = comp.candidates[i];
        if (!cand.delta) continue;
        all.push_back(i);
        if (cand.c2_e == 0) zero_c2.push_back(i);
        if (cand.c2_e < 0) neg_c2.push_back(i);
        if (cand.roundup) irrational = true;
    }

    Scenario one{ScenarioTag::OneRigid, "", all, base};
    if (all.empty()) {
        one.summary = "No rigid candidate with c2.E <= 0 has a Delta ray here; a unique rigid surface must come from "
                      "the parametric family c2.E > 0, E^3 < 0.";
    } else {
        one.summary = std::to_string(all.size()) +
                      " rigid candidate(s) with c2.E <= 0; each bounds the movable cone by its Delta and R rays.";
    }
    if (params.l_hint) one.assumptions.push_back("semi-ample movable class L = " + to_string(*params.l_hint) + " supplied");
    out.push_back(one);

    Scenario both{ScenarioTag::TwoRigid_BothC2NonNeg, "", zero_c2, base};
    both.summary = std::to_string(zero_c2.size()) +
                   " candidate(s) with c2.E = 0; any further rigid surface with c2.E > 0 is constrained only "
                   "parametrically (slope bound and E^3 + (c2.E/2)^3 >= -18).";
    both.assumptions.push_back("parametric");
    out.push_back(both);

    Scenario mixed{ScenarioTag::TwoRigid_Mixed, "", neg_c2, base};
    mixed.summary = std::to_string(neg_c2.size()) + " candidate(s) with c2.E < 0 paired with a parametric partner.";
    if (irrational)
        mixed.summary += params.mu0 ? " Irrational Delta rays use the round-up recipe with the supplied mu0."
                                    : " Irrational Delta rays need mu0 for the round-up recipe.";
    mixed.assumptions.push_back("parametric");
    mixed.assumptions.push_back("r = " + std::to_string(params.r) + " (universal constant supplied as parameter)");
    out.push_back(mixed);
    return out;
}

}  // namespace

AnalysisReport analyze(const TrilinearForm& t, const LinearFormC2& c, const AnalysisParams& params) {
    require_rank2(t);
    if (c.rank() != 2) throw DomainError("dimension", "c2 must have rank 2");
    AnalysisReport rep;
    rep.mode = t.mode();
    rep.params = params;
    rep.notes = {"very ampleness: 10 D and 14 D for the relevant ample D",
                 "h0 is not computed; only Riemann-Roch lower bounds and the stated upper bounds",
                 "the component holding the Kahler cone is not selected; every component is reported"};
    if (t.mode() == FormMode::Topological) {
        rep.validation = validate_rr_integrality(t, c);
        if (!rep.validation.ok)
            throw DomainError("rr_integrality", "Riemann-Roch integrality fails: " + rep.validation.message);
    } else {
        rep.validation_waived = true;
    }

    try {
        rep.cubic = classify_cubic(t);
    } catch (const DomainError& e) {
        if (e.code() != "triple_root" && e.code() != "zero_cubic") throw;
        rep.verdict = Verdict{"degenerate_cubic", std::string(e.what())};
        return rep;
    }
    rep.components = positive_index_components(t);
    if (c.is_zero()) {
        rep.verdict = Verdict{"c2_zero", "c2 vanishes identically: an etale quotient of an abelian threefold, bounded"};
        return rep;
    }
    if (rep.components->components.empty()) {
        rep.verdict = Verdict{"empty_positive_cone", "inconsistent with an ample class: no positive index component"};
        return rep;
    }
    rep.c2_line = c2_line_relation(t, c);

    const RigidPool pool = rigid_pool(t, c, params);
    const auto& comps = rep.components->components;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const Cone2& p = comps[i];
        ComponentReport comp(i, p);
        comp.canonical_d = canonical_point(p);
        comp.effectivity = min_effectivity_m(t, c, comp.canonical_d, params.m_cap);
        comp.c2_line = rep.c2_line->per_component[i];
        if (comp.c2_line->relation == LineRelation::ThirdCubicLine || comp.c2_line->relation == LineRelation::HessianRoot)
            comp.notes.push_back("integral_delta_branch: c2 = 0 is the rational line through " +
                                 rep.c2_line->direction.to_string() + " (" + to_string(comp.c2_line->relation) +
                                 "); Delta may be taken integral with D1 = D2 = Delta");
        Cone2 neg(p.lo().opposite(), p.hi().opposite());
        std::vector<DivisorClass> kept;
        for (const auto& entry : pool.classes) {
            std::string reason;
            if (entry.cls.is_zero()) reason = "zero_class";
            else if (cone_contains_closed(p, entry.cls)) reason = "in_closed_p";
            else if (cone_contains_closed(neg, entry.cls)) reason = "in_closed_minus_p";
            if (!reason.empty()) {
                comp.excluded.push_back({entry.cls, entry.e3, entry.c2e, reason});
                continue;
            }
            if (entry.e3 == 0 && entry.c2e == 0)
                comp.notes.push_back("degenerate_pair_00: " + to_string(entry.cls) + " has E^3 = 0 and c2.E = 0");
            comp.candidates.push_back(candidate_report(p, comp, entry, t, c, params));
            kept.push_back(entry.cls);
        }
        comp.families = pool.families;
        for (const auto& f : pool.families)
            comp.notes.push_back("degenerate_family: " + to_string(f.base) + " + s " + to_string(f.direction));
        try {
            for (const auto& sub : subdivide_by_quadrics(p, t, kept)) {
                DivisorClass d = canonical_point(sub);
                comp.subcones.push_back({sub, d, min_effectivity_m(t, c, d, params.m_cap)});
            }
        } catch (const DomainError& e) {
            comp.notes.push_back("subcones: " + e.code());
        }
        comp.scenarios = scenarios_for(comp, params);
        rep.per_component.push_back(std::move(comp));
    }
    return rep;
}

}  // namespace cy3
