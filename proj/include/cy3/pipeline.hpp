#pragma once

#include "cy3/bounds.hpp"
#include "cy3/cone2.hpp"
#include "cy3/forms.hpp"
#include "cy3/surfaces.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cy3 {

enum class LineRelation { EdgeOfP, ThirdCubicLine, HessianRoot, InteriorOfSector, MissesP };

std::string to_string(LineRelation r);

struct ComponentLineRelation {
    std::size_t component = 0;
    LineRelation relation = LineRelation::MissesP;
    std::optional<std::size_t> sector;
};

struct C2LineRelation {
    Ray2 direction;  // one of the two rays spanning the line c2 = 0
    bool on_cubic_root = false;
    bool on_hessian_root = false;
    std::vector<ComponentLineRelation> per_component;
};

C2LineRelation c2_line_relation(const TrilinearForm& t, const LinearFormC2& c);

struct AnalysisParams {
    std::optional<Q> mu0;
    long r = 1;
    long m_cap = 10000;
    long n_cap = 10000;
    long node_cap = kDefaultNodeCap;
    Z c2e_upper = 0;
    // Optional semi-ample movable class supplied by the caller.
    std::optional<DivisorClass> l_hint;
};

enum class ScenarioTag { NoRigid, OneRigid, TwoRigid_BothC2NonNeg, TwoRigid_Mixed };

std::string to_string(ScenarioTag t);

struct Scenario {
    ScenarioTag tag;
    std::string summary;
    std::vector<std::size_t> candidates;  // indices into ComponentReport::candidates
    std::vector<std::string> assumptions;
};

struct RoundupRecipe {
    DivisorClass d0, e1;
    RealAlgebraic lambda;
    std::optional<EffectivityResult> result;  // computed when mu0 is given
    std::string error;
};

struct CandidateReport {
    DivisorClass cls;
    Z e_cubed, c2_e;
    std::vector<MinimalModelKind> kinds;
    std::optional<DeltaResult> delta;
    std::optional<MovBound> mov;
    std::optional<EffectivityResult> delta_effectivity;  // integral Delta
    std::optional<RoundupRecipe> roundup;                // irrational Delta
    std::optional<std::vector<MovableCandidate>> fixed_part;
    std::vector<std::string> diagnostics;
};

struct ExcludedCandidate {
    DivisorClass cls;
    Z e_cubed, c2_e;
    std::string reason;
};

struct FamilyCandidate {
    DivisorClass base, direction;
    Z e_cubed, c2_e;
};

struct SubconeReport {
    Cone2 cone;
    DivisorClass d;
    EffectivityResult effectivity;
};

struct ComponentReport {
    ComponentReport(std::size_t i, Cone2 c) : index(i), cone(std::move(c)) {}

    std::size_t index = 0;
    Cone2 cone;
    DivisorClass canonical_d;
    EffectivityResult effectivity;
    std::vector<CandidateReport> candidates;
    std::vector<ExcludedCandidate> excluded;
    std::vector<FamilyCandidate> families;
    std::vector<SubconeReport> subcones;
    std::optional<ComponentLineRelation> c2_line;
    std::vector<Scenario> scenarios;
    std::vector<std::string> notes;
};

struct Verdict {
    std::string code;
    std::string message;
};

struct AnalysisReport {
    FormMode mode;
    ValidationResult validation;
    bool validation_waived = false;
    std::optional<CubicCase> cubic;
    std::optional<ComponentSet> components;
    std::optional<Verdict> verdict;
    std::optional<C2LineRelation> c2_line;
    std::vector<ComponentReport> per_component;
    AnalysisParams params;
    std::vector<std::string> notes;
};

// Throws DomainError when Topological forms fail validation.
AnalysisReport analyze(const TrilinearForm& t, const LinearFormC2& c, const AnalysisParams& params);

}  // namespace cy3
