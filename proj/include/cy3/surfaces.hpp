#pragma once

#include "cy3/flops.hpp"
#include "cy3/forms.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cy3 {

enum class MinimalModelKind { TypeII, TypeIII_g0 };

std::string to_string(MinimalModelKind k);

struct MinimalModelPair {
    Z e3, c2e;
    MinimalModelKind kind;
    friend bool operator==(const MinimalModelPair&, const MinimalModelPair&) = default;
};

// Correction to (E^3, c2.E) from flops with pairing eta_pairing = E'.eta >= 0.
struct FlopCorrection {
    Z eta_pairing;
    CurveCounts counts;
    Z n1() const { return counts_n1(counts); }
    Z n3() const { return counts_n3(counts); }
};

struct SurfacePairCandidate {
    Z e_cubed, c2_e;
    MinimalModelKind kind;
    Z root_e3, root_c2e;
    std::vector<FlopCorrection> corrections;
};

// Recomputes (e_cubed, c2_e) from the root and the corrections.
std::pair<Z, Z> replay(const SurfacePairCandidate& p);

inline constexpr long kDefaultNodeCap = 1000000;

std::vector<MinimalModelPair> minimal_model_pairs(const Z& c2e_upper);
std::vector<SurfacePairCandidate> enumerate_pairs(const Z& c2e_upper, long node_cap = kDefaultNodeCap);
std::vector<SurfacePairCandidate> enumerate_pairs_by_cube(const Z& e3_lower, const Z& c2e_cap,
                                                          long node_cap = kDefaultNodeCap);
bool neg18_filter(const Z& e_cubed, const Z& c2_e);
inline bool neg18_filter(const SurfacePairCandidate& p) { return neg18_filter(p.e_cubed, p.c2_e); }

struct SlopeBound {
    Q c;        // k2^3 / (4 k1)
    Q c_prime;  // max(c, b / a over the exceptional candidates)
    // For each scanned a with an exceptional b > c a: (a, largest admissible b).
    std::vector<std::pair<Q, Q>> exceptional;
};

SlopeBound case_b_slope_bound(const Q& k1, const Q& k2, long denom_bound);

struct SurfaceClassCandidate {
    DivisorClass cls;
    Z e_cubed, c2_e;
    bool degenerate = false;
    // Set on the degenerate branch: every cls + s * family_direction is a solution.
    std::optional<DivisorClass> family_direction;
};

std::vector<SurfaceClassCandidate> solve_classes(const TrilinearForm& t, const LinearFormC2& c, const Z& e3,
                                                 const Z& c2e);

}  // namespace cy3
