#pragma once

#include "cy3/cone2.hpp"
#include "cy3/forms.hpp"
#include "cy3/real_algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cy3 {

struct EffectivityResult {
    std::optional<long> m;
    Q chi_at_m;
    std::optional<Z> ceil_coeff;  // ceil(m lambda) on the round-up branch
    std::optional<RelevantM> certificate;
};

// chi(O(mD)) = m^3 D^3 / 6 + m c2.D / 12
Q rr_chi(const TrilinearForm& t, const LinearFormC2& c, const DivisorClass& d, long m);

// Smallest m <= m_cap with 2 m^3 D^3 + m c2.D >= 24.
EffectivityResult min_effectivity_m(const TrilinearForm& t, const LinearFormC2& c, const DivisorClass& d, long m_cap);

// Smallest relevant m (frac(m lambda) < mu0) for which m D0 + ceil(m lambda) E has chi >= 2.
EffectivityResult roundup_effectivity(const DivisorClass& d0, const DivisorClass& e, const RealAlgebraic& lambda,
                                      const Q& mu0, const TrilinearForm& t, const LinearFormC2& c, long m_cap);

// 1 + lle * n (n + 1) / 2
Z elliptic_h0_upper(long n, const Z& lle);

enum class FibrationBranch { Elliptic, K3Abelian };

std::string to_string(FibrationBranch b);

std::optional<long> fibration_threshold(const TrilinearForm& t, const LinearFormC2& c, const DivisorClass& d,
                                        const DivisorClass& l, const DivisorClass& e, long m, long r,
                                        FibrationBranch branch, long n_cap);

struct MovableCandidate {
    DivisorClass l;
    std::vector<Z> coeffs;
};

// All L = mD - sum a_i E_i with a_i >= 0, c2.L >= 0 and, if given, L in the closed cone.
std::vector<MovableCandidate> fixed_part_bounds(const DivisorClass& md, const std::vector<DivisorClass>& es,
                                                const TrilinearForm& t, const LinearFormC2& c,
                                                const std::optional<Cone2>& cone);

}  // namespace cy3
