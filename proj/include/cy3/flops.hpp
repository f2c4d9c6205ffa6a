#pragma once

#include "cy3/forms.hpp"

#include <map>
#include <utility>
#include <vector>

namespace cy3 {

// Curve class multiplicities d -> n_d of a flop.
using CurveCounts = std::map<Z, Z>;

Z counts_n1(const CurveCounts& counts);  // sum n_d d
Z counts_n3(const CurveCounts& counts);  // sum n_d d^3

class FlopData {
public:
    // Throws unless eta is primitive and counts is nonempty with positive d and n_d.
    FlopData(std::vector<Z> eta, CurveCounts counts);

    const std::vector<Z>& eta() const { return eta_; }
    const CurveCounts& counts() const { return counts_; }
    Z n1() const { return counts_n1(counts_); }
    Z n3() const { return counts_n3(counts_); }
    Z eta_of(const DivisorClass& d) const;

    friend bool operator==(const FlopData&, const FlopData&) = default;

private:
    std::vector<Z> eta_;
    CurveCounts counts_;
};

struct FormsState {
    TrilinearForm trilinear;
    LinearFormC2 c2;
    friend bool operator==(const FormsState&, const FormsState&) = default;
};

struct FlopStep {
    Z n1, n3;
    std::vector<Z> eta;
};

FormsState apply_flop(const FormsState& s, const FlopData& f);
FlopData inverse(const FlopData& f);
std::pair<FormsState, std::vector<FlopStep>> apply_sequence(const FormsState& s, const std::vector<FlopData>& fs);

}  // namespace cy3
