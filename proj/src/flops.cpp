#include "cy3/flops.hpp"

#include "cy3/error.hpp"

namespace cy3 {

Z counts_n1(const CurveCounts& counts) {
    Z s = 0;
    for (const auto& [d, n] : counts) s += n * d;
    return s;
}

Z counts_n3(const CurveCounts& counts) {
    Z s = 0;
    for (const auto& [d, n] : counts) s += n * d * d * d;
    return s;
}

FlopData::FlopData(std::vector<Z> eta, CurveCounts counts) : eta_(std::move(eta)), counts_(std::move(counts)) {
    Z g = 0;
    for (const auto& e : eta_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
    if (g != 1) throw DomainError("eta_not_primitive", "flop class eta must be primitive");
    if (counts_.empty()) throw DomainError("empty_counts", "flop needs at least one curve class");
    for (const auto& [d, n] : counts_)
        if (d <= 0 || n <= 0) throw DomainError("counts", "curve degrees and multiplicities must be positive");
}

Z FlopData::eta_of(const DivisorClass& d) const {
    if (d.rank() != eta_.size()) throw DomainError("dimension", "dimension mismatch between eta and class");
    Z s = 0;
    for (std::size_t i = 0; i < eta_.size(); ++i) s += eta_[i] * d[i];
    return s;
}

FormsState apply_flop(const FormsState& s, const FlopData& f) {
    const int n = s.trilinear.rank();
    if (static_cast<std::size_t>(n) != f.eta().size() || s.c2.rank() != f.eta().size())
        throw DomainError("dimension", "dimension mismatch between forms and flop data");
    const Q n3(f.n3());
    const Z n1 = f.n1();
    const auto& eta = f.eta();
    std::map<TrilinearForm::Key, Q> entries;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k)
                entries[{i, j, k}] = s.trilinear.at(i, j, k) - Q(eta[i] * eta[j] * eta[k]) * n3;
    std::vector<Z> c2(s.c2.coeffs());
    for (int i = 0; i < n; ++i) c2[i] += 2 * eta[i] * n1;
    return {TrilinearForm(n, entries, s.trilinear.mode()), LinearFormC2(std::move(c2))};
}

FlopData inverse(const FlopData& f) {
    std::vector<Z> eta = f.eta();
    for (auto& e : eta) e = -e;
    return FlopData(std::move(eta), f.counts());
}

std::pair<FormsState, std::vector<FlopStep>> apply_sequence(const FormsState& s, const std::vector<FlopData>& fs) {
    FormsState cur = s;
    std::vector<FlopStep> log;
    for (const auto& f : fs) {
        cur = apply_flop(cur, f);
        log.push_back({f.n1(), f.n3(), f.eta()});
    }
    return {cur, log};
}

}  // namespace cy3
