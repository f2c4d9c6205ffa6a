#pragma once

#include "cy3/poly.hpp"
#include "cy3/rational.hpp"

#include <functional>
#include <string>
#include <vector>

namespace cy3 {

struct Interval {
    Q lo, hi;
};

// A real algebraic number: the unique root of a squarefree integer polynomial in [lo, hi].
// Rational values always carry a linear polynomial and a degenerate interval lo == hi. For
// irrational values lo < hi, the polynomial changes sign across the root, and 0 is not a root.
class RealAlgebraic {
public:
    RealAlgebraic() : RealAlgebraic(Q(0)) {}
    RealAlgebraic(const Q& value);  // NOLINT: rationals embed implicitly
    RealAlgebraic(long value) : RealAlgebraic(Q(value)) {}  // NOLINT

    // Throws unless poly has exactly one real root in the closed interval [lo, hi].
    static RealAlgebraic from_root(const Poly& poly, const Q& lo, const Q& hi);
    static RealAlgebraic from_root(const std::vector<Z>& poly, const Q& lo, const Q& hi);

    bool is_rational() const { return lo_ == hi_; }
    const Q& rational_value() const;
    const std::vector<Z>& poly() const { return coeffs_; }
    const Poly& defining_poly() const { return poly_; }
    const Q& lo() const { return lo_; }
    const Q& hi() const { return hi_; }

    // Same number with an isolating interval no wider than width.
    RealAlgebraic refined(const Q& width) const;
    // Halves the interval in place. No-op for rationals.
    void bisect();

    int sign() const;
    Q midpoint() const { return (lo_ + hi_) / 2; }
    double approx() const;

    RealAlgebraic operator-() const;
    // a * x + b for rationals a, b.
    RealAlgebraic affine(const Q& a, const Q& b) const;

    std::string to_string() const;

private:
    RealAlgebraic(Poly poly, Q lo, Q hi, bool already_checked);
    void normalize();

    Poly poly_;
    std::vector<Z> coeffs_;
    Q lo_, hi_;
};

// All distinct real roots in ascending order.
std::vector<RealAlgebraic> isolate_real_roots(const Poly& p);

// -1, 0, +1.
int compare(const RealAlgebraic& a, const RealAlgebraic& b);
int sign_at(const Poly& p, const RealAlgebraic& a);

inline bool operator==(const RealAlgebraic& a, const RealAlgebraic& b) { return compare(a, b) == 0; }
inline bool operator<(const RealAlgebraic& a, const RealAlgebraic& b) { return compare(a, b) < 0; }

// Value of the polynomial f at the point `at` (one entry per variable of f).
RealAlgebraic evaluate(const MPoly& f, const std::vector<RealAlgebraic>& at);
int sign_of(const MPoly& f, const std::vector<RealAlgebraic>& at);
// num / den at the point; one elimination instead of two evaluations and a quotient.
RealAlgebraic evaluate_ratio(const MPoly& num, const MPoly& den, const std::vector<RealAlgebraic>& at);
RealAlgebraic quotient(const RealAlgebraic& a, const RealAlgebraic& b);
RealAlgebraic sqrt(const RealAlgebraic& a);
// Real roots u of q(u, at...), where variable 0 of q is u and the rest are bound to `at`.
std::vector<RealAlgebraic> real_roots_over(const MPoly& q, const std::vector<RealAlgebraic>& at);

// Certificate that frac(m * lambda) < mu0: floor(m lambda) = k and lambda in [lo, hi] with
// k <= m lo and m hi < k + mu0.
struct RelevantM {
    long m = 0;
    Z floor;
    Q lo, hi;
};

std::vector<RelevantM> relevant_m_search(const RealAlgebraic& lambda, const Q& mu0, long m_cap);
// Re-checks a certificate from scratch.
bool verify_relevant(const RealAlgebraic& lambda, const Q& mu0, const RelevantM& cert);

}  // namespace cy3
