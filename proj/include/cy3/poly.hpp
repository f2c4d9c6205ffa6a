#pragma once

#include "cy3/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace cy3 {

// Dense univariate polynomial over Q, coefficients from low to high degree.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Q> coeffs);
    static Poly from_integers(const std::vector<Z>& coeffs);
    static Poly constant(const Q& c) { return Poly({c}); }
    static Poly identity() { return Poly({Q(0), Q(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Q>& coeffs() const { return c_; }
    Q coeff(int i) const { return i >= 0 && i < int(c_.size()) ? c_[i] : Q(0); }
    const Q& lead() const { return c_.back(); }

    Q operator()(const Q& x) const;
    Poly derivative() const;
    Poly monic() const;
    // Integer coefficients with content 1 and positive leading coefficient.
    std::vector<Z> primitive_integers() const;
    // Positive multiple with coprime integer coefficients; signs are unchanged.
    Poly primitive() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Q& k, const Poly& a);
    friend bool operator==(const Poly&, const Poly&) = default;

private:
    void trim();
    std::vector<Q> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);
Poly squarefree_part(const Poly& p);
// p(x) with x replaced by a x + b.
Poly compose_linear(const Poly& p, const Q& a, const Q& b);

class SturmSequence {
public:
    explicit SturmSequence(const Poly& p);
    // Number of distinct real roots in the half-open interval (lo, hi].
    int count(const Q& lo, const Q& hi) const;
    // Number of distinct real roots in the closed interval [lo, hi].
    int count_closed(const Q& lo, const Q& hi) const;
    int total() const;
    const Poly& poly() const { return seq_.front(); }

private:
    int variations_at(const Q& x) const;
    int variations_at_infinity(int side) const;
    std::vector<Poly> seq_;
};

// Every real root of a nonzero polynomial has absolute value below this bound.
Q root_bound(const Poly& p);

// Sparse multivariate polynomial over Q.
class MPoly {
public:
    using Exponents = std::vector<int>;

    MPoly() = default;
    explicit MPoly(int nvars) : nvars_(nvars) {}
    static MPoly constant(int nvars, const Q& c);
    static MPoly variable(int nvars, int index);

    int nvars() const { return nvars_; }
    const std::map<Exponents, Q>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree_in(int var) const;
    void add_term(const Exponents& e, const Q& c);

    Q eval(const std::vector<Q>& point) const;
    // Coefficients of powers of `var`, each a polynomial in the same variable set (with var absent).
    std::vector<MPoly> coefficients_in(int var) const;
    // Drops variable `var` (which must not occur).
    MPoly drop_variable(int var) const;
    // Substitutes a rational value for `var` and drops it.
    MPoly substitute(int var, const Q& value) const;
    // For a single-variable polynomial.
    Poly to_univariate() const;

    friend MPoly operator+(const MPoly& a, const MPoly& b);
    friend MPoly operator-(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const Q& k, const MPoly& a);

private:
    int nvars_ = 0;
    std::map<Exponents, Q> terms_;
};

// Sylvester resultant of p (univariate) and g (univariate) with g read at formal degree g_degree.
Q resultant(const Poly& p, const std::vector<Q>& g_coeffs);

// Res_{x_var}(p(x_var), g) as a polynomial in the remaining variables (var removed).
MPoly eliminate(const MPoly& g, int var, const Poly& p);

}  // namespace cy3
