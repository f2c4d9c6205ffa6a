#pragma once

#include "cy3/rational.hpp"

#include <array>
#include <compare>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cy3 {

enum class FormMode { Topological, NormalForm };

class DivisorClass {
public:
    DivisorClass() = default;
    explicit DivisorClass(std::vector<Z> coords) : coords_(std::move(coords)) {}
    DivisorClass(std::initializer_list<long> coords);

    std::size_t rank() const { return coords_.size(); }
    const Z& operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<Z>& coords() const { return coords_; }
    bool is_zero() const;

    friend DivisorClass operator+(const DivisorClass& a, const DivisorClass& b);
    friend DivisorClass operator-(const DivisorClass& a, const DivisorClass& b);
    friend DivisorClass operator-(const DivisorClass& a);
    friend DivisorClass operator*(const Z& k, const DivisorClass& a);
    friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
    friend auto operator<=>(const DivisorClass& a, const DivisorClass& b) { return a.coords_ <=> b.coords_; }

private:
    std::vector<Z> coords_;
};

std::string to_string(const DivisorClass& d);

// Symmetric 3-tensor, stored densely. Entry keys are 0-based index triples in any order.
class TrilinearForm {
public:
    using Key = std::array<int, 3>;

    TrilinearForm(int rank, const std::map<Key, Q>& entries, FormMode mode);

    // Rank 2 form whose cubic is c30 x^3 + c21 x^2 y + c12 x y^2 + c03 y^3.
    static TrilinearForm from_cubic(const Q& c30, const Q& c21, const Q& c12, const Q& c03,
                                    FormMode mode = FormMode::NormalForm);

    int rank() const { return rank_; }
    FormMode mode() const { return mode_; }
    const Q& at(int i, int j, int k) const { return coeffs_[(i * rank_ + j) * rank_ + k]; }

    // Coefficients of x^3, x^2 y, x y^2, y^3. Rank 2 only.
    std::array<Q, 4> cubic_coefficients() const;

    // Same tensor with the mode tag replaced (integrality is checked again for Topological).
    TrilinearForm with_mode(FormMode mode) const;

    friend bool operator==(const TrilinearForm&, const TrilinearForm&) = default;

private:
    TrilinearForm(int rank, std::vector<Q> coeffs, FormMode mode);
    void check_integral() const;

    int rank_;
    std::vector<Q> coeffs_;
    FormMode mode_;
};

class LinearFormC2 {
public:
    LinearFormC2() = default;
    explicit LinearFormC2(std::vector<Z> coeffs) : coeffs_(std::move(coeffs)) {}
    LinearFormC2(std::initializer_list<long> coeffs);

    std::size_t rank() const { return coeffs_.size(); }
    const Z& operator[](std::size_t i) const { return coeffs_[i]; }
    const std::vector<Z>& coeffs() const { return coeffs_; }
    bool is_zero() const;

    friend bool operator==(const LinearFormC2&, const LinearFormC2&) = default;

private:
    std::vector<Z> coeffs_;
};

// a x^2 + 2 b x y + c y^2
struct QuadraticForm2 {
    Q a, b, c;

    Q operator()(const Q& x, const Q& y) const { return a * x * x + 2 * b * x * y + c * y * y; }
    Q discriminant() const { return b * b - a * c; }
    bool is_zero() const { return a == 0 && b == 0 && c == 0; }
    friend bool operator==(const QuadraticForm2&, const QuadraticForm2&) = default;
};

struct Signature {
    int pos = 0, neg = 0, zero = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};

struct ValidationResult {
    bool ok = true;
    std::optional<DivisorClass> witness;
    std::string message;
};

Q cube(const TrilinearForm& t, const DivisorClass& d);
Q triple(const TrilinearForm& t, const DivisorClass& d1, const DivisorClass& d2, const DivisorClass& d3);
QuadraticForm2 quad_form(const TrilinearForm& t, const DivisorClass& e);
Z c2_eval(const LinearFormC2& c, const DivisorClass& d);
Signature signature(const QuadraticForm2& q);
Signature index_signature(const TrilinearForm& t, const DivisorClass& d);
ValidationResult validate_rr_integrality(const TrilinearForm& t, const LinearFormC2& c);

// Hessian determinant of the cubic as a binary quadratic in D: det of the matrix of quad_form(t, D),
// returned as coefficients of x^2, x y, y^2. Negative exactly where quad_form(t, D) is indefinite.
std::array<Q, 3> hessian_coefficients(const TrilinearForm& t);

void require_rank2(const TrilinearForm& t);

}  // namespace cy3
