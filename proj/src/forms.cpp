#include "cy3/forms.hpp"

#include "cy3/error.hpp"

#include <algorithm>

namespace cy3 {

namespace {

void require_rank(std::size_t expected, std::size_t got) {
    if (expected != got)
        throw DomainError("dimension", "dimension mismatch: expected rank " + std::to_string(expected) +
                                           ", got " + std::to_string(got));
}

}  // namespace

DivisorClass::DivisorClass(std::initializer_list<long> coords) {
    for (long v : coords) coords_.emplace_back(v);
}

bool DivisorClass::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Z& z) { return z == 0; });
}

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
    require_rank(a.rank(), b.rank());
    std::vector<Z> r(a.rank());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
    return DivisorClass(std::move(r));
}

DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) { return a + (-b); }

DivisorClass operator-(const DivisorClass& a) {
    std::vector<Z> r(a.rank());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = -a[i];
    return DivisorClass(std::move(r));
}

DivisorClass operator*(const Z& k, const DivisorClass& a) {
    std::vector<Z> r(a.rank());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = k * a[i];
    return DivisorClass(std::move(r));
}

std::string to_string(const DivisorClass& d) {
    std::string s = "(";
    for (std::size_t i = 0; i < d.rank(); ++i) {
        if (i) s += ",";
        s += d[i].get_str();
    }
    return s + ")";
}

TrilinearForm::TrilinearForm(int rank, std::vector<Q> coeffs, FormMode mode)
    : rank_(rank), coeffs_(std::move(coeffs)), mode_(mode) {
    check_integral();
}

TrilinearForm::TrilinearForm(int rank, const std::map<Key, Q>& entries, FormMode mode)
    : rank_(rank), coeffs_(static_cast<std::size_t>(rank) * rank * rank), mode_(mode) {
    if (rank < 1) throw DomainError("rank", "rank must be positive");
    std::map<Key, Q> seen;
    for (const auto& [key, value] : entries) {
        for (int idx : key)
            if (idx < 0 || idx >= rank) throw DomainError("index", "tensor index out of range");
        Key sorted = key;
        std::sort(sorted.begin(), sorted.end());
        auto [it, inserted] = seen.emplace(sorted, value);
        if (!inserted && it->second != value)
            throw DomainError("symmetry", "conflicting values for one index multiset");
        Key perm = sorted;
        do {
            coeffs_[(perm[0] * rank + perm[1]) * rank + perm[2]] = value;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    check_integral();
}

void TrilinearForm::check_integral() const {
    if (mode_ != FormMode::Topological) return;
    for (const auto& q : coeffs_)
        if (!is_integer(q))
            throw DomainError("integrality", "topological cup products must be integers, got " + to_string(q));
}

TrilinearForm TrilinearForm::from_cubic(const Q& c30, const Q& c21, const Q& c12, const Q& c03, FormMode mode) {
    std::map<Key, Q> e;
    e[{0, 0, 0}] = c30;
    e[{0, 0, 1}] = c21 / 3;
    e[{0, 1, 1}] = c12 / 3;
    e[{1, 1, 1}] = c03;
    return TrilinearForm(2, e, mode);
}

std::array<Q, 4> TrilinearForm::cubic_coefficients() const {
    require_rank2(*this);
    return {at(0, 0, 0), 3 * at(0, 0, 1), 3 * at(0, 1, 1), at(1, 1, 1)};
}

TrilinearForm TrilinearForm::with_mode(FormMode mode) const { return TrilinearForm(rank_, coeffs_, mode); }

LinearFormC2::LinearFormC2(std::initializer_list<long> coeffs) {
    for (long v : coeffs) coeffs_.emplace_back(v);
}

bool LinearFormC2::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Z& z) { return z == 0; });
}

void require_rank2(const TrilinearForm& t) {
    if (t.rank() != 2)
        throw DomainError("unsupported_rank", "unsupported rank " + std::to_string(t.rank()) + " (only rank 2)");
}

Q triple(const TrilinearForm& t, const DivisorClass& d1, const DivisorClass& d2, const DivisorClass& d3) {
    const auto n = static_cast<std::size_t>(t.rank());
    require_rank(n, d1.rank());
    require_rank(n, d2.rank());
    require_rank(n, d3.rank());
    Q sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (d1[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (d2[j] == 0) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (d3[k] == 0) continue;
                sum += t.at(int(i), int(j), int(k)) * Q(d1[i] * d2[j] * d3[k]);
            }
        }
    }
    return sum;
}

Q cube(const TrilinearForm& t, const DivisorClass& d) { return triple(t, d, d, d); }

QuadraticForm2 quad_form(const TrilinearForm& t, const DivisorClass& e) {
    require_rank2(t);
    require_rank(2, e.rank());
    auto m = [&](int i, int j) -> Q { return t.at(0, i, j) * Q(e[0]) + t.at(1, i, j) * Q(e[1]); };
    return {m(0, 0), m(0, 1), m(1, 1)};
}

Z c2_eval(const LinearFormC2& c, const DivisorClass& d) {
    require_rank(c.rank(), d.rank());
    Z s = 0;
    for (std::size_t i = 0; i < c.rank(); ++i) s += c[i] * d[i];
    return s;
}

Signature signature(const QuadraticForm2& q) {
    const int disc = sign(q.discriminant());
    if (disc > 0) return {1, 1, 0};
    if (disc < 0) return sign(q.a) > 0 ? Signature{2, 0, 0} : Signature{0, 2, 0};
    if (q.is_zero()) return {0, 0, 2};
    const int s = q.a != 0 ? sign(q.a) : sign(q.c);
    return s > 0 ? Signature{1, 0, 1} : Signature{0, 1, 1};
}

Signature index_signature(const TrilinearForm& t, const DivisorClass& d) {
    require_rank2(t);
    if (d.is_zero()) throw DomainError("zero_class", "index signature of the zero class");
    return signature(quad_form(t, d));
}

ValidationResult validate_rr_integrality(const TrilinearForm& t, const LinearFormC2& c) {
    if (t.mode() != FormMode::Topological)
        throw DomainError("mode", "integrality validation requires topological mode");
    const auto n = static_cast<std::size_t>(t.rank());
    require_rank(n, c.rank());
    // 2 D^3 + c2.D is an integer-valued cubic; its residue mod 12 is determined by the values on {0,1,2}^n.
    std::vector<long> digits(n, 0);
    while (true) {
        std::vector<Z> coords(digits.begin(), digits.end());
        DivisorClass d(std::move(coords));
        Q value = 2 * cube(t, d) + Q(c2_eval(c, d));
        Z v = value.get_num();
        Z r;
        mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), 12);
        if (r != 0) {
            return {false, d,
                    "2*D^3 + c2.D = " + v.get_str() + " is not divisible by 12 at D = " + to_string(d)};
        }
        std::size_t i = 0;
        while (i < n && digits[i] == 2) digits[i++] = 0;
        if (i == n) break;
        ++digits[i];
    }
    return {true, std::nullopt, ""};
}

std::array<Q, 3> hessian_coefficients(const TrilinearForm& t) {
    require_rank2(t);
    const Q& a = t.at(0, 0, 0);
    const Q& b = t.at(0, 0, 1);
    const Q& c = t.at(0, 1, 1);
    const Q& d = t.at(1, 1, 1);
    // det [[a x + b y, b x + c y], [b x + c y, c x + d y]]
    return {a * c - b * b, a * d - b * c, b * d - c * c};
}

}  // namespace cy3
