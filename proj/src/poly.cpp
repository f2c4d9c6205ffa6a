#include "cy3/poly.hpp"

#include "cy3/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace cy3 {

Poly::Poly(std::vector<Q> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::from_integers(const std::vector<Z>& coeffs) {
    std::vector<Q> q(coeffs.begin(), coeffs.end());
    return Poly(std::move(q));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Q Poly::operator()(const Q& x) const {
    Q r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

Poly Poly::derivative() const {
    std::vector<Q> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Q(static_cast<long>(i)));
    return Poly(std::move(d));
}

Poly Poly::primitive() const {
    if (is_zero()) return *this;
    std::vector<Z> ints = primitive_integers();
    Poly p = from_integers(ints);
    return sgn(ints.back()) * sgn(lead()) < 0 ? -p : p;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return (1 / lead()) * *this;
}

std::vector<Z> Poly::primitive_integers() const {
    if (is_zero()) return {};
    Z den = 1;
    for (const auto& q : c_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Z> r;
    Z content = 0;
    for (const auto& q : c_) {
        Z v = q.get_num() * (den / q.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
        r.push_back(v);
    }
    if (sgn(r.back()) < 0) content = -content;
    for (auto& v : r) v /= content;
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Q> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(int(i)) + b.coeff(int(i));
    return Poly(std::move(r));
}

Poly operator-(const Poly& a) {
    std::vector<Q> r = a.c_;
    for (auto& q : r) q = -q;
    return Poly(std::move(r));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Q> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
}

Poly operator*(const Q& k, const Poly& a) {
    std::vector<Q> r = a.c_;
    for (auto& q : r) q *= k;
    return Poly(std::move(r));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    std::vector<Q> rem = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) return {Poly(), a};
    std::vector<Q> quo(static_cast<std::size_t>(a.degree() - db + 1));
    for (int i = a.degree(); i >= db; --i) {
        Q f = rem[i] / b.lead();
        quo[i - db] = f;
        if (f == 0) continue;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.coeff(j);
    }
    rem.resize(static_cast<std::size_t>(db));
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = divmod(x, y).second.primitive();
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Poly squarefree_part(const Poly& p) {
    if (p.degree() <= 0) return p.monic();
    return divmod(p, gcd(p, p.derivative())).first.primitive();
}

Poly compose_linear(const Poly& p, const Q& a, const Q& b) {
    Poly lin({b, a});
    Poly r;
    for (int i = p.degree(); i >= 0; --i) r = r * lin + Poly::constant(p.coeff(i));
    return r;
}

SturmSequence::SturmSequence(const Poly& p) {
    if (p.is_zero()) throw std::invalid_argument("Sturm sequence of the zero polynomial");
    seq_.push_back(squarefree_part(p));
    if (seq_.back().degree() == 0) return;
    seq_.push_back(seq_.back().derivative().primitive());
    while (true) {
        Poly r = divmod(seq_[seq_.size() - 2], seq_.back()).second;
        if (r.is_zero()) break;
        seq_.push_back(-r.primitive());
    }
}

int SturmSequence::variations_at(const Q& x) const {
    int v = 0, last = 0;
    for (const auto& p : seq_) {
        int s = sign(p(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

int SturmSequence::variations_at_infinity(int side) const {
    int v = 0, last = 0;
    for (const auto& p : seq_) {
        int s = sign(p.lead());
        if (side < 0 && p.degree() % 2 == 1) s = -s;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

int SturmSequence::count(const Q& lo, const Q& hi) const {
    if (hi <= lo) return 0;
    return variations_at(lo) - variations_at(hi);
}

int SturmSequence::count_closed(const Q& lo, const Q& hi) const {
    if (hi < lo) return 0;
    int extra = seq_.front()(lo) == 0 ? 1 : 0;
    return count(lo, hi) + extra;
}

int SturmSequence::total() const { return variations_at_infinity(-1) - variations_at_infinity(1); }

Q root_bound(const Poly& p) {
    Q m = 0;
    for (int i = 0; i < p.degree(); ++i) {
        Q r = abs(p.coeff(i) / p.lead());
        if (r > m) m = r;
    }
    return m + 1;
}

MPoly MPoly::constant(int nvars, const Q& c) {
    MPoly p(nvars);
    p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
    return p;
}

MPoly MPoly::variable(int nvars, int index) {
    MPoly p(nvars);
    Exponents e(static_cast<std::size_t>(nvars), 0);
    e[index] = 1;
    p.add_term(e, 1);
    return p;
}

void MPoly::add_term(const Exponents& e, const Q& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

int MPoly::degree_in(int var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

Q MPoly::eval(const std::vector<Q>& point) const {
    Q s = 0;
    for (const auto& [e, c] : terms_) {
        Q t = c;
        for (int i = 0; i < nvars_; ++i) {
            Q base = point[i];
            for (int k = 0; k < e[i]; ++k) t *= base;
        }
        s += t;
    }
    return s;
}

std::vector<MPoly> MPoly::coefficients_in(int var) const {
    std::vector<MPoly> r(static_cast<std::size_t>(std::max(0, degree_in(var) + 1)), MPoly(nvars_));
    for (const auto& [e, c] : terms_) {
        Exponents f = e;
        f[var] = 0;
        r[e[var]].add_term(f, c);
    }
    return r;
}

MPoly MPoly::drop_variable(int var) const {
    MPoly r(nvars_ - 1);
    for (const auto& [e, c] : terms_) {
        if (e[var] != 0) throw std::logic_error("dropping a variable that occurs");
        Exponents f = e;
        f.erase(f.begin() + var);
        r.add_term(f, c);
    }
    return r;
}

MPoly MPoly::substitute(int var, const Q& value) const {
    MPoly r(nvars_ - 1);
    for (const auto& [e, c] : terms_) {
        Q t = c;
        for (int k = 0; k < e[var]; ++k) t *= value;
        Exponents f = e;
        f.erase(f.begin() + var);
        r.add_term(f, t);
    }
    return r;
}

Poly MPoly::to_univariate() const {
    if (nvars_ != 1) throw std::logic_error("to_univariate on a multivariate polynomial");
    std::vector<Q> c(static_cast<std::size_t>(std::max(0, degree_in(0) + 1)));
    for (const auto& [e, v] : terms_) c[e[0]] += v;
    return Poly(std::move(c));
}

MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + Q(-1) * b; }

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            MPoly::Exponents e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

MPoly operator*(const Q& k, const MPoly& a) {
    MPoly r(a.nvars_);
    for (const auto& [e, c] : a.terms_) r.add_term(e, k * c);
    return r;
}

namespace {

Q determinant(std::vector<std::vector<Q>> m) {
    const std::size_t n = m.size();
    Q det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            Q f = m[r][col] / m[col][col];
            for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
        }
    }
    return det;
}

// Coefficients c_0..c_d of the polynomial through (j, values[j]), j = 0..d.
std::vector<Q> interpolate(const std::vector<Q>& values) {
    const std::size_t n = values.size();
    std::vector<Q> dd = values;
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t j = n - 1; j >= k; --j) dd[j] = (dd[j] - dd[j - 1]) / Q(static_cast<long>(k));
    // Horner expansion of the Newton form with nodes 0, 1, ..., n-2.
    Poly r = Poly::constant(dd[n - 1]);
    for (std::size_t j = n - 1; j-- > 0;)
        r = r * Poly({Q(-static_cast<long>(j)), Q(1)}) + Poly::constant(dd[j]);
    std::vector<Q> out = r.coeffs();
    out.resize(n);
    return out;
}

}  // namespace

Q resultant(const Poly& p, const std::vector<Q>& g) {
    const int m = p.degree();
    const int n = static_cast<int>(g.size()) - 1;
    if (m < 0 || n < 0) return 0;
    const int size = m + n;
    if (size == 0) return 1;
    std::vector<std::vector<Q>> s(static_cast<std::size_t>(size), std::vector<Q>(static_cast<std::size_t>(size)));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) s[r][r + i] = p.coeff(m - i);
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) s[n + r][r + i] = g[n - i];
    return determinant(std::move(s));
}

MPoly eliminate(const MPoly& g, int var, const Poly& p) {
    const int nv = g.nvars();
    const int formal = std::max(0, g.degree_in(var));
    std::vector<int> others;
    for (int v = 0; v < nv; ++v)
        if (v != var) others.push_back(v);
    std::vector<int> bounds;
    for (int v : others) bounds.push_back(p.degree() * std::max(0, g.degree_in(v)));

    const std::vector<MPoly> coeffs_in_var = [&] {
        auto c = g.coefficients_in(var);
        c.resize(static_cast<std::size_t>(formal + 1), MPoly(nv));
        return c;
    }();

    std::size_t total = 1;
    for (int b : bounds) total *= static_cast<std::size_t>(b + 1);
    std::vector<Q> values(total);
    std::vector<int> idx(others.size(), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::vector<Q> point(static_cast<std::size_t>(nv), Q(0));
        for (std::size_t k = 0; k < others.size(); ++k) point[others[k]] = idx[k];
        std::vector<Q> gc;
        for (const auto& c : coeffs_in_var) gc.push_back(c.eval(point));
        values[flat] = resultant(p, gc);
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (++idx[k] <= bounds[k]) break;
            idx[k] = 0;
        }
    }

    // Convert grid values to coefficients, one axis at a time (axis 0 varies fastest).
    std::size_t stride = 1;
    for (std::size_t axis = 0; axis < bounds.size(); ++axis) {
        const std::size_t len = static_cast<std::size_t>(bounds[axis] + 1);
        for (std::size_t base = 0; base < total; ++base) {
            if ((base / stride) % len != 0) continue;
            std::vector<Q> fiber(len);
            for (std::size_t j = 0; j < len; ++j) fiber[j] = values[base + j * stride];
            auto c = interpolate(fiber);
            for (std::size_t j = 0; j < len; ++j) values[base + j * stride] = c[j];
        }
        stride *= len;
    }

    MPoly out(nv - 1);
    std::fill(idx.begin(), idx.end(), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        out.add_term(MPoly::Exponents(idx.begin(), idx.end()), values[flat]);
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (++idx[k] <= bounds[k]) break;
            idx[k] = 0;
        }
    }
    return out;
}

}  // namespace cy3
