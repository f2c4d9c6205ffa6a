#include "cy3/real_algebra.hpp"

#include "cy3/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cy3 {

namespace {

// Rational with the smallest denominator in [a, b], a <= b.
Q simplest_between(const Q& a, const Q& b) {
    Z ca = ceil_q(a);
    if (Q(ca) <= b) {
        if (a <= 0 && b >= 0) return 0;
        return a > 0 ? Q(ca) : Q(floor_q(b));
    }
    Z n = floor_q(a);
    Q r = simplest_between(1 / (b - Q(n)), 1 / (a - Q(n)));
    return Q(n) + 1 / r;
}

Interval mul(const Interval& x, const Interval& y) {
    Q c[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

Interval enclose_poly(const MPoly& f, const std::vector<Interval>& box) {
    Interval sum{0, 0};
    for (const auto& [e, c] : f.terms()) {
        Interval t{c, c};
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t = mul(t, box[i]);
        sum.lo += t.lo;
        sum.hi += t.hi;
    }
    return sum;
}

// Rational bounds on sqrt(x), x >= 0, at resolution 2^-bits.
Q sqrt_lower(const Q& x, unsigned bits) {
    Z scale = Z(1) << (2 * bits);
    Z v = floor_q(x * Q(scale));
    Z r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    Q out(r, Z(1) << bits);
    out.canonicalize();
    return out;
}

Q sqrt_upper(const Q& x, unsigned bits) {
    Z scale = Z(1) << (2 * bits);
    Z v = ceil_q(x * Q(scale));
    Z r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    if (r * r != v) r += 1;
    Q out(r, Z(1) << bits);
    out.canonicalize();
    return out;
}

}  // namespace

RealAlgebraic::RealAlgebraic(const Q& value)
    : poly_({-value, Q(1)}), lo_(value), hi_(value) {
    coeffs_ = poly_.primitive_integers();
}

RealAlgebraic::RealAlgebraic(Poly poly, Q lo, Q hi, bool) : poly_(std::move(poly)), lo_(std::move(lo)), hi_(std::move(hi)) {
    normalize();
}

RealAlgebraic RealAlgebraic::from_root(const std::vector<Z>& poly, const Q& lo, const Q& hi) {
    return from_root(Poly::from_integers(poly), lo, hi);
}

RealAlgebraic RealAlgebraic::from_root(const Poly& poly, const Q& lo, const Q& hi) {
    if (poly.is_zero()) throw DomainError("zero_polynomial", "defining polynomial is zero");
    if (hi < lo) throw DomainError("interval", "isolating interval has lo > hi");
    Poly sq = squarefree_part(poly);
    SturmSequence s(sq);
    if (s.count_closed(lo, hi) != 1)
        throw DomainError("isolation", "interval does not isolate exactly one root");
    if (sq(lo) == 0) return RealAlgebraic(lo);
    if (sq(hi) == 0) return RealAlgebraic(hi);
    return RealAlgebraic(std::move(sq), lo, hi, true);
}

void RealAlgebraic::normalize() {
    // Called with lo < hi, a squarefree poly, and exactly one (simple) root strictly inside.
    std::vector<Z> ints = poly_.primitive_integers();
    Z lead = abs(ints.back());
    Q target_width(Z(1), lead * lead * 2);
    while (hi_ - lo_ >= target_width) bisect();
    Q cand = simplest_between(lo_, hi_);
    if (poly_(cand) == 0) {
        *this = RealAlgebraic(cand);
        return;
    }
    if (poly_(Q(0)) == 0) poly_ = divmod(poly_, Poly::identity()).first;
    poly_ = poly_.primitive();
    coeffs_ = poly_.primitive_integers();
}

const Q& RealAlgebraic::rational_value() const {
    if (!is_rational()) throw std::logic_error("rational_value of an irrational number");
    return lo_;
}

void RealAlgebraic::bisect() {
    if (is_rational()) return;
    Q mid = (lo_ + hi_) / 2;
    int sm = cy3::sign(poly_(mid));
    if (sm == 0) {  // only reachable before rationality is ruled out
        lo_ = hi_ = mid;
        return;
    }
    if (sm == cy3::sign(poly_(lo_)))
        lo_ = mid;
    else
        hi_ = mid;
}

RealAlgebraic RealAlgebraic::refined(const Q& width) const {
    RealAlgebraic r = *this;
    while (r.hi_ - r.lo_ > width) r.bisect();
    return r;
}

int RealAlgebraic::sign() const {
    if (is_rational()) return cy3::sign(lo_);
    RealAlgebraic r = *this;
    while (r.lo_ <= 0 && r.hi_ >= 0) r.bisect();
    return cy3::sign(r.lo_);
}

double RealAlgebraic::approx() const {
    if (is_rational()) return lo_.get_d();
    Q scale = std::max({Q(abs(lo_)), Q(abs(hi_)), Q(1)});
    return refined(scale / Q(Z(1) << 60)).midpoint().get_d();
}

RealAlgebraic RealAlgebraic::operator-() const { return affine(-1, 0); }

RealAlgebraic RealAlgebraic::affine(const Q& a, const Q& b) const {
    if (a == 0) return RealAlgebraic(b);
    if (is_rational()) return RealAlgebraic(a * lo_ + b);
    // y = a x + b  <=>  x = (y - b) / a
    Poly p = compose_linear(poly_, 1 / a, -b / a);
    Q l = a * lo_ + b, h = a * hi_ + b;
    if (h < l) std::swap(l, h);
    return RealAlgebraic(p.primitive(), l, h, true);
}

std::string RealAlgebraic::to_string() const {
    if (is_rational()) return cy3::to_string(lo_);
    std::string s = "root of [";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) s += ",";
        s += coeffs_[i].get_str();
    }
    return s + "] in [" + cy3::to_string(lo_) + ", " + cy3::to_string(hi_) + "]";
}

std::vector<RealAlgebraic> isolate_real_roots(const Poly& p) {
    if (p.is_zero()) throw DomainError("zero_polynomial", "cannot isolate roots of the zero polynomial");
    Poly sq = squarefree_part(p);
    SturmSequence s(sq);
    std::vector<RealAlgebraic> out;
    if (sq.degree() == 0) return out;
    Q b = root_bound(sq);
    std::vector<Interval> stack{{-b, b}};
    std::vector<Interval> found;
    // Depth-first with the left half processed first keeps the output sorted.
    while (!stack.empty()) {
        Interval iv = stack.back();
        stack.pop_back();
        int n = s.count(iv.lo, iv.hi);
        if (n == 0) continue;
        if (n == 1) {
            found.push_back(iv);
            continue;
        }
        Q mid = (iv.lo + iv.hi) / 2;
        stack.push_back({mid, iv.hi});
        stack.push_back({iv.lo, mid});
    }
    for (auto iv : found) {
        // Root lies in (lo, hi]; move lo off any neighbouring root.
        if (sq(iv.hi) == 0) {
            out.emplace_back(iv.hi);
            continue;
        }
        while (sq(iv.lo) == 0) {
            Q mid = (iv.lo + iv.hi) / 2;
            if (s.count(mid, iv.hi) == 1) iv.lo = mid;
            else iv.hi = mid;
        }
        out.push_back(RealAlgebraic::from_root(sq, iv.lo, iv.hi));
    }
    // Irrational roots keep only the part of sq without rational roots.
    Poly rest = sq;
    for (const auto& r : out)
        if (r.is_rational()) rest = divmod(rest, Poly({-r.rational_value(), Q(1)})).first;
    if (rest.degree() < sq.degree())
        for (auto& r : out)
            if (!r.is_rational()) r = RealAlgebraic::from_root(rest, r.lo(), r.hi());
    return out;
}

int sign_at(const Poly& f, const RealAlgebraic& a) {
    if (f.is_zero()) return 0;
    if (a.is_rational()) return sign(f(a.rational_value()));
    Poly g = gcd(f, a.defining_poly());
    if (g.degree() >= 1 && SturmSequence(g).count_closed(a.lo(), a.hi()) >= 1) return 0;
    SturmSequence s(f);
    RealAlgebraic r = a;
    while (s.count_closed(r.lo(), r.hi()) != 0) r.bisect();
    return sign(f(r.lo()));
}

int compare(const RealAlgebraic& a, const RealAlgebraic& b) {
    if (a.is_rational() && b.is_rational()) return cmp(a.rational_value(), b.rational_value());
    if (b.is_rational()) return sign_at(Poly({-b.rational_value(), Q(1)}), a);
    if (a.is_rational()) return -compare(b, a);
    Q lo = std::max(a.lo(), b.lo()), hi = std::min(a.hi(), b.hi());
    if (lo <= hi) {
        Poly g = gcd(a.defining_poly(), b.defining_poly());
        if (g.degree() >= 1 && SturmSequence(g).count_closed(lo, hi) >= 1) return 0;
    }
    RealAlgebraic x = a, y = b;
    while (!(x.hi() < y.lo() || y.hi() < x.lo())) {
        x.bisect();
        y.bisect();
    }
    return x.hi() < y.lo() ? -1 : 1;
}

namespace {

// The unique root of G(z, at...) selected by an enclosure that shrinks as the inputs are refined.
RealAlgebraic resolve(MPoly g, std::vector<RealAlgebraic> at,
                      const std::function<Interval(const std::vector<Interval>&, unsigned)>& enclose) {
    // Eliminate the bound variables 1..k from the end so earlier indices stay put.
    MPoly r = g;
    for (int v = static_cast<int>(at.size()); v >= 1; --v) {
        const auto& x = at[v - 1];
        if (x.is_rational())
            r = r.substitute(v, x.rational_value());
        else
            r = eliminate(r, v, x.defining_poly());
    }
    Poly rz = r.to_univariate();
    if (rz.is_zero()) throw std::logic_error("elimination produced the zero polynomial");
    SturmSequence s(rz);
    for (unsigned iter = 0;; ++iter) {
        std::vector<Interval> box;
        for (const auto& x : at) box.push_back({x.lo(), x.hi()});
        Interval e = enclose(box, iter + 8);
        if (s.count_closed(e.lo, e.hi) == 1) {
            return RealAlgebraic::from_root(s.poly(), e.lo, e.hi);
        }
        for (auto& x : at) x.bisect();
        if (iter > 4000) throw std::logic_error("root selection did not converge");
    }
}

MPoly shift_variables(const MPoly& f) {
    // f(x_0..x_{k-1}) as a polynomial in (z, x_0..x_{k-1}).
    MPoly out(f.nvars() + 1);
    for (const auto& [e, c] : f.terms()) {
        MPoly::Exponents ee(e.size() + 1, 0);
        std::copy(e.begin(), e.end(), ee.begin() + 1);
        out.add_term(ee, c);
    }
    return out;
}

}  // namespace

RealAlgebraic evaluate(const MPoly& f, const std::vector<RealAlgebraic>& at) {
    if (static_cast<std::size_t>(f.nvars()) != at.size()) throw std::invalid_argument("evaluate: arity mismatch");
    bool all_rational = std::all_of(at.begin(), at.end(), [](const auto& x) { return x.is_rational(); });
    if (all_rational) {
        std::vector<Q> pt;
        for (const auto& x : at) pt.push_back(x.rational_value());
        return RealAlgebraic(f.eval(pt));
    }
    const int n = f.nvars() + 1;
    MPoly g = MPoly::variable(n, 0) - shift_variables(f);
    return resolve(g, at, [&](const std::vector<Interval>& box, unsigned) { return enclose_poly(f, box); });
}

int sign_of(const MPoly& f, const std::vector<RealAlgebraic>& at) { return evaluate(f, at).sign(); }

RealAlgebraic evaluate_ratio(const MPoly& num, const MPoly& den, const std::vector<RealAlgebraic>& at) {
    if (num.nvars() != den.nvars() || static_cast<std::size_t>(num.nvars()) != at.size())
        throw std::invalid_argument("evaluate_ratio: arity mismatch");
    if (sign_of(den, at) == 0) throw DomainError("division_by_zero", "algebraic division by zero");
    bool all_rational = std::all_of(at.begin(), at.end(), [](const auto& x) { return x.is_rational(); });
    if (all_rational) {
        std::vector<Q> pt;
        for (const auto& x : at) pt.push_back(x.rational_value());
        return RealAlgebraic(num.eval(pt) / den.eval(pt));
    }
    const int n = num.nvars() + 1;
    MPoly g = MPoly::variable(n, 0) * shift_variables(den) - shift_variables(num);
    return resolve(g, at, [&](const std::vector<Interval>& box, unsigned) {
        Interval y = enclose_poly(den, box);
        if (y.lo <= 0 && y.hi >= 0) return Interval{-Q(Z(1) << 60), Q(Z(1) << 60)};
        Interval inv{1 / y.hi, 1 / y.lo};
        if (inv.hi < inv.lo) std::swap(inv.lo, inv.hi);
        return mul(enclose_poly(num, box), inv);
    });
}

RealAlgebraic quotient(const RealAlgebraic& a, const RealAlgebraic& b) {
    if (b.sign() == 0) throw DomainError("division_by_zero", "algebraic division by zero");
    if (a.is_rational() && b.is_rational()) return RealAlgebraic(a.rational_value() / b.rational_value());
    if (b.is_rational()) return a.affine(1 / b.rational_value(), 0);
    // z b - a = 0
    MPoly g(3);
    g.add_term({1, 0, 1}, 1);
    g.add_term({0, 1, 0}, -1);
    return resolve(g, {a, b}, [](const std::vector<Interval>& box, unsigned) {
        const Interval& x = box[0];
        const Interval& y = box[1];
        if (y.lo <= 0 && y.hi >= 0) return Interval{-Q(Z(1) << 60), Q(Z(1) << 60)};
        Interval inv{1 / y.hi, 1 / y.lo};
        if (inv.hi < inv.lo) std::swap(inv.lo, inv.hi);
        return mul(x, inv);
    });
}

RealAlgebraic sqrt(const RealAlgebraic& a) {
    int s = a.sign();
    if (s < 0) throw DomainError("negative_sqrt", "square root of a negative number");
    if (s == 0) return RealAlgebraic(0);
    if (a.is_rational()) {
        const Q& v = a.rational_value();
        Z n = v.get_num(), d = v.get_den();
        if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
            Z rn, rd;
            mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
            mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
            return RealAlgebraic(Q(rn, rd));
        }
    }
    MPoly g(2);
    g.add_term({2, 0}, 1);
    g.add_term({0, 1}, -1);
    RealAlgebraic pos = a;
    while (!pos.is_rational() && pos.lo() <= 0) pos.bisect();
    return resolve(g, {pos}, [](const std::vector<Interval>& box, unsigned bits) {
        const Interval& x = box[0];
        Q lo = x.lo > 0 ? sqrt_lower(x.lo, bits) : Q(0);
        return Interval{lo, sqrt_upper(x.hi, bits)};
    });
}

std::vector<RealAlgebraic> real_roots_over(const MPoly& q, const std::vector<RealAlgebraic>& at) {
    if (static_cast<std::size_t>(q.nvars()) != at.size() + 1)
        throw std::invalid_argument("real_roots_over: arity mismatch");
    MPoly r = q;
    for (int v = static_cast<int>(at.size()); v >= 1; --v) {
        const auto& x = at[v - 1];
        r = x.is_rational() ? r.substitute(v, x.rational_value()) : eliminate(r, v, x.defining_poly());
    }
    Poly ru = r.to_univariate();
    if (ru.is_zero()) throw DomainError("degenerate_system", "polynomial vanishes identically at the given point");
    std::vector<RealAlgebraic> out;
    for (const auto& u : isolate_real_roots(ru)) {
        std::vector<RealAlgebraic> pt{u};
        pt.insert(pt.end(), at.begin(), at.end());
        if (evaluate(q, pt).sign() == 0) out.push_back(u);
    }
    return out;
}

std::vector<RelevantM> relevant_m_search(const RealAlgebraic& lambda, const Q& mu0, long m_cap) {
    if (lambda.is_rational())
        throw DomainError("rational_lambda", "relevant-m search needs an irrational lambda; use the integral path");
    if (lambda.sign() <= 0) throw DomainError("lambda_sign", "lambda must be positive");
    if (mu0 <= 0 || mu0 >= 1) throw DomainError("mu0_range", "mu0 must satisfy 0 < mu0 < 1");
    if (m_cap < 1) throw DomainError("m_cap", "m_cap must be positive");
    RealAlgebraic lam = lambda.refined(Q(Z(1), Z(1) << 64));
    std::vector<RelevantM> out;
    for (long m = 1; m <= m_cap; ++m) {
        const Q qm(m);
        while (true) {
            Q a = qm * lam.lo(), b = qm * lam.hi();
            Z k = floor_q(a);
            // Both ends in [k, k + 1) and on the same side of k + mu0.
            if (floor_q(b) == k && Q(k) != b) {
                bool lo_in = a - Q(k) < mu0;
                bool hi_in = b - Q(k) < mu0;
                if (lo_in == hi_in) {
                    if (lo_in) out.push_back({m, k, lam.lo(), lam.hi()});
                    break;
                }
            }
            lam.bisect();
        }
    }
    return out;
}

bool verify_relevant(const RealAlgebraic& lambda, const Q& mu0, const RelevantM& cert) {
    if (lambda.is_rational()) return false;
    SturmSequence s(lambda.defining_poly());
    if (s.count_closed(cert.lo, cert.hi) != 1) return false;
    // [lo, hi] must isolate lambda itself, not another root of the same polynomial.
    if (compare(RealAlgebraic(cert.lo), lambda) > 0 || compare(RealAlgebraic(cert.hi), lambda) < 0) return false;
    const Q qm(cert.m);
    return Q(cert.floor) <= qm * cert.lo && qm * cert.hi < Q(cert.floor) + mu0;
}

}  // namespace cy3
