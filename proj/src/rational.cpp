#include "cy3/rational.hpp"

#include "cy3/error.hpp"

#include <cctype>

namespace cy3 {

namespace {

bool valid_integer_text(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string strip_plus(std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return std::string(s);
}

}  // namespace

Z parse_integer(std::string_view text) {
    if (!valid_integer_text(text))
        throw DomainError("parse", "invalid integer \"" + std::string(text) + "\"");
    return Z(strip_plus(text));
}

Q parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Q(parse_integer(text));
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!valid_integer_text(num) || !valid_integer_text(den) || den[0] == '-' || den[0] == '+')
        throw DomainError("parse", "invalid rational \"" + std::string(text) + "\"");
    Z d{std::string(den)};
    if (d == 0) throw DomainError("parse", "zero denominator in \"" + std::string(text) + "\"");
    Q q(Z(strip_plus(num)), d);
    q.canonicalize();
    return q;
}

std::string to_string(const Q& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Z& z) { return z.get_str(); }

Z floor_q(const Q& q) {
    Z r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Z ceil_q(const Q& q) {
    Z r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

int sign(const Q& q) { return sgn(q); }
int sign(const Z& z) { return sgn(z); }

}  // namespace cy3
