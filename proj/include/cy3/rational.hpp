#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cy3 {

using Z = mpz_class;
using Q = mpq_class;

// Accepts "p", "-p", "p/q". Throws DomainError on malformed text or zero denominator.
Q parse_rational(std::string_view text);
Z parse_integer(std::string_view text);

std::string to_string(const Q& q);
std::string to_string(const Z& z);

Z floor_q(const Q& q);
Z ceil_q(const Q& q);
int sign(const Q& q);
int sign(const Z& z);
// Unevaluated gmpxx expressions.
template <class T, class U>
int sign(const __gmp_expr<T, U>& e) {
    return sgn(e);
}

inline bool is_integer(const Q& q) { return q.get_den() == 1; }

}  // namespace cy3
