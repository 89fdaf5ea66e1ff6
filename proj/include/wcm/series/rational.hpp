#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace wcm::series {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r{Integer(num), Integer(den)};
    r.canonicalize();
    return r;
}

inline Rational ratio(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r{num, den};
    r.canonicalize();
    return r;
}

inline Integer factorial(long n) {
    if (n < 0) throw std::domain_error("factorial of negative integer");
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// (-1)!! = 0!! = 1.
inline Integer double_factorial(long n) {
    if (n < -1) throw std::domain_error("double factorial below -1");
    if (n <= 0) return Integer(1);
    Integer r;
    mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline Integer pow2(long n) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(n));
    return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace wcm::series
