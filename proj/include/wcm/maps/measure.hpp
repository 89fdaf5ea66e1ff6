#pragma once

#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "wcm/maps/enumerate.hpp"
#include "wcm/series/rational.hpp"

namespace wcm::maps {

using series::Integer;
using series::Rational;

struct MeasureValue {
    Rational value;
    friend bool operator==(const MeasureValue& a, const MeasureValue& b) { return a.value == b.value; }
};

enum class Family { cubic, bivalent, univalent };

namespace detail {

inline Rational pow2(long e) {
    Integer p = 1;
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e < 0 ? -e : e));
    return e < 0 ? Rational(1) / Rational(p) : Rational(p);
}

}  // namespace detail

// Rooted cubic maps with F >= 3 faces: 2^{2F-3} (3F-6)!! / (F! (F-2)!!).
inline Integer rooted_cubic_count(int F) {
    if (F < 3) throw std::domain_error("rooted_cubic_count: F must be >= 3");
    Rational r = detail::pow2(2 * F - 3) * Rational(series::double_factorial(3 * F - 6)) /
                 Rational(series::factorial(F) * series::double_factorial(F - 2));
    if (r.get_den() != 1) throw std::logic_error("rooted_cubic_count: non-integer");
    return r.get_num();
}

// nu_{F,n} of almost cubic maps whose n marked vertices all have the degree given by the family.
inline MeasureValue measure(Family family, int F, int n) {
    using series::double_factorial;
    using series::factorial;
    if (n < 0) throw std::domain_error("measure: n must be >= 0");
    switch (family) {
        case Family::cubic:
            if (F < 3 || n > 2 * F - 4) throw std::domain_error("measure(cubic): needs F >= 3 and n <= 2F - 4");
            return {detail::pow2(2 * F - 4) * Rational(factorial(2 * F - 4) * double_factorial(3 * F - 8)) /
                    Rational(factorial(F) * factorial(2 * F - 4 - n) * double_factorial(F - 2))};
        case Family::bivalent:
            if (F < 2 || n + F < 3) throw std::domain_error("measure(bivalent): needs F >= 2 and n + F >= 3");
            return {detail::pow2(2 * F - 4) * Rational(factorial(3 * F - 7 + n)) /
                    Rational(factorial(F) * double_factorial(3 * F - 7) * double_factorial(F - 2))};
        case Family::univalent:
            if (F < 1 || n + F < 3) throw std::domain_error("measure(univalent): needs F >= 1 and n + F >= 3");
            return {detail::pow2(2 * F - 4 + n) * Rational(double_factorial(3 * F - 8 + 2 * n)) /
                    Rational(factorial(F) * double_factorial(F - 2))};
    }
    throw std::logic_error("measure: unknown family");
}

// nu_{F,n} of almost cubic maps with marked degrees (d_1, ..., d_n), by exhaustive enumeration.
inline MeasureValue measure(const std::vector<int>& degrees, int F) {
    const int n = static_cast<int>(degrees.size());
    int sum = 0;
    for (int d : degrees) {
        if (d < 1) throw std::domain_error("measure: marked degrees must be >= 1");
        sum += d;
    }
    const int unmarked = 2 * F - 4 + 2 * n - sum;
    if (F < 1 || unmarked < 0 || (sum + 3 * unmarked) % 2 != 0 || n + F < 3)
        throw std::domain_error("measure: no almost cubic maps with these parameters");
    const int E = (sum + 3 * unmarked) / 2;
    if (E == 0) throw std::domain_error("measure: empty map");
    std::map<int, int> want;
    for (int d : degrees) ++want[d];
    const int marked_cubic = want.count(3) ? want[3] : 0;
    want[3] = unmarked + marked_cubic;
    std::vector<int> allowed;
    for (auto [d, c] : want)
        if (c > 0) allowed.push_back(d);
    // ordered assignments of the marks to vertices of the right degrees
    Integer ways = 1;
    for (auto [d, c] : want) {
        if (d == 3)
            ways *= series::factorial(c) / series::factorial(unmarked);
        else
            ways *= series::factorial(c);
    }
    Integer rooted = 0;
    enumerate_maps(E, {allowed, {}}, [&](const RotationMap& m) {
        std::map<int, int> have;
        for (int v = 0; v < m.vertices(); ++v) ++have[m.degree(v)];
        for (auto [d, c] : want)
            if ((have.count(d) ? have[d] : 0) != c) return;
        for (auto [d, c] : have)
            if (!want.count(d) || want[d] != c) return;
        ++rooted;
    });
    return {Rational(rooted * ways) / Rational(2 * E)};
}

}  // namespace wcm::maps
