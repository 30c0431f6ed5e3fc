#ifndef XDELTA_QUADFORMS_HPP
#define XDELTA_QUADFORMS_HPP

/*
 * Reduced positive-definite binary quadratic forms, class numbers of
 * negative discriminants, Atkin-Lehner fixed-point counts on X_0(N) for
 * prime N, and Riemann-Hurwitz bookkeeping for quotient genera.
 *
 * A form (a, b, c) is reduced when |b| <= a <= c with b >= 0 if |b| = a or
 * a = c, and primitive when gcd(a, b, c) = 1.  Class numbers are the count
 * of primitive reduced forms of the given (possibly non-fundamental)
 * discriminant.
 */

#include <numeric>
#include <vector>

#include "xdelta/errors.hpp"

namespace xdelta {

struct BQF {
    long a = 0, b = 0, c = 0;

    long discriminant() const { return b * b - 4 * a * c; }
    bool is_primitive() const { return std::gcd(std::gcd(a, b), c) == 1; }
    bool is_reduced() const {
        if (!(std::abs(b) <= a && a <= c)) return false;
        if ((std::abs(b) == a || a == c) && b < 0) return false;
        return true;
    }

    friend bool operator==(const BQF&, const BQF&) = default;
};

// All primitive reduced forms of discriminant D < 0, by exhausting
// a in [1, sqrt(|D|/3)], b in [-a, a] with b = D (mod 2).
inline std::vector<BQF> reduced_forms(long D) {
    if (D >= 0 || (((D % 4) + 4) % 4) > 1)
        throw UsageError("BadDiscriminant",
                         "discriminant must be negative and 0 or 1 mod 4");
    std::vector<BQF> out;
    for (long a = 1; 3 * a * a <= -D; ++a) {
        for (long b = -a; b <= a; ++b) {
            if (((b - D) % 2 + 2) % 2 != 0) continue;
            const long num = b * b - D;
            if (num % (4 * a) != 0) continue;
            const BQF f{a, b, num / (4 * a)};
            if (f.is_reduced() && f.is_primitive()) out.push_back(f);
        }
    }
    return out;
}

inline long class_number(long D) {
    return static_cast<long>(reduced_forms(D).size());
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Fixed points of the involution w_N on X_0(N), N an odd prime:
// h(-4N) for N = 1 (mod 4), h(-N) + h(-4N) for N = 3 (mod 4).
inline long atkin_lehner_fixed_points(long N) {
    if (!is_prime(N)) throw UsageError("NotPrime", "N must be prime");
    if (N == 2) throw UsageError("EvenPrime", "N must be odd");
    if (N % 4 == 1) return class_number(-4 * N);
    return class_number(-N) + class_number(-4 * N);
}

// Genus of the quotient by an involution with the given number of fixed
// points: 2 g_top - 2 = 2 (2 g+ - 2) + fixed.
inline long quotient_genus(long genus_top, long fixed_points) {
    const long num = 2 * genus_top + 2 - fixed_points;
    if (num < 0 || num % 4 != 0)
        throw IntegrityError("NonIntegralGenus",
                             "no integral quotient genus for genus " +
                             std::to_string(genus_top) + " with " +
                             std::to_string(fixed_points) + " fixed points");
    return num / 4;
}

struct RamificationDatum {
    long genus_top = 0;
    long genus_bottom = 0;
    long degree = 1;
    std::vector<std::pair<long, long>> ramification_points;  // (count, index)
};

// 2 g_top - 2 = deg (2 g_bot - 2) + sum count (index - 1), exactly.
inline bool check_riemann_hurwitz(const RamificationDatum& d) {
    long rhs = d.degree * (2 * d.genus_bottom - 2);
    for (const auto& [count, index] : d.ramification_points)
        rhs += count * (index - 1);
    return 2 * d.genus_top - 2 == rhs;
}

} // namespace xdelta

#endif // XDELTA_QUADFORMS_HPP
