#ifndef XDELTA_COSETS_HPP
#define XDELTA_COSETS_HPP

/*
 * Permutation model of the right coset space Gamma_Delta(N) \ PSL_2(Z).
 *
 * A right coset is determined by the bottom row (c, d) of any representative,
 * taken mod N and up to simultaneous scaling by Delta; gcd(c, d, N) = 1.
 * The canonical label is the lexicographically least (c, d) in [0, N)^2 over
 * all Delta-scalings.  Right multiplication acts on bottom rows by
 *
 *      T = [1 1; 0 1] : (c, d) -> (c, c + d)
 *      S = [0 -1; 1 0]: (c, d) -> (d, -c)
 *
 * and sigma_R is the order-3 action "first S, then T", i.e. right
 * multiplication by ST.  Since -1 is in Delta, S^2 and R^3 act trivially.
 *
 * From the permutations: nu_2 = #fixed points of sigma_S, nu_3 = #fixed
 * points of sigma_R, cusps = #orbits of sigma_T, and the genus follows from
 * 12(g - 1) = mu - 3 nu_2 - 4 nu_3 - 6 nu_inf.
 */

#include <utility>
#include <vector>

#include "xdelta/errors.hpp"
#include "xdelta/zmod.hpp"

namespace xdelta {

struct CosetSpace {
    Level level;
    DeltaSubgroup delta;
    std::vector<std::pair<long, long>> labels;
    std::vector<int> sigma_s;
    std::vector<int> sigma_t;
    std::vector<int> sigma_r;

    long index() const { return static_cast<long>(labels.size()); }
};

struct CurveInvariants {
    long mu = 0;
    long nu2 = 0;
    long nu3 = 0;
    long nu_inf = 0;
    long genus = 0;
};

struct CoveringChain {
    long deg_x1_to_delta = 1;  // X_1(N) -> X_Delta(N)
    long deg_delta_to_x0 = 1;  // X_Delta(N) -> X_0(N)
    long deg_x0_to_plus = 2;   // X_0(N) -> X_0^+(N)
};

namespace detail {

// Index of every (c, d) pair into the canonical label list; -1 if not coprime.
class LabelTable {
public:
    LabelTable(Level level, const DeltaSubgroup& delta) : n_(level.n()) {
        const long n = n_;
        table_.assign(static_cast<std::size_t>(n) * n, -1);
        if (n == 1) {
            labels_.emplace_back(0, 0);
            table_[0] = 0;
            return;
        }
        const auto& ds = delta.residues();
        std::vector<char> canonical(static_cast<std::size_t>(n) * n, 0);
        for (long c = 0; c < n; ++c)
            for (long d = 0; d < n; ++d) {
                if (std::gcd(std::gcd(c, d), n) != 1) continue;
                long bc = c, bd = d;
                for (long u : ds) {
                    long uc = (u * c) % n, ud = (u * d) % n;
                    if (uc < bc || (uc == bc && ud < bd)) { bc = uc; bd = ud; }
                }
                if (bc == c && bd == d) {
                    canonical[static_cast<std::size_t>(c) * n + d] = 1;
                    table_[static_cast<std::size_t>(c) * n + d] =
                        static_cast<int>(labels_.size());
                    labels_.emplace_back(c, d);
                }
            }
        // second pass: point every non-canonical pair at its class
        for (long c = 0; c < n; ++c)
            for (long d = 0; d < n; ++d) {
                if (std::gcd(std::gcd(c, d), n) != 1) continue;
                if (canonical[static_cast<std::size_t>(c) * n + d]) continue;
                long bc = c, bd = d;
                for (long u : ds) {
                    long uc = (u * c) % n, ud = (u * d) % n;
                    if (uc < bc || (uc == bc && ud < bd)) { bc = uc; bd = ud; }
                }
                table_[static_cast<std::size_t>(c) * n + d] =
                    table_[static_cast<std::size_t>(bc) * n + bd];
            }
    }

    int at(long c, long d) const {
        const long n = n_;
        c = ((c % n) + n) % n;
        d = ((d % n) + n) % n;
        return table_[static_cast<std::size_t>(c) * n + d];
    }

    const std::vector<std::pair<long, long>>& labels() const { return labels_; }

private:
    long n_;
    std::vector<int> table_;
    std::vector<std::pair<long, long>> labels_;
};

} // namespace detail

inline CosetSpace build_coset_space(Level level, const DeltaSubgroup& delta) {
    detail::LabelTable table(level, delta);
    CosetSpace space{level, delta, table.labels(), {}, {}, {}};
    const std::size_t m = space.labels.size();
    space.sigma_s.resize(m);
    space.sigma_t.resize(m);
    space.sigma_r.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto [c, d] = space.labels[i];
        space.sigma_s[i] = table.at(d, -c);
        space.sigma_t[i] = table.at(c, c + d);
        space.sigma_r[i] = table.at(d, d - c);  // right multiplication by ST
    }
    // group relations pin the conventions
    for (std::size_t i = 0; i < m; ++i) {
        if (space.sigma_s[static_cast<std::size_t>(space.sigma_s[i])] !=
            static_cast<int>(i))
            throw IntegrityError("BrokenRelation", "sigma_S^2 != id");
        std::size_t r = static_cast<std::size_t>(space.sigma_r[i]);
        r = static_cast<std::size_t>(space.sigma_r[r]);
        if (space.sigma_r[r] != static_cast<int>(i))
            throw IntegrityError("BrokenRelation", "sigma_R^3 != id");
    }
    return space;
}

inline long count_orbits(const std::vector<int>& perm) {
    std::vector<char> seen(perm.size(), 0);
    long orbits = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        ++orbits;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = 1;
            j = static_cast<std::size_t>(perm[j]);
        }
    }
    return orbits;
}

inline CurveInvariants curve_invariants(const CosetSpace& space) {
    CurveInvariants inv;
    inv.mu = space.index();
    for (std::size_t i = 0; i < space.labels.size(); ++i) {
        if (space.sigma_s[i] == static_cast<int>(i)) ++inv.nu2;
        if (space.sigma_r[i] == static_cast<int>(i)) ++inv.nu3;
    }
    inv.nu_inf = count_orbits(space.sigma_t);
    const long num = inv.mu - 3 * inv.nu2 - 4 * inv.nu3 - 6 * inv.nu_inf;
    if (num % 12 != 0)
        throw IntegrityError("NonIntegralGenus",
                             "genus formula numerator not divisible by 12");
    inv.genus = 1 + num / 12;
    if (inv.genus < 0)
        throw IntegrityError("NonIntegralGenus", "negative genus");
    return inv;
}

// Number of (c, d) pairs mod N with gcd(c, d, N) = 1.
inline long coprime_pair_count(long n) {
    if (n == 1) return 1;
    long count = 0;
    for (long c = 0; c < n; ++c)
        for (long d = 0; d < n; ++d)
            if (std::gcd(std::gcd(c, d), n) == 1) ++count;
    return count;
}

inline CoveringChain covering_degrees(Level level, const DeltaSubgroup& delta) {
    if (!delta.contains(-1))
        throw UsageError("MissingMinusOne", "Delta must contain -1");
    CoveringChain chain;
    const long n = level.n();
    if (n <= 2) return chain;  // X_1 = X_Delta = X_0 for N <= 2
    chain.deg_x1_to_delta = delta.order() / 2;
    chain.deg_delta_to_x0 = euler_phi(n) / delta.order();
    // redundancy: subgroup-order degrees must agree with coset counts
    const long pairs = coprime_pair_count(n);
    if (pairs % delta.order() != 0 ||
        (pairs / delta.order()) % (pairs / euler_phi(n)) != 0 ||
        (pairs / delta.order()) / (pairs / euler_phi(n)) != chain.deg_delta_to_x0)
        throw IntegrityError("DegreeMismatch",
                             "covering degrees disagree with coset counts");
    return chain;
}

} // namespace xdelta

#endif // XDELTA_COSETS_HPP
