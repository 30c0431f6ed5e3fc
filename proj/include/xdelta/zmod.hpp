#ifndef XDELTA_ZMOD_HPP
#define XDELTA_ZMOD_HPP

/*
 * Arithmetic on (Z/NZ)^x and the subgroups Delta that parameterize the
 * intermediate curves between X_1(N) and X_0(N).
 *
 * A Delta is a subgroup of the units containing -1, stored as the sorted
 * list of its canonical representatives in [1, N-1] (for N = 1 the unit
 * group is trivial and the single residue is 0).  -r is rendered as N - r.
 */

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "xdelta/errors.hpp"

namespace xdelta {

class Level {
public:
    explicit Level(long n) : n_(n) {
        if (n < 1)
            throw UsageError("BadLevel", "level must be a positive integer");
    }
    long n() const { return n_; }
    friend bool operator==(const Level& a, const Level& b) { return a.n_ == b.n_; }

private:
    long n_;
};

inline long euler_phi(long n) {
    long result = n, m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

// Ascending units in [1, N-1]; empty for N = 1.
inline std::vector<long> units(Level level) {
    const long n = level.n();
    std::vector<long> out;
    for (long r = 1; r < n; ++r)
        if (std::gcd(r, n) == 1) out.push_back(r);
    return out;
}

class DeltaSubgroup {
public:
    // Smallest subgroup of (Z/NZ)^x containing -1 and the generators.
    static DeltaSubgroup closure(Level level, const std::vector<long>& generators) {
        const long n = level.n();
        if (n == 1) return DeltaSubgroup(level, {0});
        std::set<long> s{1, n - 1};
        for (long g : generators) {
            long r = ((g % n) + n) % n;
            if (std::gcd(r, n) != 1)
                throw UsageError("NonUnitGenerator",
                                 "generator " + std::to_string(g) +
                                 " is not a unit mod " + std::to_string(n));
            s.insert(r);
        }
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<long> cur(s.begin(), s.end());
            for (long a : cur)
                for (long b : cur) {
                    long c = (a * b) % n;
                    if (s.insert(c).second) grew = true;
                }
        }
        return DeltaSubgroup(level, std::vector<long>(s.begin(), s.end()));
    }

    // Validates an explicitly given residue set (must be the full subgroup).
    static DeltaSubgroup from_residues(Level level, std::vector<long> residues) {
        const long n = level.n();
        std::sort(residues.begin(), residues.end());
        residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
        DeltaSubgroup closed = closure(level, residues);
        if (closed.residues() != residues)
            throw UsageError("NotASubgroup",
                             "residue list is not a subgroup of (Z/" +
                             std::to_string(n) + ")^x containing -1");
        return closed;
    }

    Level level() const { return level_; }
    const std::vector<long>& residues() const { return residues_; }
    long order() const { return static_cast<long>(residues_.size()); }

    bool contains(long r) const {
        const long n = level_.n();
        long c = ((r % n) + n) % n;
        return std::binary_search(residues_.begin(), residues_.end(), c);
    }

    bool is_trivial() const {
        return order() == (level_.n() > 2 ? 2 : 1);
    }
    bool is_full() const {
        return order() == std::max<long>(euler_phi(level_.n()), 1);
    }

    friend bool operator==(const DeltaSubgroup& a, const DeltaSubgroup& b) {
        return a.level_ == b.level_ && a.residues_ == b.residues_;
    }
    friend bool operator<(const DeltaSubgroup& a, const DeltaSubgroup& b) {
        if (a.residues_.size() != b.residues_.size())
            return a.residues_.size() < b.residues_.size();
        return a.residues_ < b.residues_;
    }

private:
    DeltaSubgroup(Level level, std::vector<long> residues)
        : level_(level), residues_(std::move(residues)) {}

    Level level_;
    std::vector<long> residues_;
};

// All subgroups of (Z/NZ)^x containing -1, by breadth-first closure:
// grow every known subgroup by every unit outside it until nothing new
// appears.  Ordered by size, then lexicographically by residue list.
inline std::vector<DeltaSubgroup> enumerate_delta_subgroups(Level level) {
    if (level.n() < 3)
        throw UsageError("BadLevel", "subgroup enumeration needs N >= 3");
    const std::vector<long> us = units(level);
    std::set<std::vector<long>> seen;
    std::vector<DeltaSubgroup> queue{DeltaSubgroup::closure(level, {})};
    seen.insert(queue.front().residues());
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const DeltaSubgroup cur = queue[i];
        for (long u : us) {
            if (cur.contains(u)) continue;
            std::vector<long> gens = cur.residues();
            gens.push_back(u);
            DeltaSubgroup next = DeltaSubgroup::closure(level, gens);
            if (seen.insert(next.residues()).second) queue.push_back(next);
        }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
}

inline std::vector<DeltaSubgroup> proper_nontrivial_subgroups(Level level) {
    std::vector<DeltaSubgroup> out;
    for (const DeltaSubgroup& d : enumerate_delta_subgroups(level))
        if (!d.is_trivial() && !d.is_full()) out.push_back(d);
    return out;
}

} // namespace xdelta

#endif // XDELTA_ZMOD_HPP
