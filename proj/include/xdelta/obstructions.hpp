#ifndef XDELTA_OBSTRUCTIONS_HPP
#define XDELTA_OBSTRUCTIONS_HPP

/*
 * The two nonexistence arguments for a degree-3 map X_Delta(N) -> E.
 *
 * Square-degree argument: a hypothesized degree-3 map f composed with
 * X_1(N) -> X_Delta(N) (degree deg_phi) gives a parametrization of total
 * degree T = 3 * deg_phi.  When End(E) = Z and E is alone in its isogeny
 * class, the optimal parametrization forces every isogeny factor to have
 * square degree; if the only divisor d of T with square cofactor is T
 * itself, the composite IS optimal, and the natural projection to
 * X_0^+(N) = E of degree deg_to_plus must factor through f by an isogeny
 * of degree deg_to_plus / 3 -- which must then be an integer square.
 *
 * Ramification argument: if every point of the relevant fiber is forced to
 * have ramification index e, a degree-d map needs e | d.
 */

#include <map>
#include <string>

#include "xdelta/errors.hpp"
#include "xdelta/quadforms.hpp"

namespace xdelta {

struct EllipticTarget {
    std::string label;            // e.g. "37a1"
    long conductor = 0;
    long rank = 0;
    bool has_cm = false;
    long isogeny_class_size = 1;
};

enum class ObstructionStatus { Obstructed, Inconclusive };

struct ObstructionResult {
    ObstructionStatus status = ObstructionStatus::Inconclusive;
    std::string reason;  // NonIntegralIsogenyDegree | NonSquareIsogenyDegree |
                         // RamificationParityViolation | OptimalNotForced | ...
    std::map<std::string, long> numerics;
};

inline bool is_perfect_square(long n) {
    if (n < 0) return false;
    long r = 0;
    while (r * r < n) ++r;
    return r * r == n;
}

inline ObstructionResult square_degree_obstruction(long deg_phi, long deg_to_plus,
                                                   long deg_f,
                                                   const EllipticTarget& target,
                                                   long genus_x1) {
    if (target.has_cm)
        throw UsageError("PreconditionViolation",
                         target.label + " has CM; End(E) = Z is required");
    if (target.isogeny_class_size != 1)
        throw UsageError("PreconditionViolation",
                         target.label + " is not alone in its isogeny class");
    if (genus_x1 < 1)
        throw UsageError("PreconditionViolation",
                         "X_1(N) must have positive genus");
    if (deg_phi < 1 || deg_f < 1 || deg_to_plus < 1)
        throw UsageError("PreconditionViolation", "degrees must be positive");

    ObstructionResult out;
    const long total = deg_f * deg_phi;
    out.numerics["candidate_degree"] = total;
    out.numerics["deg_phi"] = deg_phi;
    out.numerics["deg_f"] = deg_f;
    out.numerics["deg_to_plus"] = deg_to_plus;

    // step 1: the optimal parametrization must be the composite itself
    for (long d = 2; d < total; ++d) {
        if (total % d == 0 && is_perfect_square(total / d)) {
            out.status = ObstructionStatus::Inconclusive;
            out.reason = "OptimalNotForced";
            out.numerics["alternate_degree"] = d;
            return out;
        }
    }

    // step 2: the isogeny beta with beta o f = (projection to X_0^+) has
    // degree deg_to_plus / deg_f, which must be an integer square
    if (deg_to_plus % deg_f != 0) {
        out.status = ObstructionStatus::Obstructed;
        out.reason = "NonIntegralIsogenyDegree";
        return out;
    }
    const long beta = deg_to_plus / deg_f;
    out.numerics["beta_degree"] = beta;
    if (!is_perfect_square(beta)) {
        out.status = ObstructionStatus::Obstructed;
        out.reason = "NonSquareIsogenyDegree";
        return out;
    }
    out.status = ObstructionStatus::Inconclusive;
    out.reason = "SquareTestPassed";
    return out;
}

// A degree-d fiber in which every point must have index e exists only
// when e | d.
inline ObstructionResult ramification_obstruction(long deg_f, long required_index) {
    if (deg_f < 1 || required_index < 1)
        throw UsageError("PreconditionViolation", "degrees must be positive");
    ObstructionResult out;
    out.numerics["deg_f"] = deg_f;
    out.numerics["required_index"] = required_index;
    if (deg_f % required_index != 0) {
        out.status = ObstructionStatus::Obstructed;
        out.reason = "RamificationParityViolation";
    } else {
        out.status = ObstructionStatus::Inconclusive;
        out.reason = "PartitionExists";
    }
    return out;
}

struct RamificationSetup {
    long fiber_points = 0;   // points of X_Delta2(37) over a fixed point image
    long fiber_index = 0;    // their common ramification index
    long alpha_points = 0;   // points of E over the same image under alpha
    long deg_f = 3;
    long required_index = 2;
};

/*
 * The N = 37 setup: w_37 has exactly two fixed points on X_0(37); the
 * covering X_Delta2(37) -> X_0(37) of degree 6 is unramified above them, so
 * the 12 points upstairs pair into 6 points of ramification index 2 in the
 * degree-12 map to X_0^+(37).  The multiplication-by-2 isogeny alpha has
 * degree 4 and is unramified, giving fibers of 4 points of index 1.
 */
inline RamificationSetup ramification_setup_37(long genus_x0, long fixed_points,
                                               long deg_pi, long deg_alpha) {
    if (genus_x0 != 2)
        throw IntegrityError("SetupMismatch",
                             "genus of X_0(37) must be 2, got " +
                             std::to_string(genus_x0));
    if (fixed_points != 2)
        throw IntegrityError("SetupMismatch",
                             "w_37 has two fixed points, got " +
                             std::to_string(fixed_points));
    if (deg_pi != 6)
        throw IntegrityError("SetupMismatch",
                             "X_Delta2(37) -> X_0(37) has degree 6, got " +
                             std::to_string(deg_pi));
    if (deg_alpha != 4)
        throw IntegrityError("SetupMismatch",
                             "multiplication by 2 has degree 4, got " +
                             std::to_string(deg_alpha));
    RamificationSetup s;
    s.fiber_points = deg_pi * 2 / 2;  // 12 points upstairs, index 2 each
    s.fiber_index = 2;
    s.alpha_points = deg_alpha;       // unramified isogeny
    s.deg_f = 3;
    s.required_index = 2;
    return s;
}

} // namespace xdelta

#endif // XDELTA_OBSTRUCTIONS_HPP
