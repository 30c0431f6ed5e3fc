#ifndef XDELTA_PIPELINE_HPP
#define XDELTA_PIPELINE_HPP

/*
 * The decision procedure: for each (N, Delta) with {±1} < Delta < (Z/NZ)^x,
 * decide whether X_Delta(N) has infinitely many cubic points over Q, with a
 * machine-readable reason and an evidence trail that separates recomputed
 * values from cited facts.
 *
 * Rule order:
 *   1. N outside S                       -> Finite(LevelNotInS)
 *   2. genus <= 1                        -> Infinite(GenusAtMostOne)
 *   3. hyperelliptic, genus >= 3, rank 0 -> Finite(HyperellipticRankZero)
 *   4. gonality 3, genus 3               -> Infinite(TrigonalGenus3)
 *   5. gonality 3, genus 4               -> quadric classification decides;
 *      ruled/cone over Q -> Infinite, otherwise rank 0 -> Finite
 *   6. gonality > 3, bielliptic, rank 0  -> Finite(BiellipticRankZero)
 *   7. gonality > 3, not bielliptic      -> no positive-rank target, or the
 *      square-degree / ramification obstructions -> Finite
 */

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "xdelta/cosets.hpp"
#include "xdelta/errors.hpp"
#include "xdelta/facts.hpp"
#include "xdelta/obstructions.hpp"
#include "xdelta/petri.hpp"
#include "xdelta/qseries.hpp"
#include "xdelta/quadforms.hpp"
#include "xdelta/zmod.hpp"

namespace xdelta {

enum class Verdict { Infinite, Finite };

enum class Reason {
    LevelNotInS,
    GenusAtMostOne,
    TrigonalGenus3,
    TrigonalGenus4Quadric,
    HyperellipticRankZero,
    NotTrigonalOverQRankZero,
    BiellipticRankZero,
    NoPositiveRankCurve,
    SquareDegreeObstruction,
    RamificationObstruction,
};

inline std::string to_string(Verdict v) {
    return v == Verdict::Infinite ? "Infinite" : "Finite";
}

inline std::string to_string(Reason r) {
    switch (r) {
        case Reason::LevelNotInS: return "LevelNotInS";
        case Reason::GenusAtMostOne: return "GenusAtMostOne";
        case Reason::TrigonalGenus3: return "TrigonalGenus3";
        case Reason::TrigonalGenus4Quadric: return "TrigonalGenus4Quadric";
        case Reason::HyperellipticRankZero: return "HyperellipticRankZero";
        case Reason::NotTrigonalOverQRankZero: return "NotTrigonalOverQRankZero";
        case Reason::BiellipticRankZero: return "BiellipticRankZero";
        case Reason::NoPositiveRankCurve: return "NoPositiveRankCurve";
        case Reason::SquareDegreeObstruction: return "SquareDegreeObstruction";
        case Reason::RamificationObstruction: return "RamificationObstruction";
    }
    return "?";
}

// How the genus-4 trigonality verdict was established (Computed covers the
// decisions that never touch a model).
enum class DecisionRigor { Computed, Verified, Heuristic, Cited };

inline std::string to_string(DecisionRigor r) {
    switch (r) {
        case DecisionRigor::Computed: return "computed";
        case DecisionRigor::Verified: return "verified";
        case DecisionRigor::Heuristic: return "heuristic";
        case DecisionRigor::Cited: return "cited";
    }
    return "?";
}

struct EvidenceStep {
    std::string step;
    std::string kind;  // computed | cited
    std::string detail;
    std::string citation;  // set when kind == cited
};

struct Decision {
    long level = 0;
    std::vector<long> delta;
    long genus = 0;
    Verdict verdict = Verdict::Finite;
    Reason reason = Reason::LevelNotInS;
    std::string reason_detail;
    std::vector<EvidenceStep> evidence;
    DecisionRigor rigor = DecisionRigor::Computed;
};

// Parsed q-expansion fixtures indexed by (level, residues); when several
// files cover the same curve the highest precision wins.
class FixtureSet {
public:
    FixtureSet() = default;

    static FixtureSet load(const std::filesystem::path& dir) {
        namespace fs = std::filesystem;
        FixtureSet set;
        if (!fs::exists(dir)) return set;
        std::vector<fs::path> paths;
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".txt")
                paths.push_back(entry.path());
        std::sort(paths.begin(), paths.end());
        for (const auto& path : paths) {
            std::ifstream in(path);
            CuspFormBasis basis = [&] {
                try {
                    return parse_fixture(in);
                } catch (const Error& e) {
                    throw DataError("BadFixture", path.string() + ": " + e.what());
                }
            }();
            const auto key = std::make_pair(basis.level.n(), basis.delta.residues());
            auto it = set.bases_.find(key);
            if (it == set.bases_.end() || it->second.prec() < basis.prec())
                set.bases_.insert_or_assign(key, std::move(basis));
        }
        return set;
    }

    const CuspFormBasis* find(long n, const std::vector<long>& residues) const {
        auto it = bases_.find({n, residues});
        return it == bases_.end() ? nullptr : &it->second;
    }

    std::size_t size() const { return bases_.size(); }

private:
    std::map<std::pair<long, std::vector<long>>, CuspFormBasis> bases_;
};

namespace detail {

inline void computed(Decision& d, const std::string& step, const std::string& detail) {
    d.evidence.push_back({step, "computed", detail, ""});
}

inline void cited(Decision& d, const std::string& step, const std::string& detail,
                  const std::string& citation) {
    d.evidence.push_back({step, "cited", detail, citation});
}

inline std::string gonality_citation(const GonalityFact& fact) {
    switch (fact.gonality_class) {
        case GonalityClass::AtMost2: return "[IM91], [JK07]";
        case GonalityClass::Exactly3: return "[JK07]";
        case GonalityClass::GreaterThan3:
            return fact.bielliptic ? "[JKS20]" : "[IM91], [JK07], [JKS20]";
    }
    return "";
}

inline JacobianRank require_rank_zero(Decision& d, const FactsBundle& bundle,
                                      long level, const char* why) {
    const auto rank = bundle.jacobian_rank(level);
    if (!rank)
        throw IntegrityError("UnclassifiedCase",
                             "no Jacobian rank fact for N = " + std::to_string(level) +
                             " (" + why + ")");
    cited(d, "jacobian_rank",
          std::string("rank Jac(X_1(") + std::to_string(level) + "))(Q) is " +
              (*rank == JacobianRank::Zero ? "zero" : "positive"),
          "[DEvHMZ21, Theorem 3.1]");
    return *rank;
}

} // namespace detail

inline Decision decide(Level level, const DeltaSubgroup& delta,
                       const FactsBundle& bundle,
                       const FixtureSet* fixtures = nullptr) {
    const long n = level.n();
    if (delta.is_trivial() || delta.is_full())
        throw UsageError("NotIntermediate",
                         "Delta must sit strictly between {±1} and the full unit group");

    Decision d;
    d.level = n;
    d.delta = delta.residues();

    const CosetSpace space = build_coset_space(level, delta);
    const CurveInvariants inv = curve_invariants(space);
    d.genus = inv.genus;
    detail::computed(d, "curve_invariants",
                     "mu=" + std::to_string(inv.mu) + " nu2=" + std::to_string(inv.nu2) +
                     " nu3=" + std::to_string(inv.nu3) +
                     " cusps=" + std::to_string(inv.nu_inf) +
                     " genus=" + std::to_string(inv.genus));

    // rule 1: outside S even quadratic-level machinery is unnecessary
    if (!bundle.set_s.count(n)) {
        d.verdict = Verdict::Finite;
        d.reason = Reason::LevelNotInS;
        detail::cited(d, "level_set",
                      "X_0(" + std::to_string(n) + ") has finitely many cubic points",
                      "[Jeo21, Theorem 0.1]");
        return d;
    }
    detail::cited(d, "level_set", "N is in the level set S", "[Jeo21, Theorem 0.1]");

    // rule 2: genus <= 1 gives a degree-3 map to P^1 from the rational cusp
    if (inv.genus <= 1) {
        d.verdict = Verdict::Infinite;
        d.reason = Reason::GenusAtMostOne;
        detail::cited(d, "rational_cusp", "the curve has a Q-rational cusp",
                      "[IM91, Lemma 1.2]");
        return d;
    }

    const GonalityFact* gon = bundle.find_gonality(n, delta.residues());
    if (!gon)
        throw IntegrityError("UnclassifiedCase",
                             "no gonality fact for (" + std::to_string(n) + ", Delta)");
    detail::cited(d, "gonality",
                  "gonality class " + to_string(gon->gonality_class) +
                      (gon->hyperelliptic ? ", hyperelliptic" : "") +
                      (gon->bielliptic ? ", bielliptic" : ""),
                  detail::gonality_citation(*gon));

    // rule 3: the hyperelliptic curve with rank-zero Jacobian
    if (gon->gonality_class == GonalityClass::AtMost2) {
        if (gon->hyperelliptic && inv.genus >= 3 &&
            detail::require_rank_zero(d, bundle, n, "hyperelliptic rule") ==
                JacobianRank::Zero) {
            d.verdict = Verdict::Finite;
            d.reason = Reason::HyperellipticRankZero;
            return d;
        }
        throw IntegrityError("UnclassifiedCase",
                             "gonality <= 2 with genus >= 2 but no finishing fact");
    }

    if (gon->gonality_class == GonalityClass::Exactly3) {
        // rule 4: genus 3 trigonal curves project from the rational cusp
        if (inv.genus == 3) {
            d.verdict = Verdict::Infinite;
            d.reason = Reason::TrigonalGenus3;
            detail::cited(d, "plane_quartic",
                          "degree-3 projection from the Q-rational cusp",
                          "[HS99, p. 136]");
            return d;
        }
        // rule 5: genus 4, decide by the quadric of the canonical model
        if (inv.genus != 4)
            throw IntegrityError("UnclassifiedCase",
                                 "gonality 3 with unexpected genus " +
                                 std::to_string(inv.genus));
        std::optional<QuadricVerdict> verdict;
        Integer field_disc = 0;
        const CuspFormBasis* basis =
            fixtures ? fixtures->find(n, delta.residues()) : nullptr;
        if (basis) {
            const PetriModel model = build_petri_model(*basis);
            const Trigonality tri = is_trigonal_over_q(model);
            verdict = tri.classification->verdict;
            field_disc = tri.classification->field_disc;
            d.rigor = model.rigor == Rigor::Verified ? DecisionRigor::Verified
                                                     : DecisionRigor::Heuristic;
            detail::computed(d, "petri_model",
                             "quadric classification " + tri.reason + " at precision " +
                                 std::to_string(basis->prec()) + " (" +
                                 to_string(model.rigor) + ")");
            detail::cited(d, "rational_point_on_quadric",
                          "the rational cusp lies on the quadric",
                          "[IM91, Lemma 1.2]");
        } else {
            const Table5Fact* t5 = bundle.find_table5(n, delta.residues());
            if (!t5)
                throw IntegrityError("UnclassifiedCase",
                                     "no fixture and no bundled quadric verdict for (" +
                                     std::to_string(n) + ", Delta)");
            verdict = t5->verdict;
            field_disc = t5->field_disc;
            d.rigor = DecisionRigor::Cited;
            detail::cited(d, "quadric_verdict",
                          "bundled classification " + to_string(t5->verdict),
                          "[JK07], [HS99]");
        }
        if (*verdict == QuadricVerdict::RuledOverQ ||
            *verdict == QuadricVerdict::ConeOverQ) {
            d.verdict = Verdict::Infinite;
            d.reason = Reason::TrigonalGenus4Quadric;
            d.reason_detail = to_string(*verdict);
            return d;
        }
        if (*verdict == QuadricVerdict::RuledOverField) {
            if (detail::require_rank_zero(d, bundle, n, "non-trigonal genus-4 rule") !=
                JacobianRank::Zero)
                throw IntegrityError("UnclassifiedCase",
                                     "ruled over a field but positive rank");
            d.verdict = Verdict::Finite;
            d.reason = Reason::NotTrigonalOverQRankZero;
            d.reason_detail = "RuledOverField(" + field_disc.str() + ")";
            return d;
        }
        throw IntegrityError("UnclassifiedCase", "degenerate quadric classification");
    }

    // gonality > 3 from here on
    if (gon->bielliptic) {
        // rule 6
        if (detail::require_rank_zero(d, bundle, n, "bielliptic rule") !=
            JacobianRank::Zero)
            throw IntegrityError("UnclassifiedCase", "bielliptic but positive rank");
        d.verdict = Verdict::Finite;
        d.reason = Reason::BiellipticRankZero;
        detail::cited(d, "bielliptic_descent",
                      "an infinite cubic locus forces an elliptic curve of positive "
                      "rank inside the Jacobian",
                      "[JKS04, Theorem 1.2]");
        return d;
    }

    // rule 7: gonality > 3, not bielliptic
    const auto targets = positive_rank_curves(n, bundle);
    if (targets.empty()) {
        d.verdict = Verdict::Finite;
        d.reason = Reason::NoPositiveRankCurve;
        detail::cited(d, "conductor_scan",
                      "no elliptic curve of positive rank has conductor dividing " +
                          std::to_string(n),
                      "[Cremona tables]");
        return d;
    }

    const EllipticCurveFact& target = targets.front();
    detail::cited(d, "target_curve",
                  target.target.label + " is the positive-rank target (End = Z, " +
                      "isogeny class of size 1)",
                  "[Cremona tables]");
    if (target.x0_plus_iso != n)
        throw IntegrityError("UnclassifiedCase",
                             "X_0^+(" + std::to_string(n) +
                             ") is not the bundled target curve");
    detail::cited(d, "x0_plus",
                  "X_0^+(" + std::to_string(n) + ") is isomorphic to " +
                      target.target.label,
                  "[MaSD]");

    const CoveringChain chain = covering_degrees(level, delta);
    const CurveInvariants inv_x1 = curve_invariants(
        build_coset_space(level, DeltaSubgroup::closure(level, {})));
    detail::computed(d, "covering_degrees",
                     "deg X_1 -> X_Delta = " + std::to_string(chain.deg_x1_to_delta) +
                         ", deg X_Delta -> X_0 = " +
                         std::to_string(chain.deg_delta_to_x0) +
                         ", deg X_0 -> X_0+ = 2; genus X_1 = " +
                         std::to_string(inv_x1.genus));

    const long deg_to_plus = chain.deg_delta_to_x0 * chain.deg_x0_to_plus;
    const ObstructionResult sq = square_degree_obstruction(
        chain.deg_x1_to_delta, deg_to_plus, 3, target.target, inv_x1.genus);
    detail::cited(d, "optimal_parametrization",
                  "every parametrization factors through the optimal one by an isogeny",
                  "[Ste89, Proposition 1.4]");
    {
        std::string nums;
        for (const auto& [k, v] : sq.numerics)
            nums += (nums.empty() ? "" : ", ") + k + "=" + std::to_string(v);
        detail::computed(d, "square_degree_test", sq.reason + " (" + nums + ")");
    }
    if (sq.status == ObstructionStatus::Obstructed) {
        d.verdict = Verdict::Finite;
        d.reason = Reason::SquareDegreeObstruction;
        d.reason_detail = sq.reason;
        return d;
    }
    if (sq.reason != "SquareTestPassed")
        throw IntegrityError("UnclassifiedCase",
                             "square-degree forcing failed: " + sq.reason);

    // escalate to the ramification argument (the N = 37 configuration)
    const long fixed = atkin_lehner_fixed_points(n);
    detail::computed(d, "atkin_lehner_fixed_points",
                     "w_" + std::to_string(n) + " has " + std::to_string(fixed) +
                         " fixed points");
    detail::cited(d, "fixed_point_count", "count agrees with the classical value",
                  "[MaSD, p. 27]");
    const CurveInvariants inv_x0 = curve_invariants(build_coset_space(
        level, DeltaSubgroup::closure(level, units(level))));
    const long beta = sq.numerics.at("beta_degree");
    const RamificationSetup setup = ramification_setup_37(
        inv_x0.genus, fixed, chain.deg_delta_to_x0, beta);
    detail::cited(d, "unramified_above_fixed_points",
                  "points above the fixed points do not ramify in X_Delta -> X_0",
                  "[JKS20, Lemma 2.4]");
    detail::computed(d, "ramification_setup",
                     std::to_string(setup.fiber_points) + " points of index " +
                         std::to_string(setup.fiber_index) +
                         " over the fixed-point image; the degree-" +
                         std::to_string(beta) + " isogeny is unramified with fibers of " +
                         std::to_string(setup.alpha_points));
    const ObstructionResult ram =
        ramification_obstruction(setup.deg_f, setup.required_index);
    detail::cited(d, "ramification_formula",
                  "fiber degrees sum to the mapping degree", "[Sil09, Proposition 2.6]");
    if (ram.status == ObstructionStatus::Obstructed) {
        d.verdict = Verdict::Finite;
        d.reason = Reason::RamificationObstruction;
        d.reason_detail = ram.reason;
        detail::computed(d, "ramification_test",
                         "no partition of 3 into parts of size 2 exists");
        return d;
    }
    throw IntegrityError("UnclassifiedCase", "all obstruction arguments inconclusive");
}

inline std::vector<Decision> survey(long max_n, const FactsBundle& bundle,
                                    const FixtureSet* fixtures = nullptr) {
    if (max_n < 3) throw UsageError("BadLevel", "survey needs max N >= 3");
    std::vector<Decision> out;
    for (long n = 3; n <= max_n; ++n) {
        Level level(n);
        for (const DeltaSubgroup& delta : proper_nontrivial_subgroups(level))
            out.push_back(decide(level, delta, bundle, fixtures));
    }
    return out;
}

// "{±1, ±5}" -- residues paired as r, N - r
inline std::string pm_notation(long n, const std::vector<long>& residues) {
    std::string out = "{";
    bool first = true;
    for (long r : residues) {
        if (r > n - r) continue;
        if (!first) out += ", ";
        out += "±" + std::to_string(r);
        first = false;
    }
    return out + "}";
}

// Index of delta in the (size, lex) ordering of proper nontrivial subgroups.
inline int delta_ordinal(Level level, const std::vector<long>& residues) {
    int i = 0;
    for (const DeltaSubgroup& d : proper_nontrivial_subgroups(level)) {
        ++i;
        if (d.residues() == residues) return i;
    }
    return 0;
}

inline std::string survey_markdown(const std::vector<Decision>& decisions) {
    std::ostringstream md;
    md << "# Cubic points on intermediate modular curves\n\n";
    md << "Verdicts for X_Delta(N) over Q, one row per proper nontrivial Delta "
          "containing -1.\n";

    auto table_header = [&](bool with_reason) {
        md << "\n| N | Delta | genus |";
        if (with_reason) md << " reason |";
        md << "\n|---:|---|---:|";
        if (with_reason) md << "---|";
        md << "\n";
    };
    auto row = [&](const Decision& d, bool with_reason) {
        md << "| " << d.level << " | Δ" << delta_ordinal(Level(d.level), d.delta)
           << " = " << pm_notation(d.level, d.delta) << " | " << d.genus << " |";
        if (with_reason) {
            md << " " << to_string(d.reason);
            if (!d.reason_detail.empty()) md << ": " << d.reason_detail;
            md << " |";
        }
        md << "\n";
    };

    md << "\n## Infinite, genus at most 1\n";
    table_header(false);
    for (const Decision& d : decisions)
        if (d.verdict == Verdict::Infinite && d.genus <= 1) row(d, false);

    md << "\n## Infinite, genus at least 2\n";
    table_header(false);
    for (const Decision& d : decisions)
        if (d.verdict == Verdict::Infinite && d.genus >= 2) row(d, false);

    md << "\n## Finite\n";
    table_header(true);
    for (const Decision& d : decisions)
        if (d.verdict == Verdict::Finite) row(d, true);

    return md.str();
}

} // namespace xdelta

#endif // XDELTA_PIPELINE_HPP
