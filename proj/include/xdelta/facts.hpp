#ifndef XDELTA_FACTS_HPP
#define XDELTA_FACTS_HPP

/*
 * Bundled, provenance-tagged datasets: the level set S, the gonality
 * partition (tables 1-4), the quadric verdicts for the genus-4 trigonal
 * curves (table 5), Jacobian ranks of X_1(N), and the positive-rank
 * elliptic targets.  Loading validates the data against recomputed
 * invariants: every printed genus is recomputed from the coset space,
 * every residue list must be a genuine subgroup containing -1, the level
 * set must equal the expected literal, and the gonality tables must cover
 * every proper nontrivial Delta for every N in S.
 */

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "xdelta/cosets.hpp"
#include "xdelta/errors.hpp"
#include "xdelta/exactalg.hpp"
#include "xdelta/obstructions.hpp"
#include "xdelta/zmod.hpp"

namespace xdelta {

enum class GonalityClass { AtMost2, Exactly3, GreaterThan3 };

inline std::string to_string(GonalityClass g) {
    switch (g) {
        case GonalityClass::AtMost2: return "AtMost2";
        case GonalityClass::Exactly3: return "Exactly3";
        case GonalityClass::GreaterThan3: return "GreaterThan3";
    }
    return "?";
}

struct GonalityFact {
    long level = 0;
    std::vector<long> residues;
    GonalityClass gonality_class = GonalityClass::AtMost2;
    bool hyperelliptic = false;
    bool bielliptic = false;
    long printed_genus = 0;
};

enum class JacobianRank { Zero, Positive };

struct Table5Fact {
    long level = 0;
    std::vector<long> residues;
    QuadricVerdict verdict = QuadricVerdict::RuledOverQ;
    Integer field_disc = 0;
    std::vector<Rational> diagonal;
};

struct EllipticCurveFact {
    EllipticTarget target;
    long x0_plus_iso = -1;  // level N with X_0^+(N) isomorphic to the curve
};

struct FactsBundle {
    std::set<long> set_s;
    std::map<std::pair<long, std::vector<long>>, GonalityFact> gonality;
    std::map<std::pair<long, std::vector<long>>, Table5Fact> table5;
    std::map<long, JacobianRank> jacobian_ranks;
    std::vector<EllipticCurveFact> curves;

    const GonalityFact* find_gonality(long n, const std::vector<long>& residues) const {
        auto it = gonality.find({n, residues});
        return it == gonality.end() ? nullptr : &it->second;
    }
    const Table5Fact* find_table5(long n, const std::vector<long>& residues) const {
        auto it = table5.find({n, residues});
        return it == table5.end() ? nullptr : &it->second;
    }
    std::optional<JacobianRank> jacobian_rank(long n) const {
        auto it = jacobian_ranks.find(n);
        if (it == jacobian_ranks.end()) return std::nullopt;
        return it->second;
    }
};

namespace detail {

inline std::vector<std::string> read_data_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("DataFileMissing", "cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        lines.push_back(line);
    }
    return lines;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::vector<long> parse_residues(const std::string& s, const std::string& where) {
    std::vector<long> out;
    for (const std::string& tok : split(s, ',')) {
        try {
            out.push_back(std::stol(tok));
        } catch (const std::exception&) {
            throw DataError("ParseError", where + ": bad residue '" + tok + "'");
        }
    }
    return out;
}

inline std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

} // namespace detail

inline const std::set<long>& expected_set_s() {
    static const std::set<long> s = [] {
        std::set<long> out;
        for (long n = 1; n <= 29; ++n) out.insert(n);
        for (long n : {31, 32, 34, 36, 37, 43, 45, 49, 50, 54, 64, 81}) out.insert(n);
        return out;
    }();
    return s;
}

inline FactsBundle load_facts(const std::filesystem::path& data_dir) {
    namespace fs = std::filesystem;
    FactsBundle bundle;

    // set S
    for (const std::string& line : detail::read_data_lines(data_dir / "set_s.txt")) {
        std::istringstream ss(line);
        long n;
        while (ss >> n) bundle.set_s.insert(n);
    }
    if (bundle.set_s != expected_set_s())
        throw IntegrityError("SetSMismatch",
                             "set_s.txt disagrees with the expected level set");

    // gonality tables
    struct TableSpec {
        const char* file;
        GonalityClass cls;
        bool has_hyper_column;
        bool bielliptic;
    };
    const TableSpec specs[] = {
        {"table1.tsv", GonalityClass::AtMost2, true, false},
        {"table2.tsv", GonalityClass::Exactly3, false, false},
        {"table3.tsv", GonalityClass::GreaterThan3, false, true},
        {"table4.tsv", GonalityClass::GreaterThan3, false, false},
    };
    for (const TableSpec& spec : specs) {
        for (const std::string& line : detail::read_data_lines(data_dir / spec.file)) {
            const auto f = detail::fields_of(line);
            const std::size_t want = spec.has_hyper_column ? 4 : 3;
            if (f.size() != want)
                throw DataError("ParseError", std::string(spec.file) +
                                ": expected " + std::to_string(want) +
                                " columns, got '" + line + "'");
            GonalityFact fact;
            fact.level = std::stol(f[0]);
            fact.residues = detail::parse_residues(f[1], spec.file);
            fact.printed_genus = std::stol(f[2]);
            fact.hyperelliptic = spec.has_hyper_column && f[3] == "1";
            fact.bielliptic = spec.bielliptic;
            fact.gonality_class = spec.cls;
            const auto key = std::make_pair(fact.level, fact.residues);
            if (!bundle.gonality.emplace(key, fact).second)
                throw IntegrityError("DuplicateKey",
                                     std::string(spec.file) + ": duplicate (N, Delta)");
        }
    }

    // table 5 verdicts
    for (const std::string& line : detail::read_data_lines(data_dir / "table5.tsv")) {
        const auto f = detail::fields_of(line);
        if (f.size() != 5)
            throw DataError("ParseError", "table5.tsv: bad line '" + line + "'");
        Table5Fact fact;
        fact.level = std::stol(f[0]);
        fact.residues = detail::parse_residues(f[1], "table5.tsv");
        if (f[2] == "RuledOverQ") fact.verdict = QuadricVerdict::RuledOverQ;
        else if (f[2] == "RuledOverField") fact.verdict = QuadricVerdict::RuledOverField;
        else if (f[2] == "ConeOverQ") fact.verdict = QuadricVerdict::ConeOverQ;
        else throw DataError("ParseError", "table5.tsv: bad verdict " + f[2]);
        fact.field_disc = Integer(f[3]);
        for (const std::string& tok : detail::split(f[4], ','))
            fact.diagonal.push_back(Rational(tok));
        bundle.table5[{fact.level, fact.residues}] = fact;
    }

    // Jacobian ranks
    for (const std::string& line :
         detail::read_data_lines(data_dir / "jacobian_ranks.tsv")) {
        const auto f = detail::fields_of(line);
        if (f.size() != 2 || (f[1] != "Zero" && f[1] != "Positive"))
            throw DataError("ParseError", "jacobian_ranks.tsv: bad line '" + line + "'");
        const long n = std::stol(f[0]);
        if (!bundle.jacobian_ranks
                 .emplace(n, f[1] == "Zero" ? JacobianRank::Zero : JacobianRank::Positive)
                 .second)
            throw IntegrityError("DuplicateKey", "jacobian_ranks.tsv: duplicate level");
    }

    // elliptic targets
    for (const std::string& line :
         detail::read_data_lines(data_dir / "elliptic_curves.tsv")) {
        const auto f = detail::fields_of(line);
        if (f.size() != 6)
            throw DataError("ParseError", "elliptic_curves.tsv: bad line '" + line + "'");
        EllipticCurveFact fact;
        fact.target.label = f[0];
        fact.target.conductor = std::stol(f[1]);
        fact.target.rank = std::stol(f[2]);
        fact.target.has_cm = f[3] == "1";
        fact.target.isogeny_class_size = std::stol(f[4]);
        fact.x0_plus_iso = f[5] == "-" ? -1 : std::stol(f[5]);
        if (fact.target.conductor < 11)
            throw IntegrityError("BadConductor", "conductor below 11: " + f[0]);
        for (const auto& other : bundle.curves)
            if (other.target.label == fact.target.label)
                throw IntegrityError("DuplicateKey",
                                     "elliptic_curves.tsv: duplicate label " + f[0]);
        bundle.curves.push_back(fact);
    }

    // integrity: genus recomputation and subgroup validity for every row
    for (const auto& [key, fact] : bundle.gonality) {
        Level level(fact.level);
        DeltaSubgroup delta = [&] {
            try {
                return DeltaSubgroup::from_residues(level, fact.residues);
            } catch (const Error& e) {
                throw IntegrityError("NotASubgroup",
                                     "table row (" + std::to_string(fact.level) +
                                     "): " + e.what());
            }
        }();
        const CurveInvariants inv = curve_invariants(build_coset_space(level, delta));
        if (inv.genus != fact.printed_genus) {
            std::string rs;
            for (long r : fact.residues) rs += (rs.empty() ? "" : ",") + std::to_string(r);
            throw IntegrityError(
                "GenusIntegrityFailure",
                "(" + std::to_string(fact.level) + ", {" + rs + "}): printed genus " +
                std::to_string(fact.printed_genus) + " but computed " +
                std::to_string(inv.genus));
        }
        if (!bundle.set_s.count(fact.level))
            throw IntegrityError("LevelNotInS",
                                 "gonality fact for level outside S: " +
                                 std::to_string(fact.level));
    }

    // integrity: the tables cover every proper nontrivial Delta for N in S
    for (long n : bundle.set_s) {
        if (n < 3) continue;
        for (const DeltaSubgroup& d : proper_nontrivial_subgroups(Level(n)))
            if (!bundle.find_gonality(n, d.residues()))
                throw IntegrityError("CoverageGap",
                                     "no gonality fact for (" + std::to_string(n) +
                                     ", |Delta| = " + std::to_string(d.order()) + ")");
    }

    // integrity: every table-5 key is a genus-4 gonality-3 row
    for (const auto& [key, fact] : bundle.table5) {
        const GonalityFact* g = bundle.find_gonality(fact.level, fact.residues);
        if (!g || g->gonality_class != GonalityClass::Exactly3 || g->printed_genus != 4)
            throw IntegrityError("Table5Mismatch",
                                 "table5 row is not a genus-4 gonality-3 curve");
    }

    return bundle;
}

// All bundled curves with conductor dividing N and positive rank.
inline std::vector<EllipticCurveFact> positive_rank_curves(long n,
                                                           const FactsBundle& bundle) {
    std::vector<EllipticCurveFact> out;
    for (const auto& fact : bundle.curves)
        if (fact.target.rank > 0 && n % fact.target.conductor == 0)
            out.push_back(fact);
    return out;
}

} // namespace xdelta

#endif // XDELTA_FACTS_HPP
