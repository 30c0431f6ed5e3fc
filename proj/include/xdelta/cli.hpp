#ifndef XDELTA_CLI_HPP
#define XDELTA_CLI_HPP

/*
 * Command-line front end.  Results stream to `out`, diagnostics to `err`;
 * identical invocations produce identical bytes.  Exit codes: 0 success,
 * 1 usage, 2 data error, 3 integrity failure.
 */

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "xdelta/cosets.hpp"
#include "xdelta/errors.hpp"
#include "xdelta/exactalg.hpp"
#include "xdelta/facts.hpp"
#include "xdelta/obstructions.hpp"
#include "xdelta/petri.hpp"
#include "xdelta/pipeline.hpp"
#include "xdelta/qseries.hpp"
#include "xdelta/quadforms.hpp"
#include "xdelta/zmod.hpp"

namespace xdelta {
namespace cli {

using nlohmann::json;

inline std::vector<long> parse_long_list(const std::string& s) {
    std::vector<long> out;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',') {
            if (!cur.empty()) {
                try {
                    out.push_back(std::stol(cur));
                } catch (const std::exception&) {
                    throw UsageError("BadList", "bad integer '" + cur + "'");
                }
            }
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    return out;
}

inline std::string rational_str(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline json delta_json(const DeltaSubgroup& d) {
    json j = json::array();
    for (long r : d.residues()) j.push_back(r);
    return j;
}

inline json decision_json(const Decision& d) {
    json j;
    j["level"] = d.level;
    j["delta"] = d.delta;
    j["genus"] = d.genus;
    j["verdict"] = to_string(d.verdict);
    j["reason"] = to_string(d.reason);
    if (!d.reason_detail.empty()) j["reason_detail"] = d.reason_detail;
    j["rigor"] = to_string(d.rigor);
    j["evidence"] = json::array();
    for (const EvidenceStep& step : d.evidence) {
        json s;
        s["step"] = step.step;
        s["kind"] = step.kind;
        s["detail"] = step.detail;
        if (!step.citation.empty()) s["citation"] = step.citation;
        j["evidence"].push_back(s);
    }
    return j;
}

inline json classification_json(const QuadricClassification& cls) {
    json j;
    j["rank"] = cls.rank;
    j["diagonal"] = json::array();
    for (const Rational& d : cls.diagonal) j["diagonal"].push_back(rational_str(d));
    j["squarefree_disc"] = cls.squarefree_disc.str();
    j["verdict"] = to_string(cls.verdict);
    if (cls.verdict == QuadricVerdict::RuledOverField)
        j["field_disc"] = cls.field_disc.str();
    return j;
}

inline json polynomial_json(const Polynomial& p) {
    json j;
    j["degree"] = p.degree;
    j["text"] = to_string(p);
    j["terms"] = json::array();
    const auto mons = grlex_monomials(p.nvars, p.degree);
    for (std::size_t k = 0; k < mons.size(); ++k) {
        if (p.coeffs[k] == 0) continue;
        json t;
        t["exponents"] = mons[k];
        t["coefficient"] = rational_str(p.coeffs[k]);
        j["terms"].push_back(t);
    }
    return j;
}

inline void print_decision_text(const Decision& d, std::ostream& out) {
    out << "X_Delta(" << d.level << "), Delta = " << pm_notation(d.level, d.delta)
        << ", genus " << d.genus << "\n";
    out << "verdict: " << to_string(d.verdict) << " (" << to_string(d.reason);
    if (!d.reason_detail.empty()) out << ": " << d.reason_detail;
    out << "; rigor " << to_string(d.rigor) << ")\n";
    for (const EvidenceStep& s : d.evidence) {
        out << "  [" << s.kind << "] " << s.step << ": " << s.detail;
        if (!s.citation.empty()) out << "  " << s.citation;
        out << "\n";
    }
}

struct Paths {
    std::string data_dir = "data";
    std::string fixtures_dir = "fixtures";
};

inline FactsBundle load_bundle(const Paths& paths) {
    return load_facts(paths.data_dir);
}

inline FixtureSet load_fixtures(const Paths& paths) {
    return FixtureSet::load(paths.fixtures_dir);
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"classification of intermediate modular curves X_Delta(N) "
                 "with infinitely many cubic points over Q"};
    app.require_subcommand(1);

    Paths paths;
    std::string format = "text";
    long arg_n = 0, arg_d = 0, arg_max_n = 81;
    std::string arg_delta, arg_matrix, arg_fixture;

    auto add_format = [&](CLI::App* cmd, bool md = false) {
        cmd->add_option("--format", format,
                        md ? "output format: text, json or md"
                           : "output format: text or json")
            ->check(md ? CLI::IsMember({"text", "json", "md"})
                       : CLI::IsMember({"text", "json"}));
    };
    auto add_dirs = [&](CLI::App* cmd, bool fixtures = true) {
        cmd->add_option("--data-dir", paths.data_dir, "bundled fact tables");
        if (fixtures)
            cmd->add_option("--fixtures-dir", paths.fixtures_dir,
                            "q-expansion fixtures");
    };

    CLI::App* c_subgroups = app.add_subcommand(
        "subgroups", "enumerate the proper nontrivial Delta for a level");
    c_subgroups->add_option("N", arg_n, "level")->required();
    add_format(c_subgroups);

    CLI::App* c_invariants = app.add_subcommand(
        "invariants", "index, elliptic points, cusps, genus, covering degrees");
    c_invariants->add_option("N", arg_n, "level")->required();
    c_invariants->add_option("--delta", arg_delta, "comma-separated residues")
        ->required();
    add_format(c_invariants);

    CLI::App* c_classify = app.add_subcommand(
        "classify-quadric", "classify a symmetric rational quadric");
    c_classify->add_option("--matrix", arg_matrix,
                           "rows 'a11,a12,..;a21,..' of a symmetric matrix")
        ->required();
    add_format(c_classify);

    CLI::App* c_model = app.add_subcommand(
        "model", "canonical model relations from a q-expansion fixture");
    c_model->add_option("--fixture", arg_fixture, "fixture file")->required();
    add_format(c_model);

    CLI::App* c_classnumber =
        app.add_subcommand("classnumber", "class number of a negative discriminant");
    c_classnumber->add_option("D", arg_d, "discriminant (negative, 0 or 1 mod 4)")
        ->required();
    add_format(c_classnumber);

    CLI::App* c_fixedpoints = app.add_subcommand(
        "fixedpoints", "Atkin-Lehner fixed points on X_0(N), N an odd prime");
    c_fixedpoints->add_option("N", arg_n, "odd prime level")->required();
    add_format(c_fixedpoints);

    CLI::App* c_obstruct = app.add_subcommand(
        "obstruct", "run the degree obstruction arguments for (N, Delta)");
    c_obstruct->add_option("N", arg_n, "level")->required();
    c_obstruct->add_option("--delta", arg_delta, "comma-separated residues")
        ->required();
    add_format(c_obstruct);
    add_dirs(c_obstruct, false);

    CLI::App* c_decide =
        app.add_subcommand("decide", "Infinite/Finite verdict for one (N, Delta)");
    c_decide->add_option("N", arg_n, "level")->required();
    c_decide->add_option("--delta", arg_delta, "comma-separated residues")->required();
    add_format(c_decide);
    add_dirs(c_decide);

    CLI::App* c_survey = app.add_subcommand(
        "survey", "verdicts for every (N, Delta) up to a bound");
    c_survey->add_option("--max-n", arg_max_n, "largest level (default 81)");
    add_format(c_survey, true);
    add_dirs(c_survey);

    CLI::App* c_facts = app.add_subcommand("facts", "bundled dataset utilities");
    CLI::App* c_facts_validate =
        c_facts->add_subcommand("validate", "load every table and print the report");
    add_dirs(c_facts_validate, false);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        err << app.help();
        return 1;
    }

    try {
        if (*c_subgroups) {
            Level level(arg_n);
            const auto subs = proper_nontrivial_subgroups(level);
            if (format == "json") {
                json j = json::array();
                for (const auto& d : subs) {
                    json o;
                    o["order"] = d.order();
                    o["residues"] = d.residues();
                    o["is_trivial"] = d.is_trivial();
                    o["is_full"] = d.is_full();
                    j.push_back(o);
                }
                out << j.dump(2) << "\n";
            } else if (subs.empty()) {
                out << "no proper nontrivial Delta for N = " << arg_n << "\n";
            } else {
                for (const auto& d : subs) {
                    out << "order " << d.order() << " trivial "
                        << (d.is_trivial() ? 1 : 0) << " full "
                        << (d.is_full() ? 1 : 0) << ": ";
                    for (std::size_t i = 0; i < d.residues().size(); ++i)
                        out << (i ? "," : "") << d.residues()[i];
                    out << "\n";
                }
            }
            return 0;
        }

        if (*c_invariants) {
            Level level(arg_n);
            const DeltaSubgroup delta =
                DeltaSubgroup::from_residues(level, parse_long_list(arg_delta));
            const CurveInvariants inv = curve_invariants(build_coset_space(level, delta));
            const CoveringChain chain = covering_degrees(level, delta);
            if (format == "json") {
                json j;
                j["level"] = arg_n;
                j["delta"] = delta_json(delta);
                j["mu"] = inv.mu;
                j["nu2"] = inv.nu2;
                j["nu3"] = inv.nu3;
                j["nu_inf"] = inv.nu_inf;
                j["genus"] = inv.genus;
                j["deg_x1_to_delta"] = chain.deg_x1_to_delta;
                j["deg_delta_to_x0"] = chain.deg_delta_to_x0;
                j["deg_x0_to_plus"] = chain.deg_x0_to_plus;
                out << j.dump(2) << "\n";
            } else {
                out << "mu " << inv.mu << "\nnu2 " << inv.nu2 << "\nnu3 " << inv.nu3
                    << "\nnu_inf " << inv.nu_inf << "\ngenus " << inv.genus
                    << "\ndeg_x1_to_delta " << chain.deg_x1_to_delta
                    << "\ndeg_delta_to_x0 " << chain.deg_delta_to_x0
                    << "\ndeg_x0_to_plus " << chain.deg_x0_to_plus << "\n";
            }
            return 0;
        }

        if (*c_classify) {
            std::vector<std::vector<Rational>> rows;
            for (const std::string& rowstr : detail::split(arg_matrix, ';')) {
                std::vector<Rational> row;
                for (const std::string& tok : detail::split(rowstr, ','))
                    try {
                        row.push_back(Rational(tok));
                    } catch (const std::exception&) {
                        throw UsageError("BadMatrix", "bad entry '" + tok + "'");
                    }
                rows.push_back(row);
            }
            const int n = static_cast<int>(rows.size());
            Matrix m(n, n);
            for (int i = 0; i < n; ++i) {
                if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
                    throw UsageError("BadMatrix", "matrix must be square");
                for (int j = 0; j < n; ++j)
                    m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            }
            const QuadricClassification cls = classify_quadric(SymmetricForm(m));
            if (format == "json") {
                out << classification_json(cls).dump(2) << "\n";
            } else {
                out << "rank " << cls.rank << "\ndiagonal ";
                for (std::size_t i = 0; i < cls.diagonal.size(); ++i)
                    out << (i ? "," : "") << rational_str(cls.diagonal[i]);
                out << "\nsquarefree_disc " << cls.squarefree_disc.str() << "\nverdict "
                    << to_string(cls.verdict);
                if (cls.verdict == QuadricVerdict::RuledOverField)
                    out << " " << cls.field_name();
                out << "\n";
            }
            return 0;
        }

        if (*c_model) {
            std::ifstream in(arg_fixture);
            if (!in)
                throw DataError("DataFileMissing", "cannot open " + arg_fixture);
            const CuspFormBasis basis = parse_fixture(in);
            const PetriModel model = build_petri_model(basis);
            if (format == "json") {
                json j;
                j["level"] = basis.level.n();
                j["delta"] = delta_json(basis.delta);
                j["genus"] = model.genus;
                j["prec"] = basis.prec();
                j["rigor"] = to_string(model.rigor);
                j["relations"] = json::array();
                for (const Polynomial& p : model.relations)
                    j["relations"].push_back(polynomial_json(p));
                if (model.quadric)
                    j["classification"] = classification_json(classify_quadric(*model.quadric));
                out << j.dump(2) << "\n";
            } else {
                out << "genus " << model.genus << ", precision " << basis.prec()
                    << ", rigor " << to_string(model.rigor) << "\n";
                for (const Polynomial& p : model.relations)
                    out << "relation (degree " << p.degree << "): " << to_string(p)
                        << "\n";
                if (model.quadric) {
                    const QuadricClassification cls = classify_quadric(*model.quadric);
                    out << "quadric diagonal: ";
                    for (std::size_t i = 0; i < cls.diagonal.size(); ++i)
                        out << (i ? "," : "") << rational_str(cls.diagonal[i]);
                    out << "\nclassification: " << to_string(cls.verdict);
                    if (cls.verdict == QuadricVerdict::RuledOverField)
                        out << " over " << cls.field_name();
                    out << "\n";
                }
            }
            return 0;
        }

        if (*c_classnumber) {
            const auto forms = reduced_forms(arg_d);
            if (format == "json") {
                json j;
                j["discriminant"] = arg_d;
                j["class_number"] = forms.size();
                j["forms"] = json::array();
                for (const BQF& f : forms) j["forms"].push_back({f.a, f.b, f.c});
                out << j.dump(2) << "\n";
            } else {
                out << forms.size() << "\n";
            }
            return 0;
        }

        if (*c_fixedpoints) {
            const long fixed = atkin_lehner_fixed_points(arg_n);
            if (format == "json") {
                json j;
                j["level"] = arg_n;
                j["fixed_points"] = fixed;
                out << j.dump(2) << "\n";
            } else {
                out << fixed << "\n";
            }
            return 0;
        }

        if (*c_obstruct) {
            Level level(arg_n);
            const DeltaSubgroup delta =
                DeltaSubgroup::from_residues(level, parse_long_list(arg_delta));
            const FactsBundle bundle = load_bundle(paths);
            json results = json::array();
            const auto targets = positive_rank_curves(arg_n, bundle);
            if (targets.empty()) {
                json o;
                o["argument"] = "conductor_scan";
                o["status"] = "Obstructed";
                o["reason"] = "NoPositiveRankCurve";
                results.push_back(o);
            } else {
                const CoveringChain chain = covering_degrees(level, delta);
                const CurveInvariants inv_x1 = curve_invariants(
                    build_coset_space(level, DeltaSubgroup::closure(level, {})));
                const ObstructionResult sq = square_degree_obstruction(
                    chain.deg_x1_to_delta, chain.deg_delta_to_x0 * 2, 3,
                    targets.front().target, inv_x1.genus);
                json o;
                o["argument"] = "square_degree";
                o["status"] = sq.status == ObstructionStatus::Obstructed
                                  ? "Obstructed" : "Inconclusive";
                o["reason"] = sq.reason;
                o["numerics"] = sq.numerics;
                results.push_back(o);
                if (sq.status == ObstructionStatus::Inconclusive &&
                    sq.reason == "SquareTestPassed") {
                    const long fixed = atkin_lehner_fixed_points(arg_n);
                    const CurveInvariants inv_x0 = curve_invariants(build_coset_space(
                        level, DeltaSubgroup::closure(level, units(level))));
                    const RamificationSetup setup = ramification_setup_37(
                        inv_x0.genus, fixed, chain.deg_delta_to_x0,
                        sq.numerics.at("beta_degree"));
                    const ObstructionResult ram =
                        ramification_obstruction(setup.deg_f, setup.required_index);
                    json r;
                    r["argument"] = "ramification";
                    r["status"] = ram.status == ObstructionStatus::Obstructed
                                      ? "Obstructed" : "Inconclusive";
                    r["reason"] = ram.reason;
                    r["numerics"] = ram.numerics;
                    results.push_back(r);
                }
            }
            if (format == "json") {
                json j;
                j["level"] = arg_n;
                j["delta"] = delta_json(delta);
                j["results"] = results;
                out << j.dump(2) << "\n";
            } else {
                for (const auto& r : results) {
                    out << r["argument"].get<std::string>() << ": "
                        << r["status"].get<std::string>() << " ("
                        << r["reason"].get<std::string>() << ")";
                    if (r.contains("numerics"))
                        for (auto it = r["numerics"].begin(); it != r["numerics"].end(); ++it)
                            out << " " << it.key() << "=" << it.value().get<long>();
                    out << "\n";
                }
            }
            return 0;
        }

        if (*c_decide) {
            Level level(arg_n);
            const DeltaSubgroup delta =
                DeltaSubgroup::from_residues(level, parse_long_list(arg_delta));
            const FactsBundle bundle = load_bundle(paths);
            const FixtureSet fixtures = load_fixtures(paths);
            const Decision d = decide(level, delta, bundle, &fixtures);
            if (format == "json")
                out << decision_json(d).dump(2) << "\n";
            else
                print_decision_text(d, out);
            return 0;
        }

        if (*c_survey) {
            const FactsBundle bundle = load_bundle(paths);
            const FixtureSet fixtures = load_fixtures(paths);
            const auto decisions = survey(arg_max_n, bundle, &fixtures);
            if (format == "json") {
                json j = json::array();
                for (const Decision& d : decisions) j.push_back(decision_json(d));
                out << j.dump(2) << "\n";
            } else if (format == "md") {
                out << survey_markdown(decisions);
            } else {
                for (const Decision& d : decisions) {
                    out << d.level << " " << pm_notation(d.level, d.delta) << " genus "
                        << d.genus << ": " << to_string(d.verdict) << " ("
                        << to_string(d.reason);
                    if (!d.reason_detail.empty()) out << ": " << d.reason_detail;
                    out << ")\n";
                }
            }
            return 0;
        }

        if (*c_facts_validate) {
            const FactsBundle bundle = load_bundle(paths);
            out << "set S: " << bundle.set_s.size() << " levels\n";
            out << "gonality facts: " << bundle.gonality.size() << " rows"
                << " (genus recomputed for each)\n";
            out << "quadric verdicts: " << bundle.table5.size() << " rows\n";
            out << "jacobian ranks: " << bundle.jacobian_ranks.size() << " rows\n";
            out << "elliptic targets: " << bundle.curves.size() << " rows\n";
            out << "coverage: every proper nontrivial Delta for N in S has a "
                   "gonality fact\n";
            out << "ok\n";
            return 0;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const IntegrityError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

} // namespace cli
} // namespace xdelta

#endif // XDELTA_CLI_HPP
