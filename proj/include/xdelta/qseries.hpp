#ifndef XDELTA_QSERIES_HPP
#define XDELTA_QSERIES_HPP

/*
 * Truncated q-expansions over exact rationals, and the line-oriented text
 * format for weight-2 cusp form fixtures:
 *
 *     qexp-fixture v1
 *     level 26
 *     delta 1 5 21 25        <- the full subgroup, -1 closure not applied
 *     weight 2
 *     prec 10
 *     form 0 1 0 0 0 -2 -1 -3 0 2 1
 *     ...
 *
 * '#' starts a comment.  Coefficients are integers or p/q.  A parsed basis
 * is validated: one form per unit of genus (recomputed from the coset
 * space), a_0 = 0 for every form, all precisions equal.
 */

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "xdelta/cosets.hpp"
#include "xdelta/errors.hpp"
#include "xdelta/exactalg.hpp"
#include "xdelta/zmod.hpp"

namespace xdelta {

struct QSeries {
    int prec = 0;                  // coefficients known through q^prec
    std::vector<Rational> coeffs;  // a_0 .. a_prec

    QSeries() : coeffs(1, Rational(0)) {}
    explicit QSeries(int precision)
        : prec(precision), coeffs(static_cast<std::size_t>(precision) + 1, Rational(0)) {
        if (precision < 0) throw UsageError("BadPrecision", "prec must be >= 0");
    }

    static QSeries one(int precision) {
        QSeries s(precision);
        s.coeffs[0] = 1;
        return s;
    }

    const Rational& at(int k) const { return coeffs[static_cast<std::size_t>(k)]; }
    Rational& at(int k) { return coeffs[static_cast<std::size_t>(k)]; }

    bool is_zero() const {
        for (const Rational& c : coeffs)
            if (c != 0) return false;
        return true;
    }

    friend bool operator==(const QSeries& a, const QSeries& b) {
        return a.prec == b.prec && a.coeffs == b.coeffs;
    }
};

// Cauchy product truncated to min(a.prec, b.prec).
inline QSeries series_mul(const QSeries& a, const QSeries& b) {
    QSeries out(std::min(a.prec, b.prec));
    for (int i = 0; i <= out.prec; ++i) {
        if (a.at(i) == 0) continue;
        for (int j = 0; i + j <= out.prec && j <= b.prec; ++j)
            if (b.at(j) != 0) out.at(i + j) += a.at(i) * b.at(j);
    }
    return out;
}

inline QSeries series_add(const QSeries& a, const QSeries& b) {
    QSeries out(std::min(a.prec, b.prec));
    for (int i = 0; i <= out.prec; ++i) out.at(i) = a.at(i) + b.at(i);
    return out;
}

inline QSeries series_scale(const Rational& c, const QSeries& a) {
    QSeries out(a.prec);
    for (int i = 0; i <= a.prec; ++i) out.at(i) = c * a.at(i);
    return out;
}

// A modular form of weight k on a subgroup of index mu vanishing to order
// floor(k mu / 12) + 1 vanishes identically.
inline int sturm_bound(int weight, long mu) {
    if (weight < 2 || weight % 2 != 0)
        throw UsageError("BadWeight", "weight must be even and >= 2");
    if (mu < 1) throw UsageError("BadIndex", "index must be >= 1");
    return static_cast<int>((static_cast<long>(weight) * mu) / 12 + 1);
}

struct CuspFormBasis {
    Level level;
    DeltaSubgroup delta;
    int weight = 2;
    std::vector<QSeries> forms;
    int declared_genus = 0;
    long mu = 0;  // index of Gamma_Delta(N), cached from the genus check

    int prec() const { return forms.empty() ? 0 : forms.front().prec; }
};

// Product of forms[i]^exponents[i], truncated to the basis precision.
inline QSeries monomial_eval(const CuspFormBasis& basis,
                             const std::vector<int>& exponents) {
    if (exponents.size() != basis.forms.size())
        throw UsageError("BadExponents",
                         "exponent count must match number of forms");
    QSeries out = QSeries::one(basis.prec());
    for (std::size_t i = 0; i < exponents.size(); ++i)
        for (int e = 0; e < exponents[i]; ++e)
            out = series_mul(out, basis.forms[i]);
    return out;
}

namespace detail {

inline Rational parse_rational(const std::string& tok, int lineno) {
    try {
        const auto slash = tok.find('/');
        if (slash == std::string::npos) return Rational(Integer(tok));
        Integer num(tok.substr(0, slash));
        Integer den(tok.substr(slash + 1));
        if (den == 0) throw std::runtime_error("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw DataError("SyntaxError", "line " + std::to_string(lineno) +
                        ": bad rational '" + tok + "'");
    }
}

} // namespace detail

inline CuspFormBasis parse_fixture(std::istream& in) {
    std::string line;
    int lineno = 0;
    long level_n = -1;
    std::vector<long> delta_residues;
    int weight = -1, prec = -1;
    std::vector<std::vector<Rational>> form_rows;
    bool saw_magic = false;

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key)) continue;
        if (!saw_magic) {
            std::string ver;
            if (key != "qexp-fixture" || !(ss >> ver) || ver != "v1")
                throw DataError("BadHeader", "line " + std::to_string(lineno) +
                                ": expected 'qexp-fixture v1'");
            saw_magic = true;
            continue;
        }
        if (key == "level") {
            if (!(ss >> level_n) || level_n < 1)
                throw DataError("BadHeader", "line " + std::to_string(lineno) +
                                ": bad level");
        } else if (key == "delta") {
            long r;
            while (ss >> r) delta_residues.push_back(r);
            if (delta_residues.empty())
                throw DataError("BadHeader", "line " + std::to_string(lineno) +
                                ": empty delta");
        } else if (key == "weight") {
            if (!(ss >> weight) || weight != 2)
                throw DataError("BadHeader", "line " + std::to_string(lineno) +
                                ": only weight 2 is supported");
        } else if (key == "prec") {
            if (!(ss >> prec) || prec < 1)
                throw DataError("BadHeader", "line " + std::to_string(lineno) +
                                ": bad prec");
        } else if (key == "form") {
            std::vector<Rational> row;
            std::string tok;
            while (ss >> tok) row.push_back(detail::parse_rational(tok, lineno));
            form_rows.push_back(std::move(row));
        } else {
            throw DataError("SyntaxError", "line " + std::to_string(lineno) +
                            ": unknown directive '" + key + "'");
        }
    }
    if (!saw_magic || level_n < 1 || weight != 2 || prec < 1 ||
        delta_residues.empty())
        throw DataError("BadHeader", "incomplete fixture header");
    if (form_rows.empty())
        throw DataError("BadHeader", "fixture contains no forms");

    Level level(level_n);
    DeltaSubgroup delta = [&] {
        try {
            return DeltaSubgroup::from_residues(level, delta_residues);
        } catch (const Error& e) {
            throw DataError("BadHeader", std::string("delta line: ") + e.what());
        }
    }();

    CuspFormBasis basis{level, delta, 2, {}, 0, 0};
    for (const auto& row : form_rows) {
        if (static_cast<int>(row.size()) != prec + 1)
            throw DataError("PrecisionMismatch",
                            "form has " + std::to_string(row.size()) +
                            " coefficients, expected " + std::to_string(prec + 1));
        if (row[0] != 0)
            throw DataError("NotCuspidal", "form has nonzero constant term");
        QSeries s(prec);
        s.coeffs = row;
        basis.forms.push_back(std::move(s));
    }
    basis.declared_genus = static_cast<int>(basis.forms.size());

    const CosetSpace space = build_coset_space(level, delta);
    const CurveInvariants inv = curve_invariants(space);
    basis.mu = inv.mu;
    if (inv.genus != basis.declared_genus)
        throw DataError("GenusMismatch",
                        "fixture declares " + std::to_string(basis.declared_genus) +
                        " forms but the curve has genus " + std::to_string(inv.genus));
    return basis;
}

inline std::string render_fixture(const CuspFormBasis& basis) {
    std::ostringstream out;
    out << "qexp-fixture v1\n";
    out << "level " << basis.level.n() << "\n";
    out << "delta";
    for (long r : basis.delta.residues()) out << ' ' << r;
    out << "\nweight " << basis.weight << "\nprec " << basis.prec() << "\n";
    for (const QSeries& f : basis.forms) {
        out << "form";
        for (const Rational& c : f.coeffs) {
            out << ' ' << numerator(c).str();
            if (denominator(c) != 1) out << '/' << denominator(c).str();
        }
        out << "\n";
    }
    return out.str();
}

} // namespace xdelta

#endif // XDELTA_QSERIES_HPP
