#ifndef XDELTA_PETRI_HPP
#define XDELTA_PETRI_HPP

/*
 * Canonical (Petri) models from a cusp-form basis.
 *
 * Genus 4: the canonical curve in P^3 is cut out by one quadric and one
 * cubic.  Both are found as kernels of the matrix whose columns are the
 * degree-d monomials in the basis forms, evaluated as q-series (one row per
 * q-power).  The cubic is taken modulo the 4-dimensional space of linear
 * multiples of the quadric.  Genus 3: one plane quartic, same construction.
 *
 * Monomials are ordered graded-lexicographically in (x, y, z, w) =
 * (f_1, .., f_4) so kernel vectors and printed models are reproducible.
 * A relation checked to precision >= the Sturm bound of its weight is exact
 * ("verified"); below that it is "heuristic".
 */

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xdelta/errors.hpp"
#include "xdelta/exactalg.hpp"
#include "xdelta/qseries.hpp"

namespace xdelta {

inline std::vector<std::vector<int>> grlex_monomials(int nvars, int degree) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(nvars), 0);
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == nvars - 1) {
            cur[static_cast<std::size_t>(pos)] = remaining;
            out.push_back(cur);
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            cur[static_cast<std::size_t>(pos)] = e;
            self(self, pos + 1, remaining - e);
        }
    };
    rec(rec, 0, degree);
    return out;
}

struct Polynomial {
    int nvars = 0;
    int degree = 0;
    std::vector<Rational> coeffs;  // aligned with grlex_monomials(nvars, degree)

    bool is_zero() const {
        for (const Rational& c : coeffs)
            if (c != 0) return false;
        return true;
    }
};

inline QSeries evaluate(const Polynomial& p, const CuspFormBasis& basis) {
    const auto mons = grlex_monomials(p.nvars, p.degree);
    QSeries out(basis.prec());
    for (std::size_t k = 0; k < mons.size(); ++k) {
        if (p.coeffs[k] == 0) continue;
        out = series_add(out, series_scale(p.coeffs[k], monomial_eval(basis, mons[k])));
    }
    return out;
}

inline std::string variable_name(int i) {
    static const char* names[] = {"x", "y", "z", "w"};
    return i < 4 ? names[i] : "v" + std::to_string(i);
}

inline std::string to_string(const Polynomial& p) {
    const auto mons = grlex_monomials(p.nvars, p.degree);
    std::string out;
    for (std::size_t k = 0; k < mons.size(); ++k) {
        const Rational& c = p.coeffs[k];
        if (c == 0) continue;
        const bool neg = c < 0;
        const Rational a = neg ? Rational(-c) : c;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string term;
        for (int v = 0; v < p.nvars; ++v) {
            const int e = mons[k][static_cast<std::size_t>(v)];
            if (e == 0) continue;
            if (!term.empty()) term += "*";
            term += variable_name(v);
            if (e > 1) term += "^" + std::to_string(e);
        }
        if (term.empty()) term = "1";
        if (a != 1) {
            out += numerator(a).str();
            if (denominator(a) != 1) out += "/" + denominator(a).str();
            out += "*";
        }
        out += term;
    }
    return out.empty() ? "0" : out;
}

namespace detail {

// Rows are q-coefficients a_0..a_prec, columns the degree-d monomials.
inline Matrix monomial_coefficient_matrix(const CuspFormBasis& basis, int degree) {
    const auto mons = grlex_monomials(static_cast<int>(basis.forms.size()), degree);
    Matrix m(basis.prec() + 1, static_cast<int>(mons.size()));
    for (std::size_t j = 0; j < mons.size(); ++j) {
        const QSeries s = monomial_eval(basis, mons[j]);
        for (int i = 0; i <= basis.prec(); ++i)
            m.at(i, static_cast<int>(j)) = s.at(i);
    }
    return m;
}

inline Polynomial vector_to_poly(int nvars, int degree, std::vector<Rational> v) {
    return Polynomial{nvars, degree, std::move(v)};
}

} // namespace detail

enum class Rigor { Verified, Heuristic };

inline std::string to_string(Rigor r) {
    return r == Rigor::Verified ? "verified" : "heuristic";
}

// Sturm bound governing a degree-d relation among weight-2 forms: the
// relation is a weight-2d form on the same group.
inline int relation_sturm_bound(const CuspFormBasis& basis, int degree) {
    return sturm_bound(2 * degree, basis.mu);
}

inline std::vector<Polynomial> quadric_relations(const CuspFormBasis& basis) {
    if (basis.declared_genus != 4)
        throw UsageError("BadGenus", "quadric relations need a genus-4 basis");
    const Matrix m = detail::monomial_coefficient_matrix(basis, 2);
    const auto kernel = kernel_basis(m);
    const bool verified = basis.prec() >= relation_sturm_bound(basis, 2);
    if (verified && kernel.size() != 1)
        throw IntegrityError("HyperellipticOrLowPrecision",
                             "degree-2 kernel has dimension " +
                             std::to_string(kernel.size()) +
                             " at verified precision");
    std::vector<Polynomial> out;
    for (auto& v : kernel) out.push_back(detail::vector_to_poly(4, 2, v));
    return out;
}

// Coefficient vector (degree-3 grlex) of x_i * quadric.
inline std::vector<Rational> linear_times_quadric(int var, const Polynomial& quadric) {
    const auto mons2 = grlex_monomials(4, 2);
    const auto mons3 = grlex_monomials(4, 3);
    std::map<std::vector<int>, std::size_t> index3;
    for (std::size_t k = 0; k < mons3.size(); ++k) index3[mons3[k]] = k;
    std::vector<Rational> out(mons3.size(), Rational(0));
    for (std::size_t k = 0; k < mons2.size(); ++k) {
        if (quadric.coeffs[k] == 0) continue;
        std::vector<int> e = mons2[k];
        e[static_cast<std::size_t>(var)] += 1;
        out[index3.at(e)] += quadric.coeffs[k];
    }
    return out;
}

namespace detail {

// Reduce v modulo the row space of the rref'd matrix `red` with `pivots`.
inline void reduce_mod_rowspace(std::vector<Rational>& v, const Matrix& red,
                                const std::vector<int>& pivots) {
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        const Rational f = v[static_cast<std::size_t>(pivots[r])];
        if (f == 0) continue;
        for (int j = 0; j < red.cols(); ++j)
            v[static_cast<std::size_t>(j)] -= f * red.at(static_cast<int>(r), j);
    }
}

} // namespace detail

// Canonical representative of a cubic modulo {l * quadric : l linear}:
// reduce against the rref basis of the 4 products, then normalize.
inline Polynomial canonicalize_cubic(const Polynomial& cubic, const Polynomial& quadric) {
    Matrix span(4, static_cast<int>(grlex_monomials(4, 3).size()));
    for (int i = 0; i < 4; ++i) {
        const auto row = linear_times_quadric(i, quadric);
        for (std::size_t j = 0; j < row.size(); ++j)
            span.at(i, static_cast<int>(j)) = row[j];
    }
    const auto pivots = rref(span);
    std::vector<Rational> v = cubic.coeffs;
    detail::reduce_mod_rowspace(v, span, pivots);
    normalize_primitive(v);
    return Polynomial{4, 3, std::move(v)};
}

inline Polynomial cubic_relations(const CuspFormBasis& basis, const Polynomial& quadric) {
    if (basis.declared_genus != 4)
        throw UsageError("BadGenus", "cubic relations need a genus-4 basis");
    if (quadric.is_zero())
        throw IntegrityError("UnexpectedKernelDimension",
                             "quadric is the zero polynomial");
    const Matrix m = detail::monomial_coefficient_matrix(basis, 3);
    const auto kernel = kernel_basis(m);

    const auto mons3 = grlex_monomials(4, 3);
    Matrix span(4, static_cast<int>(mons3.size()));
    for (int i = 0; i < 4; ++i) {
        const auto row = linear_times_quadric(i, quadric);
        for (std::size_t j = 0; j < row.size(); ++j)
            span.at(i, static_cast<int>(j)) = row[j];
    }
    const auto pivots = rref(span);

    Matrix residual(static_cast<int>(kernel.size()), static_cast<int>(mons3.size()));
    for (std::size_t r = 0; r < kernel.size(); ++r) {
        std::vector<Rational> v = kernel[r];
        detail::reduce_mod_rowspace(v, span, pivots);
        for (std::size_t j = 0; j < v.size(); ++j)
            residual.at(static_cast<int>(r), static_cast<int>(j)) = v[j];
    }
    const auto res_pivots = rref(residual);
    if (res_pivots.size() != 1)
        throw IntegrityError("UnexpectedKernelDimension",
                             "cubic relations modulo the quadric span have dimension " +
                             std::to_string(res_pivots.size()));
    std::vector<Rational> v(mons3.size());
    for (std::size_t j = 0; j < mons3.size(); ++j)
        v[j] = residual.at(0, static_cast<int>(j));
    normalize_primitive(v);
    return Polynomial{4, 3, std::move(v)};
}

inline Polynomial quartic_relation(const CuspFormBasis& basis) {
    if (basis.declared_genus != 3)
        throw UsageError("BadGenus", "quartic relation needs a genus-3 basis");
    const Matrix m = detail::monomial_coefficient_matrix(basis, 4);
    const auto kernel = kernel_basis(m);
    if (kernel.size() != 1)
        throw IntegrityError("UnexpectedKernelDimension",
                             "degree-4 kernel has dimension " +
                             std::to_string(kernel.size()));
    return detail::vector_to_poly(3, 4, kernel.front());
}

inline SymmetricForm quadric_to_form(const Polynomial& quadric) {
    const auto mons = grlex_monomials(4, 2);
    Matrix m(4, 4);
    for (std::size_t k = 0; k < mons.size(); ++k) {
        const Rational& c = quadric.coeffs[k];
        if (c == 0) continue;
        int i = -1, j = -1;
        for (int v = 0; v < 4; ++v) {
            for (int e = 0; e < mons[k][static_cast<std::size_t>(v)]; ++e) {
                if (i < 0) i = v;
                else j = v;
            }
        }
        if (j < 0) j = i;
        if (i == j) {
            m.at(i, i) += c;
        } else {
            m.at(i, j) += c / 2;
            m.at(j, i) += c / 2;
        }
    }
    return SymmetricForm(std::move(m));
}

struct PetriModel {
    int genus = 0;
    std::vector<Polynomial> relations;  // genus 4: [quadric, cubic]; genus 3: [quartic]
    std::optional<SymmetricForm> quadric;
    Rigor rigor = Rigor::Heuristic;
};

// At heuristic precision the cubic may not be pinned down; the model then
// carries the quadric alone, which is all the trigonality verdict needs.
inline PetriModel build_petri_model(const CuspFormBasis& basis) {
    PetriModel model;
    model.genus = basis.declared_genus;
    if (basis.declared_genus == 4) {
        model.rigor = basis.prec() >= relation_sturm_bound(basis, 3)
                          ? Rigor::Verified : Rigor::Heuristic;
        auto quadrics = quadric_relations(basis);
        if (quadrics.size() != 1)
            throw IntegrityError("HyperellipticOrLowPrecision",
                                 "degree-2 kernel has dimension " +
                                 std::to_string(quadrics.size()));
        model.relations.push_back(quadrics.front());
        model.quadric = quadric_to_form(quadrics.front());
        try {
            model.relations.push_back(cubic_relations(basis, quadrics.front()));
        } catch (const IntegrityError&) {
            if (model.rigor == Rigor::Verified) throw;
        }
    } else if (basis.declared_genus == 3) {
        model.rigor = basis.prec() >= relation_sturm_bound(basis, 4)
                          ? Rigor::Verified : Rigor::Heuristic;
        model.relations.push_back(quartic_relation(basis));
    } else {
        throw UsageError("BadGenus", "Petri models are built for genus 3 or 4");
    }
    // every relation must annihilate the basis to the available precision
    for (const Polynomial& rel : model.relations)
        if (!evaluate(rel, basis).is_zero())
            throw IntegrityError("RelationDoesNotVanish",
                                 "computed relation fails to annihilate the basis");
    return model;
}

struct Trigonality {
    bool trigonal_over_q = false;
    std::string reason;  // PlaneQuarticProjection | RuledOverQ | ConeOverQ | RuledOverField
    std::optional<QuadricClassification> classification;
};

inline Trigonality is_trigonal_over_q(const PetriModel& model) {
    Trigonality out;
    if (model.genus == 3) {
        // degree-3 projection from the rational cusp
        out.trigonal_over_q = true;
        out.reason = "PlaneQuarticProjection";
        return out;
    }
    if (model.genus != 4 || !model.quadric)
        throw UsageError("BadGenus", "trigonality verdict needs genus 3 or 4");
    const QuadricClassification cls = classify_quadric(*model.quadric);
    out.classification = cls;
    switch (cls.verdict) {
        case QuadricVerdict::RuledOverQ:
            out.trigonal_over_q = true;
            out.reason = "RuledOverQ";
            break;
        case QuadricVerdict::ConeOverQ:
            out.trigonal_over_q = true;
            out.reason = "ConeOverQ";
            break;
        case QuadricVerdict::RuledOverField:
            out.trigonal_over_q = false;
            out.reason = "RuledOverField(" + cls.field_disc.str() + ")";
            break;
        case QuadricVerdict::Degenerate:
            throw IntegrityError("DegenerateQuadric",
                                 "rank <= 2 quadric is not trigonality evidence");
    }
    return out;
}

} // namespace xdelta

#endif // XDELTA_PETRI_HPP
