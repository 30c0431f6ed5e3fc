#ifndef XDELTA_EXACTALG_HPP
#define XDELTA_EXACTALG_HPP

/*
 * Exact rational linear algebra: kernels of coefficient matrices, congruence
 * diagonalization of symmetric forms, and square-class arithmetic.  No
 * floating point anywhere -- the verdicts downstream are square-class
 * statements and would be meaningless under rounding.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "xdelta/errors.hpp"

namespace xdelta {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class Matrix {
public:
    Matrix(int rows, int cols)
        : rows_(rows), cols_(cols),
          entries_(static_cast<std::size_t>(rows) * cols, Rational(0)) {
        if (rows < 0 || cols < 0)
            throw UsageError("BadDimension", "negative matrix dimension");
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int i, int j) {
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }
    const Rational& at(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Matrix operator*(const Matrix& other) const {
        if (cols_ != other.rows_)
            throw UsageError("BadDimension", "matrix product shape mismatch");
        Matrix out(rows_, other.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Rational& a = at(i, k);
                if (a == 0) continue;
                for (int j = 0; j < other.cols_; ++j)
                    if (other.at(k, j) != 0) out.at(i, j) += a * other.at(k, j);
            }
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    int rows_, cols_;
    std::vector<Rational> entries_;
};

// In-place reduced row echelon form with leftmost-pivot choice.
// Returns the pivot columns.
inline std::vector<int> rref(Matrix& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
        const Rational pv = m.at(r, c);
        for (int j = c; j < m.cols(); ++j) m.at(r, j) /= pv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            const Rational f = m.at(i, c);
            for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Scale a rational vector to integer entries with content 1 and first
// nonzero entry positive.  Makes printed kernels reproducible.
inline void normalize_primitive(std::vector<Rational>& v) {
    Integer lcm_den = 1;
    for (const Rational& x : v)
        if (x != 0) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(x));
    Integer gcd_num = 0;
    for (Rational& x : v) {
        x *= lcm_den;
        if (x != 0) gcd_num = boost::multiprecision::gcd(gcd_num, numerator(x));
    }
    if (gcd_num == 0) return;
    for (Rational& x : v) x /= gcd_num;
    for (const Rational& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (Rational& y : v) y = -y;
        break;
    }
}

// Basis of the right null space {v : m v = 0}, deterministic: reduced row
// echelon with free columns visited in ascending order, each vector
// normalized to primitive integer form.
inline std::vector<std::vector<Rational>> kernel_basis(const Matrix& m) {
    Matrix red = m;
    const std::vector<int> pivots = rref(red);
    std::vector<char> is_pivot(static_cast<std::size_t>(m.cols()), 0);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = 1;
    std::vector<std::vector<Rational>> basis;
    for (int fc = 0; fc < m.cols(); ++fc) {
        if (is_pivot[static_cast<std::size_t>(fc)]) continue;
        std::vector<Rational> v(static_cast<std::size_t>(m.cols()), Rational(0));
        v[static_cast<std::size_t>(fc)] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<std::size_t>(pivots[r])] = -red.at(static_cast<int>(r), fc);
        normalize_primitive(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline int rank(const Matrix& m) {
    Matrix red = m;
    return static_cast<int>(rref(red).size());
}

struct SymmetricForm {
    int n = 0;
    Matrix matrix;

    explicit SymmetricForm(Matrix m) : n(m.rows()), matrix(std::move(m)) {
        if (matrix.rows() != matrix.cols())
            throw UsageError("NotSymmetric", "form matrix must be square");
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (matrix.at(i, j) != matrix.at(j, i))
                    throw UsageError("NotSymmetric", "form matrix must be symmetric");
    }

    static SymmetricForm diagonal(const std::vector<Rational>& d) {
        Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (std::size_t i = 0; i < d.size(); ++i)
            m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
        return SymmetricForm(std::move(m));
    }
};

struct Diagonalization {
    std::vector<Rational> diagonal;
    Matrix transform;  // transform^T * q * transform is the diagonal matrix
};

/*
 * Symmetric Gaussian elimination (Lagrange).  When the pivot diagonal entry
 * is zero: first try swapping in a later variable with nonzero diagonal;
 * failing that, add a row/column with a nonzero off-diagonal entry to the
 * pivot, which makes the pivot 2*a_ij != 0 because the whole remaining
 * diagonal vanishes.
 */
inline Diagonalization congruence_diagonalize(const SymmetricForm& q) {
    const int n = q.n;
    Matrix a = q.matrix;
    Matrix t = Matrix::identity(n);

    auto add_col = [&](int dst, int src) {  // x_dst += x_src substitution
        for (int r = 0; r < n; ++r) a.at(r, dst) += a.at(r, src);
        for (int c = 0; c < n; ++c) a.at(dst, c) += a.at(src, c);
        for (int r = 0; r < n; ++r) t.at(r, dst) += t.at(r, src);
    };
    auto swap_cols = [&](int i, int j) {
        for (int r = 0; r < n; ++r) std::swap(a.at(r, i), a.at(r, j));
        for (int c = 0; c < n; ++c) std::swap(a.at(i, c), a.at(j, c));
        for (int r = 0; r < n; ++r) std::swap(t.at(r, i), t.at(r, j));
    };

    for (int k = 0; k < n; ++k) {
        if (a.at(k, k) == 0) {
            int sw = -1;
            for (int j = k + 1; j < n; ++j)
                if (a.at(j, j) != 0) { sw = j; break; }
            if (sw >= 0) {
                swap_cols(k, sw);
            } else {
                int off = -1;
                for (int j = k + 1; j < n; ++j)
                    if (a.at(k, j) != 0) { off = j; break; }
                if (off < 0) continue;  // row/col already zero
                add_col(k, off);
            }
        }
        const Rational pivot = a.at(k, k);
        if (pivot == 0) continue;
        for (int j = k + 1; j < n; ++j) {
            if (a.at(k, j) == 0) continue;
            const Rational f = a.at(k, j) / pivot;
            for (int r = 0; r < n; ++r) a.at(r, j) -= f * a.at(r, k);
            for (int c = 0; c < n; ++c) a.at(j, c) -= f * a.at(k, c);
            for (int r = 0; r < n; ++r) t.at(r, j) -= f * t.at(r, k);
        }
    }

    Diagonalization out{std::vector<Rational>(), std::move(t)};
    out.diagonal.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.diagonal.push_back(a.at(i, i));

    // certificate: transform^T q transform == diag, exactly
    Matrix check = out.transform.transposed() * q.matrix * out.transform;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Rational want = (i == j) ? out.diagonal[static_cast<std::size_t>(i)]
                                           : Rational(0);
            if (check.at(i, j) != want)
                throw IntegrityError("BadCongruence",
                                     "diagonalization certificate failed");
        }
    return out;
}

// The unique squarefree integer s with r = s * (nonzero rational square).
// Works on |numerator * denominator|; trial division runs on machine words
// once the cofactor fits, with a cpp_int fallback for oversized inputs.
inline Integer squarefree_part(const Rational& r) {
    if (r == 0) throw UsageError("ZeroInput", "squarefree part of zero");
    Integer m = boost::multiprecision::abs(numerator(r) * denominator(r));
    Integer s = 1;
    const Integer word_limit = Integer(1) << 62;
    for (Integer d = 2; m >= word_limit && d * d <= m; ++d) {
        if (m % d != 0) continue;
        int e = 0;
        while (m % d == 0) { m /= d; ++e; }
        if (e % 2 == 1) s *= d;
    }
    if (m < word_limit) {
        auto mm = m.convert_to<unsigned long long>();
        for (unsigned long long d = 2; d * d <= mm; ++d) {
            if (mm % d != 0) continue;
            int e = 0;
            while (mm % d == 0) { mm /= d; ++e; }
            if (e % 2 == 1) s *= d;
        }
        s *= mm;  // leftover cofactor is prime (or 1)
    } else {
        s *= m;
    }
    return r < 0 ? Integer(-s) : s;
}

enum class QuadricVerdict { RuledOverQ, RuledOverField, ConeOverQ, Degenerate };

inline std::string to_string(QuadricVerdict v) {
    switch (v) {
        case QuadricVerdict::RuledOverQ: return "RuledOverQ";
        case QuadricVerdict::RuledOverField: return "RuledOverField";
        case QuadricVerdict::ConeOverQ: return "ConeOverQ";
        case QuadricVerdict::Degenerate: return "Degenerate";
    }
    return "?";
}

struct QuadricClassification {
    int rank = 0;
    std::vector<Rational> diagonal;
    Integer squarefree_disc = 0;   // of the product of nonzero diagonal entries
    QuadricVerdict verdict = QuadricVerdict::Degenerate;
    Integer field_disc = 0;        // d of Q(sqrt(d)) when RuledOverField

    std::string field_name() const {
        return "Q(sqrt(" + field_disc.str() + "))";
    }
};

inline QuadricClassification classify_quadric(const SymmetricForm& q) {
    Diagonalization diag = congruence_diagonalize(q);
    QuadricClassification out;
    out.diagonal = diag.diagonal;
    Rational prod = 1;
    for (const Rational& d : out.diagonal)
        if (d != 0) { ++out.rank; prod *= d; }
    if (out.rank > 0) out.squarefree_disc = squarefree_part(prod);
    if (out.rank == 4) {
        if (out.squarefree_disc == 1) {
            out.verdict = QuadricVerdict::RuledOverQ;
        } else {
            out.verdict = QuadricVerdict::RuledOverField;
            out.field_disc = out.squarefree_disc;
        }
    } else if (out.rank == 3) {
        out.verdict = QuadricVerdict::ConeOverQ;
    } else {
        out.verdict = QuadricVerdict::Degenerate;
    }
    return out;
}

} // namespace xdelta

#endif // XDELTA_EXACTALG_HPP
