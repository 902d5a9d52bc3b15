#pragma once

// Exact dense linear algebra over Rational and Gauss.
//
// Elimination is fraction-free (Bareiss) with the first nonzero entry of a
// column taken as pivot, so every echelon form, kernel basis and coset
// representative is reproducible bit for bit. Subspaces are stored by their
// reduced row echelon basis, which makes equality a plain matrix compare.

#include "foliage/errors.hpp"
#include "foliage/scalar.hpp"

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace foliage {

template <class F>
using Vec = std::vector<F>;

template <class F>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = F(1);
        return m;
    }

    static Matrix from_columns(std::size_t rows, const std::vector<Vec<F>>& columns)
    {
        Matrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j)
            m.set_column(j, columns[j]);
        return m;
    }

    static Matrix from_rows(std::size_t cols, const std::vector<Vec<F>>& rows)
    {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i)
            m.set_row(i, rows[i]);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec<F> column(std::size_t j) const
    {
        Vec<F> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            v[i] = (*this)(i, j);
        return v;
    }

    Vec<F> row(std::size_t i) const
    {
        return Vec<F>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                      data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    void set_column(std::size_t j, const Vec<F>& v)
    {
        if (v.size() != rows_)
            throw InvalidInput("column length mismatch");
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) = v[i];
    }

    void set_row(std::size_t i, const Vec<F>& v)
    {
        if (v.size() != cols_)
            throw InvalidInput("row length mismatch");
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = v[j];
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    /// Conjugate transpose; equals transpose over Q.
    Matrix adjoint() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = conj((*this)(i, j));
        return t;
    }

    Matrix conjugate() const
    {
        Matrix c(*this);
        for (auto& x : c.data_)
            x = conj(x);
        return c;
    }

    bool is_zero() const
    {
        for (const auto& x : data_)
            if (!foliage::is_zero(x))
                return false;
        return true;
    }

    bool is_square() const { return rows_ == cols_; }

    Matrix& operator+=(const Matrix& o)
    {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] += o.data_[k];
        return *this;
    }

    Matrix& operator-=(const Matrix& o)
    {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] -= o.data_[k];
        return *this;
    }

    Matrix& operator*=(const F& s)
    {
        for (auto& x : data_)
            x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const F& s) { return a *= s; }
    friend Matrix operator*(const F& s, Matrix a) { return a *= s; }
    friend Matrix operator-(Matrix a)
    {
        for (auto& x : a.data_)
            x = -x;
        return a;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw InvalidInput("matrix product shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const F& aik = a(i, k);
                if (foliage::is_zero(aik))
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!foliage::is_zero(b(k, j)))
                        c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Vec<F> operator*(const Matrix& a, const Vec<F>& v)
    {
        if (a.cols_ != v.size())
            throw InvalidInput("matrix-vector shape mismatch");
        Vec<F> out(a.rows_, F(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                if (!foliage::is_zero(a(i, j)) && !foliage::is_zero(v[j]))
                    out[i] += a(i, j) * v[j];
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    void check_same_shape(const Matrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw InvalidInput("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<F> data_;
};

template <class F>
bool is_zero_vector(const Vec<F>& v)
{
    for (const auto& x : v)
        if (!is_zero(x))
            return false;
    return true;
}

template <class F>
Vec<F> conj_vector(Vec<F> v)
{
    for (auto& x : v)
        x = conj(x);
    return v;
}

template <class F>
std::string vector_to_string(const Vec<F>& v)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? ", " : "") << to_string(v[i]);
    os << ')';
    return os.str();
}

template <class F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b)
{
    if (a.rows() != b.rows())
        throw InvalidInput("hstack row mismatch");
    Matrix<F> m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j)
            m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

template <class F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b)
{
    if (a.cols() != b.cols())
        throw InvalidInput("vstack column mismatch");
    Matrix<F> m(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            m(a.rows() + i, j) = b(i, j);
    return m;
}

/// Column-selection helper: columns [first, first + count).
template <class F>
Matrix<F> column_block(const Matrix<F>& a, std::size_t first, std::size_t count)
{
    Matrix<F> m(a.rows(), count);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < count; ++j)
            m(i, j) = a(i, first + j);
    return m;
}

template <class F>
Matrix<F> row_block(const Matrix<F>& a, std::size_t first, std::size_t count)
{
    Matrix<F> m(count, a.cols());
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = a(first + i, j);
    return m;
}

template <class F>
struct Echelon {
    Matrix<F> matrix;
    std::vector<std::size_t> pivots;  // pivot column of row r
};

/// Bareiss forward elimination. Rows are swapped to bring the first nonzero
/// entry of each column into pivot position; columns without a pivot are skipped.
template <class F>
Echelon<F> bareiss_echelon(Matrix<F> a)
{
    Echelon<F> out;
    F prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && is_zero(a(p, c)))
            ++p;
        if (p == a.rows())
            continue;
        a.swap_rows(p, r);
        const F pivot = a(r, c);
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            const F lead = a(i, c);
            for (std::size_t j = c + 1; j < a.cols(); ++j) {
                F v = a(i, j) * pivot;
                if (!is_zero(lead))
                    v -= lead * a(r, j);
                a(i, j) = v / prev;
            }
            a(i, c) = F(0);
        }
        prev = pivot;
        out.pivots.push_back(c);
        ++r;
    }
    out.matrix = std::move(a);
    return out;
}

/// Reduced row echelon form (canonical for the row space).
template <class F>
Echelon<F> rref(const Matrix<F>& a)
{
    Echelon<F> e = bareiss_echelon(a);
    Matrix<F>& m = e.matrix;
    for (std::size_t r = e.pivots.size(); r-- > 0;) {
        const std::size_t c = e.pivots[r];
        const F inv = F(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            if (!is_zero(m(r, j)))
                m(r, j) *= inv;
        for (std::size_t i = 0; i < r; ++i) {
            const F f = m(i, c);
            if (is_zero(f))
                continue;
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!is_zero(m(r, j)))
                    m(i, j) -= f * m(r, j);
        }
    }
    // zero rows below the rank are already zero after Bareiss
    return e;
}

template <class F>
std::size_t rank(const Matrix<F>& a)
{
    return bareiss_echelon(a).pivots.size();
}

/// Leading principal minors via Bareiss without pivoting: the k-th pivot is
/// the k-th leading minor. Stops after the first vanishing minor.
template <class F>
std::vector<F> leading_principal_minors(Matrix<F> a)
{
    if (!a.is_square())
        throw InvalidInput("leading minors need a square matrix");
    std::vector<F> minors;
    F prev(1);
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        const F pivot = a(k, k);
        minors.push_back(pivot);
        if (is_zero(pivot))
            break;
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * pivot - a(i, k) * a(k, j)) / prev;
            a(i, k) = F(0);
        }
        prev = pivot;
    }
    return minors;
}

template <class F>
F determinant(Matrix<F> a)
{
    if (!a.is_square())
        throw InvalidInput("determinant needs a square matrix");
    const std::size_t n = a.rows();
    F det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(a(p, c)))
            ++p;
        if (p == n)
            return F(0);
        if (p != c) {
            a.swap_rows(p, c);
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (is_zero(a(r, c)))
                continue;
            const F f = a(r, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j)
                a(r, j) -= f * a(c, j);
        }
    }
    return det;
}

inline bool is_positive_real(const Rational& x) { return sgn(x) > 0; }
inline bool is_positive_real(const Gauss& x) { return sgn(x.im) == 0 && sgn(x.re) > 0; }

/// Hermitian (symmetric over Q) and all leading principal minors positive.
template <class F>
bool is_positive_definite(const Matrix<F>& a)
{
    if (!a.is_square() || a != a.adjoint())
        return false;
    for (const auto& m : leading_principal_minors(a))
        if (!is_positive_real(m))
            return false;
    return true;
}

/// A particular solution of a x = b with free variables set to zero.
template <class F>
std::optional<Vec<F>> solve(const Matrix<F>& a, const Vec<F>& b)
{
    if (b.size() != a.rows())
        throw InvalidInput("solve: right-hand side length mismatch");
    Matrix<F> aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    Echelon<F> e = rref(aug);
    Vec<F> x(a.cols(), F(0));
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == a.cols())
            return std::nullopt;
        x[e.pivots[r]] = e.matrix(r, a.cols());
    }
    return x;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a)
{
    if (!a.is_square())
        return std::nullopt;
    const std::size_t n = a.rows();
    if (n == 0)
        return a;
    Echelon<F> e = rref(hstack(a, Matrix<F>::identity(n)));
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1)
        return std::nullopt;
    return column_block(e.matrix, n, n);
}

/// (B^H B)^{-1} B^H for a matrix of full column rank; nullopt otherwise.
template <class F>
std::optional<Matrix<F>> left_inverse(const Matrix<F>& b)
{
    const Matrix<F> bh = b.adjoint();
    auto inv = inverse(bh * b);
    if (!inv)
        return std::nullopt;
    return *inv * bh;
}

/// Linear subspace of F^ambient, stored by its RREF basis.
template <class F>
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

    /// Row space of the given matrix (rows are vectors of length ambient).
    static Subspace row_space(const Matrix<F>& rows)
    {
        Subspace s(rows.cols());
        Echelon<F> e = rref(rows);
        s.basis_ = row_block(e.matrix, 0, e.pivots.size());
        s.pivots_ = std::move(e.pivots);
        return s;
    }

    static Subspace span(std::size_t ambient, const std::vector<Vec<F>>& vectors)
    {
        return row_space(Matrix<F>::from_rows(ambient, vectors));
    }

    /// Column space of a matrix.
    static Subspace column_space(const Matrix<F>& a) { return row_space(a.transpose()); }

    static Subspace whole(std::size_t ambient) { return row_space(Matrix<F>::identity(ambient)); }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    Vec<F> vector(std::size_t i) const { return basis_.row(i); }
    const Matrix<F>& rows() const { return basis_; }
    /// ambient x dim matrix whose columns are the basis vectors.
    Matrix<F> columns() const { return basis_.transpose(); }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    std::vector<Vec<F>> vectors() const
    {
        std::vector<Vec<F>> out;
        for (std::size_t i = 0; i < dim(); ++i)
            out.push_back(vector(i));
        return out;
    }

    /// Residual of v after reduction by the basis; zero iff v is contained.
    Vec<F> reduce(Vec<F> v) const
    {
        if (v.size() != ambient_)
            throw InvalidInput("subspace: vector length mismatch");
        for (std::size_t r = 0; r < dim(); ++r) {
            const F f = v[pivots_[r]];
            if (is_zero(f))
                continue;
            for (std::size_t j = 0; j < ambient_; ++j)
                if (!is_zero(basis_(r, j)))
                    v[j] -= f * basis_(r, j);
        }
        return v;
    }

    bool contains(const Vec<F>& v) const { return is_zero_vector(reduce(v)); }

    /// Coordinates of a contained vector in the RREF basis.
    Vec<F> coordinates(const Vec<F>& v) const
    {
        if (!contains(v))
            throw InvalidInput("subspace: vector " + vector_to_string(v) + " not contained");
        Vec<F> c(dim());
        for (std::size_t r = 0; r < dim(); ++r)
            c[r] = v[pivots_[r]];
        return c;
    }

    bool is_subspace_of(const Subspace& t) const
    {
        for (std::size_t i = 0; i < dim(); ++i)
            if (!t.contains(vector(i)))
                return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b)
    {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_ = 0;
    Matrix<F> basis_;
    std::vector<std::size_t> pivots_;
};

template <class F>
Subspace<F> kernel_basis(const Matrix<F>& a)
{
    Echelon<F> e = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : e.pivots)
        is_pivot[c] = true;
    std::vector<Vec<F>> vectors;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f])
            continue;
        Vec<F> v(a.cols(), F(0));
        v[f] = F(1);
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            v[e.pivots[r]] = -e.matrix(r, f);
        vectors.push_back(std::move(v));
    }
    return Subspace<F>::span(a.cols(), vectors);
}

template <class F>
Subspace<F> image_basis(const Matrix<F>& a)
{
    return Subspace<F>::column_space(a);
}

template <class F>
Subspace<F> sum(const Subspace<F>& s, const Subspace<F>& t)
{
    if (s.ambient() != t.ambient())
        throw InvalidInput("subspace sum: ambient dimension mismatch");
    return Subspace<F>::row_space(vstack(s.rows(), t.rows()));
}

/// Vectors y with sum_j v_j y_j = 0 for every v in s (bilinear, no conjugation).
template <class F>
Subspace<F> annihilator(const Subspace<F>& s)
{
    if (s.dim() == 0)
        return Subspace<F>::whole(s.ambient());
    return kernel_basis(s.rows());
}

template <class F>
Subspace<F> intersect(const Subspace<F>& s, const Subspace<F>& t)
{
    if (s.ambient() != t.ambient())
        throw InvalidInput("subspace intersection: ambient dimension mismatch");
    const Subspace<F> as = annihilator(s);
    const Subspace<F> at = annihilator(t);
    Matrix<F> stacked = vstack(as.rows(), at.rows());
    if (stacked.rows() == 0)
        return Subspace<F>::whole(s.ambient());
    return kernel_basis(stacked);
}

/// Image of a subspace under a linear map.
template <class F>
Subspace<F> map_subspace(const Matrix<F>& a, const Subspace<F>& s)
{
    if (s.dim() == 0)
        return Subspace<F>(a.rows());
    return Subspace<F>::column_space(a * s.columns());
}

/// num / den with representatives completing the den basis inside num in index order.
template <class F>
class QuotientSpace {
public:
    QuotientSpace() = default;

    QuotientSpace(Subspace<F> num, Subspace<F> den) : num_(std::move(num)), den_(std::move(den))
    {
        if (num_.ambient() != den_.ambient())
            throw InvalidInput("quotient: ambient dimension mismatch");
        for (std::size_t i = 0; i < den_.dim(); ++i)
            if (!num_.contains(den_.vector(i)))
                throw InvalidInput("quotient: denominator not contained in numerator, witness " +
                                   vector_to_string(den_.vector(i)));
        Subspace<F> current = den_;
        for (std::size_t i = 0; i < num_.dim(); ++i) {
            Vec<F> v = num_.vector(i);
            if (current.contains(v))
                continue;
            reps_.push_back(v);
            current = sum(current, Subspace<F>::span(num_.ambient(), {v}));
        }
        std::vector<Vec<F>> cols = reps_;
        for (std::size_t i = 0; i < den_.dim(); ++i)
            cols.push_back(den_.vector(i));
        const std::size_t k = cols.size();
        const std::size_t n = num_.ambient();
        if (k > 0) {
            Matrix<F> b = Matrix<F>::from_columns(n, cols);
            Echelon<F> e = rref(hstack(b, Matrix<F>::identity(n)));
            left_inverse_ = Matrix<F>(k, n);
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t j = 0; j < n; ++j)
                    left_inverse_(r, j) = e.matrix(r, k + j);
        }
    }

    std::size_t dim() const { return reps_.size(); }
    const Subspace<F>& numerator() const { return num_; }
    const Subspace<F>& denominator() const { return den_; }
    const std::vector<Vec<F>>& representatives() const { return reps_; }

    bool in_numerator(const Vec<F>& v) const { return num_.contains(v); }

    /// Coordinates of [v] in the representative basis. v must lie in num.
    Vec<F> class_of(const Vec<F>& v) const
    {
        if (!num_.contains(v))
            throw InvalidInput("quotient: vector " + vector_to_string(v) + " outside numerator");
        Vec<F> c(dim(), F(0));
        if (dim() == 0)
            return c;
        Vec<F> full = left_inverse_ * v;
        for (std::size_t i = 0; i < dim(); ++i)
            c[i] = full[i];
        return c;
    }

    bool is_zero_class(const Vec<F>& v) const { return is_zero_vector(class_of(v)); }

private:
    Subspace<F> num_;
    Subspace<F> den_;
    std::vector<Vec<F>> reps_;
    Matrix<F> left_inverse_;
};

/// Matrix of the map induced by a on quotients (columns indexed by q1's representatives).
template <class F>
Matrix<F> induced_map(const QuotientSpace<F>& q1, const QuotientSpace<F>& q2, const Matrix<F>& a)
{
    if (a.cols() != q1.numerator().ambient() || a.rows() != q2.numerator().ambient())
        throw InvalidInput("induced map: shape mismatch");
    for (std::size_t i = 0; i < q1.numerator().dim(); ++i) {
        Vec<F> w = a * q1.numerator().vector(i);
        if (!q2.numerator().contains(w))
            throw InvalidInput("induced map ill-defined: numerator vector " +
                               vector_to_string(q1.numerator().vector(i)) + " leaves the target numerator");
    }
    for (std::size_t i = 0; i < q1.denominator().dim(); ++i) {
        Vec<F> w = a * q1.denominator().vector(i);
        if (!q2.denominator().contains(w))
            throw InvalidInput("induced map ill-defined: denominator vector " +
                               vector_to_string(q1.denominator().vector(i)) + " leaves the target denominator");
    }
    Matrix<F> m(q2.dim(), q1.dim());
    for (std::size_t j = 0; j < q1.dim(); ++j)
        m.set_column(j, q2.class_of(a * q1.representatives()[j]));
    return m;
}

/// Hermitian positive-definite inner product <x, y> = x^H G y.
template <class F>
class Gram {
public:
    Gram() = default;

    explicit Gram(Matrix<F> g) : g_(std::move(g))
    {
        if (!g_.is_square())
            throw InvalidInput("Gram matrix must be square");
        if (g_ != g_.adjoint())
            throw InvalidInput("Gram matrix must be Hermitian");
        if (!is_positive_definite(g_))
            throw InvalidInput("Gram matrix is not positive definite");
        inverse_ = *foliage::inverse(g_);
    }

    static Gram identity(std::size_t n) { return Gram(Matrix<F>::identity(n)); }

    std::size_t size() const { return g_.rows(); }
    const Matrix<F>& matrix() const { return g_; }
    const Matrix<F>& inverse() const { return inverse_; }

    F inner(const Vec<F>& x, const Vec<F>& y) const
    {
        Vec<F> gy = g_ * y;
        F s(0);
        for (std::size_t i = 0; i < x.size(); ++i)
            s += conj(x[i]) * gy[i];
        return s;
    }

    /// Gram of the pulled-back product on the column space of e: e^H G e.
    Gram restrict_to(const Matrix<F>& e) const { return Gram(e.adjoint() * g_ * e); }

private:
    Matrix<F> g_;
    Matrix<F> inverse_;
};

/// A* with <A x, y>_cod = <x, A* y>_dom, i.e. A* = G_dom^{-1} A^H G_cod.
template <class F>
Matrix<F> gram_adjoint(const Matrix<F>& a, const Gram<F>& dom, const Gram<F>& cod)
{
    if (a.cols() != dom.size() || a.rows() != cod.size())
        throw InvalidInput("gram_adjoint: Gram shapes do not match the map");
    return dom.inverse() * a.adjoint() * cod.matrix();
}

/// Matrix over Q viewed over Q(i).
inline Matrix<Gauss> complexify(const Matrix<Rational>& a)
{
    Matrix<Gauss> m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = Gauss(a(i, j));
    return m;
}

} // namespace foliage
