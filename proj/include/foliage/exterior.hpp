#pragma once

// Exterior algebra of the dual of a finite-dimensional Lie algebra and its
// Chevalley-Eilenberg differential.
//
// Basis covectors e^1..e^m are indexed 0..m-1 internally; a basis k-form
// e^{i1...ik} is the bitmask with bits i1..ik set. Forms evaluate on vectors
// by the determinant convention e^{ij}(e_i, e_j) = 1, and the differential
// carries no 1/2: (d alpha)(X, Y) = -alpha([X, Y]) on 1-forms.

#include "foliage/linalg.hpp"
#include "foliage/scalar.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace foliage {

using Mask = std::uint32_t;

inline constexpr int kMaxDimension = 12;

inline int degree_of(Mask m) { return std::popcount(m); }

/// (-1)^{#pairs (i in a, j in b) with i > j}: the sign of e^a ^ e^b relative to e^{a|b}.
int merge_sign(Mask a, Mask b);

/// Canonical ordering of the basis k-forms of an m-dimensional space:
/// lexicographic in the sorted index tuple (e^12, e^13, e^14, e^23, ...).
class ExteriorBasis {
public:
    explicit ExteriorBasis(int dim);

    int dim() const { return dim_; }
    std::size_t size(int degree) const;
    const std::vector<Mask>& masks(int degree) const { return masks_.at(static_cast<std::size_t>(degree)); }
    std::size_t index(Mask m) const { return index_.at(m); }
    Mask mask(int degree, std::size_t idx) const { return masks(degree).at(idx); }

private:
    int dim_;
    std::vector<std::vector<Mask>> masks_;
    std::vector<std::size_t> index_;
};

/// Shared (thread-safe, immutable) basis tables for dimensions up to kMaxDimension.
const ExteriorBasis& exterior_basis(int dim);

std::string mask_to_string(Mask m);  // "e^13" style, 1-based

template <class F>
class Form {
public:
    Form() = default;
    Form(int dim, int degree) : dim_(dim), degree_(degree) {}

    static Form basis(int dim, Mask m, F coeff = F(1))
    {
        Form f(dim, degree_of(m));
        f.add(m, coeff);
        return f;
    }

    /// Basis form from 1-based indices in the given order (sign follows the order).
    static Form monomial(int dim, const std::vector<int>& indices)
    {
        Form f(dim, 0);
        f.add(0, F(1));
        for (int i : indices)
            f = wedge_impl(f, basis(dim, Mask{1} << (i - 1)));
        return f;
    }

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    const std::map<Mask, F>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    F coeff(Mask m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? F(0) : it->second;
    }

    void add(Mask m, const F& c)
    {
        if (degree_of(m) != degree_)
            throw InvalidInput("form term degree mismatch");
        if (foliage::is_zero(c))
            return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (foliage::is_zero(it->second))
                terms_.erase(it);
        }
    }

    Form& operator+=(const Form& o)
    {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_)
            add(m, c);
        return *this;
    }

    Form& operator-=(const Form& o)
    {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_)
            add(m, -c);
        return *this;
    }

    Form& operator*=(const F& s)
    {
        if (foliage::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_)
            c *= s;
        return *this;
    }

    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(const F& s, Form a) { return a *= s; }
    friend Form operator-(Form a) { return a *= F(-1); }
    friend bool operator==(const Form& a, const Form& b)
    {
        return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    /// Coordinates in the canonical basis of Lambda^degree.
    Vec<F> coords() const
    {
        const ExteriorBasis& b = exterior_basis(dim_);
        Vec<F> v(b.size(degree_), F(0));
        for (const auto& [m, c] : terms_)
            v[b.index(m)] = c;
        return v;
    }

    static Form from_coords(int dim, int degree, const Vec<F>& v)
    {
        const ExteriorBasis& b = exterior_basis(dim);
        if (v.size() != b.size(degree))
            throw InvalidInput("form coordinates have the wrong length");
        Form f(dim, degree);
        for (std::size_t i = 0; i < v.size(); ++i)
            f.add(b.mask(degree, i), v[i]);
        return f;
    }

    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        const ExteriorBasis& b = exterior_basis(dim_);
        std::string out;
        for (Mask m : b.masks(degree_)) {
            auto it = terms_.find(m);
            if (it == terms_.end())
                continue;
            std::string c = foliage::to_string(it->second);
            bool composite = c.find_first_of("+-", 1) != std::string::npos;
            if (composite)
                c = "(" + c + ")";
            if (!out.empty())
                out += (c.front() == '-') ? " - " : " + ";
            else if (c.front() == '-')
                out += "-";
            if (c.front() == '-')
                c.erase(0, 1);
            if (m == 0)
                out += c;
            else
                out += (c == "1" ? "" : c + "*") + mask_to_string(m);
        }
        return out;
    }

    static Form wedge_impl(const Form& a, const Form& b)
    {
        if (a.dim_ != b.dim_)
            throw InvalidInput("wedge: dimension mismatch");
        Form out(a.dim_, a.degree_ + b.degree_);
        if (out.degree_ > a.dim_)
            return Form(a.dim_, a.dim_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                if (ma & mb)
                    continue;
                F c = ca * cb;
                if (merge_sign(ma, mb) < 0)
                    c = -c;
                out.add(ma | mb, c);
            }
        return out;
    }

private:
    void check_compatible(const Form& o) const
    {
        if (dim_ != o.dim_ || degree_ != o.degree_)
            throw InvalidInput("form arithmetic: incompatible dimension or degree");
    }

    int dim_ = 0;
    int degree_ = 0;
    std::map<Mask, F> terms_;
};

/// Graded product. A result degree beyond the dimension yields the zero top form.
template <class F>
Form<F> wedge(const Form<F>& a, const Form<F>& b)
{
    return Form<F>::wedge_impl(a, b);
}

template <class F>
Form<F> wedge_power(const Form<F>& a, int p)
{
    Form<F> out = Form<F>::basis(a.dim(), 0);
    for (int i = 0; i < p; ++i)
        out = wedge(out, a);
    return out;
}

/// Contraction i_v alpha. A degree-0 argument yields the zero 0-form.
template <class F>
Form<F> interior(const Vec<F>& v, const Form<F>& a)
{
    if (static_cast<int>(v.size()) != a.dim())
        throw InvalidInput("interior: vector length does not match the form dimension");
    if (a.degree() == 0)
        return Form<F>(a.dim(), 0);
    Form<F> out(a.dim(), a.degree() - 1);
    for (const auto& [m, c] : a.terms()) {
        int position = 0;
        for (int i = 0; i < a.dim(); ++i) {
            const Mask bit = Mask{1} << i;
            if (!(m & bit))
                continue;
            if (!is_zero(v[static_cast<std::size_t>(i)])) {
                F t = c * v[static_cast<std::size_t>(i)];
                if (position % 2)
                    t = -t;
                out.add(m & ~bit, t);
            }
            ++position;
        }
    }
    return out;
}

template <class F>
Form<F> embed_form(const Form<Rational>& a)
{
    Form<F> out(a.dim(), a.degree());
    for (const auto& [m, c] : a.terms())
        out.add(m, embed<F>(c));
    return out;
}

using Vector = Vec<Rational>;

/// Result of the Jacobi audit of a bracket table.
struct AlgebraValidation {
    bool valid = true;
    std::optional<std::array<int, 3>> triple;  // 1-based indices of the first violating triple
    Vector residual;                           // [[e_i,e_j],e_k] + cyclic
    bool d_squared_zero = true;                // d(d e^k) = 0 for every generator
    std::string message() const;
};

/// Finite model: [e_i, e_j] = sum_k c^k_ij e_k.
class LieAlgebraModel {
public:
    using BracketTable = std::map<std::pair<int, int>, Vector>;  // 0-based i < j -> coefficients

    LieAlgebraModel() = default;
    LieAlgebraModel(int dim, const BracketTable& brackets);

    int dim() const { return dim_; }
    const BracketTable& brackets() const { return table_; }

    /// c^k_ij for 0-based indices (antisymmetric in i, j).
    const Rational& structure_constant(int i, int j, int k) const
    {
        return constants_[static_cast<std::size_t>((i * dim_ + j) * dim_ + k)];
    }

    Vector basis_vector(int i) const;
    Vector bracket(const Vector& x, const Vector& y) const;
    /// ad_v as a matrix: column j is [v, e_j].
    Matrix<Rational> ad(const Vector& v) const;

    /// d e^k for each k.
    const std::vector<Form<Rational>>& differentials_of_generators() const { return de_; }

    bool is_abelian() const { return table_.empty(); }

private:
    int dim_ = 0;
    BracketTable table_;
    std::vector<Rational> constants_;
    std::vector<Form<Rational>> de_;
};

/// Chevalley-Eilenberg differential, extended from 1-forms as an antiderivation.
template <class F>
Form<F> ce_d(const LieAlgebraModel& model, const Form<F>& a)
{
    if (a.dim() != model.dim())
        throw InvalidInput("ce_d: form dimension does not match the model");
    const int m = model.dim();
    Form<F> out(m, a.degree() + 1);
    if (a.degree() >= m)
        return Form<F>(m, m);
    for (const auto& [mask, c] : a.terms()) {
        Mask left = 0;
        int position = 0;
        for (int i = 0; i < m; ++i) {
            const Mask bit = Mask{1} << i;
            if (!(mask & bit))
                continue;
            const Mask right = mask & ~left & ~bit;
            const Form<Rational>& dg = model.differentials_of_generators()[static_cast<std::size_t>(i)];
            for (const auto& [dm, dc] : dg.terms()) {
                // e^left ^ (dc e^dm) ^ e^right
                if ((dm & left) || (dm & right))
                    continue;
                int sign = merge_sign(left, dm) * merge_sign(left | dm, right);
                if (position % 2)
                    sign = -sign;
                F t = c * embed<F>(dc);
                if (sign < 0)
                    t = -t;
                out.add(left | dm | right, t);
            }
            left |= bit;
            ++position;
        }
    }
    return out;
}

AlgebraValidation validate_algebra(const LieAlgebraModel& model);

/// X -> [v, phi X] - phi [v, X].
Matrix<Rational> lie_derivative_endo(const LieAlgebraModel& model, const Vector& v, const Matrix<Rational>& phi);

/// alpha(x_1, ..., x_k) for a k-form (determinant convention).
template <class F>
F evaluate(const Form<F>& a, const std::vector<Vec<F>>& vectors)
{
    if (static_cast<int>(vectors.size()) != a.degree())
        throw InvalidInput("evaluate: number of arguments differs from the degree");
    F total(0);
    const std::size_t k = vectors.size();
    for (const auto& [mask, c] : a.terms()) {
        std::vector<int> idx;
        for (int i = 0; i < a.dim(); ++i)
            if (mask & (Mask{1} << i))
                idx.push_back(i);
        // determinant of the k x k minor [x_r(idx_s)]
        Matrix<F> minor(k, k);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t s = 0; s < k; ++s)
                minor(r, s) = vectors[r][static_cast<std::size_t>(idx[s])];
        F det = k == 0 ? F(1) : determinant(minor);
        total += c * det;
    }
    return total;
}

/// Matrix of alpha |-> d alpha from Lambda^k to Lambda^{k+1} in canonical bases.
template <class F>
Matrix<F> d_matrix(const LieAlgebraModel& model, int degree)
{
    const ExteriorBasis& b = exterior_basis(model.dim());
    const std::size_t rows = degree + 1 <= model.dim() ? b.size(degree + 1) : 0;
    Matrix<F> out(rows, b.size(degree));
    if (rows == 0)
        return out;
    for (std::size_t j = 0; j < b.size(degree); ++j) {
        Form<F> img = ce_d(model, Form<F>::basis(model.dim(), b.mask(degree, j)));
        for (const auto& [m, c] : img.terms())
            out(b.index(m), j) = c;
    }
    return out;
}

/// Matrix of alpha |-> i_v alpha from Lambda^k to Lambda^{k-1}.
template <class F>
Matrix<F> interior_matrix(const Vec<F>& v, int degree)
{
    const int m = static_cast<int>(v.size());
    const ExteriorBasis& b = exterior_basis(m);
    const std::size_t rows = degree >= 1 ? b.size(degree - 1) : 0;
    Matrix<F> out(rows, b.size(degree));
    if (rows == 0)
        return out;
    for (std::size_t j = 0; j < b.size(degree); ++j) {
        Form<F> img = interior(v, Form<F>::basis(m, b.mask(degree, j)));
        for (const auto& [mk, c] : img.terms())
            out(b.index(mk), j) = c;
    }
    return out;
}

/// Matrix of alpha |-> alpha ^ w from Lambda^k to Lambda^{k + deg w}.
template <class F>
Matrix<F> right_wedge_matrix(const Form<F>& w, int degree)
{
    const int m = w.dim();
    const ExteriorBasis& b = exterior_basis(m);
    const int target = degree + w.degree();
    const std::size_t rows = target <= m ? b.size(target) : 0;
    Matrix<F> out(rows, b.size(degree));
    if (rows == 0)
        return out;
    for (std::size_t j = 0; j < b.size(degree); ++j) {
        Form<F> img = wedge(Form<F>::basis(m, b.mask(degree, j)), w);
        for (const auto& [mk, c] : img.terms())
            out(b.index(mk), j) = c;
    }
    return out;
}

/// k-th compound matrix: entry (I, J) is the minor det a[I, J], I, J in canonical order.
/// For a 1-form change of basis a, compound(a, k) acts on k-forms.
template <class F>
Matrix<F> compound(const Matrix<F>& a, int k)
{
    const ExteriorBasis& rb = exterior_basis(static_cast<int>(a.rows()));
    const ExteriorBasis& cb = exterior_basis(static_cast<int>(a.cols()));
    Matrix<F> out(rb.size(k), cb.size(k));
    for (std::size_t j = 0; j < cb.size(k); ++j) {
        // wedge of the selected columns, read off in the row basis
        Form<F> w = Form<F>::basis(static_cast<int>(a.rows()), 0);
        const Mask cm = cb.mask(k, j);
        for (int c = 0; c < static_cast<int>(a.cols()); ++c) {
            if (!(cm & (Mask{1} << c)))
                continue;
            Form<F> col(static_cast<int>(a.rows()), 1);
            for (std::size_t r = 0; r < a.rows(); ++r)
                col.add(Mask{1} << r, a(r, static_cast<std::size_t>(c)));
            w = wedge(w, col);
        }
        for (const auto& [m, c] : w.terms())
            out(rb.index(m), j) = c;
    }
    return out;
}

} // namespace foliage
