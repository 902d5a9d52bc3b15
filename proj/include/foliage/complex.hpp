#pragma once

// Finite cochain complexes of forms: each C^k is a subspace of Lambda^k of the
// model, d_k is stored in subspace coordinates.

#include "foliage/errors.hpp"
#include "foliage/exterior.hpp"

#include <string>
#include <vector>

namespace foliage {

template <class F>
struct CochainComplex {
    int model_dim = 0;
    std::vector<Subspace<F>> spaces;  // C^k inside Lambda^k, k = 0..top
    std::vector<Matrix<F>> d;         // d_k : C^k -> C^{k+1}; d[top] maps to 0

    int top() const { return static_cast<int>(spaces.size()) - 1; }
    std::size_t dim(int k) const
    {
        return k < 0 || k > top() ? 0 : spaces[static_cast<std::size_t>(k)].dim();
    }
    /// Lambda^k coordinates of a C^k coordinate vector.
    Vec<F> ambient(int k, const Vec<F>& coords) const
    {
        return spaces[static_cast<std::size_t>(k)].columns() * coords;
    }
    Form<F> form(int k, const Vec<F>& coords) const { return Form<F>::from_coords(model_dim, k, ambient(k, coords)); }
    /// C^k coordinates of a form that lies in C^k.
    Vec<F> coords(const Form<F>& f) const
    {
        return spaces[static_cast<std::size_t>(f.degree())].coordinates(f.coords());
    }
    bool contains(const Form<F>& f) const
    {
        return f.degree() <= top() && spaces[static_cast<std::size_t>(f.degree())].contains(f.coords());
    }
    /// d_k, or an empty map when k is out of range.
    Matrix<F> differential(int k) const
    {
        if (k < 0)
            return Matrix<F>(dim(0), 0);
        return d[static_cast<std::size_t>(k)];
    }
};

/// Subcomplex of the CE complex cut out by per-degree subspaces of Lambda^k.
/// Throws InternalInconsistency if d does not preserve the subspaces.
template <class F>
CochainComplex<F> restrict_complex(const LieAlgebraModel& model, std::vector<Subspace<F>> spaces)
{
    CochainComplex<F> c;
    c.model_dim = model.dim();
    c.spaces = std::move(spaces);
    for (int k = 0; k <= c.top(); ++k) {
        const Subspace<F>& s = c.spaces[static_cast<std::size_t>(k)];
        Matrix<F> dk(c.dim(k + 1), s.dim());
        if (k < c.top()) {
            const Matrix<F> image = d_matrix<F>(model, k) * s.columns();
            for (std::size_t j = 0; j < s.dim(); ++j) {
                const Vec<F> v = image.column(j);
                if (!c.spaces[static_cast<std::size_t>(k + 1)].contains(v))
                    throw InternalInconsistency("d leaves the subcomplex in degree " + std::to_string(k) + ": d(" +
                                                Form<F>::from_coords(model.dim(), k, s.vector(j)).to_string() +
                                                ") is outside");
                dk.set_column(j, c.spaces[static_cast<std::size_t>(k + 1)].coordinates(v));
            }
        } else if (k < model.dim()) {
            // the truncated top degree must map to zero
            const Matrix<F> image = d_matrix<F>(model, k) * s.columns();
            if (!image.is_zero())
                throw InternalInconsistency("top degree of the subcomplex is not closed");
        }
        c.d.push_back(std::move(dk));
    }
    for (int k = 0; k + 1 < c.top(); ++k)
        if (!(c.d[static_cast<std::size_t>(k + 1)] * c.d[static_cast<std::size_t>(k)]).is_zero())
            throw InternalInconsistency("d^2 != 0 in degree " + std::to_string(k));
    return c;
}

template <class F>
CochainComplex<F> full_complex(const LieAlgebraModel& model)
{
    std::vector<Subspace<F>> spaces;
    const ExteriorBasis& b = exterior_basis(model.dim());
    for (int k = 0; k <= model.dim(); ++k)
        spaces.push_back(Subspace<F>::whole(b.size(k)));
    return restrict_complex<F>(model, std::move(spaces));
}

template <class F>
struct CohomologyGroup {
    int degree = 0;
    QuotientSpace<F> quotient;  // ker d_k / im d_{k-1} in C^k coordinates
    std::vector<Form<F>> representatives;

    std::size_t dim() const { return quotient.dim(); }
};

template <class F>
CohomologyGroup<F> cohomology_group(const CochainComplex<F>& c, int k)
{
    CohomologyGroup<F> h;
    h.degree = k;
    const Subspace<F> cycles = kernel_basis(c.differential(k));
    const Subspace<F> boundaries =
        k == 0 ? Subspace<F>(c.dim(0)) : image_basis(c.differential(k - 1));
    h.quotient = QuotientSpace<F>(cycles, boundaries);
    for (const auto& r : h.quotient.representatives())
        h.representatives.push_back(c.form(k, r));
    return h;
}

template <class F>
std::vector<CohomologyGroup<F>> cohomology(const CochainComplex<F>& c)
{
    std::vector<CohomologyGroup<F>> out;
    for (int k = 0; k <= c.top(); ++k)
        out.push_back(cohomology_group(c, k));
    return out;
}

/// dim H^k for k = 0..top, from ranks only.
template <class F>
std::vector<std::size_t> betti_numbers(const CochainComplex<F>& c)
{
    std::vector<std::size_t> ranks;
    for (int k = 0; k <= c.top(); ++k)
        ranks.push_back(rank(c.differential(k)));
    std::vector<std::size_t> out;
    for (int k = 0; k <= c.top(); ++k)
        out.push_back(c.dim(k) - ranks[static_cast<std::size_t>(k)] - (k ? ranks[static_cast<std::size_t>(k - 1)] : 0));
    return out;
}

/// Gram on Lambda^k induced by a Gram on 1-forms (the k-th compound).
template <class F>
Gram<F> form_gram(const Matrix<F>& one_form_gram, int k)
{
    return Gram<F>(compound(one_form_gram, k));
}

/// Grams on each C^k, pulled back from the forms Gram induced by one_form_gram.
template <class F>
std::vector<Gram<F>> induced_grams(const CochainComplex<F>& c, const Matrix<F>& one_form_gram)
{
    std::vector<Gram<F>> out;
    for (int k = 0; k <= c.top(); ++k) {
        const Matrix<F> g = compound(one_form_gram, k);
        const Matrix<F> e = c.spaces[static_cast<std::size_t>(k)].columns();
        if (e.cols() == 0)
            out.emplace_back(Matrix<F>(0, 0));
        else
            out.push_back(Gram<F>(g).restrict_to(e));
    }
    return out;
}

template <class F>
struct HarmonicSpace {
    int degree = 0;
    Subspace<F> harmonic;  // ker Delta_k in C^k coordinates
    Subspace<F> exact;     // im d_{k-1}
    Subspace<F> coexact;   // im d_k^*
    Matrix<F> laplacian;
};

/// Delta_k = d d* + d* d. Verifies dim ker Delta_k = dim H^k and the orthogonal
/// decomposition C^k = harmonic + exact + coexact; throws InternalInconsistency otherwise.
template <class F>
HarmonicSpace<F> harmonic_space(const CochainComplex<F>& c, const std::vector<Gram<F>>& grams, int k)
{
    HarmonicSpace<F> h;
    h.degree = k;
    const std::size_t n = c.dim(k);
    const auto gk = grams[static_cast<std::size_t>(k)];
    Matrix<F> lap(n, n);
    if (k > 0 && c.dim(k - 1) > 0 && n > 0) {
        const Matrix<F> dprev = c.differential(k - 1);
        const Matrix<F> dprev_star = gram_adjoint(dprev, grams[static_cast<std::size_t>(k - 1)], gk);
        lap += dprev * dprev_star;
        h.exact = image_basis(dprev);
    } else {
        h.exact = Subspace<F>(n);
    }
    if (k < c.top() && c.dim(k + 1) > 0 && n > 0) {
        const Matrix<F> dk = c.differential(k);
        const Matrix<F> dk_star = gram_adjoint(dk, gk, grams[static_cast<std::size_t>(k + 1)]);
        lap += dk_star * dk;
        h.coexact = image_basis(dk_star);
    } else {
        h.coexact = Subspace<F>(n);
    }
    h.laplacian = lap;
    h.harmonic = kernel_basis(lap);

    const std::size_t betti = cohomology_group(c, k).dim();
    if (h.harmonic.dim() != betti)
        throw InternalInconsistency("Hodge: dim ker Laplacian = " + std::to_string(h.harmonic.dim()) +
                                    " but dim H^" + std::to_string(k) + " = " + std::to_string(betti));
    if (h.harmonic.dim() + h.exact.dim() + h.coexact.dim() != n || sum(sum(h.harmonic, h.exact), h.coexact).dim() != n)
        throw InternalInconsistency("Hodge decomposition fails in degree " + std::to_string(k));
    auto orthogonal = [&](const Subspace<F>& a, const Subspace<F>& b) {
        for (const auto& x : a.vectors())
            for (const auto& y : b.vectors())
                if (!is_zero(gk.inner(x, y)))
                    return false;
        return true;
    };
    if (n > 0 && !(orthogonal(h.harmonic, h.exact) && orthogonal(h.harmonic, h.coexact) &&
                   orthogonal(h.exact, h.coexact)))
        throw InternalInconsistency("Hodge summands are not orthogonal in degree " + std::to_string(k));
    return h;
}

template <class F>
std::vector<HarmonicSpace<F>> harmonic_spaces(const CochainComplex<F>& c, const std::vector<Gram<F>>& grams)
{
    std::vector<HarmonicSpace<F>> out;
    for (int k = 0; k <= c.top(); ++k)
        out.push_back(harmonic_space(c, grams, k));
    return out;
}

} // namespace foliage
