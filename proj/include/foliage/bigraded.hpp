#pragma once

// Complexified transverse forms split into (r,s) types by a transverse complex
// structure J, with d = del + delbar, and the cohomologies, Laplacians, star and
// Lefschetz operators built from them.
//
// Everything lives in Lambda(D*) (D spanned by the frame columns, dim 2q), where
// basic forms are identified with their restriction to D.  A^{r,s} is stored by
// a basis of column vectors in Lambda^{r+s}(C^{2q}); operators act on coordinates
// with respect to these bases.

#include "foliage/complex.hpp"
#include "foliage/contact.hpp"

#include <optional>
#include <string>
#include <vector>

namespace foliage {

using CMatrix = Matrix<Gauss>;
using CVec = Vec<Gauss>;

class BigradedComplex {
public:
    int q = 0;
    Matrix<Rational> frame;   // m x 2q
    Matrix<Rational> j;       // 2q x 2q, acts on vectors
    Matrix<Rational> metric;  // transverse Gram on vectors, J-invariant

    std::size_t dim(int r, int s) const;
    std::size_t total_dim(int k) const;

    /// Basis of A^{r,s} as columns in Lambda^{r+s}(C^{2q}).
    const CMatrix& basis(int r, int s) const;
    const Gram<Gauss>& gram(int r, int s) const;
    /// A^{r,s} -> A^{r+1,s} and A^{r,s} -> A^{r,s+1}; correctly shaped zero maps out of range.
    CMatrix del(int r, int s) const;
    CMatrix delbar(int r, int s) const;
    /// del delbar : A^{r,s} -> A^{r+1,s+1}
    CMatrix ddbar(int r, int s) const;

    /// Adjoints of the maps landing in A^{r,s}: A^{r,s} -> A^{r-1,s} and A^{r,s} -> A^{r,s-1}.
    CMatrix del_star(int r, int s) const;
    CMatrix delbar_star(int r, int s) const;

    CVec ambient(int r, int s, const CVec& coords) const;
    /// Coordinates of an ambient vector in A^{r,s}; nullopt if it is not of that type.
    std::optional<CVec> coords(int r, int s, const CVec& ambient) const;
    Form<Gauss> form(int r, int s, const CVec& coords) const;

    /// Total degree k, blocks ordered r = max(0,k-q) .. min(k,q).
    int first_r(int k) const { return k > q ? k - q : 0; }
    int last_r(int k) const { return k < q ? k : q; }
    std::size_t offset(int k, int r) const;
    CMatrix total_d(int k) const;
    Gram<Gauss> total_gram(int k) const;
    std::vector<std::size_t> betti() const;

    /// Restriction of a model form to D (Lambda^k(R^{2q}) coordinates).
    Vec<Rational> restrict_form(const Form<Rational>& f) const;

    // filled by build_bigraded
    std::vector<std::vector<CMatrix>> bases;
    std::vector<std::vector<Gram<Gauss>>> grams;
    std::vector<std::vector<CMatrix>> del_blocks;
    std::vector<std::vector<CMatrix>> delbar_blocks;
    std::vector<CMatrix> coordinate_maps;  // left inverse of the stacked bases per total degree
};

/// Rejects (InvalidInput) a J that is not a complex structure, a metric that is not
/// J-invariant, basic forms not determined on D, forms that do not split into types,
/// and any component of d outside bidegrees (1,0) and (0,1), naming the offender.
BigradedComplex build_bigraded(const CochainComplex<Rational>& forms, const Matrix<Rational>& frame,
                               const Matrix<Rational>& j, const std::optional<Matrix<Rational>>& transverse_metric);

/// With xi: basic forms, transverse frame and J from phi. Without xi: the full
/// complex of an even-dimensional model with J = phi.
BigradedComplex bigraded_from_bundle(const LieAlgebraModel& model, const StructureBundle& bundle);

struct Diamond {
    std::string theory;
    int q = 0;
    std::vector<std::vector<std::size_t>> h;                   // h[r][s]
    std::vector<std::vector<std::vector<CVec>>> representatives;  // A^{r,s} coordinates

    std::size_t at(int r, int s) const { return h[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)]; }
    std::size_t total(int k) const;
};

Diamond dolbeault(const BigradedComplex& c);
Diamond bott_chern(const BigradedComplex& c);
Diamond aeppli(const BigradedComplex& c);

enum class LaplacianKind { Del, Delbar, BottChern, Aeppli };

CMatrix laplacian(const BigradedComplex& c, LaplacianKind kind, int r, int s);
/// dd* + d*d on total degree k, in block coordinates.
CMatrix total_laplacian(const BigradedComplex& c, int k);

struct LaplacianEntry {
    int r = 0, s = 0;
    std::size_t del = 0, delbar = 0, bott_chern = 0, aeppli = 0;  // kernel dimensions
};

/// Kernel dimensions of the four Laplacians. Throws InternalInconsistency unless
/// they match the cohomologies and the three-term orthogonal decompositions hold.
std::vector<LaplacianEntry> laplacian_report(const BigradedComplex& c);

/// Conjugate-linear star A^{r,s} -> A^{q-r,q-s}: *bar(b) = S conj(b) in coordinates.
struct TransverseStar {
    Rational scale;  // vol = scale * e^{1..2q}
    std::vector<std::vector<CMatrix>> blocks;
    bool involution = false;  // *bar *bar = (-1)^k on degree k
    // sign e with del* = e *bar del *bar on every bidegree, or 0 if none works
    int del_adjoint_sign = 0;
    int delbar_adjoint_sign = 0;

    const CMatrix& at(int r, int s) const { return blocks[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)]; }
    /// Composite *bar A *bar on A^{r,s} for a linear map a out of A^{q-r,q-s}.
    CMatrix conjugate(const BigradedComplex& c, const CMatrix& a, int r, int s, int tr, int ts) const;
};

/// orientation: coefficient of e^{1..2q} (transverse frame) of the orienting top form.
/// InvalidInput unless the complex is homologically orientable (top cohomology of
/// dimension 1) and the orientation is nonzero.
TransverseStar transverse_star(const BigradedComplex& c, const Rational& orientation);

struct KahlerAudit {
    bool basic = false;
    bool closed = false;
    bool type_11 = false;
    bool positive = false;    // omega(X, JX) > 0
    bool compatible = false;  // omega(X, JY) = g(X, Y)
    std::string witness;
    bool passed() const { return basic && closed && type_11 && positive && compatible; }
};

/// omega given in Lambda^2(R^{2q}) coordinates (see restrict_form).
KahlerAudit kahler_audit(const BigradedComplex& c, const Vec<Rational>& omega);

struct LefschetzResiduals {
    bool lambda_del = false;     // [Lambda, del] = i delbar*
    bool lambda_delbar = false;  // [Lambda, delbar] = -i del*
    bool laplacians = false;     // Delta = 2 Delta''
    bool delta_l = false;        // [Delta, L] = 0
    bool delta_lambda = false;   // [Delta, Lambda] = 0
    bool sl2 = false;            // [L, Lambda] = (k - q) on degree k
    int lambda_star_sign = 0;    // e with Lambda = e(k) *bar L *bar on degree k; see lambda_star_parity
    bool lambda_star_parity = false;  // Lambda = (-1)^k *bar L *bar on degree k
    bool all_zero() const { return lambda_del && lambda_delbar && laplacians && delta_l && delta_lambda && sl2; }
};

/// L = omega ^ (omega of type (1,1), else InvalidInput), Lambda = L*.
CMatrix lefschetz_L(const BigradedComplex& c, const Vec<Rational>& omega, int r, int s);
CMatrix lefschetz_Lambda(const BigradedComplex& c, const Vec<Rational>& omega, int r, int s);
LefschetzResiduals lefschetz_ops(const BigradedComplex& c, const Vec<Rational>& omega);

struct KahlerHodgeChecks {
    bool preconditions = false;
    std::string precondition_failure;
    bool harmonic_split = false;   // (r,s) parts of Delta-harmonic forms are Delta-harmonic
    bool hodge_symmetry = false;   // h^{r,s} = h^{s,r}
    bool omega_powers = false;     // omega^r harmonic with nonzero Dolbeault class
    std::string witness;
    bool passed() const { return preconditions && harmonic_split && hodge_symmetry && omega_powers; }
};

KahlerHodgeChecks kahler_hodge_checks(const BigradedComplex& c, const Vec<Rational>& omega);

struct DdbarVerdict {
    bool holds = false;
    std::string witness;  // first bidegree where a d-exact pure form is not del delbar-exact
};

DdbarVerdict ddbar_lemma_check(const BigradedComplex& c);

struct FrolicherReport {
    std::vector<std::size_t> betti;
    std::vector<std::size_t> dolbeault_total;
    bool e1_collapse = false;
    std::vector<std::size_t> lhs;    // sum over r+s=k of h_BC + h_A
    std::vector<long> slack;         // lhs - 2 b_k
    bool equality = false;
    DdbarVerdict ddbar;
};

/// Throws InternalInconsistency if a slack is negative or odd, or if equality in
/// every degree disagrees with the ddbar-lemma verdict.
FrolicherReport frolicher(const BigradedComplex& c);

struct DualityCheck {
    bool holds = false;
    std::string witness;
};

/// *bar maps Bott-Chern harmonic (p,s) forms onto Aeppli harmonic (q-p,q-s) forms.
DualityCheck bc_aeppli_duality(const BigradedComplex& c, const TransverseStar& star);

} // namespace foliage
