#pragma once

// Basic forms of the foliation spanned by xi, the inclusion into the full
// complex, the contact obstruction, Hard Lefschetz and Massey products.

#include "foliage/complex.hpp"

#include <optional>
#include <string>
#include <vector>

namespace foliage {

/// B^k = {alpha : i_xi alpha = 0, i_xi d alpha = 0}, degrees 0..m-1.
CochainComplex<Rational> basic_subcomplex(const LieAlgebraModel& model, const Vector& xi);

struct InclusionDegree {
    int degree = 0;
    Matrix<Rational> map;  // H^k(M,F) -> H^k(M) in representative coordinates
    std::size_t kernel_dim = 0;
    bool injective = false;
    bool surjective = false;
};

std::vector<InclusionDegree> inclusion_map(const LieAlgebraModel& model, const Vector& xi);

struct SymplecticObstruction {
    int n = 0;
    bool deta_nonzero = false;    // [d eta] != 0 in H^2(M,F)
    bool power_nonzero = false;   // [d eta]^n != 0 in H^{2n}(M,F)
    bool deta_maps_to_zero = false;
    bool power_maps_to_zero = false;
    bool top_noninjective = false;  // degree-2n inclusion map has a kernel
    bool consistent() const
    {
        return deta_nonzero && power_nonzero && deta_maps_to_zero && power_maps_to_zero;
    }
};

/// Throws InvalidInput if eta is not contact.
SymplecticObstruction symplectic_obstruction(const LieAlgebraModel& model, const Form<Rational>& eta);

struct Orientability {
    int codimension = 0;
    std::size_t top_dim = 0;
    bool orientable = false;
};

Orientability homological_orientability(const LieAlgebraModel& model, const Vector& xi);

enum class LefschetzKind { Isomorphism, NotClosed, NotInjective, NotSurjective };

std::string to_string(LefschetzKind k);

struct LefschetzVerdict {
    int p = 0;
    LefschetzKind kind = LefschetzKind::Isomorphism;
    std::size_t source_dim = 0;  // dim H^{n-p}
    std::size_t target_dim = 0;  // dim H^{n+p+1}
    std::size_t rank = 0;
    std::string witness;
};

/// For p = 0..n: harmonic reps alpha of H^{n-p}(M) for the forms Gram induced by
/// one_form_gram, beta = eta ^ (d eta)^p ^ alpha, then [alpha] -> [beta].
std::vector<LefschetzVerdict> hard_lefschetz_check(const LieAlgebraModel& model, const Form<Rational>& eta,
                                                   const Matrix<Rational>& one_form_gram);

struct MasseyResult {
    bool defined = false;
    std::string failure;                // precondition failure with the offending class
    int degree = 0;                     // p + q + r - 1
    Vec<Rational> value;                // class coordinates in H^degree
    Subspace<Rational> indeterminacy;   // in H^degree class coordinates
    bool vanishes = false;
    Form<Rational> representative;
};

/// <[a],[b],[c]> = [x ^ c + (-1)^{deg a + 1} a ^ y] with dx = a ^ b, dy = b ^ c.
/// a, b, c must be closed forms of the complex.
MasseyResult massey_triple(const CochainComplex<Rational>& c, const Form<Rational>& a, const Form<Rational>& b,
                           const Form<Rational>& cc);

struct MasseySample {
    std::array<int, 3> indices{};  // 1-based indices into the H^1 representatives
    MasseyResult result;
};

struct MasseySummary {
    std::size_t admissible = 0;
    std::size_t vanishing = 0;
    std::vector<MasseySample> non_vanishing;
};

/// All triples of H^1 representatives.
MasseySummary massey_h1_samples(const CochainComplex<Rational>& c);

} // namespace foliage
