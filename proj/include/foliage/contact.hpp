#pragma once

// Contact / K-contact / Sasakian audit of invariant structures on a model.
//
// All identities are checked with the no-1/2 differential: compatibility is
// g(X, phi Y) = d eta(X, Y) and normality is N_phi + d eta (x) xi = 0.
// The metric is a Gram matrix on vectors, g_ij = g(e_i, e_j).

#include "foliage/exterior.hpp"

#include <optional>
#include <string>
#include <vector>

namespace foliage {

struct StructureBundle {
    std::optional<Form<Rational>> eta;
    std::optional<Vector> xi;
    std::optional<Matrix<Rational>> phi;     // column j is phi(e_j)
    std::optional<Matrix<Rational>> metric;  // g(e_i, e_j)
};

enum class CheckStatus { Pass, Fail, Incomplete };

std::string to_string(CheckStatus s);

struct SubCheck {
    std::string name;
    CheckStatus status = CheckStatus::Incomplete;
    std::string witness;  // empty on pass

    bool passed() const { return status == CheckStatus::Pass; }
};

/// Pass iff every entry passes; Incomplete dominates Fail.
CheckStatus combined_status(const std::vector<SubCheck>& checks);

enum class ContactLevel { Incomplete, NotContact, Contact, ContactMetric, KContact, Sasakian };

std::string to_string(ContactLevel level);
std::optional<ContactLevel> contact_level_from_string(const std::string& s);

struct ClassificationVerdict {
    ContactLevel level = ContactLevel::Incomplete;
    std::vector<SubCheck> sub_checks;  // in chain order

    const SubCheck* find(const std::string& name) const;
};

struct ContactResult {
    bool contact = false;
    Rational top_coefficient;  // coefficient of eta ^ (d eta)^n on e^{1...m}
    Form<Rational> volume;
};

/// Throws InvalidInput on an even-dimensional model.
ContactResult is_contact(const LieAlgebraModel& model, const Form<Rational>& eta);

/// Unique xi with eta(xi) = 1 and i_xi d eta = 0. Throws InvalidInput when eta is not contact.
Vector reeb_field(const LieAlgebraModel& model, const Form<Rational>& eta);

/// Matrix Omega_ij = (d eta)(e_i, e_j).
Matrix<Rational> two_form_matrix(const Form<Rational>& w);

/// N_phi(X, Y) = [phi X, phi Y] + phi^2 [X, Y] - phi [X, phi Y] - phi [phi X, Y].
Vector nijenhuis(const LieAlgebraModel& model, const Matrix<Rational>& phi, const Vector& x, const Vector& y);

/// Shape checks on the bundle fields; throws InvalidInput.
void validate_bundle(const LieAlgebraModel& model, const StructureBundle& bundle);

// Each audit returns its named sub-checks. Missing fields give Incomplete entries.
std::vector<SubCheck> almost_contact_check(const LieAlgebraModel& model, const StructureBundle& bundle);
std::vector<SubCheck> metric_compat_check(const LieAlgebraModel& model, const StructureBundle& bundle);
std::vector<SubCheck> contact_metric_check(const LieAlgebraModel& model, const StructureBundle& bundle);
/// Killing and L_xi phi = 0, reported separately.
std::vector<SubCheck> k_contact_check(const LieAlgebraModel& model, const StructureBundle& bundle);
std::vector<SubCheck> normality_check(const LieAlgebraModel& model, const StructureBundle& bundle);

/// Runs the full tower. Throws InternalInconsistency if the Killing and L_xi phi
/// verdicts disagree on a contact metric structure.
ClassificationVerdict classify(const LieAlgebraModel& model, const StructureBundle& bundle);

struct TransverseStructure {
    Matrix<Rational> frame;  // m x 2q, columns span D = ker eta
    Matrix<Rational> j;      // phi restricted to D in frame coordinates
    bool squares_to_minus_id = false;
    bool foliated = false;
    bool integrable = false;
    std::string foliated_witness;
    std::string integrable_witness;
};

/// Canonical basis of ker eta (columns), or all of R^m minus xi's pivot when eta is absent.
Matrix<Rational> transverse_frame(int dim, const std::optional<Form<Rational>>& eta, const Vector& xi);

/// Requires eta, xi, phi. Throws InternalInconsistency if phi does not preserve ker eta.
TransverseStructure transverse_J(const LieAlgebraModel& model, const StructureBundle& bundle);

/// Almost contact metric structure from transverse data on D = ker eta
/// (transverse_metric and j_bar are in transverse_frame coordinates).
StructureBundle synthesize_structure(const LieAlgebraModel& model, const Form<Rational>& eta, const Vector& xi,
                                     const Matrix<Rational>& transverse_metric, const Matrix<Rational>& j_bar);

} // namespace foliage
