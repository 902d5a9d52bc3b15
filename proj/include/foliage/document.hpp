#pragma once

// JSON model files. Rationals are strings ("3", "-1/2"); bare JSON integers are
// accepted on input and written back as strings.
//
//   {
//     "name": "h3", "dimension": 3, "foliation_dim": 1,
//     "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "1"}}],
//     "structures": {"eta": [...], "xi": [...], "phi": [[...], ...] | "identity", "metric": ...},
//     "J": [[...], ...],
//     "omega": [{"i": 1, "j": 2, "coeff": "1"}]
//   }
//
// Matrices are row-major. J acts on the transverse frame (ker eta, or the whole
// space when foliation_dim is 0); omega is a 2-form in model indices.

#include "foliage/contact.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace foliage {

struct BracketEntry {
    int i = 0, j = 0;
    std::map<int, Rational> coeffs;  // k -> c^k_ij, 1-based
    bool operator==(const BracketEntry&) const = default;
};

struct MatrixField {
    bool identity = false;
    Matrix<Rational> values;  // empty when identity
    bool operator==(const MatrixField&) const = default;
    Matrix<Rational> resolve(std::size_t n) const { return identity ? Matrix<Rational>::identity(n) : values; }
};

struct OmegaTerm {
    int i = 0, j = 0;
    Rational coeff;
    bool operator==(const OmegaTerm&) const = default;
};

struct ModelDocument {
    std::string name;
    int dimension = 0;
    int foliation_dim = 0;
    std::vector<BracketEntry> brackets;
    std::optional<Vector> eta;
    std::optional<Vector> xi;
    std::optional<MatrixField> phi;
    std::optional<MatrixField> metric;
    std::optional<Matrix<Rational>> j;
    std::optional<std::vector<OmegaTerm>> omega;

    bool has_structures() const { return eta || xi || phi || metric; }
    bool operator==(const ModelDocument&) const = default;
};

struct DocumentError {
    std::string code;  // JsonSyntax, MissingField, TypeError, MalformedRational, IndexRange,
                       // IndexOrder, DuplicateBracket, DimensionMismatch, BadValue, UnknownField
    std::string path;  // JSON pointer-ish location, e.g. brackets[0].coeffs.3
    std::string message;
};

std::string to_string(const DocumentError& e);

struct ParseResult {
    std::optional<ModelDocument> document;
    std::vector<DocumentError> errors;  // every problem found, in document order
    bool ok() const { return errors.empty(); }
};

ParseResult parse_model(std::string_view text);

/// Parses or throws InvalidInput listing every error.
ModelDocument parse_model_or_throw(std::string_view text);
ModelDocument load_model_file(const std::string& path);

std::string render_model(const ModelDocument& doc);

LieAlgebraModel to_model(const ModelDocument& doc);

/// eta as a form; xi defaults to the Reeb field when eta is contact and xi is absent.
/// Without a foliation, J stands in for a missing phi.
StructureBundle to_bundle(const LieAlgebraModel& model, const ModelDocument& doc);

std::optional<Form<Rational>> omega_form(const ModelDocument& doc);

} // namespace foliage
