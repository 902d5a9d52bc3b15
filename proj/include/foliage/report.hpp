#pragma once

// Full computation for one model document, kept as an ordered JSON tree so the
// rendered output has a fixed key order and can be parsed back unchanged.

#include "foliage/bigraded.hpp"
#include "foliage/document.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace foliage {

struct CohomologyReport {
    nlohmann::ordered_json data;
    bool operator==(const CohomologyReport&) const = default;
};

struct ReportOptions {
    unsigned threads = 1;
    /// Gram on 1-forms for the Hard Lefschetz harmonic representatives; identity when absent.
    std::optional<Matrix<Rational>> lefschetz_gram;
};

/// Transverse bigraded complex of a document, or nullopt with a reason when the
/// document carries no complex structure or the structure does not split d.
struct BigradedAttempt {
    std::optional<BigradedComplex> complex;
    std::string reason;
};

BigradedAttempt bigraded_from_document(const LieAlgebraModel& model, const ModelDocument& doc);

/// Throws InvalidInput on a bad algebra or bundle; InternalInconsistency when two
/// computations contradict each other (e.g. a Sasakian bundle failing Hard Lefschetz).
CohomologyReport build_report(const ModelDocument& doc, const ReportOptions& options = {});

enum class ReportFormat { Json, Markdown };

std::string render_report(const CohomologyReport& report, ReportFormat format);
/// Inverse of the JSON rendering.
CohomologyReport parse_report(const std::string& json);

/// Space-separated dimensions: "1 2 1", diamonds row by row joined with " | ".
std::string format_dims(const std::vector<std::size_t>& dims);

} // namespace foliage
