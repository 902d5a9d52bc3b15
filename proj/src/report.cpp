#include "foliage/report.hpp"

#include "foliage/basic.hpp"
#include "foliage/parallel.hpp"

#include <functional>
#include <sstream>

namespace foliage {

using ojson = nlohmann::ordered_json;

std::string format_dims(const std::vector<std::size_t>& dims)
{
    std::string out;
    for (std::size_t i = 0; i < dims.size(); ++i)
        out += (i ? " " : "") + std::to_string(dims[i]);
    return out;
}

BigradedAttempt bigraded_from_document(const LieAlgebraModel& model, const ModelDocument& doc)
{
    BigradedAttempt out;
    const StructureBundle bundle = to_bundle(model, doc);
    try {
        if (doc.foliation_dim == 0) {
            if (!bundle.phi) {
                out.reason = "no complex structure (J or phi) given";
                return out;
            }
            out.complex = bigraded_from_bundle(model, StructureBundle{std::nullopt, std::nullopt, bundle.phi, bundle.metric});
            return out;
        }
        if (!bundle.eta || !bundle.xi) {
            out.reason = "the foliation needs both eta and xi";
            return out;
        }
        if (bundle.phi) {
            BigradedComplex c = bigraded_from_bundle(model, bundle);
            if (doc.j && *doc.j != c.j)
                throw InvalidInput("J disagrees with phi restricted to ker eta");
            out.complex = std::move(c);
        } else if (doc.j) {
            const Matrix<Rational> frame = transverse_frame(model.dim(), bundle.eta, *bundle.xi);
            std::optional<Matrix<Rational>> metric;
            if (bundle.metric)
                metric = frame.transpose() * *bundle.metric * frame;
            out.complex = build_bigraded(basic_subcomplex(model, *bundle.xi), frame, *doc.j, metric);
        } else {
            out.reason = "no transverse complex structure (J or phi) given";
        }
    } catch (const InvalidInput& e) {
        out.complex.reset();
        out.reason = e.what();
    }
    return out;
}

namespace {

ojson dims_json(const std::vector<std::size_t>& v) { return ojson(v); }

ojson diamond_json(const Diamond& d)
{
    ojson rows = ojson::array();
    for (const auto& row : d.h)
        rows.push_back(ojson(row));
    return rows;
}

ojson checks_json(const std::vector<SubCheck>& checks)
{
    ojson a = ojson::array();
    for (const auto& c : checks)
        a.push_back(ojson{{"name", c.name}, {"status", to_string(c.status)}, {"witness", c.witness}});
    return a;
}

ojson representatives_json(const CochainComplex<Rational>& c)
{
    ojson a = ojson::array();
    for (const auto& g : cohomology(c)) {
        ojson reps = ojson::array();
        for (const auto& r : g.representatives)
            reps.push_back(r.to_string());
        a.push_back(reps);
    }
    return a;
}

std::vector<std::size_t> harmonic_dims(const CochainComplex<Rational>& c, std::size_t m)
{
    std::vector<std::size_t> out;
    for (const auto& h : harmonic_spaces(c, induced_grams(c, Matrix<Rational>::identity(m))))
        out.push_back(h.harmonic.dim());
    return out;
}

ojson massey_json(const MasseySummary& s)
{
    ojson nv = ojson::array();
    for (const auto& x : s.non_vanishing) {
        ojson value = ojson::array();
        for (const auto& v : x.result.value)
            value.push_back(to_string(v));
        nv.push_back(ojson{{"indices", ojson(x.indices)},
                           {"degree", x.result.degree},
                           {"value", value},
                           {"indeterminacy_dim", x.result.indeterminacy.dim()},
                           {"representative", x.result.representative.to_string()}});
    }
    return ojson{{"admissible", s.admissible}, {"vanishing", s.vanishing}, {"non_vanishing", nv}};
}

bool all_isomorphisms(const std::vector<LefschetzVerdict>& v)
{
    for (const auto& x : v)
        if (x.kind != LefschetzKind::Isomorphism)
            return false;
    return true;
}

// Sections are filled by independent tasks, then assembled in a fixed order.
struct Sections {
    ClassificationVerdict verdict;
    bool classified = false;
    std::vector<std::size_t> derham, derham_harmonic;
    ojson derham_reps;
    std::optional<std::vector<std::size_t>> basic, basic_harmonic;
    ojson basic_reps;
    std::optional<Orientability> orientability;
    std::optional<SymplecticObstruction> symplectic;
    std::optional<std::vector<LefschetzVerdict>> lefschetz;
    std::optional<MasseySummary> massey_basic;
    MasseySummary massey_full;
    BigradedAttempt bigraded;

    // bigraded, second phase
    std::optional<Diamond> dolbeault, bott_chern, aeppli;
    std::vector<LaplacianEntry> laplacians;
    std::optional<FrolicherReport> frolicher;
    std::optional<KahlerAudit> audit;
    std::optional<LefschetzResiduals> residuals;
    std::optional<KahlerHodgeChecks> hodge_checks;
    std::optional<MasseySummary> massey_transverse;
    std::optional<DualityCheck> duality;
    std::string duality_skipped;
};

} // namespace

CohomologyReport build_report(const ModelDocument& doc, const ReportOptions& options)
{
    const LieAlgebraModel model = to_model(doc);
    const AlgebraValidation valid = validate_algebra(model);
    if (!valid.valid)
        throw InvalidInput(valid.message());
    const StructureBundle bundle = to_bundle(model, doc);
    validate_bundle(model, bundle);

    const int m = model.dim();
    const auto mz = static_cast<std::size_t>(m);
    const bool odd = m % 2 == 1;
    const bool contact = odd && bundle.eta && is_contact(model, *bundle.eta).contact;
    const bool foliated = doc.foliation_dim == 1 && bundle.xi.has_value();
    const Matrix<Rational> hlt_gram = options.lefschetz_gram.value_or(Matrix<Rational>::identity(mz));
    if (hlt_gram.rows() != mz || hlt_gram.cols() != mz || !is_positive_definite(hlt_gram))
        throw InvalidInput("Lefschetz Gram must be a positive-definite " + std::to_string(m) + "x" + std::to_string(m) +
                           " matrix");
    // Hard Lefschetz is only forced for harmonic forms of the structure's own metric
    bool gram_matches_metric = false;
    if (bundle.metric)
        if (auto inv = inverse(*bundle.metric))
            gram_matches_metric = *inv == hlt_gram;

    Sections s;
    std::vector<std::function<void()>> tasks;
    if (odd && doc.has_structures())
        tasks.push_back([&] {
            s.verdict = classify(model, bundle);
            s.classified = true;
        });
    tasks.push_back([&] {
        const auto full = full_complex<Rational>(model);
        s.derham = betti_numbers(full);
        s.derham_harmonic = harmonic_dims(full, mz);
        s.derham_reps = representatives_json(full);
    });
    tasks.push_back([&] { s.massey_full = massey_h1_samples(full_complex<Rational>(model)); });
    if (foliated) {
        tasks.push_back([&] {
            const auto basic = basic_subcomplex(model, *bundle.xi);
            s.basic = betti_numbers(basic);
            s.basic_harmonic = harmonic_dims(basic, mz);
            s.basic_reps = representatives_json(basic);
            s.orientability = homological_orientability(model, *bundle.xi);
        });
        tasks.push_back([&] { s.massey_basic = massey_h1_samples(basic_subcomplex(model, *bundle.xi)); });
    }
    if (contact) {
        tasks.push_back([&] { s.symplectic = symplectic_obstruction(model, *bundle.eta); });
        tasks.push_back([&] { s.lefschetz = hard_lefschetz_check(model, *bundle.eta, hlt_gram); });
    }
    tasks.push_back([&] { s.bigraded = bigraded_from_document(model, doc); });
    parallel_for(tasks.size(), options.threads, [&](std::size_t i) { tasks[i](); });

    tasks.clear();
    std::optional<Vec<Rational>> omega;
    if (s.bigraded.complex) {
        const BigradedComplex& c = *s.bigraded.complex;
        if (auto w = omega_form(doc))
            omega = c.restrict_form(*w);
        tasks.push_back([&] { s.dolbeault = dolbeault(c); });
        tasks.push_back([&] { s.bott_chern = bott_chern(c); });
        tasks.push_back([&] { s.aeppli = aeppli(c); });
        tasks.push_back([&] { s.laplacians = laplacian_report(c); });
        tasks.push_back([&] { s.frolicher = frolicher(c); });
        tasks.push_back([&] {
            if (c.betti().back() != 1) {
                s.duality_skipped = "transverse complex is not homologically orientable";
                return;
            }
            s.duality = bc_aeppli_duality(c, transverse_star(c, Rational(1)));
        });
        if (omega)
            tasks.push_back([&] {
                s.audit = kahler_audit(c, *omega);
                s.hodge_checks = kahler_hodge_checks(c, *omega);
                if (s.audit->passed())
                    s.residuals = lefschetz_ops(c, *omega);
            });
        if (!foliated)
            tasks.push_back([&] { s.massey_transverse = s.massey_full; });
    }
    parallel_for(tasks.size(), options.threads, [&](std::size_t i) { tasks[i](); });

    // cross-section consistency
    const ContactLevel level = s.classified ? s.verdict.level : ContactLevel::Incomplete;
    if (level == ContactLevel::Sasakian && gram_matches_metric && s.lefschetz && !all_isomorphisms(*s.lefschetz))
        throw InternalInconsistency("bundle classifies Sasakian but Hard Lefschetz fails");
    const MasseySummary* transverse_massey =
        s.massey_basic ? &*s.massey_basic : (s.massey_transverse ? &*s.massey_transverse : nullptr);
    if (s.audit && s.audit->passed() && transverse_massey && !transverse_massey->non_vanishing.empty())
        throw InternalInconsistency("transversely Kahler structure with a non-vanishing Massey product");

    ojson r;
    r["model"] = doc.name;
    r["dimension"] = m;
    r["foliation_dim"] = doc.foliation_dim;
    r["convention"] = "d-no-half";
    ojson assumptions = ojson::array();
    assumptions.push_back("cohomology of the invariant-forms model (left-invariant forms on the Lie algebra)");
    assumptions.push_back("harmonic representatives use the identity Gram on 1-forms unless another Gram is given");
    if (s.bigraded.complex) {
        assumptions.push_back("transverse forms in frame coordinates of D; orientation +e^{1..2q}");
        assumptions.push_back("duality index n read as the complex codimension q");
    }
    r["assumptions"] = assumptions;

    r["classification"] = to_string(level);
    if (s.classified)
        r["sub_checks"] = checks_json(s.verdict.sub_checks);
    r["derham_betti"] = dims_json(s.derham);
    r["derham_representatives"] = s.derham_reps;
    if (s.basic) {
        r["basic_betti"] = dims_json(*s.basic);
        r["basic_representatives"] = s.basic_reps;
    }

    if (s.bigraded.complex) {
        const BigradedComplex& c = *s.bigraded.complex;
        ojson h;
        h["q"] = c.q;
        h["dolbeault"] = diamond_json(*s.dolbeault);
        h["bott_chern"] = diamond_json(*s.bott_chern);
        h["aeppli"] = diamond_json(*s.aeppli);
        ojson lap = ojson::array();
        for (const auto& e : s.laplacians)
            lap.push_back(ojson{{"r", e.r}, {"s", e.s}, {"del", e.del}, {"delbar", e.delbar},
                                {"bott_chern", e.bott_chern}, {"aeppli", e.aeppli}});
        h["laplacian_kernels"] = lap;
        r["hodge"] = h;
    } else if (doc.has_structures() || doc.j) {
        r["hodge_unavailable"] = s.bigraded.reason;
    }

    if (doc.has_structures() || doc.j) {
        ojson ob = ojson::object();
        if (s.symplectic) {
            const auto& x = *s.symplectic;
            ob["symplectic_kernel"] = ojson{{"n", x.n},
                                            {"deta_nonzero", x.deta_nonzero},
                                            {"power_nonzero", x.power_nonzero},
                                            {"deta_maps_to_zero", x.deta_maps_to_zero},
                                            {"power_maps_to_zero", x.power_maps_to_zero},
                                            {"top_noninjective", x.top_noninjective}};
        }
        if (s.orientability)
            ob["orientability"] = ojson{{"codimension", s.orientability->codimension},
                                        {"top_dim", s.orientability->top_dim},
                                        {"orientable", s.orientability->orientable}};
        if (s.lefschetz) {
            ojson v = ojson::array();
            for (const auto& x : *s.lefschetz)
                v.push_back(ojson{{"p", x.p},
                                  {"verdict", to_string(x.kind)},
                                  {"source_dim", x.source_dim},
                                  {"target_dim", x.target_dim},
                                  {"rank", x.rank},
                                  {"witness", x.witness}});
            ob["hard_lefschetz"] = ojson{{"gram", options.lefschetz_gram ? "given" : "identity"},
                                         {"gram_matches_metric", gram_matches_metric},
                                         {"verdicts", v}};
        }
        if (s.frolicher) {
            const auto& f = *s.frolicher;
            ob["frolicher"] = ojson{{"betti", f.betti},         {"dolbeault_total", f.dolbeault_total},
                                    {"bc_plus_aeppli", f.lhs},  {"slack", f.slack},
                                    {"e1_collapse", f.e1_collapse}, {"equality", f.equality}};
            ob["ddbar_lemma"] = ojson{{"holds", f.ddbar.holds}, {"witness", f.ddbar.witness}};
        }
        ojson massey;
        if (s.massey_basic)
            massey["basic"] = massey_json(*s.massey_basic);
        massey["full"] = massey_json(s.massey_full);
        ob["massey"] = massey;
        if (s.audit) {
            const auto& a = *s.audit;
            ojson k;
            k["audit"] = ojson{{"basic", a.basic},       {"closed", a.closed},         {"type_11", a.type_11},
                               {"positive", a.positive}, {"compatible", a.compatible}, {"passed", a.passed()},
                               {"witness", a.witness}};
            if (s.residuals) {
                const auto& x = *s.residuals;
                k["identities"] = ojson{{"lambda_del", x.lambda_del},
                                        {"lambda_delbar", x.lambda_delbar},
                                        {"laplacians", x.laplacians},
                                        {"delta_l", x.delta_l},
                                        {"delta_lambda", x.delta_lambda},
                                        {"sl2", x.sl2},
                                        {"lambda_star_parity", x.lambda_star_parity},
                                        {"all_zero", x.all_zero()}};
            }
            const auto& hc = *s.hodge_checks;
            k["hodge_checks"] = ojson{{"preconditions", hc.preconditions},
                                      {"precondition_failure", hc.precondition_failure},
                                      {"harmonic_split", hc.harmonic_split},
                                      {"hodge_symmetry", hc.hodge_symmetry},
                                      {"omega_powers", hc.omega_powers},
                                      {"passed", hc.passed()},
                                      {"witness", hc.witness}};
            ob["kahler"] = k;
        }
        if (s.duality)
            ob["duality"] = ojson{{"holds", s.duality->holds}, {"witness", s.duality->witness}};
        else if (!s.duality_skipped.empty())
            ob["duality"] = ojson{{"holds", false}, {"witness", s.duality_skipped}};
        r["obstructions"] = ob;
    }

    ojson agree;
    agree["derham_harmonic"] = s.derham_harmonic == s.derham;
    if (s.basic)
        agree["basic_harmonic"] = *s.basic_harmonic == *s.basic;
    if (s.bigraded.complex) {
        const auto expected = s.basic ? *s.basic : s.derham;
        agree["bigraded_betti"] = s.bigraded.complex->betti() == expected;
        agree["laplacian_kernels"] = true;  // laplacian_report throws otherwise
        agree["frolicher_ddbar"] = s.frolicher->equality == s.frolicher->ddbar.holds;
    }
    if (s.lefschetz && level == ContactLevel::Sasakian && gram_matches_metric)
        agree["lefschetz_sasakian"] = all_isomorphisms(*s.lefschetz);
    r["oracle_agreement"] = agree;

    for (const auto& [key, value] : agree.items())
        if (!value.get<bool>())
            throw InternalInconsistency("cross-check " + key + " failed for " + doc.name);
    return CohomologyReport{r};
}

namespace {

bool is_scalar(const ojson& v) { return !v.is_object() && !v.is_array(); }

std::string scalar_md(const ojson& v)
{
    if (v.is_boolean())
        return v.get<bool>() ? "yes" : "no";
    if (v.is_null())
        return "n/a";
    if (v.is_string()) {
        std::string t = v.get<std::string>();
        if (t.empty())
            return "(none)";
        for (char& ch : t)
            if (ch == '`')
                ch = '\'';
        return "`" + t + "`";
    }
    return v.dump();
}

std::string row_md(const ojson& a)
{
    if (a.empty())
        return "(empty)";
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i)
        out += (i ? " " : "") + scalar_md(a[i]);
    return out;
}

bool scalar_array(const ojson& v)
{
    if (!v.is_array())
        return false;
    for (const auto& x : v)
        if (!is_scalar(x))
            return false;
    return true;
}

// sentences read better one per line
bool prose(const ojson& a)
{
    for (const auto& x : a)
        if (x.is_string() && x.get_ref<const std::string&>().find(' ') != std::string::npos)
            return true;
    return false;
}

void value_md(std::ostringstream& os, const std::string& key, const ojson& v, int indent);

void object_fields_md(std::ostringstream& os, const ojson& obj, int indent)
{
    for (const auto& [k, x] : obj.items())
        value_md(os, k, x, indent);
}

void value_md(std::ostringstream& os, const std::string& key, const ojson& v, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (is_scalar(v)) {
        os << pad << "- **" << key << "**: " << scalar_md(v) << "\n";
    } else if (scalar_array(v) && !prose(v)) {
        os << pad << "- **" << key << "**: " << row_md(v) << "\n";
    } else if (scalar_array(v)) {
        os << pad << "- **" << key << "**:\n";
        for (const auto& x : v)
            os << pad << "  - " << scalar_md(x) << "\n";
    } else if (v.is_object()) {
        os << pad << "- **" << key << "**:\n";
        object_fields_md(os, v, indent + 2);
    } else {
        os << pad << "- **" << key << "**:\n";
        for (const auto& x : v) {
            if (scalar_array(x)) {
                os << pad << "  - " << row_md(x) << "\n";
            } else if (x.is_object()) {
                std::string line;
                ojson nested = ojson::object();
                for (const auto& [k, y] : x.items()) {
                    if (is_scalar(y) || scalar_array(y))
                        line += (line.empty() ? "" : ", ") + ("**" + k + "**: ") + (is_scalar(y) ? scalar_md(y) : row_md(y));
                    else
                        nested[k] = y;
                }
                os << pad << "  - " << line << "\n";
                object_fields_md(os, nested, indent + 4);
            } else {
                value_md(os, "item", x, indent + 2);
            }
        }
    }
}

} // namespace

std::string render_report(const CohomologyReport& report, ReportFormat format)
{
    if (format == ReportFormat::Json)
        return report.data.dump() + "\n";
    std::ostringstream os;
    os << "# Cohomology report: " << scalar_md(report.data.value("model", "")) << "\n\n";
    bool in_list = false;
    for (const auto& [key, v] : report.data.items()) {
        if (v.is_object()) {
            os << (in_list ? "\n" : "") << "## " << key << "\n\n";
            object_fields_md(os, v, 0);
            os << "\n";
            in_list = false;
        } else {
            value_md(os, key, v, 0);
            in_list = true;
        }
    }
    return os.str();
}

CohomologyReport parse_report(const std::string& json)
{
    try {
        return CohomologyReport{ojson::parse(json)};
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(std::string("report is not valid JSON: ") + e.what());
    }
}

} // namespace foliage
