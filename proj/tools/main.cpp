// foliage command-line front end.
//
// Exit status: 0 computed, 1 invalid input or usage error, 2 internal
// invariant violated.

#include "foliage/basic.hpp"
#include "foliage/catalog.hpp"
#include "foliage/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace foliage;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidInput("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Loaded {
    ModelDocument doc;
    LieAlgebraModel model;
    StructureBundle bundle;
};

Loaded load(const std::string& path)
{
    Loaded l;
    l.doc = load_model_file(path);
    l.model = to_model(l.doc);
    const AlgebraValidation v = validate_algebra(l.model);
    if (!v.valid)
        throw InvalidInput(v.message());
    l.bundle = to_bundle(l.model, l.doc);
    validate_bundle(l.model, l.bundle);
    return l;
}

Matrix<Rational> read_gram(const std::string& path, std::size_t n)
{
    const auto j = nlohmann::json::parse(read_file(path), nullptr, false);
    if (j.is_discarded() || !j.is_array() || j.size() != n)
        throw InvalidInput("Gram file must hold a JSON array of " + std::to_string(n) + " rows");
    Matrix<Rational> g(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        if (!j[r].is_array() || j[r].size() != n)
            throw InvalidInput("Gram row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
        for (std::size_t c = 0; c < n; ++c) {
            const auto& x = j[r][c];
            if (x.is_number_integer())
                g(r, c) = Rational(x.dump(), 10);
            else if (x.is_string())
                g(r, c) = parse_rational(x.get<std::string>());
            else
                throw InvalidInput("Gram entry (" + std::to_string(r) + "," + std::to_string(c) + ") is not rational");
        }
    }
    return g;
}

void print_diamond(const Diamond& d)
{
    for (const auto& row : d.h)
        std::cout << format_dims(row) << "\n";
}

int cmd_validate(const std::string& file)
{
    const std::string text = read_file(file);
    const ParseResult parsed = parse_model(text);
    if (!parsed.ok()) {
        for (const auto& e : parsed.errors)
            std::cerr << to_string(e) << "\n";
        return 1;
    }
    const LieAlgebraModel model = to_model(*parsed.document);
    const AlgebraValidation v = validate_algebra(model);
    if (!v.valid) {
        std::cerr << v.message() << "\n";
        return 1;
    }
    validate_bundle(model, to_bundle(model, *parsed.document));
    std::cout << "valid: " << parsed.document->name << " (dimension " << model.dim() << ")\n";
    return 0;
}

int cmd_classify(const std::string& file, bool verbose)
{
    const Loaded l = load(file);
    if (l.model.dim() % 2 == 0) {
        std::cout << to_string(ContactLevel::Incomplete) << "\n";
        if (verbose)
            std::cout << "  even-dimensional model: no contact structure\n";
        return 0;
    }
    const ClassificationVerdict v = classify(l.model, l.bundle);
    std::cout << to_string(v.level) << "\n";
    if (verbose)
        for (const auto& c : v.sub_checks)
            std::cout << "  " << c.name << ": " << to_string(c.status) << (c.witness.empty() ? "" : " (" + c.witness + ")")
                      << "\n";
    return 0;
}

int cmd_cohomology(const std::string& file, const std::string& theory)
{
    const Loaded l = load(file);
    if (theory == "derham") {
        std::cout << format_dims(betti_numbers(full_complex<Rational>(l.model))) << "\n";
        return 0;
    }
    if (theory == "basic") {
        if (l.doc.foliation_dim != 1 || !l.bundle.xi)
            throw InvalidInput("basic cohomology needs a foliation (xi, or a contact eta)");
        std::cout << format_dims(betti_numbers(basic_subcomplex(l.model, *l.bundle.xi))) << "\n";
        return 0;
    }
    const BigradedAttempt b = bigraded_from_document(l.model, l.doc);
    if (!b.complex)
        throw InvalidInput("no bigraded complex: " + b.reason);
    if (theory == "dolbeault")
        print_diamond(dolbeault(*b.complex));
    else if (theory == "bc")
        print_diamond(bott_chern(*b.complex));
    else
        print_diamond(aeppli(*b.complex));
    return 0;
}

int cmd_obstructions(const std::string& file)
{
    const CohomologyReport r = build_report(load_model_file(file));
    if (!r.data.contains("obstructions"))
        throw InvalidInput("the model carries no structures to obstruct");
    std::cout << r.data["obstructions"].dump(2) << "\n";
    return 0;
}

int cmd_lefschetz(const std::string& file, const std::string& gram)
{
    const Loaded l = load(file);
    const auto m = static_cast<std::size_t>(l.model.dim());
    if (m % 2 == 0 || !l.bundle.eta)
        throw InvalidInput("Hard Lefschetz needs a contact form eta");
    const Matrix<Rational> g = gram == "identity" ? Matrix<Rational>::identity(m) : read_gram(gram, m);
    if (!is_positive_definite(g))
        throw InvalidInput("Gram is not positive definite");
    const int n = l.model.dim() / 2;
    for (const auto& v : hard_lefschetz_check(l.model, *l.bundle.eta, g)) {
        std::cout << "p=" << v.p << ": " << to_string(v.kind) << " H^" << n - v.p << " (" << v.source_dim << ") -> H^"
                  << n + v.p + 1 << " (" << v.target_dim << "), rank " << v.rank;
        if (!v.witness.empty())
            std::cout << "; " << v.witness;
        std::cout << "\n";
    }
    return 0;
}

int cmd_report(const std::string& file, const std::string& format, unsigned threads)
{
    ReportOptions options;
    options.threads = threads;
    const CohomologyReport r = build_report(load_model_file(file), options);
    std::cout << render_report(r, format == "md" ? ReportFormat::Markdown : ReportFormat::Json);
    return 0;
}

int cmd_catalog_list()
{
    for (const auto& e : builtin_catalog())
        std::cout << e.document.name << "\t" << to_string(e.expected) << "\t" << e.summary << "\n";
    return 0;
}

int cmd_catalog_show(const std::string& name)
{
    const CatalogEntry* e = find_catalog_entry(name);
    if (!e)
        throw InvalidInput("no catalog entry named '" + name + "'");
    std::cout << render_model(e->document);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact cohomology of foliated Lie algebra models"};
    app.require_subcommand(1);

    std::string file, theory, format = "json", gram = "identity", name;
    bool verbose = false;
    unsigned threads = 1;

    auto* validate = app.add_subcommand("validate", "Check a model file (syntax, Jacobi identity, structure shapes)");
    validate->add_option("file", file, "model file")->required();

    auto* classify_cmd = app.add_subcommand("classify", "Contact / K-contact / Sasakian level of the structures");
    classify_cmd->add_option("file", file, "model file")->required();
    classify_cmd->add_flag("--verbose", verbose, "list every sub-check");

    auto* cohomology_cmd = app.add_subcommand("cohomology", "Betti numbers or Hodge numbers");
    cohomology_cmd->add_option("file", file, "model file")->required();
    cohomology_cmd->add_option("--theory", theory, "cohomology theory")
        ->required()
        ->check(CLI::IsMember({"derham", "basic", "dolbeault", "bc", "aeppli"}));

    auto* obstructions = app.add_subcommand("obstructions", "Symplectic, orientability, Frolicher, ddbar and Massey checks");
    obstructions->add_option("file", file, "model file")->required();

    auto* lefschetz = app.add_subcommand("lefschetz", "Hard Lefschetz maps for the contact form");
    lefschetz->add_option("file", file, "model file")->required();
    lefschetz->add_option("--gram", gram, "'identity' or a JSON file with the Gram matrix on 1-forms");

    auto* report = app.add_subcommand("report", "Full report");
    report->add_option("file", file, "model file")->required();
    report->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "md"}));
    report->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));

    auto* catalog = app.add_subcommand("catalog", "Built-in models");
    catalog->require_subcommand(1);
    auto* list = catalog->add_subcommand("list", "List built-in models");
    auto* show = catalog->add_subcommand("show", "Print a built-in model as a model file");
    show->add_option("name", name, "entry name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 1;
    }

    try {
        if (*validate)
            return cmd_validate(file);
        if (*classify_cmd)
            return cmd_classify(file, verbose);
        if (*cohomology_cmd)
            return cmd_cohomology(file, theory);
        if (*obstructions)
            return cmd_obstructions(file);
        if (*lefschetz)
            return cmd_lefschetz(file, gram);
        if (*report)
            return cmd_report(file, format, threads);
        if (*list)
            return cmd_catalog_list();
        if (*show)
            return cmd_catalog_show(name);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const InternalInconsistency& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
