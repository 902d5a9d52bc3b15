#include "foliage/document.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace foliage {

using ojson = nlohmann::ordered_json;

std::string to_string(const DocumentError& e)
{
    return e.code + (e.path.empty() ? "" : " at " + e.path) + ": " + e.message;
}

namespace {

class Reader {
public:
    std::vector<DocumentError> errors;

    void fail(std::string code, std::string path, std::string message)
    {
        errors.push_back({std::move(code), std::move(path), std::move(message)});
    }

    std::optional<Rational> rational(const ojson& v, const std::string& path)
    {
        if (v.is_number_integer())
            return Rational(v.dump(), 10);
        if (v.is_string()) {
            const auto& s = v.get_ref<const std::string&>();
            if (is_rational_literal(s))
                return parse_rational(s);
            fail("MalformedRational", path, "'" + s + "' is not p, -p or p/q with q != 0");
            return std::nullopt;
        }
        fail("MalformedRational", path, "expected a rational string, got " + v.dump());
        return std::nullopt;
    }

    std::optional<int> integer(const ojson& v, const std::string& path)
    {
        if (v.is_number_integer())
            return v.get<int>();
        fail("TypeError", path, "expected an integer, got " + v.dump());
        return std::nullopt;
    }

    /// 1-based index in [1, dim].
    std::optional<int> index(const ojson& v, const std::string& path, int dim)
    {
        auto i = integer(v, path);
        if (i && (*i < 1 || *i > dim)) {
            fail("IndexRange", path, std::to_string(*i) + " outside [1, " + std::to_string(dim) + "]");
            return std::nullopt;
        }
        return i;
    }

    std::optional<Vector> vector(const ojson& v, const std::string& path, std::size_t n)
    {
        if (!v.is_array()) {
            fail("TypeError", path, "expected an array");
            return std::nullopt;
        }
        if (v.size() != n) {
            fail("DimensionMismatch", path, "length " + std::to_string(v.size()) + ", expected " + std::to_string(n));
            return std::nullopt;
        }
        Vector out;
        bool ok = true;
        for (std::size_t i = 0; i < v.size(); ++i) {
            auto x = rational(v[i], path + "[" + std::to_string(i) + "]");
            ok = ok && x;
            out.push_back(x.value_or(Rational(0)));
        }
        return ok ? std::optional<Vector>(out) : std::nullopt;
    }

    std::optional<Matrix<Rational>> matrix(const ojson& v, const std::string& path, std::size_t n)
    {
        if (!v.is_array()) {
            fail("TypeError", path, "expected an array of rows");
            return std::nullopt;
        }
        if (v.size() != n) {
            fail("DimensionMismatch", path, std::to_string(v.size()) + " rows, expected " + std::to_string(n));
            return std::nullopt;
        }
        Matrix<Rational> m(n, n);
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i) {
            auto row = vector(v[i], path + "[" + std::to_string(i) + "]", n);
            if (!row) {
                ok = false;
                continue;
            }
            m.set_row(i, *row);
        }
        return ok ? std::optional<Matrix<Rational>>(m) : std::nullopt;
    }

    std::optional<MatrixField> matrix_field(const ojson& v, const std::string& path, std::size_t n)
    {
        if (v.is_string() && v.get_ref<const std::string&>() == "identity")
            return MatrixField{true, {}};
        auto m = matrix(v, path, n);
        if (!m)
            return std::nullopt;
        return MatrixField{false, *m};
    }
};

ojson rational_json(const Rational& x) { return to_string(x); }

ojson vector_json(const Vector& v)
{
    ojson a = ojson::array();
    for (const auto& x : v)
        a.push_back(rational_json(x));
    return a;
}

ojson matrix_json(const Matrix<Rational>& m)
{
    ojson a = ojson::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        a.push_back(vector_json(m.row(i)));
    return a;
}

ojson matrix_field_json(const MatrixField& f) { return f.identity ? ojson("identity") : matrix_json(f.values); }

} // namespace

ParseResult parse_model(std::string_view text)
{
    ParseResult result;
    Reader rd;
    ojson root;
    try {
        root = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        result.errors.push_back({"JsonSyntax", "", e.what()});
        return result;
    }
    if (!root.is_object()) {
        result.errors.push_back({"TypeError", "", "top level must be an object"});
        return result;
    }
    static const std::set<std::string> known{"name", "dimension", "foliation_dim", "brackets",
                                             "structures", "J", "omega"};
    for (const auto& [key, value] : root.items())
        if (!known.count(key))
            rd.fail("UnknownField", key, "unrecognised field");

    ModelDocument doc;
    if (!root.contains("name") || !root["name"].is_string())
        rd.fail("MissingField", "name", "a string name is required");
    else
        doc.name = root["name"].get<std::string>();

    if (!root.contains("dimension")) {
        rd.fail("MissingField", "dimension", "required");
    } else if (auto d = rd.integer(root["dimension"], "dimension")) {
        if (*d < 1 || *d > kMaxDimension)
            rd.fail("BadValue", "dimension", "must lie in [1, " + std::to_string(kMaxDimension) + "]");
        else
            doc.dimension = *d;
    }
    const int m = doc.dimension;
    if (m == 0) {
        result.errors = std::move(rd.errors);
        return result;
    }
    const auto mz = static_cast<std::size_t>(m);

    // brackets
    if (root.contains("brackets")) {
        const ojson& list = root["brackets"];
        if (!list.is_array()) {
            rd.fail("TypeError", "brackets", "expected an array");
        } else {
            std::set<std::pair<int, int>> seen;
            for (std::size_t n = 0; n < list.size(); ++n) {
                const std::string path = "brackets[" + std::to_string(n) + "]";
                const ojson& b = list[n];
                if (!b.is_object() || !b.contains("i") || !b.contains("j") || !b.contains("coeffs")) {
                    rd.fail("MissingField", path, "bracket needs i, j and coeffs");
                    continue;
                }
                BracketEntry e;
                auto i = rd.index(b["i"], path + ".i", m);
                auto j = rd.index(b["j"], path + ".j", m);
                if (i && j) {
                    if (*i >= *j)
                        rd.fail("IndexOrder", path, "need i < j, got i=" + std::to_string(*i) + ", j=" + std::to_string(*j));
                    else if (!seen.insert({*i, *j}).second)
                        rd.fail("DuplicateBracket", path, "[e" + std::to_string(*i) + ",e" + std::to_string(*j) + "] given twice");
                    e.i = *i;
                    e.j = *j;
                }
                if (!b["coeffs"].is_object()) {
                    rd.fail("TypeError", path + ".coeffs", "expected an object index -> rational");
                    continue;
                }
                for (const auto& [key, value] : b["coeffs"].items()) {
                    const std::string cpath = path + ".coeffs." + key;
                    int k = 0;
                    try {
                        std::size_t used = 0;
                        k = std::stoi(key, &used);
                        if (used != key.size())
                            k = 0;
                    } catch (const std::exception&) {
                        k = 0;
                    }
                    if (k < 1 || k > m) {
                        rd.fail("IndexRange", cpath, "coefficient index '" + key + "' outside [1, " + std::to_string(m) + "]");
                        continue;
                    }
                    if (e.coeffs.count(k)) {
                        rd.fail("DuplicateBracket", cpath, "coefficient index given twice");
                        continue;
                    }
                    if (auto c = rd.rational(value, cpath))
                        e.coeffs[k] = *c;
                }
                doc.brackets.push_back(std::move(e));
            }
        }
    }

    // structures
    if (root.contains("structures")) {
        const ojson& s = root["structures"];
        if (!s.is_object()) {
            rd.fail("TypeError", "structures", "expected an object");
        } else {
            for (const auto& [key, value] : s.items())
                if (key != "eta" && key != "xi" && key != "phi" && key != "metric")
                    rd.fail("UnknownField", "structures." + key, "unrecognised field");
            if (s.contains("eta"))
                doc.eta = rd.vector(s["eta"], "structures.eta", mz);
            if (s.contains("xi"))
                doc.xi = rd.vector(s["xi"], "structures.xi", mz);
            if (s.contains("phi"))
                doc.phi = rd.matrix_field(s["phi"], "structures.phi", mz);
            if (s.contains("metric"))
                doc.metric = rd.matrix_field(s["metric"], "structures.metric", mz);
        }
    }

    doc.foliation_dim = (doc.eta || doc.xi) ? 1 : 0;
    if (root.contains("foliation_dim")) {
        if (auto f = rd.integer(root["foliation_dim"], "foliation_dim")) {
            if (*f != 0 && *f != 1)
                rd.fail("BadValue", "foliation_dim", "must be 0 or 1");
            else
                doc.foliation_dim = *f;
        }
    }
    if (doc.foliation_dim == 1 && !doc.eta && !doc.xi && root.contains("foliation_dim"))
        rd.fail("MissingField", "structures", "foliation_dim 1 needs eta or xi");

    if (root.contains("J")) {
        const std::size_t n = mz - static_cast<std::size_t>(doc.foliation_dim);
        if (n % 2)
            rd.fail("DimensionMismatch", "J", "transverse dimension " + std::to_string(n) + " is odd");
        else
            doc.j = rd.matrix(root["J"], "J", n);
    }

    if (root.contains("omega")) {
        const ojson& list = root["omega"];
        if (!list.is_array()) {
            rd.fail("TypeError", "omega", "expected an array of {i, j, coeff}");
        } else {
            std::vector<OmegaTerm> terms;
            std::set<std::pair<int, int>> seen;
            for (std::size_t n = 0; n < list.size(); ++n) {
                const std::string path = "omega[" + std::to_string(n) + "]";
                const ojson& t = list[n];
                if (!t.is_object() || !t.contains("i") || !t.contains("j") || !t.contains("coeff")) {
                    rd.fail("MissingField", path, "term needs i, j and coeff");
                    continue;
                }
                auto i = rd.index(t["i"], path + ".i", m);
                auto j = rd.index(t["j"], path + ".j", m);
                auto c = rd.rational(t["coeff"], path + ".coeff");
                if (!i || !j || !c)
                    continue;
                if (*i >= *j) {
                    rd.fail("IndexOrder", path, "need i < j");
                    continue;
                }
                if (!seen.insert({*i, *j}).second) {
                    rd.fail("DuplicateBracket", path, "term e^" + std::to_string(*i) + std::to_string(*j) + " given twice");
                    continue;
                }
                terms.push_back({*i, *j, *c});
            }
            doc.omega = std::move(terms);
        }
    }

    result.errors = std::move(rd.errors);
    if (result.errors.empty())
        result.document = std::move(doc);
    return result;
}

ModelDocument parse_model_or_throw(std::string_view text)
{
    ParseResult r = parse_model(text);
    if (!r.ok()) {
        std::string msg = "invalid model document:";
        for (const auto& e : r.errors)
            msg += "\n  " + to_string(e);
        throw InvalidInput(msg);
    }
    return std::move(*r.document);
}

ModelDocument load_model_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidInput("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_model_or_throw(os.str());
}

std::string render_model(const ModelDocument& doc)
{
    ojson root;
    root["name"] = doc.name;
    root["dimension"] = doc.dimension;
    root["foliation_dim"] = doc.foliation_dim;
    ojson brackets = ojson::array();
    for (const auto& b : doc.brackets) {
        ojson e;
        e["i"] = b.i;
        e["j"] = b.j;
        ojson coeffs = ojson::object();
        for (const auto& [k, c] : b.coeffs)
            coeffs[std::to_string(k)] = rational_json(c);
        e["coeffs"] = coeffs;
        brackets.push_back(e);
    }
    root["brackets"] = brackets;
    if (doc.has_structures()) {
        ojson s = ojson::object();
        if (doc.eta)
            s["eta"] = vector_json(*doc.eta);
        if (doc.xi)
            s["xi"] = vector_json(*doc.xi);
        if (doc.phi)
            s["phi"] = matrix_field_json(*doc.phi);
        if (doc.metric)
            s["metric"] = matrix_field_json(*doc.metric);
        root["structures"] = s;
    }
    if (doc.j)
        root["J"] = matrix_json(*doc.j);
    if (doc.omega) {
        ojson terms = ojson::array();
        for (const auto& t : *doc.omega)
            terms.push_back(ojson{{"i", t.i}, {"j", t.j}, {"coeff", rational_json(t.coeff)}});
        root["omega"] = terms;
    }
    return root.dump(2) + "\n";
}

LieAlgebraModel to_model(const ModelDocument& doc)
{
    LieAlgebraModel::BracketTable table;
    const auto m = static_cast<std::size_t>(doc.dimension);
    for (const auto& b : doc.brackets) {
        Vector v(m, Rational(0));
        for (const auto& [k, c] : b.coeffs)
            v[static_cast<std::size_t>(k - 1)] = c;
        if (is_zero_vector(v))
            continue;
        table[{b.i - 1, b.j - 1}] = v;
    }
    return LieAlgebraModel(doc.dimension, table);
}

StructureBundle to_bundle(const LieAlgebraModel& model, const ModelDocument& doc)
{
    StructureBundle b;
    const auto m = static_cast<std::size_t>(doc.dimension);
    if (doc.eta) {
        Form<Rational> eta(doc.dimension, 1);
        for (std::size_t i = 0; i < m; ++i)
            eta.add(Mask{1} << i, (*doc.eta)[i]);
        b.eta = eta;
    }
    b.xi = doc.xi;
    if (!b.xi && b.eta && m % 2 && is_contact(model, *b.eta).contact)
        b.xi = reeb_field(model, *b.eta);
    if (doc.phi)
        b.phi = doc.phi->resolve(m);
    else if (doc.j && doc.foliation_dim == 0)
        b.phi = *doc.j;
    if (doc.metric)
        b.metric = doc.metric->resolve(m);
    return b;
}

std::optional<Form<Rational>> omega_form(const ModelDocument& doc)
{
    if (!doc.omega)
        return std::nullopt;
    Form<Rational> w(doc.dimension, 2);
    for (const auto& t : *doc.omega)
        w.add((Mask{1} << (t.i - 1)) | (Mask{1} << (t.j - 1)), t.coeff);
    return w;
}

} // namespace foliage
