#include "foliage/catalog.hpp"

#include <algorithm>

namespace foliage {

namespace {

// [e_i, e_j] = c e_k
struct Rule {
    int i, j, k;
    long c = 1;
};

std::vector<BracketEntry> brackets(const std::vector<Rule>& rules)
{
    std::vector<BracketEntry> out;
    for (const auto& r : rules) {
        auto it = std::find_if(out.begin(), out.end(), [&](const BracketEntry& b) { return b.i == r.i && b.j == r.j; });
        if (it == out.end()) {
            out.push_back({r.i, r.j, {}});
            it = std::prev(out.end());
        }
        it->coeffs[r.k] += r.c;
    }
    return out;
}

Vector unit(int m, int i)
{
    Vector v(static_cast<std::size_t>(m), Rational(0));
    v[static_cast<std::size_t>(i - 1)] = 1;
    return v;
}

// e_{2k-1} -> e_{2k} on the first 2*pairs coordinates
Matrix<Rational> block(std::size_t n, int pairs, int sign = 1)
{
    Matrix<Rational> a(n, n);
    for (int k = 0; k < pairs; ++k) {
        const auto p = static_cast<std::size_t>(2 * k);
        a(p + 1, p) = sign;
        a(p, p + 1) = -sign;
    }
    return a;
}

std::vector<OmegaTerm> kahler_form(int pairs)
{
    std::vector<OmegaTerm> w;
    for (int k = 0; k < pairs; ++k)
        w.push_back({2 * k + 1, 2 * k + 2, Rational(1)});
    return w;
}

ModelDocument contact_model(std::string name, int m, const std::vector<Rule>& rules)
{
    ModelDocument d;
    d.name = std::move(name);
    d.dimension = m;
    d.foliation_dim = 1;
    d.brackets = brackets(rules);
    d.eta = unit(m, m);
    d.xi = unit(m, m);
    d.phi = MatrixField{false, block(static_cast<std::size_t>(m), (m - 1) / 2)};
    d.metric = MatrixField{true, {}};
    return d;
}

ModelDocument heisenberg(int n)
{
    const int m = 2 * n + 1;
    std::vector<Rule> rules;
    for (int k = 1; k <= n; ++k)
        rules.push_back({2 * k - 1, 2 * k, m});
    ModelDocument d = contact_model("h" + std::to_string(m), m, rules);
    d.omega = kahler_form(n);
    return d;
}

ModelDocument complex_model(std::string name, int m, const std::vector<Rule>& rules)
{
    ModelDocument d;
    d.name = std::move(name);
    d.dimension = m;
    d.brackets = brackets(rules);
    d.j = block(static_cast<std::size_t>(m), m / 2);
    d.omega = kahler_form(m / 2);
    return d;
}

std::vector<CatalogEntry> make_catalog()
{
    std::vector<CatalogEntry> c;

    ModelDocument flat = contact_model("abelian3", 3, {});
    c.push_back({flat, ContactLevel::NotContact, "R^3 with eta = e^3; d eta = 0, so eta is not contact"});

    c.push_back({heisenberg(1), ContactLevel::Sasakian, "Heisenberg algebra h3 with its standard Sasakian structure"});
    c.push_back({heisenberg(2), ContactLevel::Sasakian, "Heisenberg algebra h5 with its standard Sasakian structure"});
    c.push_back({heisenberg(3), ContactLevel::Sasakian, "Heisenberg algebra h7 with its standard Sasakian structure"});

    ModelDocument neg = heisenberg(1);
    neg.name = "h3-negphi";
    neg.phi = MatrixField{false, block(3, 1, -1)};
    neg.omega.reset();
    c.push_back({neg, ContactLevel::Contact, "h3 with phi replaced by -phi: g(X, phi X) is never positive"});

    ModelDocument x5 = contact_model("X5", 5, {{1, 2, 4}, {1, 3, 5}, {2, 4, 5}});
    Matrix<Rational> phi(5, 5);
    phi(2, 0) = 1;
    phi(0, 2) = -1;
    phi(3, 1) = 1;
    phi(1, 3) = -1;
    x5.phi = MatrixField{false, phi};
    c.push_back({x5, ContactLevel::KContact,
                 "5-dimensional K-contact nilpotent algebra, not normal; its transverse J has no (1,0)/(0,1) splitting of d"});

    c.push_back({complex_model("kt4", 4, {{1, 2, 3}}), ContactLevel::Incomplete,
                 "h3 x R with an invariant complex structure; non-Kahler, the ddbar-lemma fails"});
    c.push_back({complex_model("iwasawa", 6, {{1, 3, 5}, {2, 4, 5, -1}, {1, 4, 6}, {2, 3, 6}}), ContactLevel::Incomplete,
                 "Iwasawa algebra with its complex-parallelisable structure; the Frolicher sequence does not degenerate at E1"});
    return c;
}

} // namespace

const std::vector<CatalogEntry>& builtin_catalog()
{
    static const std::vector<CatalogEntry> catalog = make_catalog();
    return catalog;
}

const CatalogEntry* find_catalog_entry(const std::string& name)
{
    for (const auto& e : builtin_catalog())
        if (e.document.name == name)
            return &e;
    return nullptr;
}

} // namespace foliage
