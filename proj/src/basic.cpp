#include "foliage/basic.hpp"

#include "foliage/contact.hpp"

namespace foliage {

namespace {

/// C^deg coordinates of a ^ b, or the zero vector when deg exceeds the complex.
Vec<Rational> wedge_coords(const CochainComplex<Rational>& c, const Form<Rational>& a, const Form<Rational>& b)
{
    const int deg = a.degree() + b.degree();
    if (deg > c.top())
        return {};
    const Form<Rational> w = wedge(a, b);
    if (!c.contains(w))
        throw InternalInconsistency("complex is not closed under wedge: " + w.to_string());
    return c.coords(w);
}

bool closed_in(const CochainComplex<Rational>& c, const Form<Rational>& f)
{
    return is_zero_vector(c.differential(f.degree()) * c.coords(f));
}

} // namespace

CochainComplex<Rational> basic_subcomplex(const LieAlgebraModel& model, const Vector& xi)
{
    if (xi.size() != static_cast<std::size_t>(model.dim()))
        throw InvalidInput("xi has the wrong length");
    if (is_zero_vector(xi))
        throw InvalidInput("xi must be nonzero");
    std::vector<Subspace<Rational>> spaces;
    for (int k = 0; k < model.dim(); ++k) {
        const Matrix<Rational> ix = interior_matrix(xi, k);
        const Matrix<Rational> ixd = interior_matrix(xi, k + 1) * d_matrix<Rational>(model, k);
        spaces.push_back(kernel_basis(vstack(ix, ixd)));
    }
    return restrict_complex<Rational>(model, std::move(spaces));
}

std::vector<InclusionDegree> inclusion_map(const LieAlgebraModel& model, const Vector& xi)
{
    const CochainComplex<Rational> basic = basic_subcomplex(model, xi);
    const CochainComplex<Rational> full = full_complex<Rational>(model);
    std::vector<InclusionDegree> out;
    for (int k = 0; k <= basic.top(); ++k) {
        const CohomologyGroup<Rational> hb = cohomology_group(basic, k);
        const CohomologyGroup<Rational> hf = cohomology_group(full, k);
        InclusionDegree d;
        d.degree = k;
        d.map = induced_map(hb.quotient, hf.quotient, basic.spaces[static_cast<std::size_t>(k)].columns());
        const std::size_t r = rank(d.map);
        d.kernel_dim = hb.dim() - r;
        d.injective = d.kernel_dim == 0;
        d.surjective = r == hf.dim();
        out.push_back(std::move(d));
    }
    return out;
}

SymplecticObstruction symplectic_obstruction(const LieAlgebraModel& model, const Form<Rational>& eta)
{
    const Vector xi = reeb_field(model, eta);
    const CochainComplex<Rational> basic = basic_subcomplex(model, xi);
    const CochainComplex<Rational> full = full_complex<Rational>(model);
    SymplecticObstruction out;
    out.n = (model.dim() - 1) / 2;
    const Form<Rational> deta = ce_d(model, eta);
    const Form<Rational> power = wedge_power(deta, out.n);

    const CohomologyGroup<Rational> b2 = cohomology_group(basic, 2);
    const CohomologyGroup<Rational> b2n = cohomology_group(basic, 2 * out.n);
    out.deta_nonzero = !b2.quotient.is_zero_class(basic.coords(deta));
    out.power_nonzero = !b2n.quotient.is_zero_class(basic.coords(power));
    out.deta_maps_to_zero = cohomology_group(full, 2).quotient.is_zero_class(deta.coords());
    out.power_maps_to_zero = cohomology_group(full, 2 * out.n).quotient.is_zero_class(power.coords());
    out.top_noninjective = inclusion_map(model, xi)[static_cast<std::size_t>(2 * out.n)].kernel_dim > 0;
    if (out.power_nonzero && out.power_maps_to_zero && !out.top_noninjective)
        throw InternalInconsistency("[d eta]^n is a nonzero basic class killed by inclusion, yet the map is injective");
    return out;
}

Orientability homological_orientability(const LieAlgebraModel& model, const Vector& xi)
{
    const CochainComplex<Rational> basic = basic_subcomplex(model, xi);
    Orientability out;
    out.codimension = model.dim() - 1;
    out.top_dim = betti_numbers(basic)[static_cast<std::size_t>(out.codimension)];
    out.orientable = out.top_dim == 1;
    return out;
}

std::string to_string(LefschetzKind k)
{
    switch (k) {
    case LefschetzKind::Isomorphism:
        return "Isomorphism";
    case LefschetzKind::NotClosed:
        return "NotClosed";
    case LefschetzKind::NotInjective:
        return "NotInjective";
    case LefschetzKind::NotSurjective:
        return "NotSurjective";
    }
    return "?";
}

std::vector<LefschetzVerdict> hard_lefschetz_check(const LieAlgebraModel& model, const Form<Rational>& eta,
                                                   const Matrix<Rational>& one_form_gram)
{
    if (!is_contact(model, eta).contact)
        throw InvalidInput("NotContact: Hard Lefschetz test needs a contact form");
    const int n = (model.dim() - 1) / 2;
    const CochainComplex<Rational> full = full_complex<Rational>(model);
    const std::vector<Gram<Rational>> grams = induced_grams(full, one_form_gram);
    const Form<Rational> deta = ce_d(model, eta);

    std::vector<LefschetzVerdict> out;
    for (int p = 0; p <= n; ++p) {
        LefschetzVerdict v;
        v.p = p;
        const int src = n - p;
        const int tgt = n + p + 1;
        const HarmonicSpace<Rational> h = harmonic_space(full, grams, src);
        const CohomologyGroup<Rational> target = cohomology_group(full, tgt);
        v.source_dim = h.harmonic.dim();
        v.target_dim = target.dim();
        const Form<Rational> w = wedge(eta, wedge_power(deta, p));
        Matrix<Rational> map(target.dim(), h.harmonic.dim());
        bool closed = true;
        for (std::size_t j = 0; j < h.harmonic.dim() && closed; ++j) {
            const Form<Rational> alpha = full.form(src, h.harmonic.vector(j));
            const Form<Rational> beta = wedge(w, alpha);
            if (!ce_d(model, beta).is_zero()) {
                closed = false;
                v.kind = LefschetzKind::NotClosed;
                v.witness = "d(eta ^ (d eta)^" + std::to_string(p) + " ^ alpha) != 0 for harmonic alpha = " +
                            alpha.to_string();
                break;
            }
            map.set_column(j, target.quotient.class_of(beta.coords()));
        }
        if (closed) {
            v.rank = rank(map);
            if (v.rank < v.source_dim) {
                v.kind = LefschetzKind::NotInjective;
                const Subspace<Rational> ker = kernel_basis(map);
                Vec<Rational> combo = h.harmonic.columns() * ker.vector(0);
                v.witness = "harmonic class " + full.form(src, combo).to_string() + " maps to 0";
            } else if (v.rank < v.target_dim) {
                v.kind = LefschetzKind::NotSurjective;
                v.witness = "image has rank " + std::to_string(v.rank) + " < dim H^" + std::to_string(tgt) + " = " +
                            std::to_string(v.target_dim);
            } else {
                v.kind = LefschetzKind::Isomorphism;
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

MasseyResult massey_triple(const CochainComplex<Rational>& c, const Form<Rational>& a, const Form<Rational>& b,
                           const Form<Rational>& cc)
{
    for (const auto* f : {&a, &b, &cc}) {
        if (f->degree() < 1 || !c.contains(*f))
            throw InvalidInput("Massey product arguments must be forms of positive degree in the complex");
        if (!closed_in(c, *f))
            throw InvalidInput("Massey product argument " + f->to_string() + " is not closed");
    }
    const int p = a.degree(), q = b.degree(), r = cc.degree();
    MasseyResult out;
    out.degree = p + q + r - 1;
    if (out.degree > c.top()) {
        out.defined = true;
        out.vanishes = true;
        out.representative = Form<Rational>(c.model_dim, std::min(out.degree, c.model_dim));
        return out;
    }

    auto primitive = [&](const Form<Rational>& u, const Form<Rational>& v, Vec<Rational>& x) {
        const int deg = u.degree() + v.degree();
        if (deg > c.top()) {
            x.assign(c.dim(deg - 1), Rational(0));
            return true;
        }
        const Vec<Rational> w = wedge_coords(c, u, v);
        auto sol = solve(c.differential(deg - 1), w);
        if (!sol) {
            const Vec<Rational> cls = cohomology_group(c, deg).quotient.class_of(w);
            out.failure = "[" + u.to_string() + " ^ " + v.to_string() + "] = " + vector_to_string(cls) +
                          " in H^" + std::to_string(deg) + " is nonzero";
            return false;
        }
        x = *sol;
        return true;
    };
    Vec<Rational> x, y;
    if (!primitive(a, b, x) || !primitive(b, cc, y))
        return out;
    out.defined = true;

    const Form<Rational> xf = c.form(p + q - 1, x);
    const Form<Rational> yf = c.form(q + r - 1, y);
    Form<Rational> value = wedge(xf, cc);
    Form<Rational> second = wedge(a, yf);
    if ((p + 1) % 2)
        second = -second;
    value += second;
    out.representative = value;
    if (!closed_in(c, value))
        throw InternalInconsistency("Massey representative is not closed: " + value.to_string());

    const CohomologyGroup<Rational> target = cohomology_group(c, out.degree);
    out.value = target.quotient.class_of(c.coords(value));
    std::vector<Vec<Rational>> gens;
    for (const auto& h : cohomology_group(c, q + r - 1).representatives)
        gens.push_back(target.quotient.class_of(wedge_coords(c, a, h)));
    for (const auto& h : cohomology_group(c, p + q - 1).representatives)
        gens.push_back(target.quotient.class_of(wedge_coords(c, h, cc)));
    out.indeterminacy = Subspace<Rational>::span(target.dim(), gens);
    out.vanishes = out.indeterminacy.contains(out.value);
    return out;
}

MasseySummary massey_h1_samples(const CochainComplex<Rational>& c)
{
    MasseySummary out;
    if (c.top() < 1)
        return out;
    const std::vector<Form<Rational>> reps = cohomology_group(c, 1).representatives;
    const int n = static_cast<int>(reps.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                MasseyResult r = massey_triple(c, reps[static_cast<std::size_t>(i)], reps[static_cast<std::size_t>(j)],
                                               reps[static_cast<std::size_t>(k)]);
                if (!r.defined)
                    continue;
                ++out.admissible;
                if (r.vanishes)
                    ++out.vanishing;
                else
                    out.non_vanishing.push_back({{i + 1, j + 1, k + 1}, std::move(r)});
            }
    return out;
}

} // namespace foliage
