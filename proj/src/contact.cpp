#include "foliage/contact.hpp"

#include "foliage/errors.hpp"

#include <sstream>

namespace foliage {

namespace {

std::string vname(std::size_t i) { return "e" + std::to_string(i + 1); }

std::string pair_name(std::size_t i, std::size_t j) { return "(" + vname(i) + "," + vname(j) + ")"; }

Vector coefficients(const Form<Rational>& eta)
{
    Vector v(static_cast<std::size_t>(eta.dim()), Rational(0));
    for (const auto& [m, c] : eta.terms())
        v[static_cast<std::size_t>(std::countr_zero(m))] = c;
    return v;
}

Rational dot(const Vector& a, const Vector& b)
{
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

Matrix<Rational> outer(const Vector& a, const Vector& b)
{
    Matrix<Rational> m(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            m(i, j) = a[i] * b[j];
    return m;
}

/// First nonzero entry of a matrix that should vanish, as "(e_i,e_j): value".
std::optional<std::string> matrix_witness(const Matrix<Rational>& r)
{
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j)
            if (!is_zero(r(i, j)))
                return "pair " + pair_name(i, j) + ": residual " + to_string(r(i, j));
    return std::nullopt;
}

std::optional<std::string> column_witness(const Matrix<Rational>& r)
{
    for (std::size_t j = 0; j < r.cols(); ++j) {
        Vector c = r.column(j);
        if (!is_zero_vector(c))
            return "column " + vname(j) + ": residual " + vector_to_string(c);
    }
    return std::nullopt;
}

SubCheck verdict(std::string name, const std::optional<std::string>& witness)
{
    return {std::move(name), witness ? CheckStatus::Fail : CheckStatus::Pass, witness.value_or("")};
}

SubCheck incomplete(std::string name, std::string missing)
{
    return {std::move(name), CheckStatus::Incomplete, "missing " + missing};
}

std::string missing_fields(const StructureBundle& b, bool eta, bool xi, bool phi, bool metric)
{
    std::vector<std::string> names;
    if (eta && !b.eta)
        names.push_back("eta");
    if (xi && !b.xi)
        names.push_back("xi");
    if (phi && !b.phi)
        names.push_back("phi");
    if (metric && !b.metric)
        names.push_back("metric");
    std::string out;
    for (const auto& n : names)
        out += (out.empty() ? "" : ", ") + n;
    return out;
}

bool in_span(const Vector& v, const Vector& xi)
{
    return Subspace<Rational>::span(xi.size(), {xi}).contains(v);
}

} // namespace

std::string to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::Pass:
        return "pass";
    case CheckStatus::Fail:
        return "fail";
    case CheckStatus::Incomplete:
        return "incomplete";
    }
    return "?";
}

CheckStatus combined_status(const std::vector<SubCheck>& checks)
{
    CheckStatus out = CheckStatus::Pass;
    for (const auto& c : checks) {
        if (c.status == CheckStatus::Incomplete)
            return CheckStatus::Incomplete;
        if (c.status == CheckStatus::Fail)
            out = CheckStatus::Fail;
    }
    return out;
}

std::string to_string(ContactLevel level)
{
    switch (level) {
    case ContactLevel::Incomplete:
        return "Incomplete";
    case ContactLevel::NotContact:
        return "NotContact";
    case ContactLevel::Contact:
        return "Contact";
    case ContactLevel::ContactMetric:
        return "ContactMetric";
    case ContactLevel::KContact:
        return "KContact";
    case ContactLevel::Sasakian:
        return "Sasakian";
    }
    return "?";
}

std::optional<ContactLevel> contact_level_from_string(const std::string& s)
{
    for (auto l : {ContactLevel::Incomplete, ContactLevel::NotContact, ContactLevel::Contact,
                   ContactLevel::ContactMetric, ContactLevel::KContact, ContactLevel::Sasakian})
        if (to_string(l) == s)
            return l;
    return std::nullopt;
}

const SubCheck* ClassificationVerdict::find(const std::string& name) const
{
    for (const auto& c : sub_checks)
        if (c.name == name)
            return &c;
    return nullptr;
}

ContactResult is_contact(const LieAlgebraModel& model, const Form<Rational>& eta)
{
    const int m = model.dim();
    if (m % 2 == 0)
        throw InvalidInput("contact test needs an odd-dimensional model, got dimension " + std::to_string(m));
    if (eta.dim() != m || eta.degree() != 1)
        throw InvalidInput("eta must be a 1-form on the model");
    const Form<Rational> deta = ce_d(model, eta);
    ContactResult out;
    out.volume = wedge(eta, wedge_power(deta, (m - 1) / 2));
    out.top_coefficient = out.volume.coeff((Mask{1} << m) - 1);
    out.contact = !is_zero(out.top_coefficient);
    return out;
}

Matrix<Rational> two_form_matrix(const Form<Rational>& w)
{
    const auto m = static_cast<std::size_t>(w.dim());
    Matrix<Rational> out(m, m);
    for (const auto& [mask, c] : w.terms()) {
        const auto i = static_cast<std::size_t>(std::countr_zero(mask));
        const auto j = static_cast<std::size_t>(31 - std::countl_zero(mask));
        out(i, j) = c;
        out(j, i) = -c;
    }
    return out;
}

Vector reeb_field(const LieAlgebraModel& model, const Form<Rational>& eta)
{
    if (!is_contact(model, eta).contact)
        throw InvalidInput("NotContact: eta ^ (d eta)^n vanishes, no Reeb field");
    const auto m = static_cast<std::size_t>(model.dim());
    // eta(xi) = 1 and Omega^T xi = 0
    Matrix<Rational> a = vstack(Matrix<Rational>::from_rows(m, {coefficients(eta)}),
                                two_form_matrix(ce_d(model, eta)).transpose());
    Vector rhs(a.rows(), Rational(0));
    rhs[0] = 1;
    auto xi = solve(a, rhs);
    if (!xi || rank(a) != m)
        throw InternalInconsistency("Reeb system of a contact form has no unique solution");
    return *xi;
}

Vector nijenhuis(const LieAlgebraModel& model, const Matrix<Rational>& phi, const Vector& x, const Vector& y)
{
    const Vector px = phi * x;
    const Vector py = phi * y;
    Vector out = model.bracket(px, py);
    const Vector a = phi * (phi * model.bracket(x, y));
    const Vector b = phi * model.bracket(x, py);
    const Vector c = phi * model.bracket(px, y);
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] += a[k] - b[k] - c[k];
    return out;
}

void validate_bundle(const LieAlgebraModel& model, const StructureBundle& bundle)
{
    const auto m = static_cast<std::size_t>(model.dim());
    if (bundle.eta && (bundle.eta->dim() != model.dim() || bundle.eta->degree() != 1))
        throw InvalidInput("eta must be a 1-form of the model dimension");
    if (bundle.xi && bundle.xi->size() != m)
        throw InvalidInput("xi has the wrong length");
    if (bundle.phi && (bundle.phi->rows() != m || bundle.phi->cols() != m))
        throw InvalidInput("phi must be a square matrix of the model dimension");
    if (bundle.metric) {
        if (bundle.metric->rows() != m || bundle.metric->cols() != m)
            throw InvalidInput("metric must be a square matrix of the model dimension");
        if (bundle.metric->transpose() != *bundle.metric)
            throw InvalidInput("metric is not symmetric");
        if (!is_positive_definite(*bundle.metric))
            throw InvalidInput("metric is not positive definite");
    }
}

std::vector<SubCheck> almost_contact_check(const LieAlgebraModel& model, const StructureBundle& bundle)
{
    const std::vector<std::string> names{"eta_xi", "phi_squared", "phi_xi", "eta_phi"};
    if (!bundle.eta || !bundle.xi || !bundle.phi) {
        std::vector<SubCheck> out;
        for (const auto& n : names)
            out.push_back(incomplete(n, missing_fields(bundle, true, true, true, false)));
        return out;
    }
    const auto m = static_cast<std::size_t>(model.dim());
    const Vector eta = coefficients(*bundle.eta);
    const Vector& xi = *bundle.xi;
    const Matrix<Rational>& phi = *bundle.phi;

    std::vector<SubCheck> out;
    const Rational ex = dot(eta, xi);
    out.push_back(verdict(names[0], ex == 1 ? std::nullopt : std::optional<std::string>("eta(xi) = " + to_string(ex))));
    const Matrix<Rational> sq = phi * phi + Matrix<Rational>::identity(m) - outer(xi, eta);
    out.push_back(verdict(names[1], column_witness(sq)));
    const Vector pxi = phi * xi;
    out.push_back(verdict(names[2], is_zero_vector(pxi) ? std::nullopt
                                                        : std::optional<std::string>("phi(xi) = " + vector_to_string(pxi))));
    const Matrix<Rational> ep = Matrix<Rational>::from_rows(m, {eta}) * phi;
    out.push_back(verdict(names[3], ep.is_zero() ? std::nullopt
                                                 : std::optional<std::string>("eta o phi = " + vector_to_string(ep.row(0)))));
    if (out[0].passed() && out[1].passed() && !(out[2].passed() && out[3].passed()))
        throw InternalInconsistency("almost contact identities hold but phi(xi) = 0 or eta o phi = 0 fails");
    return out;
}

std::vector<SubCheck> metric_compat_check(const LieAlgebraModel& model, const StructureBundle& bundle)
{
    if (!bundle.eta || !bundle.xi || !bundle.phi || !bundle.metric)
        return {incomplete("metric_compat", missing_fields(bundle, true, true, true, true))};
    (void)model;
    const Vector eta = coefficients(*bundle.eta);
    const Matrix<Rational>& phi = *bundle.phi;
    const Matrix<Rational>& g = *bundle.metric;
    const Matrix<Rational> lhs = phi.transpose() * g * phi;
    const Matrix<Rational> rhs = g - outer(eta, eta);
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t j = 0; j < lhs.cols(); ++j)
            if (lhs(i, j) != rhs(i, j))
                return {verdict("metric_compat", "pair " + pair_name(i, j) + ": g(phi X, phi Y) = " +
                                                     to_string(lhs(i, j)) + ", g(X,Y) - eta(X)eta(Y) = " +
                                                     to_string(rhs(i, j)))};
    return {verdict("metric_compat", std::nullopt)};
}

std::vector<SubCheck> contact_metric_check(const LieAlgebraModel& model, const StructureBundle& bundle)
{
    const std::vector<std::string> names{"reeb", "contact_compat", "deta_phi_invariant", "positivity"};
    if (!bundle.eta || !bundle.xi || !bundle.phi || !bundle.metric) {
        std::vector<SubCheck> out;
        for (const auto& n : names)
            out.push_back(incomplete(n, missing_fields(bundle, true, true, true, true)));
        return out;
    }
    const Matrix<Rational>& phi = *bundle.phi;
    const Matrix<Rational>& g = *bundle.metric;
    const Matrix<Rational> omega = two_form_matrix(ce_d(model, *bundle.eta));

    std::vector<SubCheck> out;
    if (model.dim() % 2 == 0 || !is_contact(model, *bundle.eta).contact) {
        out.push_back(verdict(names[0], "eta is not a contact form"));
    } else {
        const Vector r = reeb_field(model, *bundle.eta);
        out.push_back(verdict(names[0], r == *bundle.xi ? std::nullopt
                                                        : std::optional<std::string>("Reeb field is " + vector_to_string(r))));
    }

    const Matrix<Rational> gphi = g * phi;
    std::optional<std::string> w;
    for (std::size_t i = 0; i < gphi.rows() && !w; ++i)
        for (std::size_t j = 0; j < gphi.cols() && !w; ++j)
            if (gphi(i, j) != omega(i, j))
                w = "pair " + pair_name(i, j) + ": g(X, phi Y) = " + to_string(gphi(i, j)) + ", d eta(X,Y) = " +
                    to_string(omega(i, j));
    out.push_back(verdict(names[1], w));

    out.push_back(verdict(names[2], matrix_witness(phi.transpose() * omega * phi - omega)));

    // (X, Y) -> d eta(phi X, Y), symmetrised and restricted to ker eta
    const Matrix<Rational> s = phi.transpose() * omega;
    Matrix<Rational> sym = s + s.transpose();
    sym *= Rational(1, 2);
    const Matrix<Rational> frame = transverse_frame(model.dim(), bundle.eta, *bundle.xi);
    const Matrix<Rational> restricted = frame.transpose() * sym * frame;
    if (is_positive_definite(restricted)) {
        out.push_back(verdict(names[3], std::nullopt));
    } else {
        std::ostringstream os;
        os << "leading minors of d eta(phi X, Y) on ker eta:";
        for (const auto& x : leading_principal_minors(restricted))
            os << ' ' << to_string(x);
        out.push_back(verdict(names[3], os.str()));
    }
    return out;
}

std::vector<SubCheck> k_contact_check(const LieAlgebraModel& model, const StructureBundle& bundle)
{
    std::vector<SubCheck> out;
    if (!bundle.xi || !bundle.metric) {
        out.push_back(incomplete("killing", missing_fields(bundle, false, true, false, true)));
    } else {
        const Matrix<Rational> a = model.ad(*bundle.xi);
        const Matrix<Rational>& g = *bundle.metric;
        out.push_back(verdict("killing", matrix_witness(a.transpose() * g + g * a)));
    }
    if (!bundle.xi || !bundle.phi)
        out.push_back(incomplete("lie_xi_phi", missing_fields(bundle, false, true, true, false)));
    else
        out.push_back(verdict("lie_xi_phi", column_witness(lie_derivative_endo(model, *bundle.xi, *bundle.phi))));
    return out;
}

std::vector<SubCheck> normality_check(const LieAlgebraModel& model, const StructureBundle& bundle)
{
    if (!bundle.eta || !bundle.xi || !bundle.phi)
        return {incomplete("normality", missing_fields(bundle, true, true, true, false))};
    const Matrix<Rational> omega = two_form_matrix(ce_d(model, *bundle.eta));
    const auto m = static_cast<std::size_t>(model.dim());
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            Vector r = nijenhuis(model, *bundle.phi, model.basis_vector(static_cast<int>(i)),
                                 model.basis_vector(static_cast<int>(j)));
            for (std::size_t k = 0; k < m; ++k)
                r[k] += omega(i, j) * (*bundle.xi)[k];
            if (!is_zero_vector(r))
                return {verdict("normality", "pair " + pair_name(i, j) + ": N_phi + d eta (x) xi = " +
                                                 vector_to_string(r))};
        }
    return {verdict("normality", std::nullopt)};
}

ClassificationVerdict classify(const LieAlgebraModel& model, const StructureBundle& bundle)
{
    validate_bundle(model, bundle);
    ClassificationVerdict out;
    auto append = [&](const std::vector<SubCheck>& v) {
        out.sub_checks.insert(out.sub_checks.end(), v.begin(), v.end());
        return combined_status(v);
    };

    CheckStatus contact = CheckStatus::Incomplete;
    if (!bundle.eta) {
        out.sub_checks.push_back(incomplete("contact", "eta"));
    } else if (model.dim() % 2 == 0) {
        out.sub_checks.push_back(verdict("contact", "even-dimensional model"));
        contact = CheckStatus::Fail;
    } else {
        const ContactResult r = is_contact(model, *bundle.eta);
        out.sub_checks.push_back(verdict(
            "contact", r.contact ? std::nullopt : std::optional<std::string>("eta ^ (d eta)^n = 0")));
        contact = out.sub_checks.back().status;
    }
    const CheckStatus almost = append(almost_contact_check(model, bundle));
    const CheckStatus compat = append(metric_compat_check(model, bundle));
    const CheckStatus cmetric = append(contact_metric_check(model, bundle));
    const std::vector<SubCheck> k = k_contact_check(model, bundle);
    append(k);
    const CheckStatus normal = append(normality_check(model, bundle));

    const bool is_contact_metric = contact == CheckStatus::Pass && almost == CheckStatus::Pass &&
                                   compat == CheckStatus::Pass && cmetric == CheckStatus::Pass;
    if (is_contact_metric && k[0].status != k[1].status)
        throw InternalInconsistency("Killing verdict (" + to_string(k[0].status) + ") and L_xi phi = 0 verdict (" +
                                    to_string(k[1].status) + ") disagree on a contact metric structure");

    if (contact == CheckStatus::Incomplete)
        out.level = ContactLevel::Incomplete;
    else if (contact == CheckStatus::Fail)
        out.level = ContactLevel::NotContact;
    else if (!is_contact_metric)
        out.level = ContactLevel::Contact;
    else if (!(k[0].passed() && k[1].passed()))
        out.level = ContactLevel::ContactMetric;
    else if (normal != CheckStatus::Pass)
        out.level = ContactLevel::KContact;
    else
        out.level = ContactLevel::Sasakian;
    return out;
}

Matrix<Rational> transverse_frame(int dim, const std::optional<Form<Rational>>& eta, const Vector& xi)
{
    const auto m = static_cast<std::size_t>(dim);
    if (eta)
        return kernel_basis(Matrix<Rational>::from_rows(m, {coefficients(*eta)})).columns();
    std::size_t pivot = m;
    for (std::size_t i = 0; i < xi.size(); ++i)
        if (!is_zero(xi[i])) {
            pivot = i;
            break;
        }
    if (pivot == m)
        throw InvalidInput("transverse frame: xi is zero");
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < m; ++i)
        if (i != pivot) {
            Vector v(m, Rational(0));
            v[i] = 1;
            cols.push_back(v);
        }
    return Matrix<Rational>::from_columns(m, cols);
}

TransverseStructure transverse_J(const LieAlgebraModel& model, const StructureBundle& bundle)
{
    if (!bundle.eta || !bundle.xi || !bundle.phi)
        throw InvalidInput("transverse J needs eta, xi and phi");
    validate_bundle(model, bundle);
    const Matrix<Rational>& phi = *bundle.phi;
    const Vector& xi = *bundle.xi;
    TransverseStructure out;
    out.frame = transverse_frame(model.dim(), bundle.eta, xi);
    const Subspace<Rational> d = Subspace<Rational>::column_space(out.frame);
    const std::size_t n = out.frame.cols();
    out.j = Matrix<Rational>(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const Vector img = phi * out.frame.column(k);
        if (!d.contains(img))
            throw InternalInconsistency("phi does not preserve ker eta: phi(" + vector_to_string(out.frame.column(k)) +
                                        ") = " + vector_to_string(img));
        out.j.set_column(k, d.coordinates(img));
    }
    out.squares_to_minus_id = (out.j * out.j + Matrix<Rational>::identity(n)).is_zero();

    out.foliated = true;
    for (std::size_t k = 0; k < n && out.foliated; ++k) {
        const Vector x = out.frame.column(k);
        Vector r = model.bracket(xi, phi * x);
        const Vector b = phi * model.bracket(xi, x);
        for (std::size_t t = 0; t < r.size(); ++t)
            r[t] -= b[t];
        if (!in_span(r, xi)) {
            out.foliated = false;
            out.foliated_witness = "[xi, phi X] - phi [xi, X] = " + vector_to_string(r) + " for X = " +
                                   vector_to_string(x);
        }
    }
    out.integrable = true;
    for (std::size_t a = 0; a < n && out.integrable; ++a)
        for (std::size_t b = a + 1; b < n && out.integrable; ++b) {
            const Vector r = nijenhuis(model, phi, out.frame.column(a), out.frame.column(b));
            if (!in_span(r, xi)) {
                out.integrable = false;
                out.integrable_witness = "N_phi(X, Y) = " + vector_to_string(r) + " for X = " +
                                         vector_to_string(out.frame.column(a)) +
                                         ", Y = " + vector_to_string(out.frame.column(b));
            }
        }
    return out;
}

StructureBundle synthesize_structure(const LieAlgebraModel& model, const Form<Rational>& eta, const Vector& xi,
                                     const Matrix<Rational>& transverse_metric, const Matrix<Rational>& j_bar)
{
    const auto m = static_cast<std::size_t>(model.dim());
    if (eta.dim() != model.dim() || eta.degree() != 1 || xi.size() != m)
        throw InvalidInput("synthesize: eta or xi has the wrong shape");
    if (dot(coefficients(eta), xi) != 1)
        throw InvalidInput("synthesize: eta(xi) must be 1");
    const Matrix<Rational> frame = transverse_frame(model.dim(), eta, xi);
    const std::size_t n = frame.cols();
    if (j_bar.rows() != n || j_bar.cols() != n || transverse_metric.rows() != n || transverse_metric.cols() != n)
        throw InvalidInput("synthesize: transverse data must be " + std::to_string(n) + "x" + std::to_string(n));
    if (!(j_bar * j_bar + Matrix<Rational>::identity(n)).is_zero())
        throw InvalidInput("synthesize: J does not square to -1");
    const Gram<Rational> gbar(transverse_metric);
    if (j_bar.transpose() * transverse_metric * j_bar != transverse_metric)
        throw InvalidInput("synthesize: transverse metric is not J-invariant");

    // P = [frame | xi] is a basis adapted to D + span(xi)
    Matrix<Rational> p = hstack(frame, Matrix<Rational>::from_columns(m, {xi}));
    const auto pinv = inverse(p);
    if (!pinv)
        throw InternalInconsistency("synthesize: xi lies in ker eta");
    Matrix<Rational> g_adapted(m, m);
    Matrix<Rational> phi_adapted(m, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            g_adapted(i, j) = transverse_metric(i, j);
            phi_adapted(i, j) = j_bar(i, j);
        }
    g_adapted(n, n) = 1;

    StructureBundle out;
    out.eta = eta;
    out.xi = xi;
    out.metric = pinv->transpose() * g_adapted * *pinv;
    out.phi = p * phi_adapted * *pinv;
    if (combined_status(almost_contact_check(model, out)) != CheckStatus::Pass ||
        combined_status(metric_compat_check(model, out)) != CheckStatus::Pass)
        throw InternalInconsistency("synthesized structure is not almost contact metric");
    return out;
}

} // namespace foliage
