#include "test_support.hpp"

#include "foliage/errors.hpp"

#include <doctest.h>

using namespace foliage;
using namespace foliage::testing;

namespace {

StructureBundle negated(StructureBundle b)
{
    b.phi = -*b.phi;
    return b;
}

// h5 with the second block reversed: e3 -> -e4, e4 -> e3
StructureBundle twisted_h5()
{
    StructureBundle b = heisenberg_bundle(2);
    Matrix<Rational> phi = *b.phi;
    phi(3, 2) = -1;
    phi(2, 3) = 1;
    b.phi = phi;
    return b;
}

CheckStatus status_of(const std::vector<SubCheck>& v, const std::string& name)
{
    for (const auto& c : v)
        if (c.name == name)
            return c.status;
    FAIL("no sub-check " << name);
    return CheckStatus::Incomplete;
}

std::string witness_of(const std::vector<SubCheck>& v, const std::string& name)
{
    for (const auto& c : v)
        if (c.name == name)
            return c.witness;
    return {};
}

Matrix<Rational> rotation()
{
    Matrix<Rational> j(2, 2);
    j(1, 0) = 1;
    j(0, 1) = -1;
    return j;
}

} // namespace

TEST_CASE("contact volume")
{
    const ContactResult h = is_contact(h3(), e(3, {3}));
    CHECK(h.contact);
    CHECK(h.volume == -e(3, {1, 2, 3}));
    CHECK(h.top_coefficient == -1);

    CHECK_FALSE(is_contact(abelian(3), e(3, {3})).contact);

    const ContactResult h5r = is_contact(h5(), e(5, {5}));
    CHECK(h5r.contact);
    CHECK(h5r.top_coefficient == 2);

    CHECK(is_contact(x5(), e(5, {5})).contact);
    CHECK_FALSE(is_contact(x5(), e(5, {4})).contact);
    CHECK_THROWS_AS(is_contact(kt4(), e(4, {3})), InvalidInput);
}

TEST_CASE("Reeb field")
{
    CHECK(reeb_field(h3(), e(3, {3})) == unit(3, 3));
    CHECK(reeb_field(h5(), e(5, {5})) == unit(5, 5));
    CHECK(reeb_field(h7(), e(7, {7})) == unit(7, 7));
    CHECK(reeb_field(x5(), e(5, {5})) == unit(5, 5));
    CHECK_THROWS_WITH_AS(reeb_field(abelian(3), e(3, {3})), doctest::Contains("NotContact"), InvalidInput);

    // eta = e^3 + e^1 on h3: xi must satisfy eta(xi) = 1 and i_xi d eta = 0
    const Form<Rational> eta = e(3, {3}) + e(3, {1});
    const Vector xi = reeb_field(h3(), eta);
    CHECK(evaluate(eta, {xi}) == 1);
    CHECK(interior(xi, ce_d(h3(), eta)).is_zero());
}

TEST_CASE("almost contact audit")
{
    const StructureBundle b = heisenberg_bundle(1);
    auto checks = almost_contact_check(h3(), b);
    CHECK(combined_status(checks) == CheckStatus::Pass);
    CHECK(checks.size() == 4);

    StructureBundle zero = b;
    zero.phi = Matrix<Rational>(3, 3);
    checks = almost_contact_check(h3(), zero);
    CHECK(status_of(checks, "phi_squared") == CheckStatus::Fail);
    CHECK(witness_of(checks, "phi_squared").find("e1") != std::string::npos);

    CHECK(combined_status(almost_contact_check(h3(), negated(b))) == CheckStatus::Pass);

    StructureBundle partial;
    partial.eta = e(3, {3});
    checks = almost_contact_check(h3(), partial);
    CHECK(combined_status(checks) == CheckStatus::Incomplete);
    CHECK(witness_of(checks, "eta_xi") == "missing xi, phi");
}

TEST_CASE("metric compatibility")
{
    StructureBundle b = heisenberg_bundle(1);
    CHECK(metric_compat_check(h3(), b)[0].passed());

    Matrix<Rational> g = Matrix<Rational>::identity(3);
    g(1, 1) = 2;
    b.metric = g;
    const SubCheck c = metric_compat_check(h3(), b)[0];
    CHECK(c.status == CheckStatus::Fail);
    CHECK(c.witness.find("(e1,e1)") != std::string::npos);
    CHECK(c.witness.find("= 2") != std::string::npos);
}

TEST_CASE("contact metric audit")
{
    const StructureBundle b = heisenberg_bundle(1);
    CHECK(combined_status(contact_metric_check(h3(), b)) == CheckStatus::Pass);

    const auto flipped = contact_metric_check(h3(), negated(b));
    CHECK(status_of(flipped, "positivity") == CheckStatus::Fail);
    CHECK(status_of(flipped, "reeb") == CheckStatus::Pass);

    CHECK(combined_status(contact_metric_check(h5(), heisenberg_bundle(2))) == CheckStatus::Pass);
    CHECK(combined_status(contact_metric_check(h7(), heisenberg_bundle(3))) == CheckStatus::Pass);

    StructureBundle wrong_xi = b;
    wrong_xi.xi = unit(3, 1);
    CHECK(status_of(contact_metric_check(h3(), wrong_xi), "reeb") == CheckStatus::Fail);
}

TEST_CASE("K-contact audit")
{
    CHECK(combined_status(k_contact_check(h3(), heisenberg_bundle(1))) == CheckStatus::Pass);
    CHECK(combined_status(k_contact_check(h5(), heisenberg_bundle(2))) == CheckStatus::Pass);

    // [e3, e1] = e1: ad_{e3} is not skew for the identity metric
    const LieAlgebraModel solvable = make_model(3, {{3, 1, 1}});
    StructureBundle b;
    b.xi = unit(3, 3);
    b.metric = Matrix<Rational>::identity(3);
    const auto checks = k_contact_check(solvable, b);
    CHECK(status_of(checks, "killing") == CheckStatus::Fail);
    CHECK(witness_of(checks, "killing").find("(e1,e1)") != std::string::npos);
    CHECK(status_of(checks, "lie_xi_phi") == CheckStatus::Incomplete);
}

TEST_CASE("normality audit")
{
    CHECK(normality_check(h3(), heisenberg_bundle(1))[0].passed());

    StructureBundle flat = heisenberg_bundle(1);
    CHECK(normality_check(abelian(3), flat)[0].passed());

    // N_phi is quadratic in phi, so reversing one block keeps the structure normal
    CHECK(normality_check(h5(), twisted_h5())[0].passed());

    const SubCheck x = normality_check(x5(), x5_bundle())[0];
    CHECK(x.status == CheckStatus::Fail);
    CHECK(x.witness.find("(e1,e2)") != std::string::npos);
}

TEST_CASE("Nijenhuis tensor by hand on h3")
{
    const Vector n = nijenhuis(h3(), block_phi(3, 1), unit(3, 1), unit(3, 2));
    CHECK(n == unit(3, 3));
}

TEST_CASE("classification tower")
{
    CHECK(classify(h3(), heisenberg_bundle(1)).level == ContactLevel::Sasakian);
    CHECK(classify(h5(), heisenberg_bundle(2)).level == ContactLevel::Sasakian);
    CHECK(classify(h7(), heisenberg_bundle(3)).level == ContactLevel::Sasakian);
    CHECK(classify(abelian(3), heisenberg_bundle(1)).level == ContactLevel::NotContact);
    CHECK(classify(x5(), x5_bundle()).level == ContactLevel::KContact);

    const ClassificationVerdict twisted = classify(h5(), twisted_h5());
    CHECK(twisted.level == ContactLevel::Contact);
    CHECK(twisted.find("contact_compat")->status == CheckStatus::Fail);
    CHECK(twisted.find("normality")->passed());

    const ClassificationVerdict flipped = classify(h3(), negated(heisenberg_bundle(1)));
    CHECK(flipped.level == ContactLevel::Contact);
    CHECK(flipped.find("positivity")->status == CheckStatus::Fail);

    CHECK(classify(h3(), StructureBundle{}).level == ContactLevel::Incomplete);
    StructureBundle only_eta;
    only_eta.eta = e(3, {3});
    const ClassificationVerdict v = classify(h3(), only_eta);
    CHECK(v.level == ContactLevel::Contact);
    CHECK(v.find("normality")->status == CheckStatus::Incomplete);

    StructureBundle even;
    even.eta = e(4, {3});
    CHECK(classify(kt4(), even).level == ContactLevel::NotContact);
}

TEST_CASE("classification rejects malformed bundles")
{
    StructureBundle b = heisenberg_bundle(1);
    b.metric = Matrix<Rational>(3, 3);
    CHECK_THROWS_AS(classify(h3(), b), InvalidInput);
    b = heisenberg_bundle(1);
    b.xi = unit(5, 1);
    CHECK_THROWS_AS(classify(h3(), b), InvalidInput);
}

TEST_CASE("level names round trip")
{
    for (auto l : {ContactLevel::Incomplete, ContactLevel::NotContact, ContactLevel::Contact,
                   ContactLevel::ContactMetric, ContactLevel::KContact, ContactLevel::Sasakian})
        CHECK(contact_level_from_string(to_string(l)) == l);
    CHECK_FALSE(contact_level_from_string("sasakian").has_value());
}

TEST_CASE("transverse complex structure")
{
    const TransverseStructure h = transverse_J(h3(), heisenberg_bundle(1));
    CHECK(h.j == rotation());
    CHECK(h.squares_to_minus_id);
    CHECK(h.foliated);
    CHECK(h.integrable);

    const TransverseStructure t = transverse_J(h5(), twisted_h5());
    CHECK(t.squares_to_minus_id);
    CHECK(t.integrable);

    const TransverseStructure x = transverse_J(x5(), x5_bundle());
    CHECK(x.foliated);
    CHECK_FALSE(x.integrable);
    CHECK_FALSE(x.integrable_witness.empty());

    const TransverseStructure a = transverse_J(abelian(3), heisenberg_bundle(1));
    CHECK(a.foliated);
    CHECK(a.integrable);
}

TEST_CASE("synthesized structures")
{
    const StructureBundle s = synthesize_structure(h3(), e(3, {3}), unit(3, 3), Matrix<Rational>::identity(2), rotation());
    const StructureBundle standard = heisenberg_bundle(1);
    CHECK(*s.phi == *standard.phi);
    CHECK(*s.metric == *standard.metric);

    const StructureBundle flat =
        synthesize_structure(abelian(3), e(3, {3}), unit(3, 3), Matrix<Rational>::identity(2), rotation());
    CHECK(classify(abelian(3), flat).level == ContactLevel::NotContact);

    const StructureBundle s5 = synthesize_structure(h5(), e(5, {5}), unit(5, 5), Matrix<Rational>::identity(4),
                                                    block_phi(4, 2));
    CHECK(classify(h5(), s5).level == ContactLevel::Sasakian);

    Matrix<Rational> skewed = Matrix<Rational>::identity(2);
    skewed(1, 1) = 2;
    CHECK_THROWS_AS(synthesize_structure(h3(), e(3, {3}), unit(3, 3), skewed, rotation()), InvalidInput);
    CHECK_THROWS_AS(synthesize_structure(h3(), e(3, {3}), unit(3, 1), Matrix<Rational>::identity(2), rotation()),
                    InvalidInput);
}

TEST_CASE("negating phi flips only the positivity verdict")
{
    const std::vector<std::pair<LieAlgebraModel, StructureBundle>> cases{
        {h3(), heisenberg_bundle(1)}, {h5(), heisenberg_bundle(2)}, {h7(), heisenberg_bundle(3)}};
    for (const auto& [m, b] : cases) {
        CHECK(combined_status(almost_contact_check(m, negated(b))) == CheckStatus::Pass);
        CHECK(status_of(contact_metric_check(m, b), "positivity") == CheckStatus::Pass);
        CHECK(status_of(contact_metric_check(m, negated(b)), "positivity") == CheckStatus::Fail);
    }
}

TEST_CASE("synthesized structures on h5 are almost contact metric and never drop below Contact")
{
    std::mt19937 rng(53);
    const Matrix<Rational> j = block_phi(4, 2);
    for (int trial = 0; trial < 15; ++trial) {
        const Matrix<Rational> a = random_spd(rng, 4);
        const Matrix<Rational> gbar = a + j.transpose() * a * j;
        const StructureBundle b = synthesize_structure(h5(), e(5, {5}), unit(5, 5), gbar, j);
        CHECK(combined_status(almost_contact_check(h5(), b)) == CheckStatus::Pass);
        CHECK(combined_status(metric_compat_check(h5(), b)) == CheckStatus::Pass);
        const ContactLevel level = classify(h5(), b).level;
        CHECK(level >= ContactLevel::Contact);
        // xi = e5 is central, so Killing and L_xi phi always hold; compatibility decides the rest
        const bool compatible = *b.metric * *b.phi == two_form_matrix(ce_d(h5(), e(5, {5})));
        CHECK((level == ContactLevel::Sasakian) == compatible);
    }
}

TEST_CASE("Killing and L_xi phi agree on contact metric structures")
{
    // non-central Reeb candidates on h5 are rejected before the K-contact rung
    std::mt19937 rng(59);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix<Rational> a = random_spd(rng, 4);
        const Matrix<Rational> j = block_phi(4, 2);
        const StructureBundle b = synthesize_structure(h5(), e(5, {5}), unit(5, 5), a + j.transpose() * a * j, j);
        const ClassificationVerdict v = classify(h5(), b);
        if (v.level >= ContactLevel::ContactMetric)
            CHECK(v.find("killing")->status == v.find("lie_xi_phi")->status);
    }
}
