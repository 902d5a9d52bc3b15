#include "oracle.hpp"
#include "test_support.hpp"

#include "foliage/basic.hpp"

#include <doctest.h>

using namespace foliage;
using namespace foliage::testing;

namespace {

std::vector<std::size_t> dims(const CochainComplex<Rational>& c)
{
    std::vector<std::size_t> out;
    for (int k = 0; k <= c.top(); ++k)
        out.push_back(c.dim(k));
    return out;
}

using Sizes = std::vector<std::size_t>;

oracle::Q q(const Rational& x) { return oracle::Q(x); }

std::vector<oracle::Q> oracle_vec(const Vector& v)
{
    std::vector<oracle::Q> out;
    for (const auto& x : v)
        out.push_back(q(x));
    return out;
}

} // namespace

TEST_CASE("basic subcomplex spaces")
{
    const auto b3 = basic_subcomplex(h3(), unit(3, 3));
    CHECK(dims(b3) == Sizes{1, 2, 1});
    CHECK(b3.contains(e(3, {1})));
    CHECK(b3.contains(e(3, {2})));
    CHECK(b3.contains(e(3, {1, 2})));
    CHECK_FALSE(b3.contains(e(3, {3})));
    CHECK_FALSE(b3.contains(e(3, {1, 3})));

    CHECK(dims(basic_subcomplex(h5(), unit(5, 5))) == Sizes{1, 4, 6, 4, 1});
    const auto flat = basic_subcomplex(abelian(3), unit(3, 3));
    CHECK(dims(flat) == Sizes{1, 2, 1});
    CHECK(flat.contains(e(3, {1, 2})));
    CHECK_THROWS_AS(basic_subcomplex(h3(), Vector{0, 0, 0}), InvalidInput);
}

TEST_CASE("cohomology of the full and basic complexes")
{
    CHECK(betti_numbers(full_complex<Rational>(h3())) == Sizes{1, 2, 2, 1});
    CHECK(betti_numbers(basic_subcomplex(h3(), unit(3, 3))) == Sizes{1, 2, 1});
    CHECK(betti_numbers(full_complex<Rational>(abelian(3))) == Sizes{1, 3, 3, 1});

    const auto groups = cohomology(full_complex<Rational>(h3()));
    REQUIRE(groups.size() == 4);
    CHECK(groups[1].representatives == std::vector<Form<Rational>>{e(3, {1}), e(3, {2})});
    CHECK(groups[2].representatives == std::vector<Form<Rational>>{e(3, {1, 3}), e(3, {2, 3})});
    for (const auto& g : groups)
        for (const auto& r : g.representatives)
            CHECK(ce_d(h3(), r).is_zero());
}

TEST_CASE("basic Betti numbers agree with the oracle")
{
    struct Case {
        int m;
        std::vector<Bracket> brackets;
    };
    const std::vector<Case> cases{{3, kH3}, {5, kH5}, {7, kH7}, {5, kX5}, {3, {}}, {4, kKT4}};
    for (const auto& c : cases) {
        const LieAlgebraModel model = make_model(c.m, c.brackets);
        const auto alg = oracle::real_algebra(c.m, c.brackets);
        CHECK(betti_numbers(full_complex<Rational>(model)) == oracle::derham_betti(alg));
        for (int x = 1; x <= c.m; ++x) {
            const Vector xi = unit(c.m, x);
            CHECK(betti_numbers(basic_subcomplex(model, xi)) == oracle::basic_betti(alg, oracle_vec(xi)));
        }
        // a generic direction as well
        Vector xi(static_cast<std::size_t>(c.m), Rational(0));
        for (int i = 0; i < c.m; ++i)
            xi[static_cast<std::size_t>(i)] = i + 1;
        CHECK(betti_numbers(basic_subcomplex(model, xi)) == oracle::basic_betti(alg, oracle_vec(xi)));
    }
    CHECK(oracle::basic_betti(oracle::real_algebra(3, kH3), {0, 0, 1}) == Sizes{1, 2, 1});
    CHECK(oracle::basic_betti(oracle::real_algebra(5, kH5), {0, 0, 0, 0, 1}) == Sizes{1, 4, 6, 4, 1});
}

TEST_CASE("inclusion of basic cohomology")
{
    const auto maps = inclusion_map(h3(), unit(3, 3));
    REQUIRE(maps.size() == 3);
    CHECK(maps[0].injective);
    CHECK(maps[0].surjective);
    CHECK(maps[1].injective);
    CHECK(maps[2].kernel_dim == 1);
    CHECK_FALSE(maps[2].injective);
    CHECK(maps[2].map.is_zero());
}

TEST_CASE("symplectic obstruction")
{
    const SymplecticObstruction h = symplectic_obstruction(h3(), e(3, {3}));
    CHECK(h.consistent());
    CHECK(h.top_noninjective);
    const SymplecticObstruction h5r = symplectic_obstruction(h5(), e(5, {5}));
    CHECK(h5r.n == 2);
    CHECK(h5r.consistent());
    CHECK(h5r.top_noninjective);
    CHECK(symplectic_obstruction(h7(), e(7, {7})).consistent());
    CHECK_THROWS_WITH_AS(symplectic_obstruction(abelian(3), e(3, {3})), doctest::Contains("NotContact"),
                         InvalidInput);
}

TEST_CASE("obstruction invariant: nonzero [d eta]^n forces a kernel")
{
    for (const auto& [m, model] : std::vector<std::pair<int, LieAlgebraModel>>{{3, h3()}, {5, h5()}, {5, x5()}, {7, h7()}}) {
        const SymplecticObstruction s = symplectic_obstruction(model, e(m, {m}));
        if (s.power_nonzero)
            CHECK(s.top_noninjective);
    }
}

TEST_CASE("homological orientability")
{
    const Orientability h = homological_orientability(h3(), unit(3, 3));
    CHECK(h.codimension == 2);
    CHECK(h.top_dim == 1);
    CHECK(h.orientable);
    CHECK(homological_orientability(h5(), unit(5, 5)).orientable);

    // h3 x R with xi = e3: the codimension-3 basic group is computed, whatever it is
    const LieAlgebraModel h3r = make_model(4, {{1, 2, 3}});
    const Orientability p = homological_orientability(h3r, unit(4, 3));
    CHECK(p.codimension == 3);
    CHECK(p.top_dim == oracle::basic_betti(oracle::real_algebra(4, kKT4), {0, 0, 1, 0})[3]);
}

TEST_CASE("harmonic spaces")
{
    const auto b3 = basic_subcomplex(h3(), unit(3, 3));
    const auto hb = harmonic_spaces(b3, induced_grams(b3, Matrix<Rational>::identity(3)));
    CHECK(hb[0].harmonic.dim() == 1);
    CHECK(hb[1].harmonic.dim() == 2);
    CHECK(hb[2].harmonic.dim() == 1);
    CHECK(hb[1].laplacian.is_zero());

    const auto full = full_complex<Rational>(h3());
    const auto hf = harmonic_space(full, induced_grams(full, Matrix<Rational>::identity(3)), 1);
    CHECK(hf.harmonic == Subspace<Rational>::span(3, {{1, 0, 0}, {0, 1, 0}}));
    CHECK(hf.coexact.dim() == 1);
}

TEST_CASE("finite Hodge theorem for random metrics")
{
    std::mt19937 rng(61);
    for (const auto& [m, model] : std::vector<std::pair<int, LieAlgebraModel>>{{3, h3()}, {5, h5()}, {5, x5()}, {4, kt4()}}) {
        const Matrix<Rational> g = random_spd(rng, static_cast<std::size_t>(m));
        const auto full = full_complex<Rational>(model);
        const auto spaces = harmonic_spaces(full, induced_grams(full, g));
        const auto betti = betti_numbers(full);
        for (int k = 0; k <= full.top(); ++k)
            CHECK(spaces[static_cast<std::size_t>(k)].harmonic.dim() == betti[static_cast<std::size_t>(k)]);
        if (m % 2) {
            const auto basic = basic_subcomplex(model, unit(m, m));
            const auto bs = harmonic_spaces(basic, induced_grams(basic, g));
            CHECK(bs.size() == static_cast<std::size_t>(m));
        }
    }
}

TEST_CASE("Hard Lefschetz on Heisenberg algebras")
{
    for (const auto& v : hard_lefschetz_check(h3(), e(3, {3}), Matrix<Rational>::identity(3)))
        CHECK(v.kind == LefschetzKind::Isomorphism);
    const auto h5v = hard_lefschetz_check(h5(), e(5, {5}), Matrix<Rational>::identity(5));
    REQUIRE(h5v.size() == 3);
    const auto betti = betti_numbers(full_complex<Rational>(h5()));
    for (const auto& v : h5v) {
        CHECK(v.kind == LefschetzKind::Isomorphism);
        CHECK(v.source_dim == betti[static_cast<std::size_t>(2 - v.p)]);
        CHECK(v.target_dim == betti[static_cast<std::size_t>(3 + v.p)]);
    }
    CHECK_THROWS_AS(hard_lefschetz_check(abelian(3), e(3, {3}), Matrix<Rational>::identity(3)), InvalidInput);
}

TEST_CASE("Hard Lefschetz agrees with the oracle")
{
    struct Case {
        int m;
        std::vector<Bracket> brackets;
    };
    for (const auto& c : std::vector<Case>{{3, kH3}, {5, kH5}, {5, kX5}, {7, kH7}}) {
        const auto engine = hard_lefschetz_check(make_model(c.m, c.brackets), e(c.m, {c.m}),
                                                 Matrix<Rational>::identity(static_cast<std::size_t>(c.m)));
        const auto expected = oracle::lefschetz(oracle::real_algebra(c.m, c.brackets));
        REQUIRE(engine.size() == expected.size());
        for (std::size_t p = 0; p < engine.size(); ++p)
            CHECK(to_string(engine[p].kind) == expected[p]);
    }
}

TEST_CASE("Massey products on h3")
{
    const auto full = full_complex<Rational>(h3());
    const MasseyResult r = massey_triple(full, e(3, {1}), e(3, {1}), e(3, {2}));
    REQUIRE(r.defined);
    CHECK(r.degree == 2);
    CHECK(r.representative == -e(3, {1, 3}));
    CHECK(r.indeterminacy.dim() == 0);
    CHECK_FALSE(r.vanishes);

    const MasseyResult bad = massey_triple(full, e(3, {1}), e(3, {2}), e(3, {2}));
    CHECK(bad.defined);  // e^12 is exact
    const MasseyResult undefined = massey_triple(full, e(3, {1}), e(3, {1, 3}), e(3, {1}));
    CHECK(undefined.defined);

    CHECK_THROWS_AS(massey_triple(full, e(3, {3}), e(3, {1}), e(3, {1})), InvalidInput);

    const auto basic = basic_subcomplex(h3(), unit(3, 3));
    const MasseySummary s = massey_h1_samples(basic);
    CHECK(s.admissible == s.vanishing);
    CHECK(s.non_vanishing.empty());
    const MasseySummary fs = massey_h1_samples(full);
    CHECK_FALSE(fs.non_vanishing.empty());
}

TEST_CASE("Massey precondition failure names the class")
{
    // on R^3 every product of distinct classes is nonzero
    const auto flat = full_complex<Rational>(abelian(3));
    const MasseyResult r = massey_triple(flat, e(3, {1}), e(3, {2}), e(3, {3}));
    CHECK_FALSE(r.defined);
    CHECK(r.failure.find("e^1 ^ e^2") != std::string::npos);
}

TEST_CASE("every admissible Massey triple vanishes on basic complexes of h3 and h5")
{
    for (const auto& [m, model] : std::vector<std::pair<int, LieAlgebraModel>>{{3, h3()}, {5, h5()}}) {
        const auto basic = basic_subcomplex(model, unit(m, m));
        const auto groups = cohomology(basic);
        std::vector<Form<Rational>> reps;
        for (int k = 1; k < static_cast<int>(groups.size()); ++k)
            for (const auto& r : groups[static_cast<std::size_t>(k)].representatives)
                reps.push_back(r);
        std::size_t admissible = 0;
        for (const auto& a : reps)
            for (const auto& b : reps)
                for (const auto& c : reps) {
                    if (a.degree() + b.degree() + c.degree() - 1 > basic.top())
                        continue;
                    const MasseyResult r = massey_triple(basic, a, b, c);
                    if (!r.defined)
                        continue;
                    ++admissible;
                    CHECK(r.vanishes);
                }
        CHECK(admissible > 0);
    }
}
