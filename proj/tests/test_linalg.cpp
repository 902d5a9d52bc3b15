#include "test_support.hpp"

#include <doctest.h>

using namespace foliage;
using namespace foliage::testing;

namespace {

Matrix<Rational> mat(std::size_t rows, std::size_t cols, std::initializer_list<long> entries)
{
    Matrix<Rational> a(rows, cols);
    std::size_t k = 0;
    for (long x : entries) {
        a(k / cols, k % cols) = x;
        ++k;
    }
    return a;
}

Matrix<Gauss> random_gauss_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols)
{
    Matrix<Gauss> a(rows, cols);
    std::bernoulli_distribution keep(0.6);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (keep(rng))
                a(i, j) = Gauss(random_rational(rng), random_rational(rng));
    return a;
}

} // namespace

TEST_CASE("rank and rref of small matrices")
{
    CHECK(rank(mat(2, 2, {1, 2, 2, 4})) == 1);
    CHECK(rank(mat(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1})) == 3);
    CHECK(rank(Matrix<Rational>(0, 4)) == 0);

    Echelon<Rational> e = rref(mat(2, 3, {2, 4, 6, 1, 3, 5}));
    CHECK(e.pivots == std::vector<std::size_t>{0, 1});
    CHECK(e.matrix == mat(2, 3, {1, 0, -1, 0, 1, 2}));
}

TEST_CASE("determinant and leading minors")
{
    CHECK(determinant(mat(2, 2, {1, 2, 3, 4})) == -2);
    CHECK(determinant(mat(3, 3, {0, 1, 0, 1, 0, 0, 0, 0, 1})) == -1);
    auto minors = leading_principal_minors(mat(3, 3, {2, 1, 0, 1, 2, 1, 0, 1, 2}));
    CHECK(minors == std::vector<Rational>{2, 3, 4});
    CHECK(is_positive_definite(mat(2, 2, {2, 1, 1, 2})));
    CHECK_FALSE(is_positive_definite(mat(2, 2, {1, 2, 2, 1})));
    CHECK_FALSE(is_positive_definite(mat(2, 2, {1, 0, 1, 1})));
}

TEST_CASE("rank-nullity on random matrices")
{
    std::mt19937 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t r = 1 + rng() % 6;
        const std::size_t c = 1 + rng() % 6;
        Matrix<Rational> a = random_matrix(rng, r, c, 0.4);
        const Subspace<Rational> k = kernel_basis(a);
        CHECK(rank(a) + k.dim() == c);
        CHECK(image_basis(a).dim() == rank(a));
        for (const auto& v : k.vectors())
            CHECK(is_zero_vector(a * v));
        CHECK(rank(a) == rank(a.transpose()));
    }
}

TEST_CASE("rank over Q(i) is invariant under conjugation")
{
    std::mt19937 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix<Gauss> a = random_gauss_matrix(rng, 4, 5);
        CHECK(rank(a) == rank(a.conjugate()));
        const Subspace<Gauss> k = kernel_basis(a);
        CHECK(rank(a) + k.dim() == 5);
        for (const auto& v : k.vectors())
            CHECK(is_zero_vector(a * v));
    }
}

TEST_CASE("sum and intersection satisfy the dimension formula")
{
    std::mt19937 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + rng() % 5;
        Subspace<Rational> s = image_basis(random_matrix(rng, n, rng() % (n + 1), 0.5));
        Subspace<Rational> t = image_basis(random_matrix(rng, n, rng() % (n + 1), 0.5));
        Subspace<Rational> both = intersect(s, t);
        Subspace<Rational> total = sum(s, t);
        CHECK(both.dim() + total.dim() == s.dim() + t.dim());
        CHECK(both.is_subspace_of(s));
        CHECK(both.is_subspace_of(t));
        CHECK(s.is_subspace_of(total));
        CHECK(annihilator(s).dim() + s.dim() == n);
    }
}

TEST_CASE("subspace equality ignores the generating set")
{
    auto a = Subspace<Rational>::span(3, {{1, 1, 0}, {0, 1, 1}});
    auto b = Subspace<Rational>::span(3, {{1, 2, 1}, {1, 0, -1}, {2, 2, 0}});
    CHECK(a == b);
    CHECK(a.contains({1, 0, -1}));
    CHECK_FALSE(a.contains({1, 0, 0}));
    CHECK(a.coordinates({1, 0, -1}) == Vec<Rational>{1, 0});
    CHECK(a.coordinates({1, 2, 1}) == Vec<Rational>{1, 2});
}

TEST_CASE("quotient representatives and classes")
{
    auto num = Subspace<Rational>::whole(3);
    auto den = Subspace<Rational>::span(3, {{1, 1, 0}});
    QuotientSpace<Rational> q(num, den);
    REQUIRE(q.dim() == 2);
    // e_1 is the first basis vector outside den; e_2 is then dependent
    CHECK(q.representatives()[0] == Vec<Rational>{1, 0, 0});
    CHECK(q.representatives()[1] == Vec<Rational>{0, 0, 1});
    CHECK(q.is_zero_class({2, 2, 0}));
    CHECK(q.class_of({0, 1, 0}) == Vec<Rational>{-1, 0});
    CHECK(q.class_of({3, 1, 5}) == Vec<Rational>{2, 5});

    CHECK_THROWS_AS(QuotientSpace<Rational>(den, num), InvalidInput);
    CHECK_THROWS_AS(q.class_of({1}), InvalidInput);
}

TEST_CASE("quotient coordinates are linear and kill the denominator")
{
    std::mt19937 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 5;
        Matrix<Rational> gen = random_matrix(rng, n, 4, 0.6);
        Subspace<Rational> num = image_basis(gen);
        Subspace<Rational> den = image_basis(gen * random_matrix(rng, 4, 2, 0.6));
        QuotientSpace<Rational> q(num, den);
        CHECK(q.dim() == num.dim() - den.dim());
        for (const auto& v : den.vectors())
            CHECK(q.is_zero_class(v));
        for (std::size_t i = 0; i < q.dim(); ++i) {
            Vec<Rational> expected(q.dim(), Rational(0));
            expected[i] = 1;
            CHECK(q.class_of(q.representatives()[i]) == expected);
        }
    }
}

TEST_CASE("induced map: h3 basic classes in de Rham cohomology")
{
    // Basic 2-forms for xi = e_3 on h3 are spanned by e^12, which is exact.
    const LieAlgebraModel m = h3();
    const Matrix<Rational> d1 = d_matrix<Rational>(m, 1);
    const Matrix<Rational> d2 = d_matrix<Rational>(m, 2);
    QuotientSpace<Rational> basic(Subspace<Rational>::span(3, {{1, 0, 0}}), Subspace<Rational>(3));
    QuotientSpace<Rational> derham(kernel_basis(d2), image_basis(d1));
    CHECK(derham.dim() == 2);
    Matrix<Rational> map = induced_map(basic, derham, Matrix<Rational>::identity(3));
    CHECK(map.rows() == 2);
    CHECK(map.cols() == 1);
    CHECK(map.is_zero());
}

TEST_CASE("induced map rejects maps that do not preserve the pair")
{
    QuotientSpace<Rational> q(Subspace<Rational>::whole(2), Subspace<Rational>::span(2, {{1, 0}}));
    Matrix<Rational> swap = mat(2, 2, {0, 1, 1, 0});
    CHECK_THROWS_WITH_AS(induced_map(q, q, swap), doctest::Contains("denominator"), InvalidInput);
}

TEST_CASE("solve and inverse")
{
    auto x = solve(mat(2, 2, {1, 1, 1, -1}), Vec<Rational>{3, 1});
    REQUIRE(x.has_value());
    CHECK(*x == Vec<Rational>{2, 1});
    CHECK_FALSE(solve(mat(2, 2, {1, 1, 1, 1}), Vec<Rational>{1, 2}).has_value());
    CHECK_FALSE(inverse(mat(2, 2, {1, 2, 2, 4})).has_value());

    std::mt19937 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix<Rational> g = random_spd(rng, 4);
        auto inv = inverse(g);
        REQUIRE(inv.has_value());
        CHECK(g * *inv == Matrix<Rational>::identity(4));
    }
}

TEST_CASE("Gram validation")
{
    CHECK_THROWS_AS(Gram<Rational>(mat(2, 2, {1, 2, 3, 4})), InvalidInput);
    CHECK_THROWS_AS(Gram<Rational>(mat(2, 2, {1, 2, 2, 1})), InvalidInput);
    Matrix<Gauss> h(2, 2);
    h(0, 0) = 2;
    h(1, 1) = 2;
    h(0, 1) = Gauss::i();
    h(1, 0) = -Gauss::i();
    Gram<Gauss> g(h);
    CHECK(g.inner({Gauss::i(), 0}, {Gauss::i(), 0}) == Gauss(2));
}

TEST_CASE("Gram adjoint is an involution and satisfies the defining identity")
{
    std::mt19937 rng(43);
    for (int trial = 0; trial < 15; ++trial) {
        Gram<Rational> dom(random_spd(rng, 3));
        Gram<Rational> cod(random_spd(rng, 4));
        Matrix<Rational> a = random_matrix(rng, 4, 3);
        Matrix<Rational> star = gram_adjoint(a, dom, cod);
        CHECK(gram_adjoint(star, cod, dom) == a);
        Vec<Rational> x = random_matrix(rng, 3, 1).column(0);
        Vec<Rational> y = random_matrix(rng, 4, 1).column(0);
        CHECK(cod.inner(a * x, y) == dom.inner(x, star * y));
    }
}

TEST_CASE("Hodge decomposition on random cochain pairs")
{
    // C0 -d0-> C1 -d1-> C2 with d1 d0 = 0; C1 = im d0 + harmonic + im d1*
    std::mt19937 rng(47);
    for (int trial = 0; trial < 15; ++trial) {
        Matrix<Rational> d0 = random_matrix(rng, 5, 2, 0.6);
        Subspace<Rational> closed_target = annihilator(image_basis(d0));
        // d1 has rows in the annihilator of im d0
        Matrix<Rational> d1 = random_matrix(rng, 3, closed_target.dim(), 0.6) * closed_target.rows();
        REQUIRE((d1 * d0).is_zero());
        Gram<Rational> g0(random_spd(rng, 2)), g1(random_spd(rng, 5)), g2(random_spd(rng, 3));
        Matrix<Rational> lap = d0 * gram_adjoint(d0, g0, g1) + gram_adjoint(d1, g1, g2) * d1;
        Subspace<Rational> harmonic = kernel_basis(lap);
        Subspace<Rational> exact = image_basis(d0);
        Subspace<Rational> coexact = image_basis(gram_adjoint(d1, g1, g2));
        QuotientSpace<Rational> coh(kernel_basis(d1), exact);
        CHECK(harmonic.dim() == coh.dim());
        CHECK(harmonic.dim() + exact.dim() + coexact.dim() == 5);
        CHECK(sum(sum(harmonic, exact), coexact).dim() == 5);
        for (const auto& h : harmonic.vectors())
            for (const auto& x : exact.vectors())
                CHECK(g1.inner(h, x) == 0);
    }
}
