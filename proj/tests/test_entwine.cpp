#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fingeo/entwine.hpp"

#include <random>

using namespace fingeo;

namespace {

// Z2 swapping two points: the basic dynamical system
struct Z2System {
    GroupPtr g;
    FinAlgebra p, a;
    AlgebraAction action;
};

Z2System z2_swap() {
    auto g = preset_group("z2");
    FinAlgebra p = function_algebra(2);
    FinAlgebra a = group_algebra(*g);
    AlgebraAction action = permutation_action(*g, {{0, 1}, {1, 0}});
    return Z2System{g, std::move(p), std::move(a), std::move(action)};
}

}  // namespace

TEST_CASE("algebra validation") {
    SUBCASE("function and group algebras pass") {
        function_algebra(4);
        group_algebra(*preset_group("s3"));
    }
    SUBCASE("broken structure constants are rejected") {
        // dim-2 algebra with b1 b1 = b1, b1 b0 = b1 but b0 b1 = b0: not associative
        std::vector<std::vector<std::vector<Rational>>> sc(
            2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2, Rational(0))));
        sc[0][0][0] = 1;
        sc[0][1][0] = 1;
        sc[1][0][1] = 1;
        sc[1][1][0] = 1;  // b1 b1 = b0 while b1 b0 = b1: (b1 b1) b1 != b1 (b1 b1)
        CHECK_THROWS_AS(make_algebra(2, sc, {rat(1), rat(0)}), Error);
    }
}

TEST_CASE("action validation") {
    auto sys = z2_swap();
    validate_action(sys.p, sys.a, sys.action);
    // breaking composition: send g to a non-involution
    AlgebraAction bad = sys.action;
    bad.act[1](0, 0) = 2;
    CHECK_THROWS_AS(validate_action(sys.p, sys.a, bad), Error);
}

TEST_CASE("cross product of the z2 dynamical system") {
    auto sys = z2_swap();
    FinAlgebra x = cross_product(sys.p, sys.a, sys.action);
    CHECK(x.dim == 4);
    // (d0 (x) g)(d1 (x) e) = d0 (g |> d1) (x) g = d0 d0 (x) g = d0 (x) g
    std::vector<Rational> lhs(4, Rational(0)), a1(4, Rational(0)), a2(4, Rational(0));
    a1[0 * 2 + 1] = 1;  // d0 (x) g
    a2[1 * 2 + 0] = 1;  // d1 (x) e
    auto prod = x.mult(a1, a2);
    lhs[0 * 2 + 1] = 1;
    CHECK(prod == lhs);
    // trivial action gives the plain tensor product algebra
    FinAlgebra t = cross_product(sys.p, sys.a, trivial_action(sys.p, sys.a));
    std::vector<Rational> b1(4, Rational(0)), b2(4, Rational(0));
    b1[0 * 2 + 1] = 1;
    b2[1 * 2 + 1] = 1;
    auto tp = t.mult(b1, b2);  // (d0 (x) g)(d1 (x) g) = d0 d1 (x) g g = 0 ... e
    CHECK(tp == std::vector<Rational>(4, Rational(0)));
}

TEST_CASE("factorization and entwining") {
    auto sys = z2_swap();
    Factorization f = cross_product_factorization(sys.p, sys.a, sys.action);
    Entwining psi = entwining_from_factorization(f);

    SUBCASE("the smash entwining reorders through the action") {
        // Psi(g (x) d0) = d1 (x) g
        std::vector<Rational> v(4, Rational(0));
        v[1 * 2 + 0] = 1;  // index j * dimP + i with j = g, i = d0
        auto w = psi.psi.apply(v);
        std::vector<Rational> expect(4, Rational(0));
        expect[1 * 2 + 1] = 1;  // d1 (x) g at i * dimA + j
        CHECK(w == expect);
    }

    SUBCASE("commuting subalgebras give the flip") {
        FinAlgebra t = cross_product(sys.p, sys.a, trivial_action(sys.p, sys.a));
        RatMatrix incl_p(4, 2), incl_a(4, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                incl_p(i * 2 + j, i) = sys.a.unit[j];
                incl_a(i * 2 + j, j) = sys.p.unit[i];
            }
        Factorization tf = make_factorization(t, sys.p, sys.a, incl_p, incl_a);
        Entwining tpsi = entwining_from_factorization(tf);
        CHECK(tpsi.psi == flip_entwining(2, 2).psi);
    }

    SUBCASE("dimension mismatch is not a factorization") {
        FinAlgebra big = function_algebra(5);
        RatMatrix ip(5, 2), ia(5, 2);
        CHECK_THROWS_AS(make_factorization(big, sys.p, sys.a, ip, ia), Error);
    }
}

TEST_CASE("e-map and induced action") {
    auto sys = z2_swap();
    Factorization f = cross_product_factorization(sys.p, sys.a, sys.action);
    Entwining psi = entwining_from_factorization(f);
    EMap e = emap_from_action(sys.p, sys.a, sys.action);

    SUBCASE("e(a) = a |> 1 satisfies the axiom exactly") {
        CHECK(emap_axiom_residual(sys.p, sys.a, psi, e) == 0);
    }
    SUBCASE("the induced action recovers the original") {
        AlgebraAction induced = induced_action(sys.p, sys.a, psi, e);
        for (int j = 0; j < sys.a.dim; ++j) CHECK(induced.act[j] == sys.action.act[j]);
        // and a |> 1 recovers e
        for (int j = 0; j < sys.a.dim; ++j) {
            std::vector<Rational> ej(sys.a.dim, Rational(0));
            ej[j] = 1;
            CHECK(induced.act[j].apply(sys.p.unit) == e.e.apply(ej));
        }
    }
    SUBCASE("flip entwining with the counit-like scalar map") {
        // e(e_g) = 1_P for each group basis element: action is scalar
        EMap scalar{RatMatrix(2, 2)};
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) scalar.e(k, j) = sys.p.unit[k];
        Entwining flip = flip_entwining(2, 2);
        CHECK(emap_axiom_residual(sys.p, sys.a, flip, scalar) == 0);
        AlgebraAction act = induced_action(sys.p, sys.a, flip, scalar);
        for (int j = 0; j < 2; ++j) CHECK(act.act[j] == RatMatrix::identity(2));
    }
    SUBCASE("an invalid e-map is rejected with its residual") {
        EMap bad = e;
        bad.e(0, 1) += 1;
        CHECK_THROWS_AS(induced_action(sys.p, sys.a, psi, bad), Error);
    }
}

TEST_CASE("fixed subalgebra") {
    SUBCASE("trivial action fixes everything") {
        auto sys = z2_swap();
        AlgebraAction triv = trivial_action(sys.p, sys.a);
        EMap e = emap_from_action(sys.p, sys.a, triv);
        FixedSubalgebra m = fixed_subalgebra(sys.p, sys.a, triv, e);
        CHECK(m.algebra.dim == 2);
    }
    SUBCASE("z2 swap: constants only (reduced system)") {
        auto sys = z2_swap();
        EMap e = emap_from_action(sys.p, sys.a, sys.action);
        FixedSubalgebra m = fixed_subalgebra(sys.p, sys.a, sys.action, e);
        CHECK(m.algebra.dim == 1);
    }
    SUBCASE("orbit counting on a 4-point set with 2 orbits") {
        auto g = preset_group("z2");
        FinAlgebra p = function_algebra(4);
        FinAlgebra a = group_algebra(*g);
        AlgebraAction action = permutation_action(*g, {{0, 1, 2, 3}, {1, 0, 3, 2}});
        EMap e = emap_from_action(p, a, action);
        FixedSubalgebra m = fixed_subalgebra(p, a, action, e);
        CHECK(m.algebra.dim == 2);
    }
    SUBCASE("z3 translation: one orbit") {
        auto g = preset_group("z3");
        FinAlgebra p = function_algebra(3);
        FinAlgebra a = group_algebra(*g);
        std::vector<std::vector<int>> images(3, std::vector<int>(3));
        for (int gg = 0; gg < 3; ++gg)
            for (int x = 0; x < 3; ++x) images[gg][x] = (x + gg) % 3;
        AlgebraAction action = permutation_action(*g, images);
        EMap e = emap_from_action(p, a, action);
        FixedSubalgebra m = fixed_subalgebra(p, a, action, e);
        CHECK(m.algebra.dim == 1);
    }
}

TEST_CASE("galois certificates") {
    SUBCASE("free transitive z2 translation is galois") {
        auto sys = z2_swap();
        GaloisReport rep = galois_check(sys.p, sys.a, sys.action);
        CHECK(rep.galois);
        CHECK(rep.rank_ver == rep.expected_rank);
        CHECK(rep.dim_ker_ver == rep.dim_horizontal);
    }
    SUBCASE("free transitive z3 translation is galois") {
        auto g = preset_group("z3");
        FinAlgebra p = function_algebra(3);
        FinAlgebra a = group_algebra(*g);
        std::vector<std::vector<int>> images(3, std::vector<int>(3));
        for (int gg = 0; gg < 3; ++gg)
            for (int x = 0; x < 3; ++x) images[gg][x] = (x + gg) % 3;
        GaloisReport rep = galois_check(p, a, permutation_action(*g, images));
        CHECK(rep.galois);
    }
    SUBCASE("trivial action of a nontrivial group is not galois") {
        auto sys = z2_swap();
        GaloisReport rep = galois_check(sys.p, sys.a, trivial_action(sys.p, sys.a));
        CHECK_FALSE(rep.galois);
        CHECK_FALSE(rep.ver_surjective);
        CHECK(rep.rank_ver == 0);
    }
    SUBCASE("an action with fixed points is not galois") {
        // z2 on 3 points swapping only the first two: point 2 is fixed
        auto g = preset_group("z2");
        FinAlgebra p = function_algebra(3);
        FinAlgebra a = group_algebra(*g);
        GaloisReport rep = galois_check(p, a, permutation_action(*g, {{0, 1, 2}, {1, 0, 2}}));
        CHECK_FALSE(rep.galois);
    }
}

TEST_CASE("braided tensor product") {
    auto sys = z2_swap();
    Factorization f = cross_product_factorization(sys.p, sys.a, sys.action);
    Entwining psi = entwining_from_factorization(f);

    SUBCASE("flip gives the ordinary tensor product") {
        FinAlgebra t = braided_tensor_product(sys.p, sys.a, flip_entwining(2, 2));
        FinAlgebra expect = cross_product(sys.p, sys.a, trivial_action(sys.p, sys.a));
        CHECK(t.sc == expect.sc);
    }
    SUBCASE("round-trip reproduces the cross product exactly") {
        FinAlgebra t = braided_tensor_product(sys.p, sys.a, psi);
        CHECK(t.sc == f.x.sc);
    }
    SUBCASE("a random non-entwining map fails associativity") {
        std::mt19937_64 rng(99);
        std::uniform_int_distribution<long> num(-3, 3);
        bool saw_failure = false;
        for (int trial = 0; trial < 50 && !saw_failure; ++trial) {
            Entwining broken{2, 2, RatMatrix(4, 4)};
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j) broken.psi(i, j) = rat(num(rng));
            try {
                braided_tensor_product(sys.p, sys.a, broken);
            } catch (const Error& e) {
                if (e.code() == Errc::NonAssociativeResult || e.code() == Errc::NoIdentity)
                    saw_failure = true;
            }
        }
        CHECK(saw_failure);
    }
}

TEST_CASE("characterization mismatch is reported for an incompatible e-map") {
    auto sys = z2_swap();
    // the sign character e(g) = -1 is an e-map for a DIFFERENT framework:
    // M1 becomes the antisymmetric line while M2 stays the constants
    EMap sign{RatMatrix(2, 2)};
    sign.e(0, 0) = 1;
    sign.e(1, 0) = 1;   // e(identity) = 1
    sign.e(0, 1) = -1;
    sign.e(1, 1) = -1;  // e(g) = -1
    CHECK_THROWS_AS(fixed_subalgebra(sys.p, sys.a, sys.action, sign), Error);
    try {
        fixed_subalgebra(sys.p, sys.a, sys.action, sign);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::CharacterizationMismatch);
    }
}

TEST_CASE("relative expectation") {
    auto sys = z2_swap();

    SUBCASE("unit observable gives p* p") {
        std::vector<Rational> p = {rat(1, 2), rat(-1, 3)};
        std::vector<Rational> unit_a = sys.a.unit;
        auto val = relative_expectation(unit_a, p, sys.p, sys.action);
        CHECK(val == sys.p.mult(sys.p.apply_star(p), p));
    }
    SUBCASE("z2 system: <g>_{delta_0} = delta_0* delta_1 = 0") {
        std::vector<Rational> g = {rat(0), rat(1)};  // the group generator
        std::vector<Rational> d0 = {rat(1), rat(0)};
        auto val = relative_expectation(g, d0, sys.p, sys.action);
        CHECK(val == std::vector<Rational>{Rational(0), Rational(0)});
    }
    SUBCASE("missing star structure is an error") {
        FinAlgebra no_star = sys.p;
        no_star.star = std::nullopt;
        std::vector<Rational> g = {rat(0), rat(1)};
        std::vector<Rational> d0 = {rat(1), rat(0)};
        CHECK_THROWS_AS(relative_expectation(g, d0, no_star, sys.action), Error);
    }
    SUBCASE("scalar wave functions recover the character value") {
        // P = scalars; z2 acts by the sign character
        FinAlgebra scalars = function_algebra(1);
        FinAlgebra a = group_algebra(*preset_group("z2"));
        AlgebraAction sign;
        RatMatrix plus(1, 1), minus(1, 1);
        plus(0, 0) = 1;
        minus(0, 0) = -1;
        sign.act = {plus, minus};
        validate_action(scalars, a, sign);
        std::vector<Rational> g = {rat(0), rat(1)};
        auto val = relative_expectation(g, scalars.unit, scalars, sign);
        // <g>_1 = e(g) = -1
        CHECK(val == std::vector<Rational>{rat(-1)});
    }
    SUBCASE("expectations chain through a second representation") {
        // <<a>_p>_q with P represented on itself by multiplication
        std::vector<Rational> a = {rat(1, 2), rat(1, 3)};
        std::vector<Rational> p = {rat(2), rat(-1)};
        std::vector<Rational> q = {rat(1), rat(1, 5)};
        auto inner = relative_expectation(a, p, sys.p, sys.action);
        AlgebraAction mult_action;
        for (int i = 0; i < sys.p.dim; ++i) {
            std::vector<Rational> ei(sys.p.dim, Rational(0));
            ei[i] = 1;
            mult_action.act.push_back(sys.p.left_mult(ei));
        }
        validate_action(sys.p, sys.p, mult_action);
        auto outer_val = relative_expectation(inner, q, sys.p, mult_action);
        // direct: q* (inner . q)
        CHECK(outer_val == sys.p.mult(sys.p.apply_star(q), sys.p.mult(inner, q)));
    }
}
