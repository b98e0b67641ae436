#include <doctest.h>

#include <cmath>

#include "stratakit/realize.hpp"
#include "stratakit/rng.hpp"

using namespace stratakit;

TEST_CASE("seeds for the base strata") {
    CHECK(seed_for_stratum(NonXInvolution{1, 0, {1}}).eps == std::vector<double>{-1.0});
    CHECK(seed_for_stratum(NonXInvolution{1, 1, {}}).eps == std::vector<double>{1.0});
}

TEST_CASE("seed for every stratum at k <= 3 extracts back to it") {
    for (int k = 1; k <= 3; ++k) {
        for (const auto& tau : enumerate_strata(k)) {
            RealPolyField P = seed_for_stratum(tau);
            CHECK(extract_combinatorial(P) == tau);
        }
    }
}

TEST_CASE("all-real seed has only real roots") {
    RealPolyField P = seed_for_stratum(NonXInvolution{3, 0, {1, 2, 3}});
    int m = 0;
    for (const auto& sp : find_roots(P)) m += sp.is_real ? sp.multiplicity : 0;
    CHECK(m == 4);
}

TEST_CASE("closed-form realization at k = 1") {
    Modulus loop;
    loop.tau = NonXInvolution{1, 1, {}};
    loop.eta_R = M_PI;
    RealizationResult r = realize({loop, RealPolyField(1, {2.0}), Tolerances{}});
    CHECK(r.poly.eps[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r.residual < 1e-8);

    Modulus node;
    node.tau = NonXInvolution{1, 0, {1}};
    node.eta_I = {M_PI / 2};
    RealizationResult r2 = realize({node, RealPolyField(1, {-1.0}), Tolerances{}});
    CHECK(r2.poly.eps[0] == doctest::Approx(-4.0).epsilon(1e-8));
}

TEST_CASE("modulus Jacobian against the closed forms") {
    // k = 1, P = z^2 + a^2: d eta_R / d eps0 = -pi/(2 a^3), at a = 1.
    Matrix up = modulus_jacobian(RealPolyField(1, {1.0}));
    REQUIRE(up.size() == 1);
    CHECK(up[0][0] == doctest::Approx(-M_PI / 2).epsilon(1e-3));

    // k = 1, P = z^2 - a^2: d Im(eta) / d eps0 = +pi/(2 a^3), at a = 1.
    Matrix down = modulus_jacobian(RealPolyField(1, {-1.0}));
    CHECK(down[0][0] == doctest::Approx(M_PI / 2).epsilon(1e-3));
}

TEST_CASE("modulus Jacobian is nonsingular on random generic quartics") {
    Rng rng(101);
    int tested = 0;
    while (tested < 100) {
        std::vector<double> eps{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        RealPolyField P(3, eps);
        try {
            Matrix J = modulus_jacobian(P);
            CHECK(min_singular_value_scaled(J) > 1e-5);
            ++tested;
        } catch (const Error&) {
            continue; // near a bifurcation; draw again
        }
    }
}

TEST_CASE("realization round trip at k = 2") {
    Rng rng(7);
    for (const auto& tau : enumerate_strata(2)) {
        RealPolyField P = seed_for_stratum(tau);
        Modulus target = extract_modulus(P);
        // Start from a deliberately different point of the stratum.
        RealPolyField seed = P;
        for (double& e : seed.eps) e *= 1.35;
        if (!(extract_combinatorial(seed) == tau)) seed = P;
        RealizationResult r = realize({target, seed, Tolerances{}});
        for (std::size_t i = 0; i < P.eps.size(); ++i)
            CHECK(r.poly.eps[i] == doctest::Approx(P.eps[i]).epsilon(1e-6));
        CHECK(r.residual <= 1e-8);
    }
}

TEST_CASE("realize rejects a seed from the wrong stratum") {
    Modulus target = extract_modulus(RealPolyField(2, {-1.0, 0.0})); // three real roots
    CHECK_THROWS_AS((void)realize({target, RealPolyField(2, {1.0, 0.0}), Tolerances{}}),
                    InvalidInputError);
}

TEST_CASE("scaling consistency of the k = 1 closed forms") {
    // Under the zoom z -> r z the symmetric-zone time scales by r^{-k}: for
    // z^2 - a^2, eta = i pi / a and eps0 = -a^2.
    for (double lam : {0.5, 2.0, 3.0}) {
        Modulus m;
        m.tau = NonXInvolution{1, 0, {1}};
        m.eta_I = {M_PI / lam};
        RealizationResult r = realize({m, RealPolyField(1, {-1.0}), Tolerances{}});
        CHECK(r.poly.eps[0] == doctest::Approx(-lam * lam).epsilon(1e-8));
    }
}
