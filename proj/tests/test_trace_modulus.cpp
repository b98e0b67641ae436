#include <doctest.h>

#include <cmath>

#include "stratakit/modulus.hpp"
#include "stratakit/realize.hpp"

using namespace stratakit;

TEST_CASE("separatrices of the real quadratics") {
    RealPolyField P(1, {-1.0}); // z^2 - 1
    auto roots = find_roots(P);
    auto traces = trace_separatrices(P, roots);
    REQUIRE(traces.size() == 2);
    // roots sorted by (Im, Re): [-1, +1]
    CHECK(traces[0].landing == 1); // s_0 along R+ lands at +1
    CHECK(traces[1].landing == 0); // s_1 along R- lands at -1
    for (const auto& t : traces)
        for (const cplx& z : t.points) CHECK(z.imag() == 0.0);
}

TEST_CASE("landing pattern of z^3 - z") {
    RealPolyField P(2, {-1.0, 0.0});
    auto roots = find_roots(P);
    auto traces = trace_separatrices(P, roots);
    REQUIRE(traces.size() == 4);
    // roots sorted: -1, 0, +1
    CHECK(traces[0].landing == 2);
    CHECK(traces[2].landing == 0);
    CHECK(traces[1].landing == 1);
    CHECK(traces[3].landing == 1);
    // conjugate separatrices land at conjugate roots with mirrored angles
    CHECK(std::abs(std::remainder(traces[1].incoming_angle + traces[3].incoming_angle, 2 * M_PI)) < 1e-6);
}

TEST_CASE("combinatorial extraction at small degree") {
    CHECK(extract_combinatorial(RealPolyField(1, {-1.0})) == NonXInvolution{1, 0, {1}});
    CHECK(extract_combinatorial(RealPolyField(1, {1.0})) == NonXInvolution{1, 1, {}});
    CHECK(extract_combinatorial(RealPolyField(2, {-1.0, 0.0})) == NonXInvolution{2, 0, {1, 2}});
    CHECK(extract_combinatorial(RealPolyField(2, {1.0, 0.0})) == NonXInvolution{2, 0, {2, 1}});

    // (z^2-1)((z-0.3)^2+4): two real roots, one conjugate pair off the
    // imaginary axis, recentered.
    Normalized n = normalize({1.0, -0.6, 3.09, 0.6, -4.09});
    NonXInvolution tau = extract_combinatorial(n.poly);
    CHECK(tau.ell == 0);
    CHECK(tau.real_point_count() == 2);
    CHECK(tau.fixed_count() == 1);
}

TEST_CASE("extraction refuses non-generic input") {
    CHECK_THROWS_AS((void)extract_combinatorial(RealPolyField(3, {5.0, 0.0, 4.0})),
                    NotGenericError); // (z^2+1)(z^2+4): symmetric center pairs
    CHECK_THROWS_AS((void)extract_combinatorial(RealPolyField(3, {1.0, 0.0, 0.0})),
                    NotGenericError); // parabolic point at 0
    // (z^2-1)(z^2+4) sits on the eps1 = 0, eps0 < 0 loop locus: the +-2i pair
    // is a center pair, so extraction must refuse rather than guess.
    CHECK_THROWS_AS((void)extract_combinatorial(RealPolyField(3, {3.0, 0.0, -4.0})),
                    NotGenericError);
}

TEST_CASE("transversal time of the symmetric quadratic zones") {
    for (double a : {0.5, 1.0, 2.0}) {
        cplx eta = transversal_time(RealPolyField(1, {-a * a}), {1, -1});
        CHECK(std::abs(eta - cplx(0, M_PI / a)) < 1e-8 * (M_PI / a));
    }
}

TEST_CASE("axis period") {
    CHECK(period_R(RealPolyField(1, {1.0})) == doctest::Approx(M_PI).epsilon(1e-10));
    CHECK(period_R(RealPolyField(1, {4.0})) == doctest::Approx(M_PI / 2).epsilon(1e-10));
    // (z^2+1)(z^2+4): partial fractions give pi/3 - pi/6 = pi/6.
    PeriodCheck pc = period_R_detail(RealPolyField(3, {5.0, 0.0, 4.0}));
    CHECK(pc.via_residues == doctest::Approx(M_PI / 6).epsilon(1e-10));
    CHECK(pc.via_quadrature == doctest::Approx(M_PI / 6).epsilon(1e-8));
    CHECK_THROWS_AS((void)period_R(RealPolyField(1, {-1.0})), InvalidInputError);
}

TEST_CASE("modulus of the base cases") {
    Modulus up = extract_modulus(RealPolyField(1, {1.0}));
    CHECK(up.tau.ell == 1);
    CHECK(up.eta_H.empty());
    CHECK(up.eta_I.empty());
    REQUIRE(up.eta_R.has_value());
    CHECK(*up.eta_R == doctest::Approx(M_PI).epsilon(1e-10));

    Modulus down = extract_modulus(RealPolyField(1, {-1.0}));
    CHECK(down.tau == NonXInvolution{1, 0, {1}});
    REQUIRE(down.eta_I.size() == 1);
    CHECK(down.eta_I[0] == doctest::Approx(M_PI).epsilon(1e-8));
    CHECK_FALSE(down.eta_R.has_value());
    CHECK(down.real_dimension() == 1);
}

TEST_CASE("modulus of the cubics") {
    // z^3 - z: three real roots, two symmetric zones, both with time i pi
    // (partial fractions -1/z + (1/2)/(z-1) + (1/2)/(z+1)).
    Modulus m3 = extract_modulus(RealPolyField(2, {-1.0, 0.0}));
    CHECK(m3.tau == NonXInvolution{2, 0, {1, 2}});
    REQUIRE(m3.eta_I.size() == 2);
    CHECK(m3.eta_I[0] == doctest::Approx(M_PI).epsilon(1e-8));
    CHECK(m3.eta_I[1] == doctest::Approx(M_PI).epsilon(1e-8));
    CHECK(m3.real_dimension() == 2);

    // z^3 + z: one real root, one zone pair; the upper time is i pi by the
    // residue of 1/P at i over the horizontal crossing.
    Modulus m1 = extract_modulus(RealPolyField(2, {1.0, 0.0}));
    CHECK(m1.tau == NonXInvolution{2, 0, {2, 1}});
    REQUIRE(m1.eta_H.size() == 1);
    CHECK(std::abs(m1.eta_H[0] - cplx(0, M_PI)) < 1e-8);
    CHECK(m1.real_dimension() == 2);
}

TEST_CASE("symmetry law and refinement stability") {
    // Asymmetric quartic with m = 2: (z^2-1)(z^2 + z + 2.5), recentered.
    // Build it numerically from the coefficient product.
    // (z^2-1)(z^2+z+2.5) = z^4 + z^3 + 1.5 z^2 - z - 2.5; center with z -> z - 1/4.
    Normalized n = normalize({1.0, 1.0, 1.5, -1.0, -2.5});
    const RealPolyField P = n.poly;
    FieldAnalysis fa = FieldAnalysis::build(P, Tolerances{});
    NonXInvolution tau = extract_combinatorial(fa);
    CHECK(tau.real_point_count() == 2);
    for (int j = 1; j <= tau.domain_size(); ++j) {
        int t = tau.tau_extended(j);
        cplx upper = transversal_time(fa, {j, t});
        cplx mirror = transversal_time(fa, {-j, -t});
        CHECK(std::abs(upper - (-std::conj(mirror))) < 1e-8 * std::max(1.0, std::abs(upper)));
    }

    // Halving the integration tolerances moves the coordinates by < 1e-6 rel.
    Tolerances fine;
    fine.trace_tol /= 16.0;
    fine.quad_tol /= 16.0;
    auto base_coords = modulus_coords(extract_modulus(P, Tolerances{}));
    auto fine_coords = modulus_coords(extract_modulus(P, fine));
    REQUIRE(base_coords.size() == fine_coords.size());
    for (std::size_t i = 0; i < base_coords.size(); ++i)
        CHECK(std::abs(base_coords[i] - fine_coords[i]) <=
              1e-6 * std::max(1.0, std::abs(base_coords[i])));
}

TEST_CASE("residue route agrees with explicit path quadrature") {
    // The quadrature route integrates dz/P along rays, orbit legs and a
    // circular arc; it is independent of the residue bookkeeping.
    std::vector<RealPolyField> cases = {
        RealPolyField(1, {-1.0}),      // z^2 - 1
        RealPolyField(1, {-4.0}),      // z^2 - 4
        RealPolyField(2, {-1.0, 0.0}), // z^3 - z
        RealPolyField(2, {1.0, 0.0}),  // z^3 + z
        RealPolyField(2, {-1.0, 0.3}),
        RealPolyField(3, {-1.0, 0.1, 0.05}),
    };
    for (const auto& P : cases) {
        FieldAnalysis fa = FieldAnalysis::build(P, Tolerances{});
        NonXInvolution tau = extract_combinatorial(fa);
        for (int j = 1; j <= tau.domain_size(); ++j) {
            int t = tau.tau_extended(j);
            if (t != -j && t < j) continue; // one representative per zone pair
            cplx exact = transversal_time(fa, {j, t});
            cplx quad = transversal_time_quadrature(fa, {j, t});
            CHECK(std::abs(exact - quad) < 1e-8 * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST_CASE("deep homoclinic strata extract to their construction target") {
    // k=7, tau = (12)(34)(56): the upper attachment permutation has a
    // 3-cycle, which pins the rotation direction of the m=0 extraction.
    NonXInvolution tau{7, 1, {2, 1, 4, 3, 6, 5}};
    tau.validate();
    RealPolyField P = seed_for_stratum(tau);
    CHECK(extract_combinatorial(P) == tau);

    for (const auto& s5 : enumerate_strata(5)) {
        if (s5.ell != 1) continue;
        RealPolyField Q = seed_for_stratum(s5);
        CHECK(extract_combinatorial(Q) == s5);
    }
}

TEST_CASE("generic m=0 extraction") {
    // Two conjugate pairs away from the imaginary axis:
    // ((z-a)^2+b^2)((z+a)^2+c^2) with a=0.4, b=1, c=0.6.
    const double a = 0.4, b = 1.0, c = 0.6;
    // (z^2 - 2az + a^2+b^2)(z^2 + 2az + a^2+c^2)
    std::vector<double> f1{a * a + b * b, -2 * a, 1.0}; // ascending
    std::vector<double> f2{a * a + c * c, 2 * a, 1.0};
    std::vector<double> prod(5, 0.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) prod[static_cast<std::size_t>(i + j)] += f1[static_cast<std::size_t>(i)] * f2[static_cast<std::size_t>(j)];
    Normalized n = normalize({prod[4], prod[3], prod[2], prod[1], prod[0]});
    Modulus mod = extract_modulus(n.poly);
    CHECK(mod.tau.ell == 1);
    CHECK(mod.tau.k == 3);
    REQUIRE(mod.eta_H.size() == 1);
    CHECK(mod.eta_H[0].imag() > 0);
    REQUIRE(mod.eta_R.has_value());
    CHECK(*mod.eta_R > 0);
    CHECK(mod.real_dimension() == 3);
}
