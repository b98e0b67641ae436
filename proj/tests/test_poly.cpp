#include <doctest.h>

#include <cmath>

#include "stratakit/linalg.hpp"
#include "stratakit/poly.hpp"
#include "stratakit/rng.hpp"

using namespace stratakit;

namespace {
const SingularPoint* root_at(const std::vector<SingularPoint>& roots, cplx where) {
    for (const auto& sp : roots)
        if (std::abs(sp.location - where) < 1e-6) return &sp;
    return nullptr;
}
} // namespace

TEST_CASE("horner evaluation") {
    CHECK(eval(RealPolyField(1, {1.0}), cplx(0, 0)) == cplx(1, 0));
    CHECK(std::abs(eval(RealPolyField(1, {-1.0}), cplx(1, 0))) == 0.0);
    // z^4 + z^2 + 1 at i: 1 - 1 + 1
    CHECK(std::abs(eval(RealPolyField(3, {1.0, 0.0, 1.0}), cplx(0, 1)) - cplx(1, 0)) < 1e-15);
    // derivative of z^3 + 2z + 5 is 3z^2 + 2
    CHECK(std::abs(eval_derivative(RealPolyField(2, {2.0, 5.0}), cplx(2, 0)) - cplx(14, 0)) < 1e-12);
}

TEST_CASE("eigenvalue typing") {
    CHECK(classify_eigenvalue(cplx(2, 0)) == PointKind::radial_node);
    CHECK(classify_eigenvalue(cplx(0, 3)) == PointKind::center);
    CHECK(classify_eigenvalue(cplx(1, 1)) == PointKind::strong_focus);
    CHECK(classify_eigenvalue(cplx(0, 0)) == PointKind::parabolic);
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        cplx lam(rng.uniform(-3, 3), rng.uniform(-3, 3));
        CHECK(classify_eigenvalue(std::conj(lam)) == classify_eigenvalue(lam));
    }
}

TEST_CASE("roots of the basic quadratics") {
    auto up = find_roots(RealPolyField(1, {1.0})); // z^2 + 1
    REQUIRE(up.size() == 2);
    const auto* at_i = root_at(up, cplx(0, 1));
    REQUIRE(at_i);
    CHECK(at_i->kind == PointKind::center);
    CHECK(std::abs(at_i->eigenvalue - cplx(0, 2)) < 1e-12);
    CHECK(std::abs(at_i->residue - cplx(0, -0.5)) < 1e-12);
    CHECK_FALSE(at_i->is_real);

    auto down = find_roots(RealPolyField(1, {-1.0})); // z^2 - 1
    const auto* at_1 = root_at(down, cplx(1, 0));
    REQUIRE(at_1);
    CHECK(at_1->kind == PointKind::radial_node);
    CHECK(at_1->is_real);
    CHECK(std::abs(at_1->eigenvalue - cplx(2, 0)) < 1e-12);
}

TEST_CASE("multiple root is detected and typed parabolic") {
    auto roots = find_roots(RealPolyField(3, {1.0, 0.0, 0.0})); // z^4 + z^2 = z^2 (z^2+1)
    REQUIRE(roots.size() == 3);
    const auto* origin = root_at(roots, cplx(0, 0));
    REQUIRE(origin);
    CHECK(origin->multiplicity == 2);
    CHECK(origin->kind == PointKind::parabolic);
    CHECK(std::abs(origin->residue) < 1e-10); // cofactor 1/(1+w^2) has no linear term
    CHECK(root_at(roots, cplx(0, 1))->multiplicity == 1);
}

TEST_CASE("residue identities") {
    CHECK(std::abs(residue_sum(RealPolyField(1, {1.0}))) < 1e-12);
    CHECK(std::abs(residue_sum(RealPolyField(1, {-1.0}))) < 1e-12);
    CHECK(std::abs(residue_sum(RealPolyField(3, {1.0, 1.0, 1.0}))) < 1e-10);

    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        int k = 1 + static_cast<int>(rng.uniform(0, 5.999));
        std::vector<double> eps(static_cast<std::size_t>(k));
        for (double& e : eps) e = rng.uniform(-5, 5);
        RealPolyField P(k, eps);
        CHECK(std::abs(residue_sum(P)) < 1e-10);
        for (const auto& sp : find_roots(P))
            if (sp.multiplicity == 1)
                CHECK(std::abs(sp.residue * sp.eigenvalue - 1.0) < 1e-11);
    }
}

TEST_CASE("conjugate closure and root count") {
    Rng rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        int k = 1 + static_cast<int>(rng.uniform(0, 5.999));
        std::vector<double> eps(static_cast<std::size_t>(k));
        for (double& e : eps) e = rng.uniform(-4, 4);
        auto roots = find_roots(RealPolyField(k, eps));
        int total = 0;
        for (const auto& sp : roots) {
            total += sp.multiplicity;
            if (!sp.is_real) {
                bool has_conj = false;
                for (const auto& other : roots)
                    if (std::abs(other.location - std::conj(sp.location)) == 0.0 &&
                        other.multiplicity == sp.multiplicity)
                        has_conj = true;
                CHECK(has_conj);
            }
        }
        CHECK(total == k + 1);
    }
}

TEST_CASE("genericity report") {
    auto r1 = is_generic_real(RealPolyField(1, {1.0}));
    CHECK_FALSE(r1.generic);
    CHECK(r1.diagnostic.find("center") != std::string::npos);

    CHECK(is_generic_real(RealPolyField(1, {-1.0})).generic);

    auto r3 = is_generic_real(RealPolyField(3, {1.0, 0.0, 0.0}));
    CHECK_FALSE(r3.generic);
    CHECK(r3.diagnostic.find("multiple") != std::string::npos);

    // Nonreal eigenvalue 1e-8-close (relative) to the imaginary axis:
    // borderline, distinct from a clean false.
    CHECK_THROWS_AS((void)is_generic_real(RealPolyField(3, {5.0, -6e-8, 4.0})), NotGenericError);
}

TEST_CASE("normalization") {
    SUBCASE("complete the square and absorb the leading factor") {
        Normalized n = normalize({2.0, 4.0, 2.0});
        CHECK(n.poly.k == 1);
        CHECK(n.poly.eps[0] == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(n.change.shift == doctest::Approx(-1.0));
        CHECK(n.change.scale == doctest::Approx(0.5));
        CHECK_FALSE(n.change.time_reversed);
    }
    SUBCASE("already normal is untouched") {
        Normalized n = normalize({1.0, 0.0, 0.7, -0.3});
        CHECK(n.change.shift == 0.0);
        CHECK(n.change.scale == 1.0);
        CHECK(n.poly.eps[0] == doctest::Approx(0.7));
        CHECK(n.poly.eps[1] == doctest::Approx(-0.3));
    }
    SUBCASE("negative leading with even k sets the time-reversal flag") {
        Normalized n = normalize({-1.0, 0.0, 0.0, 1.0});
        CHECK(n.change.time_reversed);
        CHECK(n.poly.eps[0] == doctest::Approx(0.0));
        CHECK(n.poly.eps[1] == doctest::Approx(-1.0));
    }
    SUBCASE("negative leading with odd k flips space instead") {
        Normalized n = normalize({-2.0, 0.0, 1.0}); // -2z^2 + 1, k=1
        CHECK_FALSE(n.change.time_reversed);
        CHECK(n.change.scale < 0.0);
    }
    SUBCASE("the affine record pulls roots back to the input") {
        std::vector<double> raw{3.0, -2.0, 1.5, 0.25};
        Normalized n = normalize(raw);
        for (const auto& sp : find_roots(n.poly)) {
            cplx z = n.change.shift + n.change.scale * sp.location;
            cplx value = raw[0] * z * z * z + raw[1] * z * z + raw[2] * z + raw[3];
            CHECK(std::abs(value) < 1e-10);
        }
    }
    SUBCASE("idempotent on its own output") {
        Rng rng(5);
        for (int t = 0; t < 40; ++t) {
            std::vector<double> raw(5);
            for (double& c : raw) c = rng.uniform(-3, 3);
            if (std::abs(raw[0]) < 0.1) raw[0] = 1.0;
            Normalized n1 = normalize(raw);
            std::vector<double> redo{1.0, 0.0};
            for (double e : n1.poly.eps) redo.push_back(e);
            Normalized n2 = normalize(redo);
            CHECK(n2.change.shift == 0.0);
            CHECK(n2.change.scale == 1.0);
            for (std::size_t i = 0; i < n1.poly.eps.size(); ++i)
                CHECK(n2.poly.eps[i] == doctest::Approx(n1.poly.eps[i]).epsilon(1e-12));
        }
    }
    SUBCASE("zero leading coefficient is rejected") {
        CHECK_THROWS_AS((void)normalize({0.0, 1.0, 1.0}), InvalidInputError);
    }
}

TEST_CASE("unfolding of a nonreal parabolic point") {
    SUBCASE("full-degree double pair (z^2+1)^2") {
        RealPolyField P(3, {2.0, 0.0, 1.0});
        auto fam = unfold_parabolic(P, cplx(0, 1));
        CHECK(fam.multiplicity_s() == 2);
        RealPolyField at0 = fam.evaluate({0, 0, 0});
        for (int i = 0; i < 3; ++i)
            CHECK(at0.eps[static_cast<std::size_t>(i)] ==
                  doctest::Approx(P.eps[static_cast<std::size_t>(i)]).epsilon(1e-9));
        Rng rng(3);
        for (int t = 0; t < 20; ++t) {
            std::vector<double> nu{rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1)};
            RealPolyField Q = fam.evaluate(nu); // real + centered or it would throw
            CHECK(Q.k == 3);
        }
        double sv = min_singular_value_scaled(unfolding_jacobian(fam));
        CHECK(sv > 1e-6);
    }
    SUBCASE("simple pair with a cofactor") {
        // (z^2+1)(z-c), centered: c = 0.
        RealPolyField P(2, {1.0, 0.0});
        auto fam = unfold_parabolic(P, cplx(0, 1));
        CHECK(fam.multiplicity_s() == 1);
        double sv = min_singular_value_scaled(unfolding_jacobian(fam));
        CHECK(sv > 1e-6);
    }
    SUBCASE("rejects real or non-root locations") {
        RealPolyField P(2, {1.0, 0.0});
        CHECK_THROWS_AS((void)unfold_parabolic(P, cplx(0, 0)), InvalidInputError);
        CHECK_THROWS_AS((void)unfold_parabolic(P, cplx(1, 1)), InvalidInputError);
    }
}

TEST_CASE("small dense singular values") {
    // diag(3, 2, 1) in disguise: orthogonal rows scaled.
    Matrix A{{3, 0, 0}, {0, 2, 0}, {0, 0, 1}};
    auto sv = singular_values(A);
    REQUIRE(sv.size() == 3);
    CHECK(sv[0] == doctest::Approx(3.0));
    CHECK(sv[2] == doctest::Approx(1.0));

    Matrix B{{1, 2}, {2, 4}}; // rank one
    auto svb = singular_values(B);
    CHECK(svb[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(min_singular_value_scaled(B) == doctest::Approx(0.0).epsilon(1e-10));

    auto x = solve_linear({{2, 1}, {1, 3}}, {5, 10});
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(3.0));
    CHECK_THROWS_AS((void)solve_linear({{1, 1}, {1, 1}}, {1, 2}), NumericFailureError);
}
