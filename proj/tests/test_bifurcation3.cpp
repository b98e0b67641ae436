#include <doctest.h>

#include <cmath>
#include <set>

#include "stratakit/bifurcation3.hpp"

using namespace stratakit;

TEST_CASE("discriminant values") {
    CHECK(k3_discriminant(0, 0, 0) == 0.0);
    CHECK(k3_discriminant(1, 0, 0.25) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(k3_discriminant(0, 0, 1) == 256.0);
    // weighted homogeneity: delta(r^2 e2, r^3 e1, r^4 e0) = r^12 delta
    const double r = 1.3, e2 = 0.7, e1 = -0.4, e0 = 0.9;
    CHECK(k3_discriminant(e2 * r * r, e1 * r * r * r, e0 * r * r * r * r) ==
          doctest::Approx(std::pow(r, 12) * k3_discriminant(e2, e1, e0)));
}

TEST_CASE("classification of marked points") {
    CHECK(classify_k3(1, 0, -1).label == "homoclinic-pair-m2");
    CHECK(classify_k3(1, 0, -1).m == 2);
    CHECK(classify_k3(2, 0, 1).label == "nonreal-parabolic-pair");
    CHECK(classify_k3(0, 0, 0).label == "higher-codim");
    CHECK(classify_k3(1, 0, 0).label == "higher-codim");   // parabolic at 0 + loops
    CHECK(classify_k3(-2, 0, 1).label == "higher-codim");  // two real parabolic points
    CHECK(classify_k3(-1, 0, -1).label == "homoclinic-pair-m2");
    CHECK(classify_k3(1, 0, 0.1).label == "homoclinic-pair-m0");

    K3Label gen = classify_k3(0, 1, 1);
    CHECK(gen.label == "generic");
    CHECK_FALSE(gen.stratum.empty());
    CHECK((k3_discriminant(0, 1, 1) != 0.0));

    // eps1 = 0 with four real roots is generic, not a bifurcation.
    K3Label four_real = classify_k3(-5, 0, 4); // (z^2-1)(z^2-4)
    CHECK(four_real.label == "generic");
    CHECK(four_real.m == 4);
    CHECK(four_real.stratum == "k3-0");
}

TEST_CASE("swallowtail face point") {
    // z^2 (z^2 - 1) = z^4 - z^2: double root at 0, simple at +-1: eps = (-1, 0, 0)
    // but that sits on eps1 = eps0 = 0 with eps2 < 0: swallowtail face edge.
    K3Label lab = classify_k3(-1, 0, 0);
    CHECK(lab.label == "real-parabolic");
    CHECK(lab.m == 3);

    // (z-1)^2 (z^2 + 2z + 2), recentered: a clean codim-1 face point.
    // Expand: z^4 - 3 z^2 + ... use normalize on the raw product.
    // (z^2 - 2z + 1)(z^2 + 2z + 2) = z^4 + 0 z^3 - z^2 - 2 z + 2
    K3Label face = classify_k3(-1, -2, 2);
    CHECK(face.label == "real-parabolic");
}

TEST_CASE("sweep along eps1 = 0, eps2 = 1") {
    auto sweep = sample_k3_sweep(1.0, -1.0, 1.0, 41);
    std::vector<std::string> labels;
    for (const auto& s : sweep) labels.push_back(s.label.label);
    CHECK(labels[0] == "homoclinic-pair-m2");
    CHECK(labels[19] == "homoclinic-pair-m2");
    CHECK(labels[20] == "higher-codim");           // eps0 = 0
    CHECK(labels[21] == "homoclinic-pair-m0");
    CHECK(labels[24] == "homoclinic-pair-m0");
    CHECK(labels[25] == "nonreal-parabolic-pair"); // eps0 = 1/4
    CHECK(labels[26] == "generic");
    CHECK(sweep[26].label.m == 0);
    CHECK(labels[40] == "generic");
}

TEST_CASE("scaling invariance of labels") {
    const double pts[][4] = {{0.3, 1.2, -0.7, 2.0}, {-1.5, 0.2, 0.4, 0.5},
                             {1.0, 0.0, -1.0, 3.0}, {2.0, 0.0, 1.0, 0.7},
                             {0.0, 1.0, 1.0, 1.9}};
    for (const auto& c : pts) {
        K3Label a = classify_k3(c[0], c[1], c[2]);
        double r = c[3];
        K3Label b = classify_k3(c[0] * r * r, c[1] * r * r * r, c[2] * r * r * r * r);
        CHECK(a.label == b.label);
        CHECK(a.stratum == b.stratum);
        CHECK(a.m == b.m);
    }
}

TEST_CASE("the loop surface carries centers") {
    // eps1 = 0, eps2 > 0, 0 < eps0 < eps2^2/4 forces a purely imaginary
    // eigenvalue at some nonreal root.
    const double pts[][2] = {{1.0, 0.1}, {2.0, 0.5}, {3.0, 1.0}, {1.5, 0.2}};
    for (auto [e2, e0] : pts) {
        bool center = false;
        for (const auto& sp : find_roots(RealPolyField(3, {e2, 0.0, e0}))) {
            CHECK_FALSE(sp.is_real);
            if (!sp.is_real && std::abs(sp.eigenvalue.real()) < 1e-9 * std::abs(sp.eigenvalue))
                center = true;
        }
        CHECK(center);
        CHECK(classify_k3(e2, 0.0, e0).label == "homoclinic-pair-m0");
    }
}

TEST_CASE("all four strata appear in a 10^4 box sample") {
    auto cloud = sample_k3_box(10000, 2026, -2.0, 2.0);
    std::set<std::string> strata;
    std::size_t generic = 0;
    for (const auto& s : cloud) {
        if (s.label.label == "generic") {
            ++generic;
            CHECK_FALSE(s.label.stratum.empty());
            strata.insert(s.label.stratum);
        }
    }
    CHECK(strata == std::set<std::string>{"k3-0", "k3-1", "k3-2", "k3-3"});
    // measure-zero loci are hit with frequency ~0 outside the tolerance bands
    CHECK(generic >= cloud.size() * 99 / 100);
}
