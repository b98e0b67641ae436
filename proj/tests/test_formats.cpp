#include <doctest.h>

#include "stratakit/json_io.hpp"
#include "stratakit/svg.hpp"

using namespace stratakit;

TEST_CASE("polynomial JSON round trip") {
    RealPolyField P(3, {3.0, 0.0, -4.0});
    json j = to_json(P);
    CHECK(j["k"] == 3);
    CHECK(poly_from_json(j) == P);
    CHECK_THROWS_AS((void)poly_from_json(parse_json(R"({"k":2,"coeffs":[1]})", "t")),
                    InvalidInputError);
    CHECK_THROWS_AS((void)parse_json("{oops", "t"), InvalidInputError);
}

TEST_CASE("involution JSON round trip") {
    for (int k = 1; k <= 5; ++k) {
        for (const auto& tau : enumerate_strata(k)) {
            json j = to_json(tau);
            CHECK(involution_from_json(j) == tau);
        }
    }
    CHECK_THROWS_AS((void)involution_from_json(parse_json(R"({"k":3,"ell":0,"pairs":[[1,3]],"fixed":[2]})", "t")),
                    InvalidInputError); // crossing link
}

TEST_CASE("modulus JSON round trip") {
    Modulus mod = extract_modulus(RealPolyField(2, {1.0, 0.0}));
    Modulus back = modulus_from_json(to_json(mod));
    CHECK(back.tau == mod.tau);
    REQUIRE(back.eta_H.size() == mod.eta_H.size());
    CHECK(back.eta_H[0] == mod.eta_H[0]);
    CHECK(back.eta_R.has_value() == mod.eta_R.has_value());
}

TEST_CASE("trace dump lines are JSON") {
    FieldAnalysis fa = FieldAnalysis::build(RealPolyField(1, {-1.0}));
    std::string dump = trace_dump(fa);
    std::size_t lines = 0, pos = 0;
    while ((pos = dump.find('\n', pos)) != std::string::npos) {
        ++lines;
        ++pos;
    }
    CHECK(lines == 2);
    json first = parse_json(dump.substr(0, dump.find('\n')), "dump");
    CHECK(first.contains("points"));
    CHECK(first["landing"].get<int>() >= 0);
}

TEST_CASE("portrait SVG is stable and annotated") {
    PortraitSpec spec;
    spec.poly = RealPolyField(1, {-1.0});
    spec.tree_overlay = true;
    std::string a = render_portrait(spec);
    std::string b = render_portrait(spec);
    CHECK(a == b);
    CHECK(a.rfind("<svg", 0) == 0);
    CHECK(a.find("separatrix") != std::string::npos);
    CHECK(a.find("circle") != std::string::npos);
    CHECK(a.find("timestamp") == std::string::npos);

    // Non-generic input degrades to orbits plus a warning, not an error.
    PortraitSpec degenerate;
    degenerate.poly = RealPolyField(3, {5.0, 0.0, 4.0}); // symmetric center pairs
    std::string c = render_portrait(degenerate);
    CHECK(c.find("warning") != std::string::npos);
    CHECK(c.find("orbit") != std::string::npos);
}
