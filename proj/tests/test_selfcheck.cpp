#include <doctest.h>

#include "stratakit/selfcheck.hpp"

using namespace stratakit;

TEST_CASE("filtering runs only the named criteria") {
    SelfcheckOptions opts;
    opts.filter = "residue";
    auto results = run_selfcheck(opts);
    REQUIRE(results.size() == 1);
    CHECK(results[0].name == "poly/residues");
    CHECK(results[0].pass);
}

TEST_CASE("corrupted integration tolerances break the tight checks but not the exact ones") {
    SelfcheckOptions corrupted;
    corrupted.tol.trace_tol = 1e-1;
    corrupted.tol.quad_tol = 1e-3;
    corrupted.tol.newton_iter_cap = 4;
    corrupted.tol.continuation_cap = 4;

    corrupted.filter = "residue";
    auto exact = run_selfcheck(corrupted);
    REQUIRE(exact.size() == 1);
    CHECK(exact[0].pass); // exact arithmetic does not see the trace tolerance

    corrupted.filter = "round-trip";
    auto loose = run_selfcheck(corrupted);
    REQUIRE(loose.size() == 1);
    CHECK_FALSE(loose[0].pass);
}
