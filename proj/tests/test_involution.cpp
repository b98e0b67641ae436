#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "stratakit/involution.hpp"

using namespace stratakit;

namespace {
NonXInvolution make(int k, int ell, std::vector<int> pairing) {
    NonXInvolution tau{k, ell, std::move(pairing)};
    tau.validate();
    return tau;
}
} // namespace

TEST_CASE("counting closed forms") {
    CHECK(catalan(0) == 1);
    CHECK(catalan(3) == 5);
    CHECK(dispersed_count(3) == 3);
    CHECK(count_D(3) == 4);
    CHECK(count_D(4) == 6);
    CHECK(count_D(7) == 40);
    CHECK(count_D(3) == dispersed_count(3) + catalan(1));
    CHECK(count_Dkm(3, 0) == 1);
    CHECK(count_Dkm(4, 3) == 3);
    CHECK(count_Dkm(4, 5) == 1);
    CHECK_THROWS_AS((void)count_Dkm(4, 2), InvalidInputError); // parity mismatch
}

TEST_CASE("enumeration at small k") {
    auto s1 = enumerate_strata(1);
    REQUIRE(s1.size() == 2);
    CHECK(s1[0] == make(1, 0, {1}));
    CHECK(s1[1] == make(1, 1, {}));
    CHECK(s1[0].real_point_count() == 2);
    CHECK(s1[1].real_point_count() == 0);

    auto s3 = enumerate_strata(3);
    REQUIRE(s3.size() == 4);
    std::set<std::string> keys;
    for (const auto& tau : s3) keys.insert(canonical_key(tau));
    CHECK(keys == std::set<std::string>{"0:fff", "0:fud", "0:udf", "1:ud"});

    // {(1 3), fix 2} is structurally an involution but the axis link of 2
    // crosses the 1-3 chord.
    NonXInvolution bad{3, 0, {3, 2, 1}};
    CHECK_FALSE(is_admissible(bad));
    CHECK_THROWS_AS(bad.validate(), InvalidInputError);

    auto s4 = enumerate_strata(4);
    REQUIRE(s4.size() == 6);
    std::multiset<int> ms;
    for (const auto& tau : s4) ms.insert(tau.real_point_count());
    CHECK(ms == std::multiset<int>{1, 1, 3, 3, 3, 5});
}

TEST_CASE("stratum identifiers follow the canonical order") {
    CHECK(stratum_id(make(3, 0, {1, 2, 3})) == "k3-0");
    CHECK(stratum_id(make(3, 0, {1, 3, 2})) == "k3-1"); // word fud
    CHECK(stratum_id(make(3, 0, {2, 1, 3})) == "k3-2"); // word udf
    CHECK(stratum_id(make(3, 1, {2, 1})) == "k3-3");
}

TEST_CASE("dispersed path encoding") {
    auto fff = involution_to_dispersed(make(3, 0, {1, 2, 3}));
    CHECK(fff.steps == std::vector<Step>{Step::flat, Step::flat, Step::flat});
    auto udf = involution_to_dispersed(make(3, 0, {2, 1, 3}));
    CHECK(udf.steps == std::vector<Step>{Step::up, Step::down, Step::flat});
    CHECK(dispersed_to_involution(udf) == make(3, 0, {2, 1, 3}));
    CHECK_THROWS_AS((void)involution_to_dispersed(make(3, 1, {2, 1})), InvalidInputError);

    DispersedDyckPath bad{{Step::up, Step::flat, Step::down}};
    CHECK_THROWS_AS(bad.validate(), InvalidInputError);
}

TEST_CASE("dispersed to plain path map") {
    CHECK(dispersed_to_plain(DispersedDyckPath{{Step::flat}}) == std::vector<int>{-1});
    CHECK(dispersed_to_plain(DispersedDyckPath{{Step::up, Step::down}}) == std::vector<int>{1, -1});
    // reflection after an odd flat
    CHECK(dispersed_to_plain(DispersedDyckPath{{Step::flat, Step::up, Step::down, Step::flat}}) ==
          std::vector<int>{-1, -1, 1, 1});

    // image over length 4 = all 6 balanced +-1 paths
    std::set<std::vector<int>> image;
    std::vector<DispersedDyckPath> all;
    for (int a = 0; a < 81; ++a) {
        int digits[4] = {a % 3, (a / 3) % 3, (a / 9) % 3, (a / 27) % 3};
        DispersedDyckPath p;
        for (int d : digits)
            p.steps.push_back(d == 0 ? Step::up : d == 1 ? Step::down : Step::flat);
        try {
            p.validate();
        } catch (const InvalidInputError&) {
            continue;
        }
        auto plain = dispersed_to_plain(p);
        CHECK(plain_to_dispersed(plain) == p);
        image.insert(plain);
    }
    CHECK(static_cast<long long>(image.size()) == dispersed_count(4));
    CHECK(image.size() == 6);
}

TEST_CASE("attachment classes") {
    SUBCASE("quadratic with two real roots") {
        auto d = attachment_classes(make(1, 0, {1}));
        CHECK(d.m == 2);
        CHECK(d.classes == std::vector<std::vector<int>>{{0}, {1}});
        REQUIRE(d.upper_forest.size() == 2);
        CHECK(d.upper_forest[0].edge_count() == 0);
        CHECK(d.upper_forest[1].edge_count() == 0);
    }
    SUBCASE("k=2 all ends linked across the axis") {
        auto d = attachment_classes(make(2, 0, {1, 2}));
        CHECK(d.m == 3);
        CHECK(d.classes == std::vector<std::vector<int>>{{0}, {1, 3}, {2}});
    }
    SUBCASE("k=2 with one real point") {
        auto d = attachment_classes(make(2, 0, {2, 1}));
        CHECK(d.m == 1);
        CHECK(d.classes == std::vector<std::vector<int>>{{0, 2}, {1}, {3}});
        REQUIRE(d.upper_forest.size() == 1);
        CHECK(d.upper_forest[0].edge_count() == 1);
    }
    SUBCASE("m = 0 upper quotient") {
        auto d = attachment_classes(make(3, 1, {2, 1}));
        CHECK(d.m == 0);
        CHECK(d.classes == std::vector<std::vector<int>>{{1}, {2}});
        REQUIRE(d.upper_forest.size() == 1);
        CHECK(d.upper_forest[0].edge_count() == 1);
    }
    SUBCASE("forest composition is ordered rightmost real root first") {
        auto left = attachment_classes(make(3, 0, {1, 3, 2})); // {(2 3), fix 1}
        REQUIRE(left.upper_forest.size() == 2);
        CHECK(left.upper_forest[0].edge_count() == 0);
        CHECK(left.upper_forest[1].edge_count() == 1);
        auto right = attachment_classes(make(3, 0, {2, 1, 3})); // {(1 2), fix 3}
        CHECK(right.upper_forest[0].edge_count() == 1);
        CHECK(right.upper_forest[1].edge_count() == 0);
    }
    SUBCASE("k=5 upper quotient sizes") {
        auto d = attachment_classes(make(5, 1, {2, 1, 4, 3}));
        CHECK(d.classes == std::vector<std::vector<int>>{{1}, {2, 4}, {3}});
    }
}

TEST_CASE("the forest is a complete stratum invariant") {
    for (int k = 1; k <= 6; ++k) {
        auto strata = enumerate_strata(k);
        std::set<std::string> encodings;
        std::map<std::string, long long> by_composition;
        for (const auto& tau : strata) {
            auto d = attachment_classes(tau);
            std::string enc = std::to_string(d.m) + "|";
            std::string comp;
            for (const auto& tree : d.upper_forest) {
                enc += tree.encode() + ";";
                comp += std::to_string(tree.edge_count()) + ",";
            }
            encodings.insert(enc);
            if (d.m > 0) ++by_composition[comp];
        }
        CHECK(static_cast<long long>(encodings.size()) == count_D(k));
        for (const auto& [comp, count] : by_composition) {
            long long want = 1;
            std::size_t pos = 0;
            while (pos < comp.size()) {
                std::size_t comma = comp.find(',', pos);
                want *= catalan(std::stoi(comp.substr(pos, comma - pos)));
                pos = comma + 1;
            }
            CHECK(count == want);
        }
    }
}

TEST_CASE("flat steps count the symmetric zones") {
    for (int k = 1; k <= 6; ++k)
        for (const auto& tau : enumerate_strata(k)) {
            if (tau.ell != 0) continue;
            auto path = involution_to_dispersed(tau);
            int flats = 0;
            for (Step s : path.steps) flats += s == Step::flat;
            CHECK(flats == tau.fixed_count());
            CHECK(flats == tau.real_point_count() - 1);
        }
}

TEST_CASE("landing classes mirror under conjugation") {
    for (int k = 1; k <= 5; ++k)
        for (const auto& tau : enumerate_strata(k)) {
            if (tau.real_point_count() == 0) continue;
            auto d = attachment_classes(tau);
            std::set<std::vector<int>> set(d.classes.begin(), d.classes.end());
            for (auto cls : d.classes) {
                for (int& i : cls) i = (2 * k - i) % (2 * k);
                std::sort(cls.begin(), cls.end());
                CHECK(set.count(cls) == 1);
            }
        }
}

TEST_CASE("successor construction") {
    auto [on_axis, off_axis] = successor_strata(make(1, 0, {1}));
    CHECK(on_axis == make(2, 0, {1, 2}));
    CHECK(off_axis == make(2, 0, {2, 1}));

    // m = 1 goes to the homoclinic family.
    auto [a2, b2] = successor_strata(make(2, 0, {2, 1}));
    CHECK(a2 == make(3, 0, {2, 1, 3}));
    CHECK(b2 == make(3, 1, {2, 1}));

    CHECK_THROWS_AS((void)successor_strata(make(1, 1, {})), InvalidInputError);

    // Surjectivity onto k=4 from the k=3 strata with a real point.
    std::multiset<std::string> image;
    for (const auto& tau : enumerate_strata(3)) {
        if (tau.real_point_count() == 0) continue;
        auto [x, y] = successor_strata(tau);
        image.insert(canonical_key(x));
        image.insert(canonical_key(y));
    }
    std::multiset<std::string> want;
    for (const auto& tau : enumerate_strata(4)) want.insert(canonical_key(tau));
    CHECK(image == want);
}

TEST_CASE("end label indexing") {
    for (int k : {1, 2, 3, 5}) {
        for (int j = 1; j <= k; ++j) {
            CHECK(index_to_end(end_to_index(j, k), k) == j);
            CHECK(index_to_end(end_to_index(-j, k), k) == -j);
        }
        CHECK(end_to_index(-1, k) == 0);
        CHECK(end_to_index(1, k) == 1);
    }
}
