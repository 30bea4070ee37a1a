#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <set>

#include "rng.hpp"

using namespace sqpc;

TEST_CASE("same seed gives the same stream") {
    RandomStream a(12345), b(12345);
    for (int i = 0; i < 100; ++i) CHECK(a.raw() == b.raw());
}

TEST_CASE("derived streams are reproducible and tag-sensitive") {
    auto a1 = RandomStream::derive(7, "alpha");
    auto a2 = RandomStream::derive(7, "alpha");
    auto b = RandomStream::derive(7, "beta");
    auto c = RandomStream::derive(7, "alpha", 1);
    std::uint64_t va = a1.raw();
    CHECK(va == a2.raw());
    CHECK(va != b.raw());
    CHECK(va != c.raw());
}

TEST_CASE("next_double stays in [0, 1)") {
    RandomStream r(99);
    for (int i = 0; i < 10000; ++i) {
        double u = r.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("uniform_int covers its range and nothing else") {
    RandomStream r(3);
    std::set<int> seen;
    for (int i = 0; i < 5000; ++i) {
        int v = r.uniform_int(7);
        CHECK(v >= 0);
        CHECK(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
    CHECK(RandomStream(0).uniform_int(1) == 0);
    CHECK_THROWS_AS(RandomStream(0).uniform_int(0), std::invalid_argument);
}

TEST_CASE("coin is roughly fair") {
    RandomStream r(17);
    int heads = 0;
    for (int i = 0; i < 20000; ++i) heads += r.coin();
    CHECK(std::abs(heads - 10000) < 500); // ~7 sigma
}

TEST_CASE("sample_pmf scans outcomes in ascending order") {
    // A point mass picks its own index regardless of the draw.
    for (int target = 0; target < 4; ++target) {
        std::vector<double> pmf(4, 0.0);
        pmf[target] = 1.0;
        RandomStream r(5);
        for (int i = 0; i < 20; ++i) CHECK(r.sample_pmf(pmf) == target);
    }
    // Leading zero mass is never selected.
    RandomStream r(8);
    std::vector<double> pmf{0.0, 0.5, 0.5};
    for (int i = 0; i < 2000; ++i) CHECK(r.sample_pmf(pmf) != 0);
    CHECK_THROWS_AS(r.sample_pmf({}), std::invalid_argument);
    CHECK_THROWS_AS(r.sample_pmf({0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("sample_pmf consumes exactly one double") {
    RandomStream a(21), b(21);
    std::vector<double> pmf{0.25, 0.25, 0.5};
    (void)a.sample_pmf(pmf);
    (void)b.next_double();
    CHECK(a.raw() == b.raw());
}

TEST_CASE("gaussian moments are sane") {
    RandomStream r(1);
    double sum = 0.0, sq = 0.0;
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
        double g = r.next_gaussian();
        sum += g;
        sq += g * g;
    }
    CHECK(std::abs(sum / n) < 0.02);
    CHECK(std::abs(sq / n - 1.0) < 0.03);
}

TEST_CASE("mix64 and hash_tag are stable and nontrivial") {
    CHECK(mix64(0) != 0);
    CHECK(mix64(1) != mix64(2));
    CHECK(hash_tag("tp-prep/alice") != hash_tag("tp-prep/bob"));
    CHECK(hash_tag("x") == hash_tag("x"));
}
