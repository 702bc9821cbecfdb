#include <vector>

#include "doctest.h"
#include "helpers.hpp"

#include "capstruct/errors.hpp"
#include "capstruct/wasserstein.hpp"

using namespace capstruct;
using namespace capstruct::testing;

namespace {

DiscreteDistribution random_distribution(Rng& rng, std::size_t max_support = 12) {
    std::size_t n = 1 + rng.below(max_support);
    std::vector<double> values(n), weights(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = rng.uniform(-5.0, 5.0);
        weights[i] = rng.uniform(0.05, 1.0);
        total += weights[i];
    }
    for (auto& w : weights) w /= total;
    // Renormalize exactly enough for the 1e-12 invariant.
    double s = 0.0;
    for (double w : weights) s += w;
    weights[0] += 1.0 - s;
    return DiscreteDistribution::make(std::move(values), std::move(weights));
}

} // namespace

TEST_SUITE_BEGIN("wasserstein");

TEST_CASE("distance from a distribution to itself is zero") {
    Rng rng(50);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = random_distribution(rng);
        CHECK(wasserstein(f, f) == 0.0);
    }
}

TEST_CASE("opposite point masses are distance one apart") {
    auto a = DiscreteDistribution::uniform({1.0});
    auto b = DiscreteDistribution::uniform({0.0});
    CHECK(wasserstein(a, b) == 1.0);
}

TEST_CASE("two-point uniform hand value") {
    auto a = DiscreteDistribution::uniform({0.7, 0.3});
    auto b = DiscreteDistribution::uniform({0.5, 0.5});
    CHECK(wasserstein(a, b) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("equal-n closed form hand values") {
    CHECK(wasserstein_equal_n(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}) == 0.0);
    CHECK(wasserstein_equal_n(std::vector<double>{0, 1}, std::vector<double>{1, 0}) == 0.0);
    CHECK(wasserstein_equal_n(std::vector<double>{0.6, 0.3, 0.1},
                              std::vector<double>{0.4, 0.4, 0.2}) ==
          doctest::Approx(0.4 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(wasserstein_equal_n(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}),
                    ContractError);
}

TEST_CASE("general path equals the closed form on uniform equal-size inputs") {
    Rng rng(51);
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t n = 1 + rng.below(30);
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng.uniform(-10.0, 10.0);
            b[i] = rng.uniform(-10.0, 10.0);
        }
        double general = wasserstein(DiscreteDistribution::uniform(a),
                                     DiscreteDistribution::uniform(b));
        CHECK(general == doctest::Approx(wasserstein_equal_n(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("metric axioms on random weighted distributions") {
    Rng rng(52);
    for (int trial = 0; trial < 200; ++trial) {
        auto f = random_distribution(rng);
        auto g = random_distribution(rng);
        auto h = random_distribution(rng);
        double fg = wasserstein(f, g);
        double gf = wasserstein(g, f);
        double fh = wasserstein(f, h);
        double gh = wasserstein(g, h);
        CHECK(fg >= 0.0);
        CHECK(std::abs(fg - gf) <= 1e-12);
        CHECK(fg <= fh + gh + 1e-9);
    }
}

TEST_CASE("translation covariance and the shift identity") {
    Rng rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        auto f = random_distribution(rng);
        auto g = random_distribution(rng);
        double c = rng.uniform(-3.0, 3.0);
        auto shift = [&](const DiscreteDistribution& d) {
            auto vals = d.values;
            for (auto& v : vals) v += c;
            return DiscreteDistribution::make(vals, d.weights);
        };
        CHECK(wasserstein(shift(f), shift(g)) == doctest::Approx(wasserstein(f, g)).epsilon(1e-12));
        // Shifting one copy of the same distribution moves it by exactly |c|.
        CHECK(wasserstein(f, shift(f)) == doctest::Approx(std::abs(c)).epsilon(1e-12));
    }
}

TEST_CASE("splitting a support point leaves distances unchanged") {
    Rng rng(54);
    for (int trial = 0; trial < 100; ++trial) {
        auto f = random_distribution(rng);
        auto g = random_distribution(rng);
        std::size_t pick = rng.below(f.size());
        std::vector<double> vals = f.values;
        std::vector<double> wts = f.weights;
        vals.push_back(vals[pick]);
        wts[pick] *= 0.5;
        wts.push_back(wts[pick]);
        auto split = DiscreteDistribution::make(std::move(vals), std::move(wts));
        CHECK(wasserstein(split, g) == doctest::Approx(wasserstein(f, g)).epsilon(1e-12));
    }
}

TEST_CASE("zero-weight support points are ignored") {
    auto f = DiscreteDistribution::make({0.0, 99.0}, {1.0, 0.0});
    auto g = DiscreteDistribution::uniform({0.0});
    CHECK(wasserstein(f, g) == 0.0);
}

TEST_CASE("distribution invariants are enforced") {
    CHECK_THROWS_AS(DiscreteDistribution::make({1.0, 2.0}, {0.5}), ContractError);
    CHECK_THROWS_AS(DiscreteDistribution::make({1.0}, {-1.0}), ContractError);
    CHECK_THROWS_AS(DiscreteDistribution::make({1.0, 2.0}, {0.6, 0.6}), ContractError);
    CHECK_THROWS_AS(DiscreteDistribution::uniform({}), UndefinedValueError);
}

TEST_CASE("normalized cap distribution of a month") {
    Panel caps = make_panel(PanelKind::Cap, dates({"2004-01-30", "2004-02-27"}),
                            {"A", "B", "C"},
                            {{2.0, 2.0, std::nullopt}, {6.0, 3.0, 1.0}});
    auto d0 = normalized_cap_distribution(caps, 0);
    REQUIRE(d0.size() == 2);
    CHECK(d0.values[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d0.weights[0] == doctest::Approx(0.5).epsilon(1e-15));

    auto d1 = normalized_cap_distribution(caps, 1);
    REQUIRE(d1.size() == 3);
    CHECK(d1.values[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(d1.values[1] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(d1.values[2] == doctest::Approx(0.1).epsilon(1e-15));

    Panel sparse = make_panel(PanelKind::Cap, dates({"2004-01-30"}), {"A", "B"},
                              {{4.0, std::nullopt}});
    auto d2 = normalized_cap_distribution(sparse, 0);
    REQUIRE(d2.size() == 1);
    CHECK(d2.values[0] == 1.0);
    CHECK(d2.weights[0] == 1.0);
}

TEST_CASE("distance matrix structure") {
    auto f = DiscreteDistribution::uniform({0.2, 0.8});
    auto g = DiscreteDistribution::uniform({0.5, 0.5});
    auto m2 = distance_matrix({f, f}, {"a", "b"});
    CHECK(m2.at(0, 1) == 0.0);
    CHECK(m2.at(1, 0) == 0.0);

    auto m3 = distance_matrix({f, g, f}, {"a", "b", "c"});
    CHECK(m3.at(0, 2) == 0.0);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(m3.at(i, i) == 0.0);
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(m3.at(i, j) == m3.at(j, i));
        }
    }
    m3.validate();
}

TEST_CASE("distance matrix over random distributions satisfies the triangle inequality") {
    Rng rng(55);
    std::vector<DiscreteDistribution> dists;
    std::vector<std::string> labels;
    for (int i = 0; i < 4; ++i) {
        dists.push_back(random_distribution(rng));
        labels.push_back("d" + std::to_string(i));
    }
    auto m = distance_matrix(dists, labels);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            for (std::size_t k = 0; k < 4; ++k) {
                CHECK(m.at(i, j) <= m.at(i, k) + m.at(k, j) + 1e-9);
            }
        }
    }
}

TEST_CASE("distance matrix is identical across thread counts") {
    Rng rng(56);
    std::vector<DiscreteDistribution> dists;
    std::vector<std::string> labels;
    for (int i = 0; i < 9; ++i) {
        dists.push_back(random_distribution(rng));
        labels.push_back(std::to_string(i));
    }
    auto serial = distance_matrix(dists, labels, 1);
    auto parallel = distance_matrix(dists, labels, 4);
    CHECK(serial.entries == parallel.entries);
}

TEST_SUITE_END();
