#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "csada/rng.hpp"

using csada::Rng;

TEST_CASE("same seed and stream reproduce the exact sequence") {
    Rng a(123, 0), b(123, 0);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different streams from one seed do not collide") {
    Rng a(123, 0), b(123, 1);
    std::size_t same = 0;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() == b.next_u64()) ++same;
    CHECK(same == 0);
}

TEST_CASE("uniform stays in [0,1) and uniform_open in (0,1)") {
    Rng rng(9, 0);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    Rng rng2(9, 1);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng2.uniform_open();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("normal draws have roughly standard moments") {
    Rng rng(2024, 0);
    const int n = 50000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("pareto inverse transform at a fixed quantile") {
    // scale 1, shape 1.5 at u = 0.25 sits at 0.25^(-2/3)
    const double x = csada::pareto_from_uniform(0.25, 1.0, 1.5);
    CHECK(std::abs(x - std::pow(0.25, -2.0 / 3.0)) <= 1e-12);
    CHECK(std::abs(x - 2.5198420997897464) <= 1e-12);
}

TEST_CASE("pareto samples respect support and the mean is near 3") {
    Rng rng(5, 0);
    const int n = 200000;
    double sum = 0.0;
    double lo = 1e300;
    for (int i = 0; i < n; ++i) {
        const double x = csada::pareto_sample(rng, 1.0, 1.5);
        lo = std::min(lo, x);
        sum += x;
    }
    CHECK(lo >= 1.0);
    // heavy tail: loose 10% band around the analytic mean shape/(shape-1) = 3
    CHECK(std::abs(sum / n - 3.0) < 0.3);
}

TEST_CASE("shuffle permutes without loss and is seed-deterministic") {
    std::vector<int> v(100);
    for (int i = 0; i < 100; ++i) v[i] = i;
    std::vector<int> w = v;
    Rng a(77, 0);
    a.shuffle(w);
    CHECK(w != v); // astronomically unlikely to be identity
    std::vector<int> sorted = w;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == v);

    std::vector<int> w2 = v;
    Rng b(77, 0);
    b.shuffle(w2);
    CHECK(w2 == w);
}

TEST_CASE("gaussian sampler matches requested mean and covariance") {
    Rng rng(31, 0);
    const std::vector<double> mean{1.0, -2.0};
    const csada::Matrix cov{{2.0, 0.5}, {0.5, 2.0}};
    const auto pts = csada::gauss_sample(rng, mean, cov, 50000);
    REQUIRE(pts.rows == 50000);
    REQUIRE(pts.cols == 2);
    double m0 = 0, m1 = 0;
    for (std::size_t i = 0; i < pts.rows; ++i) {
        m0 += pts(i, 0);
        m1 += pts(i, 1);
    }
    m0 /= pts.rows;
    m1 /= pts.rows;
    CHECK(std::abs(m0 - 1.0) < 0.05);
    CHECK(std::abs(m1 + 2.0) < 0.05);
    double c00 = 0, c01 = 0, c11 = 0;
    for (std::size_t i = 0; i < pts.rows; ++i) {
        const double d0 = pts(i, 0) - m0, d1 = pts(i, 1) - m1;
        c00 += d0 * d0;
        c01 += d0 * d1;
        c11 += d1 * d1;
    }
    c00 /= pts.rows;
    c01 /= pts.rows;
    c11 /= pts.rows;
    CHECK(std::abs(c00 - 2.0) < 0.1);
    CHECK(std::abs(c01 - 0.5) < 0.1);
    CHECK(std::abs(c11 - 2.0) < 0.1);
}

TEST_CASE("gaussian sampler rejects a non-positive-definite covariance") {
    Rng rng(1, 0);
    const std::vector<double> mean{0.0, 0.0};
    CHECK_THROWS_AS(csada::gauss_sample(rng, mean, csada::Matrix{{1.0, 3.0}, {3.0, 1.0}}, 10),
                    csada::validation_error);
    CHECK_THROWS_AS(csada::gauss_sample(rng, mean, csada::Matrix{{1.0, 0.2}, {0.3, 1.0}}, 10),
                    csada::validation_error);
}

TEST_CASE("softmax is shift-invariant and handles extreme logits") {
    const std::vector<double> logits{0.3, -1.2, 2.5};
    auto p = csada::softmax(logits);
    std::vector<double> shifted{logits[0] + 1000.0, logits[1] + 1000.0, logits[2] + 1000.0};
    auto q = csada::softmax(shifted);
    double sum = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(p[i] - q[i]) <= 1e-12);
        sum += p[i];
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);

    auto r = csada::softmax({1000.0, 0.0});
    CHECK(r[0] > 0.999999);
    CHECK(std::isfinite(r[0]));
    CHECK(std::isfinite(r[1]));
}

TEST_CASE("softmax of log-integers recovers the ratio") {
    auto p = csada::softmax({std::log(1.0), std::log(2.0), std::log(3.0)});
    CHECK(std::abs(p[0] - 1.0 / 6.0) <= 1e-12);
    CHECK(std::abs(p[1] - 2.0 / 6.0) <= 1e-12);
    CHECK(std::abs(p[2] - 3.0 / 6.0) <= 1e-12);
    CHECK_THROWS_AS(csada::softmax({}), csada::validation_error);
}

TEST_CASE("below covers the whole range") {
    Rng rng(8, 0);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const auto v = rng.below(7);
        CHECK(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
}
