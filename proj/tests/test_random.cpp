#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "bioblend/errors.hpp"
#include "bioblend/random.hpp"
#include "bioblend/stats.hpp"

using bioblend::RandomStream;

TEST_CASE("streams are deterministic for a fixed seed") {
    RandomStream a(1234);
    RandomStream b(1234);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

    RandomStream c(1235);
    bool any_diff = false;
    RandomStream a2(1234);
    for (int i = 0; i < 64; ++i) any_diff |= a2.next_u64() != c.next_u64();
    CHECK(any_diff);
}

TEST_CASE("forking is a pure function of seed and label") {
    // Same label in two runs yields the same child stream.
    RandomStream run1(77);
    RandomStream run2(77);
    RandomStream c1 = run1.fork("locations");
    RandomStream c2 = run2.fork("locations");
    for (int i = 0; i < 256; ++i) CHECK(c1.next_u64() == c2.next_u64());

    // Fork order does not matter.
    RandomStream p1(99);
    RandomStream p2(99);
    RandomStream x1 = p1.fork("sampler");
    RandomStream y1 = p1.fork("locations");
    RandomStream y2 = p2.fork("locations");
    RandomStream x2 = p2.fork("sampler");
    for (int i = 0; i < 256; ++i) {
        CHECK(x1.next_u64() == x2.next_u64());
        CHECK(y1.next_u64() == y2.next_u64());
    }

    // Consuming the parent does not change what a label yields.
    RandomStream p3(99);
    p3.next_u64();
    RandomStream x3 = p3.fork("sampler");
    RandomStream x4 = RandomStream(99).fork("sampler");
    for (int i = 0; i < 64; ++i) CHECK(x3.next_u64() == x4.next_u64());
}

TEST_CASE("sibling streams are uncorrelated") {
    RandomStream parent(2024);
    RandomStream a = parent.fork("locations");
    RandomStream b = parent.fork("sampler");
    const std::size_t n = 10000;
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = a.next_double();
        ys[i] = b.next_double();
    }
    const double r = bioblend::stats::pearson(xs, ys);
    // Observed r = 0.006767 for this seed; null standard error is 1/sqrt(n) = 0.01.
    CHECK(std::fabs(r) < 0.05);
}

TEST_CASE("duplicate or empty fork labels are rejected") {
    RandomStream s(5);
    (void)s.fork("a");
    CHECK_THROWS_AS((void)s.fork("a"), bioblend::ConfigError);
    (void)s.fork("b");  // other labels still fine
    CHECK_THROWS_AS((void)s.fork(""), bioblend::ArgumentError);
}

TEST_CASE("draw_normal moments and degenerate scale") {
    RandomStream s(31);
    const std::vector<double> zeros = bioblend::draw_normal(s, 0.0, 0.0, 5);
    CHECK(zeros == std::vector<double>{0, 0, 0, 0, 0});

    RandomStream t(31);
    const std::vector<double> x = bioblend::draw_normal(t, 10.0, 1.0, 100000);
    CHECK(bioblend::stats::mean(x) == doctest::Approx(10.0).epsilon(0.002));
    CHECK(bioblend::stats::sample_std(x) == doctest::Approx(1.0).epsilon(0.02));

    RandomStream t2(31);
    CHECK(bioblend::draw_normal(t2, 10.0, 1.0, 100000) == x);

    CHECK_THROWS_AS(bioblend::draw_normal(t, 0.0, -1.0, 3), bioblend::ArgumentError);
}

TEST_CASE("draw_uniform support and moments") {
    RandomStream s(7);
    const std::vector<double> x = bioblend::draw_uniform(s, 0.0, 1.0, 100000);
    for (double v : x) {
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
    CHECK(bioblend::stats::mean(x) == doctest::Approx(0.5).epsilon(0.02));

    RandomStream t(7);
    CHECK(bioblend::draw_uniform(t, 0.0, 1.0, 100000) == x);

    const std::vector<double> c = bioblend::draw_uniform(s, 3.0, 0.0, 4);
    CHECK(c == std::vector<double>{3, 3, 3, 3});

    CHECK_THROWS_AS(bioblend::draw_uniform(s, 0.0, -0.5, 2), bioblend::ArgumentError);
}

TEST_CASE("draw_dirichlet lies on the simplex") {
    RandomStream s(11);
    CHECK(bioblend::draw_dirichlet(s, 1.0, 1) == std::vector<double>{1.0});

    std::vector<double> component_sum(4, 0.0);
    const int n_draws = 10000;
    for (int d = 0; d < n_draws; ++d) {
        const std::vector<double> w = bioblend::draw_dirichlet(s, 1.0, 4);
        double sum = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            CHECK(w[i] > 0.0);
            sum += w[i];
            component_sum[i] += w[i];
        }
        CHECK(std::fabs(sum - 1.0) <= 1e-12);
    }
    for (double cs : component_sum) CHECK(cs / n_draws == doctest::Approx(0.25).epsilon(0.04));

    RandomStream t1(12), t2(12);
    CHECK(bioblend::draw_dirichlet(t1, 0.7, 5) == bioblend::draw_dirichlet(t2, 0.7, 5));

    CHECK_THROWS_AS(bioblend::draw_dirichlet(s, 1.0, 0), bioblend::ArgumentError);
    CHECK_THROWS_AS(bioblend::draw_dirichlet(s, 0.0, 3), bioblend::ArgumentError);
    CHECK_THROWS_AS(bioblend::draw_dirichlet(s, -1.0, 3), bioblend::ArgumentError);
}

TEST_CASE("draw_discrete_uniform is unbiased over the range") {
    RandomStream s(13);
    const std::vector<std::int64_t> fixed = bioblend::draw_discrete_uniform(s, 2, 2, 3);
    CHECK(fixed == std::vector<std::int64_t>{2, 2, 2});

    const std::size_t n = 30000;
    std::vector<std::size_t> counts(3, 0);
    for (std::int64_t v : bioblend::draw_discrete_uniform(s, 2, 4, n)) {
        REQUIRE(v >= 2);
        REQUIRE(v <= 4);
        ++counts[static_cast<std::size_t>(v - 2)];
    }
    for (std::size_t c : counts)
        CHECK(static_cast<double>(c) / static_cast<double>(n) ==
              doctest::Approx(1.0 / 3.0).epsilon(0.03));

    RandomStream t1(14), t2(14);
    CHECK(bioblend::draw_discrete_uniform(t1, -5, 5, 100) ==
          bioblend::draw_discrete_uniform(t2, -5, 5, 100));

    CHECK_THROWS_AS(bioblend::draw_discrete_uniform(s, 4, 2, 1), bioblend::ArgumentError);
}

TEST_CASE("gamma draws have the right mean for small and large shape") {
    RandomStream s(17);
    for (double shape : {0.5, 1.0, 3.0}) {
        double sum = 0.0;
        const int n = 20000;
        for (int i = 0; i < n; ++i) sum += bioblend::draw_gamma(s, shape);
        CHECK(sum / n == doctest::Approx(shape).epsilon(0.05));
    }
    CHECK_THROWS_AS(bioblend::draw_gamma(s, 0.0), bioblend::ArgumentError);
}
