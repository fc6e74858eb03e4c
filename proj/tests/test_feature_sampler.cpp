#include <doctest.h>

#include <cmath>
#include <vector>

#include "bioblend/errors.hpp"
#include "bioblend/eval_harness.hpp"
#include "bioblend/feature_sampler.hpp"
#include "bioblend/location_factory.hpp"
#include "bioblend/stats.hpp"
#include "support/dist.hpp"

using bioblend::EnvelopeSpec;
using bioblend::HiddenMatrix;
using bioblend::LocationPlan;
using bioblend::Matrix;
using bioblend::RandomStream;
using bioblend::SampleDist;
using bioblend::SamplerSpec;
using bioblend::SchemeKind;

TEST_CASE("usefulness_to_scale formula and edge values") {
    CHECK(bioblend::usefulness_to_scale(1.0, 1.0, 50.0) == 0.0);
    CHECK(bioblend::usefulness_to_scale(0.5, 2.0, 100.0) == doctest::Approx(2.0));
    CHECK(bioblend::usefulness_to_scale(0.0, 1.0, 10.0) == 10.0);
    // The fake scale caps the formula for nearly useless features.
    CHECK(bioblend::usefulness_to_scale(0.01, 1.0, 2.0) == 2.0);
    // Strictly decreasing where the cap is inactive.
    double prev = bioblend::usefulness_to_scale(0.3, 1.0, 1e9);
    for (double u : {0.4, 0.5, 0.7, 0.9, 1.0}) {
        const double s = bioblend::usefulness_to_scale(u, 1.0, 1e9);
        CHECK(s < prev);
        prev = s;
    }
    CHECK_THROWS_AS(bioblend::usefulness_to_scale(-0.1, 1.0, 1.0), bioblend::ArgumentError);
    CHECK_THROWS_AS(bioblend::usefulness_to_scale(1.1, 1.0, 1.0), bioblend::ArgumentError);
}

namespace {

LocationPlan two_class_plan(double location_a, double location_b, double usefulness) {
    LocationPlan plan;
    plan.locations = Matrix(2, 1);
    plan.locations(0, 0) = location_a;
    plan.locations(1, 0) = location_b;
    plan.usefulness = {usefulness};
    plan.true_mask = {1};
    return plan;
}

HiddenMatrix sample(const LocationPlan& plan, const SamplerSpec& spec,
                    const EnvelopeSpec& envelope = {}, std::uint64_t seed = 7) {
    RandomStream root(seed);
    RandomStream jitter = root.fork("usefulness-jitter");
    RandomStream values = root.fork("sampler");
    return bioblend::sample_hidden(jitter, values, plan, spec, envelope);
}

}  // namespace

TEST_CASE("perfect usefulness reproduces the locations exactly") {
    const LocationPlan plan = two_class_plan(-3.5, 4.25, 1.0);
    const HiddenMatrix h = sample(plan, {SampleDist::normal, 100, 0.0, 2.0});
    REQUIRE(h.values.rows() == 200);
    for (std::size_t i = 0; i < 100; ++i) CHECK(h.values(i, 0) == -3.5);
    for (std::size_t i = 100; i < 200; ++i) CHECK(h.values(i, 0) == 4.25);
}

TEST_CASE("labels are block-constant with samples_per_class rows per class") {
    const LocationPlan plan = two_class_plan(0.0, 1.0, 0.5);
    const HiddenMatrix h = sample(plan, {SampleDist::normal, 3, 0.1, 2.0});
    CHECK(h.labels == std::vector<std::int64_t>{1, 1, 1, 2, 2, 2});
}

TEST_CASE("class-conditional means follow the plan locations") {
    const LocationPlan plan = two_class_plan(0.0, 10.0, 0.9);
    const HiddenMatrix h = sample(plan, {SampleDist::normal, 10000, 0.0, 2.0});
    std::vector<double> col = h.values.col(0);
    const std::span<const double> a(col.data(), 10000);
    const std::span<const double> b(col.data() + 10000, 10000);
    // Scale is (1 - 0.9) / 0.9 ~ 0.111, so the mean is within ~0.003 at 3 SE.
    CHECK(bioblend::stats::mean(a) == doctest::Approx(0.0).epsilon(1).scale(0.01));
    CHECK(bioblend::stats::mean(b) == doctest::Approx(10.0).epsilon(0.001));
}

TEST_CASE("uniform sampling stays inside the located range") {
    const LocationPlan plan = two_class_plan(2.0, 5.0, 0.5);
    const EnvelopeSpec envelope{bioblend::EnvelopeKind::normal, 0.0, 1.0};
    const HiddenMatrix h = sample(plan, {SampleDist::uniform, 1000, 0.0, 2.0}, envelope);
    // Scale for u = 0.5 is exactly 1.
    for (std::size_t i = 0; i < 1000; ++i) {
        CHECK(h.values(i, 0) >= 2.0);
        CHECK(h.values(i, 0) < 3.0);
    }
    for (std::size_t i = 1000; i < 2000; ++i) {
        CHECK(h.values(i, 0) >= 5.0);
        CHECK(h.values(i, 0) < 6.0);
    }
}

TEST_CASE("fake features carry no class information") {
    // One fake feature across 10 classes: the ANOVA F-statistic should stay
    // below the 0.999 null quantile.
    const std::size_t n_classes = 10, per_class = 100;
    LocationPlan plan;
    plan.locations = Matrix(n_classes, 1, 1.25);  // shared location
    plan.usefulness = {0.0};
    plan.true_mask = {0};
    const HiddenMatrix h = sample(plan, {SampleDist::normal, per_class, 0.1, 2.0}, {}, 99);
    const std::vector<double> f = bioblend::anova_f_scores(h.values, h.labels);
    const double critical = testdist::f_quantile(
        0.999, static_cast<double>(n_classes - 1),
        static_cast<double>(n_classes * per_class - n_classes));
    CHECK(f[0] < critical);
}

TEST_CASE("every fake feature stays below the Bonferroni null bound") {
    // 6 fake features, 10 classes: each F-statistic must stay below the
    // (1 - 0.01 / 6) quantile of the null F-distribution.
    const std::size_t n_classes = 10, per_class = 60, n_fake = 6;
    RandomStream root(606);
    RandomStream loc_stream = root.fork("locations");
    const LocationPlan plan = bioblend::make_locations(
        loc_stream, {}, n_classes, 1, n_fake, 1, 1,
        bioblend::make_usefulness({SchemeKind::linear, 0.5, 0.9}, 1, n_fake));
    RandomStream jitter = root.fork("usefulness-jitter");
    RandomStream values = root.fork("sampler");
    const HiddenMatrix h =
        bioblend::sample_hidden(jitter, values, plan, {SampleDist::normal, per_class, 0.1, 2.0}, {});
    const std::vector<double> f = bioblend::anova_f_scores(h.values, h.labels);
    const double critical = testdist::f_quantile(
        1.0 - 0.01 / static_cast<double>(n_fake), static_cast<double>(n_classes - 1),
        static_cast<double>(n_classes * per_class - n_classes));
    for (std::size_t j = 1; j <= n_fake; ++j) CHECK(f[j] < critical);
}

TEST_CASE("higher usefulness yields higher class separability") {
    // Desk-scale configuration: 8 true features with spread-out usefulness.
    const std::size_t n_classes = 20;
    RandomStream root(505);
    RandomStream loc_stream = root.fork("locations");
    std::vector<double> u = bioblend::make_usefulness({SchemeKind::linear, 0.3, 0.95}, 8, 0);
    const std::vector<double> u_copy = u;
    const LocationPlan plan = bioblend::make_locations(loc_stream, {}, n_classes, 8, 0, 1, 1,
                                                       std::move(u));
    RandomStream jitter = root.fork("usefulness-jitter");
    RandomStream values = root.fork("sampler");
    const HiddenMatrix h =
        bioblend::sample_hidden(jitter, values, plan, {SampleDist::normal, 16, 0.1, 2.0}, {});
    const std::vector<double> f = bioblend::anova_f_scores(h.values, h.labels);
    CHECK(bioblend::stats::spearman(u_copy, f) >= 0.8);
}

TEST_CASE("normalize_columns rescales to unit sample std without centering") {
    Matrix m(3, 1);
    m(0, 0) = 2.0;
    m(1, 0) = 4.0;
    m(2, 0) = 6.0;
    bioblend::normalize_columns(m);
    CHECK(m(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m(1, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(m(2, 0) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("normalize_columns is idempotent and keeps constants") {
    RandomStream s(8);
    Matrix m(500, 3);
    std::vector<double> col = bioblend::draw_normal(s, 5.0, 3.0, 500);
    m.set_col(0, col);
    col = bioblend::draw_uniform(s, -2.0, 7.0, 500);
    m.set_col(1, col);
    for (std::size_t i = 0; i < 500; ++i) m(i, 2) = 5.0;  // constant column

    bioblend::normalize_columns(m);
    Matrix twice = m;
    bioblend::normalize_columns(twice);
    for (std::size_t i = 0; i < 500; ++i) {
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(twice(i, j) == doctest::Approx(m(i, j)).epsilon(1e-12));
        CHECK(m(i, 2) == 5.0);
    }
    for (std::size_t j = 0; j < 2; ++j)
        CHECK(bioblend::stats::sample_std(m.col(j)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sampler spec is validated") {
    const LocationPlan plan = two_class_plan(0.0, 1.0, 0.5);
    RandomStream a(1), b(2);
    CHECK_THROWS_AS(bioblend::sample_hidden(a, b, plan, {SampleDist::normal, 0, 0.1, 2.0}, {}),
                    bioblend::ArgumentError);
    RandomStream c(1), d(2);
    CHECK_THROWS_AS(bioblend::sample_hidden(c, d, plan, {SampleDist::normal, 2, 1.0, 2.0}, {}),
                    bioblend::ArgumentError);
    RandomStream e(1), f(2);
    CHECK_THROWS_AS(bioblend::sample_hidden(e, f, plan, {SampleDist::normal, 2, 0.1, 0.0}, {}),
                    bioblend::ArgumentError);
}
