#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "skewfold/excursion.hpp"
#include "skewfold/local_time.hpp"
#include "skewfold/path_engine.hpp"
#include "skewfold/reflection.hpp"
#include "skewfold/rng.hpp"
#include "skewfold/skew_processes.hpp"
#include "skewfold/statistics.hpp"

using namespace skewfold;

TEST_CASE("occupation estimator on a short path") {
    TimeGrid g(2.0, 2);
    SamplePath u(g, {0.0, 0.5, 1.0});
    SamplePath qv(g, {0.0, 1.0, 2.0});
    const auto lt = occupation_local_time(u, qv, 1.0, LocalTimeSide::right);
    // The band is the strictly positive strip (0, eps): the exact zero at
    // index 0 contributes nothing, the value 0.5 at index 1 contributes
    // (qv[2] - qv[1]) / (2 eps) = 0.5.
    CHECK(lt.values[0] == 0.0);
    CHECK(lt.values[1] == 0.0);
    CHECK(lt.values[2] == doctest::Approx(0.5));
    CHECK(lt.total() == doctest::Approx(0.5));
}

TEST_CASE("occupation estimator ignores values at or above the bandwidth") {
    TimeGrid g(2.0, 2);
    SamplePath u(g, {2.0, 3.0, 2.5});
    SamplePath qv(g, {0.0, 1.0, 2.0});
    const auto lt = occupation_local_time(u, qv, 1.0, LocalTimeSide::right);
    CHECK(lt.total() == 0.0);
}

TEST_CASE("symmetric occupation averages the two one-sided estimates") {
    TimeGrid g(3.0, 3);
    SamplePath u(g, {0.5, -0.5, 0.5, 0.0});
    SamplePath qv(g, {0.0, 1.0, 2.0, 3.0});
    const auto right = occupation_local_time(u, qv, 1.0, LocalTimeSide::right);
    const auto sym = occupation_local_time(u, qv, 1.0, LocalTimeSide::symmetric);
    CHECK(right.total() == doctest::Approx(1.0));  // indices 0 and 2 in band
    CHECK(sym.total() == doctest::Approx(0.75));   // left side sees index 1 only
}

TEST_CASE("occupation estimator validates input") {
    TimeGrid g(1.0, 1);
    SamplePath u(g, {0.0, 0.5});
    SamplePath qv(g, {0.0, 1.0});
    CHECK_THROWS_AS(occupation_local_time(u, qv, 0.0, LocalTimeSide::right),
                    ConfigError);
    SamplePath other(TimeGrid(1.0, 2));
    CHECK_THROWS_AS(occupation_local_time(u, other, 1.0, LocalTimeSide::right),
                    DomainError);
}

TEST_CASE("upcrossing estimator on a short sawtooth") {
    TimeGrid g(4.0, 4);
    SamplePath s(g, {0.0, 0.2, 0.0, 0.2, 0.0});
    const auto lt = upcrossing_local_time(s, 0.1);
    CHECK(lt.total() == doctest::Approx(0.2));
    CHECK(lt.values[1] == doctest::Approx(0.1));
    CHECK(lt.values[2] == doctest::Approx(0.1));
    CHECK(lt.values[3] == doctest::Approx(0.2));
}

TEST_CASE("upcrossing estimator counts a monotone climb once") {
    TimeGrid g(3.0, 3);
    SamplePath s(g, {0.0, 1.0, 2.0, 3.0});
    CHECK(upcrossing_local_time(s, 0.5).total() == doctest::Approx(0.5));
}

TEST_CASE("upcrossing estimator rejects negative paths") {
    TimeGrid g(1.0, 1);
    SamplePath s(g, {0.0, -1.0});
    CHECK_THROWS_AS(upcrossing_local_time(s, 0.5), DomainError);
}

TEST_CASE("tanaka estimator vanishes off the zero level") {
    TimeGrid g(3.0, 3);
    SamplePath x(g, {1.0, 2.0, 1.5, 3.0});
    const auto lt = tanaka_local_time(x);
    for (double v : lt.values.values) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("tanaka estimator on a single folded excursion") {
    TimeGrid g(2.0, 2);
    SamplePath x(g, {0.0, 1.0, 0.0});
    const auto lt = tanaka_local_time(x);
    // |x| - int sgn(x) dx = [0, 1, 1] with sgn(0) = 0.
    CHECK(lt.values[1] == doctest::Approx(1.0));
    CHECK(lt.total() == doctest::Approx(1.0));
}

TEST_CASE("all three estimators are nondecreasing on a Brownian path") {
    const auto g = make_grid(1.0, 16384);
    RngStream s(41, 0);
    const auto bm = sample_brownian(g, s);
    const auto folded = conventional_reflect(bm.total);
    const double eps = default_bandwidth(g);
    const auto occ = occupation_local_time(folded, bm.qv, eps, LocalTimeSide::right);
    const auto up = upcrossing_local_time(folded, eps);
    const auto tan = tanaka_local_time(bm.total);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        CHECK(occ.values[i + 1] >= occ.values[i]);
        CHECK(up.values[i + 1] >= up.values[i]);
        CHECK(tan.values[i + 1] >= tan.values[i]);
    }
}

TEST_CASE("tanaka local time of |B|(1) has mean sqrt(2/pi)") {
    const auto g = make_grid(1.0, 16384);
    std::vector<double> totals;
    for (std::uint64_t id = 0; id < 500; ++id) {
        RngStream s(42, id);
        const auto bm = sample_brownian(g, s);
        totals.push_back(tanaka_local_time(bm.total).total());
    }
    const double target = std::sqrt(2.0 / M_PI);
    CHECK(mc_estimate(totals).mean == doctest::Approx(target).epsilon(0.05));
}

TEST_CASE("occupation and tanaka estimators agree in the median") {
    const auto g = make_grid(1.0, 65536);
    const double eps = default_bandwidth(g);
    std::vector<double> occs, tans;
    for (std::uint64_t id = 0; id < 100; ++id) {
        RngStream s(43, id);
        const auto bm = sample_brownian(g, s);
        const auto folded = conventional_reflect(bm.total);
        occs.push_back(occupation_local_time(folded, bm.qv, eps,
                                             LocalTimeSide::right)
                           .total());
        tans.push_back(tanaka_local_time(bm.total).total());
    }
    CHECK(median(occs) / median(tans) == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("right and symmetric local time of skew BM are in ratio 2 alpha") {
    const auto g = make_grid(1.0, 16384);
    const double eps = default_bandwidth(g);
    for (double alpha : {0.3, 0.7}) {
        std::vector<double> ratios;
        for (std::uint64_t id = 0; id < 80; ++id) {
            RngStream s(44, id + (alpha > 0.5 ? 1000 : 0));
            const auto x = skew_brownian(alpha, 0.0, g, s);
            SamplePath qv(g);
            for (std::size_t i = 0; i < qv.size(); ++i) qv[i] = g.time(i);
            const auto right =
                occupation_local_time(x, qv, eps, LocalTimeSide::right);
            const auto sym =
                occupation_local_time(x, qv, eps, LocalTimeSide::symmetric);
            if (sym.total() > 0.0) ratios.push_back(right.total() / sym.total());
        }
        CHECK(median(ratios) == doctest::Approx(2.0 * alpha).epsilon(0.15));
    }
}
