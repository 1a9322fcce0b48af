#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "skewfold/path_engine.hpp"
#include "skewfold/reflection.hpp"
#include "skewfold/rng.hpp"
#include "skewfold/statistics.hpp"

using namespace skewfold;

TEST_CASE("skorokhod map on a short path") {
    TimeGrid g(3.0, 3);
    SamplePath u(g, {0.0, -1.0, 0.5, -2.0});
    const auto r = skorokhod_reflect(u);
    CHECK(r.pushing.values == std::vector<double>{0.0, 1.0, 1.0, 2.0});
    CHECK(r.reflected.values == std::vector<double>{0.0, 0.0, 1.5, 0.0});
}

TEST_CASE("skorokhod map requires a zero start") {
    TimeGrid g(1.0, 1);
    SamplePath u(g, {1.0, 0.0});
    CHECK_THROWS_AS(skorokhod_reflect(u), DomainError);
}

TEST_CASE("skorokhod decomposition and minimality on random paths") {
    const auto g = make_grid(1.0, 4096);
    for (std::uint64_t id = 0; id < 10; ++id) {
        RngStream s(21, id);
        const auto bm = sample_brownian(g, s);
        const auto r = skorokhod_reflect(bm.total);
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(r.reflected[i] >= 0.0);
            // S = U + C exactly
            CHECK(r.reflected[i] ==
                  doctest::Approx(bm.total[i] + r.pushing[i]).epsilon(1e-12));
        }
        // C increases only from points where S touches 0
        for (std::size_t i = 0; i + 1 < g.size(); ++i) {
            if (r.pushing[i + 1] > r.pushing[i]) {
                CHECK(r.reflected[i + 1] == 0.0);
            }
        }
    }
}

TEST_CASE("conventional reflection is the absolute value") {
    TimeGrid g(3.0, 3);
    SamplePath u(g, {0.0, -1.0, 0.5, -2.0});
    const auto r = conventional_reflect(u);
    CHECK(r.values == std::vector<double>{0.0, 1.0, 0.5, 2.0});
}

TEST_CASE("sign conventions at zero") {
    CHECK(sign_of(2.0, SignConvention::symmetric) == 1.0);
    CHECK(sign_of(-2.0, SignConvention::symmetric) == -1.0);
    CHECK(sign_of(0.0, SignConvention::symmetric) == 0.0);
    CHECK(sign_of(0.0, SignConvention::left_continuous) == -1.0);
}

TEST_CASE("levy transform on a short path, both conventions") {
    TimeGrid g(2.0, 2);
    SamplePath u(g, {0.0, 1.0, -1.0});
    const auto sym = levy_transform(u, SignConvention::symmetric);
    CHECK(sym.values == std::vector<double>{0.0, 0.0, -2.0});
    const auto lc = levy_transform(u, SignConvention::left_continuous);
    CHECK(lc.values == std::vector<double>{0.0, -1.0, -3.0});
}

TEST_CASE("levy transform preserves the bracket") {
    const auto g = make_grid(1.0, 8192);
    RngStream s(22, 3);
    const auto bm = sample_brownian(g, s);
    const auto hat = levy_transform(bm.total, SignConvention::left_continuous);
    const auto q = quadratic_variation(hat);
    // sgn^2 = 1 everywhere with the left-continuous convention, so the
    // realized brackets agree exactly.
    CHECK(q.back() ==
          doctest::Approx(quadratic_variation(bm.total).back()).epsilon(1e-12));
}

TEST_CASE("|U| approaches the reflection of the levy transform under refinement") {
    // The gap decays like a positive power of dt; compare medians two octaves
    // apart so path-to-path noise cannot flip the ordering.
    auto median_gap = [](std::size_t n) {
        std::vector<double> gaps;
        const auto g = make_grid(1.0, n);
        for (std::uint64_t id = 0; id < 30; ++id) {
            RngStream s(23, id);
            const auto bm = sample_brownian(g, s);
            const auto folded = conventional_reflect(bm.total);
            const auto hat = levy_transform(bm.total, SignConvention::symmetric);
            gaps.push_back(identity_residual(folded, skorokhod_reflect(hat).reflected));
        }
        return median(gaps);
    };
    const double coarse = median_gap(1 << 10);
    const double fine = median_gap(1 << 14);
    CHECK(fine < coarse);
    CHECK(coarse < 1.0);
}
