// Acceptance harness: runs the scenario layer with pinned seeds and prints
// one verdict line per criterion.  Exits nonzero when any criterion fails.
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "skewfold/scenario.hpp"
#include "skewfold/types.hpp"

using namespace skewfold;
using nlohmann::json;

namespace {

constexpr std::uint64_t kSeed = 1;

struct CheckTable {
    std::map<std::string, CheckResult> by_name;

    const CheckResult& get(const std::string& name) const {
        auto it = by_name.find(name);
        if (it == by_name.end()) {
            throw std::runtime_error("missing check: " + name);
        }
        return it->second;
    }
};

CheckTable run(const std::string& scenario, const json& params) {
    ScenarioConfig cfg;
    cfg.scenario = scenario;
    cfg.params = params;
    cfg.master_seed = kSeed;
    cfg.n_workers = 0;
    const auto report = run_scenario(cfg);
    CheckTable table;
    for (const auto& c : report.checks) {
        table.by_name[c.name] = c;
    }
    return table;
}

struct Verdict {
    int id;
    std::string title;
    bool passed = true;
    std::vector<std::string> failures;

    void require(const CheckResult& c, const std::string& label) {
        if (!c.passed) {
            passed = false;
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%s (estimate %.6g, target %.6g +/- %.3g)",
                          label.c_str(), c.estimate, c.target, c.tolerance);
            failures.push_back(buf);
        }
    }

    void require(bool ok, const std::string& label) {
        if (!ok) {
            passed = false;
            failures.push_back(label);
        }
    }

    void print() const {
        std::printf("CRITERION %d: %s - %s\n", id, passed ? "PASS" : "FAIL",
                    title.c_str());
        for (const auto& f : failures) {
            std::printf("  failed: %s\n", f.c_str());
        }
        std::fflush(stdout);
    }
};

}  // namespace

int main() {
    std::vector<Verdict> verdicts;
    try {
        // Shared runs.
        const auto skorokhod = run("unfold-skorokhod", {{"alpha", 0.7}});
        const auto skorokhod_lo =
            run("unfold-skorokhod",
                {{"alpha", 0.3}, {"exact_paths", 4}, {"lt_paths", 10}});
        const auto particles = run("particles", json::object());
        const auto bessel = run("skew-bessel", json::object());
        const auto nakao = run("nakao", json::object());

        Verdict c1{1, "exact pathwise identities at machine precision"};
        c1.require(skorokhod.get("abs_equals_reflection_sup"), "|X| = S");
        c1.require(skorokhod.get("reflection_decomposition_sup"), "S = U + C");
        c1.require(skorokhod.get("pushing_flat_off_zero_set_sup"),
                   "C flat off {S = 0}");
        c1.require(particles.get("difference_identity_sup"), "X1~ - X2~ = Y~");
        c1.require(particles.get("gap_identity_sup"), "|Y~| = reflected gap");
        verdicts.push_back(c1);

        Verdict c2{2, "local-time skewing L^X = alpha L^S (alpha = 0.7)"};
        c2.require(skorokhod.get("local_time_ratio_median"),
                   "median L^X(1)/L^S(1)");
        verdicts.push_back(c2);

        Verdict c3{3, "sign law of the unfoldings"};
        const auto bm = run("skew-bm", {{"alpha", 0.7}});
        c3.require(bm.get("sign_law"), "skew BM P(X(1) > 0)");
        c3.require(nakao.get("sign_law"), "Nakao P(X(1) > 0)");
        c3.require(bessel.get("sign_law"), "skew Bessel P(X(1) > 0)");
        verdicts.push_back(c3);

        Verdict c4{4, "Ocone counterexample third moment (u = 2, v = 1)"};
        const auto ocone = run("ocone", json::object());
        c4.require(ocone.get("third_moment"), "E[X(2)^3]");
        c4.require(ocone.get("mirror_is_exact_negation"), "mirror negation");
        c4.require(ocone.get("mirror_third_moment"), "E[Xi(2)^3]");
        verdicts.push_back(c4);

        Verdict c5{5, "sign-weighted integral residual decreases under refinement"};
        c5.require(skorokhod.get("sign_integral_residual_refinement"),
                   "alpha = 0.7 ladder");
        c5.require(skorokhod_lo.get("sign_integral_residual_refinement"),
                   "alpha = 0.3 ladder");
        verdicts.push_back(c5);

        Verdict c6{6, "particle local-time relation and rewired-driver brackets"};
        c6.require(particles.get("collision_local_time_ratio_median"),
                   "zeta L+ / eta L-");
        c6.require(particles.get("rewired_b1_qv_median"), "<B1~> at T");
        c6.require(particles.get("rewired_b2_qv_median"), "<B2~> at T");
        c6.require(particles.get("rewired_cross_variation_median"), "<B1~, B2~>");
        verdicts.push_back(c6);

        Verdict c7{7, "local-time estimator cross-validation"};
        const auto xval = run("localtime-xval", json::object());
        c7.require(xval.get("occupation_mean"), "occupation mean vs sqrt(2/pi)");
        c7.require(xval.get("occupation_vs_upcrossing_median_ratio"),
                   "occupation vs upcrossing");
        c7.require(xval.get("occupation_vs_tanaka_median_ratio"),
                   "occupation vs tanaka");
        c7.require(xval.get("upcrossing_vs_tanaka_median_ratio"),
                   "upcrossing vs tanaka");
        verdicts.push_back(c7);

        Verdict c8{8, "skew Bessel scale-map local-time ratio and boundary local time"};
        c8.require(bessel.get("scale_map_local_time_ratio_median"),
                   "L^G / L^-G vs alpha/(1-alpha)");
        c8.require(bessel.get("folded_local_time_median"), "L^R(1) = 0");
        verdicts.push_back(c8);

        Verdict c9{9, "deterministic report payload across worker counts"};
        auto payload = [](std::size_t workers) {
            ScenarioConfig cfg;
            cfg.scenario = "nakao";
            cfg.params = {{"n_paths", 2000}, {"diag_paths", 5}};
            cfg.master_seed = kSeed;
            cfg.n_workers = workers;
            auto j = run_scenario(cfg).to_json();
            j.erase("runtime");
            return j.dump();
        };
        c9.require(payload(1) == payload(3), "payload identical for 1 vs 3 workers");
        verdicts.push_back(c9);
    } catch (const std::exception& e) {
        std::printf("acceptance harness error: %s\n", e.what());
        return 2;
    }

    int failed = 0;
    for (const auto& v : verdicts) {
        v.print();
        if (!v.passed) ++failed;
    }
    std::printf("%d/9 criteria passed\n", 9 - failed);
    return failed == 0 ? 0 : 1;
}
