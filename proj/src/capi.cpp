#include "skewfold/skewfold.h"

#include <exception>
#include <string>

#include "skewfold/scenario.hpp"
#include "skewfold/types.hpp"

struct sf_config {
    skewfold::ScenarioConfig cfg;
};

struct sf_report {
    skewfold::ScenarioReport report;
    std::string json_text;
};

namespace {

thread_local std::string g_last_error;

sf_status fail(sf_status code, const char* what) {
    g_last_error = what;
    return code;
}

template <typename Fn>
sf_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const skewfold::ConfigError& e) {
        return fail(SF_ERR_CONFIG, e.what());
    } catch (const skewfold::DomainError& e) {
        return fail(SF_ERR_RUNTIME, e.what());
    } catch (const std::exception& e) {
        return fail(SF_ERR_RUNTIME, e.what());
    } catch (...) {
        return fail(SF_ERR_RUNTIME, "unknown error");
    }
}

}  // namespace

extern "C" {

sf_status sf_config_from_file(const char* path, sf_config** out) {
    if (!path || !out) return fail(SF_ERR_CONFIG, "null argument");
    *out = nullptr;
    return guarded([&] {
        auto* handle = new sf_config{skewfold::ScenarioConfig::from_file(path)};
        *out = handle;
        g_last_error.clear();
        return SF_OK;
    });
}

sf_status sf_config_from_json(const char* json_text, sf_config** out) {
    if (!json_text || !out) return fail(SF_ERR_CONFIG, "null argument");
    *out = nullptr;
    return guarded([&] {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(json_text);
        } catch (const nlohmann::json::exception& e) {
            throw skewfold::ConfigError(std::string("config parse error: ") +
                                        e.what());
        }
        auto* handle = new sf_config{skewfold::ScenarioConfig::from_json(j)};
        *out = handle;
        g_last_error.clear();
        return SF_OK;
    });
}

void sf_config_free(sf_config* config) { delete config; }

sf_status sf_config_set_scenario(sf_config* config, const char* scenario) {
    if (!config || !scenario) return fail(SF_ERR_CONFIG, "null argument");
    config->cfg.scenario = scenario;
    return SF_OK;
}

sf_status sf_config_set_seed(sf_config* config, uint64_t master_seed) {
    if (!config) return fail(SF_ERR_CONFIG, "null argument");
    config->cfg.master_seed = master_seed;
    return SF_OK;
}

sf_status sf_config_set_out_dir(sf_config* config, const char* out_dir) {
    if (!config || !out_dir) return fail(SF_ERR_CONFIG, "null argument");
    config->cfg.out_dir = out_dir;
    return SF_OK;
}

sf_status sf_config_set_workers(sf_config* config, size_t n_workers) {
    if (!config) return fail(SF_ERR_CONFIG, "null argument");
    config->cfg.n_workers = n_workers;
    return SF_OK;
}

sf_status sf_run(const sf_config* config, sf_report** out) {
    if (!config || !out) return fail(SF_ERR_CONFIG, "null argument");
    *out = nullptr;
    return guarded([&]() -> sf_status {
        auto report = skewfold::run_scenario(config->cfg);
        auto* handle = new sf_report;
        handle->report = std::move(report);
        handle->json_text = handle->report.to_json().dump(2);
        *out = handle;
        if (!handle->report.all_passed()) {
            return fail(SF_ERR_VERIFY, "one or more checks failed");
        }
        g_last_error.clear();
        return SF_OK;
    });
}

int sf_report_passed(const sf_report* report) {
    return report && report->report.all_passed() ? 1 : 0;
}

const char* sf_report_json(const sf_report* report) {
    return report ? report->json_text.c_str() : "";
}

size_t sf_report_check_count(const sf_report* report) {
    return report ? report->report.checks.size() : 0;
}

void sf_report_free(sf_report* report) { delete report; }

const char* sf_list_scenarios(void) {
    thread_local std::string text;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [name, description] : skewfold::list_scenarios()) {
        arr.push_back({{"name", name}, {"description", description}});
    }
    text = arr.dump(2);
    return text.c_str();
}

const char* sf_last_error(void) { return g_last_error.c_str(); }

const char* sf_version(void) { return "1.0.0"; }

}  // extern "C"
