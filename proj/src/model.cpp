// model.cpp
#include "qbattery/model.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qb {

namespace {

bool all_finite(const SystemParams& p) {
    return std::isfinite(p.omega_a) && std::isfinite(p.omega_b) && std::isfinite(p.g) &&
           std::isfinite(p.drive_amplitude) && std::isfinite(p.drive_frequency) &&
           std::isfinite(p.gamma_a) && std::isfinite(p.lamb_shift) &&
           std::isfinite(p.n_thermal);
}

}  // namespace

SystemParams validate(const SystemParams& params) {
    if (!all_finite(params)) {
        throw validation_error("non-finite parameter");
    }
    if (!(params.omega_a > 0.0)) {
        throw validation_error("non-positive charger frequency");
    }
    if (!(params.omega_b > 0.0)) {
        throw validation_error("non-positive battery frequency");
    }
    // The lower eigenfrequency goes negative in the ultrastrong regime
    // (g > omega), and driving at lambda_minus is part of the protocol, so
    // omega_f may carry either sign; only an exact zero is rejected.
    if (params.drive_frequency == 0.0) {
        throw validation_error("zero drive frequency");
    }
    if (params.g < 0.0) {
        throw validation_error("negative coupling strength");
    }
    if (params.drive_amplitude < 0.0) {
        throw validation_error("negative drive amplitude");
    }
    if (params.gamma_a < 0.0) {
        throw validation_error("negative decay rate");
    }
    if (params.n_thermal < 0.0) {
        throw validation_error("negative thermal occupation");
    }
    if (!(params.omega_a_prime() > 0.0)) {
        throw validation_error("renormalized frequency non-positive");
    }
    return params;
}

double thermal_occupation(double omega, double temperature) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw validation_error("non-positive mode frequency");
    }
    if (temperature < 0.0 || !std::isfinite(temperature)) {
        throw validation_error("negative temperature");
    }
    if (temperature == 0.0) {
        return 0.0;
    }
    return 1.0 / std::expm1(omega / temperature);
}

Engine engine_from_string(const std::string& name) {
    if (name == "meanfield") return Engine::meanfield;
    if (name == "liouville") return Engine::liouville;
    throw validation_error("unknown engine \"" + name + "\" (expected meanfield or liouville)");
}

std::string to_string(Engine engine) {
    return engine == Engine::meanfield ? "meanfield" : "liouville";
}

namespace {

using nlohmann::json;

double require_number(const json& doc, const std::string& key) {
    if (!doc.contains(key)) {
        throw validation_error("missing config key: " + key);
    }
    if (!doc.at(key).is_number()) {
        throw validation_error("config key \"" + key + "\" must be a number");
    }
    return doc.at(key).get<double>();
}

int require_cutoff(const json& doc, const std::string& key) {
    if (!doc.at(key).is_number_integer()) {
        throw validation_error("config key \"" + key + "\" must be an integer");
    }
    const int value = doc.at(key).get<int>();
    if (value < 1) {
        throw validation_error("config key \"" + key + "\" must be >= 1");
    }
    return value;
}

}  // namespace

SimulationConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& err) {
        throw validation_error(std::string("config is not valid JSON: ") + err.what());
    }
    if (!doc.is_object()) {
        throw validation_error("config must be a JSON object");
    }

    static const std::set<std::string> known = {
        "omega_a",     "omega_b",         "g",
        "drive_amplitude", "drive_frequency", "gamma_a",
        "lamb_shift",  "n_thermal",       "t_final",
        "dt",          "engine",          "fock_cutoff_a",
        "fock_cutoff_b"};
    std::string unknown;
    for (const auto& item : doc.items()) {
        if (!known.count(item.key())) {
            unknown += (unknown.empty() ? "" : ", ") + item.key();
        }
    }
    if (!unknown.empty()) {
        throw validation_error("unknown config key(s): " + unknown);
    }

    SimulationConfig config;
    config.params.omega_a = require_number(doc, "omega_a");
    config.params.omega_b = require_number(doc, "omega_b");
    config.params.g = require_number(doc, "g");
    config.params.drive_amplitude = require_number(doc, "drive_amplitude");
    config.params.drive_frequency = require_number(doc, "drive_frequency");
    config.params.gamma_a = require_number(doc, "gamma_a");
    config.params.lamb_shift = require_number(doc, "lamb_shift");
    config.params.n_thermal = require_number(doc, "n_thermal");
    validate(config.params);

    if (doc.contains("t_final")) {
        config.t_final = require_number(doc, "t_final");
        if (!(config.t_final > 0.0) || !std::isfinite(config.t_final)) {
            throw validation_error("t_final must be positive");
        }
    }
    if (doc.contains("dt")) {
        config.dt = require_number(doc, "dt");
        if (!(config.dt > 0.0) || !std::isfinite(config.dt)) {
            throw validation_error("dt must be positive");
        }
    }
    if (doc.contains("engine")) {
        if (!doc.at("engine").is_string()) {
            throw validation_error("config key \"engine\" must be a string");
        }
        config.engine = engine_from_string(doc.at("engine").get<std::string>());
    }
    if (doc.contains("fock_cutoff_a")) {
        config.fock_cutoff_a = require_cutoff(doc, "fock_cutoff_a");
    }
    if (doc.contains("fock_cutoff_b")) {
        config.fock_cutoff_b = require_cutoff(doc, "fock_cutoff_b");
    }
    if (config.engine == Engine::liouville &&
        (!config.fock_cutoff_a || !config.fock_cutoff_b)) {
        throw validation_error(
            "engine \"liouville\" requires fock_cutoff_a and fock_cutoff_b");
    }
    return config;
}

SimulationConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw validation_error("cannot open config file: " + path);
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

}  // namespace qb
