#include "qct/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qct/error.hpp"

namespace qct {

namespace {

using nlohmann::ordered_json;

void reject_unknown_keys(const ordered_json& obj, const std::set<std::string>& known,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!known.count(key))
            fail(errc::validation_error, "unknown key '" + key + "' in " + where);
}

EveModel parse_eve(const ordered_json& obj, const std::string& where) {
    if (!obj.is_object())
        fail(errc::validation_error, where + " must be an object");
    reject_unknown_keys(obj, {"strategy", "probability", "basis_set"}, where);
    EveModel eve;
    const std::string strategy = obj.value("strategy", std::string("none"));
    if (strategy == "none")
        eve.strategy = EveModel::Strategy::None;
    else if (strategy == "intercept_resend")
        eve.strategy = EveModel::Strategy::InterceptResend;
    else
        fail(errc::validation_error,
             "unknown eve strategy '" + strategy + "' in " + where);
    eve.intercept_probability = obj.value("probability", 1.0);
    if (obj.contains("basis_set")) {
        if (!obj["basis_set"].is_array())
            fail(errc::validation_error, where + ".basis_set must be an array of angles");
        eve.basis_set = obj["basis_set"].get<std::vector<double>>();
    }
    return eve;
}

template <typename T>
T require_number(const ordered_json& obj, const std::string& key,
                 const std::string& where, T fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number())
        fail(errc::validation_error, where + "." + key + " must be a number");
    return obj[key].get<T>();
}

ScenarioConfig parse_config_impl(const ordered_json& doc) {
    if (!doc.is_object())
        fail(errc::validation_error, "config must be a JSON object");

    reject_unknown_keys(doc,
                        {"m", "agents", "collaborators", "key_mode", "trials",
                         "master_seed", "input_mode", "eve", "ekert", "qsdc"},
                        "config");

    ScenarioConfig config;
    config.m = require_number<int>(doc, "m", "config", 1);
    config.trials = require_number<int>(doc, "trials", "config", 1);
    config.master_seed = require_number<std::uint64_t>(doc, "master_seed", "config", 0);

    if (doc.contains("agents")) {
        if (!doc["agents"].is_array())
            fail(errc::validation_error, "config.agents must be an array");
        for (const auto& entry : doc["agents"]) {
            if (!entry.is_object())
                fail(errc::validation_error, "each agent must be an object");
            reject_unknown_keys(entry, {"id", "protocol"}, "agent");
            if (!entry.contains("id") || !entry["id"].is_string())
                fail(errc::validation_error, "each agent needs a string id");
            if (!entry.contains("protocol") || !entry["protocol"].is_string())
                fail(errc::validation_error, "each agent needs a protocol");
            const std::string protocol = entry["protocol"].get<std::string>();
            AgentSpec spec;
            spec.id = entry["id"].get<std::string>();
            if (protocol == "ekert91")
                spec.protocol = Protocol::Ekert91;
            else if (protocol == "qsdc")
                spec.protocol = Protocol::Qsdc;
            else
                fail(errc::validation_error,
                     "unknown protocol '" + protocol + "' for agent '" + spec.id + "'");
            config.agents.push_back(std::move(spec));
        }
    }

    if (doc.contains("collaborators")) {
        if (!doc["collaborators"].is_array())
            fail(errc::validation_error, "config.collaborators must be an array");
        config.collaborators = doc["collaborators"].get<std::vector<std::string>>();
    } else {
        // Absent means everyone cooperates; an explicit [] means nobody does.
        for (const auto& agent : config.agents) config.collaborators.push_back(agent.id);
    }

    if (doc.contains("key_mode")) {
        const std::string mode = doc["key_mode"].get<std::string>();
        if (mode == "single_bit")
            config.key_mode = KeyMode::SingleBit;
        else if (mode == "per_qubit")
            config.key_mode = KeyMode::PerQubit;
        else
            fail(errc::validation_error, "unknown key_mode '" + mode + "'");
    }

    if (doc.contains("input_mode")) {
        const auto& mode = doc["input_mode"];
        if (mode.is_string() && mode.get<std::string>() == "haar_random") {
            config.input_mode = InputMode::HaarRandom;
        } else if (mode.is_object() && mode.contains("fixed")) {
            reject_unknown_keys(mode, {"fixed"}, "input_mode");
            config.input_mode = InputMode::Fixed;
            if (!mode["fixed"].is_array())
                fail(errc::validation_error, "input_mode.fixed must be an array");
            for (const auto& entry : mode["fixed"]) {
                if (!entry.is_array() || entry.size() != 4)
                    fail(errc::validation_error,
                         "each fixed input must be [re, im, re, im]");
                const auto v = entry.get<std::vector<double>>();
                config.fixed_inputs.emplace_back(Amplitude{v[0], v[1]},
                                                 Amplitude{v[2], v[3]});
            }
        } else {
            fail(errc::validation_error,
                 "input_mode must be \"haar_random\" or {\"fixed\": [...]}");
        }
    }

    if (doc.contains("eve")) {
        const auto& eve = doc["eve"];
        if (!eve.is_object())
            fail(errc::validation_error, "config.eve must be an object");
        reject_unknown_keys(eve, {"ekert_forward", "qsdc_forward", "classical"},
                            "config.eve");
        if (eve.contains("ekert_forward"))
            config.ekert_eve = parse_eve(eve["ekert_forward"], "eve.ekert_forward");
        if (eve.contains("qsdc_forward"))
            config.qsdc_eve = parse_eve(eve["qsdc_forward"], "eve.qsdc_forward");
        if (eve.contains("classical")) {
            if (!eve["classical"].is_object())
                fail(errc::validation_error, "eve.classical must be an object");
            reject_unknown_keys(eve["classical"], {"strategy"}, "eve.classical");
            const std::string strategy =
                eve["classical"].value("strategy", std::string("none"));
            if (strategy == "observe")
                config.classical_eavesdropper = true;
            else if (strategy != "none")
                fail(errc::validation_error,
                     "eve.classical.strategy must be \"none\" or \"observe\"");
        }
    }

    if (doc.contains("ekert")) {
        const auto& e = doc["ekert"];
        if (!e.is_object())
            fail(errc::validation_error, "config.ekert must be an object");
        reject_unknown_keys(e, {"pairs", "chsh_threshold", "retries"}, "config.ekert");
        config.ekert.pairs = require_number<int>(e, "pairs", "ekert", config.ekert.pairs);
        config.ekert.chsh_threshold = require_number<double>(
            e, "chsh_threshold", "ekert", config.ekert.chsh_threshold);
        config.ekert.retries =
            require_number<int>(e, "retries", "ekert", config.ekert.retries);
    }

    if (doc.contains("qsdc")) {
        const auto& q = doc["qsdc"];
        if (!q.is_object())
            fail(errc::validation_error, "config.qsdc must be an object");
        reject_unknown_keys(q, {"batch", "check_fraction", "qber_threshold", "retries"},
                            "config.qsdc");
        config.qsdc.batch_size =
            require_number<int>(q, "batch", "qsdc", config.qsdc.batch_size);
        config.qsdc.check_fraction = require_number<double>(
            q, "check_fraction", "qsdc", config.qsdc.check_fraction);
        config.qsdc.qber_threshold = require_number<double>(
            q, "qber_threshold", "qsdc", config.qsdc.qber_threshold);
        config.qsdc.retries =
            require_number<int>(q, "retries", "qsdc", config.qsdc.retries);
    }

    validate(config);
    return config;
}

} // namespace

ScenarioConfig parse_config(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(errc::parse_error, std::string("config is not valid JSON: ") + e.what());
    }
    try {
        return parse_config_impl(doc);
    } catch (const nlohmann::json::exception& e) {
        fail(errc::validation_error, std::string("malformed config value: ") + e.what());
    }
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(errc::parse_error, "cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

namespace {

ordered_json eve_to_json(const EveModel& eve) {
    ordered_json out;
    out["strategy"] = eve.active() ? "intercept_resend" : "none";
    out["probability"] = eve.intercept_probability;
    out["basis_set"] = eve.basis_set;
    return out;
}

} // namespace

std::string scenario_to_json(const ScenarioConfig& config) {
    ordered_json doc;
    doc["m"] = config.m;
    doc["agents"] = ordered_json::array();
    for (const auto& agent : config.agents)
        doc["agents"].push_back({{"id", agent.id}, {"protocol", to_string(agent.protocol)}});
    doc["collaborators"] = config.collaborators;
    doc["key_mode"] = to_string(config.key_mode);
    doc["trials"] = config.trials;
    doc["master_seed"] = config.master_seed;
    if (config.input_mode == InputMode::HaarRandom) {
        doc["input_mode"] = "haar_random";
    } else {
        ordered_json fixed = ordered_json::array();
        for (const auto& spec : config.fixed_inputs)
            fixed.push_back({spec.alpha.real(), spec.alpha.imag(), spec.beta.real(),
                             spec.beta.imag()});
        doc["input_mode"] = ordered_json{{"fixed", fixed}};
    }
    doc["eve"] = ordered_json{
        {"ekert_forward", eve_to_json(config.ekert_eve)},
        {"qsdc_forward", eve_to_json(config.qsdc_eve)},
        {"classical",
         ordered_json{{"strategy", config.classical_eavesdropper ? "observe" : "none"}}}};
    doc["ekert"] = ordered_json{{"pairs", config.ekert.pairs},
                                {"chsh_threshold", config.ekert.chsh_threshold},
                                {"retries", config.ekert.retries}};
    doc["qsdc"] = ordered_json{{"batch", config.qsdc.batch_size},
                               {"check_fraction", config.qsdc.check_fraction},
                               {"qber_threshold", config.qsdc.qber_threshold},
                               {"retries", config.qsdc.retries}};
    return doc.dump(2);
}

} // namespace qct
