#include "relax/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>

namespace relax {

using nlohmann::json;

namespace {

const std::set<std::string> kTopKeys = {
    "d", "n", "L", "A", "gamma", "rho_bar", "epsilon", "dt", "t_final",
    "model", "init", "output", "ladder", "study"};
const std::set<std::string> kInitKeys = {"kind", "amplitude", "seed"};
const std::set<std::string> kOutputKeys = {"norm_stride", "snapshot_stride", "dir"};
const std::set<std::string> kLadderKeys = {"epsilons"};

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& scope) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key()))
            throw ConfigError("config: unknown key \"" + scope + it.key() + "\"");
    }
}

template <typename T>
void fetch(const json& obj, const char* key, T& out) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config: key \"") + key + "\" has the wrong type");
    }
}

json parse_value(const std::string& text) {
    // numbers/booleans/arrays parse as JSON, everything else is a string
    json v = json::parse(text, nullptr, false);
    if (v.is_discarded()) return json(text);
    return v;
}

} // namespace

void RunConfig::validate() const {
    if (d < 1 || d > 3) throw ConfigError("config: d must be 1, 2 or 3");
    if (n < 8 || (n & (n - 1)) != 0)
        throw ConfigError("config: n must be a power of two >= 8");
    if (!(L > 0.0)) throw ConfigError("config: L must be positive");
    if (!(A > 0.0)) throw ConfigError("config: A must be positive");
    if (!(gamma > 1.0)) throw ConfigError("config: gamma must exceed 1");
    if (!(rho_bar > 0.0)) throw ConfigError("config: rho_bar must be positive");
    if (!(epsilon > 0.0)) throw ConfigError("config: epsilon must be positive");
    if (epsilon > 0.5) throw ConfigError("config: epsilon must be <= 0.5");
    if (!(dt > 0.0 && dt <= 0.5)) throw ConfigError("config: dt must lie in (0, 0.5]");
    if (!(t_final > 0.0)) throw ConfigError("config: t_final must be positive");
    if (model != "ep" && model != "ks")
        throw ConfigError("config: model must be \"ep\" or \"ks\"");
    if (init_kind != "gaussian" && init_kind != "single_mode" && init_kind != "random_band")
        throw ConfigError("config: init.kind must be gaussian, single_mode or random_band");
    if (!(init_amplitude >= 0.0)) throw ConfigError("config: init.amplitude must be >= 0");
    if (norm_stride < 1) throw ConfigError("config: output.norm_stride must be >= 1");
    if (snapshot_stride < 0) throw ConfigError("config: output.snapshot_stride must be >= 0");
    if (output_dir.empty()) throw ConfigError("config: output.dir must be nonempty");
    for (double e : ladder_epsilons)
        if (!(e > 0.0) || e > 0.5)
            throw ConfigError("config: ladder epsilons must lie in (0, 0.5]");
    if (study != "damped_mode" && study != "ep_ks" && study != "frame_consistency")
        throw ConfigError("config: study must be damped_mode, ep_ks or frame_consistency");
}

RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides) {
    json root = json::object();
    if (!path.empty()) {
        std::ifstream is(path);
        if (!is) throw ConfigError("config: cannot open " + path);
        try {
            root = json::parse(is);
        } catch (const json::parse_error& e) {
            throw ConfigError("config: parse error in " + path + ": " + e.what());
        }
        if (!root.is_object()) throw ConfigError("config: top level must be an object");
    }

    for (const auto& ov : overrides) {
        auto pos = ov.find('=');
        if (pos == std::string::npos)
            throw ConfigError("config: override must look like key=value: " + ov);
        std::string key = ov.substr(0, pos);
        json val = parse_value(ov.substr(pos + 1));
        json* node = &root;
        std::size_t start = 0;
        for (auto dot = key.find('.'); dot != std::string::npos;
             start = dot + 1, dot = key.find('.', start)) {
            std::string part = key.substr(start, dot - start);
            if (!node->contains(part)) (*node)[part] = json::object();
            node = &(*node)[part];
        }
        (*node)[key.substr(start)] = val;
    }

    reject_unknown(root, kTopKeys, "");
    RunConfig cfg;
    fetch(root, "d", cfg.d);
    fetch(root, "n", cfg.n);
    fetch(root, "L", cfg.L);
    fetch(root, "A", cfg.A);
    fetch(root, "gamma", cfg.gamma);
    fetch(root, "rho_bar", cfg.rho_bar);
    fetch(root, "epsilon", cfg.epsilon);
    fetch(root, "dt", cfg.dt);
    fetch(root, "t_final", cfg.t_final);
    fetch(root, "model", cfg.model);
    fetch(root, "study", cfg.study);
    if (root.contains("init")) {
        const json& j = root["init"];
        if (!j.is_object()) throw ConfigError("config: init must be an object");
        reject_unknown(j, kInitKeys, "init.");
        fetch(j, "kind", cfg.init_kind);
        fetch(j, "amplitude", cfg.init_amplitude);
        fetch(j, "seed", cfg.init_seed);
    }
    if (root.contains("output")) {
        const json& j = root["output"];
        if (!j.is_object()) throw ConfigError("config: output must be an object");
        reject_unknown(j, kOutputKeys, "output.");
        fetch(j, "norm_stride", cfg.norm_stride);
        fetch(j, "snapshot_stride", cfg.snapshot_stride);
        fetch(j, "dir", cfg.output_dir);
    }
    if (root.contains("ladder")) {
        const json& j = root["ladder"];
        if (!j.is_object()) throw ConfigError("config: ladder must be an object");
        reject_unknown(j, kLadderKeys, "ladder.");
        fetch(j, "epsilons", cfg.ladder_epsilons);
    }
    cfg.validate();
    return cfg;
}

std::string config_echo(const RunConfig& cfg) {
    json j;
    j["d"] = cfg.d;
    j["n"] = cfg.n;
    j["L"] = cfg.L;
    j["A"] = cfg.A;
    j["gamma"] = cfg.gamma;
    j["rho_bar"] = cfg.rho_bar;
    j["epsilon"] = cfg.epsilon;
    j["dt"] = cfg.dt;
    j["t_final"] = cfg.t_final;
    j["model"] = cfg.model;
    j["study"] = cfg.study;
    j["init"] = {{"kind", cfg.init_kind},
                 {"amplitude", cfg.init_amplitude},
                 {"seed", cfg.init_seed}};
    j["output"] = {{"norm_stride", cfg.norm_stride},
                   {"snapshot_stride", cfg.snapshot_stride},
                   {"dir", cfg.output_dir}};
    j["ladder"] = {{"epsilons", cfg.ladder_epsilons}};
    return j.dump(2);
}

} // namespace relax
