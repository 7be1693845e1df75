#include "chiralsim/config.hpp"

#include <string>
#include <vector>

#include <json.hpp>

#include "chiralsim/angles.hpp"
#include "chiralsim/presets.hpp"
#include "chiralsim/text_io.hpp"

namespace chiralsim {

void RunConfig::finalize() const {
    if (!delta_phi_deg)
        throw ConfigError("missing required key: delta_phi (set it directly or via a preset)");

    auto positive = [](double v, const char* key) {
        if (!(v > 0.0))
            throw ConfigError(std::string(key) + " must be > 0, got " + format_g9(v));
    };
    auto non_negative = [](double v, const char* key) {
        if (!(v >= 0.0))
            throw ConfigError(std::string(key) + " must be >= 0, got " + format_g9(v));
    };
    positive(omega_r, "omega_r");
    non_negative(alpha, "alpha");
    non_negative(beta_diss, "beta_diss");
    non_negative(beta_a, "beta_a");
    non_negative(beta_b, "beta_b");
    positive(g0, "g0");
    positive(d0, "d0");
    non_negative(d, "d");
    non_negative(beta_c_value(), "beta_c");

    if (third_enabled) {
        std::string missing;
        auto need = [&](const auto& field, const char* key) {
            if (!field) missing += missing.empty() ? key : (std::string(", ") + key);
        };
        need(j1, "j1");
        need(j2, "j2");
        need(omega_c_slope, "omega_c_slope");
        need(omega_c_intercept, "omega_c_intercept");
        need(gamma, "gamma");
        if (!missing.empty())
            throw ConfigError("third_enabled requires keys: " + missing +
                              " (set them directly or via a preset)");
        non_negative(*j1, "j1");
        non_negative(*j2, "j2");
        non_negative(*gamma, "gamma");
    }
}

void apply_preset(RunConfig& cfg, std::string_view name) {
    const Preset& p = preset(name);
    cfg.preset = std::string(p.name);
    cfg.delta_phi_deg = p.delta_phi_deg;
    cfg.j1 = p.j1;
    cfg.j2 = p.j2;
    cfg.omega_c_slope = p.omega_c_slope;
    cfg.omega_c_intercept = p.omega_c_intercept;
    cfg.gamma = p.gamma;
}

RunConfig parse_config(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    RunConfig cfg;
    if (doc.contains("preset")) {
        const auto& v = doc["preset"];
        if (!v.is_string()) throw ConfigError("key 'preset': expected a string");
        apply_preset(cfg, v.get<std::string>());
    }

    auto number = [&](const nlohmann::json& v, const std::string& key) {
        if (!v.is_number())
            throw ConfigError("key '" + key + "': expected a number");
        return v.get<double>();
    };

    for (const auto& [key, value] : doc.items()) {
        if (key == "preset") continue;
        if (key == "omega_r") cfg.omega_r = number(value, key);
        else if (key == "alpha") cfg.alpha = number(value, key);
        else if (key == "beta_diss") cfg.beta_diss = number(value, key);
        else if (key == "beta_a") cfg.beta_a = number(value, key);
        else if (key == "beta_b") cfg.beta_b = number(value, key);
        else if (key == "beta_c") cfg.beta_c = number(value, key);
        else if (key == "g0") cfg.g0 = number(value, key);
        else if (key == "d0") cfg.d0 = number(value, key);
        else if (key == "d") cfg.d = number(value, key);
        else if (key == "delta_phi") cfg.delta_phi_deg = number(value, key);
        else if (key == "third_enabled") {
            if (!value.is_boolean()) throw ConfigError("key 'third_enabled': expected a boolean");
            cfg.third_enabled = value.get<bool>();
        } else if (key == "j1") cfg.j1 = number(value, key);
        else if (key == "j2") cfg.j2 = number(value, key);
        else if (key == "omega_c_slope") cfg.omega_c_slope = number(value, key);
        else if (key == "omega_c_intercept") cfg.omega_c_intercept = number(value, key);
        else if (key == "gamma") cfg.gamma = number(value, key);
        else if (key == "theta_a") cfg.theta_a_deg = number(value, key);
        else if (key == "theta_b") cfg.theta_b_deg = number(value, key);
        else if (key == "theta_c") cfg.theta_c_deg = number(value, key);
        else throw ConfigError("unknown key '" + key + "'");
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    RunConfig cfg = parse_config(read_file(path));
    cfg.finalize();
    return cfg;
}

ModeSystem to_mode_system(const RunConfig& cfg) {
    cfg.finalize();
    ChiralGeometry geometry(deg_to_rad(*cfg.delta_phi_deg), cfg.d, cfg.d0);

    std::optional<ThirdModeParams> third;
    std::optional<ResonatorMode> mode_c;
    if (cfg.third_enabled) {
        third = ThirdModeParams{*cfg.j1, *cfg.j2, *cfg.omega_c_slope, *cfg.omega_c_intercept,
                                *cfg.gamma};
        mode_c = ResonatorMode{third_mode_frequency(*third, cfg.d), *cfg.gamma,
                               cfg.beta_c_value()};
    }

    ModeSystem system{ResonatorMode{cfg.omega_r, cfg.alpha, cfg.beta_a},
                      ResonatorMode{cfg.omega_r, cfg.beta_diss, cfg.beta_b}, mode_c,
                      CouplingParams{geometry, cfg.g0, third}};
    system.validate();
    return system;
}

DriveSpec to_drive(const RunConfig& cfg) {
    return {deg_to_rad(cfg.theta_a_deg), deg_to_rad(cfg.theta_b_deg),
            deg_to_rad(cfg.theta_c_deg)};
}

} // namespace chiralsim
