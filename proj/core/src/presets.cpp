#include "chiralsim/presets.hpp"

#include <cctype>

#include "chiralsim/errors.hpp"

namespace chiralsim {

namespace {

// The third-mode dissipation is not a measured quantity; 0.1 GHz reproduces
// the diffuse band width.
constexpr double kDefaultGamma = 0.1;

const std::array<Preset, 4> kPresets = {{
    {"P", 0.0, 0.055, 0.025, -0.516, 10.02, kDefaultGamma,
     {0.205, 3.12, 5.12, 6.47, 7.38, 7.55, 7.84, 8.626}},
    {"Q", 90.0, 0.058, 0.033, -0.516, 10.02, kDefaultGamma,
     {0.902, 2.078, 3.297, 4.415, 4.869, 5.326, 6.182, 6.218}},
    {"R", 180.0, 0.045, 0.020, -0.516, 10.02, kDefaultGamma,
     {0.912, 2.212, 3.594, 5.379, 6.563, 7.841, 8.572, 9.794}},
    {"S", 270.0, 0.065, 0.045, -0.506, 10.95, kDefaultGamma,
     {0.891, 2.103, 3.319, 4.394, 4.798, 5.288, 6.164, 6.218}},
}};

} // namespace

const std::array<Preset, 4>& all_presets() { return kPresets; }

const Preset& preset(std::string_view name) {
    if (name.size() == 1) {
        char c = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
        for (const Preset& p : kPresets)
            if (p.name[0] == c) return p;
    }
    throw ConfigError("unknown preset '" + std::string(name) + "'; expected one of P, Q, R, S");
}

} // namespace chiralsim
