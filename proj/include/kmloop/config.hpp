#ifndef KMLOOP_CONFIG_HPP
#define KMLOOP_CONFIG_HPP

#include <string>

#include "kmloop/kacmoody.hpp"

namespace kmloop {

/// Run-wide convention flags, loadable from a key = value file (one pair per
/// line, # comments). The config hash is embedded in every report so results
/// produced under different conventions cannot be compared by accident.
struct RunConfig {
    Convention convention = Convention::standard;
    double lambda = 1.0;
    double cocycle_sign = -1.0;
    int boundary_samples = 1024;

    KmConventions km() const { return KmConventions{convention, lambda, cocycle_sign}; }
    std::string canonical_text() const;
    std::string hash() const;  // FNV-1a of the canonical text, hex
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

/// Resolution order: explicit path if nonempty, else $KMLOOP_CONFIG, else
/// built-in defaults.
RunConfig resolve_config(const std::string& explicit_path);

std::string convention_name(Convention c);
Convention convention_from_name(const std::string& name);

}  // namespace kmloop

#endif
