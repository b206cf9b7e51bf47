#include "kmloop/config.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace kmloop {

std::string convention_name(Convention c) {
    return c == Convention::standard ? "standard" : "paper_literal";
}

Convention convention_from_name(const std::string& name) {
    if (name == "standard") return Convention::standard;
    if (name == "paper_literal") return Convention::paper_literal;
    throw InputError("unknown convention: " + name);
}

std::string RunConfig::canonical_text() const {
    std::ostringstream out;
    out << "boundary_samples = " << boundary_samples << "\n"
        << "cocycle_sign = " << (cocycle_sign < 0 ? "-1" : "1") << "\n"
        << "convention = " << convention_name(convention) << "\n"
        << "lambda = " << lambda << "\n";
    return out.str();
}

std::string RunConfig::hash() const {
    const std::string text = canonical_text();
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "config line " << lineno << ": expected key = value";
            throw InputError(msg.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "convention") {
            cfg.convention = convention_from_name(value);
        } else if (key == "lambda") {
            cfg.lambda = std::stod(value);
            if (!(cfg.lambda > 0.0)) throw InputError("config: lambda must be positive");
        } else if (key == "cocycle_sign") {
            cfg.cocycle_sign = std::stod(value);
            if (cfg.cocycle_sign != 1.0 && cfg.cocycle_sign != -1.0)
                throw InputError("config: cocycle_sign must be 1 or -1");
        } else if (key == "boundary_samples") {
            cfg.boundary_samples = std::stoi(value);
            if (cfg.boundary_samples < 64) throw InputError("config: boundary_samples must be >= 64");
        } else {
            throw InputError("config: unknown key '" + key + "'");
        }
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

RunConfig resolve_config(const std::string& explicit_path) {
    if (!explicit_path.empty()) return load_config_file(explicit_path);
    if (const char* env = std::getenv("KMLOOP_CONFIG")) {
        if (env[0] != '\0') return load_config_file(env);
    }
    return RunConfig{};
}

}  // namespace kmloop
