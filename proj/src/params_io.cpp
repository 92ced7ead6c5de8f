#include "t2dex/params_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace t2dex {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value, const std::string& source)
{
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
        throw ParseError(source + ": value of '" + key + "' is not a number: '" + value + "'");
    }
    return v;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open file: " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text,
                                                    const std::string& source_name)
{
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(source_name + ":" + std::to_string(lineno) +
                             ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ParseError(source_name + ":" + std::to_string(lineno) +
                             ": empty key or value");
        }
        if (!kv.emplace(key, value).second) {
            throw ParseError(source_name + ":" + std::to_string(lineno) +
                             ": duplicate key '" + key + "'");
        }
    }
    return kv;
}

ParameterFile load_params(const std::filesystem::path& path)
{
    const std::string source = path.string();
    auto kv = parse_key_values(read_file(path), source);

    ParameterFile pf{};
    ModelParams& m = pf.model;
    const std::vector<std::pair<const char*, double*>> fields = {
        {"R0", &m.R0},           {"Eg0", &m.Eg0},
        {"sigma", &m.sigma},     {"alpha", &m.alpha},
        {"k", &m.k},             {"d0", &m.d0},
        {"r1r", &m.r1r},         {"r2r", &m.r2r},
        {"r1a", &m.r1a},         {"r2a", &m.r2a},
        {"c", &m.c},             {"S_I_target", &m.S_I_target},
        {"zeta_si", &m.zeta_si}, {"k_n_si", &m.k_n_si},
        {"SR", &m.SR},           {"K_IL6", &m.K_IL6},
        {"k_s", &m.k_s},         {"zeta_p", &m.zeta_p},
        {"k_p", &m.k_p},         {"zeta_a", &m.zeta_a},
        {"k_a", &m.k_a},         {"delta_calibration", &pf.delta_calibration},
    };

    for (const auto& [name, slot] : fields) {
        auto it = kv.find(name);
        if (it == kv.end()) {
            throw ValidationError(source + ": missing parameter '" + std::string(name) + "'");
        }
        *slot = to_double(name, it->second, source);
        kv.erase(it);
    }
    if (!kv.empty()) {
        throw ValidationError(source + ": unknown parameter '" + kv.begin()->first + "'");
    }

    validate(pf.model);
    if (!(pf.delta_calibration > 0.0)) {
        throw ValidationError(source + ": delta_calibration must be strictly positive");
    }
    return pf;
}

} // namespace t2dex
