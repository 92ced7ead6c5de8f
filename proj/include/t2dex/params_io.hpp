#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "t2dex/model.hpp"

namespace t2dex {

/// Contents of a parameter file: the model constants plus the display
/// calibration used by the prescription mapper.
struct ParameterFile {
    ModelParams model;
    double delta_calibration;
};

/// Loads a flat key-value parameter file ('#' comments, one `key = value`
/// per line). Rejects missing, duplicate, and unknown keys; validates the
/// resulting parameter set.
ParameterFile load_params(const std::filesystem::path& path);

/// Parses `key = value` lines from text. Shared by the parameter and
/// scenario-config loaders. Throws ParseError with the line number on
/// malformed lines or duplicate keys.
std::map<std::string, std::string> parse_key_values(const std::string& text,
                                                    const std::string& source_name);

} // namespace t2dex
