#pragma once

#include <string>

#include "divcyl/io.hpp"

inline std::string fixture_path(const std::string& name) { return std::string(DIVCYL_SOURCE_DIR) + "/fixtures/" + name; }

inline divcyl::GeneratorMatrix fixture_matrix(const std::string& name) {
    return divcyl::read_matrix_file(fixture_path(name));
}
