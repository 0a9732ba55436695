#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "reqlab/errors.hpp"

namespace reqlab::util {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open file: " + path);
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void write_file(const std::string& path, const std::string& data) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::filesystem::create_directories(p.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ConfigError("cannot write file: " + path);
    }
    out << data;
}

/// Write-then-rename so concurrent readers never observe a partial file.
inline void write_file_atomic(const std::string& path, const std::string& data) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::filesystem::create_directories(p.parent_path());
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ConfigError("cannot write file: " + tmp);
        }
        out << data;
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace reqlab::util
