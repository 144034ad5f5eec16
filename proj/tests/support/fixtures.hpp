#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace testfx {

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(CODEFOREST_FIXTURES) / name;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Fresh, empty scratch directory under the build tree.
inline std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::path(CODEFOREST_SCRATCH) / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace testfx
