#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
    return std::string(ATCALC_FIXTURE_DIR) + "/" + name;
}

inline nlohmann::json load_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name));
    if (!in) throw std::runtime_error("missing fixture " + name);
    return nlohmann::json::parse(in);
}

} // namespace testsupport
