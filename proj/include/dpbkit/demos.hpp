#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpbkit/json_io.hpp"

namespace dpbkit {

struct DemoCheck {
    std::string name;
    Json expected;
    Json actual;
    double tol = 0.0;
    bool pass = false;
};

struct DemoReport {
    std::string name;
    bool pass = false;
    std::vector<DemoCheck> checks;
    Json data = Json::object();
};

const std::vector<std::string>& demo_names();

// Runs a named demonstration and asserts its expected values. Throws
// InvalidArgument for an unknown name.
DemoReport run_demo(const std::string& name, std::uint64_t seed = 1);

Json to_json(const DemoReport& r);

} // namespace dpbkit
