#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace divcyl {

enum class Cost { Fast, Minutes, Stretch };
std::string cost_name(Cost c);

struct CheckContext {
    std::string fixtures;  ///< directory holding the matrix fixtures and expected.json
    int jobs = 1;
};

struct CheckDescriptor {
    std::string name;
    std::string anchor;  ///< the result being reproduced, in words
    Cost cost = Cost::Fast;
    std::function<std::string(const CheckContext&)> actual;
};

struct CheckReport {
    std::string check;
    std::string anchor;
    std::string status;  ///< PASS, FAIL or ERROR
    std::string expected;
    std::string actual;
    double seconds = 0;
};

/// Every registered check in a fixed order.
const std::vector<CheckDescriptor>& check_registry();

/// nullptr if unknown.
const CheckDescriptor* find_check(const std::string& name);

/// Default fixture directory: $DIVCYL_FIXTURES, else the source tree's fixtures/.
std::string default_fixture_dir();

/// Runs one check and compares with its entry in expected.json.
CheckReport run_check(const CheckDescriptor& d, const CheckContext& ctx);

nlohmann::json report_json(const CheckReport& r);

}  // namespace divcyl
