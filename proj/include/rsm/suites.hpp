#ifndef RSM_SUITES_HPP
#define RSM_SUITES_HPP

// Named verification suites run by the `verify` tool and the acceptance
// binary. Each suite has a fixed list of numeric (or string) parameters with
// defaults; overrides for keys not on that list are rejected.

#include "rsm/report.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rsm::suites {

/// Bad suite name, unknown key or unparsable value. Maps to exit status 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Value = std::variant<double, std::string>;

struct ExperimentConfig {
    std::string suite;
    std::map<std::string, std::string> overrides;
    std::uint64_t seed = 0;
    int jobs = 0;   ///< worker threads, <= 0 for the OpenMP default; never changes results
};

const std::vector<std::string>& suite_names();

/// Parameter names and defaults, in report order. ConfigError for an unknown suite.
std::vector<std::pair<std::string, Value>> suite_defaults(const std::string& suite);

/// Runs the suite. report.pass is true iff every contract of the suite holds.
report::Report run_suite(const ExperimentConfig& cfg);

}

#endif
