#pragma once

#include "bolhalf/numeric.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace bolhalf {

struct RunConfig {
    unsigned bits = 128;   // working precision; suites raise it where a check needs more
    double tol = 1e-12;    // quadrature relative tolerance
    i64 prec = 0;          // 0: each suite uses its own truncation order
    u64 seed = 20241018;
    std::string json_path; // report destination ("" or "-": stdout)
    std::string out_path;  // series / value output of the operator subcommands

    void validate() const; // throws InvalidArgument
    nlohmann::json to_json() const;
};

struct SuiteCheck {
    std::string name;
    bool pass = true;
    bool informational = false; // reported only, never fails the suite
    double value = 0;
    double threshold = 0;
    nlohmann::json detail = nlohmann::json::object();
};

struct SuiteReport {
    std::string suite;
    std::string title;
    std::vector<SuiteCheck> checks;
    std::string error;       // non-empty when the run aborted
    int error_code = 0;      // 2 or 3 when aborted
    nlohmann::json extra = nlohmann::json::object();

    bool passed() const;
    int exit_code() const;   // 0 pass, 1 failed check, 2/3 aborted
    nlohmann::json to_json(const RunConfig& cfg) const;
};

inline constexpr const char* kReportSchema = "bolhalf.report/1";

const std::vector<std::string>& suite_names(); // excluding "all"
// Runs one named suite ("all" runs every suite and merges the checks).
SuiteReport run_suite(const std::string& name, const RunConfig& cfg);

nlohmann::json complex_json(const Complex& z);
nlohmann::json complex_json(const std::complex<double>& z);

} // namespace bolhalf
