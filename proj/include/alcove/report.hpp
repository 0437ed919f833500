#pragma once

#include <optional>
#include <string>
#include <vector>

namespace alcove {

enum class CaseStatus { Pass, Fail, Skipped };

// One checked expectation inside a suite.  expected and actual are rendered
// strings so that reports serialize uniformly; source carries the citation
// tag of the reference data record backing the expectation.
struct CaseResult {
    std::string id;
    std::string expected;
    std::string actual;
    CaseStatus status = CaseStatus::Skipped;
    std::string source;
};

struct SuiteReport {
    std::string suite;
    std::vector<CaseResult> cases;
    double elapsed_ms = 0.0;
    unsigned seed = 0;
    double tol = 1e-10;

    bool passed() const;
    int fail_count() const;
};

struct SuiteOptions {
    double tol = 1e-10;
    unsigned seed = 0;
    bool stretch = false;        // include the long-running cases
    int threads = 0;             // 0 = library default
    std::optional<int> only_n;   // restrict a suite to one order
};

// Names of the available suites, in canonical order.
const std::vector<std::string>& suite_names();

// Run one reproduction suite against the bundled reference data.  Unknown
// names raise a parse error.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt);

enum class EmitFormat { Text, Json, Csv };

// Serialize a report with stable field ordering.  Timing is volatile across
// runs, so elapsed is included only when timing is requested.
std::string emit(const SuiteReport& report, EmitFormat fmt, bool timing = false);

// Full command-line entry point; returns the process exit code
// (0 pass, 1 fail, 2 usage error).
int run_cli(int argc, char** argv);

}  // namespace alcove
