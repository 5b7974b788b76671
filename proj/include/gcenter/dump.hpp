// Run configurations, window construction, parallel center solves, and the
// serialized dump format: canonical JSON (sorted keys, scalars as exact
// strings) with a lossless round trip, an optional CSV dimension table, and
// named verification suites replaying the library's structural results.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gcenter/window.hpp"

namespace gcenter {

struct RunConfig {
    std::string category = "kbproj-serial"; // kbproj-serial | tube | line | stable-serial
    int n = 2;                              // algebra modulus / quiver parameter
    std::string field = "f101";             // q, f2, f5, f101, f<p>
    int window = 8;                         // size bound (kbproj diagonal / tube length)
    int deg_lo = 0;
    int deg_hi = 4;
    bool with_sign = true;

    bool operator==(const RunConfig&) const = default;
};

// Empty when the config is valid, otherwise the violated constraint.
std::string validate_config(const RunConfig& cfg);

// Builds the window for a valid config; throws std::invalid_argument with
// the violated constraint otherwise.
std::unique_ptr<WindowCategory> build_window(const RunConfig& cfg);

// The ring-recognition query matching the category/field/sign combination.
PresentationQuery presentation_query_for(const WindowCategory& w, const RunConfig& cfg);

// Products of one degree block against another, expressed in the basis of
// the target degree: table[i][j] = coordinates of (left i) * (right j).
struct MultTable {
    int right_degree = 0;
    int target_degree = 0;
    std::vector<std::vector<std::vector<Scalar>>> table;

    bool operator==(const MultTable&) const = default;
};

struct DegreeBlock {
    int degree = 0;
    int dimension = 0;
    // basis[k][i]: coordinates of basis element k at window object i
    std::vector<std::vector<std::vector<Scalar>>> basis;
    std::vector<MultTable> mult; // ascending right_degree
    bool operator==(const DegreeBlock&) const = default;
};

struct CenterDump {
    int schema_version = 1;
    RunConfig config;
    std::vector<DegreeBlock> degrees; // ascending degree
    RingReport ring_report;

    bool operator==(const CenterDump&) const = default;
};

// Parallelism cap: GCENTER_THREADS when set (minimum 1), otherwise the
// hardware concurrency.
int thread_budget();

// Solves every degree of the config (independent degrees in parallel up to
// thread_budget()), fills all in-range multiplication tables, and runs the
// ring recognition.  Throws std::invalid_argument on invalid configs.
CenterDump compute_dump(const RunConfig& cfg);

// Canonical serialization: alphabetically sorted keys, scalars as exact
// strings, two-space indentation, trailing newline.  Identical configs give
// byte-identical dumps.
std::string dump_to_json(const CenterDump& d);

// Inverse of dump_to_json; throws std::invalid_argument on malformed input.
CenterDump dump_from_json(const std::string& text);

// "degree,dimension" lines for the dump's degree range.
std::string dump_to_csv(const CenterDump& d);

// Rebuilds solver-ready bases (echelon spaces and elements) from a dump.
std::map<int, CenterBasis> bases_from_dump(const WindowCategory& w, const CenterDump& d);

// Named verification suite: every line is "ok <statement>" or
// "FAIL <statement>"; pass when all checks hold.  Known names:
// dual-numbers, tube, line, stable, extension, singularity.
// Throws std::invalid_argument for unknown names.
struct SuiteReport {
    std::string suite;
    bool pass = true;
    std::vector<std::string> lines;
};

SuiteReport run_suite(const std::string& name);

} // namespace gcenter
