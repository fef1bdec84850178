#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbkit/json_io.hpp"

namespace bbkit {

// Invalid run configuration (exit code 2 in the CLI).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::uint32_t p = 3;
    std::uint32_t e = 1;
    std::uint64_t seed = 1;
    std::optional<int> samples;           // per label / type / direction; suite default when unset
    std::uint64_t budget = 20'000'000;    // enumeration budget in points
    std::vector<std::string> suites;      // selftest parts to run; empty runs all that apply
    int jobs = 1;                         // worker threads for sharded suites
    bool timing = false;                  // include wall-clock (breaks byte-identical output)
};

struct Tally {
    std::uint64_t attempted = 0;
    std::uint64_t passed = 0;
};

struct Failure {
    std::string check;
    std::string message;
    Json witness;
};

struct VerificationReport {
    std::string suite;
    std::uint32_t p = 0, e = 0, q = 0;
    std::uint64_t seed = 0;
    std::uint64_t attempted = 0;
    std::uint64_t passed = 0;
    std::map<std::string, Tally> breakdown;
    std::vector<Failure> failures;
    Json details = Json::object();  // suite-specific tables
    std::optional<double> seconds;

    // One case under each key; a failing case is recorded once, under the first key.
    void record(std::initializer_list<std::string> keys, bool ok, const std::string& message = {}, Json witness = nullptr);
    void record(const std::string& key, bool ok, const std::string& message = {}, Json witness = nullptr) {
        record({key}, ok, message, std::move(witness));
    }
    // Adds counts and failures; details are merged key by key (numbers are summed, arrays concatenated).
    void merge(const VerificationReport& other);
    bool ok() const { return passed == attempted && failures.empty(); }
};

Json to_json(const VerificationReport& r);

// Parts of the self-test: "spread", "ibb", "subgeometry", "embedding".
VerificationReport run_selftest(const RunConfig& cfg);
// Images of sampled conics of every reachable case label. Needs q >= 3.
VerificationReport run_forward(const RunConfig& cfg);
// Preimages of generated 3-special curves of every type. Needs q >= 8.
VerificationReport run_converse(const RunConfig& cfg);
// Observed (k, type) per label against the expected table, plus exhaustive
// per-label counts of the conics of one exterior subplane (q <= 5).
VerificationReport run_case_table(const RunConfig& cfg);

// Full analysis of one conic: label, image, recognition, 3-special report and
// the verdict against the expected profile ("match").
Json map_conic(const BBContext& ctx, const ConicSpec& spec);
// 3-special report and type of a serialized curve of PG(6,q).
Json classify_curve(const BBContext& ctx, const NRC& curve);

}  // namespace bbkit
