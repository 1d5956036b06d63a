#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "povmlab/serialize.hpp"
#include "povmlab/toeplitz.hpp"

namespace povmlab {

/// Partition construction recipe as it appears in configs:
/// {"type":"bands","N":3,"overlap":0.4} or
/// {"type":"caps","centers":"tetrahedron"|[[t,phi],...],"radius":1.55}.
struct PartitionSpec {
    std::string type = "caps";
    int n = 3;            // bands
    double overlap = 0.4; // bands
    std::string layout = "tetrahedron";
    std::vector<SpherePoint> centers; // used when layout is empty
    double radius = 1.55;

    static PartitionSpec from_json(const Json &j);
    Json to_json() const;
};

PartitionOfUnity build_partition(const PartitionSpec &spec, const SphereGrid &grid);

struct ScenarioConfig {
    std::string scenario;
    std::vector<int> m_list{8, 16, 32, 64, 128};
    PartitionSpec partition;
    SearchBudget budget;
    std::uint64_t seed = 0;
    std::string output = "report";
    std::map<std::string, double> tolerances;

    std::vector<int> n_list{4, 6, 8, 12}; // scaling-in-N
    int fuzz_cases = 1000;                // janssens-fuzz
    int fuzz_dim_min = 2, fuzz_dim_max = 6;
    int fuzz_n_min = 2, fuzz_n_max = 5;
    int registration_n_t = 24, registration_n_phi = 12;

    double tol(const std::string &name, double fallback) const {
        auto it = tolerances.find(name);
        return it == tolerances.end() ? fallback : it->second;
    }

    /// Parses and validates; throws InvalidValue on a bad config (missing
    /// seed, unknown scenario, non-ascending m_list, ...).
    static ScenarioConfig from_json(const Json &j);
};

struct ReportRow {
    std::string scenario;
    std::optional<int> m;
    std::optional<long> n;
    std::optional<double> nu_c;
    std::optional<double> nu_q;
    std::optional<double> noise_lower;
    std::optional<double> ns_lower;
    std::optional<double> ns_upper;
    std::optional<double> m_times_nu_q;
    std::string witnesses;
    std::string note;
    double wall_ms = 0.0; // reported in the JSON summary, never in the CSV
};

struct Verdict {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::string scenario;
    std::vector<ReportRow> rows;
    std::vector<Verdict> verdicts;
    double total_wall_ms = 0.0;

    bool all_pass() const;
};

/// Runs one named scenario. Per-row computation errors are recorded in the
/// row note and the run continues; verdicts depending on a failed row fail.
Report run_scenario(const ScenarioConfig &cfg);

/// CSV bytes for the report: fixed header, LF line endings, deterministic
/// for a given config and seed.
std::string report_csv(const Report &report);

/// JSON summary {scenario, verdicts, timing}.
Json report_summary(const Report &report);

/// Writes <output>.csv and <output>.json.
void write_report(const Report &report, const std::string &output_base);

/// Multiplication POVM of a partition on the grid-indexed space:
/// A_j = diag(f_j(node)). Commutative by construction.
FinitePovm classical_registration_povm(const PartitionOfUnity &p, const SphereGrid &grid);

/// Built-in verification suites: "janssens", "bt-axioms", "naimark".
std::vector<Verdict> check_suite(const std::string &suite, std::uint64_t seed);

const std::vector<std::string> &scenario_names();

} // namespace povmlab
