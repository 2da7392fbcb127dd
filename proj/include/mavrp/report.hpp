#ifndef MAVRP_REPORT_HPP_
#define MAVRP_REPORT_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mavrp/ahgslns.hpp"

namespace mavrp {

// Signed percentage of the heuristic cost relative to a reference cost;
// negative means the heuristic beat the reference. Throws when the reference
// is not positive.
double compute_gap(double heuristic_cost, double reference_cost);

struct Stats {
    double avg = 0.0;
    double stddev = 0.0;  // population form, divide by the run count
    double cov_pct = 0.0; // stddev / avg * 100
};

Stats compute_stats(std::span<const double> costs);

// Aggregated result of T runs of one algorithm variant on one instance.
struct RunReport {
    std::string instance;
    std::string variant;
    std::vector<std::uint64_t> seeds;
    std::vector<double> costs;    // per successful run
    std::vector<double> wall_ms;  // per successful run, excluded from deterministic output
    std::vector<std::string> run_errors;  // "<run>: <message>" for failed runs
    double best = 0.0;
    double avg = 0.0;
    double stddev = 0.0;
    double cov_pct = 0.0;
    double reference = 0.0;       // exact optimum or batch best-known
    std::string reference_kind;   // "exact" | "bks"
    double gap_best_pct = 0.0;
    double gap_avg_pct = 0.0;     // headline gap, matching the avg-vs-reference convention
    std::string fingerprint;      // hash of the variant configuration
};

// Recomputes best/avg/std/cov/gaps from the per-run costs.
void finalize_report(RunReport& report);

// CSV with a fixed, documented column order. Timings are never in the CSV.
std::string reports_to_csv(const std::vector<RunReport>& reports);

// Full JSON report; wall-clock fields only with include_timings.
std::string reports_to_json(const std::vector<RunReport>& reports, bool include_timings);

// Parses a JSON report and verifies the stored aggregates against the per-run
// costs; throws std::runtime_error on any mismatch.
std::vector<RunReport> load_reports_json(const std::string& text);

// Line-delimited trace dump: one JSON object per snapshot or event.
void write_trace(const EvolutionTrace& trace, std::ostream& out);

// FNV-1a hash of a string, hex-encoded; used for config fingerprints.
std::string fingerprint_text(const std::string& text);

}  // namespace mavrp

#endif
