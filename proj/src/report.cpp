#include "mavrp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace mavrp {

double compute_gap(double heuristic_cost, double reference_cost) {
    if (!(reference_cost > 0)) {
        throw std::invalid_argument("compute_gap: reference cost must be positive");
    }
    return (heuristic_cost - reference_cost) / reference_cost * 100.0;
}

Stats compute_stats(std::span<const double> costs) {
    if (costs.empty()) throw std::invalid_argument("compute_stats: no costs");
    const auto t = static_cast<double>(costs.size());
    Stats out;
    for (double c : costs) out.avg += c;
    out.avg /= t;
    double sq = 0.0;
    for (double c : costs) sq += (c - out.avg) * (c - out.avg);
    out.stddev = std::sqrt(sq / t);
    out.cov_pct = out.avg != 0.0 ? out.stddev / out.avg * 100.0 : 0.0;
    return out;
}

void finalize_report(RunReport& report) {
    const Stats stats = compute_stats(report.costs);
    report.best = *std::min_element(report.costs.begin(), report.costs.end());
    report.avg = stats.avg;
    report.stddev = stats.stddev;
    report.cov_pct = stats.cov_pct;
    if (report.reference > 0) {
        report.gap_best_pct = compute_gap(report.best, report.reference);
        report.gap_avg_pct = compute_gap(report.avg, report.reference);
    } else {
        report.gap_best_pct = 0.0;
        report.gap_avg_pct = 0.0;
    }
}

namespace {

std::string csv_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

}  // namespace

std::string reports_to_csv(const std::vector<RunReport>& reports) {
    std::string out =
        "instance,variant,runs,best,avg,std,cov_pct,reference,reference_kind,gap_best_pct,gap_avg_pct\n";
    for (const auto& r : reports) {
        out += r.instance + ',' + r.variant + ',' + std::to_string(r.costs.size()) + ',' +
               csv_num(r.best) + ',' + csv_num(r.avg) + ',' + csv_num(r.stddev) + ',' +
               csv_num(r.cov_pct) + ',' + csv_num(r.reference) + ',' + r.reference_kind + ',' +
               csv_num(r.gap_best_pct) + ',' + csv_num(r.gap_avg_pct) + '\n';
    }
    return out;
}

std::string reports_to_json(const std::vector<RunReport>& reports, bool include_timings) {
    nlohmann::json root = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json item;
        item["instance"] = r.instance;
        item["variant"] = r.variant;
        item["fingerprint"] = r.fingerprint;
        item["seeds"] = r.seeds;
        item["costs"] = r.costs;
        if (!r.run_errors.empty()) item["errors"] = r.run_errors;
        if (include_timings) item["wall_ms"] = r.wall_ms;
        item["best"] = r.best;
        item["avg"] = r.avg;
        item["std"] = r.stddev;
        item["cov_pct"] = r.cov_pct;
        item["reference"] = r.reference;
        item["reference_kind"] = r.reference_kind;
        item["gap_best_pct"] = r.gap_best_pct;
        item["gap_avg_pct"] = r.gap_avg_pct;
        root.push_back(std::move(item));
    }
    return root.dump(2) + "\n";
}

std::vector<RunReport> load_reports_json(const std::string& text) {
    const nlohmann::json root = nlohmann::json::parse(text);
    std::vector<RunReport> reports;
    for (const auto& item : root) {
        RunReport r;
        r.instance = item.at("instance").get<std::string>();
        r.variant = item.at("variant").get<std::string>();
        r.fingerprint = item.value("fingerprint", std::string());
        r.seeds = item.at("seeds").get<std::vector<std::uint64_t>>();
        r.costs = item.at("costs").get<std::vector<double>>();
        if (item.contains("errors")) r.run_errors = item.at("errors").get<std::vector<std::string>>();
        if (item.contains("wall_ms")) r.wall_ms = item.at("wall_ms").get<std::vector<double>>();
        r.best = item.at("best").get<double>();
        r.avg = item.at("avg").get<double>();
        r.stddev = item.at("std").get<double>();
        r.cov_pct = item.at("cov_pct").get<double>();
        r.reference = item.at("reference").get<double>();
        r.reference_kind = item.at("reference_kind").get<std::string>();
        r.gap_best_pct = item.at("gap_best_pct").get<double>();
        r.gap_avg_pct = item.at("gap_avg_pct").get<double>();

        if (r.costs.empty()) {
            reports.push_back(std::move(r));
            continue;
        }
        // The stored aggregates must be re-derivable from the cost list.
        RunReport check = r;
        finalize_report(check);
        const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9; };
        if (!close(check.best, r.best) || !close(check.avg, r.avg) ||
            !close(check.stddev, r.stddev) || !close(check.cov_pct, r.cov_pct) ||
            !close(check.gap_best_pct, r.gap_best_pct) || !close(check.gap_avg_pct, r.gap_avg_pct)) {
            throw std::runtime_error("report self-check failed for " + r.instance + "/" + r.variant);
        }
        reports.push_back(std::move(r));
    }
    return reports;
}

void write_trace(const EvolutionTrace& trace, std::ostream& out) {
    for (const auto& s : trace.snapshots) {
        nlohmann::json line;
        line["type"] = "snapshot";
        line["phase"] = s.phase;
        line["step"] = s.step;
        line["global_best"] = s.global_best;
        line["fitness"] = s.fitness;
        line["destroy_weights"] = s.destroy_weights;
        line["repair_weights"] = s.repair_weights;
        out << line.dump() << '\n';
    }
    for (const auto& e : trace.events) {
        nlohmann::json line;
        line["type"] = "event";
        line["phase"] = e.phase;
        line["step"] = e.step;
        line["kind"] = e.kind;
        line["detail"] = e.detail;
        out << line.dump() << '\n';
    }
}

std::string fingerprint_text(const std::string& text) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (unsigned char ch : text) {
        hash ^= ch;
        hash *= 0x100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace mavrp
