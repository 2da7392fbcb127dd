#include "mavrp/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mavrp/report.hpp"

namespace mavrp {

AcceptVariant parse_accept_variant(const std::string& name) {
    if (name == "hill_climbing") return AcceptVariant::HillClimbing;
    if (name == "record_to_record") return AcceptVariant::RecordToRecord;
    if (name == "simulated_annealing") return AcceptVariant::SimulatedAnnealing;
    throw std::invalid_argument("unknown acceptance criterion: " + name);
}

const char* to_string(AcceptVariant variant) {
    switch (variant) {
        case AcceptVariant::HillClimbing: return "hill_climbing";
        case AcceptVariant::RecordToRecord: return "record_to_record";
        case AcceptVariant::SimulatedAnnealing: return "simulated_annealing";
    }
    return "?";
}

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw std::invalid_argument("config: unknown key '" + it.key() + "' in " + where);
        }
    }
}

json weights_to_json(const WeightUpdateParams& w) {
    return json{{"zeta", w.zeta},
                {"sigma_new_best", w.sigma_new_best},
                {"sigma_better", w.sigma_better},
                {"sigma_accepted", w.sigma_accepted},
                {"sigma_rejected", w.sigma_rejected}};
}

WeightUpdateParams weights_from_json(const json& obj) {
    check_keys(obj, {"zeta", "sigma_new_best", "sigma_better", "sigma_accepted", "sigma_rejected"},
               "weights");
    WeightUpdateParams w;
    w.zeta = obj.value("zeta", w.zeta);
    w.sigma_new_best = obj.value("sigma_new_best", w.sigma_new_best);
    w.sigma_better = obj.value("sigma_better", w.sigma_better);
    w.sigma_accepted = obj.value("sigma_accepted", w.sigma_accepted);
    w.sigma_rejected = obj.value("sigma_rejected", w.sigma_rejected);
    if (w.zeta < 0 || w.zeta > 1) throw std::invalid_argument("config: zeta must be in [0, 1]");
    if (w.sigma_new_best < 0 || w.sigma_better < 0 || w.sigma_accepted < 0 || w.sigma_rejected < 0) {
        throw std::invalid_argument("config: score parameters must be >= 0");
    }
    return w;
}

json destroy_to_json(const DestroyParams& d) {
    return json{{"degree_min_frac", d.degree_min_frac},
                {"degree_max_frac", d.degree_max_frac},
                {"worst_p_rand", d.worst_p_rand}};
}

DestroyParams destroy_from_json(const json& obj) {
    check_keys(obj, {"degree_min_frac", "degree_max_frac", "worst_p_rand"}, "destroy");
    DestroyParams d;
    d.degree_min_frac = obj.value("degree_min_frac", d.degree_min_frac);
    d.degree_max_frac = obj.value("degree_max_frac", d.degree_max_frac);
    d.worst_p_rand = obj.value("worst_p_rand", d.worst_p_rand);
    if (d.degree_min_frac < 0 || d.degree_max_frac < d.degree_min_frac) {
        throw std::invalid_argument("config: bad destroy degree range");
    }
    if (d.worst_p_rand <= 0) throw std::invalid_argument("config: worst_p_rand must be positive");
    return d;
}

json init_to_json(const InitRanges& r) {
    return json{{"degree_min_lo", r.degree_min_lo}, {"degree_min_hi", r.degree_min_hi},
                {"degree_max_lo", r.degree_max_lo}, {"degree_max_hi", r.degree_max_hi},
                {"worst_p_lo", r.worst_p_lo},       {"worst_p_hi", r.worst_p_hi},
                {"rrt_dev_lo", r.rrt_dev_lo},       {"rrt_dev_hi", r.rrt_dev_hi},
                {"sa_worse_lo", r.sa_worse_lo},     {"sa_worse_hi", r.sa_worse_hi},
                {"sa_cool_lo", r.sa_cool_lo},       {"sa_cool_hi", r.sa_cool_hi}};
}

InitRanges init_from_json(const json& obj) {
    check_keys(obj,
               {"degree_min_lo", "degree_min_hi", "degree_max_lo", "degree_max_hi", "worst_p_lo",
                "worst_p_hi", "rrt_dev_lo", "rrt_dev_hi", "sa_worse_lo", "sa_worse_hi", "sa_cool_lo",
                "sa_cool_hi"},
               "init_ranges");
    InitRanges r;
    r.degree_min_lo = obj.value("degree_min_lo", r.degree_min_lo);
    r.degree_min_hi = obj.value("degree_min_hi", r.degree_min_hi);
    r.degree_max_lo = obj.value("degree_max_lo", r.degree_max_lo);
    r.degree_max_hi = obj.value("degree_max_hi", r.degree_max_hi);
    r.worst_p_lo = obj.value("worst_p_lo", r.worst_p_lo);
    r.worst_p_hi = obj.value("worst_p_hi", r.worst_p_hi);
    r.rrt_dev_lo = obj.value("rrt_dev_lo", r.rrt_dev_lo);
    r.rrt_dev_hi = obj.value("rrt_dev_hi", r.rrt_dev_hi);
    r.sa_worse_lo = obj.value("sa_worse_lo", r.sa_worse_lo);
    r.sa_worse_hi = obj.value("sa_worse_hi", r.sa_worse_hi);
    r.sa_cool_lo = obj.value("sa_cool_lo", r.sa_cool_lo);
    r.sa_cool_hi = obj.value("sa_cool_hi", r.sa_cool_hi);
    return r;
}

}  // namespace

std::string SolverConfig::to_json() const {
    json root;
    root["alns"] = json{{"iter_max", alns.iter_max},
                        {"acceptance", to_string(alns.acceptance)},
                        {"rrt_deviation", alns.rrt_deviation},
                        {"sa_start_worse_frac", alns.sa_start_worse_frac},
                        {"sa_cooling", alns.sa_cooling},
                        {"destroy", destroy_to_json(alns.destroy)},
                        {"weights", weights_to_json(alns.weights)},
                        {"construction_noise", alns.construction_noise}};
    root["ahgslns"] = json{{"population", population.population},
                           {"elite", population.elite},
                           {"gen_max", population.gen_max},
                           {"iter_max", population.iter_max},
                           {"l_c", population.l_c},
                           {"l_d", population.l_d},
                           {"enable_crossover", population.enable_crossover},
                           {"enable_diversification", population.enable_diversification},
                           {"construction_noise", population.construction_noise},
                           {"weights", weights_to_json(population.weights)},
                           {"init_ranges", init_to_json(population.init)}};
    root["exact_node_budget"] = exact_node_budget;
    return root.dump(2) + "\n";
}

std::string SolverConfig::fingerprint() const {
    return fingerprint_text(to_json());
}

SolverConfig SolverConfig::from_json(const std::string& text, const std::string& origin) {
    SolverConfig cfg;
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(origin + ": " + e.what());
    }
    check_keys(root, {"alns", "ahgslns", "exact_node_budget"}, origin);

    if (root.contains("alns")) {
        const json& a = root["alns"];
        check_keys(a,
                   {"iter_max", "acceptance", "rrt_deviation", "sa_start_worse_frac", "sa_cooling",
                    "destroy", "weights", "construction_noise"},
                   "alns");
        cfg.alns.iter_max = a.value("iter_max", cfg.alns.iter_max);
        if (a.contains("acceptance")) {
            cfg.alns.acceptance = parse_accept_variant(a["acceptance"].get<std::string>());
        }
        cfg.alns.rrt_deviation = a.value("rrt_deviation", cfg.alns.rrt_deviation);
        cfg.alns.sa_start_worse_frac = a.value("sa_start_worse_frac", cfg.alns.sa_start_worse_frac);
        cfg.alns.sa_cooling = a.value("sa_cooling", cfg.alns.sa_cooling);
        if (a.contains("destroy")) cfg.alns.destroy = destroy_from_json(a["destroy"]);
        if (a.contains("weights")) cfg.alns.weights = weights_from_json(a["weights"]);
        cfg.alns.construction_noise = a.value("construction_noise", cfg.alns.construction_noise);
        if (cfg.alns.iter_max < 0) throw std::invalid_argument("config: alns.iter_max must be >= 0");
    }

    if (root.contains("ahgslns")) {
        const json& p = root["ahgslns"];
        check_keys(p,
                   {"population", "elite", "gen_max", "iter_max", "l_c", "l_d", "enable_crossover",
                    "enable_diversification", "construction_noise", "weights", "init_ranges"},
                   "ahgslns");
        cfg.population.population = p.value("population", cfg.population.population);
        cfg.population.elite = p.value("elite", cfg.population.elite);
        cfg.population.gen_max = p.value("gen_max", cfg.population.gen_max);
        cfg.population.iter_max = p.value("iter_max", cfg.population.iter_max);
        cfg.population.l_c = p.value("l_c", cfg.population.l_c);
        cfg.population.l_d = p.value("l_d", cfg.population.l_d);
        cfg.population.enable_crossover =
            p.value("enable_crossover", cfg.population.enable_crossover);
        cfg.population.enable_diversification =
            p.value("enable_diversification", cfg.population.enable_diversification);
        cfg.population.construction_noise =
            p.value("construction_noise", cfg.population.construction_noise);
        if (p.contains("weights")) cfg.population.weights = weights_from_json(p["weights"]);
        if (p.contains("init_ranges")) cfg.population.init = init_from_json(p["init_ranges"]);
        cfg.population.check();
    }

    cfg.exact_node_budget = root.value("exact_node_budget", cfg.exact_node_budget);
    if (cfg.exact_node_budget < 1) {
        throw std::invalid_argument("config: exact_node_budget must be positive");
    }
    return cfg;
}

SolverConfig SolverConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return from_json(text.str(), path);
}

}  // namespace mavrp
