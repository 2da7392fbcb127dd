#include "mavrp/palns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mavrp {

namespace {

constexpr double kCostEps = 1e-9;

}  // namespace

const char* to_string(DestroyOp op) {
    switch (op) {
        case DestroyOp::Worst: return "worst";
        case DestroyOp::Related: return "related";
        case DestroyOp::History: return "history";
        case DestroyOp::String: return "string";
        case DestroyOp::TripRemoval: return "trip_removal";
    }
    return "?";
}

const char* to_string(RepairOp op) {
    switch (op) {
        case RepairOp::Greedy: return "greedy";
        case RepairOp::Regret2: return "regret2";
        case RepairOp::Regret3: return "regret3";
        case RepairOp::Random: return "random";
        case RepairOp::OpenBiased: return "open_biased";
    }
    return "?";
}

double update_weight(double weight, Outcome outcome, const WeightUpdateParams& params) {
    if (weight <= 0) throw std::invalid_argument("update_weight: weight must be positive");
    double sigma = params.sigma_rejected;
    switch (outcome) {
        case Outcome::NewBest: sigma = params.sigma_new_best; break;
        case Outcome::Better: sigma = params.sigma_better; break;
        case Outcome::Accepted: sigma = params.sigma_accepted; break;
        case Outcome::Rejected: sigma = params.sigma_rejected; break;
    }
    return params.zeta * weight + (1.0 - params.zeta) * sigma;
}

std::size_t select_operator(std::span<const double> weights, Rng& rng) {
    if (weights.empty()) throw std::invalid_argument("select_operator: no operators");
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0)) throw std::invalid_argument("select_operator: nonpositive weight");
        total += w;
    }
    const double draw = rng.uniform(0.0, total);
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (draw < acc) return i;
    }
    return weights.size() - 1;
}

AcceptanceCriterion AcceptanceCriterion::hill_climbing() {
    return {};
}

AcceptanceCriterion AcceptanceCriterion::record_to_record(double deviation) {
    if (deviation < 0) throw std::invalid_argument("record_to_record: deviation must be >= 0");
    AcceptanceCriterion c;
    c.variant = AcceptVariant::RecordToRecord;
    c.rrt_deviation = deviation;
    return c;
}

AcceptanceCriterion AcceptanceCriterion::simulated_annealing(double start_temperature,
                                                             double cooling) {
    if (!(start_temperature > 0)) {
        throw std::invalid_argument("simulated_annealing: temperature must be positive");
    }
    if (!(cooling > 0) || cooling > 1) {
        throw std::invalid_argument("simulated_annealing: cooling rate must be in (0, 1]");
    }
    AcceptanceCriterion c;
    c.variant = AcceptVariant::SimulatedAnnealing;
    c.sa_temperature = start_temperature;
    c.sa_cooling = cooling;
    return c;
}

double sa_start_temperature(double reference_cost, double worse_frac) {
    const double scale = reference_cost > 0 ? reference_cost : 1.0;
    return worse_frac * scale / std::log(2.0);
}

bool accept(AcceptanceCriterion& criterion, double candidate_cost, double current_cost,
            double best_cost, Rng& rng) {
    switch (criterion.variant) {
        case AcceptVariant::HillClimbing: return candidate_cost <= current_cost;
        case AcceptVariant::RecordToRecord:
            return candidate_cost <= best_cost * (1.0 + criterion.rrt_deviation);
        case AcceptVariant::SimulatedAnnealing: {
            bool taken;
            if (candidate_cost <= current_cost) {
                taken = true;
            } else {
                const double p = std::exp((current_cost - candidate_cost) / criterion.sa_temperature);
                taken = rng.next_double() < p;
            }
            criterion.sa_temperature *= criterion.sa_cooling;
            return taken;
        }
    }
    return false;
}

OperatorBank OperatorBank::standard(const DestroyParams& defaults) {
    OperatorBank bank;
    bank.destroys = {DestroyOp::Worst, DestroyOp::Related, DestroyOp::History, DestroyOp::String,
                     DestroyOp::TripRemoval};
    bank.repairs = {RepairOp::Greedy, RepairOp::Regret2, RepairOp::Regret3, RepairOp::Random,
                    RepairOp::OpenBiased};
    bank.destroy_weights.assign(bank.destroys.size(), 1.0);
    bank.repair_weights.assign(bank.repairs.size(), 1.0);
    bank.destroy_params.assign(bank.destroys.size(), defaults);
    bank.destroy_uses.assign(bank.destroys.size(), 0);
    bank.repair_uses.assign(bank.repairs.size(), 0);
    bank.destroy_score_sum.assign(bank.destroys.size(), 0.0);
    bank.repair_score_sum.assign(bank.repairs.size(), 0.0);
    return bank;
}

void OperatorBank::check() const {
    if (destroys.empty() || repairs.empty()) {
        throw std::invalid_argument("operator bank: needs at least one destroy and one repair");
    }
    if (destroy_weights.size() != destroys.size() || repair_weights.size() != repairs.size() ||
        destroy_params.size() != destroys.size()) {
        throw std::invalid_argument("operator bank: inconsistent shapes");
    }
    for (double w : destroy_weights) {
        if (!(w > 0)) throw std::invalid_argument("operator bank: nonpositive destroy weight");
    }
    for (double w : repair_weights) {
        if (!(w > 0)) throw std::invalid_argument("operator bank: nonpositive repair weight");
    }
}

namespace {

void refresh_history(PalnsState& state, const Instance& inst) {
    for (const auto& j : state.best.journeys) {
        for (const auto& t : j.trips) {
            for (int c : t.customers) {
                const double cost = positional_cost(state.best, inst, c);
                auto& slot = state.history[static_cast<std::size_t>(c)];
                slot = std::min(slot, cost);
            }
        }
    }
}

int draw_degree(const DestroyParams& params, int customers, Rng& rng) {
    const auto lo_raw = static_cast<int>(std::ceil(params.degree_min_frac * customers));
    const auto hi_raw = static_cast<int>(std::ceil(params.degree_max_frac * customers));
    const int lo = std::clamp(lo_raw, 1, customers);
    const int hi = std::clamp(hi_raw, lo, customers);
    return static_cast<int>(rng.uniform_int(lo, hi));
}

}  // namespace

PalnsState make_palns_state(Solution initial, const Instance& inst, OperatorBank bank,
                            AcceptanceCriterion criterion, WeightUpdateParams weights,
                            std::uint64_t seed) {
    bank.check();
    PalnsState state;
    state.best = initial;
    state.current = std::move(initial);
    state.best_cost = makespan(state.best, inst);
    state.current_cost = state.best_cost;
    state.bank = std::move(bank);
    state.criterion = criterion;
    state.weights = weights;
    state.history.assign(static_cast<std::size_t>(inst.node_count()) + 1,
                         std::numeric_limits<double>::infinity());
    state.rng = Rng(seed);
    refresh_history(state, inst);
    return state;
}

void palns_run(PalnsState& state, const Instance& inst, int iter_max) {
    const int customers = inst.customer_count();
    if (customers == 0) {
        state.iterations += iter_max;
        return;
    }

    for (int it = 0; it < iter_max; ++it) {
        const std::size_t di = select_operator(state.bank.destroy_weights, state.rng);
        const std::size_t ri = select_operator(state.bank.repair_weights, state.rng);
        const DestroyParams& dp = state.bank.destroy_params[di];
        const int degree = draw_degree(dp, customers, state.rng);
        ++state.bank.destroy_uses[di];
        ++state.bank.repair_uses[ri];

        PartialSolution partial;
        switch (state.bank.destroys[di]) {
            case DestroyOp::Worst:
                partial = destroy_worst(state.current, inst, degree, dp.worst_p_rand, state.rng);
                break;
            case DestroyOp::Related:
                partial = destroy_related(state.current, inst, degree, state.rng);
                break;
            case DestroyOp::History:
                partial = destroy_history(state.current, inst, degree, state.history, state.rng);
                break;
            case DestroyOp::String:
                partial = destroy_string(state.current, inst, degree, state.rng);
                break;
            case DestroyOp::TripRemoval:
                partial = destroy_trips(state.current, inst, degree, state.rng);
                break;
        }

        std::optional<Solution> candidate;
        switch (state.bank.repairs[ri]) {
            case RepairOp::Greedy: candidate = repair_greedy(partial, inst, state.rng); break;
            case RepairOp::Regret2: candidate = repair_regret(partial, inst, 2, state.rng); break;
            case RepairOp::Regret3: candidate = repair_regret(partial, inst, 3, state.rng); break;
            case RepairOp::Random: candidate = repair_random(partial, inst, state.rng); break;
            case RepairOp::OpenBiased: candidate = repair_open_biased(partial, inst, state.rng); break;
        }

        Outcome outcome;
        if (!candidate) {
            outcome = Outcome::Rejected;
        } else {
            const double cost = makespan(*candidate, inst);
            const double current_before = state.current_cost;
            const bool taken = accept(state.criterion, cost, current_before, state.best_cost, state.rng);
            if (taken) {
                state.current = *candidate;
                state.current_cost = cost;
            }
            if (cost < state.best_cost - kCostEps) {
                state.best = std::move(*candidate);
                state.best_cost = cost;
                refresh_history(state, inst);
                outcome = Outcome::NewBest;
            } else if (taken && cost < current_before - kCostEps) {
                outcome = Outcome::Better;
            } else if (taken) {
                outcome = Outcome::Accepted;
            } else {
                outcome = Outcome::Rejected;
            }
        }

        auto score_of = [&](Outcome o) {
            switch (o) {
                case Outcome::NewBest: return state.weights.sigma_new_best;
                case Outcome::Better: return state.weights.sigma_better;
                case Outcome::Accepted: return state.weights.sigma_accepted;
                case Outcome::Rejected: return state.weights.sigma_rejected;
            }
            return 0.0;
        };
        state.bank.destroy_score_sum[di] += score_of(outcome);
        state.bank.repair_score_sum[ri] += score_of(outcome);
        state.bank.destroy_weights[di] =
            std::max(kWeightFloor, update_weight(state.bank.destroy_weights[di], outcome, state.weights));
        state.bank.repair_weights[ri] =
            std::max(kWeightFloor, update_weight(state.bank.repair_weights[ri], outcome, state.weights));

        ++state.iterations;
    }
}

AlnsResult alns_solve(const Instance& inst, const AlnsConfig& cfg) {
    Rng rng(cfg.seed);
    ConstructionConfig ccfg{rng.next_u64(), cfg.construction_noise};
    Solution initial = construct(inst, ccfg);
    const double initial_cost = makespan(initial, inst);

    AcceptanceCriterion criterion;
    switch (cfg.acceptance) {
        case AcceptVariant::HillClimbing: criterion = AcceptanceCriterion::hill_climbing(); break;
        case AcceptVariant::RecordToRecord:
            criterion = AcceptanceCriterion::record_to_record(cfg.rrt_deviation);
            break;
        case AcceptVariant::SimulatedAnnealing:
            criterion = AcceptanceCriterion::simulated_annealing(
                sa_start_temperature(initial_cost, cfg.sa_start_worse_frac), cfg.sa_cooling);
            break;
    }

    PalnsState state = make_palns_state(std::move(initial), inst, OperatorBank::standard(cfg.destroy),
                                        criterion, cfg.weights, rng.next_u64());
    palns_run(state, inst, cfg.iter_max);
    return {std::move(state.best), state.best_cost};
}

}  // namespace mavrp
