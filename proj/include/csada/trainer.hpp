#pragma once
// Training loops: baseline ERM, the full descent-ascent loop (attack every
// positively weighted pair each epoch, then one descent step on the augmented
// loss), the stochastic variant (one sampled pair per mini-batch step), and
// the penalty-only benchmark loops.
//
// RNG streams: 0 = epoch shuffling, 1 = pair sampling, so a lambda=0 run
// consumes randomness exactly like continued baseline training and their
// parameter trajectories stay bit-identical.

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "attack.hpp"
#include "cost.hpp"
#include "data.hpp"
#include "errors.hpp"
#include "eval.hpp"
#include "losses.hpp"
#include "model.hpp"

namespace csada {

struct TrainConfig {
    std::size_t epochs = 1;
    std::size_t batch = 0; // 0 = full batch
    double lambda = 1.0;
    double tau = 1.0;
    AttackConfig attack;
    double lr = 0.01; // eta1
    double momentum = 0.0;
    std::uint64_t seed = 0;
    std::size_t eval_every = 0;   // steps between eval snapshots; 0 = off
    double natural_ceiling = 0.1; // flag (not abort) when the natural term exceeds this

    void validate() const {
        if (epochs < 1) throw validation_error("train: epochs must be >= 1");
        if (lambda < 0.0) throw validation_error("train: lambda must be >= 0");
        if (tau <= 0.0) throw validation_error("train: tau must be positive");
        if (lr < 0.0) throw validation_error("train: lr must be >= 0");
        if (momentum < 0.0 || momentum >= 1.0)
            throw validation_error("train: momentum must be in [0,1)");
        attack.validate();
    }
};

struct EvalSnapshot {
    double wer = 0.0;
    double accuracy = 0.0;
};

struct StepRecord {
    std::size_t step = 0; // strictly increasing, 1-based
    LossReport report;
    std::size_t attacks = 0;
    bool natural_exceeded = false;
    std::optional<EvalSnapshot> eval;
};

struct TrainLog {
    std::vector<StepRecord> records;
    std::string checkpoint_path; // filled in by the CLI once it writes the model

    void write_jsonl(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw io_error("cannot write train log '" + path + "'");
        for (const auto& r : records) {
            nlohmann::json j{{"step", r.step},
                             {"total", r.report.total},
                             {"natural", r.report.natural},
                             {"penalty", r.report.penalty},
                             {"attacks", r.attacks},
                             {"natural_exceeded", r.natural_exceeded}};
            if (r.eval)
                j["eval"] = {{"wer", r.eval->wer}, {"accuracy", r.eval->accuracy}};
            out << j.dump() << "\n";
        }
    }
};

struct TrainResult {
    MlpModel model;
    TrainLog log;
};

// optional held-out evaluation hook, consulted every cfg.eval_every steps
struct EvalHook {
    const LabeledDataset* data = nullptr;
    const CostMatrix* cost = nullptr;
};

namespace detail {

inline void check_finite(const MlpModel& m) {
    for (const Matrix& w : m.weights)
        if (!w.all_finite()) throw numeric_error("training diverged: non-finite weight");
    for (const auto& b : m.biases)
        for (double v : b)
            if (!std::isfinite(v)) throw numeric_error("training diverged: non-finite bias");
}

inline std::vector<std::vector<std::size_t>> epoch_batches(std::vector<std::size_t>& order,
                                                           Rng& shuffle_rng,
                                                           std::size_t batch) {
    shuffle_rng.shuffle(order);
    std::vector<std::vector<std::size_t>> batches;
    const std::size_t b = batch == 0 ? order.size() : batch;
    for (std::size_t s = 0; s < order.size(); s += b) {
        batches.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(s),
                             order.begin() + static_cast<std::ptrdiff_t>(
                                                 std::min(s + b, order.size())));
    }
    return batches;
}

// Shared driver: per epoch, shuffle and partition; per batch, ask `step_fn`
// for (gradient, loss report, attack count) at the current model, then apply
// one SGD step. Keeps shuffling/logging identical across all four trainers.
template <typename StepFn>
TrainResult run_loop(const MlpModel& start, const LabeledDataset& ds, const TrainConfig& cfg,
                     StepFn&& step_fn, const EvalHook& hook = {}) {
    cfg.validate();
    ds.validate();
    if (ds.n() == 0) throw validation_error("train: empty dataset");
    TrainResult out{start, {}};
    Rng shuffle_rng(cfg.seed, 0);
    Rng pair_rng(cfg.seed, 1);
    Gradients velocity = zero_gradients(start);
    std::vector<std::size_t> order(ds.n());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::size_t step = 0;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (const auto& batch_rows : epoch_batches(order, shuffle_rng, cfg.batch)) {
            const LabeledDataset batch = take_rows(ds, batch_rows);
            StepRecord rec;
            Gradients grad = step_fn(out.model, batch, pair_rng, rec);
            out.model = sgd_step(out.model, grad, cfg.lr, cfg.momentum, velocity);
            detail::check_finite(out.model);
            rec.step = ++step;
            rec.natural_exceeded = rec.report.natural > cfg.natural_ceiling;
            if (cfg.eval_every > 0 && hook.data && hook.cost && step % cfg.eval_every == 0) {
                const EvalReport er = evaluate(out.model, *hook.data, *hook.cost);
                rec.eval = EvalSnapshot{er.wer, er.accuracy};
            }
            out.log.records.push_back(std::move(rec));
        }
    }
    return out;
}

} // namespace detail

inline TrainResult train_baseline(const MlpModel& model, const LabeledDataset& ds,
                                  const TrainConfig& cfg, const EvalHook& hook = {}) {
    return detail::run_loop(
        model, ds, cfg,
        [](const MlpModel& m, const LabeledDataset& batch, Rng&, StepRecord& rec) {
            rec.report = erm_loss(m, batch);
            return erm_grad(m, batch);
        },
        hook);
}

// Full descent-ascent: every epoch attacks all (i, z) with w(y_i, z) > 0
// against the current snapshot, then steps on the augmented objective.
inline TrainResult train_csada_full(const MlpModel& model, const LabeledDataset& ds,
                                    const CostMatrix& cm, const TrainConfig& cfg,
                                    const EvalHook& hook = {}) {
    const NormalizedWeights w = normalize(cm, cfg.tau); // rejects all-zero cost
    TrainConfig full_cfg = cfg;
    full_cfg.batch = 0; // this loop is defined on the full dataset
    return detail::run_loop(
        model, ds, full_cfg,
        [&](const MlpModel& m, const LabeledDataset& batch, Rng&, StepRecord& rec) {
            DeltaMap deltas;
            for (std::size_t i = 0; i < batch.n(); ++i) {
                const std::size_t y = batch.labels[i];
                for (std::size_t z = 0; z < w.k; ++z) {
                    if (z == y || w.w(y, z) <= 0.0) continue; // costless pairs: no attack
                    deltas[{i, z}] =
                        targeted_attack(m, batch.row(i), y, z, cfg.attack).delta;
                    ++rec.attacks;
                }
            }
            rec.report = augmented_loss(m, batch, deltas, w, cfg.lambda);
            return augmented_grad(m, batch, deltas, w, cfg.lambda);
        },
        hook);
}

// Stochastic variant: one sampled pair per mini-batch step; only members of the
// sampled true class are attacked, everyone else contributes delta = 0.
inline TrainResult train_csada_stochastic(const MlpModel& model, const LabeledDataset& ds,
                                          const CostMatrix& cm, const TrainConfig& cfg,
                                          const EvalHook& hook = {}) {
    const NormalizedWeights w = normalize(cm, cfg.tau);
    return detail::run_loop(
        model, ds, cfg,
        [&](const MlpModel& m, const LabeledDataset& batch, Rng& pair_rng, StepRecord& rec) {
            const auto pair = sample_pair(w, pair_rng);
            std::vector<std::vector<double>> deltas(batch.n());
            for (std::size_t i = 0; i < batch.n(); ++i) {
                if (batch.labels[i] == pair.first) {
                    deltas[i] = targeted_attack(m, batch.row(i), pair.first, pair.second,
                                                cfg.attack)
                                    .delta;
                    ++rec.attacks;
                } else {
                    deltas[i].assign(batch.dim(), 0.0);
                }
            }
            rec.report = stochastic_loss(m, batch, pair, deltas, cfg.lambda);
            return stochastic_grad(m, batch, pair, deltas, cfg.lambda);
        },
        hook);
}

// benchmark loops: descend on the penalty objective alone
struct PenaltyPair {
    std::size_t y = 0, z = 0;
};
struct PenaltyMatrix {
    CostMatrix cost;
    double alpha = 1.0;
};
using PenaltySpec = std::variant<PenaltyPair, PenaltyMatrix>;

inline TrainResult train_penalty(const MlpModel& model, const LabeledDataset& ds,
                                 const PenaltySpec& spec, const TrainConfig& cfg,
                                 const EvalHook& hook = {}) {
    if (const auto* pm = std::get_if<PenaltyMatrix>(&spec)) {
        pm->cost.validate();
        if (pm->alpha < 0.0) throw validation_error("train_penalty: alpha must be >= 0");
    } else {
        const auto& pp = std::get<PenaltyPair>(spec);
        if (pp.y == pp.z) throw validation_error("train_penalty: pair classes must differ");
    }
    return detail::run_loop(
        model, ds, cfg,
        [&](const MlpModel& m, const LabeledDataset& batch, Rng&, StepRecord& rec) {
            if (const auto* pp = std::get_if<PenaltyPair>(&spec)) {
                const double pen = extreme_penalty_loss(m, batch, {pp->y, pp->z});
                rec.report.natural = erm_loss(m, batch).natural; // monitor only
                rec.report.penalty = pen;
                rec.report.total = pen;
                return extreme_penalty_grad(m, batch, {pp->y, pp->z});
            }
            const auto& pm = std::get<PenaltyMatrix>(spec);
            const double total = adjusted_penalty_loss(m, batch, pm.cost, pm.alpha);
            rec.report.natural = erm_loss(m, batch).natural;
            rec.report.penalty = total - rec.report.natural;
            rec.report.total = total;
            return adjusted_penalty_grad(m, batch, pm.cost, pm.alpha);
        },
        hook);
}

} // namespace csada
