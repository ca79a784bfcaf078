#pragma once
// Targeted projected gradient ascent with rejection. Ascends log p_target by
// raw-gradient steps (no sign trick), projects onto the inf-norm ball after
// every step, and rejects any step whose prediction leaves {true, target}.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "model.hpp"

namespace csada {

struct AttackConfig {
    double epsilon = 1.5; // inf-norm ball radius
    std::size_t steps = 5;
    double eta2 = 0.05;
    std::optional<std::pair<double, double>> clamp; // input-domain box, off by default

    void validate() const {
        if (epsilon <= 0.0) throw validation_error("attack: epsilon must be positive");
        if (steps < 1) throw validation_error("attack: need at least one step");
        if (eta2 <= 0.0) throw validation_error("attack: eta2 must be positive");
        if (clamp && clamp->first >= clamp->second)
            throw validation_error("attack: clamp box is empty");
    }
};

struct Termination {
    enum class Kind { not_correct_initially, target_hit, rejected, budget_exhausted, skipped };
    Kind kind = Kind::budget_exhausted;
    std::size_t step = 0; // which k hit the target / got rejected

    static Termination not_correct_initially() { return {Kind::not_correct_initially, 0}; }
    static Termination target_hit(std::size_t k) { return {Kind::target_hit, k}; }
    static Termination rejected(std::size_t k) { return {Kind::rejected, k}; }
    static Termination budget_exhausted(std::size_t k) { return {Kind::budget_exhausted, k}; }
    static Termination skipped() { return {Kind::skipped, 0}; }
};

inline std::string termination_name(const Termination& t) {
    switch (t.kind) {
        case Termination::Kind::not_correct_initially: return "not_correct_initially";
        case Termination::Kind::target_hit: return "target_hit";
        case Termination::Kind::rejected: return "rejected";
        case Termination::Kind::budget_exhausted: return "budget_exhausted";
        case Termination::Kind::skipped: return "skipped";
    }
    return "?";
}

struct AttackResult {
    std::vector<double> delta;
    std::vector<std::vector<double>> trajectory; // accepted iterates, delta^0 first
    Termination termination;
};

inline std::vector<double> project_inf_ball(std::vector<double> delta, double epsilon) {
    if (epsilon <= 0.0) throw validation_error("project_inf_ball: epsilon must be positive");
    for (double& v : delta) v = std::clamp(v, -epsilon, epsilon);
    return delta;
}

// one ascent-and-project update from the current delta; exposed so tests can
// recompute the candidate a rejection refused
inline std::vector<double> attack_step(const MlpModel& model, const std::vector<double>& x,
                                       const std::vector<double>& delta, std::size_t z,
                                       const AttackConfig& cfg) {
    const ForwardTrace trace = forward(model, add(x, delta));
    const Gradients g = backward(model, trace, LossKind::log_prob_target(z));
    std::vector<double> cand(delta.size());
    for (std::size_t i = 0; i < cand.size(); ++i)
        cand[i] = delta[i] + cfg.eta2 * g.d_input[i];
    cand = project_inf_ball(std::move(cand), cfg.epsilon);
    if (cfg.clamp)
        for (std::size_t i = 0; i < cand.size(); ++i)
            cand[i] = std::clamp(x[i] + cand[i], cfg.clamp->first, cfg.clamp->second) - x[i];
    return cand;
}

inline AttackResult targeted_attack(const MlpModel& model, const std::vector<double>& x,
                                    std::size_t y, std::size_t z, const AttackConfig& cfg) {
    cfg.validate();
    if (y == z) throw validation_error("attack: target class equals true class");
    if (x.size() != model.input_dim())
        throw validation_error("attack: input dimension mismatch");
    if (y >= model.class_count() || z >= model.class_count())
        throw validation_error("attack: class index out of range");

    AttackResult res;
    res.delta.assign(x.size(), 0.0);
    res.trajectory.push_back(res.delta);
    if (predict(model, x) != y) { // only correctly classified points are attacked
        res.termination = Termination::not_correct_initially();
        return res;
    }
    for (std::size_t k = 1; k <= cfg.steps; ++k) {
        std::vector<double> cand = attack_step(model, x, res.delta, z, cfg);
        const std::size_t pred = predict(model, add(x, cand));
        if (pred != y && pred != z) { // rejected: keep the previous iterate
            res.termination = Termination::rejected(k);
            return res;
        }
        res.delta = std::move(cand);
        res.trajectory.push_back(res.delta);
        if (pred == z) {
            res.termination = Termination::target_hit(k);
            return res;
        }
    }
    res.termination = Termination::budget_exhausted(cfg.steps);
    return res;
}

// Attack every batch member whose label equals y_filter; everyone else gets a
// zero perturbation marked `skipped` (they contribute delta = 0 downstream).
inline std::vector<AttackResult> attack_batch(
    const MlpModel& model, const std::vector<std::pair<std::vector<double>, std::size_t>>& batch,
    std::size_t z, std::size_t y_filter, const AttackConfig& cfg) {
    std::vector<AttackResult> out;
    out.reserve(batch.size());
    for (const auto& [x, y] : batch) {
        if (y == y_filter) {
            out.push_back(targeted_attack(model, x, y, z, cfg));
        } else {
            AttackResult r;
            r.delta.assign(x.size(), 0.0);
            r.trajectory.push_back(r.delta);
            r.termination = Termination::skipped();
            out.push_back(std::move(r));
        }
    }
    return out;
}

// CSV rows: point id, step k, delta components, predicted class, p_target
inline void write_trajectory_csv(const MlpModel& model,
                                 const std::vector<std::vector<double>>& points,
                                 const std::vector<AttackResult>& results, std::size_t z,
                                 const std::string& path) {
    if (points.size() != results.size())
        throw validation_error("trajectory export: points/results size mismatch");
    std::ofstream out(path);
    if (!out) throw io_error("cannot write trajectories '" + path + "'");
    out << "point,step";
    const std::size_t d = points.empty() ? 0 : points[0].size();
    for (std::size_t j = 0; j < d; ++j) out << ",d" << j;
    out << ",pred,p_target\n";
    out.precision(17);
    for (std::size_t i = 0; i < results.size(); ++i) {
        for (std::size_t k = 0; k < results[i].trajectory.size(); ++k) {
            const auto& delta = results[i].trajectory[k];
            const ForwardTrace t = forward(model, add(points[i], delta));
            out << i << "," << k;
            for (double v : delta) out << "," << v;
            out << "," << argmax_class(t.logits) << "," << t.probs[z] << "\n";
        }
    }
}

} // namespace csada
