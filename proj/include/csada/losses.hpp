#pragma once
// Training objectives. Perturbations are always supplied by the caller; a loss
// never runs attacks itself, which keeps the bi-level structure explicit and
// every loss a pure function of (model, data, deltas).

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "cost.hpp"
#include "data.hpp"
#include "errors.hpp"
#include "model.hpp"

namespace csada {

struct LossReport {
    double total = 0.0;
    double natural = 0.0;
    double penalty = 0.0; // lambda-weighted term enters total as natural + lambda*penalty
    std::vector<double> per_example;
};

// perturbation per (example index, target class)
using DeltaMap = std::map<std::pair<std::size_t, std::size_t>, std::vector<double>>;

inline LossReport erm_loss(const MlpModel& model, const LabeledDataset& ds) {
    if (ds.n() == 0) throw validation_error("erm_loss: empty dataset");
    LossReport r;
    for (std::size_t i = 0; i < ds.n(); ++i) {
        const double ce = cross_entropy(forward(model, ds.row(i)), ds.labels[i]);
        r.per_example.push_back(ce);
        r.natural += ce;
    }
    r.natural /= static_cast<double>(ds.n());
    r.total = r.natural;
    return r;
}

inline Gradients erm_grad(const MlpModel& model, const LabeledDataset& ds) {
    if (ds.n() == 0) throw validation_error("erm_grad: empty dataset");
    Gradients total = zero_gradients(model);
    const double inv = 1.0 / static_cast<double>(ds.n());
    for (std::size_t i = 0; i < ds.n(); ++i) {
        const ForwardTrace t = forward(model, ds.row(i));
        accumulate(total, backward(model, t, LossKind::ce_true_label(ds.labels[i])), inv);
    }
    return total;
}

// (1/N) sum_i [ CE_i + lambda * sum_z w(y_i,z) * CE(x_i + delta_{i,z}, y_i) ]
// The inner loss is cross-entropy against the TRUE label at the perturbed input.
inline LossReport augmented_loss(const MlpModel& model, const LabeledDataset& ds,
                                 const DeltaMap& deltas, const NormalizedWeights& w,
                                 double lambda) {
    if (ds.n() == 0) throw validation_error("augmented_loss: empty dataset");
    LossReport r;
    for (std::size_t i = 0; i < ds.n(); ++i) {
        const std::vector<double> x = ds.row(i);
        const std::size_t y = ds.labels[i];
        const double ce = cross_entropy(forward(model, x), y);
        double pen_i = 0.0;
        for (std::size_t z = 0; z < w.k; ++z) {
            if (z == y || w.w(y, z) <= 0.0) continue;
            const auto it = deltas.find({i, z});
            if (it == deltas.end())
                throw validation_error("augmented_loss: missing delta for weighted pair");
            pen_i += w.w(y, z) * cross_entropy(forward(model, add(x, it->second)), y);
        }
        r.natural += ce;
        r.penalty += pen_i;
        r.per_example.push_back(ce + lambda * pen_i);
    }
    r.natural /= static_cast<double>(ds.n());
    r.penalty /= static_cast<double>(ds.n());
    r.total = r.natural + lambda * r.penalty;
    return r;
}

inline Gradients augmented_grad(const MlpModel& model, const LabeledDataset& ds,
                                const DeltaMap& deltas, const NormalizedWeights& w,
                                double lambda) {
    if (ds.n() == 0) throw validation_error("augmented_grad: empty dataset");
    Gradients total = zero_gradients(model);
    const double inv = 1.0 / static_cast<double>(ds.n());
    for (std::size_t i = 0; i < ds.n(); ++i) {
        const std::vector<double> x = ds.row(i);
        const std::size_t y = ds.labels[i];
        const ForwardTrace t = forward(model, x);
        accumulate(total, backward(model, t, LossKind::ce_true_label(y)), inv);
        for (std::size_t z = 0; z < w.k; ++z) {
            if (z == y || w.w(y, z) <= 0.0) continue;
            const auto it = deltas.find({i, z});
            if (it == deltas.end())
                throw validation_error("augmented_grad: missing delta for weighted pair");
            const ForwardTrace ta = forward(model, add(x, it->second));
            accumulate(total, backward(model, ta, LossKind::ce_true_label(y)),
                       inv * lambda * w.w(y, z));
        }
    }
    return total;
}

// (1/|B|) sum_i [ CE_i + lambda * CE(x_i + delta_i, y_i) ]  with delta_i = 0 for
// non-members of the sampled pair's class (their penalty term repeats CE_i).
inline LossReport stochastic_loss(const MlpModel& model, const LabeledDataset& batch,
                                  std::pair<std::size_t, std::size_t> pair,
                                  const std::vector<std::vector<double>>& deltas,
                                  double lambda) {
    if (batch.n() == 0) throw validation_error("stochastic_loss: empty batch");
    if (deltas.size() != batch.n())
        throw validation_error("stochastic_loss: one delta per batch row required");
    LossReport r;
    for (std::size_t i = 0; i < batch.n(); ++i) {
        const std::size_t y = batch.labels[i];
        if (y != pair.first)
            for (double v : deltas[i])
                if (v != 0.0)
                    throw validation_error("stochastic_loss: nonzero delta on non-member");
        const std::vector<double> x = batch.row(i);
        const double ce = cross_entropy(forward(model, x), y);
        const double ce_adv = cross_entropy(forward(model, add(x, deltas[i])), y);
        r.natural += ce;
        r.penalty += ce_adv;
        r.per_example.push_back(ce + lambda * ce_adv);
    }
    r.natural /= static_cast<double>(batch.n());
    r.penalty /= static_cast<double>(batch.n());
    r.total = r.natural + lambda * r.penalty;
    return r;
}

inline Gradients stochastic_grad(const MlpModel& model, const LabeledDataset& batch,
                                 std::pair<std::size_t, std::size_t> pair,
                                 const std::vector<std::vector<double>>& deltas,
                                 double lambda) {
    if (batch.n() == 0) throw validation_error("stochastic_grad: empty batch");
    if (deltas.size() != batch.n())
        throw validation_error("stochastic_grad: one delta per batch row required");
    (void)pair;
    Gradients total = zero_gradients(model);
    const double inv = 1.0 / static_cast<double>(batch.n());
    for (std::size_t i = 0; i < batch.n(); ++i) {
        const std::vector<double> x = batch.row(i);
        const std::size_t y = batch.labels[i];
        accumulate(total, backward(model, forward(model, x), LossKind::ce_true_label(y)), inv);
        const ForwardTrace ta = forward(model, add(x, deltas[i]));
        accumulate(total, backward(model, ta, LossKind::ce_true_label(y)), inv * lambda);
    }
    return total;
}

// (1/N) sum_i [ -1{y_i = y'} log(1 - p_{z'}(x_i)) ]
inline double extreme_penalty_loss(const MlpModel& model, const LabeledDataset& ds,
                                   std::pair<std::size_t, std::size_t> pair) {
    if (pair.first == pair.second)
        throw validation_error("extreme_penalty_loss: pair classes must differ");
    double sum = 0.0;
    for (std::size_t i = 0; i < ds.n(); ++i) {
        if (ds.labels[i] != pair.first) continue;
        const ForwardTrace t = forward(model, ds.row(i));
        sum -= std::log(std::max(1.0 - t.probs[pair.second], 1e-300));
    }
    return ds.n() ? sum / static_cast<double>(ds.n()) : 0.0;
}

inline Gradients extreme_penalty_grad(const MlpModel& model, const LabeledDataset& ds,
                                      std::pair<std::size_t, std::size_t> pair) {
    if (pair.first == pair.second)
        throw validation_error("extreme_penalty_grad: pair classes must differ");
    Gradients total = zero_gradients(model);
    if (ds.n() == 0) return total;
    const double inv = 1.0 / static_cast<double>(ds.n());
    for (std::size_t i = 0; i < ds.n(); ++i) {
        if (ds.labels[i] != pair.first) continue;
        const ForwardTrace t = forward(model, ds.row(i));
        const double pz = t.probs[pair.second];
        const double coef = pz / std::max(1.0 - pz, 1e-300);
        // d/dlogit_j of -log(1-p_z) is coef * (1{j=z} - p_j)
        std::vector<double> d(t.probs.size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = -coef * t.probs[j];
        d[pair.second] += coef;
        accumulate(total, backward_from_dlogits(model, t, std::move(d)), inv);
    }
    return total;
}

// -(1/N) sum_i [ log p_{y_i} + alpha * sum_z c(y_i,z) log(1 - p_z) ]
inline double adjusted_penalty_loss(const MlpModel& model, const LabeledDataset& ds,
                                    const CostMatrix& cm, double alpha) {
    if (alpha < 0.0) throw validation_error("adjusted_penalty_loss: alpha must be >= 0");
    if (ds.n() == 0) throw validation_error("adjusted_penalty_loss: empty dataset");
    double sum = 0.0;
    for (std::size_t i = 0; i < ds.n(); ++i) {
        const ForwardTrace t = forward(model, ds.row(i));
        const std::size_t y = ds.labels[i];
        double li = -std::log(std::max(t.probs[y], 1e-300));
        for (std::size_t z = 0; z < cm.k; ++z) {
            if (z == y || cm.c(y, z) <= 0.0) continue;
            li -= alpha * cm.c(y, z) * std::log(std::max(1.0 - t.probs[z], 1e-300));
        }
        sum += li;
    }
    return sum / static_cast<double>(ds.n());
}

inline Gradients adjusted_penalty_grad(const MlpModel& model, const LabeledDataset& ds,
                                       const CostMatrix& cm, double alpha) {
    if (alpha < 0.0) throw validation_error("adjusted_penalty_grad: alpha must be >= 0");
    if (ds.n() == 0) throw validation_error("adjusted_penalty_grad: empty dataset");
    Gradients total = zero_gradients(model);
    const double inv = 1.0 / static_cast<double>(ds.n());
    for (std::size_t i = 0; i < ds.n(); ++i) {
        const ForwardTrace t = forward(model, ds.row(i));
        const std::size_t y = ds.labels[i];
        std::vector<double> d = t.probs; // CE part: p - e_y
        d[y] -= 1.0;
        for (std::size_t z = 0; z < cm.k; ++z) {
            if (z == y || cm.c(y, z) <= 0.0) continue;
            const double pz = t.probs[z];
            const double coef = alpha * cm.c(y, z) * pz / std::max(1.0 - pz, 1e-300);
            for (std::size_t j = 0; j < d.size(); ++j) d[j] -= coef * t.probs[j];
            d[z] += coef;
        }
        accumulate(total, backward_from_dlogits(model, t, std::move(d)), inv);
    }
    return total;
}

} // namespace csada
