#pragma once
// Metrics: weighted error rate (average cost per prediction), accuracy,
// pairwise error matrix, and decision-boundary grid export.

#include <algorithm>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cost.hpp"
#include "data.hpp"
#include "errors.hpp"
#include "model.hpp"

namespace csada {

struct PairRate {
    std::size_t y = 0, z = 0;
    double cost = 0.0;
    std::size_t count = 0;
    double rate = 0.0;
};

struct EvalReport {
    double wer = 0.0;
    double accuracy = 0.0;
    double total_cost = 0.0;
    std::vector<std::vector<std::size_t>> pair_counts; // [true][predicted]
    std::vector<std::vector<double>> pair_rates;       // count / class size
    std::vector<PairRate> top_cost_pairs;
    std::vector<std::string> class_names;
};

inline EvalReport evaluate(const MlpModel& model, const LabeledDataset& ds,
                           const CostMatrix& cm, std::size_t top_k = 3) {
    if (ds.n() == 0) throw validation_error("evaluate: empty dataset");
    if (model.class_count() != ds.class_count() || cm.k != ds.class_count())
        throw validation_error("evaluate: class counts disagree");
    const std::size_t k = cm.k;
    EvalReport r;
    r.class_names = ds.class_names;
    r.pair_counts.assign(k, std::vector<std::size_t>(k, 0));
    std::size_t correct = 0;
    for (std::size_t i = 0; i < ds.n(); ++i) {
        const std::size_t pred = predict(model, ds.row(i));
        const std::size_t y = ds.labels[i];
        ++r.pair_counts[y][pred];
        if (pred == y) ++correct;
        r.total_cost += cm.c(y, pred); // diagonal is zero, so hits add nothing
    }
    r.wer = r.total_cost / static_cast<double>(ds.n());
    r.accuracy = static_cast<double>(correct) / static_cast<double>(ds.n());

    r.pair_rates.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t y = 0; y < k; ++y) {
        std::size_t class_n = 0;
        for (std::size_t z = 0; z < k; ++z) class_n += r.pair_counts[y][z];
        if (class_n == 0) continue;
        for (std::size_t z = 0; z < k; ++z)
            r.pair_rates[y][z] =
                static_cast<double>(r.pair_counts[y][z]) / static_cast<double>(class_n);
    }

    std::vector<PairRate> pairs;
    for (std::size_t y = 0; y < k; ++y)
        for (std::size_t z = 0; z < k; ++z)
            if (y != z && cm.c(y, z) > 0.0)
                pairs.push_back({y, z, cm.c(y, z), r.pair_counts[y][z], r.pair_rates[y][z]});
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const PairRate& a, const PairRate& b) { return a.cost > b.cost; });
    if (pairs.size() > top_k) pairs.resize(top_k);
    r.top_cost_pairs = std::move(pairs);
    return r;
}

// second WER path: fold cost over the pairwise count matrix
inline double wer_from_counts(const EvalReport& r, const CostMatrix& cm) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t y = 0; y < cm.k; ++y)
        for (std::size_t z = 0; z < cm.k; ++z) {
            sum += static_cast<double>(r.pair_counts[y][z]) * cm.c(y, z);
            n += r.pair_counts[y][z];
        }
    return sum / static_cast<double>(n);
}

inline std::size_t critical_error_count(const MlpModel& model, const LabeledDataset& ds,
                                        std::pair<std::size_t, std::size_t> pair) {
    if (pair.first >= ds.class_count() || pair.second >= ds.class_count())
        throw validation_error("critical_error_count: pair out of range");
    std::size_t count = 0;
    for (std::size_t i = 0; i < ds.n(); ++i)
        if (ds.labels[i] == pair.first && predict(model, ds.row(i)) == pair.second)
            ++count;
    return count;
}

inline nlohmann::json eval_to_json(const EvalReport& r) {
    nlohmann::json j;
    j["wer"] = r.wer;
    j["accuracy"] = r.accuracy;
    j["total_cost"] = r.total_cost;
    j["pair_counts"] = r.pair_counts;
    j["pair_rates"] = r.pair_rates;
    j["class_names"] = r.class_names;
    j["top_cost_pairs"] = nlohmann::json::array();
    for (const auto& p : r.top_cost_pairs)
        j["top_cost_pairs"].push_back({{"true", r.class_names[p.y]},
                                       {"predicted", r.class_names[p.z]},
                                       {"cost", p.cost},
                                       {"count", p.count},
                                       {"rate", p.rate}});
    return j;
}

// uniform grid over [x_lo,x_hi] x [y_lo,y_hi]; resolution^2 rows of
// (x1, x2, predicted class, p_0..p_{k-1})
inline void export_boundary_grid(const MlpModel& model, double x_lo, double x_hi,
                                 double y_lo, double y_hi, std::size_t resolution,
                                 const std::string& path) {
    if (model.input_dim() != 2)
        throw validation_error("boundary grid: model input must be 2-D");
    if (resolution < 1) throw validation_error("boundary grid: resolution must be >= 1");
    std::ofstream out(path);
    if (!out) throw io_error("cannot write boundary grid '" + path + "'");
    out << "x1,x2,pred";
    for (std::size_t c = 0; c < model.class_count(); ++c) out << ",p" << c;
    out << "\n";
    out.precision(17);
    const double dx = resolution > 1 ? (x_hi - x_lo) / static_cast<double>(resolution - 1) : 0.0;
    const double dy = resolution > 1 ? (y_hi - y_lo) / static_cast<double>(resolution - 1) : 0.0;
    for (std::size_t i = 0; i < resolution; ++i)
        for (std::size_t j = 0; j < resolution; ++j) {
            const double x1 = x_lo + dx * static_cast<double>(i);
            const double x2 = y_lo + dy * static_cast<double>(j);
            const ForwardTrace t = forward(model, {x1, x2});
            out << x1 << "," << x2 << "," << argmax_class(t.logits);
            for (double p : t.probs) out << "," << p;
            out << "\n";
        }
}

} // namespace csada
