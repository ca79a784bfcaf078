#pragma once
// Fully connected classifier: forward pass, cross-entropy, and hand-written
// backprop that returns gradients w.r.t. parameters AND the input. The input
// gradient is what the attack module ascends on, so it is first-class here.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "matrix.hpp"
#include "rng.hpp"

namespace csada {

enum class Activation { tanh_fn, relu };

inline std::string activation_name(Activation a) {
    return a == Activation::tanh_fn ? "tanh" : "relu";
}

inline Activation activation_from_name(const std::string& s) {
    if (s == "tanh") return Activation::tanh_fn;
    if (s == "relu") return Activation::relu;
    throw validation_error("unknown activation '" + s + "'");
}

struct MlpModel {
    std::vector<std::size_t> dims;  // input, hidden..., output
    std::vector<Matrix> weights;    // weights[l] is dims[l] x dims[l+1]
    std::vector<std::vector<double>> biases;
    Activation activation = Activation::tanh_fn;

    std::size_t layer_count() const { return weights.size(); }
    std::size_t input_dim() const { return dims.front(); }
    std::size_t class_count() const { return dims.back(); }
};

struct ForwardTrace {
    std::vector<double> input;
    std::vector<std::vector<double>> pre;  // pre-activation per layer
    std::vector<std::vector<double>> act;  // post-activation per hidden layer
    std::vector<double> logits;            // == pre.back()
    std::vector<double> probs;             // softmax(logits)
};

inline std::vector<double> add(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

struct Gradients {
    std::vector<Matrix> d_weights;
    std::vector<std::vector<double>> d_biases;
    std::vector<double> d_input;
};

// the scalar whose gradient backward() computes
struct LossKind {
    enum class Kind { ce_true_label, log_prob_target } kind;
    std::size_t index; // y for ce, z for log-prob

    static LossKind ce_true_label(std::size_t y) { return {Kind::ce_true_label, y}; }
    static LossKind log_prob_target(std::size_t z) { return {Kind::log_prob_target, z}; }
};

inline ForwardTrace forward(const MlpModel& model, const std::vector<double>& x) {
    if (x.size() != model.input_dim())
        throw validation_error("forward: input dimension mismatch");
    ForwardTrace t;
    t.input = x;
    const std::size_t layers = model.layer_count();
    t.pre.resize(layers);
    t.act.resize(layers > 0 ? layers - 1 : 0);
    const std::vector<double>* in = &t.input;
    for (std::size_t l = 0; l < layers; ++l) {
        const Matrix& w = model.weights[l];
        std::vector<double> z = model.biases[l];
        for (std::size_t i = 0; i < w.rows; ++i) {
            const double xi = (*in)[i];
            for (std::size_t j = 0; j < w.cols; ++j) z[j] += xi * w(i, j);
        }
        t.pre[l] = std::move(z);
        if (l + 1 < layers) {
            t.act[l] = t.pre[l];
            for (double& v : t.act[l])
                v = model.activation == Activation::tanh_fn ? std::tanh(v)
                                                            : (v > 0.0 ? v : 0.0);
            in = &t.act[l];
        }
    }
    t.logits = t.pre.back();
    t.probs = softmax(t.logits);
    return t;
}

inline double cross_entropy(const ForwardTrace& trace, std::size_t y) {
    if (y >= trace.probs.size())
        throw validation_error("cross_entropy: label out of range");
    return -std::log(std::max(trace.probs[y], 1e-300));
}

// argmax with lowest-index tie-break; shared by attack rejection and metrics
inline std::size_t argmax_class(const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

inline std::size_t predict(const MlpModel& model, const std::vector<double>& x) {
    return argmax_class(forward(model, x).logits);
}

// Backprop from an arbitrary logit-space gradient. The two public loss kinds
// reduce to:   d(CE)/dlogit = p - e_y      d(log p_z)/dlogit = e_z - p
inline Gradients backward_from_dlogits(const MlpModel& model, const ForwardTrace& trace,
                                       std::vector<double> d) {
    const std::size_t layers = model.layer_count();
    Gradients g;
    g.d_weights.resize(layers);
    g.d_biases.resize(layers);
    for (std::size_t li = layers; li-- > 0;) {
        const Matrix& w = model.weights[li];
        const std::vector<double>& in = li == 0 ? trace.input : trace.act[li - 1];
        g.d_weights[li] = Matrix(w.rows, w.cols);
        for (std::size_t i = 0; i < w.rows; ++i)
            for (std::size_t j = 0; j < w.cols; ++j)
                g.d_weights[li](i, j) = in[i] * d[j];
        g.d_biases[li] = d;
        std::vector<double> d_prev(w.rows, 0.0);
        for (std::size_t i = 0; i < w.rows; ++i)
            for (std::size_t j = 0; j < w.cols; ++j)
                d_prev[i] += w(i, j) * d[j];
        if (li > 0) {
            const std::vector<double>& a = trace.act[li - 1];
            const std::vector<double>& z = trace.pre[li - 1];
            for (std::size_t i = 0; i < d_prev.size(); ++i)
                d_prev[i] *= model.activation == Activation::tanh_fn
                                 ? 1.0 - a[i] * a[i]
                                 : (z[i] > 0.0 ? 1.0 : 0.0);
        }
        d = std::move(d_prev);
    }
    g.d_input = std::move(d);
    return g;
}

inline Gradients backward(const MlpModel& model, const ForwardTrace& trace, LossKind kind) {
    std::vector<double> d(trace.probs.size());
    if (kind.kind == LossKind::Kind::ce_true_label) {
        d = trace.probs;
        d[kind.index] -= 1.0;
    } else {
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = -trace.probs[j];
        d[kind.index] += 1.0;
    }
    return backward_from_dlogits(model, trace, std::move(d));
}

inline Gradients zero_gradients(const MlpModel& model) {
    Gradients g;
    for (const Matrix& w : model.weights) g.d_weights.emplace_back(w.rows, w.cols);
    for (const auto& b : model.biases) g.d_biases.emplace_back(b.size(), 0.0);
    g.d_input.assign(model.input_dim(), 0.0);
    return g;
}

// g_total += scale * g  (parameter part only)
inline void accumulate(Gradients& total, const Gradients& g, double scale) {
    for (std::size_t l = 0; l < total.d_weights.size(); ++l) {
        for (std::size_t i = 0; i < total.d_weights[l].data.size(); ++i)
            total.d_weights[l].data[i] += scale * g.d_weights[l].data[i];
        for (std::size_t i = 0; i < total.d_biases[l].size(); ++i)
            total.d_biases[l][i] += scale * g.d_biases[l][i];
    }
}

// v <- momentum*v + g ; theta <- theta - lr*v
inline MlpModel sgd_step(const MlpModel& model, const Gradients& grads, double lr,
                         double momentum, Gradients& velocity) {
    if (lr < 0.0 || momentum < 0.0 || momentum >= 1.0)
        throw validation_error("sgd_step: need lr >= 0 and momentum in [0,1)");
    if (grads.d_weights.size() != model.layer_count())
        throw validation_error("sgd_step: gradient shape mismatch");
    MlpModel out = model;
    for (std::size_t l = 0; l < out.weights.size(); ++l) {
        if (grads.d_weights[l].rows != out.weights[l].rows ||
            grads.d_weights[l].cols != out.weights[l].cols)
            throw validation_error("sgd_step: gradient shape mismatch");
        for (std::size_t i = 0; i < out.weights[l].data.size(); ++i) {
            double& v = velocity.d_weights[l].data[i];
            v = momentum * v + grads.d_weights[l].data[i];
            out.weights[l].data[i] -= lr * v;
        }
        for (std::size_t i = 0; i < out.biases[l].size(); ++i) {
            double& v = velocity.d_biases[l][i];
            v = momentum * v + grads.d_biases[l][i];
            out.biases[l][i] -= lr * v;
        }
    }
    return out;
}

inline MlpModel glorot_init(Rng& rng, const std::vector<std::size_t>& dims,
                            Activation activation = Activation::tanh_fn) {
    if (dims.size() < 2)
        throw validation_error("glorot_init: need at least input and output dims");
    MlpModel m;
    m.dims = dims;
    m.activation = activation;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        const double bound = std::sqrt(6.0 / static_cast<double>(dims[l] + dims[l + 1]));
        Matrix w(dims[l], dims[l + 1]);
        for (double& v : w.data) v = (2.0 * rng.uniform() - 1.0) * bound;
        m.weights.push_back(std::move(w));
        m.biases.emplace_back(dims[l + 1], 0.0);
    }
    return m;
}

// ---- checkpoint format: JSON, f64 round-trip exact ----

inline nlohmann::json checkpoint_to_json(const MlpModel& model, std::uint64_t seed,
                                         std::size_t epoch) {
    nlohmann::json j;
    j["dims"] = model.dims;
    j["activation"] = activation_name(model.activation);
    j["weights"] = nlohmann::json::array();
    for (const Matrix& w : model.weights) j["weights"].push_back(w.data);
    j["biases"] = model.biases;
    j["seed"] = seed;
    j["epoch"] = epoch;
    return j;
}

inline MlpModel checkpoint_from_json(const nlohmann::json& j) {
    MlpModel m;
    try {
        m.dims = j.at("dims").get<std::vector<std::size_t>>();
        m.activation = activation_from_name(j.at("activation").get<std::string>());
        m.biases = j.at("biases").get<std::vector<std::vector<double>>>();
        const auto& jw = j.at("weights");
        for (std::size_t l = 0; l + 1 < m.dims.size(); ++l) {
            Matrix w(m.dims[l], m.dims[l + 1]);
            w.data = jw.at(l).get<std::vector<double>>();
            if (w.data.size() != w.rows * w.cols)
                throw io_error("checkpoint: weight size disagrees with dims");
            m.weights.push_back(std::move(w));
        }
        if (m.biases.size() != m.weights.size())
            throw io_error("checkpoint: bias count disagrees with dims");
        for (std::size_t l = 0; l < m.biases.size(); ++l)
            if (m.biases[l].size() != m.dims[l + 1])
                throw io_error("checkpoint: bias size disagrees with dims");
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("checkpoint: malformed JSON: ") + e.what());
    }
    return m;
}

inline void save_checkpoint(const MlpModel& model, const std::string& path,
                            std::uint64_t seed = 0, std::size_t epoch = 0) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write checkpoint '" + path + "'");
    out << checkpoint_to_json(model, seed, epoch).dump(2) << "\n";
}

inline MlpModel load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot read checkpoint '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("checkpoint: parse failure: ") + e.what());
    }
    return checkpoint_from_json(j);
}

} // namespace csada
