// Acceptance gate: eight end-to-end checks, one [PASS]/[FAIL] line each.
// Run with no arguments for the full gate, or with a single criterion number.
// Tolerances are pinned here, next to the checks that use them.

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "csada/csada.hpp"

using namespace csada;

namespace {

// ---- pinned tolerances ----
constexpr double kCosineTol = 1e-8;        // criterion 3
constexpr double kEnumerationTol = 1e-10;  // criterion 4
constexpr double kGradRelTol = 1e-5;       // criterion 5
constexpr double kMetricTol = 1e-12;       // criterion 8
constexpr double kAccuracyBand = 0.02;     // criterion 1: baseline accuracy band

void report(int n, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << detail << "\n";
}

std::string fmt(double v, int prec = 4) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(prec) << v;
    return ss.str();
}

double train_accuracy(const MlpModel& m, const LabeledDataset& ds) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < ds.n(); ++i)
        if (predict(m, ds.row(i)) == ds.labels[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(ds.n());
}

MlpModel fresh_model(std::uint64_t init_seed) {
    Rng rng(init_seed, 2);
    return glorot_init(rng, {2, 50, 3});
}

// shared by criteria 1 and 7: a baseline caught at an epoch where it fits the
// training set perfectly yet still commits at least one costly green->blue
// test error — the window before further descent parks the boundary mid-gap
struct ToyBaseline {
    LabeledDataset train, test;
    MlpModel model;
    std::size_t epochs = 0;
    std::size_t criticals = 0;
    double accuracy = 0.0;
    std::uint64_t data_seed = 0, init_seed = 0;
    bool found = false;
};

const ToyBaseline& toy_baseline() {
    static const ToyBaseline cached = [] {
        ToyBaseline out;
        TrainConfig cfg;
        cfg.epochs = 1;
        cfg.batch = 0;
        cfg.lr = 0.01;
        cfg.natural_ceiling = 1e9;
        for (std::uint64_t ds = 1; ds <= 20 && !out.found; ++ds) {
            auto [train, test] = make_toy(ToySpec::defaults(ds));
            for (std::uint64_t ts = 1; ts <= 10 && !out.found; ++ts) {
                MlpModel m = fresh_model(ts);
                for (std::size_t e = 1; e <= 60; ++e) {
                    m = train_baseline(m, train, cfg).model;
                    if (train_accuracy(m, train) != 1.0) continue;
                    const std::size_t crit =
                        critical_error_count(m, test, {kToyGreen, kToyBlue});
                    if (crit == 0) continue;
                    out.train = train;
                    out.test = test;
                    out.model = m;
                    out.epochs = e;
                    out.criticals = crit;
                    out.accuracy = evaluate(m, test, toy_cost_matrix()).accuracy;
                    out.data_seed = ds;
                    out.init_seed = ts;
                    out.found = true;
                    break;
                }
            }
        }
        return out;
    }();
    return cached;
}

// ---------------------------------------------------------------- criterion 1
bool criterion_1() {
    const ToyBaseline& base = toy_baseline();
    if (!base.found) {
        report(1, false, "no perfect-train baseline with a green->blue test error "
                         "found in the seed hunt (data seeds 1..20, init seeds 1..10)");
        return false;
    }
    TrainConfig cfg;
    cfg.epochs = 100;
    cfg.batch = 32;
    cfg.lambda = 50.0;
    cfg.lr = 2e-5;
    cfg.natural_ceiling = 10.0; // the early-stopped baseline is far from converged
    // attack defaults are the reproduction config: epsilon 1.5, 5 steps, eta2 0.05

    std::size_t clean = 0;
    double worst_gap = 0.0;
    for (std::uint64_t r = 1; r <= 5; ++r) {
        cfg.seed = r;
        const TrainResult res =
            train_csada_stochastic(base.model, base.train, toy_cost_matrix(), cfg);
        const std::size_t crit =
            critical_error_count(res.model, base.test, {kToyGreen, kToyBlue});
        const double acc = evaluate(res.model, base.test, toy_cost_matrix()).accuracy;
        const double gap = std::abs(acc - base.accuracy);
        worst_gap = std::max(worst_gap, gap);
        if (crit == 0 && gap <= kAccuracyBand) ++clean;
    }
    const bool ok = clean >= 4;
    report(1, ok,
           "baseline 100% train at epoch " + std::to_string(base.epochs) + " (data seed " +
               std::to_string(base.data_seed) + ", init seed " +
               std::to_string(base.init_seed) + ") with " + std::to_string(base.criticals) +
               " green->blue test errors, accuracy " + fmt(base.accuracy) + "; " +
               std::to_string(clean) + "/5 replicates reach 0 critical errors within " +
               fmt(kAccuracyBand, 2) + " accuracy (worst gap " + fmt(worst_gap) + ")");
    return ok;
}

// ---------------------------------------------------------------- criterion 2
ToySpec overlap_spec(std::uint64_t seed) {
    ToySpec spec = ToySpec::defaults(seed);
    spec.classes[kToyGreen].mean = {3.5, -6.0};
    spec.classes[kToyBlue].mean = {-3.5, -6.0};
    return spec;
}

bool criterion_2() {
    // hunt: an interpolating checkpoint (train loss < 1e-3) that still makes
    // at least one green->blue test error
    LabeledDataset train, test;
    MlpModel checkpoint;
    std::size_t crit0 = 0;
    bool found = false;
    TrainConfig interp;
    interp.epochs = 1500;
    interp.batch = 0;
    interp.lr = 0.05;
    interp.momentum = 0.9;
    interp.natural_ceiling = 1e9;
    for (std::uint64_t ds = 1; ds <= 30 && !found; ++ds) {
        auto [tr, te] = make_toy(overlap_spec(ds));
        for (std::uint64_t ts = 1; ts <= 3 && !found; ++ts) {
            const TrainResult res = train_baseline(fresh_model(ts), tr, interp);
            if (res.log.records.back().report.natural >= 1e-3) continue;
            const std::size_t crit = critical_error_count(res.model, te, {kToyGreen, kToyBlue});
            if (crit == 0) continue;
            train = tr;
            test = te;
            checkpoint = res.model;
            crit0 = crit;
            found = true;
        }
    }
    if (!found) {
        report(2, false, "no interpolating checkpoint with a green->blue test error found "
                         "(overlap data seeds 1..30, init seeds 1..3)");
        return false;
    }

    // same refinement budget for both arms: 300 epochs at lr 5e-4
    TrainConfig pen_cfg;
    pen_cfg.epochs = 300;
    pen_cfg.batch = 32;
    pen_cfg.lr = 5e-4;
    pen_cfg.natural_ceiling = 1e9;
    std::size_t frozen = 0;
    for (std::uint64_t r = 1; r <= 5; ++r) {
        pen_cfg.seed = r;
        const TrainResult res =
            train_penalty(checkpoint, train, PenaltyPair{kToyGreen, kToyBlue}, pen_cfg);
        if (critical_error_count(res.model, test, {kToyGreen, kToyBlue}) == crit0) ++frozen;
    }

    TrainConfig csada_cfg;
    csada_cfg.epochs = 300;
    csada_cfg.batch = 0;
    csada_cfg.lr = 5e-4;
    csada_cfg.lambda = 5.0;
    csada_cfg.attack.epsilon = 2.0;
    csada_cfg.attack.steps = 10;
    csada_cfg.attack.eta2 = 0.3;
    csada_cfg.natural_ceiling = 1e9;
    csada_cfg.seed = 1;
    const TrainResult moved =
        train_csada_full(checkpoint, train, toy_cost_matrix(), csada_cfg);
    const std::size_t crit_csada =
        critical_error_count(moved.model, test, {kToyGreen, kToyBlue});

    const bool ok = frozen >= 4 && crit_csada == 0;
    report(2, ok,
           "interpolating checkpoint holds " + std::to_string(crit0) +
               " critical test errors; the pure penalty leaves the count unchanged in " +
               std::to_string(frozen) + "/5 runs of the same budget, while the "
               "attack-augmented run ends at " +
               std::to_string(crit_csada) + " critical errors");
    return ok;
}

// ---------------------------------------------------------------- criterion 3
bool criterion_3() {
    std::size_t colinear = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        Rng rng(seed, 0);
        const MlpModel m = glorot_init(rng, {3, 6, 2});
        const std::vector<double> x{rng.normal(), rng.normal(), rng.normal()};
        const std::size_t y = rng.below(2);
        const std::size_t z = 1 - y;
        const ForwardTrace t = forward(m, x);
        const auto g_ce = backward(m, t, LossKind::ce_true_label(y)).d_input;
        // grad of p_z is p_z * grad of log p_z: a positive multiple, same direction
        const auto g_pz = backward(m, t, LossKind::log_prob_target(z)).d_input;
        double dot = 0.0, na = 0.0, nb = 0.0;
        for (std::size_t i = 0; i < g_ce.size(); ++i) {
            dot += g_ce[i] * g_pz[i];
            na += g_ce[i] * g_ce[i];
            nb += g_pz[i] * g_pz[i];
        }
        const double cosine = dot / std::sqrt(na * nb);
        worst = std::max(worst, std::abs(cosine - 1.0));
        if (std::abs(cosine - 1.0) <= kCosineTol) ++colinear;
    }

    // three-class spoiler: logits (3d, 2d, -10d) as functions of a scalar input
    MlpModel spoiler;
    spoiler.dims = {1, 3};
    spoiler.weights = {Matrix{{3.0, 2.0, -10.0}}};
    spoiler.biases = {std::vector<double>(3, 0.0)};
    const ForwardTrace t0 = forward(spoiler, {0.0});
    const double d_ce = backward(spoiler, t0, LossKind::ce_true_label(1)).d_input[0];
    const double d_pz = backward(spoiler, t0, LossKind::log_prob_target(0)).d_input[0];
    const bool signs_disagree = (d_ce < 0.0) != (d_pz < 0.0);

    const bool ok = colinear == 100 && signs_disagree;
    report(3, ok,
           "binary input gradients colinear in " + std::to_string(colinear) +
               "/100 cases (worst |cos-1| " + fmt(worst, 12) +
               "); three-class ascent directions " +
               (signs_disagree ? "disagree in sign as required" : "FAILED to disagree"));
    return ok;
}

// ---------------------------------------------------------------- criterion 4
bool criterion_4() {
    Rng mrng(8, 0);
    MlpModel m = glorot_init(mrng, {2, 4, 3});
    for (auto& b : m.biases)
        for (double& v : b) v = 0.1 * mrng.normal();

    LabeledDataset ds; // frozen 4-example, 3-class instance
    ds.class_names = {"c0", "c1", "c2"};
    ds.features = Matrix{{0.4, -1.1}, {1.7, 0.3}, {-0.6, 0.9}, {0.1, 2.2}};
    ds.labels = {0, 1, 2, 0};

    CostMatrix cm = CostMatrix::zeros(3);
    cm.c(0, 1) = 1.0;
    cm.c(0, 2) = 2.0;
    cm.c(1, 2) = 3.0;
    cm.c(2, 0) = 0.5;
    const NormalizedWeights w = normalize(cm, 1.0);

    DeltaMap deltas;
    Rng drng(9, 2);
    for (std::size_t i = 0; i < ds.n(); ++i)
        for (std::size_t z = 0; z < 3; ++z)
            if (z != ds.labels[i] && w.w(ds.labels[i], z) > 0.0)
                deltas[{i, z}] = {0.3 * drng.normal(), 0.3 * drng.normal()};

    const double lambda = 1.3;
    Gradients expected = augmented_grad(m, ds, deltas, w, lambda);
    // non-members of a drawn pair contribute their clean loss to the penalty
    // slot, so the estimator also carries lambda * (1 - q_i) natural terms
    const double inv = 1.0 / static_cast<double>(ds.n());
    for (std::size_t i = 0; i < ds.n(); ++i) {
        double q = 0.0;
        for (std::size_t z = 0; z < 3; ++z) q += w.w(ds.labels[i], z);
        const Gradients gi =
            backward(m, forward(m, ds.row(i)), LossKind::ce_true_label(ds.labels[i]));
        accumulate(expected, gi, lambda * (1.0 - q) * inv);
    }

    Gradients averaged = zero_gradients(m);
    for (std::size_t y = 0; y < 3; ++y)
        for (std::size_t z = 0; z < 3; ++z) {
            if (w.w(y, z) <= 0.0) continue;
            std::vector<std::vector<double>> per_row(ds.n());
            for (std::size_t i = 0; i < ds.n(); ++i)
                per_row[i] = ds.labels[i] == y ? deltas.at({i, z})
                                               : std::vector<double>{0.0, 0.0};
            accumulate(averaged, stochastic_grad(m, ds, {y, z}, per_row, lambda), w.w(y, z));
        }

    double worst = 0.0;
    for (std::size_t l = 0; l < m.layer_count(); ++l) {
        for (std::size_t i = 0; i < expected.d_weights[l].data.size(); ++i)
            worst = std::max(worst, std::abs(averaged.d_weights[l].data[i] -
                                             expected.d_weights[l].data[i]));
        for (std::size_t i = 0; i < expected.d_biases[l].size(); ++i)
            worst = std::max(worst,
                             std::abs(averaged.d_biases[l][i] - expected.d_biases[l][i]));
    }
    const bool ok = worst <= kEnumerationTol;
    report(4, ok,
           "pair-weighted enumeration of the stochastic gradient matches the full "
           "augmented gradient elementwise (worst |diff| " +
               fmt(worst, 14) + ", tolerance " + fmt(kEnumerationTol, 12) + ")");
    return ok;
}

// ---------------------------------------------------------------- criterion 5
struct FdStats {
    std::size_t checks = 0, failures = 0;
    double worst = 0.0;

    void add(double fd, double an) {
        const double rel = std::abs(fd - an) / std::max({1.0, std::abs(fd), std::abs(an)});
        ++checks;
        worst = std::max(worst, rel);
        if (rel > kGradRelTol) ++failures;
    }
};

template <typename LossFn>
void fd_params(const MlpModel& m, LossFn&& loss_of, const Gradients& analytic, FdStats& st) {
    const double h = 1e-5;
    for (std::size_t l = 0; l < m.layer_count(); ++l) {
        for (std::size_t i = 0; i < m.weights[l].data.size(); ++i) {
            MlpModel up = m, dn = m;
            up.weights[l].data[i] += h;
            dn.weights[l].data[i] -= h;
            st.add((loss_of(up) - loss_of(dn)) / (2 * h), analytic.d_weights[l].data[i]);
        }
        for (std::size_t i = 0; i < m.biases[l].size(); ++i) {
            MlpModel up = m, dn = m;
            up.biases[l][i] += h;
            dn.biases[l][i] -= h;
            st.add((loss_of(up) - loss_of(dn)) / (2 * h), analytic.d_biases[l][i]);
        }
    }
}

bool criterion_5() {
    FdStats st;
    const double h = 1e-5;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng rng(seed, 0);
        MlpModel m = glorot_init(rng, {2, 5, 3},
                                 seed % 2 ? Activation::tanh_fn : Activation::relu);
        for (auto& b : m.biases)
            for (double& v : b) v = 0.1 * rng.normal();
        const std::vector<double> x{rng.normal(), rng.normal()};
        const std::size_t y = rng.below(3);
        const std::size_t z = (y + 1 + rng.below(2)) % 3;

        // per-example gradients, parameters AND input, both loss kinds
        for (const LossKind kind : {LossKind::ce_true_label(y), LossKind::log_prob_target(z)}) {
            auto loss_at = [&](const MlpModel& mm, const std::vector<double>& xx) {
                const ForwardTrace t = forward(mm, xx);
                return kind.kind == LossKind::Kind::ce_true_label
                           ? cross_entropy(t, kind.index)
                           : std::log(std::max(t.probs[kind.index], 1e-300));
            };
            const Gradients g = backward(m, forward(m, x), kind);
            fd_params(m, [&](const MlpModel& mm) { return loss_at(mm, x); }, g, st);
            for (std::size_t i = 0; i < x.size(); ++i) {
                std::vector<double> up = x, dn = x;
                up[i] += h;
                dn[i] -= h;
                st.add((loss_at(m, up) - loss_at(m, dn)) / (2 * h), g.d_input[i]);
            }
        }
    }

    // dataset-level objectives: 20 instances each
    CostMatrix cm = CostMatrix::zeros(3);
    cm.c(0, 1) = 1.0;
    cm.c(0, 2) = 2.0;
    cm.c(1, 2) = 3.0;
    cm.c(2, 0) = 0.5;
    const NormalizedWeights w = normalize(cm, 1.0);
    for (std::uint64_t seed = 21; seed <= 40; ++seed) {
        Rng rng(seed, 0);
        MlpModel m = glorot_init(rng, {2, 4, 3});
        LabeledDataset ds;
        ds.class_names = {"c0", "c1", "c2"};
        ds.features = Matrix(5, 2);
        for (std::size_t i = 0; i < 5; ++i) {
            ds.features(i, 0) = rng.normal();
            ds.features(i, 1) = rng.normal();
            ds.labels.push_back(i % 3);
        }
        DeltaMap deltas;
        for (std::size_t i = 0; i < ds.n(); ++i)
            for (std::size_t z = 0; z < 3; ++z)
                if (z != ds.labels[i] && w.w(ds.labels[i], z) > 0.0)
                    deltas[{i, z}] = {0.3 * rng.normal(), 0.3 * rng.normal()};
        const double lambda = 0.9;

        fd_params(
            m, [&](const MlpModel& mm) { return augmented_loss(mm, ds, deltas, w, lambda).total; },
            augmented_grad(m, ds, deltas, w, lambda), st);

        std::vector<std::vector<double>> per_row(ds.n());
        for (std::size_t i = 0; i < ds.n(); ++i)
            per_row[i] = ds.labels[i] == 0 && deltas.count({i, 2})
                             ? deltas.at({i, 2})
                             : std::vector<double>{0.0, 0.0};
        fd_params(
            m,
            [&](const MlpModel& mm) {
                return stochastic_loss(mm, ds, {0, 2}, per_row, lambda).total;
            },
            stochastic_grad(m, ds, {0, 2}, per_row, lambda), st);

        fd_params(m, [&](const MlpModel& mm) { return extreme_penalty_loss(mm, ds, {0, 2}); },
                  extreme_penalty_grad(m, ds, {0, 2}), st);

        fd_params(m, [&](const MlpModel& mm) { return adjusted_penalty_loss(mm, ds, cm, 1.5); },
                  adjusted_penalty_grad(m, ds, cm, 1.5), st);
    }

    const bool ok = st.failures == 0;
    report(5, ok,
           std::to_string(st.checks) + " central-difference gradient checks across "
           "per-example and dataset objectives, " +
               std::to_string(st.failures) + " above relative error " + fmt(kGradRelTol, 7) +
               " (worst " + fmt(st.worst, 10) + ")");
    return ok;
}

// ---------------------------------------------------------------- criterion 6
bool criterion_6() {
    auto [train, test] = make_toy(ToySpec::defaults(6));
    std::vector<MlpModel> models;
    models.push_back(fresh_model(31)); // untrained
    TrainConfig warm;
    warm.epochs = 20;
    warm.batch = 0;
    warm.lr = 0.02;
    warm.natural_ceiling = 1e9;
    models.push_back(train_baseline(fresh_model(31), train, warm).model); // partly trained

    AttackConfig cfg; // the reproduction config: epsilon 1.5, 5 steps, eta2 0.05
    std::size_t attacks = 0, bound_violations = 0, rejection_violations = 0,
                determinism_violations = 0;
    for (const MlpModel& m : models) {
        for (std::size_t i = 0; i < train.n(); ++i) {
            const std::size_t y = train.labels[i];
            for (std::size_t z = 0; z < 3; ++z) {
                if (z == y) continue;
                const std::vector<double> x = train.row(i);
                const AttackResult r = targeted_attack(m, x, y, z, cfg);
                ++attacks;
                for (const auto& d : r.trajectory)
                    for (double v : d)
                        if (std::abs(v) > cfg.epsilon + 1e-12) ++bound_violations;
                if (r.delta != r.trajectory.back()) ++rejection_violations;
                if (r.termination.kind == Termination::Kind::rejected) {
                    const std::size_t kept = predict(m, add(x, r.delta));
                    if (kept != y && kept != z) ++rejection_violations;
                    const auto cand = attack_step(m, x, r.delta, z, cfg);
                    const std::size_t refused = predict(m, add(x, cand));
                    if (refused == y || refused == z) ++rejection_violations;
                }
                const AttackResult again = targeted_attack(m, x, y, z, cfg);
                if (again.delta != r.delta || again.trajectory != r.trajectory ||
                    again.termination.kind != r.termination.kind)
                    ++determinism_violations;
            }
        }
    }
    const bool ok =
        bound_violations == 0 && rejection_violations == 0 && determinism_violations == 0;
    report(6, ok,
           std::to_string(attacks) + " attacks across the full synthetic corpus and two "
           "models: " +
               std::to_string(bound_violations) + " norm-bound, " +
               std::to_string(rejection_violations) + " rejection-soundness, " +
               std::to_string(determinism_violations) + " determinism violations");
    return ok;
}

// ---------------------------------------------------------------- criterion 7
bool criterion_7() {
    const ToyBaseline& base = toy_baseline();
    if (!base.found) {
        report(7, false, "no qualifying baseline (see criterion 1)");
        return false;
    }
    // seeded heavy-tailed costs where the green->blue cell dominates, so the
    // swept penalty weight has a visible lever on the weighted error
    CostMatrix cm;
    std::uint64_t cost_seed = 0;
    for (std::uint64_t s = 1; s <= 100; ++s) {
        Rng rng(s, 0);
        CostMatrix cand = random_cost_matrix(3, rng);
        double best = 0.0;
        for (std::size_t y = 0; y < 3; ++y)
            for (std::size_t z = 0; z < 3; ++z) best = std::max(best, cand.c(y, z));
        if (cand.c(kToyGreen, kToyBlue) == best) {
            cm = cand;
            cm.class_names = base.train.class_names;
            cost_seed = s;
            break;
        }
    }
    if (cost_seed == 0) {
        report(7, false, "no cost draw with a dominant green->blue cell in seeds 1..100");
        return false;
    }

    const std::vector<double> lambdas{0.0, 2.0, 10.0, 50.0, 250.0, 2500.0};
    std::vector<double> wers;
    TrainConfig cfg;
    cfg.epochs = 100;
    cfg.batch = 0;
    cfg.lr = 5e-5;
    cfg.seed = 1;
    cfg.natural_ceiling = 10.0;
    for (double lambda : lambdas) {
        cfg.lambda = lambda;
        const TrainResult res = train_csada_full(base.model, base.train, cm, cfg);
        wers.push_back(evaluate(res.model, base.test, cm).wer);
    }

    // lambda* must admit lambda_max >= 50 * lambda*: with the grid topping out
    // at 2500 that means candidates 2, 10, and 50
    bool ok = false;
    double best_wer = wers[0];
    double best_lambda = 0.0;
    for (std::size_t i = 1; i <= 3; ++i) {
        if (wers[i] < wers[0] && wers.back() >= wers[i]) {
            if (!ok || wers[i] < best_wer) {
                best_wer = wers[i];
                best_lambda = lambdas[i];
            }
            ok = true;
        }
    }
    std::ostringstream curve;
    curve << std::setprecision(4);
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        curve << (i ? ", " : "") << lambdas[i] << "->" << wers[i];
    report(7, ok,
           "cost seed " + std::to_string(cost_seed) + ", weighted error by lambda: " +
               curve.str() +
               (ok ? "; dips at lambda " + fmt(best_lambda, 0) + " and does not keep falling"
                   : "; no qualifying dip-and-rebound ordering"));
    return ok;
}

// ---------------------------------------------------------------- criterion 8
bool criterion_8() {
    auto [train, test] = make_toy(ToySpec::defaults(12));
    Rng rng(13, 0);
    const MlpModel m = glorot_init(rng, {2, 10, 3}); // random predictions are fine here

    CostMatrix ones = CostMatrix::zeros(3);
    ones.class_names = test.class_names;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j) ones.c(i, j) = 1.0;
    const EvalReport flat = evaluate(m, test, ones);
    const double id_gap = std::abs(flat.wer - (1.0 - flat.accuracy));

    Rng cost_rng(14, 0);
    CostMatrix heavy = random_cost_matrix(3, cost_rng);
    heavy.class_names = test.class_names;
    const EvalReport rich = evaluate(m, test, heavy);
    const double path_gap = std::abs(rich.wer - wer_from_counts(rich, heavy));

    const bool ok = id_gap <= kMetricTol && path_gap <= kMetricTol;
    report(8, ok,
           "all-ones-cost identity |wer - (1 - accuracy)| = " + fmt(id_gap, 16) +
               "; two weighted-error paths differ by " + fmt(path_gap, 16) +
               " (tolerance " + fmt(kMetricTol, 14) + ")");
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    bool (*criteria[])() = {criterion_1, criterion_2, criterion_3, criterion_4,
                            criterion_5, criterion_6, criterion_7, criterion_8};
    int failures = 0;
    if (argc > 1) {
        const int n = std::atoi(argv[1]);
        if (n < 1 || n > 8) {
            std::cerr << "usage: acceptance [1..8]\n";
            return 2;
        }
        if (!criteria[n - 1]()) ++failures;
    } else {
        for (auto* c : criteria)
            if (!c()) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
