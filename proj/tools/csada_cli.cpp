// Experiment runner. Subcommands: gen-toy, train, eval, export, sweep-lambda.
// One JSON config per experiment; --set key.path=value overrides single fields.
// Exit codes: 0 ok, 1 validation, 2 I/O, 3 numeric failure.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "csada/csada.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json default_config() {
    return json{
        {"dataset", {{"toy", {{"seed", 42}}}}},
        {"model", {{"dims", {2, 50, 3}}, {"activation", "tanh"}}},
        {"cost", {{"toy", true}}},
        {"train",
         {{"method", "baseline"},
          {"epochs", 40},
          {"batch", 0},
          {"lambda", 1.0},
          {"tau", 1.0},
          {"lr", 0.02},
          {"momentum", 0.0},
          {"seed", 1},
          {"eval_every", 0},
          {"natural_ceiling", 0.1},
          {"alpha", 1.0},
          {"attack", {{"epsilon", 1.5}, {"steps", 5}, {"eta2", 0.05}}}}},
        {"output", {{"dir", "out"}, {"replicates", 1}}},
    };
}

json load_config(const std::string& path, const std::vector<std::string>& sets) {
    json cfg = default_config();
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw csada::io_error("cannot read config '" + path + "'");
        json user;
        try {
            in >> user;
        } catch (const json::exception& e) {
            throw csada::io_error("config '" + path + "': " + e.what());
        }
        cfg.merge_patch(user);
    }
    for (const std::string& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw csada::validation_error("--set expects key.path=value, got '" + s + "'");
        std::string key = "/" + s.substr(0, eq);
        for (auto& ch : key)
            if (ch == '.') ch = '/';
        const std::string raw = s.substr(eq + 1);
        json value;
        try {
            value = json::parse(raw);
        } catch (const json::exception&) {
            value = raw; // not valid JSON: treat as a string
        }
        cfg[json::json_pointer(key)] = value;
    }
    return cfg;
}

csada::ToySpec toy_spec_from_json(const json& jtoy) {
    csada::ToySpec spec = csada::ToySpec::defaults();
    if (jtoy.contains("seed")) spec.seed = jtoy.at("seed").get<std::uint64_t>();
    if (jtoy.contains("classes")) {
        spec.classes.clear();
        for (const auto& jc : jtoy.at("classes")) {
            csada::ToyClassSpec c;
            c.name = jc.at("name").get<std::string>();
            c.mean = jc.at("mean").get<std::vector<double>>();
            const auto cov = jc.at("cov").get<std::vector<std::vector<double>>>();
            if (cov.size() != 2 || cov[0].size() != 2 || cov[1].size() != 2)
                throw csada::validation_error("dataset.toy: cov must be 2x2");
            c.cov = csada::Matrix{{cov[0][0], cov[0][1]}, {cov[1][0], cov[1][1]}};
            c.n_train = jc.at("n_train").get<std::size_t>();
            c.n_test = jc.at("n_test").get<std::size_t>();
            spec.classes.push_back(std::move(c));
        }
    }
    return spec;
}

struct LoadedData {
    csada::LabeledDataset train;
    std::optional<csada::LabeledDataset> test;
};

LoadedData load_dataset(const json& jd) {
    LoadedData out;
    if (jd.contains("toy")) {
        auto [tr, te] = csada::make_toy(toy_spec_from_json(jd.at("toy")));
        out.train = std::move(tr);
        out.test = std::move(te);
    } else if (jd.contains("csv")) {
        const auto& jc = jd.at("csv");
        const std::string label = jc.value("label", "label");
        out.train = csada::load_csv(jc.at("train").get<std::string>(), label);
        if (jc.contains("test"))
            out.test = csada::load_csv(jc.at("test").get<std::string>(), label);
    } else if (jd.contains("mnist")) {
        const auto& jm = jd.at("mnist");
        out.train = csada::load_mnist_idx(jm.at("images").get<std::string>(),
                                          jm.at("labels").get<std::string>(),
                                          jm.value("cap", std::size_t{0}));
        if (jm.contains("test_images"))
            out.test = csada::load_mnist_idx(jm.at("test_images").get<std::string>(),
                                             jm.at("test_labels").get<std::string>(),
                                             jm.value("test_cap", std::size_t{0}));
    } else {
        throw csada::validation_error("dataset: need exactly one of toy/csv/mnist");
    }
    if (out.test) out.test->role = csada::DatasetRole::test;
    return out;
}

csada::CostMatrix load_cost(const json& jc, const csada::LabeledDataset& ds) {
    csada::CostMatrix cm;
    if (jc.contains("csv")) {
        cm = csada::load_cost_csv(jc.at("csv").get<std::string>());
    } else if (jc.contains("matrix")) {
        const auto rows = jc.at("matrix").get<std::vector<std::vector<double>>>();
        cm.k = rows.size();
        cm.c = csada::Matrix(cm.k, cm.k);
        for (std::size_t i = 0; i < cm.k; ++i) {
            if (rows[i].size() != cm.k)
                throw csada::validation_error("cost.matrix must be square");
            for (std::size_t j = 0; j < cm.k; ++j) cm.c(i, j) = rows[i][j];
        }
        cm.class_names = jc.contains("names")
                             ? jc.at("names").get<std::vector<std::string>>()
                             : ds.class_names;
    } else if (jc.contains("pareto")) {
        csada::Rng rng(jc.at("pareto").at("seed").get<std::uint64_t>(), 0);
        cm = csada::random_cost_matrix(ds.class_count(), rng);
        cm.class_names = ds.class_names;
    } else { // default: the point-mass toy cost
        cm = csada::toy_cost_matrix();
    }
    cm.validate();
    if (cm.k != ds.class_count())
        throw csada::validation_error("cost: class count disagrees with dataset");
    if (cm.class_names != ds.class_names)
        throw csada::validation_error("cost: class names disagree with dataset order");
    return cm;
}

std::size_t class_index(const json& v, const csada::LabeledDataset& ds) {
    if (v.is_number_unsigned() || v.is_number_integer()) {
        const auto i = v.get<std::size_t>();
        if (i >= ds.class_count())
            throw csada::validation_error("train.pair: class index out of range");
        return i;
    }
    const auto name = v.get<std::string>();
    for (std::size_t i = 0; i < ds.class_count(); ++i)
        if (ds.class_names[i] == name) return i;
    throw csada::validation_error("train.pair: unknown class '" + name + "'");
}

csada::TrainConfig train_config_from_json(const json& jt) {
    csada::TrainConfig cfg;
    cfg.epochs = jt.value("epochs", std::size_t{40});
    cfg.batch = jt.value("batch", std::size_t{0});
    cfg.lambda = jt.value("lambda", 1.0);
    cfg.tau = jt.value("tau", 1.0);
    cfg.lr = jt.value("lr", 0.02);
    cfg.momentum = jt.value("momentum", 0.0);
    cfg.seed = jt.value("seed", std::uint64_t{1});
    cfg.eval_every = jt.value("eval_every", std::size_t{0});
    cfg.natural_ceiling = jt.value("natural_ceiling", 0.1);
    if (jt.contains("attack")) {
        const auto& ja = jt.at("attack");
        cfg.attack.epsilon = ja.value("epsilon", 1.5);
        cfg.attack.steps = ja.value("steps", std::size_t{5});
        cfg.attack.eta2 = ja.value("eta2", 0.05);
        if (ja.contains("clamp") && !ja.at("clamp").is_null()) {
            const auto box = ja.at("clamp").get<std::vector<double>>();
            if (box.size() != 2)
                throw csada::validation_error("train.attack.clamp must be [lo, hi]");
            cfg.attack.clamp = {box[0], box[1]};
        }
    }
    cfg.validate();
    return cfg;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw csada::io_error("cannot write '" + path.string() + "'");
    out << text;
}

void write_metadata(const fs::path& dir) {
    // timestamps live here, never in the deterministic artifacts
    const auto now = std::chrono::system_clock::now();
    json meta{{"finished_unix_ms",
               std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch())
                   .count()}};
    write_text(dir / "metadata.json", meta.dump(2) + "\n");
}

struct RunOutcome {
    csada::MlpModel model;
    std::optional<csada::EvalReport> eval;
};

// one replicate: train with the method named in cfg, write artifacts, eval on test
RunOutcome run_one(const json& cfg, std::uint64_t seed, const LoadedData& data,
                   const csada::CostMatrix& cm, const fs::path& run_dir) {
    const json& jt = cfg.at("train");
    const std::string method = jt.value("method", "baseline");
    csada::TrainConfig tc = train_config_from_json(jt);
    tc.seed = seed;

    csada::MlpModel model;
    if (cfg.at("model").contains("init_checkpoint") &&
        !cfg.at("model").at("init_checkpoint").is_null()) {
        model = csada::load_checkpoint(cfg.at("model").at("init_checkpoint").get<std::string>());
    } else {
        csada::Rng init_rng(seed, 2);
        model = csada::glorot_init(
            init_rng, cfg.at("model").at("dims").get<std::vector<std::size_t>>(),
            csada::activation_from_name(cfg.at("model").value("activation", "tanh")));
    }

    csada::EvalHook hook;
    if (data.test) {
        hook.data = &*data.test;
        hook.cost = &cm;
    }

    csada::TrainResult res;
    if (method == "baseline") {
        res = csada::train_baseline(model, data.train, tc, hook);
    } else if (method == "csada_full") {
        res = csada::train_csada_full(model, data.train, cm, tc, hook);
    } else if (method == "csada_stochastic") {
        res = csada::train_csada_stochastic(model, data.train, cm, tc, hook);
    } else if (method == "penalty_pair") {
        if (!jt.contains("pair"))
            throw csada::validation_error("train.pair required for method penalty_pair");
        csada::PenaltyPair pp{class_index(jt.at("pair").at(0), data.train),
                              class_index(jt.at("pair").at(1), data.train)};
        res = csada::train_penalty(model, data.train, pp, tc, hook);
    } else if (method == "penalty_ap") {
        csada::PenaltyMatrix pm{cm, jt.value("alpha", 1.0)};
        res = csada::train_penalty(model, data.train, pm, tc, hook);
    } else {
        throw csada::validation_error("train.method: unknown method '" + method + "'");
    }

    fs::create_directories(run_dir);
    json resolved = cfg;
    resolved["train"]["seed"] = seed;
    write_text(run_dir / "config.json", resolved.dump(2) + "\n");
    csada::save_checkpoint(res.model, (run_dir / "checkpoint.json").string(), seed, tc.epochs);
    res.log.checkpoint_path = (run_dir / "checkpoint.json").string();
    res.log.write_jsonl((run_dir / "trainlog.jsonl").string());

    RunOutcome out{std::move(res.model), std::nullopt};
    if (data.test) {
        out.eval = csada::evaluate(out.model, *data.test, cm);
        write_text(run_dir / "eval.json", csada::eval_to_json(*out.eval).dump(2) + "\n");
    }
    write_metadata(run_dir);
    return out;
}

struct Stats {
    double mean = 0.0, stddev = 0.0;
};

Stats stats_of(const std::vector<double>& v) {
    Stats s;
    if (v.empty()) return s;
    for (double x : v) s.mean += x;
    s.mean /= static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - s.mean) * (x - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    return s;
}

json summarize(const std::vector<csada::EvalReport>& reports, const csada::CostMatrix& cm) {
    json j;
    std::vector<double> wer, acc, top;
    // highest-cost pair doubles as the critical pair being tracked
    std::size_t by = 0, bz = 0;
    for (std::size_t y = 0; y < cm.k; ++y)
        for (std::size_t z = 0; z < cm.k; ++z)
            if (cm.c(y, z) > cm.c(by, bz)) by = y, bz = z;
    for (const auto& r : reports) {
        wer.push_back(r.wer);
        acc.push_back(r.accuracy);
        top.push_back(static_cast<double>(r.pair_counts[by][bz]));
    }
    const Stats sw = stats_of(wer), sa = stats_of(acc), st = stats_of(top);
    j["replicates"] = reports.size();
    j["wer"] = {{"mean", sw.mean}, {"stddev", sw.stddev}, {"values", wer}};
    j["accuracy"] = {{"mean", sa.mean}, {"stddev", sa.stddev}, {"values", acc}};
    j["top_pair_errors"] = {{"pair", {cm.class_names[by], cm.class_names[bz]}},
                            {"mean", st.mean},
                            {"stddev", st.stddev},
                            {"values", top}};
    return j;
}

int cmd_gen_toy(const json& cfg, bool force) {
    const csada::ToySpec spec = toy_spec_from_json(cfg.at("dataset").value("toy", json::object()));
    const fs::path dir = cfg.at("output").at("dir").get<std::string>();
    fs::create_directories(dir);
    const fs::path train_p = dir / "train.csv", test_p = dir / "test.csv",
                   cost_p = dir / "cost.csv";
    for (const fs::path& p : {train_p, test_p, cost_p})
        if (!force && fs::exists(p))
            throw csada::io_error("output '" + p.string() + "' exists (use --force)");
    auto [train, test] = csada::make_toy(spec);
    csada::save_csv(train, train_p.string());
    csada::save_csv(test, test_p.string());
    csada::CostMatrix cm = csada::CostMatrix::zeros(spec.classes.size());
    for (std::size_t i = 0; i < spec.classes.size(); ++i)
        cm.class_names[i] = spec.classes[i].name;
    if (cm.k == 3) cm.c(csada::kToyGreen, csada::kToyBlue) = 1.0;
    csada::save_cost_csv(cm, cost_p.string());
    std::cout << "wrote " << train_p.string() << " (" << train.n() << " rows), "
              << test_p.string() << " (" << test.n() << " rows), " << cost_p.string() << "\n";
    return 0;
}

int cmd_train(const json& cfg) {
    const LoadedData data = load_dataset(cfg.at("dataset"));
    const csada::CostMatrix cm = load_cost(cfg.at("cost"), data.train);
    const fs::path outdir = cfg.at("output").at("dir").get<std::string>();
    const auto replicates = cfg.at("output").value("replicates", std::size_t{1});
    const auto base_seed = cfg.at("train").value("seed", std::uint64_t{1});
    const std::string method = cfg.at("train").value("method", "baseline");

    std::vector<csada::EvalReport> reports;
    for (std::size_t r = 0; r < replicates; ++r) {
        const std::uint64_t seed = base_seed + r;
        const fs::path run_dir = outdir / ("s" + std::to_string(seed) + "-" + method);
        const RunOutcome out = run_one(cfg, seed, data, cm, run_dir);
        if (out.eval) {
            reports.push_back(*out.eval);
            std::cout << run_dir.string() << ": wer=" << out.eval->wer
                      << " accuracy=" << out.eval->accuracy << "\n";
        } else {
            std::cout << run_dir.string() << ": trained (no test set)\n";
        }
    }
    if (replicates > 1 && !reports.empty()) {
        fs::create_directories(outdir);
        write_text(outdir / "summary.json", summarize(reports, cm).dump(2) + "\n");
        std::cout << "summary: " << (outdir / "summary.json").string() << "\n";
    }
    return 0;
}

int cmd_eval(const std::string& checkpoint, const std::string& data_path,
             const std::string& cost_path, const std::string& out_path,
             const std::string& label_col) {
    const csada::MlpModel model = csada::load_checkpoint(checkpoint);
    const csada::LabeledDataset ds = csada::load_csv(data_path, label_col);
    const csada::CostMatrix cm = csada::load_cost_csv(cost_path);
    const csada::EvalReport report = csada::evaluate(model, ds, cm);
    const std::string text = csada::eval_to_json(report).dump(2) + "\n";
    if (out_path.empty() || out_path == "-")
        std::cout << text;
    else
        write_text(out_path, text);
    return 0;
}

int cmd_export_boundary(const std::string& checkpoint, const std::string& out_path,
                        std::size_t res, double x_lo, double x_hi, double y_lo, double y_hi) {
    const csada::MlpModel model = csada::load_checkpoint(checkpoint);
    csada::export_boundary_grid(model, x_lo, x_hi, y_lo, y_hi, res, out_path);
    std::cout << "wrote " << out_path << " (" << res * res << " rows)\n";
    return 0;
}

int cmd_export_trajectories(const std::string& checkpoint, const std::string& data_path,
                            const std::string& label_col, const std::string& pair_arg,
                            std::size_t n_points, std::uint64_t seed, const json& attack_json,
                            const std::string& out_path) {
    const csada::MlpModel model = csada::load_checkpoint(checkpoint);
    const csada::LabeledDataset ds = csada::load_csv(data_path, label_col);
    const auto comma = pair_arg.find(',');
    if (comma == std::string::npos)
        throw csada::validation_error("--pair expects 'true_class,target_class'");
    const std::size_t y = class_index(json(pair_arg.substr(0, comma)), ds);
    const std::size_t z = class_index(json(pair_arg.substr(comma + 1)), ds);

    csada::AttackConfig acfg;
    acfg.epsilon = attack_json.value("epsilon", 1.5);
    acfg.steps = attack_json.value("steps", std::size_t{5});
    acfg.eta2 = attack_json.value("eta2", 0.05);

    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < ds.n(); ++i)
        if (ds.labels[i] == y) members.push_back(i);
    if (members.empty())
        throw csada::validation_error("no examples of the requested true class");
    csada::Rng rng(seed, 0);
    rng.shuffle(members);
    if (members.size() > n_points) members.resize(n_points);

    std::vector<std::vector<double>> points;
    std::vector<csada::AttackResult> results;
    for (std::size_t i : members) {
        points.push_back(ds.row(i));
        results.push_back(csada::targeted_attack(model, points.back(), y, z, acfg));
    }
    csada::write_trajectory_csv(model, points, results, z, out_path);
    std::cout << "wrote " << out_path << " (" << results.size() << " trajectories)\n";
    return 0;
}

int cmd_sweep_lambda(const json& cfg, const std::vector<double>& lambdas) {
    if (lambdas.empty()) throw csada::validation_error("sweep: need at least one lambda");
    const LoadedData data = load_dataset(cfg.at("dataset"));
    const csada::CostMatrix cm = load_cost(cfg.at("cost"), data.train);
    if (!data.test)
        throw csada::validation_error("sweep: dataset must provide a test set");
    const fs::path outdir = cfg.at("output").at("dir").get<std::string>();
    const auto replicates = cfg.at("output").value("replicates", std::size_t{1});
    const auto base_seed = cfg.at("train").value("seed", std::uint64_t{1});
    const std::string method = cfg.at("train").value("method", "csada_full");
    fs::create_directories(outdir);

    const fs::path sweep_csv = outdir / "sweep.csv";
    std::set<std::string> done;
    if (fs::exists(sweep_csv)) { // resumable: keep rows already swept
        std::ifstream in(sweep_csv);
        std::string line;
        std::getline(in, line); // header
        while (std::getline(in, line)) {
            const auto cells = csada::split_csv_line(line);
            if (!cells.empty()) done.insert(cells[0]);
        }
    } else {
        write_text(sweep_csv,
                   "lambda,replicates,wer_mean,wer_stddev,accuracy_mean,accuracy_stddev\n");
    }

    std::ofstream out(sweep_csv, std::ios::app);
    if (!out) throw csada::io_error("cannot append to '" + sweep_csv.string() + "'");
    out.precision(17);
    for (double lambda : lambdas) {
        std::ostringstream key;
        key.precision(17);
        key << lambda;
        if (done.count(key.str())) {
            std::cout << "lambda=" << key.str() << ": already swept, skipping\n";
            continue;
        }
        json run_cfg = cfg;
        run_cfg["train"]["lambda"] = lambda;
        run_cfg["train"]["method"] = method;
        std::vector<double> wers, accs;
        for (std::size_t r = 0; r < replicates; ++r) {
            const std::uint64_t seed = base_seed + r;
            const fs::path run_dir =
                outdir / ("lambda-" + key.str()) / ("s" + std::to_string(seed) + "-" + method);
            const RunOutcome o = run_one(run_cfg, seed, data, cm, run_dir);
            wers.push_back(o.eval->wer);
            accs.push_back(o.eval->accuracy);
        }
        const Stats sw = stats_of(wers), sa = stats_of(accs);
        out << key.str() << "," << replicates << "," << sw.mean << "," << sw.stddev << ","
            << sa.mean << "," << sa.stddev << "\n";
        out.flush();
        std::cout << "lambda=" << key.str() << ": wer_mean=" << sw.mean << "\n";
    }
    std::cout << "sweep table: " << sweep_csv.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cost-sensitive classification laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;
    bool force = false;

    auto add_config_opts = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "experiment config (JSON)");
        sub->add_option("--set", sets, "override config fields: key.path=value");
    };

    CLI::App* gen = app.add_subcommand("gen-toy", "write the synthetic dataset + cost CSVs");
    add_config_opts(gen);
    gen->add_flag("--force", force, "overwrite existing outputs");

    CLI::App* train = app.add_subcommand("train", "train per config (with replicates)");
    add_config_opts(train);

    std::string checkpoint, data_path, cost_path, out_path = "-", label_col = "label";
    CLI::App* ev = app.add_subcommand("eval", "evaluate a checkpoint against data + costs");
    ev->add_option("--checkpoint", checkpoint)->required();
    ev->add_option("--data", data_path)->required();
    ev->add_option("--cost", cost_path)->required();
    ev->add_option("--out", out_path, "output JSON path ('-' = stdout)");
    ev->add_option("--label", label_col, "label column name");

    CLI::App* ex = app.add_subcommand("export", "export boundary grids or attack trajectories");
    ex->require_subcommand(1);
    std::size_t res = 200, n_points = 5;
    double x_lo = -12, x_hi = 12, y_lo = -12, y_hi = 12;
    CLI::App* exb = ex->add_subcommand("boundary", "prediction grid CSV");
    exb->add_option("--checkpoint", checkpoint)->required();
    exb->add_option("--out", out_path)->required();
    exb->add_option("--res", res, "grid resolution per axis");
    exb->add_option("--xmin", x_lo);
    exb->add_option("--xmax", x_hi);
    exb->add_option("--ymin", y_lo);
    exb->add_option("--ymax", y_hi);

    std::string pair_arg = "green,blue";
    std::uint64_t traj_seed = 0;
    double a_eps = 1.5, a_eta2 = 0.05;
    std::size_t a_steps = 5;
    CLI::App* ext = ex->add_subcommand("trajectories", "attack trajectory CSV");
    ext->add_option("--checkpoint", checkpoint)->required();
    ext->add_option("--data", data_path)->required();
    ext->add_option("--out", out_path)->required();
    ext->add_option("--pair", pair_arg, "true_class,target_class");
    ext->add_option("--points", n_points, "how many class members to attack");
    ext->add_option("--seed", traj_seed, "sampling seed");
    ext->add_option("--label", label_col);
    ext->add_option("--epsilon", a_eps);
    ext->add_option("--steps", a_steps);
    ext->add_option("--eta2", a_eta2);

    std::vector<double> lambdas;
    CLI::App* sweep = app.add_subcommand("sweep-lambda", "train across a lambda grid");
    add_config_opts(sweep);
    sweep->add_option("--lambdas", lambdas, "lambda grid")->required()->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) return cmd_gen_toy(load_config(config_path, sets), force);
        if (train->parsed()) return cmd_train(load_config(config_path, sets));
        if (ev->parsed()) return cmd_eval(checkpoint, data_path, cost_path, out_path, label_col);
        if (exb->parsed())
            return cmd_export_boundary(checkpoint, out_path, res, x_lo, x_hi, y_lo, y_hi);
        if (ext->parsed())
            return cmd_export_trajectories(
                checkpoint, data_path, label_col, pair_arg, n_points, traj_seed,
                json{{"epsilon", a_eps}, {"steps", a_steps}, {"eta2", a_eta2}}, out_path);
        if (sweep->parsed()) return cmd_sweep_lambda(load_config(config_path, sets), lambdas);
    } catch (const csada::validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const csada::io_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 2;
    } catch (const csada::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
