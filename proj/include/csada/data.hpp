#pragma once
// Datasets: the synthetic three-Gaussian task, CSV load/save, MNIST IDX
// ingestion, and deterministic stratified splits.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "cost.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "rng.hpp"

namespace csada {

enum class DatasetRole { train, val, test };

struct LabeledDataset {
    Matrix features; // N x d
    std::vector<std::size_t> labels;
    std::vector<std::string> class_names;
    DatasetRole role = DatasetRole::train;

    std::size_t n() const { return features.rows; }
    std::size_t dim() const { return features.cols; }
    std::size_t class_count() const { return class_names.size(); }

    std::vector<double> row(std::size_t i) const {
        return {features.data.begin() + static_cast<std::ptrdiff_t>(i * features.cols),
                features.data.begin() + static_cast<std::ptrdiff_t>((i + 1) * features.cols)};
    }

    void validate() const {
        if (labels.size() != n())
            throw validation_error("dataset: label count != row count");
        for (std::size_t y : labels)
            if (y >= class_count())
                throw validation_error("dataset: label out of range");
    }
};

struct ToyClassSpec {
    std::string name;
    std::vector<double> mean; // 2-vector
    Matrix cov;               // 2x2 symmetric PD
    std::size_t n_train = 0;
    std::size_t n_test = 0;
};

struct ToySpec {
    std::vector<ToyClassSpec> classes;
    std::uint64_t seed = 42;

    // Table-layout defaults: red above, green right, blue left, shared covariance.
    static ToySpec defaults(std::uint64_t seed = 42) {
        const Matrix cov{{2.0, 0.5}, {0.5, 2.0}};
        ToySpec s;
        s.seed = seed;
        s.classes = {
            {"red", {0.0, 8.0}, cov, 50, 500},
            {"green", {7.0, -6.0}, cov, 50, 500},
            {"blue", {-7.0, -6.0}, cov, 50, 500},
        };
        return s;
    }
};

// class indices fixed by position in ToySpec; defaults: red=0, green=1, blue=2
inline constexpr std::size_t kToyRed = 0;
inline constexpr std::size_t kToyGreen = 1;
inline constexpr std::size_t kToyBlue = 2;

inline std::pair<LabeledDataset, LabeledDataset> make_toy(const ToySpec& spec) {
    if (spec.classes.empty())
        throw validation_error("make_toy: no classes");
    Rng rng(spec.seed, 0);
    LabeledDataset train, test;
    train.role = DatasetRole::train;
    test.role = DatasetRole::test;
    std::size_t n_train = 0, n_test = 0;
    for (const auto& c : spec.classes) {
        n_train += c.n_train;
        n_test += c.n_test;
    }
    train.features = Matrix(n_train, 2);
    test.features = Matrix(n_test, 2);
    std::size_t ti = 0, si = 0;
    for (std::size_t ci = 0; ci < spec.classes.size(); ++ci) {
        const auto& c = spec.classes[ci];
        train.class_names.push_back(c.name);
        test.class_names.push_back(c.name);
        const Matrix tr = gauss_sample(rng, c.mean, c.cov, c.n_train);
        const Matrix te = gauss_sample(rng, c.mean, c.cov, c.n_test);
        for (std::size_t i = 0; i < c.n_train; ++i, ++ti) {
            train.features(ti, 0) = tr(i, 0);
            train.features(ti, 1) = tr(i, 1);
            train.labels.push_back(ci);
        }
        for (std::size_t i = 0; i < c.n_test; ++i, ++si) {
            test.features(si, 0) = te(i, 0);
            test.features(si, 1) = te(i, 1);
            test.labels.push_back(ci);
        }
    }
    return {train, test};
}

// the Table-2-style point-mass cost: only green->blue costs anything
inline CostMatrix toy_cost_matrix() {
    CostMatrix cm = CostMatrix::zeros(3);
    cm.class_names = {"red", "green", "blue"};
    cm.c(kToyGreen, kToyBlue) = 1.0;
    return cm;
}

// ---- CSV: header "f0,...,f{d-1},<label column>"; label cells hold class names ----

inline void save_csv(const LabeledDataset& ds, const std::string& path,
                     const std::string& label_col = "label") {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write dataset '" + path + "'");
    for (std::size_t j = 0; j < ds.dim(); ++j) out << "f" << j << ",";
    out << label_col << "\n";
    out.precision(17);
    for (std::size_t i = 0; i < ds.n(); ++i) {
        for (std::size_t j = 0; j < ds.dim(); ++j) out << ds.features(i, j) << ",";
        out << ds.class_names[ds.labels[i]] << "\n";
    }
}

inline LabeledDataset load_csv(const std::string& path, const std::string& label_col = "label") {
    std::ifstream in(path);
    if (!in) throw io_error("cannot read dataset '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line.empty())
        throw io_error("dataset '" + path + "': empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv_line(line);
    std::size_t label_idx = header.size();
    for (std::size_t j = 0; j < header.size(); ++j)
        if (header[j] == label_col) label_idx = j;
    if (label_idx == header.size())
        throw io_error("dataset '" + path + "': no column named '" + label_col + "'");

    LabeledDataset ds;
    std::vector<double> values;
    const std::size_t d = header.size() - 1;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw io_error("dataset '" + path + "': row width mismatch");
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (j == label_idx) {
                const std::string& name = cells[j];
                std::size_t idx = ds.class_names.size();
                for (std::size_t k = 0; k < ds.class_names.size(); ++k)
                    if (ds.class_names[k] == name) idx = k;
                if (idx == ds.class_names.size()) ds.class_names.push_back(name);
                ds.labels.push_back(idx);
            } else {
                try {
                    values.push_back(std::stod(cells[j]));
                } catch (const std::exception&) {
                    throw io_error("dataset '" + path + "': non-numeric feature");
                }
            }
        }
    }
    if (ds.labels.empty())
        throw io_error("dataset '" + path + "': no data rows");
    ds.features = Matrix(ds.labels.size(), d);
    ds.features.data = std::move(values);
    ds.validate();
    return ds;
}

// ---- MNIST IDX ----

inline std::uint32_t read_be32(std::ifstream& in, const std::string& path) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4))
        throw io_error("idx '" + path + "': truncated header");
    return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) |
           (std::uint32_t(b[2]) << 8) | std::uint32_t(b[3]);
}

inline LabeledDataset load_mnist_idx(const std::string& images_path,
                                     const std::string& labels_path,
                                     std::size_t per_class_cap = 0) {
    std::ifstream imgs(images_path, std::ios::binary);
    if (!imgs) throw io_error("cannot read '" + images_path + "'");
    std::ifstream labs(labels_path, std::ios::binary);
    if (!labs) throw io_error("cannot read '" + labels_path + "'");

    if (read_be32(imgs, images_path) != 0x00000803u)
        throw io_error("idx '" + images_path + "': bad magic (want 0x00000803)");
    if (read_be32(labs, labels_path) != 0x00000801u)
        throw io_error("idx '" + labels_path + "': bad magic (want 0x00000801)");
    const std::uint32_t n = read_be32(imgs, images_path);
    const std::uint32_t rows = read_be32(imgs, images_path);
    const std::uint32_t cols = read_be32(imgs, images_path);
    if (read_be32(labs, labels_path) != n)
        throw io_error("idx: image/label counts disagree");

    std::vector<unsigned char> pix(static_cast<std::size_t>(n) * rows * cols);
    if (!imgs.read(reinterpret_cast<char*>(pix.data()), static_cast<std::streamsize>(pix.size())))
        throw io_error("idx '" + images_path + "': truncated pixel data");
    std::vector<unsigned char> lab(n);
    if (!labs.read(reinterpret_cast<char*>(lab.data()), static_cast<std::streamsize>(lab.size())))
        throw io_error("idx '" + labels_path + "': truncated label data");

    const std::size_t d = static_cast<std::size_t>(rows) * cols;
    std::vector<std::size_t> keep;
    std::vector<std::size_t> per_class(10, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (lab[i] > 9) throw io_error("idx '" + labels_path + "': label > 9");
        if (per_class_cap == 0 || per_class[lab[i]] < per_class_cap) {
            keep.push_back(i);
            ++per_class[lab[i]];
        }
    }
    LabeledDataset ds;
    for (int c = 0; c < 10; ++c) ds.class_names.push_back(std::to_string(c));
    ds.features = Matrix(keep.size(), d);
    for (std::size_t r = 0; r < keep.size(); ++r) {
        const std::size_t i = keep[r];
        ds.labels.push_back(lab[i]);
        for (std::size_t j = 0; j < d; ++j)
            ds.features(r, j) = pix[i * d + j] / 255.0; // pixels scaled to [0,1]
    }
    return ds;
}

// materialize a subset of rows (used by trainers for mini-batches)
inline LabeledDataset take_rows(const LabeledDataset& ds, const std::vector<std::size_t>& rows) {
    LabeledDataset out;
    out.class_names = ds.class_names;
    out.role = ds.role;
    out.features = Matrix(rows.size(), ds.dim());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out.labels.push_back(ds.labels[rows[r]]);
        for (std::size_t j = 0; j < ds.dim(); ++j)
            out.features(r, j) = ds.features(rows[r], j);
    }
    return out;
}

// stratified split by class; deterministic; parts are disjoint
inline std::vector<LabeledDataset> split(const LabeledDataset& ds,
                                         const std::vector<double>& fractions,
                                         std::uint64_t seed) {
    double sum = 0.0;
    for (double f : fractions) {
        if (f <= 0.0) throw validation_error("split: fractions must be positive");
        sum += f;
    }
    if (sum > 1.0 + 1e-12)
        throw validation_error("split: fractions sum to more than 1");

    std::vector<std::vector<std::size_t>> by_class(ds.class_count());
    for (std::size_t i = 0; i < ds.n(); ++i) by_class[ds.labels[i]].push_back(i);
    Rng rng(seed, 0);
    for (auto& idx : by_class) rng.shuffle(idx);

    std::vector<std::vector<std::size_t>> part_rows(fractions.size());
    for (const auto& idx : by_class) {
        std::size_t start = 0;
        double acc = 0.0;
        for (std::size_t p = 0; p < fractions.size(); ++p) {
            acc += fractions[p];
            const auto end = static_cast<std::size_t>(
                std::llround(acc * static_cast<double>(idx.size())));
            for (std::size_t i = start; i < end && i < idx.size(); ++i)
                part_rows[p].push_back(idx[i]);
            start = end;
        }
    }

    const DatasetRole roles[3] = {DatasetRole::train, DatasetRole::val, DatasetRole::test};
    std::vector<LabeledDataset> parts;
    for (std::size_t p = 0; p < part_rows.size(); ++p) {
        LabeledDataset out;
        out.class_names = ds.class_names;
        out.role = p < 3 ? roles[p] : DatasetRole::test;
        std::sort(part_rows[p].begin(), part_rows[p].end());
        out.features = Matrix(part_rows[p].size(), ds.dim());
        for (std::size_t r = 0; r < part_rows[p].size(); ++r) {
            const std::size_t i = part_rows[p][r];
            out.labels.push_back(ds.labels[i]);
            for (std::size_t j = 0; j < ds.dim(); ++j)
                out.features(r, j) = ds.features(i, j);
        }
        parts.push_back(std::move(out));
    }
    return parts;
}

} // namespace csada
