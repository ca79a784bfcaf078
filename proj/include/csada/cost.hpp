#pragma once
// Misclassification cost matrices, their temperature-normalized penalty
// weights, and categorical sampling of critical pairs.

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "rng.hpp"

namespace csada {

struct CostMatrix {
    std::size_t k = 0;
    Matrix c; // k x k, zero diagonal, entries >= 0
    std::vector<std::string> class_names;

    static CostMatrix zeros(std::size_t k) {
        CostMatrix cm;
        cm.k = k;
        cm.c = Matrix(k, k);
        for (std::size_t i = 0; i < k; ++i)
            cm.class_names.push_back("class" + std::to_string(i));
        return cm;
    }

    void validate() const {
        if (k < 2 || c.rows != k || c.cols != k)
            throw validation_error("cost matrix: bad shape");
        for (std::size_t i = 0; i < k; ++i) {
            if (c(i, i) != 0.0)
                throw validation_error("cost matrix: nonzero diagonal entry");
            for (std::size_t j = 0; j < k; ++j) {
                if (!(c(i, j) >= 0.0) || !std::isfinite(c(i, j)))
                    throw validation_error("cost matrix: negative or non-finite entry");
            }
        }
    }
};

struct NormalizedWeights {
    std::size_t k = 0;
    Matrix w;   // w(y,z) = c(y,z)^tau / sum of all c^tau; zero cost -> zero weight
    double tau = 1.0;
};

inline double expected_cost_of_prediction(const CostMatrix& cm, std::size_t y, std::size_t z) {
    if (y >= cm.k || z >= cm.k)
        throw validation_error("cost lookup: class index out of range");
    return cm.c(y, z);
}

inline NormalizedWeights normalize(const CostMatrix& cm, double tau) {
    cm.validate();
    if (tau <= 0.0)
        throw validation_error("normalize: tau must be positive");
    NormalizedWeights nw;
    nw.k = cm.k;
    nw.tau = tau;
    nw.w = Matrix(cm.k, cm.k);
    double denom = 0.0;
    for (std::size_t i = 0; i < cm.k; ++i)
        for (std::size_t j = 0; j < cm.k; ++j) {
            // 0^tau := 0 so costless pairs never receive weight
            const double p = cm.c(i, j) > 0.0 ? std::pow(cm.c(i, j), tau) : 0.0;
            nw.w(i, j) = p;
            denom += p;
        }
    if (denom <= 0.0)
        throw validation_error("normalize: cost matrix has no positive entry");
    for (double& v : nw.w.data) v /= denom;
    return nw;
}

inline std::pair<std::size_t, std::size_t> sample_pair(const NormalizedWeights& nw, Rng& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    std::pair<std::size_t, std::size_t> last{0, 0};
    bool seen = false;
    for (std::size_t i = 0; i < nw.k; ++i)
        for (std::size_t j = 0; j < nw.k; ++j) {
            if (nw.w(i, j) <= 0.0) continue;
            last = {i, j};
            seen = true;
            acc += nw.w(i, j);
            if (u < acc) return {i, j};
        }
    if (!seen) throw validation_error("sample_pair: no positive weight");
    return last; // u landed in the rounding tail; give it to the final cell
}

inline CostMatrix random_cost_matrix(std::size_t k, Rng& rng) {
    if (k < 2) throw validation_error("random_cost_matrix: need k >= 2");
    CostMatrix cm = CostMatrix::zeros(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j) cm.c(i, j) = pareto_sample(rng, 1.0, 1.5);
    return cm;
}

// CSV layout: first row class names, then the k x k cost block.
inline void save_cost_csv(const CostMatrix& cm, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write cost matrix '" + path + "'");
    for (std::size_t j = 0; j < cm.k; ++j)
        out << (j ? "," : "") << cm.class_names[j];
    out << "\n";
    out.precision(17);
    for (std::size_t i = 0; i < cm.k; ++i) {
        for (std::size_t j = 0; j < cm.k; ++j)
            out << (j ? "," : "") << cm.c(i, j);
        out << "\n";
    }
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

inline CostMatrix load_cost_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot read cost matrix '" + path + "'");
    std::string line;
    if (!std::getline(in, line))
        throw io_error("cost matrix '" + path + "': empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    CostMatrix cm;
    cm.class_names = split_csv_line(line);
    cm.k = cm.class_names.size();
    cm.c = Matrix(cm.k, cm.k);
    for (std::size_t i = 0; i < cm.k; ++i) {
        if (!std::getline(in, line))
            throw io_error("cost matrix '" + path + "': expected " +
                           std::to_string(cm.k) + " rows");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto cells = split_csv_line(line);
        if (cells.size() != cm.k)
            throw io_error("cost matrix '" + path + "': row width mismatch");
        for (std::size_t j = 0; j < cm.k; ++j) {
            try {
                cm.c(i, j) = std::stod(cells[j]);
            } catch (const std::exception&) {
                throw io_error("cost matrix '" + path + "': non-numeric cell");
            }
        }
    }
    cm.validate(); // rejects negative entries and nonzero diagonal
    return cm;
}

} // namespace csada
