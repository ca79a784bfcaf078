#pragma once
// Dense row-major f64 matrix. Deliberately minimal: the model module hand-rolls
// its own loops, so only construction, element access and matmul live here.

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "errors.hpp"

namespace csada {

struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data; // row-major, rows*cols entries

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}
    Matrix(std::initializer_list<std::initializer_list<double>> init) {
        rows = init.size();
        cols = rows ? init.begin()->size() : 0;
        data.reserve(rows * cols);
        for (const auto& row : init) {
            if (row.size() != cols)
                throw validation_error("matrix: ragged initializer");
            data.insert(data.end(), row.begin(), row.end());
        }
    }

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    bool all_finite() const {
        for (double v : data)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows)
        throw validation_error("matmul: inner dimensions disagree");
    Matrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols; ++j)
                out(i, j) += aik * b(k, j);
        }
    if (!out.all_finite())
        throw numeric_error("matmul: non-finite entry in product");
    return out;
}

} // namespace csada
