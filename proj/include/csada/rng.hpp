#pragma once
// Deterministic PRNG and the samplers built on it. The generator is splitmix64:
// 64 bits of state, fixed-width arithmetic only, so streams are identical on
// every platform. Distinct stream ids give independent sequences for the same
// seed (shuffling, pair sampling and init draw from separate streams).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace csada {

struct Rng {
    std::uint64_t state = 0;
    std::uint64_t stream = 0;

    explicit Rng(std::uint64_t seed, std::uint64_t stream_id = 0) : stream(stream_id) {
        // spread (seed, stream) over the state space before drawing
        state = seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1);
        next_u64();
    }

    std::uint64_t next_u64() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform on [0,1), 53-bit resolution
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform on the open interval (0,1); safe under log()
    double uniform_open() {
        return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
    }

    // standard normal via Box-Muller (cosine branch; two uniforms per draw,
    // nothing cached so the state stays exactly 64 bits)
    double normal() {
        const double u1 = uniform_open();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // integer in [0, n)
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    template <typename T>
    void shuffle(std::vector<T>& v) { // Fisher-Yates
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }
};

// Pareto(scale, shape) inverse CDF applied to a given uniform; split out so the
// arithmetic is testable against hand-computed values.
inline double pareto_from_uniform(double u, double scale, double shape) {
    if (scale <= 0.0 || shape <= 0.0)
        throw validation_error("pareto: scale and shape must be positive");
    return scale * std::pow(u, -1.0 / shape);
}

inline double pareto_sample(Rng& rng, double scale, double shape) {
    return pareto_from_uniform(rng.uniform_open(), scale, shape);
}

// n rows from N(mean, cov) for 2-D mean/cov, via Cholesky factor times
// standard normals. Throws on asymmetric or non-positive-definite cov.
inline Matrix gauss_sample(Rng& rng, const std::vector<double>& mean,
                           const Matrix& cov, std::size_t n) {
    if (mean.size() != 2 || cov.rows != 2 || cov.cols != 2)
        throw validation_error("gauss_sample: expects 2-D mean and 2x2 covariance");
    if (std::abs(cov(0, 1) - cov(1, 0)) > 1e-12)
        throw validation_error("gauss_sample: covariance not symmetric");
    const double a = cov(0, 0);
    if (a <= 0.0)
        throw validation_error("gauss_sample: covariance not positive definite");
    const double l11 = std::sqrt(a);
    const double l21 = cov(1, 0) / l11;
    const double d = cov(1, 1) - l21 * l21;
    if (d <= 0.0)
        throw validation_error("gauss_sample: covariance not positive definite");
    const double l22 = std::sqrt(d);

    Matrix out(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        const double z0 = rng.normal();
        const double z1 = rng.normal();
        out(i, 0) = mean[0] + l11 * z0;
        out(i, 1) = mean[1] + l21 * z0 + l22 * z1;
    }
    return out;
}

// numerically stable softmax (max subtraction)
inline std::vector<double> softmax(const std::vector<double>& logits) {
    if (logits.empty())
        throw validation_error("softmax: empty logit vector");
    double m = logits[0];
    for (double v : logits) m = std::max(m, v);
    std::vector<double> p(logits.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        p[i] = std::exp(logits[i] - m);
        sum += p[i];
    }
    for (double& v : p) v /= sum;
    return p;
}

} // namespace csada
