#pragma once

// Generators and independent oracles shared by the test suites. The oracles
// go through Eigen's dense eigensolver and least-squares QR, never through
// the library's power iteration or row geometric means.

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pcm/matrix.hpp"
#include "pcm/search.hpp"
#include "pcm/weighting.hpp"

namespace pcm::testing {

// Upper triangle uniform in log space over [1/9, 9].
inline Pcm random_continuous_pcm(std::size_t n, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> log_entry(-std::log(9.0), std::log(9.0));
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            rows[i][j] = std::exp(log_entry(rng));
            rows[j][i] = 1.0 / rows[i][j];
        }
    }
    return Pcm::from_values(rows);
}

inline Pcm consistent_pcm(const std::vector<double>& v)
{
    std::vector<std::vector<double>> rows(v.size(), std::vector<double>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            rows[i][j] = v[i] / v[j];
        }
    }
    return Pcm::from_values(rows);
}

inline Permutation random_permutation(std::size_t n, std::mt19937_64& rng)
{
    std::vector<std::size_t> m(n);
    for (std::size_t k = 0; k < n; ++k) {
        m[k] = k;
    }
    std::shuffle(m.begin(), m.end(), rng);
    return Permutation(std::move(m));
}

inline Rational random_saaty_value(std::mt19937_64& rng)
{
    const auto& scale = saaty_scale();
    return scale[std::uniform_int_distribution<std::size_t>(0, scale.size() - 1)(rng)];
}

inline Eigen::MatrixXd to_eigen(const Pcm& a)
{
    Eigen::MatrixXd m(a.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
        }
    }
    return m;
}

struct PerronPair {
    std::vector<double> weights;
    double lambda;
};

// Dominant eigenpair from a full nonsymmetric eigendecomposition.
inline PerronPair perron_oracle(const Pcm& a)
{
    Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(a));
    const auto& values = solver.eigenvalues();
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < values.size(); ++k) {
        if (values[k].real() > values[best].real()) {
            best = k;
        }
    }
    Eigen::VectorXd v = solver.eigenvectors().col(best).real().cwiseAbs();
    v /= v.sum();
    return {std::vector<double>(v.data(), v.data() + v.size()), values[best].real()};
}

// argmin sum_{i<j} (log a_ij - x_i + x_j)^2 with sum x = 0, solved as a
// least-squares problem, then w = exp(x) normalized.
inline std::vector<double> llsm_oracle(const Pcm& a)
{
    const auto n = static_cast<Eigen::Index>(a.size());
    const Eigen::Index rows = n * (n - 1) / 2 + 1;
    Eigen::MatrixXd design = Eigen::MatrixXd::Zero(rows, n);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            design(r, i) = 1.0;
            design(r, j) = -1.0;
            rhs(r) = std::log(a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
            ++r;
        }
    }
    design.row(r).setOnes();
    Eigen::VectorXd x = design.colPivHouseholderQr().solve(rhs);
    Eigen::VectorXd w = x.array().exp();
    w /= w.sum();
    return std::vector<double>(w.data(), w.data() + w.size());
}

inline double max_rel_diff(std::span<const double> a, std::span<const double> b)
{
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        worst = std::max(worst, std::abs(a[k] - b[k]) / std::abs(b[k]));
    }
    return worst;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b)
{
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    return worst;
}

inline double max_entry_rel_diff(const Pcm& a, const Pcm& b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / b(i, j));
        }
    }
    return worst;
}

}  // namespace pcm::testing
