#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcm/matrix.hpp"

namespace pcm {

// Positive priority vector summing to 1 (within 1e-12).
class WeightVector {
public:
    // Throws std::invalid_argument unless every component is > 0 and the
    // components sum to 1 within 1e-12.
    explicit WeightVector(std::vector<double> weights);

    // Scales positive components to unit sum.
    static WeightVector normalized(std::vector<double> weights);

    std::size_t size() const noexcept { return w_.size(); }
    double operator[](std::size_t k) const noexcept { return w_[k]; }
    std::span<const double> values() const noexcept { return w_; }

    friend bool operator==(const WeightVector&, const WeightVector&) = default;

private:
    std::vector<double> w_;
};

// Random consistency index per matrix size.
class RandomIndexTable {
public:
    RandomIndexTable();  // 3: 0.58, 4: 0.90, ..., 10: 1.49
    explicit RandomIndexTable(std::map<std::size_t, double> values);

    std::optional<double> lookup(std::size_t n) const;
    const std::map<std::size_t, double>& values() const noexcept { return values_; }

private:
    std::map<std::size_t, double> values_;
};

inline constexpr double kAcceptableCr = 0.10;

struct EmOptions {
    double tol = 1e-12;
    std::size_t max_iter = 10'000;
    RandomIndexTable random_index{};
};

struct EmResult {
    WeightVector weights;
    double lambda_max;
    // Absent when the table has no random index for n.
    std::optional<double> cr;
    std::size_t iterations;
};

// Right Perron eigenvector by power iteration from the all-ones vector,
// renormalized to unit sum every step. Stops once successive iterates
// differ by < tol in max-norm and the eigenvalue estimate sum(A w) is
// stable to tol relative. Throws std::runtime_error when max_iter is
// reached first.
EmResult em_weights(const Pcm& a, const EmOptions& options = {});

// (lambda_max - n) / ((n - 1) RI(n)). Throws std::domain_error when n is
// outside the table.
double consistency_ratio(const Pcm& a, const EmOptions& options = {});
double consistency_ratio(double lambda_max, std::size_t n, const RandomIndexTable& table = {});

// Normalized row geometric means.
WeightVector llsm_weights(const Pcm& a);

// Weak order over alternatives: classes of mutually tied alternatives,
// best class first. Alternatives are 0-based.
class Ranking {
public:
    // Throws std::invalid_argument unless the classes are nonempty,
    // disjoint, and cover {0..n-1}.
    explicit Ranking(std::vector<std::vector<std::size_t>> classes);

    std::size_t size() const noexcept { return position_.size(); }
    const std::vector<std::vector<std::size_t>>& classes() const noexcept { return classes_; }
    std::size_t class_of(std::size_t k) const noexcept { return position_[k]; }

    bool prefers(std::size_t i, std::size_t j) const noexcept { return position_[i] < position_[j]; }
    bool weakly_prefers(std::size_t i, std::size_t j) const noexcept { return position_[i] <= position_[j]; }
    bool indifferent(std::size_t i, std::size_t j) const noexcept { return position_[i] == position_[j]; }

    // -1, 0, +1 for i below, tied with, above j.
    int compare(std::size_t i, std::size_t j) const noexcept;

    bool is_weakly_top(std::size_t i) const noexcept { return position_[i] == 0; }
    bool is_strictly_top(std::size_t i) const noexcept { return position_[i] == 0 && classes_[0].size() == 1; }

    // Class order reversed.
    Ranking reversed() const;

    friend bool operator==(const Ranking& a, const Ranking& b) noexcept { return a.classes_ == b.classes_; }

private:
    std::vector<std::vector<std::size_t>> classes_;
    std::vector<std::size_t> position_;
};

// 1-based, e.g. "2 > 1 > 3 ~ 4".
std::string to_string(const Ranking& r);

inline constexpr double kDefaultTieTol = 1e-9;

// Sorts by descending weight and merges neighbours whose ratio is at most
// 1 + tie_tol. Merging neighbours is the transitive closure of pairwise
// closeness, so the result is always a weak order.
Ranking ranking_from_weights(const WeightVector& w, double tie_tol = kDefaultTieTol);

}  // namespace pcm
