#include "pcm/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace pcm {

namespace {

std::vector<double> multiply(const Pcm& a, const std::vector<double>& w)
{
    const std::size_t n = a.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = a.row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            s += row[j] * w[j];
        }
        out[i] = s;
    }
    return out;
}

}  // namespace

WeightVector::WeightVector(std::vector<double> weights) : w_(std::move(weights))
{
    if (w_.empty()) {
        throw std::invalid_argument("weight vector is empty");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < w_.size(); ++k) {
        if (!std::isfinite(w_[k]) || !(w_[k] > 0.0)) {
            throw std::invalid_argument(fmt::format("weight {} = {} is not positive", k + 1, w_[k]));
        }
        sum += w_[k];
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument(fmt::format("weights sum to {}, not 1", sum));
    }
}

WeightVector WeightVector::normalized(std::vector<double> weights)
{
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (auto& x : weights) {
        x /= sum;
    }
    return WeightVector(std::move(weights));
}

RandomIndexTable::RandomIndexTable()
    : values_{{3, 0.58}, {4, 0.90}, {5, 1.12}, {6, 1.24}, {7, 1.32}, {8, 1.41}, {9, 1.45}, {10, 1.49}}
{
}

RandomIndexTable::RandomIndexTable(std::map<std::size_t, double> values) : values_(std::move(values))
{
    for (auto [n, ri] : values_) {
        if (!(ri > 0.0)) {
            throw std::invalid_argument(fmt::format("random index for n = {} must be positive, got {}", n, ri));
        }
    }
}

std::optional<double> RandomIndexTable::lookup(std::size_t n) const
{
    if (auto it = values_.find(n); it != values_.end()) {
        return it->second;
    }
    return std::nullopt;
}

EmResult em_weights(const Pcm& a, const EmOptions& options)
{
    const std::size_t n = a.size();
    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    double lambda_prev = 0.0;
    for (std::size_t it = 1; it <= options.max_iter; ++it) {
        auto next = multiply(a, w);
        // sum(w) == 1, so sum(A w) estimates lambda.
        const double lambda = std::accumulate(next.begin(), next.end(), 0.0);
        double diff = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            next[k] /= lambda;
            diff = std::max(diff, std::abs(next[k] - w[k]));
        }
        w = std::move(next);
        const bool stable = std::abs(lambda - lambda_prev) <= options.tol * lambda;
        lambda_prev = lambda;
        if (diff < options.tol && stable) {
            auto weights = WeightVector::normalized(w);
            auto aw = multiply(a, std::vector<double>(weights.values().begin(), weights.values().end()));
            double lambda_max = std::accumulate(aw.begin(), aw.end(), 0.0);
            // lambda_max >= n holds exactly for positive reciprocal matrices;
            // only rounding can put the estimate below n.
            lambda_max = std::max(lambda_max, static_cast<double>(n));
            std::optional<double> cr;
            if (auto ri = options.random_index.lookup(n)) {
                cr = (lambda_max - static_cast<double>(n)) / ((static_cast<double>(n) - 1.0) * *ri);
            }
            return EmResult{std::move(weights), lambda_max, cr, it};
        }
    }
    throw std::runtime_error(fmt::format("power iteration did not converge to tol {} within {} iterations", options.tol, options.max_iter));
}

double consistency_ratio(double lambda_max, std::size_t n, const RandomIndexTable& table)
{
    auto ri = table.lookup(n);
    if (!ri) {
        throw std::domain_error(fmt::format("no random index for n = {}", n));
    }
    return (lambda_max - static_cast<double>(n)) / ((static_cast<double>(n) - 1.0) * *ri);
}

double consistency_ratio(const Pcm& a, const EmOptions& options)
{
    if (!options.random_index.lookup(a.size())) {
        throw std::domain_error(fmt::format("no random index for n = {}", a.size()));
    }
    return consistency_ratio(em_weights(a, options).lambda_max, a.size(), options.random_index);
}

WeightVector llsm_weights(const Pcm& a)
{
    const std::size_t n = a.size();
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        double log_sum = 0.0;
        for (double x : a.row(i)) {
            log_sum += std::log(x);
        }
        g[i] = std::exp(log_sum / static_cast<double>(n));
    }
    return WeightVector::normalized(std::move(g));
}

Ranking::Ranking(std::vector<std::vector<std::size_t>> classes) : classes_(std::move(classes))
{
    std::size_t n = 0;
    for (const auto& c : classes_) {
        if (c.empty()) {
            throw std::invalid_argument("ranking has an empty class");
        }
        n += c.size();
    }
    position_.assign(n, n);
    for (std::size_t c = 0; c < classes_.size(); ++c) {
        std::sort(classes_[c].begin(), classes_[c].end());
        for (std::size_t k : classes_[c]) {
            if (k >= n || position_[k] != n) {
                throw std::invalid_argument("ranking classes must partition the alternatives");
            }
            position_[k] = c;
        }
    }
}

int Ranking::compare(std::size_t i, std::size_t j) const noexcept
{
    if (position_[i] < position_[j]) {
        return 1;
    }
    return position_[i] == position_[j] ? 0 : -1;
}

Ranking Ranking::reversed() const
{
    return Ranking(std::vector<std::vector<std::size_t>>(classes_.rbegin(), classes_.rend()));
}

std::string to_string(const Ranking& r)
{
    std::string out;
    for (std::size_t c = 0; c < r.classes().size(); ++c) {
        if (c > 0) {
            out += " > ";
        }
        for (std::size_t k = 0; k < r.classes()[c].size(); ++k) {
            out += fmt::format("{}{}", k > 0 ? " ~ " : "", r.classes()[c][k] + 1);
        }
    }
    return out;
}

Ranking ranking_from_weights(const WeightVector& w, double tie_tol)
{
    std::vector<std::size_t> order(w.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k == 0 || w[order[k - 1]] / w[order[k]] > 1.0 + tie_tol) {
            classes.emplace_back();
        }
        classes.back().push_back(order[k]);
    }
    return Ranking(std::move(classes));
}

}  // namespace pcm
