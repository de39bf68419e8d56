#include "pcm/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace pcm {

namespace {

constexpr double kReciprocityTol = 1e-9;

Entry reciprocal(const Entry& e)
{
    if (e.exact) {
        if (auto r = e.exact->reciprocal()) {
            return Entry(*r);
        }
    }
    return Entry(1.0 / e.value);
}

Entry times(const Entry& a, const Entry& b)
{
    if (a.exact && b.exact) {
        if (auto r = checked_mul(*a.exact, *b.exact)) {
            return Entry(*r);
        }
    }
    return Entry(a.value * b.value);
}

Entry divided(const Entry& a, const Entry& b)
{
    if (a.exact && b.exact) {
        if (auto r = checked_div(*a.exact, *b.exact)) {
            return Entry(*r);
        }
    }
    return Entry(a.value / b.value);
}

void require_positive(const Entry& e, std::size_t i, std::size_t j)
{
    if (!std::isfinite(e.value) || !(e.value > 0.0)) {
        throw std::invalid_argument(fmt::format("entry ({}, {}) = {} is not a positive finite number", i + 1, j + 1, e.value));
    }
}

std::vector<std::vector<Entry>> to_entries(const std::vector<std::vector<double>>& rows)
{
    std::vector<std::vector<Entry>> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        out.emplace_back(r.begin(), r.end());
    }
    return out;
}

// Geometric mean of one entry position across matrices.
Entry geometric_mean(std::span<const Pcm> ms, std::size_t i, std::size_t j)
{
    const auto k = static_cast<unsigned>(ms.size());
    const double first = ms[0](i, j);
    bool all_equal = true;
    bool all_exact = true;
    for (const auto& m : ms) {
        all_equal = all_equal && m(i, j) == first;
        all_exact = all_exact && m.exact(i, j).has_value();
    }
    if (all_exact) {
        std::optional<Rational> product = Rational(1);
        for (const auto& m : ms) {
            product = product ? checked_mul(*product, *m.exact(i, j)) : std::nullopt;
        }
        if (product) {
            if (auto root = exact_root(*product, k)) {
                return Entry(*root);
            }
        }
    }
    if (all_equal) {
        return ms[0].entry(i, j);
    }
    double log_sum = 0.0;
    for (const auto& m : ms) {
        log_sum += std::log(m(i, j));
    }
    return Entry(std::exp(log_sum / k));
}

}  // namespace

Pcm::Pcm(const std::vector<std::vector<Entry>>& rows)
{
    const std::size_t n = rows.size();
    if (n < 2) {
        throw std::invalid_argument(fmt::format("matrix must have at least 2 rows, got {}", n));
    }
    std::vector<Entry> flat;
    flat.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw std::invalid_argument(fmt::format("matrix is not square: row {} has {} entries, expected {}", i + 1, rows[i].size(), n));
        }
        for (std::size_t j = 0; j < n; ++j) {
            require_positive(rows[i][j], i, j);
            flat.push_back(rows[i][j]);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(rows[i][i].value - 1.0) > kReciprocityTol) {
            throw std::invalid_argument(fmt::format("diagonal entry ({}, {}) = {} must be 1", i + 1, i + 1, rows[i][i].value));
        }
        for (std::size_t j = 0; j < i; ++j) {
            const double expected = reciprocal(rows[j][i]).value;
            if (std::abs(rows[i][j].value - expected) > kReciprocityTol * expected) {
                throw std::invalid_argument(fmt::format("entry ({}, {}) = {} is not the reciprocal of entry ({}, {}) = {}", i + 1, j + 1,
                                                        rows[i][j].value, j + 1, i + 1, rows[j][i].value));
            }
        }
    }
    *this = from_upper(n, flat);
}

Pcm Pcm::from_values(const std::vector<std::vector<double>>& rows)
{
    return Pcm(to_entries(rows));
}

Pcm::Pcm(Unchecked, std::size_t n, std::vector<double> values, std::vector<std::optional<Rational>> exact)
    : n_(n), values_(std::move(values)), exact_(std::move(exact))
{
}

Pcm Pcm::from_upper(std::size_t n, const std::vector<Entry>& entries)
{
    std::vector<double> values(n * n, 1.0);
    std::vector<std::optional<Rational>> exact(n * n, Rational(1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Entry& up = entries[i * n + j];
            const Entry low = reciprocal(up);
            values[i * n + j] = up.value;
            exact[i * n + j] = up.exact;
            values[j * n + i] = low.value;
            exact[j * n + i] = low.exact;
        }
    }
    return Pcm(Unchecked{}, n, std::move(values), std::move(exact));
}

Entry Pcm::entry(std::size_t i, std::size_t j) const
{
    Entry e(values_[i * n_ + j]);
    e.exact = exact_[i * n_ + j];
    return e;
}

std::vector<std::vector<double>> Pcm::to_rows() const
{
    std::vector<std::vector<double>> rows(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        rows[i].assign(values_.begin() + static_cast<std::ptrdiff_t>(i * n_), values_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_));
    }
    return rows;
}

bool Pcm::is_exact() const noexcept
{
    return std::all_of(exact_.begin(), exact_.end(), [](const auto& e) { return e.has_value(); });
}

Permutation::Permutation(std::vector<std::size_t> mapping) : map_(std::move(mapping))
{
    std::vector<bool> seen(map_.size(), false);
    for (std::size_t k : map_) {
        if (k >= map_.size() || seen[k]) {
            throw std::invalid_argument("permutation is not a bijection");
        }
        seen[k] = true;
    }
}

Permutation Permutation::identity(std::size_t n)
{
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), std::size_t{0});
    return Permutation(std::move(m));
}

Permutation Permutation::from_one_based(const std::vector<std::size_t>& mapping)
{
    std::vector<std::size_t> m;
    m.reserve(mapping.size());
    for (std::size_t k : mapping) {
        if (k == 0) {
            throw std::invalid_argument("permutation entries are 1-based");
        }
        m.push_back(k - 1);
    }
    return Permutation(std::move(m));
}

Permutation Permutation::inverse() const
{
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t k = 0; k < map_.size(); ++k) {
        inv[map_[k]] = k;
    }
    return Permutation(std::move(inv));
}

Pcm all_ones(std::size_t n)
{
    if (n < 2) {
        throw std::invalid_argument(fmt::format("all-ones matrix needs n >= 2, got {}", n));
    }
    return Pcm(Pcm::Unchecked{}, n, std::vector<double>(n * n, 1.0), std::vector<std::optional<Rational>>(n * n, Rational(1)));
}

Pcm row_multiply(const Pcm& a, std::size_t i, const Entry& alpha)
{
    const std::size_t n = a.size();
    if (i >= n) {
        throw std::out_of_range(fmt::format("row index {} out of range for n = {}", i + 1, n));
    }
    if (!std::isfinite(alpha.value) || !(alpha.value > 0.0)) {
        throw std::invalid_argument(fmt::format("row multiplier must be positive, got {}", alpha.value));
    }
    auto values = a.values_;
    auto exact = a.exact_;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) {
            continue;
        }
        const Entry up = times(a.entry(i, j), alpha);
        const Entry low = divided(a.entry(j, i), alpha);
        values[i * n + j] = up.value;
        exact[i * n + j] = up.exact;
        values[j * n + i] = low.value;
        exact[j * n + i] = low.exact;
    }
    return Pcm(Pcm::Unchecked{}, n, std::move(values), std::move(exact));
}

Pcm opposite(const Pcm& a)
{
    const std::size_t n = a.size();
    auto values = a.values_;
    auto exact = a.exact_;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::swap(values[i * n + j], values[j * n + i]);
            std::swap(exact[i * n + j], exact[j * n + i]);
        }
    }
    return Pcm(Pcm::Unchecked{}, n, std::move(values), std::move(exact));
}

Pcm permute(const Pcm& a, const Permutation& sigma)
{
    const std::size_t n = a.size();
    if (sigma.size() != n) {
        throw std::invalid_argument(fmt::format("permutation of size {} applied to a {}x{} matrix", sigma.size(), n, n));
    }
    std::vector<double> values(n * n);
    std::vector<std::optional<Rational>> exact(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            values[i * n + j] = a(sigma[i], sigma[j]);
            exact[i * n + j] = a.exact(sigma[i], sigma[j]);
        }
    }
    return Pcm(Pcm::Unchecked{}, n, std::move(values), std::move(exact));
}

Pcm aggregate(std::span<const Pcm> matrices)
{
    if (matrices.empty()) {
        throw std::invalid_argument("cannot aggregate an empty list of matrices");
    }
    const std::size_t n = matrices[0].size();
    for (std::size_t l = 1; l < matrices.size(); ++l) {
        if (matrices[l].size() != n) {
            throw std::invalid_argument(fmt::format("matrix {} is {}x{}, expected {}x{}", l + 1, matrices[l].size(), matrices[l].size(), n, n));
        }
    }
    if (matrices.size() == 1) {
        return matrices[0];
    }
    std::vector<Entry> upper(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            upper[i * n + j] = geometric_mean(matrices, i, j);
        }
    }
    return Pcm::from_upper(n, upper);
}

bool is_consistent(const Pcm& a, double tol)
{
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (std::abs(a(i, k) - a(i, j) * a(j, k)) > tol * a(i, k)) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace pcm
