#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pcm/rational.hpp"

namespace pcm {

// A single ratio judgment. `exact` is kept whenever the value is known as a
// rational (parsed from "p/q", an integer, or derived from exact operands);
// `value` is then its correctly rounded double.
struct Entry {
    double value = 1.0;
    std::optional<Rational> exact;

    Entry() = default;
    Entry(double v) : value(v) {}
    Entry(int v) : Entry(Rational(v)) {}
    Entry(Rational r) : value(r.to_double()), exact(r) {}
};

class Permutation;

// Positive reciprocal n x n matrix (n >= 2).
//
// Alternatives are 0-based in the library API. Serialized forms and the CLI
// use 1-based alternative ids.
//
// Invariants: every entry is finite and > 0, the diagonal is exactly 1, and
// a_ij * a_ji == 1 up to rounding of a single reciprocal. Values are
// immutable after construction.
class Pcm {
public:
    // Validates and canonicalizes: the upper triangle is kept as given, the
    // lower triangle is replaced with exact reciprocals. Throws
    // std::invalid_argument for non-square input, n < 2, a non-positive or
    // non-finite entry, a diagonal entry other than 1, or a lower entry whose
    // relative deviation from 1/a_ij exceeds 1e-9. Messages name the
    // offending entry with 1-based (row, column).
    explicit Pcm(const std::vector<std::vector<Entry>>& rows);
    static Pcm from_values(const std::vector<std::vector<double>>& rows);

    std::size_t size() const noexcept { return n_; }

    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * n_ + j]; }
    const std::optional<Rational>& exact(std::size_t i, std::size_t j) const noexcept { return exact_[i * n_ + j]; }
    Entry entry(std::size_t i, std::size_t j) const;

    std::span<const double> row(std::size_t i) const noexcept { return {values_.data() + i * n_, n_}; }

    std::vector<std::vector<double>> to_rows() const;

    // True when every entry carries an exact rational.
    bool is_exact() const noexcept;

    // Compares values only; exactness metadata does not participate.
    friend bool operator==(const Pcm& a, const Pcm& b) noexcept { return a.n_ == b.n_ && a.values_ == b.values_; }

private:
    struct Unchecked {};
    Pcm(Unchecked, std::size_t n, std::vector<double> values, std::vector<std::optional<Rational>> exact);

    static Pcm from_upper(std::size_t n, const std::vector<Entry>& entries);

    friend Pcm all_ones(std::size_t n);
    friend Pcm row_multiply(const Pcm& a, std::size_t i, const Entry& alpha);
    friend Pcm opposite(const Pcm& a);
    friend Pcm permute(const Pcm& a, const Permutation& sigma);
    friend Pcm aggregate(std::span<const Pcm> matrices);

    std::size_t n_ = 0;
    std::vector<double> values_;
    std::vector<std::optional<Rational>> exact_;
};

// Bijection on {0..n-1}. permute(A, sigma)(i, j) = A(sigma[i], sigma[j]),
// so alternative k of the permuted matrix is alternative sigma[k] of A.
class Permutation {
public:
    explicit Permutation(std::vector<std::size_t> mapping);

    static Permutation identity(std::size_t n);
    static Permutation from_one_based(const std::vector<std::size_t>& mapping);

    std::size_t size() const noexcept { return map_.size(); }
    std::size_t operator[](std::size_t k) const noexcept { return map_[k]; }
    const std::vector<std::size_t>& mapping() const noexcept { return map_; }

    Permutation inverse() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::size_t> map_;
};

Pcm all_ones(std::size_t n);

// Scales row i by alpha and column i by 1/alpha. alpha == 1 leaves every
// bit unchanged; exact operands give exact results.
Pcm row_multiply(const Pcm& a, std::size_t i, const Entry& alpha);

// Entrywise reciprocal, stored as the transpose so that
// opposite(opposite(a)) == a bit for bit.
Pcm opposite(const Pcm& a);

Pcm permute(const Pcm& a, const Permutation& sigma);

// Entrywise geometric mean of k >= 1 matrices of equal size.
Pcm aggregate(std::span<const Pcm> matrices);

bool is_consistent(const Pcm& a, double tol);

}  // namespace pcm
