#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pcm {

// Exact ratio of two 64-bit integers, always reduced with a positive
// denominator. Arithmetic reports overflow by returning std::nullopt so
// callers can fall back to floating point.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    bool is_integer() const noexcept { return den_ == 1; }
    double to_double() const noexcept;

    // "p/q", or "p" when the denominator is 1.
    std::string str() const;

    std::optional<Rational> reciprocal() const;

    friend bool operator==(const Rational&, const Rational&) = default;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::optional<Rational> checked_mul(const Rational& a, const Rational& b);
std::optional<Rational> checked_div(const Rational& a, const Rational& b);

// Exact k-th root, present only when numerator and denominator are both
// perfect k-th powers.
std::optional<Rational> exact_root(const Rational& r, unsigned k);

// Accepts "p/q", "p", and finite decimals such as "0.25". Returns nullopt
// for anything else, including values that do not fit in 64 bits.
std::optional<Rational> parse_rational(std::string_view text);

}  // namespace pcm
