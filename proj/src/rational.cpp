#include "pcm/rational.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pcm {

namespace {

__extension__ typedef __int128 i128;

constexpr i128 kMax = INT64_MAX;

void reduce(i128& num, i128& den)
{
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 a = num < 0 ? -num : num;
    i128 b = den;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
}

std::optional<Rational> make_checked(i128 num, i128 den)
{
    if (den == 0) {
        return std::nullopt;
    }
    reduce(num, den);
    if (num > kMax || num < -kMax || den > kMax) {
        return std::nullopt;
    }
    return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

std::optional<std::int64_t> integer_root(std::int64_t value, unsigned k)
{
    if (value < 0) {
        return std::nullopt;
    }
    if (value <= 1 || k == 1) {
        return value;
    }
    auto guess = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(value), 1.0 / k)));
    for (std::int64_t c = std::max<std::int64_t>(guess - 1, 0); c <= guess + 1; ++c) {
        i128 p = 1;
        for (unsigned e = 0; e < k && p <= value; ++e) {
            p *= c;
        }
        if (p == value) {
            return c;
        }
    }
    return std::nullopt;
}

std::optional<std::int64_t> parse_int(std::string_view s)
{
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        return std::nullopt;
    }
    return v;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    i128 n = num;
    i128 d = den;
    reduce(n, d);
    if (n > kMax || n < -kMax || d > kMax) {
        throw std::overflow_error("rational out of range");
    }
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
}

double Rational::to_double() const noexcept
{
    constexpr std::int64_t kExact = std::int64_t{1} << 53;
    if (num_ <= kExact && num_ >= -kExact && den_ <= kExact) {
        // Both operands are exact doubles, so IEEE division rounds correctly.
        return static_cast<double>(num_) / static_cast<double>(den_);
    }
    return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::str() const
{
    if (den_ == 1) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<Rational> Rational::reciprocal() const
{
    return make_checked(den_, num_);
}

std::optional<Rational> checked_mul(const Rational& a, const Rational& b)
{
    return make_checked(static_cast<i128>(a.num()) * b.num(), static_cast<i128>(a.den()) * b.den());
}

std::optional<Rational> checked_div(const Rational& a, const Rational& b)
{
    return make_checked(static_cast<i128>(a.num()) * b.den(), static_cast<i128>(a.den()) * b.num());
}

std::optional<Rational> exact_root(const Rational& r, unsigned k)
{
    if (k == 0) {
        return std::nullopt;
    }
    auto num = integer_root(r.num(), k);
    auto den = integer_root(r.den(), k);
    if (!num || !den) {
        return std::nullopt;
    }
    return Rational(*num, *den);
}

std::optional<Rational> parse_rational(std::string_view text)
{
    text = trim(text);
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto p = parse_int(trim(text.substr(0, slash)));
        auto q = parse_int(trim(text.substr(slash + 1)));
        if (!p || !q || *q == 0) {
            return std::nullopt;
        }
        return make_checked(*p, *q);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto whole = text.substr(0, dot);
        auto frac = text.substr(dot + 1);
        if (frac.empty() || frac.size() > 18 || frac.find_first_not_of("0123456789") != std::string_view::npos) {
            return std::nullopt;
        }
        bool negative = !whole.empty() && whole.front() == '-';
        auto w = whole.empty() || whole == "-" || whole == "+" ? std::optional<std::int64_t>{0} : parse_int(whole);
        auto f = parse_int(frac);
        if (!w || !f) {
            return std::nullopt;
        }
        i128 scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) {
            scale *= 10;
        }
        i128 magnitude = static_cast<i128>(*w < 0 ? -*w : *w) * scale + *f;
        return make_checked(negative ? -magnitude : magnitude, scale);
    }
    auto v = parse_int(text);
    if (!v) {
        return std::nullopt;
    }
    return Rational(*v);
}

}  // namespace pcm
