#include "pcm/reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "pcm/axioms.hpp"
#include "pcm/weighting.hpp"

namespace pcm::reference {

namespace {

Entry q(std::int64_t p, std::int64_t d = 1)
{
    return Entry(Rational(p, d));
}

constexpr double kWeightTol = 0.0005;
constexpr double kLambdaTol = 0.005;
constexpr double kCrTol = 0.005;

struct Builder {
    CaseReport report;

    void near(std::string quantity, double expected, double computed, double tol, int digits = 4)
    {
        report.checks.push_back({std::move(quantity), fmt::format("{:.{}f}", expected, digits), fmt::format("{:.{}f}", computed, digits + 2), tol,
                                 std::abs(computed - expected) <= tol});
    }

    void equal(std::string quantity, std::string expected, std::string computed)
    {
        const bool pass = expected == computed;
        report.checks.push_back({std::move(quantity), std::move(expected), std::move(computed), 0.0, pass});
    }

    void weights(std::string_view label, std::span<const double> expected, const WeightVector& computed)
    {
        for (std::size_t k = 0; k < expected.size(); ++k) {
            near(fmt::format("w{}({})", k + 1, label), expected[k], computed[k], kWeightTol);
        }
    }
};

std::string exact_text(const Pcm& a)
{
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        out += i > 0 ? "; " : "";
        for (std::size_t j = 0; j < a.size(); ++j) {
            const auto& e = a.exact(i, j);
            out += (j > 0 ? " " : "") + (e ? e->str() : fmt::format("{:.17g}", a(i, j)));
        }
    }
    return out;
}

std::string verdict_text(const AxiomReport& r)
{
    std::string out(to_string(r.verdict));
    for (auto [i, j] : r.witness.pairs) {
        out += fmt::format(" ({},{})", i + 1, j + 1);
    }
    return out;
}

CaseReport lemma43_a()
{
    Builder b{{"lemma43-A", {}}};
    const Pcm a = matrix_a();
    const auto em = em_weights(a);
    const auto em_opp = em_weights(opposite(a));
    b.weights("A", std::array{0.3657, 0.3896, 0.1672, 0.0347, 0.0429}, em.weights);
    b.near("lambda_max(A)", 5.348, em.lambda_max, kLambdaTol, 3);
    b.near("CR(A)", 0.078, em.cr.value_or(NAN), kCrTol, 3);
    b.weights("A-", std::array{0.0388, 0.0432, 0.1045, 0.4580, 0.3555}, em_opp.weights);
    b.equal("1 vs 2 under A", "<", em.weights[0] < em.weights[1] ? "<" : ">=");
    b.equal("1 vs 2 under A-", "<", em_opp.weights[0] < em_opp.weights[1] ? "<" : ">=");
    const auto inv = check_inv(Method::Em, a);
    b.equal("INV(EM, A) contains (1,2)", "violated (1,2)",
            inv.violated() && std::find(inv.witness.pairs.begin(), inv.witness.pairs.end(), AlternativePair{0, 1}) != inv.witness.pairs.end()
                ? "violated (1,2)"
                : verdict_text(inv));
    return b.report;
}

CaseReport lemma43_b()
{
    Builder b{{"lemma43-B", {}}};
    const Pcm m = matrix_b();
    const auto em = em_weights(m);
    const auto em_opp = em_weights(opposite(m));
    b.weights("B", std::array{0.3242, 0.3502, 0.2821, 0.0435}, em.weights);
    b.near("lambda_max(B)", 4.158, em.lambda_max, kLambdaTol, 3);
    b.near("CR(B)", 0.06, em.cr.value_or(NAN), kCrTol, 3);
    b.weights("B-", std::array{0.0886, 0.0905, 0.1104, 0.7105}, em_opp.weights);
    b.equal("ranking(B)", "2 > 1 > 3 > 4", to_string(ranking_from_weights(em.weights)));
    b.equal("ranking(B-)", "4 > 3 > 2 > 1", to_string(ranking_from_weights(em_opp.weights)));
    b.equal("INV(EM, B)", "violated (1,2)", verdict_text(check_inv(Method::Em, m)));
    return b.report;
}

CaseReport prop42()
{
    Builder b{{"prop42", {}}};
    const Pcm m = matrix_b();
    const Pcm m_opp = opposite(m);
    b.near("max_m w_m(B-) / w_2(B-)", 7.8478, alpha_lower_bound(Method::Em, m_opp, 1), 0.001);

    const std::vector<Pcm> pair{m, m_opp};
    GccConstructionOptions options;
    options.alphas = std::vector<Entry>{q(1), q(9)};
    const auto built = build_gcc_counterexample(Method::Em, pair, 1, 0, options);
    const Pcm& b_hat = built.matrices[1];
    b.equal("B- rows 1,2 times 9 (exact)", exact_text(published_b_hat_opposite()), exact_text(b_hat));

    const auto em_hat = em_weights(b_hat);
    b.weights("Bhat-", std::array{0.3278, 0.3349, 0.0454, 0.2920}, em_hat.weights);
    b.equal("ranking(Bhat-)", "2 > 1 > 4 > 3", to_string(ranking_from_weights(em_hat.weights)));

    const std::vector<Pcm> group{m, b_hat};
    const Pcm agg = aggregate(group);
    b.equal("B (+) Bhat- (exact)", exact_text(published_group_matrix()), exact_text(agg));
    const auto em_agg = em_weights(agg);
    const std::array<double, 4> eighths{3.0 / 8, 3.0 / 8, 1.0 / 8, 1.0 / 8};
    for (std::size_t k = 0; k < eighths.size(); ++k) {
        b.near(fmt::format("w{}(B (+) Bhat-)", k + 1), eighths[k], em_agg.weights[k], 1e-9, 9);
    }
    b.equal("ranking(B (+) Bhat-)", "1 ~ 2 > 3 ~ 4", to_string(ranking_from_weights(em_agg.weights)));
    b.equal("AI(EM, [B, Bhat-])", "violated (2,1)", verdict_text(check_ai(Method::Em, group)));
    const auto gcc = check_gcc(Method::Em, group);
    b.equal("GCC(EM, [B, Bhat-])", "violated (2,1)", verdict_text(gcc));
    b.equal("GCC report of the construction", "violated (2,1)", verdict_text(built.report));
    return b.report;
}

}  // namespace

Pcm matrix_a()
{
    return Pcm({
        {q(1), q(1), q(3), q(9), q(9)},
        {q(1), q(1), q(5), q(8), q(5)},
        {q(1, 3), q(1, 5), q(1), q(9), q(5)},
        {q(1, 9), q(1, 8), q(1, 9), q(1), q(1)},
        {q(1, 9), q(1, 5), q(1, 5), q(1), q(1)},
    });
}

Pcm matrix_b()
{
    return Pcm({
        {q(1), q(1), q(1), q(9)},
        {q(1), q(1), q(2), q(5)},
        {q(1), q(1, 2), q(1), q(9)},
        {q(1, 9), q(1, 5), q(1, 9), q(1)},
    });
}

Pcm published_b_hat_opposite()
{
    return Pcm({
        {q(1), q(1), q(9), q(1)},
        {q(1), q(1), q(9, 2), q(9, 5)},
        {q(1, 9), q(2, 9), q(1), q(1, 9)},
        {q(1), q(5, 9), q(9), q(1)},
    });
}

Pcm published_group_matrix()
{
    return Pcm({
        {q(1), q(1), q(3), q(3)},
        {q(1), q(1), q(3), q(3)},
        {q(1, 3), q(1, 3), q(1), q(1)},
        {q(1, 3), q(1, 3), q(1), q(1)},
    });
}

bool CaseReport::passed() const
{
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const std::vector<std::string>& case_ids()
{
    static const std::vector<std::string> ids{"lemma43-A", "lemma43-B", "prop42"};
    return ids;
}

CaseReport run_case(std::string_view id)
{
    if (id == "lemma43-A") {
        return lemma43_a();
    }
    if (id == "lemma43-B") {
        return lemma43_b();
    }
    if (id == "prop42") {
        return prop42();
    }
    throw std::invalid_argument(fmt::format("unknown case '{}' (expected lemma43-A, lemma43-B or prop42)", id));
}

}  // namespace pcm::reference
