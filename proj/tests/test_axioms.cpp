#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "pcm/axioms.hpp"
#include "pcm/reference.hpp"
#include "pcm/search.hpp"
#include "support.hpp"

using namespace pcm;
using pcm::testing::random_continuous_pcm;
using pcm::testing::random_permutation;

namespace {

bool has_pair(const AxiomReport& r, std::size_t i, std::size_t j)
{
    return std::find(r.witness.pairs.begin(), r.witness.pairs.end(), AlternativePair{i, j}) != r.witness.pairs.end();
}

void check_sound(const AxiomReport& r)
{
    const AxiomReport again = recheck(r);
    CHECK(again.verdict == r.verdict);
    CHECK(again.witness.pairs == r.witness.pairs);
    CHECK(again.witness.indices == r.witness.indices);

    const AxiomReport parsed = report_from_json(to_json(r));
    CHECK(parsed.axiom == r.axiom);
    CHECK(parsed.verdict == r.verdict);
    CHECK(parsed.notes == r.notes);
    CHECK(parsed.witness.matrices == r.witness.matrices);
    CHECK(parsed.witness.rankings == r.witness.rankings);
    CHECK(parsed.witness.pairs == r.witness.pairs);
    CHECK(recheck(parsed).verdict == r.verdict);
}

const std::vector<Pcm>& published_group()
{
    static const std::vector<Pcm> group{reference::matrix_b(), reference::published_b_hat_opposite()};
    return group;
}

}  // namespace

TEST_CASE("names parse case-insensitively")
{
    CHECK(parse_method("EM") == Method::Em);
    CHECK(parse_method("llsm") == Method::Llsm);
    CHECK_THROWS_AS(parse_method("ahp"), std::invalid_argument);
    CHECK(parse_axiom("Gcc") == Axiom::Gcc);
    CHECK(to_string(Axiom::Ano) == "ANO");
    CHECK(to_string(Verdict::SatisfiedHere) == "satisfied-here");
    CHECK_THROWS_AS(parse_axiom("foo"), std::invalid_argument);
}

TEST_CASE("check_irm")
{
    const AxiomReport r = check_irm(Method::Em, reference::matrix_a(), 2, 3);
    CHECK_FALSE(r.violated());
    CHECK(r.witness.matrices.size() == 2);
    CHECK(r.witness.indices == std::vector<std::size_t>{2});
    check_sound(r);
    CHECK_FALSE(check_irm(Method::Em, reference::matrix_b(), 0, 1).violated());
    CHECK_FALSE(check_irm(Method::Llsm, reference::matrix_a(), 4, Entry(Rational(1, 9))).violated());
    CHECK_THROWS(check_irm(Method::Em, reference::matrix_a(), 7, 2));

    std::mt19937_64 rng(101);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 3 + static_cast<std::size_t>(t % 6);
        const Pcm a = random_continuous_pcm(n, rng);
        const double alpha = std::exp(std::uniform_real_distribution<double>(-2, 2)(rng));
        CHECK_FALSE(check_irm(t % 2 ? Method::Em : Method::Llsm, a, rng() % n, alpha).violated());
    }
}

TEST_CASE("check_anonymity")
{
    const Pcm a = reference::matrix_a();
    CHECK_FALSE(check_anonymity(Method::Em, a, Permutation::identity(5)).violated());
    const AxiomReport r = check_anonymity(Method::Em, a, Permutation({4, 2, 0, 1, 3}));
    CHECK_FALSE(r.violated());
    CHECK(r.witness.indices == std::vector<std::size_t>{4, 2, 0, 1, 3});
    check_sound(r);
    CHECK_THROWS_AS(check_anonymity(Method::Em, a, Permutation::identity(3)), std::invalid_argument);

    std::mt19937_64 rng(102);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 3 + static_cast<std::size_t>(t % 6);
        const Pcm m = sample_saaty_pcm(n, rng);
        CHECK_FALSE(check_anonymity(t % 2 ? Method::Em : Method::Llsm, m, random_permutation(n, rng)).violated());
    }
}

TEST_CASE("check_inv")
{
    const AxiomReport a = check_inv(Method::Em, reference::matrix_a());
    CHECK(a.violated());
    CHECK(has_pair(a, 0, 1));
    check_sound(a);

    const AxiomReport b = check_inv(Method::Em, reference::matrix_b());
    CHECK(b.violated());
    CHECK(b.witness.pairs == std::vector<AlternativePair>{{0, 1}});
    CHECK(b.witness.matrices.size() == 2);
    CHECK(to_string(b.witness.rankings[1]) == "4 > 3 > 2 > 1");
    CHECK(b.notes.find("; ") == std::string::npos);
    check_sound(b);

    CHECK_FALSE(check_inv(Method::Llsm, reference::matrix_b()).violated());
    CHECK_FALSE(check_inv(Method::Em, all_ones(4)).violated());
    CHECK_FALSE(check_inv(Method::Em, pcm::testing::consistent_pcm({1, 2, 4, 8})).violated());

    std::mt19937_64 rng(103);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 3 + static_cast<std::size_t>(t % 6);
        CHECK_FALSE(check_inv(Method::Llsm, random_continuous_pcm(n, rng)).violated());
        CHECK_FALSE(check_inv(Method::Em, sample_saaty_pcm(3, rng)).violated());
    }
}

TEST_CASE("check_ai")
{
    const AxiomReport r = check_ai(Method::Em, published_group());
    CHECK(r.violated());
    CHECK(r.witness.pairs == std::vector<AlternativePair>{{1, 0}});
    CHECK(r.witness.inputs == 2);
    CHECK(r.witness.matrices.size() == 3);
    CHECK(to_string(r.witness.rankings[2]) == "1 ~ 2 > 3 ~ 4");
    check_sound(r);

    const std::vector<Pcm> single{reference::matrix_a()};
    CHECK_FALSE(check_ai(Method::Em, single).violated());
    CHECK_THROWS_AS(check_ai(Method::Em, std::span<const Pcm>{}), std::invalid_argument);

    std::mt19937_64 rng(104);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 3 + static_cast<std::size_t>(t % 6);
        std::vector<Pcm> group;
        for (int k = 0; k < 1 + t % 4; ++k) {
            group.push_back(random_continuous_pcm(n, rng));
        }
        CHECK_FALSE(check_ai(Method::Llsm, group).violated());
        const std::vector<Pcm> three{sample_saaty_pcm(3, rng), sample_saaty_pcm(3, rng)};
        CHECK_FALSE(check_ai(Method::Em, three).violated());
    }
}

TEST_CASE("check_gcc")
{
    const AxiomReport r = check_gcc(Method::Em, published_group());
    CHECK(r.violated());
    CHECK(r.witness.indices == std::vector<std::size_t>{1});
    CHECK(r.witness.pairs == std::vector<AlternativePair>{{1, 0}});
    check_sound(r);

    const std::vector<Pcm> ones{all_ones(4), all_ones(4)};
    CHECK_FALSE(check_gcc(Method::Em, ones).violated());
    const std::vector<Pcm> disagree{reference::matrix_b(), opposite(reference::matrix_b())};
    const AxiomReport none = check_gcc(Method::Em, disagree);
    CHECK_FALSE(none.violated());
    CHECK(none.witness.indices.empty());

    std::mt19937_64 rng(105);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 3 + static_cast<std::size_t>(t % 6);
        const Pcm base = random_continuous_pcm(n, rng);
        // Boost one alternative in every member so that unanimity is common.
        const std::size_t star = rng() % n;
        std::vector<Pcm> group;
        for (int k = 0; k < 2 + t % 3; ++k) {
            group.push_back(row_multiply(random_continuous_pcm(n, rng), star, 20.0));
        }
        CHECK_FALSE(check_gcc(Method::Llsm, group).violated());
    }
}

TEST_CASE("INV violations become AI witnesses")
{
    const auto pair = inv_violation_to_ai_witness(Method::Em, reference::matrix_b());
    REQUIRE(pair);
    REQUIRE(pair->size() == 2);
    CHECK((*pair)[1] == opposite(reference::matrix_b()));
    const AxiomReport ai = check_ai(Method::Em, *pair);
    CHECK(ai.violated());
    CHECK(has_pair(ai, 1, 0));

    CHECK_FALSE(inv_violation_to_ai_witness(Method::Em, all_ones(4)));
    CHECK_FALSE(inv_violation_to_ai_witness(Method::Llsm, reference::matrix_b()));
}

TEST_CASE("GCC construction with explicit multipliers reproduces the published matrix")
{
    const std::vector<Pcm> pair{reference::matrix_b(), opposite(reference::matrix_b())};
    CHECK(alpha_lower_bound(Method::Em, pair[1], 1) == doctest::Approx(7.8478).epsilon(1e-4));
    GccConstructionOptions options;
    options.alphas = std::vector<Entry>{1, 9};
    const auto built = build_gcc_counterexample(Method::Em, pair, 1, 0, options);
    CHECK(built.matrices[1] == reference::published_b_hat_opposite());
    CHECK(built.matrices[1].is_exact());
    CHECK(built.report.violated());
    CHECK(built.report.witness.pairs == std::vector<AlternativePair>{{1, 0}});

    options.alphas = std::vector<Entry>{1, 2};
    CHECK_THROWS_AS(build_gcc_counterexample(Method::Em, pair, 1, 0, options), std::invalid_argument);
    options.alphas = std::vector<Entry>{1};
    CHECK_THROWS_AS(build_gcc_counterexample(Method::Em, pair, 1, 0, options), std::invalid_argument);
}

TEST_CASE("GCC construction with automatic multipliers")
{
    const std::vector<Pcm> pair{reference::matrix_b(), opposite(reference::matrix_b())};
    const auto built = build_gcc_counterexample(Method::Em, pair, 1, 0);
    REQUIRE(built.alphas.size() == 2);
    // ceil(1.15 * 7.8478 * 10) / 10
    CHECK(built.alphas[1].exact == Rational(91, 10));
    CHECK(built.alphas[0].exact == Rational(12, 10));
    CHECK(built.report.violated());
    for (std::size_t l = 0; l < 2; ++l) {
        const auto before = em_weights(pair[l]).weights;
        const auto after = em_weights(built.matrices[l]).weights;
        CHECK(std::abs((after[1] / after[0]) / (before[1] / before[0]) - 1.0) <= 1e-8);
        CHECK(ranking_from_weights(after).is_weakly_top(1));
    }
    CHECK_THROWS_AS(build_gcc_counterexample(Method::Em, pair, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_gcc_counterexample(Method::Em, pair, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_gcc_counterexample(Method::Llsm, pair, 1, 0), std::invalid_argument);
}

TEST_CASE("the INV to GCC pipeline succeeds on searched violations")
{
    HuntConfig config;
    config.n = 4;
    config.trials = 20'000;
    config.cr_cap = 0.10;
    config.seed = 7;
    const HuntResult result = hunt(config);
    REQUIRE_FALSE(result.violations.empty());
    for (const auto& v : result.violations) {
        const Pcm& a = v.report.witness.matrices[0];
        const auto pair = inv_violation_to_ai_witness(Method::Em, a);
        REQUIRE(pair);
        const AxiomReport ai = check_ai(Method::Em, *pair);
        REQUIRE(ai.violated());
        const auto [i, j] = ai.witness.pairs.front();
        const auto built = build_gcc_counterexample(Method::Em, *pair, i, j);
        CHECK(built.report.violated());
        check_sound(built.report);
    }
}

TEST_CASE("recheck rejects incomplete witnesses")
{
    AxiomReport r = check_inv(Method::Em, reference::matrix_b());
    r.witness.matrices.clear();
    r.witness.inputs = 0;
    CHECK_THROWS_AS(recheck(r), std::invalid_argument);
    CHECK_THROWS(report_from_json(nlohmann::json{{"axiom", "INV"}, {"verdict", "maybe"}}));
}
