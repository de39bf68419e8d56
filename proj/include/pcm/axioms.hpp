#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pcm/matrix.hpp"
#include "pcm/weighting.hpp"

namespace pcm {

enum class Method { Em, Llsm };

std::string_view to_string(Method m);
// Accepts "em" / "llsm" in any case.
Method parse_method(std::string_view name);

WeightVector method_weights(Method m, const Pcm& a);

enum class Axiom { Ano, Irm, Ai, Gcc, Inv };

std::string_view to_string(Axiom a);
Axiom parse_axiom(std::string_view name);

// A checker can refute an axiom on an instance, never prove it.
enum class Verdict { SatisfiedHere, Violated };

std::string_view to_string(Verdict v);

struct AlternativePair {
    std::size_t first;
    std::size_t second;

    friend bool operator==(const AlternativePair&, const AlternativePair&) = default;
};

// Everything needed to re-run a check from scratch. `matrices` holds the
// checker inputs first (`inputs` of them) followed by derived matrices:
// the row-multiplied, permuted, aggregated, or opposite matrix. `weights`
// and `rankings` run parallel to `matrices`.
struct Witness {
    Method method = Method::Em;
    double tie_tol = kDefaultTieTol;
    double tol = 0.0;
    std::size_t inputs = 0;
    std::vector<Pcm> matrices;
    // IRM: the multiplied row. ANO: the permutation mapping. GCC: the
    // unanimously top alternatives that lost their place.
    std::vector<std::size_t> indices;
    std::optional<Entry> alpha;
    // Offending pairs. AI: first is unanimously weakly preferred to second.
    // INV: ordered the same way under A and its opposite.
    std::vector<AlternativePair> pairs;
    std::vector<WeightVector> weights;
    std::vector<Ranking> rankings;
};

struct AxiomReport {
    Axiom axiom;
    Verdict verdict;
    Witness witness;
    std::string notes;

    bool violated() const noexcept { return verdict == Verdict::Violated; }
};

inline constexpr double kDefaultIrmTol = 1e-8;

// f_i(Â)/f_j(Â) == alpha f_i(A)/f_j(A) for all j != i, within relative tol,
// where Â multiplies row i by alpha.
AxiomReport check_irm(Method m, const Pcm& a, std::size_t i, const Entry& alpha, double tol = kDefaultIrmTol);

// Alternative k of permute(A, sigma) must be ranked like alternative
// sigma[k] of A.
AxiomReport check_anonymity(Method m, const Pcm& a, const Permutation& sigma, double tie_tol = kDefaultTieTol);

// Aggregation invariance over the geometric-mean aggregate.
AxiomReport check_ai(Method m, std::span<const Pcm> matrices, double tie_tol = kDefaultTieTol);

// Group-coherence for choice over the geometric-mean aggregate.
AxiomReport check_gcc(Method m, std::span<const Pcm> matrices, double tie_tol = kDefaultTieTol);

// Ranking of opposite(A) must be the reversed ranking of A.
AxiomReport check_inv(Method m, const Pcm& a, double tie_tol = kDefaultTieTol);

// Re-runs the check described by a report using only its witness.
AxiomReport recheck(const AxiomReport& report);

// [A, opposite(A)] when A violates inversion. Their aggregate is the
// all-ones matrix, where anonymity forces a full tie, so check_ai fails on
// the pair.
std::optional<std::vector<Pcm>> inv_violation_to_ai_witness(Method m, const Pcm& a, double tie_tol = kDefaultTieTol);

// max_m f_m(A) / f_i(A): any row multiplier above it makes i the top
// alternative.
double alpha_lower_bound(Method m, const Pcm& a, std::size_t i);

struct GccConstructionOptions {
    double tie_tol = kDefaultTieTol;
    double margin = 1.15;
    double fallback_margin = 1.5;
    // One multiplier per input; overrides the margin rule.
    std::optional<std::vector<Entry>> alphas;
};

struct GccCounterexample {
    std::vector<Pcm> matrices;
    std::vector<Entry> alphas;
    std::vector<double> alpha_bounds;
    AxiomReport report;
};

// Turns an aggregation-invariance violation on (i, j) into a
// group-coherence violation: each input is multiplied on rows i and j by
// alpha > max_m f_m / f_i, which makes i top while keeping f_i / f_j fixed.
// Automatic multipliers are margin * bound rounded up to one decimal.
//
// Throws std::invalid_argument when the inputs are not an AI violation for
// (i, j) or an explicit alpha fails to make i top, and std::runtime_error
// when the method does not preserve f_i / f_j under the multiplication.
GccCounterexample build_gcc_counterexample(Method m, std::span<const Pcm> matrices, std::size_t i, std::size_t j,
                                           const GccConstructionOptions& options = {});

nlohmann::json to_json(const Ranking& r);
Ranking ranking_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const AxiomReport& report);
AxiomReport report_from_json(const nlohmann::json& doc);

}  // namespace pcm
