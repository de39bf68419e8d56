#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <nlohmann/json.hpp>

#include "pcm/axioms.hpp"

namespace pcm {

// The 17-point scale {1/9, ..., 1/2, 1, 2, ..., 9}.
const std::vector<Rational>& saaty_scale();

// Upper-triangle entries drawn uniformly from the Saaty scale.
Pcm sample_saaty_pcm(std::size_t n, std::mt19937_64& rng);

// Seed for trial `trial` of a run seeded with `seed`. Trials draw from
// independent streams, so results do not depend on scheduling.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

struct HuntConfig {
    std::size_t n = 4;
    std::size_t trials = 10'000;
    double cr_cap = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    Axiom target = Axiom::Inv;
    Method method = Method::Em;
    double tie_tol = kDefaultTieTol;
    // Matrices per trial for AI/GCC targets.
    std::size_t group_size = 2;
    // 0 picks the hardware concurrency. Does not affect results.
    unsigned threads = 0;
};

// Throws std::invalid_argument unless 3 <= n <= 10, trials >= 1,
// cr_cap >= 0, group_size >= 1 and the target is INV, AI or GCC.
void validate(const HuntConfig& config);

struct HuntViolation {
    std::size_t trial;
    AxiomReport report;
};

struct HuntResult {
    HuntConfig config;
    std::vector<HuntViolation> violations;
    // Trials whose matrices all passed the CR filter.
    std::size_t tested = 0;

    // violations / tested, absent when nothing survived the filter.
    std::optional<double> violation_rate() const;
};

HuntResult hunt(const HuntConfig& config);

// Thread count is left out so that equal configurations serialize to
// identical bytes.
nlohmann::json to_json(const HuntConfig& config);
nlohmann::json to_json(const HuntResult& result);

// Writes every violation as a report file plus one matrix file per input.
// Returns the files written.
std::vector<std::filesystem::path> write_witnesses(const HuntResult& result, const std::filesystem::path& dir);

}  // namespace pcm
