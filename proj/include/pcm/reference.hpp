#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pcm/matrix.hpp"

// Published counterexamples for the eigenvector method, embedded as exact
// rationals, and a regression runner that recomputes every published value.
namespace pcm::reference {

// 5x5 matrix violating inversion (lambda ~ 5.348, CR ~ 0.078).
Pcm matrix_a();
// 4x4 matrix violating inversion with CR below 0.10 (lambda ~ 4.158).
Pcm matrix_b();
// opposite(B) multiplied on rows 1 and 2 by 9, as published.
Pcm published_b_hat_opposite();
// B aggregated with the matrix above, as published.
Pcm published_group_matrix();

struct Check {
    std::string quantity;
    std::string expected;
    std::string computed;
    // Absolute tolerance; 0 for exact comparisons.
    double tolerance;
    bool pass;
};

struct CaseReport {
    std::string id;
    std::vector<Check> checks;

    bool passed() const;
};

// "lemma43-A", "lemma43-B", "prop42".
const std::vector<std::string>& case_ids();

// Throws std::invalid_argument for an unknown id.
CaseReport run_case(std::string_view id);

}  // namespace pcm::reference
