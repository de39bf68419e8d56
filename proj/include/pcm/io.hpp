#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "pcm/matrix.hpp"

namespace pcm::io {

// Matrix file format:
//   {"n": 3, "rows": [[1, "1/3", 5], ["3", 1, 2.5], ...]}
// Entries are JSON numbers or strings holding "p/q", an integer, or a
// decimal. Integers and strings are read as exact rationals. Plain CSV with
// one row per line is accepted as well.
//
// All readers throw std::invalid_argument with a message naming the
// offending entry.

Pcm matrix_from_json(const nlohmann::json& doc);
Pcm parse_csv(std::string_view text);

// Dispatches on content: a leading '{' selects JSON, anything else CSV.
Pcm parse_matrix(std::string_view text);
Pcm read_matrix(const std::filesystem::path& path);

// Exact entries are written as integers or "p/q" strings; everything else
// as a round-trip double.
nlohmann::json entry_to_json(const Entry& e);
Entry entry_from_json(const nlohmann::json& value);

nlohmann::json matrix_to_json(const Pcm& a);
void write_matrix(const std::filesystem::path& path, const Pcm& a);

}  // namespace pcm::io
