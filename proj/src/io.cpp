#include "pcm/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace pcm::io {

namespace {

Entry entry_from_text(std::string_view text)
{
    if (auto r = parse_rational(text)) {
        return Entry(*r);
    }
    std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(fmt::format("'{}' is not a number or fraction", s));
    }
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) {
        ++used;
    }
    if (used != s.size()) {
        throw std::invalid_argument(fmt::format("'{}' is not a number or fraction", s));
    }
    return Entry(v);
}

std::string located(const std::exception& e, std::size_t i, std::size_t j)
{
    return fmt::format("entry ({}, {}): {}", i + 1, j + 1, e.what());
}

}  // namespace

Entry entry_from_json(const nlohmann::json& value)
{
    if (value.is_number_integer()) {
        return Entry(Rational(value.get<std::int64_t>()));
    }
    if (value.is_number()) {
        return Entry(value.get<double>());
    }
    if (value.is_string()) {
        return entry_from_text(value.get<std::string>());
    }
    throw std::invalid_argument(fmt::format("expected a number or fraction string, got {}", value.dump()));
}

nlohmann::json entry_to_json(const Entry& e)
{
    if (e.exact) {
        if (e.exact->is_integer()) {
            return e.exact->num();
        }
        return e.exact->str();
    }
    return e.value;
}

Pcm matrix_from_json(const nlohmann::json& doc)
{
    if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array()) {
        throw std::invalid_argument("matrix JSON must be an object with a \"rows\" array");
    }
    const auto& rows = doc["rows"];
    std::vector<std::vector<Entry>> entries;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array()) {
            throw std::invalid_argument(fmt::format("row {} is not an array", i + 1));
        }
        auto& row = entries.emplace_back();
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            try {
                row.push_back(entry_from_json(rows[i][j]));
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument(located(e, i, j));
            }
        }
    }
    if (doc.contains("n")) {
        if (!doc["n"].is_number_integer() || doc["n"].get<std::int64_t>() != static_cast<std::int64_t>(entries.size())) {
            throw std::invalid_argument(fmt::format("\"n\" = {} does not match the {} rows given", doc["n"].dump(), entries.size()));
        }
    }
    return Pcm(entries);
}

Pcm parse_csv(std::string_view text)
{
    std::vector<std::vector<Entry>> entries;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        auto& row = entries.emplace_back();
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            try {
                row.push_back(entry_from_text(cell));
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument(located(e, entries.size() - 1, row.size()));
            }
        }
    }
    return Pcm(entries);
}

Pcm parse_matrix(std::string_view text)
{
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::invalid_argument(fmt::format("malformed JSON: {}", e.what()));
        }
        return matrix_from_json(doc);
    }
    return parse_csv(text);
}

Pcm read_matrix(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument(fmt::format("cannot open {}", path.string()));
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_matrix(buffer.str());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(fmt::format("{}: {}", path.string(), e.what()));
    }
}

nlohmann::json matrix_to_json(const Pcm& a)
{
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t j = 0; j < a.size(); ++j) {
            row.push_back(entry_to_json(a.entry(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return {{"n", a.size()}, {"rows", std::move(rows)}};
}

void write_matrix(const std::filesystem::path& path, const Pcm& a)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot write {}", path.string()));
    }
    out << matrix_to_json(a).dump(2) << '\n';
}

}  // namespace pcm::io
