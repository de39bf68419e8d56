#include "pcm/axioms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "pcm/io.hpp"

namespace pcm {

namespace {

std::string trimmed(std::string notes)
{
    if (notes.ends_with("; ")) {
        notes.resize(notes.size() - 2);
    }
    return notes;
}

using nlohmann::json;

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

char relation_symbol(int c)
{
    return c > 0 ? '>' : (c < 0 ? '<' : '~');
}

void add_evaluation(Witness& w, const Pcm& a)
{
    w.matrices.push_back(a);
    w.weights.push_back(method_weights(w.method, a));
    w.rankings.push_back(ranking_from_weights(w.weights.back(), w.tie_tol));
}

Witness start_witness(Method m, double tie_tol, std::span<const Pcm> inputs)
{
    Witness w;
    w.method = m;
    w.tie_tol = tie_tol;
    w.inputs = inputs.size();
    for (const auto& a : inputs) {
        add_evaluation(w, a);
    }
    return w;
}

void require_common_size(std::span<const Pcm> matrices)
{
    if (matrices.empty()) {
        throw std::invalid_argument("at least one matrix is required");
    }
    for (std::size_t l = 1; l < matrices.size(); ++l) {
        if (matrices[l].size() != matrices[0].size()) {
            throw std::invalid_argument(fmt::format("matrix {} has size {}, expected {}", l + 1, matrices[l].size(), matrices[0].size()));
        }
    }
}

bool unanimous_weak(std::span<const Ranking> inputs, std::size_t i, std::size_t j)
{
    return std::all_of(inputs.begin(), inputs.end(), [&](const Ranking& r) { return r.weakly_prefers(i, j); });
}

bool some_strict(std::span<const Ranking> inputs, std::size_t i, std::size_t j)
{
    return std::any_of(inputs.begin(), inputs.end(), [&](const Ranking& r) { return r.prefers(i, j); });
}

// Pairs (i, j) that break aggregation invariance, given input rankings and
// the aggregate ranking.
std::vector<AlternativePair> ai_offenders(std::span<const Ranking> inputs, const Ranking& agg)
{
    std::vector<AlternativePair> out;
    for (std::size_t i = 0; i < agg.size(); ++i) {
        for (std::size_t j = 0; j < agg.size(); ++j) {
            if (i == j || !unanimous_weak(inputs, i, j)) {
                continue;
            }
            if (agg.prefers(j, i) || (agg.indifferent(i, j) && some_strict(inputs, i, j))) {
                out.push_back({i, j});
            }
        }
    }
    return out;
}

}  // namespace

std::string_view to_string(Method m)
{
    return m == Method::Em ? "em" : "llsm";
}

Method parse_method(std::string_view name)
{
    const auto s = lower(name);
    if (s == "em") {
        return Method::Em;
    }
    if (s == "llsm") {
        return Method::Llsm;
    }
    throw std::invalid_argument(fmt::format("unknown method '{}' (expected em or llsm)", name));
}

WeightVector method_weights(Method m, const Pcm& a)
{
    return m == Method::Em ? em_weights(a).weights : llsm_weights(a);
}

std::string_view to_string(Axiom a)
{
    switch (a) {
    case Axiom::Ano: return "ANO";
    case Axiom::Irm: return "IRM";
    case Axiom::Ai: return "AI";
    case Axiom::Gcc: return "GCC";
    case Axiom::Inv: return "INV";
    }
    return "?";
}

Axiom parse_axiom(std::string_view name)
{
    const auto s = lower(name);
    if (s == "ano") return Axiom::Ano;
    if (s == "irm") return Axiom::Irm;
    if (s == "ai") return Axiom::Ai;
    if (s == "gcc") return Axiom::Gcc;
    if (s == "inv") return Axiom::Inv;
    throw std::invalid_argument(fmt::format("unknown axiom '{}' (expected ano, irm, ai, gcc or inv)", name));
}

std::string_view to_string(Verdict v)
{
    return v == Verdict::Violated ? "violated" : "satisfied-here";
}

AxiomReport check_irm(Method m, const Pcm& a, std::size_t i, const Entry& alpha, double tol)
{
    const Pcm scaled = row_multiply(a, i, alpha);
    Witness w = start_witness(m, kDefaultTieTol, std::span(&a, 1));
    w.tol = tol;
    w.indices = {i};
    w.alpha = alpha;
    add_evaluation(w, scaled);
    const auto& before = w.weights[0];
    const auto& after = w.weights[1];
    std::string notes;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (j == i) {
            continue;
        }
        const double got = after[i] / after[j];
        const double want = alpha.value * before[i] / before[j];
        if (std::abs(got / want - 1.0) > tol) {
            w.pairs.push_back({i, j});
            notes += fmt::format("w{0}/w{1} = {2:.12g} after row multiplication, expected {3:.12g}; ", i + 1, j + 1, got, want);
        }
    }
    const auto verdict = w.pairs.empty() ? Verdict::SatisfiedHere : Verdict::Violated;
    if (notes.empty()) {
        notes = fmt::format("every ratio w{}/wj scaled by {:.12g}", i + 1, alpha.value);
    }
    return {Axiom::Irm, verdict, std::move(w), trimmed(std::move(notes))};
}

AxiomReport check_anonymity(Method m, const Pcm& a, const Permutation& sigma, double tie_tol)
{
    const Pcm permuted = permute(a, sigma);
    Witness w = start_witness(m, tie_tol, std::span(&a, 1));
    w.indices = sigma.mapping();
    add_evaluation(w, permuted);
    const auto& original = w.rankings[0];
    const auto& relabeled = w.rankings[1];
    std::string notes;
    for (std::size_t k = 0; k < a.size(); ++k) {
        for (std::size_t l = k + 1; l < a.size(); ++l) {
            const int got = relabeled.compare(k, l);
            const int want = original.compare(sigma[k], sigma[l]);
            if (got != want) {
                w.pairs.push_back({k, l});
                notes += fmt::format("{} {} {} after permutation but {} {} {} before; ", k + 1, relation_symbol(got), l + 1, sigma[k] + 1,
                                     relation_symbol(want), sigma[l] + 1);
            }
        }
    }
    const auto verdict = w.pairs.empty() ? Verdict::SatisfiedHere : Verdict::Violated;
    if (notes.empty()) {
        notes = "ranking follows the relabeling";
    }
    return {Axiom::Ano, verdict, std::move(w), trimmed(std::move(notes))};
}

AxiomReport check_ai(Method m, std::span<const Pcm> matrices, double tie_tol)
{
    require_common_size(matrices);
    Witness w = start_witness(m, tie_tol, matrices);
    add_evaluation(w, aggregate(matrices));
    const std::span<const Ranking> inputs(w.rankings.data(), w.inputs);
    const Ranking& agg = w.rankings.back();
    w.pairs = ai_offenders(inputs, agg);
    std::string notes;
    for (auto [i, j] : w.pairs) {
        const auto strict = std::count_if(inputs.begin(), inputs.end(), [&](const Ranking& r) { return r.prefers(i, j); });
        notes += fmt::format("{0} >= {1} in every input ({2} of {3} strict) but {0} {4} {1} in the aggregate; ", i + 1, j + 1, strict,
                             inputs.size(), relation_symbol(agg.compare(i, j)));
    }
    const auto verdict = w.pairs.empty() ? Verdict::SatisfiedHere : Verdict::Violated;
    if (notes.empty()) {
        notes = "every unanimous preference survives aggregation";
    }
    return {Axiom::Ai, verdict, std::move(w), trimmed(std::move(notes))};
}

AxiomReport check_gcc(Method m, std::span<const Pcm> matrices, double tie_tol)
{
    require_common_size(matrices);
    Witness w = start_witness(m, tie_tol, matrices);
    add_evaluation(w, aggregate(matrices));
    const std::span<const Ranking> inputs(w.rankings.data(), w.inputs);
    const Ranking& agg = w.rankings.back();
    std::string notes;
    std::size_t unanimous_top = 0;
    for (std::size_t i = 0; i < agg.size(); ++i) {
        const bool weakly_top = std::all_of(inputs.begin(), inputs.end(), [&](const Ranking& r) { return r.is_weakly_top(i); });
        if (!weakly_top) {
            continue;
        }
        ++unanimous_top;
        const bool strictly_somewhere = std::any_of(inputs.begin(), inputs.end(), [&](const Ranking& r) { return r.is_strictly_top(i); });
        const bool lost_weak = !agg.is_weakly_top(i);
        const bool lost_strict = strictly_somewhere && !agg.is_strictly_top(i);
        if (!lost_weak && !lost_strict) {
            continue;
        }
        w.indices.push_back(i);
        for (std::size_t j = 0; j < agg.size(); ++j) {
            if (j != i && agg.weakly_prefers(j, i)) {
                w.pairs.push_back({i, j});
                notes += fmt::format("{0} is top in every input{1} but {0} {2} {3} in the aggregate; ", i + 1,
                                     strictly_somewhere ? " (strictly in at least one)" : "", relation_symbol(agg.compare(i, j)), j + 1);
            }
        }
    }
    const auto verdict = w.indices.empty() ? Verdict::SatisfiedHere : Verdict::Violated;
    if (notes.empty()) {
        notes = unanimous_top == 0 ? "no alternative is top in every input" : "unanimous top alternatives stay top";
    }
    return {Axiom::Gcc, verdict, std::move(w), trimmed(std::move(notes))};
}

AxiomReport check_inv(Method m, const Pcm& a, double tie_tol)
{
    Witness w = start_witness(m, tie_tol, std::span(&a, 1));
    add_evaluation(w, opposite(a));
    const Ranking& r = w.rankings[0];
    const Ranking& ro = w.rankings[1];
    std::string notes;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            const int c = r.compare(i, j);
            const int co = ro.compare(i, j);
            if (co != -c) {
                w.pairs.push_back({i, j});
                notes += fmt::format("{0} {2} {1} under A and {0} {3} {1} under its opposite; ", i + 1, j + 1, relation_symbol(c),
                                     relation_symbol(co));
            }
        }
    }
    const auto verdict = w.pairs.empty() ? Verdict::SatisfiedHere : Verdict::Violated;
    if (notes.empty()) {
        notes = "opposite matrix reverses the ranking";
    }
    return {Axiom::Inv, verdict, std::move(w), trimmed(std::move(notes))};
}

AxiomReport recheck(const AxiomReport& report)
{
    const Witness& w = report.witness;
    if (w.inputs == 0 || w.matrices.size() < w.inputs) {
        throw std::invalid_argument("witness has no input matrices");
    }
    const std::span<const Pcm> inputs(w.matrices.data(), w.inputs);
    switch (report.axiom) {
    case Axiom::Irm:
        if (w.indices.size() != 1 || !w.alpha) {
            throw std::invalid_argument("IRM witness needs one row index and alpha");
        }
        return check_irm(w.method, inputs[0], w.indices[0], *w.alpha, w.tol);
    case Axiom::Ano:
        return check_anonymity(w.method, inputs[0], Permutation(w.indices), w.tie_tol);
    case Axiom::Ai:
        return check_ai(w.method, inputs, w.tie_tol);
    case Axiom::Gcc:
        return check_gcc(w.method, inputs, w.tie_tol);
    case Axiom::Inv:
        return check_inv(w.method, inputs[0], w.tie_tol);
    }
    throw std::invalid_argument("unknown axiom");
}

std::optional<std::vector<Pcm>> inv_violation_to_ai_witness(Method m, const Pcm& a, double tie_tol)
{
    if (!check_inv(m, a, tie_tol).violated()) {
        return std::nullopt;
    }
    return std::vector<Pcm>{a, opposite(a)};
}

double alpha_lower_bound(Method m, const Pcm& a, std::size_t i)
{
    if (i >= a.size()) {
        throw std::out_of_range(fmt::format("alternative {} out of range for n = {}", i + 1, a.size()));
    }
    const auto w = method_weights(m, a);
    const auto v = w.values();
    return *std::max_element(v.begin(), v.end()) / w[i];
}

GccCounterexample build_gcc_counterexample(Method m, std::span<const Pcm> matrices, std::size_t i, std::size_t j,
                                           const GccConstructionOptions& options)
{
    require_common_size(matrices);
    const std::size_t n = matrices[0].size();
    if (i >= n || j >= n || i == j) {
        throw std::invalid_argument(fmt::format("({}, {}) is not a pair of distinct alternatives for n = {}", i + 1, j + 1, n));
    }
    if (options.alphas && options.alphas->size() != matrices.size()) {
        throw std::invalid_argument(fmt::format("{} multipliers given for {} matrices", options.alphas->size(), matrices.size()));
    }

    const AxiomReport ai = check_ai(m, matrices, options.tie_tol);
    if (std::find(ai.witness.pairs.begin(), ai.witness.pairs.end(), AlternativePair{i, j}) == ai.witness.pairs.end()) {
        throw std::invalid_argument(fmt::format("inputs are not an aggregation-invariance violation for ({}, {})", i + 1, j + 1));
    }

    GccCounterexample out;
    for (std::size_t l = 0; l < matrices.size(); ++l) {
        const Pcm& a = matrices[l];
        const auto& w = ai.witness.weights[l];
        const double bound = alpha_lower_bound(m, a, i);
        out.alpha_bounds.push_back(bound);

        auto attempt = [&](const Entry& alpha) -> std::optional<Pcm> {
            Pcm scaled = row_multiply(row_multiply(a, i, alpha), j, alpha);
            const auto ws = method_weights(m, scaled);
            const double ratio_before = w[i] / w[j];
            const double ratio_after = ws[i] / ws[j];
            if (std::abs(ratio_after / ratio_before - 1.0) > kDefaultIrmTol) {
                throw std::runtime_error(fmt::format("method {} does not preserve w{}/w{} under row multiplication on matrix {}", to_string(m),
                                                     i + 1, j + 1, l + 1));
            }
            if (!ranking_from_weights(ws, options.tie_tol).is_weakly_top(i)) {
                return std::nullopt;
            }
            return scaled;
        };

        if (options.alphas) {
            const Entry& alpha = (*options.alphas)[l];
            auto scaled = attempt(alpha);
            if (!scaled) {
                throw std::invalid_argument(fmt::format("multiplier {} does not make {} top in matrix {} (bound {:.6f})", alpha.value, i + 1,
                                                        l + 1, bound));
            }
            out.matrices.push_back(std::move(*scaled));
            out.alphas.push_back(alpha);
            continue;
        }

        bool done = false;
        for (double margin : {options.margin, options.fallback_margin}) {
            // Rounded up to one decimal so witnesses stay readable.
            const auto tenths = static_cast<std::int64_t>(std::ceil(margin * bound * 10.0));
            const Entry alpha(Rational(tenths, 10));
            if (auto scaled = attempt(alpha)) {
                out.matrices.push_back(std::move(*scaled));
                out.alphas.push_back(alpha);
                done = true;
                break;
            }
        }
        if (!done) {
            throw std::runtime_error(fmt::format("row multiplication failed to make {} top in matrix {}", i + 1, l + 1));
        }
    }
    out.report = check_gcc(m, out.matrices, options.tie_tol);
    return out;
}

json to_json(const Ranking& r)
{
    auto classes = json::array();
    for (const auto& c : r.classes()) {
        auto cls = json::array();
        for (std::size_t k : c) {
            cls.push_back(k + 1);
        }
        classes.push_back(std::move(cls));
    }
    return classes;
}

Ranking ranking_from_json(const json& doc)
{
    std::vector<std::vector<std::size_t>> classes;
    for (const auto& c : doc) {
        auto& cls = classes.emplace_back();
        for (const auto& k : c) {
            const auto id = k.get<std::size_t>();
            if (id == 0) {
                throw std::invalid_argument("ranking ids are 1-based");
            }
            cls.push_back(id - 1);
        }
    }
    return Ranking(std::move(classes));
}

json to_json(const AxiomReport& report)
{
    const Witness& w = report.witness;
    auto matrices = json::array();
    for (const auto& a : w.matrices) {
        matrices.push_back(io::matrix_to_json(a));
    }
    auto indices = json::array();
    for (std::size_t k : w.indices) {
        indices.push_back(k + 1);
    }
    auto pairs = json::array();
    for (auto [i, j] : w.pairs) {
        pairs.push_back({i + 1, j + 1});
    }
    auto weights = json::array();
    for (const auto& v : w.weights) {
        weights.push_back(std::vector<double>(v.values().begin(), v.values().end()));
    }
    auto rankings = json::array();
    for (const auto& r : w.rankings) {
        rankings.push_back(to_json(r));
    }
    json witness = {
        {"method", to_string(w.method)},
        {"tie_tol", w.tie_tol},
        {"tol", w.tol},
        {"inputs", w.inputs},
        {"matrices", std::move(matrices)},
        {"indices", std::move(indices)},
        {"pairs", std::move(pairs)},
        {"weights", std::move(weights)},
        {"rankings", std::move(rankings)},
    };
    if (w.alpha) {
        witness["alpha"] = io::entry_to_json(*w.alpha);
    }
    return {
        {"axiom", to_string(report.axiom)},
        {"verdict", to_string(report.verdict)},
        {"witness", std::move(witness)},
        {"notes", report.notes},
    };
}

AxiomReport report_from_json(const json& doc)
{
    const auto& wj = doc.at("witness");
    Witness w;
    w.method = parse_method(wj.at("method").get<std::string>());
    w.tie_tol = wj.at("tie_tol").get<double>();
    w.tol = wj.at("tol").get<double>();
    w.inputs = wj.at("inputs").get<std::size_t>();
    for (const auto& a : wj.at("matrices")) {
        w.matrices.push_back(io::matrix_from_json(a));
    }
    for (const auto& k : wj.at("indices")) {
        w.indices.push_back(k.get<std::size_t>() - 1);
    }
    for (const auto& p : wj.at("pairs")) {
        w.pairs.push_back({p.at(0).get<std::size_t>() - 1, p.at(1).get<std::size_t>() - 1});
    }
    for (const auto& v : wj.at("weights")) {
        w.weights.emplace_back(v.get<std::vector<double>>());
    }
    for (const auto& r : wj.at("rankings")) {
        w.rankings.push_back(ranking_from_json(r));
    }
    if (wj.contains("alpha")) {
        w.alpha = io::entry_from_json(wj["alpha"]);
    }
    const auto verdict_text = doc.at("verdict").get<std::string>();
    if (verdict_text != "violated" && verdict_text != "satisfied-here") {
        throw std::invalid_argument(fmt::format("unknown verdict '{}'", verdict_text));
    }
    return {
        parse_axiom(doc.at("axiom").get<std::string>()),
        verdict_text == "violated" ? Verdict::Violated : Verdict::SatisfiedHere,
        std::move(w),
        doc.value("notes", std::string{}),
    };
}

}  // namespace pcm
