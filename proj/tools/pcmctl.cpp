// pcmctl: weights, rankings, aggregation, axiom checks and violation hunts
// for pairwise comparison matrices.
//
// Exit codes: 0 success or satisfied-here, 1 violation found (check only),
// 2 usage or data error.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "pcm/axioms.hpp"
#include "pcm/io.hpp"
#include "pcm/reference.hpp"
#include "pcm/search.hpp"
#include "pcm/weighting.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kViolated = 1;
constexpr int kUsage = 2;

struct GlobalFlags {
    std::string method = "em";
    double tol = 1e-12;
    double tie_tol = pcm::kDefaultTieTol;
    std::string format = "human";
    std::uint64_t seed = 0;
    std::string out;

    bool json() const { return format == "json"; }
};

json weights_json(const pcm::WeightVector& w)
{
    return std::vector<double>(w.values().begin(), w.values().end());
}

std::vector<pcm::Pcm> read_all(const std::vector<std::string>& paths)
{
    std::vector<pcm::Pcm> out;
    out.reserve(paths.size());
    for (const auto& p : paths) {
        out.push_back(pcm::io::read_matrix(p));
    }
    return out;
}

std::string cr_text(const std::optional<double>& cr)
{
    if (!cr) {
        return "n/a";
    }
    return fmt::format("{:.4f}{}", *cr, *cr <= pcm::kAcceptableCr ? "" : " (above 0.10)");
}

int cmd_weights(const GlobalFlags& g, const std::string& path)
{
    const auto a = pcm::io::read_matrix(path);
    const auto method = pcm::parse_method(g.method);
    if (method == pcm::Method::Em) {
        const auto em = pcm::em_weights(a, pcm::EmOptions{.tol = g.tol});
        const auto ranking = pcm::ranking_from_weights(em.weights, g.tie_tol);
        if (g.json()) {
            json doc = {{"method", "em"},
                        {"weights", weights_json(em.weights)},
                        {"lambda_max", em.lambda_max},
                        {"cr", em.cr ? json(*em.cr) : json(nullptr)},
                        {"iterations", em.iterations},
                        {"ranking", pcm::to_json(ranking)}};
            std::cout << doc.dump(2) << '\n';
            return kOk;
        }
        for (std::size_t k = 0; k < em.weights.size(); ++k) {
            std::cout << fmt::format("w{:<3} {:.6f}\n", k + 1, em.weights[k]);
        }
        std::cout << fmt::format("lambda_max  {:.4f}\nCR          {}\nranking     {}\n", em.lambda_max, cr_text(em.cr), pcm::to_string(ranking));
        return kOk;
    }
    const auto w = pcm::llsm_weights(a);
    const auto ranking = pcm::ranking_from_weights(w, g.tie_tol);
    if (g.json()) {
        std::cout << json{{"method", "llsm"}, {"weights", weights_json(w)}, {"ranking", pcm::to_json(ranking)}}.dump(2) << '\n';
        return kOk;
    }
    for (std::size_t k = 0; k < w.size(); ++k) {
        std::cout << fmt::format("w{:<3} {:.6f}\n", k + 1, w[k]);
    }
    std::cout << fmt::format("ranking     {}\n", pcm::to_string(ranking));
    return kOk;
}

int cmd_rank(const GlobalFlags& g, const std::string& path)
{
    const auto a = pcm::io::read_matrix(path);
    const auto ranking = pcm::ranking_from_weights(pcm::method_weights(pcm::parse_method(g.method), a), g.tie_tol);
    if (g.json()) {
        std::cout << pcm::to_json(ranking).dump() << '\n';
    } else {
        std::cout << pcm::to_string(ranking) << '\n';
    }
    return kOk;
}

int cmd_aggregate(const GlobalFlags& g, const std::vector<std::string>& paths, bool show_weights)
{
    const auto matrices = read_all(paths);
    const auto agg = pcm::aggregate(matrices);
    if (!g.out.empty()) {
        pcm::io::write_matrix(g.out, agg);
        std::cerr << "wrote " << g.out << '\n';
    } else {
        std::cout << pcm::io::matrix_to_json(agg).dump(2) << '\n';
    }
    if (show_weights) {
        const auto w = pcm::method_weights(pcm::parse_method(g.method), agg);
        if (g.json()) {
            std::cout << json{{"group_weights", weights_json(w)}}.dump() << '\n';
        } else {
            for (std::size_t k = 0; k < w.size(); ++k) {
                std::cout << fmt::format("w{:<3} {:.6f}\n", k + 1, w[k]);
            }
        }
    }
    return kOk;
}

void print_report(const pcm::AxiomReport& r)
{
    const auto& w = r.witness;
    std::cout << fmt::format("{} ({}): {}\n", pcm::to_string(r.axiom), pcm::to_string(w.method), pcm::to_string(r.verdict));
    for (std::size_t l = 0; l < w.matrices.size(); ++l) {
        const auto label = l < w.inputs ? fmt::format("input {}", l + 1) : std::string("derived");
        std::cout << fmt::format("  {:<8} ranking {:<24} weights", label, pcm::to_string(w.rankings[l]));
        for (double x : w.weights[l].values()) {
            std::cout << fmt::format(" {:.4f}", x);
        }
        std::cout << '\n';
    }
    if (!w.pairs.empty()) {
        std::cout << "  pairs  ";
        for (auto [i, j] : w.pairs) {
            std::cout << fmt::format(" ({},{})", i + 1, j + 1);
        }
        std::cout << '\n';
    }
    std::cout << "  notes   " << r.notes << '\n';
}

struct CheckFlags {
    std::string axiom;
    std::vector<std::string> files;
    std::size_t row = 0;
    std::string alpha;
    std::vector<std::size_t> perm;
};

int cmd_check(const GlobalFlags& g, const CheckFlags& c)
{
    const auto axiom = pcm::parse_axiom(c.axiom);
    const auto method = pcm::parse_method(g.method);
    const bool single = axiom == pcm::Axiom::Inv || axiom == pcm::Axiom::Irm || axiom == pcm::Axiom::Ano;
    if (single && c.files.size() != 1) {
        throw CLI::ValidationError(fmt::format("check {} takes exactly one matrix file, got {}", c.axiom, c.files.size()));
    }
    if (c.files.empty()) {
        throw CLI::ValidationError(fmt::format("check {} needs at least one matrix file", c.axiom));
    }
    const auto matrices = read_all(c.files);
    const auto report = [&]() -> pcm::AxiomReport {
        switch (axiom) {
        case pcm::Axiom::Inv: return pcm::check_inv(method, matrices[0], g.tie_tol);
        case pcm::Axiom::Ai: return pcm::check_ai(method, matrices, g.tie_tol);
        case pcm::Axiom::Gcc: return pcm::check_gcc(method, matrices, g.tie_tol);
        case pcm::Axiom::Ano:
            if (c.perm.empty()) {
                throw CLI::ValidationError("check ano needs --perm");
            }
            return pcm::check_anonymity(method, matrices[0], pcm::Permutation::from_one_based(c.perm), g.tie_tol);
        case pcm::Axiom::Irm: {
            if (c.row == 0 || c.alpha.empty()) {
                throw CLI::ValidationError("check irm needs --row and --alpha");
            }
            const auto alpha = pcm::io::entry_from_json(json(c.alpha));
            const double tol = g.tol > 1e-12 ? g.tol : pcm::kDefaultIrmTol;
            return pcm::check_irm(method, matrices[0], c.row - 1, alpha, tol);
        }
        }
        throw CLI::ValidationError("unknown axiom");
    }();
    if (g.json()) {
        std::cout << pcm::to_json(report).dump(2) << '\n';
    } else {
        print_report(report);
    }
    return report.violated() ? kViolated : kOk;
}

int cmd_paper(const GlobalFlags& g, const std::string& id)
{
    const auto report = pcm::reference::run_case(id);
    if (g.json()) {
        auto checks = json::array();
        for (const auto& c : report.checks) {
            checks.push_back({{"quantity", c.quantity}, {"expected", c.expected}, {"computed", c.computed}, {"tolerance", c.tolerance}, {"pass", c.pass}});
        }
        std::cout << json{{"case", report.id}, {"passed", report.passed()}, {"checks", std::move(checks)}}.dump(2) << '\n';
    } else {
        std::size_t wq = 8;
        std::size_t we = 8;
        std::size_t wc = 8;
        for (const auto& c : report.checks) {
            wq = std::max(wq, c.quantity.size());
            we = std::max(we, c.expected.size());
            wc = std::max(wc, c.computed.size());
        }
        std::cout << fmt::format("{:<{}}  {:<{}}  {:<{}}  {:<8} {}\n", "quantity", wq, "expected", we, "computed", wc, "tol", "result");
        for (const auto& c : report.checks) {
            const auto tol = c.tolerance > 0.0 ? fmt::format("{:g}", c.tolerance) : std::string("exact");
            std::cout << fmt::format("{:<{}}  {:<{}}  {:<{}}  {:<8} {}\n", c.quantity, wq, c.expected, we, c.computed, wc, tol,
                                     c.pass ? "PASS" : "FAIL");
        }
        std::cout << fmt::format("{}: {}\n", report.id, report.passed() ? "all checks pass" : "FAILED");
    }
    return report.passed() ? kOk : kViolated;
}

struct HuntFlags {
    std::size_t n = 4;
    std::string axiom = "inv";
    std::size_t trials = 10'000;
    double cr_cap = std::numeric_limits<double>::infinity();
    std::size_t group_size = 2;
    unsigned threads = 0;
};

int cmd_hunt(const GlobalFlags& g, const HuntFlags& h)
{
    pcm::HuntConfig config;
    config.n = h.n;
    config.trials = h.trials;
    config.cr_cap = h.cr_cap;
    config.seed = g.seed;
    config.target = pcm::parse_axiom(h.axiom);
    config.method = pcm::parse_method(g.method);
    config.tie_tol = g.tie_tol;
    config.group_size = h.group_size;
    config.threads = h.threads;
    try {
        pcm::validate(config);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError(e.what());
    }
    const auto result = pcm::hunt(config);
    if (!g.out.empty()) {
        const auto files = pcm::write_witnesses(result, g.out);
        std::cerr << fmt::format("wrote {} witness files to {}\n", files.size(), g.out);
    }
    if (g.json()) {
        std::cout << pcm::to_json(result).dump(2) << '\n';
        return kOk;
    }
    const auto rate = result.violation_rate();
    std::cout << fmt::format("target     {} ({}), n = {}, seed = {}\n", pcm::to_string(config.target), pcm::to_string(config.method), config.n,
                             config.seed);
    std::cout << fmt::format("trials     {}\ntested     {} (CR cap {})\nviolations {}\nrate       {}\n", config.trials, result.tested,
                             std::isinf(config.cr_cap) ? std::string("none") : fmt::format("{:g}", config.cr_cap), result.violations.size(),
                             rate ? fmt::format("{:.6f}", *rate) : std::string("n/a"));
    for (std::size_t k = 0; k < result.violations.size() && k < 5; ++k) {
        const auto& v = result.violations[k];
        std::cout << fmt::format("  trial {:<8} {}\n", v.trial, v.report.notes);
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Pairwise comparison matrices: weights, aggregation and axiom checks"};
    app.require_subcommand(1, 1);

    GlobalFlags g;
    app.add_option("--method", g.method, "Weighting method")->check(CLI::IsMember({"em", "llsm"}, CLI::ignore_case));
    app.add_option("--tol", g.tol, "Power iteration tolerance; IRM ratio tolerance for check irm");
    app.add_option("--tie-tol", g.tie_tol, "Relative tolerance for ties in rankings");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"human", "json"}));
    app.add_option("--seed", g.seed, "Hunt seed");
    app.add_option("--out", g.out, "Output file (aggregate) or witness directory (hunt)");

    std::string weights_file;
    auto* weights = app.add_subcommand("weights", "Priority vector, lambda_max, CR and ranking");
    weights->add_option("matrix", weights_file)->required();

    std::string rank_file;
    auto* rank = app.add_subcommand("rank", "Ranking induced by the weighting method");
    rank->add_option("matrix", rank_file)->required();

    std::vector<std::string> agg_files;
    bool agg_weights = false;
    auto* agg = app.add_subcommand("aggregate", "Geometric-mean aggregate of several matrices");
    agg->add_option("matrices", agg_files)->required();
    agg->add_flag("--weights", agg_weights, "Also print the group weights");

    CheckFlags check_flags;
    auto* check = app.add_subcommand("check", "Check an axiom on concrete matrices");
    check->add_option("axiom", check_flags.axiom)->required()->check(CLI::IsMember({"ano", "irm", "ai", "gcc", "inv"}, CLI::ignore_case));
    check->add_option("matrices", check_flags.files)->required();
    check->add_option("--row", check_flags.row, "IRM: 1-based row to multiply")->check(CLI::PositiveNumber);
    check->add_option("--alpha", check_flags.alpha, "IRM: multiplier, e.g. 9 or 1/3");
    check->add_option("--perm", check_flags.perm, "ANO: 1-based permutation, e.g. 2,1,3")->delimiter(',');

    std::string case_id;
    auto* paper = app.add_subcommand("paper", "Recompute the published counterexample values");
    paper->add_option("case", case_id, "lemma43-A, lemma43-B or prop42")->required();

    HuntFlags hunt_flags;
    auto* hunt = app.add_subcommand("hunt", "Randomized search for axiom violations on Saaty-scale matrices");
    hunt->add_option("--n", hunt_flags.n, "Matrix size (3..10)");
    hunt->add_option("--axiom", hunt_flags.axiom, "inv, ai or gcc");
    hunt->add_option("--trials", hunt_flags.trials, "Number of trials");
    hunt->add_option("--cr-cap", hunt_flags.cr_cap, "Discard matrices with CR above this");
    hunt->add_option("--group-size", hunt_flags.group_size, "Matrices per trial for ai/gcc");
    hunt->add_option("--threads", hunt_flags.threads, "Worker threads, 0 = all cores");

    for (auto* sub : {weights, rank, agg, check, paper, hunt}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*weights) return cmd_weights(g, weights_file);
        if (*rank) return cmd_rank(g, rank_file);
        if (*agg) return cmd_aggregate(g, agg_files, agg_weights);
        if (*check) return cmd_check(g, check_flags);
        if (*paper) return cmd_paper(g, case_id);
        if (*hunt) return cmd_hunt(g, hunt_flags);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
