#include "pcm/search.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "pcm/io.hpp"

namespace pcm {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

bool passes_cr_filter(const Pcm& a, double cr_cap)
{
    if (std::isinf(cr_cap)) {
        return true;
    }
    const auto em = em_weights(a);
    return em.cr.value_or(0.0) <= cr_cap;
}

struct Partial {
    std::vector<HuntViolation> violations;
    std::size_t tested = 0;
};

void run_trial(const HuntConfig& config, std::size_t trial, Partial& out)
{
    std::mt19937_64 rng(trial_seed(config.seed, trial));
    const std::size_t count = config.target == Axiom::Inv ? 1 : config.group_size;
    std::vector<Pcm> group;
    group.reserve(count);
    for (std::size_t l = 0; l < count; ++l) {
        group.push_back(sample_saaty_pcm(config.n, rng));
    }
    if (!std::all_of(group.begin(), group.end(), [&](const Pcm& a) { return passes_cr_filter(a, config.cr_cap); })) {
        return;
    }
    ++out.tested;
    AxiomReport report = [&] {
        switch (config.target) {
        case Axiom::Ai: return check_ai(config.method, group, config.tie_tol);
        case Axiom::Gcc: return check_gcc(config.method, group, config.tie_tol);
        default: return check_inv(config.method, group[0], config.tie_tol);
        }
    }();
    if (report.violated()) {
        out.violations.push_back({trial, std::move(report)});
    }
}

}  // namespace

const std::vector<Rational>& saaty_scale()
{
    static const std::vector<Rational> scale = [] {
        std::vector<Rational> s;
        for (int k = 9; k >= 2; --k) {
            s.emplace_back(1, k);
        }
        for (int k = 1; k <= 9; ++k) {
            s.emplace_back(k);
        }
        return s;
    }();
    return scale;
}

Pcm sample_saaty_pcm(std::size_t n, std::mt19937_64& rng)
{
    if (n < 2) {
        throw std::invalid_argument(fmt::format("cannot sample a {}x{} matrix", n, n));
    }
    const auto& scale = saaty_scale();
    std::uniform_int_distribution<std::size_t> pick(0, scale.size() - 1);
    std::vector<std::vector<Entry>> rows(n, std::vector<Entry>(n, Entry(1)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Rational r = scale[pick(rng)];
            rows[i][j] = Entry(r);
            rows[j][i] = Entry(*r.reciprocal());
        }
    }
    return Pcm(rows);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial)
{
    return splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632be59bd9b4e019ULL));
}

void validate(const HuntConfig& config)
{
    if (config.n < 3 || config.n > 10) {
        throw std::invalid_argument(fmt::format("n must be between 3 and 10, got {}", config.n));
    }
    if (config.trials < 1) {
        throw std::invalid_argument("trials must be at least 1");
    }
    if (std::isnan(config.cr_cap) || config.cr_cap < 0.0) {
        throw std::invalid_argument(fmt::format("cr cap must be non-negative, got {}", config.cr_cap));
    }
    if (config.group_size < 1) {
        throw std::invalid_argument("group size must be at least 1");
    }
    if (config.target != Axiom::Inv && config.target != Axiom::Ai && config.target != Axiom::Gcc) {
        throw std::invalid_argument(fmt::format("cannot hunt for {} violations", to_string(config.target)));
    }
}

std::optional<double> HuntResult::violation_rate() const
{
    if (tested == 0) {
        return std::nullopt;
    }
    return static_cast<double>(violations.size()) / static_cast<double>(tested);
}

HuntResult hunt(const HuntConfig& config)
{
    validate(config);
    unsigned threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, config.trials));

    std::vector<Partial> partials(threads);
    std::atomic<std::size_t> next{0};
    constexpr std::size_t kChunk = 256;
    auto worker = [&](Partial& out) {
        for (;;) {
            const std::size_t begin = next.fetch_add(kChunk);
            if (begin >= config.trials) {
                return;
            }
            const std::size_t end = std::min(begin + kChunk, config.trials);
            for (std::size_t t = begin; t < end; ++t) {
                run_trial(config, t, out);
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned k = 1; k < threads; ++k) {
            pool.emplace_back(worker, std::ref(partials[k]));
        }
        worker(partials[0]);
    }

    HuntResult result{config, {}, 0};
    for (auto& p : partials) {
        result.tested += p.tested;
        std::move(p.violations.begin(), p.violations.end(), std::back_inserter(result.violations));
    }
    std::sort(result.violations.begin(), result.violations.end(), [](const auto& a, const auto& b) { return a.trial < b.trial; });
    return result;
}

nlohmann::json to_json(const HuntConfig& config)
{
    nlohmann::json cap = std::isinf(config.cr_cap) ? nlohmann::json(nullptr) : nlohmann::json(config.cr_cap);
    return {
        {"n", config.n},
        {"trials", config.trials},
        {"cr_cap", cap},
        {"seed", config.seed},
        {"target", to_string(config.target)},
        {"method", to_string(config.method)},
        {"tie_tol", config.tie_tol},
        {"group_size", config.group_size},
    };
}

nlohmann::json to_json(const HuntResult& result)
{
    auto violations = nlohmann::json::array();
    for (const auto& v : result.violations) {
        violations.push_back({{"trial", v.trial}, {"report", to_json(v.report)}});
    }
    const auto rate = result.violation_rate();
    return {
        {"config", to_json(result.config)},
        {"tested", result.tested},
        {"violation_count", result.violations.size()},
        {"violation_rate", rate ? nlohmann::json(*rate) : nlohmann::json(nullptr)},
        {"violations", std::move(violations)},
    };
}

std::vector<std::filesystem::path> write_witnesses(const HuntResult& result, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (const auto& v : result.violations) {
        const auto stem = fmt::format("{}-trial{:07}", to_string(v.report.axiom), v.trial);
        for (std::size_t l = 0; l < v.report.witness.inputs; ++l) {
            auto path = dir / fmt::format("{}-m{}.json", stem, l + 1);
            io::write_matrix(path, v.report.witness.matrices[l]);
            written.push_back(std::move(path));
        }
        auto path = dir / fmt::format("{}-report.json", stem);
        std::ofstream out(path);
        if (!out) {
            throw std::runtime_error(fmt::format("cannot write {}", path.string()));
        }
        out << to_json(v.report).dump(2) << '\n';
        written.push_back(std::move(path));
    }
    return written;
}

}  // namespace pcm
