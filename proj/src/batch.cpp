#include "transformloc/batch.hpp"

#include "transformloc/metrics.hpp"
#include "transformloc/simulator.hpp"
#include "transformloc/trace_io.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <map>
#include <set>
#include <thread>

namespace transformloc {
namespace {

struct Job {
    Strategy strategy;
    std::uint64_t seed;
};

Json run_one(const ScenarioConfig &base, const Job &job, const std::filesystem::path &dir) {
    ScenarioConfig cfg = base;
    cfg.strategy = job.strategy;
    cfg.seed = job.seed;
    const SimTrace trace = run_scenario(cfg);
    const MetricsSummary m = compute_metrics(trace, metrics_options(trace.config));
    const std::string stem = run_stem(job.strategy, job.seed);
    write_trace_csv(dir / ("trace_" + stem + ".csv"), trace);
    Json metrics = metrics_to_json(m, job.strategy, job.seed);
    write_text_file(dir / ("metrics_" + stem + ".json"), metrics.dump(2) + "\n");
    return metrics;
}

double mean_of(const std::vector<double> &v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

void validate(const RunManifest &m) {
    if (m.seeds.empty()) {
        throw ConfigError("seeds", "must not be empty");
    }
    if (std::set<std::uint64_t>(m.seeds.begin(), m.seeds.end()).size() != m.seeds.size()) {
        throw ConfigError("seeds", "must be unique");
    }
    if (m.strategies.empty()) {
        throw ConfigError("strategies", "must not be empty");
    }
    if (std::set<Strategy>(m.strategies.begin(), m.strategies.end()).size() != m.strategies.size()) {
        throw ConfigError("strategies", "must be unique");
    }
    if (m.output_dir.empty()) {
        throw ConfigError("out", "output directory is required");
    }
    if (m.beam_width && *m.beam_width == 0) {
        throw ConfigError("beam_width", "must be at least 1");
    }
}

std::string run_stem(Strategy strategy, std::uint64_t seed) {
    return std::string(to_string(strategy)) + "_s" + std::to_string(seed);
}

RunManifest run_batch(RunManifest manifest, unsigned jobs) {
    validate(manifest);
    ScenarioConfig base = load_config(manifest.config_path);
    if (manifest.beam_width) {
        base.beam_width = manifest.beam_width;
    }
    std::error_code ec;
    std::filesystem::create_directories(manifest.output_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create " + manifest.output_dir.string() + ": " + ec.message());
    }

    std::vector<Job> queue;
    for (Strategy s : manifest.strategies) {
        for (std::uint64_t seed : manifest.seeds) {
            queue.push_back({s, seed});
        }
    }
    std::vector<Json> results(queue.size());
    std::vector<std::exception_ptr> errors(queue.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < queue.size(); k = next++) {
            try {
                results[k] = run_one(base, queue[k], manifest.output_dir);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    const unsigned n_threads = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(queue.size()));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < n_threads; ++k) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    for (const auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }

    manifest.emitted.clear();
    for (const Job &job : queue) {
        const std::string stem = run_stem(job.strategy, job.seed);
        manifest.emitted.push_back("trace_" + stem + ".csv");
        manifest.emitted.push_back("metrics_" + stem + ".json");
    }
    write_text_file(manifest.output_dir / "aggregate.json", aggregate_metrics(results).dump(2) + "\n");
    manifest.emitted.push_back("aggregate.json");
    manifest.emitted.push_back("manifest.json");

    Json strategies = Json::array();
    for (Strategy s : manifest.strategies) strategies.push_back(std::string(to_string(s)));
    Json doc;
    doc["config_path"] = manifest.config_path.string();
    doc["seeds"] = manifest.seeds;
    doc["strategies"] = strategies;
    doc["output_dir"] = manifest.output_dir.string();
    doc["beam_width"] = manifest.beam_width ? Json(*manifest.beam_width) : Json(nullptr);
    doc["config"] = config_to_json(base);
    doc["emitted"] = manifest.emitted;
    write_text_file(manifest.output_dir / "manifest.json", doc.dump(2) + "\n");
    return manifest;
}

Json aggregate_metrics(const std::vector<Json> &metrics) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<const Json *>> by_strategy;
    for (const Json &m : metrics) {
        const std::string s = m.at("strategy").get<std::string>();
        if (!by_strategy.contains(s)) order.push_back(s);
        by_strategy[s].push_back(&m);
    }

    // Canonical order so the result does not depend on how the runs were listed.
    auto rank = [](const std::string &name) {
        try {
            return static_cast<int>(parse_strategy(name));
        } catch (const std::invalid_argument &) {
            return std::numeric_limits<int>::max();
        }
    };
    std::sort(order.begin(), order.end(), [&](const std::string &a, const std::string &b) {
        return std::pair(rank(a), a) < std::pair(rank(b), b);
    });

    Json out = Json::object();
    for (const std::string &s : order) {
        auto &runs = by_strategy[s];
        std::stable_sort(runs.begin(), runs.end(), [](const Json *a, const Json *b) {
            return a->at("seed").get<std::uint64_t>() < b->at("seed").get<std::uint64_t>();
        });
        std::vector<double> ate_mean, p50, p95, xi;
        Json seeds = Json::array();
        for (const Json *m : runs) {
            seeds.push_back(m->at("seed"));
            ate_mean.push_back(m->at("ate_mean").get<double>());
            p50.push_back(m->at("ate_p50").get<double>());
            p95.push_back(m->at("ate_p95").get<double>());
            xi.push_back(m->at("xi_T").get<double>());
        }

        // CDF points shared by every run (same value at the same index).
        Json cdf = Json::array();
        const Json &first_cdf = runs.front()->at("ate_cdf");
        for (std::size_t k = 0; k < first_cdf.size(); ++k) {
            const double value = first_cdf[k][0].get<double>();
            std::vector<double> fractions;
            for (const Json *m : runs) {
                const Json &c = m->at("ate_cdf");
                if (k >= c.size() || c[k][0].get<double>() != value) break;
                fractions.push_back(c[k][1].get<double>());
            }
            if (fractions.size() != runs.size()) break;
            cdf.push_back({value, mean_of(fractions)});
        }

        Json success = Json::object();
        for (const auto &[key, value] : runs.front()->at("success").items()) {
            std::vector<double> rates;
            for (const Json *m : runs) rates.push_back(m->at("success").at(key).get<double>());
            success[key] = mean_of(rates);
        }

        Json entry;
        entry["runs"] = runs.size();
        entry["seeds"] = seeds;
        entry["ate_mean"] = mean_of(ate_mean);
        entry["ate_p50"] = mean_of(p50);
        entry["ate_p95"] = mean_of(p95);
        entry["xi_T"] = mean_of(xi);
        entry["ate_cdf"] = cdf;
        entry["success"] = success;
        out[s] = entry;
    }
    return out;
}

Json compare_directory(const std::filesystem::path &dir) {
    std::vector<std::filesystem::path> files;
    for (const auto &entry : std::filesystem::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && name.starts_with("metrics_") && name.ends_with(".json")) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<Json> docs;
    for (const auto &f : files) {
        try {
            docs.push_back(Json::parse(read_text_file(f)));
        } catch (const Json::parse_error &e) {
            throw std::runtime_error(f.string() + ": " + e.what());
        }
    }
    if (docs.empty()) {
        throw std::runtime_error("no metrics_*.json files in " + dir.string());
    }
    return aggregate_metrics(docs);
}

}  // namespace transformloc
