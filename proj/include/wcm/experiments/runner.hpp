#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <exception>
#include <iosfwd>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "wcm/experiments/estimators.hpp"

namespace wcm::experiments {

// Experiment configuration; the JSON form has one key per field.
struct ExperimentConfig {
    std::string experiment = "two_point";  // two_point | eden_length | ratio | vertex_density | coupling
    int F = 3;
    std::vector<int> degrees{1, 1};
    std::vector<double> w{1.0};
    long N = 100000;
    int bins = 200;
    double bin_width = 1.0;             // T bins of the ratio experiment
    std::vector<double> mid_quantiles{0.25, 0.75};
    int pairs_per_map = 10;
    std::uint64_t seed = 1;
    int workers = 1;
    bool deterministic = false;
    int chunks = 16;                    // logical streams in deterministic mode
    std::uint64_t burn_in_per_face = 10000;
    std::uint64_t thin_per_edge = 10;

    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);  // missing keys keep their defaults
    std::string digest() const;                                   // sha256 of the canonical JSON
    sampler::FlipChainConfig chain() const { return {burn_in_per_face, thin_per_edge}; }
    void validate() const;
};

struct RunManifest {
    std::string command;
    std::string config_digest;
    std::uint64_t seed = 0;
    std::string timestamp;  // empty in deterministic mode
    std::string version;
    nlohmann::json config;

    nlohmann::json to_json() const;
};

std::string artifact_version();
std::string sha256_hex(const std::string& data);
std::string utc_timestamp();

// CSV table with '#'-prefixed comment lines before the header.
struct Table {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> r) { rows.push_back(std::move(r)); }
    void write_csv(std::ostream& os) const;
};

std::string fmt(double x, int digits = 10);

struct ExperimentOutput {
    Table table;
    nlohmann::json summary;
};

ExperimentOutput run_experiment(const ExperimentConfig& cfg);

// Number of logical streams used by a run: the worker count, or the fixed chunk count in
// deterministic mode (results then do not depend on the worker count).
inline int stream_count(const ExperimentConfig& cfg) {
    return cfg.deterministic ? cfg.chunks : std::max(1, cfg.workers);
}

// Splits N replicas over the logical streams, runs them on cfg.workers threads and returns the
// per-stream results in stream order. work(rng, replicas, stream) is called once per stream.
template <class R>
std::vector<R> run_streams(const ExperimentConfig& cfg, long N, const std::function<R(Rng&, long, int)>& work) {
    const int S = stream_count(cfg);
    std::vector<R> out(static_cast<std::size_t>(S));
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        for (int s; (s = next.fetch_add(1)) < S;) {
            try {
                long n = N / S + (s < N % S ? 1 : 0);
                Rng rng = sampler::make_rng(cfg.seed, static_cast<std::uint64_t>(s));
                out[static_cast<std::size_t>(s)] = work(rng, n, s);
            } catch (...) {
                std::lock_guard lock(err_mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    const int W = std::max(1, std::min(cfg.workers, S));
    if (W == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < W; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (err) std::rethrow_exception(err);
    return out;
}

}  // namespace wcm::experiments
