#include "wcm/experiments/runner.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "wcm/analytic/eden_length.hpp"
#include "wcm/maps/io.hpp"

namespace wcm::experiments {

using nlohmann::json;

std::string artifact_version() { return "1.0.0"; }

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

std::string utc_timestamp() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json ExperimentConfig::to_json() const {
    return json{{"experiment", experiment},
                {"F", F},
                {"degrees", degrees},
                {"w", w},
                {"N", N},
                {"bins", bins},
                {"bin_width", bin_width},
                {"mid_quantiles", mid_quantiles},
                {"pairs_per_map", pairs_per_map},
                {"seed", seed},
                {"workers", workers},
                {"deterministic", deterministic},
                {"chunks", chunks},
                {"burn_in_per_face", burn_in_per_face},
                {"thin_per_edge", thin_per_edge}};
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    static const std::vector<std::string> known{"experiment", "F", "degrees", "w", "N", "bins", "bin_width",
                                                "mid_quantiles", "pairs_per_map", "seed", "workers",
                                                "deterministic", "chunks", "burn_in_per_face", "thin_per_edge"};
    for (const auto& [k, v] : j.items())
        if (std::find(known.begin(), known.end(), k) == known.end())
            throw std::invalid_argument("config: unknown key '" + k + "'");
    ExperimentConfig c;
    try {
        c.experiment = j.value("experiment", c.experiment);
        c.F = j.value("F", c.F);
        c.degrees = j.value("degrees", c.degrees);
        if (j.contains("w")) c.w = j["w"].is_array() ? j["w"].get<std::vector<double>>() : std::vector<double>{j["w"].get<double>()};
        c.N = j.value("N", c.N);
        c.bins = j.value("bins", c.bins);
        c.bin_width = j.value("bin_width", c.bin_width);
        c.mid_quantiles = j.value("mid_quantiles", c.mid_quantiles);
        c.pairs_per_map = j.value("pairs_per_map", c.pairs_per_map);
        c.seed = j.value("seed", c.seed);
        c.workers = j.value("workers", c.workers);
        c.deterministic = j.value("deterministic", c.deterministic);
        c.chunks = j.value("chunks", c.chunks);
        c.burn_in_per_face = j.value("burn_in_per_face", c.burn_in_per_face);
        c.thin_per_edge = j.value("thin_per_edge", c.thin_per_edge);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    return c;
}

// The worker count only affects scheduling, so it is left out.
std::string ExperimentConfig::digest() const {
    auto j = to_json();
    j.erase("workers");
    return sha256_hex(j.dump());
}

void ExperimentConfig::validate() const {
    static const std::vector<std::string> names{"two_point", "eden_length", "ratio", "vertex_density", "coupling"};
    if (std::find(names.begin(), names.end(), experiment) == names.end())
        throw std::invalid_argument("config: unknown experiment '" + experiment + "'");
    if (F < 1) throw std::domain_error("config: F must be >= 1");
    if (N < 1) throw std::domain_error("config: N must be >= 1");
    if (workers < 1) throw std::domain_error("config: workers must be >= 1");
    if (chunks < 1) throw std::domain_error("config: chunks must be >= 1");
    if (bins < 1) throw std::domain_error("config: bins must be >= 1");
    if (!(bin_width > 0)) throw std::domain_error("config: bin_width must be > 0");
    if (pairs_per_map < 1) throw std::domain_error("config: pairs_per_map must be >= 1");
    if (mid_quantiles.size() != 2 || !(0 <= mid_quantiles[0] && mid_quantiles[0] < mid_quantiles[1] && mid_quantiles[1] <= 1))
        throw std::domain_error("config: mid_quantiles must be [lo, hi] with 0 <= lo < hi <= 1");
    for (double x : w)
        if (!(x >= 0)) throw std::domain_error("config: w must be >= 0");
    if (experiment == "two_point" && degrees.size() != 2) throw std::domain_error("config: two_point needs two degrees");
    if ((experiment == "eden_length" || experiment == "ratio" || experiment == "vertex_density") && F < 3)
        throw std::domain_error("config: F must be >= 3");
    if (experiment == "coupling" && (F < 3 || F > sampler::kExactSamplerMaxFaces))
        throw std::domain_error("config: coupling needs 3 <= F <= 5");
    if ((experiment == "eden_length" || experiment == "coupling") && w.empty())
        throw std::domain_error("config: w must not be empty");
}

json RunManifest::to_json() const {
    json j{{"command", command}, {"config_digest", config_digest}, {"seed", seed}, {"version", version}, {"config", config}};
    j["timestamp"] = timestamp.empty() ? json(nullptr) : json(timestamp);
    return j;
}

std::string fmt(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

void Table::write_csv(std::ostream& os) const {
    for (const auto& c : comments) os << "# " << c << '\n';
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << '\n';
    }
}

namespace {

double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) throw std::domain_error("quantile of empty sample");
    std::sort(xs.begin(), xs.end());
    auto i = static_cast<std::size_t>(std::min<double>(q * static_cast<double>(xs.size()), static_cast<double>(xs.size() - 1)));
    return xs[i];
}

ExperimentOutput two_point_experiment(const ExperimentConfig& cfg) {
    const int d1 = cfg.degrees[0], d2 = cfg.degrees[1];
    auto ref = two_point_reference(cfg.F, d1, d2);
    auto parts = run_streams<std::vector<double>>(cfg, cfg.N, [&](Rng& rng, long n, int) {
        return sample_two_point_distances(cfg.F, d1, d2, n, rng, cfg.chain());
    });
    std::vector<double> xs;
    for (auto& p : parts) xs.insert(xs.end(), p.begin(), p.end());
    auto b = BinnedDistribution::from_samples(xs, cfg.bins);
    double ks = ks_statistic(b, [&](double T) { return ref.cdf(T); });
    double thr = ks_threshold_1pct(b.n);
    ExperimentOutput out;
    out.table.header = {"t_lo", "t_hi", "count", "empirical_cdf", "reference_cdf"};
    std::uint64_t c = 0;
    for (int i = 0; i < b.bins(); ++i) {
        c += b.counts[static_cast<std::size_t>(i)];
        double hi = b.edges[static_cast<std::size_t>(i + 1)];
        out.table.add_row({fmt(b.edges[static_cast<std::size_t>(i)]), fmt(hi), std::to_string(b.counts[static_cast<std::size_t>(i)]),
                           fmt(static_cast<double>(c) / static_cast<double>(b.n)), fmt(ref.cdf(hi))});
    }
    out.summary = {{"ks", ks}, {"ks_threshold", thr}, {"pass", ks < thr}, {"N", b.n},
                   {"reference_mass", ref.mass.get_str()}};
    return out;
}

ExperimentOutput eden_length_experiment(const ExperimentConfig& cfg) {
    ExperimentOutput out;
    out.table.header = {"F", "w", "N", "mean", "std_error", "exact", "z"};
    out.summary = json::array();
    for (double w : cfg.w) {
        auto parts = run_streams<Accumulator>(cfg, cfg.N, [&](Rng& rng, long n, int) {
            return eden_length_sums(cfg.F, w, n, rng, cfg.chain());
        });
        Accumulator acc;
        for (const auto& p : parts) acc.merge(p);
        double exact = analytic::expected_eden_length(cfg.F, w);
        double se = acc.std_error();
        double z = se > 0 ? (acc.mean() - exact) / se : (acc.mean() == exact ? 0.0 : INFINITY);
        out.table.add_row({std::to_string(cfg.F), fmt(w), std::to_string(acc.n), fmt(acc.mean(), 12), fmt(se), fmt(exact, 12), fmt(z, 4)});
        out.summary.push_back({{"w", w}, {"mean", acc.mean()}, {"std_error", se}, {"exact", exact}, {"z", z}});
    }
    return out;
}

std::vector<PairSample> pair_samples(const ExperimentConfig& cfg) {
    const long maps_needed = (cfg.N + cfg.pairs_per_map - 1) / cfg.pairs_per_map;
    auto parts = run_streams<std::vector<PairSample>>(cfg, maps_needed, [&](Rng& rng, long n, int) {
        return geodesic_pair_samples(cfg.F, n, cfg.pairs_per_map, rng, cfg.chain());
    });
    std::vector<PairSample> xs;
    for (auto& p : parts) xs.insert(xs.end(), p.begin(), p.end());
    return xs;
}

ExperimentOutput ratio_experiment(const ExperimentConfig& cfg) {
    auto xs = pair_samples(cfg);
    std::vector<double> Ts;
    double tmax = 0;
    for (const auto& s : xs) {
        Ts.push_back(s.T);
        tmax = std::max(tmax, s.T);
    }
    const double qlo = quantile(Ts, cfg.mid_quantiles[0]), qhi = quantile(Ts, cfg.mid_quantiles[1]);
    std::vector<double> edges;
    for (int i = 0; edges.empty() || edges.back() <= tmax; ++i) edges.push_back(i * cfg.bin_width);
    auto per_bin = ratio_by_bin(xs, edges);
    Accumulator mid;
    for (const auto& s : xs)
        if (s.T >= qlo && s.T <= qhi) mid.add(s.graph / s.T);
    const double upper = 1 + 1 / std::sqrt(3.0);
    ExperimentOutput out;
    out.table.header = {"t_lo", "t_hi", "n", "mean_ratio", "std_error", "mid"};
    bool bins_ok = true;
    int mid_bins = 0;
    for (std::size_t i = 0; i < per_bin.size(); ++i) {
        const auto& r = per_bin[i];
        bool is_mid = edges[i] >= qlo && edges[i + 1] <= qhi;
        if (r.n == 0) continue;
        if (is_mid) {
            ++mid_bins;
            bins_ok &= r.estimate >= 1.0 && r.estimate <= upper;
        }
        out.table.add_row({fmt(edges[i]), fmt(edges[i + 1]), std::to_string(r.n), fmt(r.estimate), fmt(r.std_error), is_mid ? "1" : "0"});
    }
    auto vd = vertex_density(xs);
    out.summary = {{"pairs", xs.size()},
                   {"mid_t_range", {qlo, qhi}},
                   {"mid_bins", mid_bins},
                   {"mid_bins_within_bounds", bins_ok},
                   {"mid_mean_ratio", mid.mean()},
                   {"mid_mean_std_error", mid.std_error()},
                   {"vertex_density", vd.density.estimate},
                   {"vertex_density_std_error", vd.density.std_error},
                   {"density_first_half", vd.first_half.estimate},
                   {"density_second_half", vd.second_half.estimate},
                   {"density_halves_std_error", std::hypot(vd.first_half.std_error, vd.second_half.std_error)}};
    return out;
}

ExperimentOutput vertex_density_experiment(const ExperimentConfig& cfg) {
    auto vd = vertex_density(pair_samples(cfg));
    ExperimentOutput out;
    out.table.header = {"quantity", "estimate", "std_error", "n"};
    for (auto [name, r] : {std::pair{"density", vd.density}, std::pair{"first_half", vd.first_half},
                           std::pair{"second_half", vd.second_half}})
        out.table.add_row({name, fmt(r.estimate), fmt(r.std_error), std::to_string(r.n)});
    out.summary = {{"vertex_density", vd.density.estimate}, {"std_error", vd.density.std_error},
                   {"target", 1 + 1 / std::sqrt(3.0)}};
    return out;
}

ExperimentOutput coupling_experiment(const ExperimentConfig& cfg) {
    const auto& table = sampler::cubic_table(cfg.F);
    const double w = cfg.w.front();
    ExperimentOutput out;
    out.table.header = {"map", "code", "statistic", "dof", "p_value"};
    double pmin = 1;
    for (std::size_t i = 0; i < table.size(); ++i) {
        Rng rng = sampler::make_rng(cfg.seed, i);
        auto r = fpp::eden_fpp_equivalence_test(table[i], {0}, w, cfg.N, rng);
        pmin = std::min(pmin, r.p_value);
        out.table.add_row({std::to_string(i), "\"" + maps::format_map(table[i]) + "\"", fmt(r.statistic), std::to_string(r.dof), fmt(r.p_value)});
    }
    out.summary = {{"maps", table.size()}, {"min_p_value", pmin}};
    return out;
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentOutput out;
    if (cfg.experiment == "two_point") out = two_point_experiment(cfg);
    else if (cfg.experiment == "eden_length") out = eden_length_experiment(cfg);
    else if (cfg.experiment == "ratio") out = ratio_experiment(cfg);
    else if (cfg.experiment == "vertex_density") out = vertex_density_experiment(cfg);
    else out = coupling_experiment(cfg);
    out.table.comments.insert(out.table.comments.begin(),
                              {"experiment " + cfg.experiment, "config_digest " + cfg.digest(),
                               "seed " + std::to_string(cfg.seed) + " streams " + std::to_string(stream_count(cfg))});
    return out;
}

}  // namespace wcm::experiments
