// wcm: command-line front end for the weighted cubic map library.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wcm/analytic/eden_length.hpp"
#include "wcm/analytic/limits.hpp"
#include "wcm/analytic/two_point.hpp"
#include "wcm/analytic/vert.hpp"
#include "wcm/experiments/acceptance.hpp"
#include "wcm/experiments/runner.hpp"
#include "wcm/maps/io.hpp"
#include "wcm/maps/measure.hpp"
#include "wcm/series/two_point_series.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wcm;
using experiments::ExperimentConfig;
using experiments::fmt;
using experiments::Table;

namespace {

constexpr int kExitOk = 0, kExitUsage = 1, kExitVerify = 2;

struct Globals {
    std::uint64_t seed = 1;
    int workers = 1;
    bool deterministic = false;
    std::string config, out;
};

struct Emitted {
    Table table;
    std::string text;  // used instead of the table when non-empty
    bool verify_failed = false;
};

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

// Two marked degrees from a list such as "1 1".
std::pair<int, int> two_degrees(const std::vector<int>& d) {
    if (d.size() != 2) throw std::invalid_argument("--degrees needs exactly two values");
    return {d[0], d[1]};
}

std::pair<int, int> parse_fn_degrees(const std::string& fn) {
    if (fn.size() == 3 && fn[0] == 'G' && fn[1] >= '1' && fn[1] <= '3' && fn[2] >= '1' && fn[2] <= '3')
        return {fn[1] - '0', fn[2] - '0'};
    return {0, 0};
}

// ---------------------------------------------------------------------------------------------

struct TabulateArgs {
    std::string fn = "G11";
    double g = 0.04, tmin = 0.1, tmax = 10;
    double eps = 0;
    int steps = 100;
};

Emitted tabulate(const TabulateArgs& a) {
    if (a.steps < 1) throw std::domain_error("--steps must be >= 1");
    if (!(a.tmin > 0) || !(a.tmax >= a.tmin)) throw std::domain_error("--tmin/--tmax need 0 < tmin <= tmax");
    analytic::GrandCanonicalParams p = a.eps > 0 ? analytic::make_params_epsilon(a.eps) : analytic::make_params(a.g);
    std::function<double(double)> f;
    auto [d1, d2] = parse_fn_degrees(a.fn);
    if (d1) f = [&, d1 = d1, d2 = d2](double T) { return analytic::two_point(d1, d2, p, T); };
    else if (a.fn == "Gmax") f = [&](double T) { return analytic::two_point_max(p, T); };
    else if (a.fn == "Gvert") f = [&](double T) { return analytic::two_point_vert(p, T); };
    else if (a.fn == "Gscaling") f = [](double T) { return analytic::scaling_two_point(T); };
    else throw std::invalid_argument("--fn must be one of G11..G33, Gmax, Gvert, Gscaling");
    Emitted e;
    e.table.comments = {"function " + a.fn, "g " + fmt(p.g, 17) + " alpha " + fmt(p.alpha, 17) + " Sigma " + fmt(p.sigma, 17)};
    e.table.header = {"T", a.fn};
    for (int i = 0; i < a.steps; ++i) {
        double T = a.steps == 1 ? a.tmin : a.tmin + (a.tmax - a.tmin) * i / (a.steps - 1);
        e.table.add_row({fmt(T, 12), fmt(f(T), 15)});
    }
    return e;
}

struct SeriesArgs {
    std::string fn = "G11";
    int order = 3;
};

Emitted series_cmd(const SeriesArgs& a) {
    if (a.order < 0 || a.order > 60) throw std::domain_error("--order must be in [0, 60]");
    Emitted e;
    e.table.comments = {"function " + a.fn + " through g^" + std::to_string(a.order)};
    auto [d1, d2] = parse_fn_degrees(a.fn);
    if (d1 || a.fn == "Gmax") {
        auto G = d1 ? series::two_point_series(d1, d2, a.order) : series::max_series(a.order);
        e.table.comments.push_back("rows: coefficient of g^order T^k e^{-m T}");
        e.table.header = {"order", "k", "m", "coefficient"};
        for (int p = 0; p <= a.order; ++p)
            for (const auto& [key, c] : G[p].terms())
                e.table.add_row({std::to_string(p), std::to_string(key.k), std::to_string(key.m), c.get_str()});
        return e;
    }
    series::RationalSeries s;
    if (a.fn == "alpha") s = series::alpha_series(a.order);
    else if (a.fn == "sigma") s = series::sigma_series(a.order);
    else if (a.fn == "beta") s = series::beta_series(a.order);
    else throw std::invalid_argument("--fn must be one of G11..G33, Gmax, alpha, sigma, beta");
    e.table.header = {"order", "coefficient"};
    for (int p = 0; p <= a.order; ++p) e.table.add_row({std::to_string(p), s[p].get_str()});
    return e;
}

struct EnumerateArgs {
    std::string what = "cubic";
    std::vector<int> F{3, 4, 5};
    std::vector<int> E{1, 2, 3, 4, 5};
    std::vector<int> degrees;
    bool dump = false;
};

Emitted enumerate_cmd(const EnumerateArgs& a) {
    Emitted e;
    if (a.what == "cubic") {
        if (a.dump) {
            std::ostringstream os;
            for (int F : a.F) maps::write_maps(os, maps::rooted_cubic_maps(F));
            e.text = os.str();
            return e;
        }
        e.table.header = {"F", "rooted_enumerated", "rooted_formula", "unrooted_measure"};
        for (int F : a.F) {
            if (F < 3 || 3 * (F - 2) > maps::kMaxEnumerationEdges) throw std::domain_error("--F must be in [3, 5] for cubic enumeration");
            auto n = maps::rooted_cubic_maps(F).size();
            e.table.add_row({std::to_string(F), std::to_string(n), maps::rooted_cubic_count(F).get_str(),
                             maps::measure(maps::Family::cubic, F, 0).value.get_str()});
        }
        return e;
    }
    if (a.what != "maps") throw std::invalid_argument("--what must be cubic or maps");
    maps::EnumerationFilter filter{a.degrees, {}};
    if (a.dump) {
        std::ostringstream os;
        for (int E : a.E) maps::write_maps(os, maps::collect_maps(E, filter));
        e.text = os.str();
        return e;
    }
    e.table.comments = {"degrees " + (a.degrees.empty() ? std::string("any") : join([&] {
        std::vector<std::string> v;
        for (int d : a.degrees) v.push_back(std::to_string(d));
        return v;
    }(), " "))};
    e.table.header = {"E", "rooted_maps"};
    for (int E : a.E) {
        std::uint64_t n = 0;
        maps::enumerate_maps(E, filter, [&](const maps::RotationMap&) { ++n; });
        e.table.add_row({std::to_string(E), std::to_string(n)});
    }
    return e;
}

struct SampleArgs {
    int F = 3;
    std::vector<int> degrees;
    int n = 1;
    bool weighted = false;
    std::uint64_t burn_in_per_face = 10000, thin_per_edge = 10;
};

Emitted sample_cmd(const SampleArgs& a, const Globals& gl) {
    if (a.n < 1) throw std::domain_error("--n must be >= 1");
    auto rng = sampler::make_rng(gl.seed);
    experiments::CubicMapSource src(a.F, {a.burn_in_per_face, a.thin_per_edge});
    Emitted e;
    e.table.header = {"index", "map", "lengths"};
    for (int i = 0; i < a.n; ++i) {
        auto m = sampler::add_marks(src.next(rng), a.degrees, rng);
        std::string lengths;
        if (a.weighted) {
            auto wm = sampler::assign_lengths(m, rng);
            std::vector<std::string> v;
            for (double l : wm.lengths) v.push_back(fmt(l, 17));
            lengths = join(v, " ");
        }
        e.table.add_row({std::to_string(i), "\"" + maps::format_map(m) + "\"", "\"" + lengths + "\""});
    }
    return e;
}

ExperimentConfig base_config(const Globals& gl) {
    ExperimentConfig c;
    c.seed = gl.seed;
    c.workers = gl.workers;
    c.deterministic = gl.deterministic;
    return c;
}

Emitted from_experiment(const ExperimentConfig& cfg) {
    auto out = experiments::run_experiment(cfg);
    Emitted e;
    e.table = std::move(out.table);
    e.table.comments.push_back("summary " + out.summary.dump());
    return e;
}

struct EdenArgs {
    int F = 3;
    std::vector<double> w{1.0};
    long N = 100000;
    bool trace = false;
    std::uint64_t burn_in_per_face = 10000, thin_per_edge = 10;
};

Emitted eden_cmd(const EdenArgs& a, const Globals& gl) {
    if (a.trace) {
        auto rng = sampler::make_rng(gl.seed);
        experiments::CubicMapSource src(a.F, {a.burn_in_per_face, a.thin_per_edge});
        auto m = src.next(rng);
        auto r = fpp::eden_run_from_edge(m, m.edge_of(m.root() >= 0 ? m.root() : 0), a.w.front(), rng);
        std::ostringstream os;
        os << "# map " << maps::format_map(sampler::insert_marked_bivalent(m, m.edge_of(m.root() >= 0 ? m.root() : 0))) << '\n';
        fpp::write_exploration_csv(os, r);
        Emitted e;
        e.text = os.str();
        return e;
    }
    auto c = base_config(gl);
    c.experiment = "eden_length";
    c.F = a.F;
    c.w = a.w;
    c.N = a.N;
    c.burn_in_per_face = a.burn_in_per_face;
    c.thin_per_edge = a.thin_per_edge;
    return from_experiment(c);
}

struct FppArgs {
    int F = 3;
    std::vector<int> degrees{1, 1};
    long N = 100000;
    int bins = 200;
    std::uint64_t burn_in_per_face = 10000, thin_per_edge = 10;
};

Emitted fpp_cmd(const FppArgs& a, const Globals& gl) {
    auto c = base_config(gl);
    c.experiment = "two_point";
    c.F = a.F;
    auto [d1, d2] = two_degrees(a.degrees);
    c.degrees = {d1, d2};
    c.N = a.N;
    c.bins = a.bins;
    c.burn_in_per_face = a.burn_in_per_face;
    c.thin_per_edge = a.thin_per_edge;
    return from_experiment(c);
}

struct VerifyArgs {
    std::string suite = "acceptance";
    std::vector<int> criteria;
};

Emitted verify_cmd(const VerifyArgs& a, const Globals& gl, const std::string& self) {
    std::vector<int> ids = a.criteria;
    if (ids.empty()) {
        // the reproducibility criterion runs this command itself, so it is not part of the suites
        if (a.suite == "acceptance") ids = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        else if (a.suite == "smoke") ids = {1, 2, 3, 4};
        else throw std::invalid_argument("--suite must be acceptance or smoke");
    }
    experiments::AcceptanceOptions o;
    o.seed = gl.seed;
    o.workers = gl.workers;
    o.cli_path = self;
    Emitted e;
    for (int id : ids) {
        if (id < 1 || id > experiments::kCriteriaCount) throw std::out_of_range("criterion ids are 1.." + std::to_string(experiments::kCriteriaCount));
        auto r = experiments::run_criterion(id, o);
        e.text += experiments::format_result(r);
        e.verify_failed |= !r.pass;
    }
    return e;
}

// ---------------------------------------------------------------------------------------------

// Appends "--key value..." for config entries whose flag was not given on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args, const std::string& path, CLI::App& sub, CLI::App& app) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("invalid config file: " + std::string(e.what()));
    }
    if (j.contains("config") && j["config"].is_object()) j = j["config"];  // a run manifest
    if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
    auto given = [&](const std::string& flag) { return std::find(args.begin(), args.end(), flag) != args.end(); };
    auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    for (const auto& [key, v] : j.items()) {
        std::string flag = "--" + key;
        if (key == "config" || key == "out" || key == "command") continue;
        if (key == "experiment") flag = "--name";
        auto* opt = sub.get_option_no_throw(flag);
        if (!opt) opt = app.get_option_no_throw(flag);
        if (!opt) throw std::invalid_argument("config: key '" + key + "' is not an option of " + sub.get_name());
        if (given(flag)) continue;
        if (opt->get_expected_min() == 0) {
            if (v == true || v == "true" || v == "1") args.push_back(flag);
            continue;
        }
        args.push_back(flag);
        if (v.is_array()) {
            if (v.empty()) args.pop_back();
            for (const auto& x : v) args.push_back(scalar(x));
        } else {
            args.push_back(scalar(v));
        }
    }
    return args;
}

json typed(const std::string& s) {
    if (s == "{}") return json::array();
    json v = json::parse(s, nullptr, false);
    return v.is_discarded() || v.is_object() ? json(s) : v;
}

json effective_config(CLI::App& sub, CLI::App& app) {
    json j = json::object();
    for (CLI::App* a : {&app, &sub})
        for (const CLI::Option* o : a->get_options()) {
            std::string name = o->get_single_name();
            if (name == "help" || name == "config" || name == "out") continue;
            if (o->get_expected_min() == 0) {
                j[name] = o->count() > 0;
            } else if (o->count() > 0) {
                const auto& r = o->results();
                if (r.size() == 1 && o->get_expected_max() <= 1) {
                    j[name] = typed(r[0]);
                } else {
                    j[name] = json::array();
                    for (const auto& x : r) j[name].push_back(typed(x));
                }
            } else {
                j[name] = typed(o->get_default_str());
            }
        }
    return j;
}

void write_output(const Emitted& e, const experiments::RunManifest& man, const std::string& out, const std::string& cmd) {
    std::ostringstream body;
    if (e.text.empty()) {
        Table t = e.table;
        t.comments.insert(t.comments.begin(), "manifest " + man.to_json().dump());
        t.write_csv(body);
    } else {
        body << e.text;
    }
    if (out.empty()) {
        std::cout << body.str() << std::flush;
        return;
    }
    fs::path p(out);
    fs::path data, manifest;
    if (fs::is_directory(p)) {
        data = p / (cmd + (e.text.empty() ? ".csv" : ".txt"));
        manifest = p / "manifest.json";
    } else {
        data = p;
        manifest = fs::path(out + ".manifest.json");
    }
    std::ofstream(data, std::ios::binary) << body.str();
    std::ofstream(manifest, std::ios::binary) << man.to_json().dump(2) << '\n';
    if (!e.text.empty()) std::cout << e.text << std::flush;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    Globals gl;
    if (const char* s = std::getenv("WCM_SEED")) {
        try {
            gl.seed = std::stoull(s);
        } catch (...) {
            std::cerr << "error: WCM_SEED must be a non-negative integer\n";
            return kExitUsage;
        }
    }

    CLI::App app{"wcm: weighted cubic maps, two-point functions and first-passage percolation"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", gl.seed, "master seed (default from WCM_SEED, else 1)");
    app.add_option("--workers", gl.workers, "worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--deterministic", gl.deterministic, "results independent of the worker count; no timestamp in the manifest");
    app.add_option("--config", gl.config, "JSON config file or run manifest; flags take precedence");
    app.add_option("--out", gl.out, "output file or existing directory (default stdout)");

    TabulateArgs ta;
    auto* tab = app.add_subcommand("tabulate", "analytic curves on a T grid");
    tab->add_option("--fn", ta.fn, "G11..G33, Gmax, Gvert, Gscaling");
    tab->add_option("--g", ta.g, "face fugacity in (0, g*]");
    tab->add_option("--eps", ta.eps, "use g = g*(1 - 24 eps^2) instead of --g");
    tab->add_option("--tmin", ta.tmin);
    tab->add_option("--tmax", ta.tmax);
    tab->add_option("--steps", ta.steps, "number of rows");

    SeriesArgs sa;
    auto* ser = app.add_subcommand("series", "exact g-expansions");
    ser->add_option("--fn", sa.fn, "G11..G33, Gmax, alpha, sigma, beta");
    ser->add_option("--order", sa.order);

    EnumerateArgs ea;
    auto* en = app.add_subcommand("enumerate", "exhaustive enumeration of rooted planar maps");
    en->add_option("--what", ea.what, "cubic (counts by faces) or maps (counts by edges)");
    en->add_option("--F", ea.F, "face counts for --what cubic");
    en->add_option("--E", ea.E, "edge counts for --what maps");
    en->add_option("--degrees", ea.degrees, "allowed vertex degrees for --what maps");
    en->add_flag("--dump", ea.dump, "print the maps instead of counts");

    SampleArgs sm;
    auto* samp = app.add_subcommand("sample", "uniform cubic maps with optional marks and lengths");
    samp->add_option("--F", sm.F);
    samp->add_option("--degrees", sm.degrees, "degrees of marked vertices to insert");
    samp->add_option("--n", sm.n, "number of maps");
    samp->add_flag("--weighted", sm.weighted, "attach Exp(1) edge lengths");
    samp->add_option("--burn_in_per_face", sm.burn_in_per_face);
    samp->add_option("--thin_per_edge", sm.thin_per_edge);

    EdenArgs eda;
    auto* ed = app.add_subcommand("eden", "Eden exploration lengths from the root edge");
    ed->add_option("--F", eda.F);
    ed->add_option("--w", eda.w, "stopping weights");
    ed->add_option("--N", eda.N, "replicas per weight");
    ed->add_flag("--trace", eda.trace, "print one exploration trace instead");
    ed->add_option("--burn_in_per_face", eda.burn_in_per_face);
    ed->add_option("--thin_per_edge", eda.thin_per_edge);

    FppArgs fa;
    auto* fp = app.add_subcommand("fpp", "distance between two marked vertices against the exact law");
    fp->add_option("--F", fa.F);
    fp->add_option("--degrees", fa.degrees, "two marked degrees")->expected(2);
    fp->add_option("--N", fa.N);
    fp->add_option("--bins", fa.bins);
    fp->add_option("--burn_in_per_face", fa.burn_in_per_face);
    fp->add_option("--thin_per_edge", fa.thin_per_edge);

    ExperimentConfig xc;
    auto* ex = app.add_subcommand("experiment", "named experiment from a config");
    ex->add_option("--name", xc.experiment, "two_point, eden_length, ratio, vertex_density, coupling");
    ex->add_option("--F", xc.F);
    ex->add_option("--degrees", xc.degrees);
    ex->add_option("--w", xc.w);
    ex->add_option("--N", xc.N);
    ex->add_option("--bins", xc.bins);
    ex->add_option("--bin_width", xc.bin_width);
    ex->add_option("--mid_quantiles", xc.mid_quantiles)->expected(2);
    ex->add_option("--pairs_per_map", xc.pairs_per_map);
    ex->add_option("--chunks", xc.chunks);
    ex->add_option("--burn_in_per_face", xc.burn_in_per_face);
    ex->add_option("--thin_per_edge", xc.thin_per_edge);

    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "run the acceptance suite");
    ver->add_option("--suite", va.suite, "acceptance or smoke");
    ver->add_option("--criterion", va.criteria, "criterion ids (default: the whole suite)");

    try {
        // first pass locates the subcommand and the config file
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
        if (!gl.config.empty()) {
            auto merged = merge_config(args, gl.config, *app.get_subcommands().front(), app);
            app.clear();
            gl = Globals{gl.seed, 1, false, {}, {}};
            if (const char* s = std::getenv("WCM_SEED")) gl.seed = std::stoull(s);
            else gl.seed = 1;
            std::vector<std::string> rev2(merged.rbegin(), merged.rend());
            app.parse(rev2);
        }
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();
    try {
        Emitted e;
        if (cmd == "tabulate") e = tabulate(ta);
        else if (cmd == "series") e = series_cmd(sa);
        else if (cmd == "enumerate") e = enumerate_cmd(ea);
        else if (cmd == "sample") e = sample_cmd(sm, gl);
        else if (cmd == "eden") e = eden_cmd(eda, gl);
        else if (cmd == "fpp") e = fpp_cmd(fa, gl);
        else if (cmd == "experiment") {
            xc.seed = gl.seed;
            xc.workers = gl.workers;
            xc.deterministic = gl.deterministic;
            e = from_experiment(xc);
        } else e = verify_cmd(va, gl, fs::canonical("/proc/self/exe").string());

        experiments::RunManifest man;
        man.command = "wcm " + join(args, " ");
        man.config = effective_config(*sub, app);
        man.config["command"] = cmd;
        man.config_digest = cmd == "experiment" ? xc.digest() : experiments::sha256_hex(man.config.dump());
        man.seed = gl.seed;
        man.timestamp = gl.deterministic ? "" : experiments::utc_timestamp();
        man.version = experiments::artifact_version();
        write_output(e, man, gl.out, cmd);
        return e.verify_failed ? kExitVerify : kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return kExitUsage;
}
