// Command-line front end: `run` executes a Monte-Carlo experiment described
// by a JSON config and writes plot-ready CSV files; `channels` and `noise`
// export the synthetic signals for inspection. Exit status 0 on success,
// 1 with a message on stderr for config or I/O problems.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dcdaf/experiment.hpp"
#include "json.hpp"

using namespace dcdaf;
using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw std::invalid_argument(path + ": " + msg);
}

const json& require(const json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) fail(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing");
    return *it;
}

double get_num(const json& obj, const std::string& path, const char* key) {
    const json& v = require(obj, path, key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

double opt_num(const json& obj, const std::string& path, const char* key, double dflt) {
    if (!obj.is_object() || !obj.contains(key)) return dflt;
    return get_num(obj, path, key);
}

long long get_int(const json& obj, const std::string& path, const char* key) {
    const json& v = require(obj, path, key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<long long>();
}

long long opt_int(const json& obj, const std::string& path, const char* key, long long dflt) {
    if (!obj.is_object() || !obj.contains(key)) return dflt;
    return get_int(obj, path, key);
}

std::string get_str(const json& obj, const std::string& path, const char* key) {
    const json& v = require(obj, path, key);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

std::string opt_str(const json& obj, const std::string& path, const char* key,
                    const std::string& dflt) {
    if (!obj.is_object() || !obj.contains(key)) return dflt;
    return get_str(obj, path, key);
}

uint64_t opt_seed(const json& obj, const std::string& path, const char* key, uint64_t dflt) {
    if (!obj.is_object() || !obj.contains(key)) return dflt;
    const long long s = get_int(obj, path, key);
    if (s < 0) fail(path + "." + key, "must be >= 0");
    return static_cast<uint64_t>(s);
}

Channel parse_channel(const json& j, const std::string& path) {
    const std::string kind = get_str(j, path, "kind");
    if (kind == "custom") {
        const json& vals = require(j, path, "values");
        if (!vals.is_array() || vals.empty()) fail(path + ".values", "expected a non-empty array");
        Channel ch;
        ch.kind = ChannelKind::Custom;
        for (size_t i = 0; i < vals.size(); ++i) {
            if (!vals[i].is_number())
                fail(path + ".values[" + std::to_string(i) + "]", "expected a number");
            ch.w_o.push_back(vals[i].get<double>());
        }
        return ch;
    }
    const long long taps = get_int(j, path, "taps");
    if (taps < 1) fail(path + ".taps", "must be >= 1");
    const uint64_t seed = opt_seed(j, path, "seed", 1);
    if (kind == "sparse") return gen_channel(ChannelKind::Sparse, static_cast<int>(taps), seed);
    if (kind == "disperse") return gen_channel(ChannelKind::Disperse, static_cast<int>(taps), seed);
    fail(path + ".kind", "expected \"sparse\", \"disperse\" or \"custom\"");
}

NoiseModel parse_noise(const json& j, const std::string& path) {
    const std::string kind = get_str(j, path, "kind");
    if (kind == "alpha-stable")
        return AlphaStable{get_num(j, path, "alpha"), get_num(j, path, "gamma")};
    if (kind == "gaussian") return GaussianNoise{get_num(j, path, "variance")};
    if (kind == "none") return NoNoise{};
    fail(path + ".kind", "expected \"alpha-stable\", \"gaussian\" or \"none\"");
}

RobustStrategy parse_strategy(const json& j, const std::string& path) {
    const std::string kind = get_str(j, path, "kind");
    if (kind == "plain-rls") return PlainRls{};
    if (kind == "mcc") return Mcc{get_num(j, path, "beta2")};
    if (kind == "m-estimate")
        return MEstimate{opt_num(j, path, "tau", 2.576), opt_num(j, path, "zeta", 0.99),
                         static_cast<int>(opt_int(j, path, "window", 9))};
    if (kind == "lp-norm") return LpNorm{get_num(j, path, "p"), opt_num(j, path, "epsilon", 1e-2)};
    if (kind == "cmpn") return Cmpn{};
    fail(path + ".kind",
         "expected \"plain-rls\", \"mcc\", \"m-estimate\", \"lp-norm\" or \"cmpn\"");
}

Algorithm parse_algorithm(const json& j, const std::string& path, int channel_taps) {
    Algorithm algo;
    algo.name = get_str(j, path, "name");
    const std::string type = opt_str(j, path, "type", "dcd");
    if (type == "rls") {
        algo.impl = RlsAlgo{opt_num(j, path, "lambda", 0.998), opt_num(j, path, "delta0", 0.01)};
    } else if (type == "rmcc") {
        algo.impl = RmccAlgo{opt_num(j, path, "lambda", 0.998), opt_num(j, path, "delta0", 0.01),
                             get_num(j, path, "beta2")};
    } else if (type == "gd-mcc") {
        algo.impl = GdMccAlgo{get_num(j, path, "mu"), get_num(j, path, "beta2")};
    } else if (type == "lms") {
        algo.impl = LmsAlgo{get_num(j, path, "mu")};
    } else if (type == "dcd") {
        FilterConfig fc;
        fc.M = channel_taps;
        fc.lambda = opt_num(j, path, "lambda", fc.lambda);
        fc.delta0 = opt_num(j, path, "delta0", fc.delta0);
        if (j.contains("strategy")) fc.strategy = parse_strategy(j["strategy"], path + ".strategy");
        if (j.contains("dcd")) {
            const json& dj = j["dcd"];
            const std::string dp = path + ".dcd";
            fc.dcd.H = opt_num(dj, dp, "H", fc.dcd.H);
            fc.dcd.Mb = static_cast<int>(opt_int(dj, dp, "Mb", fc.dcd.Mb));
            fc.dcd.Nu = static_cast<int>(opt_int(dj, dp, "Nu", fc.dcd.Nu));
        }
        const std::string structure = opt_str(j, path, "structure", "general");
        if (structure == "tapped-delay")
            fc.structure = Structure::TappedDelay;
        else if (structure != "general")
            fail(path + ".structure", "expected \"general\" or \"tapped-delay\"");
        if (j.contains("vff")) {
            const json& vj = j["vff"];
            const std::string vp = path + ".vff";
            VffConfig vff;
            vff.rho = opt_num(vj, vp, "rho", vff.rho);
            vff.lambda_min = opt_num(vj, vp, "lambda_min", vff.lambda_min);
            const std::string mode = opt_str(vj, vp, "mode", "clip");
            if (mode == "sigma")
                vff.mode = VffConfig::ErrorMode::SigmaDirect;
            else if (mode != "clip")
                fail(vp + ".mode", "expected \"clip\" or \"sigma\"");
            fc.vff = vff;
        }
        algo.impl = fc;
    } else {
        fail(path + ".type", "expected \"dcd\", \"rls\", \"rmcc\", \"gd-mcc\" or \"lms\"");
    }
    return algo;
}

ExperimentConfig parse_config(const json& root) {
    ExperimentConfig cfg;
    const json& sc = require(root, "config", "scenario");
    cfg.scenario.channel = parse_channel(require(sc, "scenario", "channel"), "scenario.channel");
    if (sc.contains("input"))
        cfg.scenario.input.rho = opt_num(sc["input"], "scenario.input", "rho", 0.0);
    if (sc.contains("noise")) cfg.scenario.noise = parse_noise(sc["noise"], "scenario.noise");
    cfg.scenario.horizon = get_int(sc, "scenario", "horizon");
    cfg.scenario.runs = static_cast<int>(opt_int(sc, "scenario", "runs", 1));
    cfg.scenario.seed = opt_seed(sc, "scenario", "seed", 1);
    if (sc.contains("changes")) {
        const json& ch = sc["changes"];
        if (!ch.is_array()) fail("scenario.changes", "expected an array");
        for (size_t i = 0; i < ch.size(); ++i) {
            const std::string p = "scenario.changes[" + std::to_string(i) + "]";
            cfg.scenario.changes.push_back(
                {get_int(ch[i], p, "time"), static_cast<int>(get_int(ch[i], p, "shift"))});
        }
    }
    if (root.contains("output")) {
        const json& out = root["output"];
        cfg.decimation = static_cast<int>(opt_int(out, "output", "decimation", 1));
        cfg.out_dir = opt_str(out, "output", "dir", cfg.out_dir);
    }
    const json& algos = require(root, "config", "algorithms");
    if (!algos.is_array() || algos.empty()) fail("algorithms", "expected a non-empty array");
    const int taps = static_cast<int>(cfg.scenario.channel.w_o.size());
    for (size_t i = 0; i < algos.size(); ++i)
        cfg.algorithms.push_back(
            parse_algorithm(algos[i], "algorithms[" + std::to_string(i) + "]", taps));
    return cfg;
}

void write_column(const std::string& out_file, const std::vector<double>& values) {
    std::ostream* os = &std::cout;
    std::ofstream f;
    if (!out_file.empty()) {
        f.open(out_file);
        if (!f) throw std::runtime_error("cannot open output file '" + out_file + "'");
        os = &f;
    }
    char buf[64];
    for (const double v : values) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        *os << buf << '\n';
    }
}

int cmd_run(const std::string& config_path, const std::string& out_dir, int threads,
            std::optional<long long> seed) {
    std::ifstream f(config_path);
    if (!f) throw std::runtime_error("cannot open config '" + config_path + "'");
    json root;
    try {
        root = json::parse(f);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config parse: " + std::string(e.what()));
    }
    ExperimentConfig cfg = parse_config(root);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (threads >= 0) cfg.threads = threads;
    if (seed) {
        if (*seed < 0) throw std::invalid_argument("--seed: must be >= 0");
        cfg.scenario.seed = static_cast<uint64_t>(*seed);
    }

    const auto traces = run_experiment(cfg);
    emit_outputs(traces, cfg);
    const auto sums = summarize(traces, cfg.scenario);
    std::printf("wrote %s/traces.csv and %s/summary.csv\n", cfg.out_dir.c_str(),
                cfg.out_dir.c_str());
    for (const auto& s : sums) {
        std::printf("  %-20s steady %8.2f dB", s.name.c_str(), s.steady_state_db);
        if (s.diverged_runs > 0) std::printf("  (%d diverged)", s.diverged_runs);
        for (const auto& c : s.changes) {
            if (c.reconvergence > 0)
                std::printf("  reconv@%lld %lld", c.time, c.reconvergence);
            else
                std::printf("  reconv@%lld -", c.time);
        }
        std::printf("\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DCD-based robust recursive least-squares adaptive filtering toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int threads = -1;
    std::optional<long long> seed_override;
    auto* run = app.add_subcommand("run", "run a Monte-Carlo experiment from a JSON config");
    run->add_option("config", config_path, "path to the experiment config")->required();
    run->add_option("-o,--out", out_dir, "output directory (overrides the config)");
    run->add_option("-t,--threads", threads, "worker threads (0 = hardware concurrency)");
    run->add_option("-s,--seed", seed_override, "scenario seed override");

    std::string ch_kind = "sparse", ch_out;
    int ch_taps = 0;
    long long ch_seed = 1;
    auto* channels = app.add_subcommand("channels", "export a synthetic echo channel");
    channels->add_option("-k,--kind", ch_kind, "sparse or disperse")
        ->check(CLI::IsMember({"sparse", "disperse"}));
    channels->add_option("-m,--taps", ch_taps, "number of taps")->required();
    channels->add_option("-s,--seed", ch_seed, "generator seed");
    channels->add_option("-o,--out", ch_out, "output file (default stdout)");

    double nz_alpha = 1.4, nz_gamma = 0.05;
    long long nz_n = 0, nz_seed = 1;
    std::string nz_out;
    auto* noise = app.add_subcommand("noise", "emit alpha-stable noise samples");
    noise->add_option("-a,--alpha", nz_alpha, "characteristic exponent in (0,2]");
    noise->add_option("-g,--gamma", nz_gamma, "dispersion > 0");
    noise->add_option("-n,--count", nz_n, "number of samples")->required();
    noise->add_option("-s,--seed", nz_seed, "generator seed");
    noise->add_option("-o,--out", nz_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, out_dir, threads, seed_override);
        if (channels->parsed()) {
            const ChannelKind kind =
                ch_kind == "sparse" ? ChannelKind::Sparse : ChannelKind::Disperse;
            if (ch_seed < 0) throw std::invalid_argument("--seed: must be >= 0");
            write_column(ch_out,
                         gen_channel(kind, ch_taps, static_cast<uint64_t>(ch_seed)).w_o);
            return 0;
        }
        if (noise->parsed()) {
            if (nz_seed < 0) throw std::invalid_argument("--seed: must be >= 0");
            write_column(nz_out, gen_alpha_stable(AlphaStable{nz_alpha, nz_gamma}, nz_n,
                                                  static_cast<uint64_t>(nz_seed)));
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
