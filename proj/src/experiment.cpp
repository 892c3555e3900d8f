#include "dcdaf/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

namespace dcdaf {

namespace {

uint64_t sub_seed(uint64_t seed, uint64_t index) { return Rng::mix(seed + Rng::mix(index)); }

// One live algorithm instance inside a run.
struct Runner {
    std::variant<FilterState, RlsBaseline, RmccBaseline, GdMccBaseline, LmsBaseline> st;

    const std::vector<double>& w() const {
        return std::visit(
            [](const auto& s) -> const std::vector<double>& {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, FilterState>)
                    return s.w_hat;
                else if constexpr (std::is_same_v<T, RmccBaseline>)
                    return s.rls.w;
                else
                    return s.w;
            },
            st);
    }

    void step(const std::vector<double>& x, double d) {
        std::visit([&](auto& s) { s.step(x, d); }, st);
    }
};

Runner make_runner(const Algorithm& algo, int M, size_t index) {
    try {
        if (const auto* f = std::get_if<FilterConfig>(&algo.impl)) {
            FilterConfig cfg = *f;
            if (cfg.M == 0) cfg.M = M;
            if (cfg.M != M) throw std::invalid_argument("filter length does not match the channel");
            return Runner{filter_init(cfg)};
        }
        if (const auto* a = std::get_if<RlsAlgo>(&algo.impl)) return Runner{RlsBaseline(M, a->lambda, a->delta0)};
        if (const auto* a = std::get_if<RmccAlgo>(&algo.impl))
            return Runner{RmccBaseline(M, a->lambda, a->delta0, a->beta2)};
        if (const auto* a = std::get_if<GdMccAlgo>(&algo.impl)) return Runner{GdMccBaseline(M, a->mu, a->beta2)};
        return Runner{LmsBaseline(M, std::get<LmsAlgo>(algo.impl).mu)};
    } catch (const std::invalid_argument& ex) {
        throw std::invalid_argument("algorithms[" + std::to_string(index) + "] (" + algo.name + "): " + ex.what());
    }
}

struct RunResult {
    // dev[alg][n] = ||w_hat - w_o||^2, or an empty vector when the run diverged
    std::vector<std::vector<double>> dev;
    std::vector<char> diverged;
};

// Channel timeline: the tap vector in force at each sample.
struct ChannelTimeline {
    std::vector<long long> boundaries;          // segment start times (first is 0)
    std::vector<std::vector<double>> taps;      // taps per segment
    std::vector<double> ref_energy;             // ||w_o||^2 per segment

    int segment_at(long long n) const {
        int s = 0;
        while (s + 1 < static_cast<int>(boundaries.size()) && n >= boundaries[s + 1]) ++s;
        return s;
    }
};

ChannelTimeline build_timeline(const Scenario& sc) {
    ChannelTimeline tl;
    Channel cur = sc.channel;
    tl.boundaries.push_back(0);
    tl.taps.push_back(cur.w_o);
    for (const ChangeEvent& ev : sc.changes) {
        cur = shift_channel(cur, ev.shift);
        tl.boundaries.push_back(ev.time);
        tl.taps.push_back(cur.w_o);
    }
    for (const auto& w : tl.taps) {
        double e = 0.0;
        for (double v : w) e += v * v;
        if (!(e > 0.0)) throw std::invalid_argument("scenario.changes: a shift removed all channel energy");
        tl.ref_energy.push_back(e);
    }
    return tl;
}

void validate_config(const ExperimentConfig& cfg) {
    const Scenario& sc = cfg.scenario;
    if (sc.channel.w_o.empty()) throw std::invalid_argument("scenario.channel: empty tap vector");
    if (sc.horizon < 1) throw std::invalid_argument("scenario.horizon: must be >= 1");
    if (sc.runs < 1) throw std::invalid_argument("scenario.runs: must be >= 1");
    if (cfg.algorithms.empty()) throw std::invalid_argument("algorithms: must list at least one algorithm");
    if (cfg.decimation < 1) throw std::invalid_argument("output.decimation: must be >= 1");
    long long prev = 0;
    for (size_t i = 0; i < sc.changes.size(); ++i) {
        const ChangeEvent& ev = sc.changes[i];
        if (ev.time < prev || ev.time >= sc.horizon)
            throw std::invalid_argument("scenario.changes[" + std::to_string(i) +
                                        "].time: must be ascending and within the horizon");
        prev = ev.time;
    }
}

RunResult simulate_run(const ExperimentConfig& cfg, const ChannelTimeline& tl, int run) {
    const Scenario& sc = cfg.scenario;
    const int M = static_cast<int>(sc.channel.w_o.size());
    const long long N = sc.horizon;

    const std::vector<double> x = gen_ar1(sc.input, N, sub_seed(sc.seed, 2ULL * run));
    const std::vector<double> v = gen_noise(sc.noise, N, sub_seed(sc.seed, 2ULL * run + 1));

    std::vector<Runner> algos;
    algos.reserve(cfg.algorithms.size());
    for (size_t i = 0; i < cfg.algorithms.size(); ++i) algos.push_back(make_runner(cfg.algorithms[i], M, i));

    RunResult res;
    res.dev.assign(algos.size(), std::vector<double>(N, 0.0));
    res.diverged.assign(algos.size(), 0);

    std::vector<double> line(M, 0.0);
    int seg = 0;
    for (long long n = 0; n < N; ++n) {
        while (seg + 1 < static_cast<int>(tl.boundaries.size()) && n >= tl.boundaries[seg + 1]) ++seg;
        const std::vector<double>& wo = tl.taps[seg];

        for (int i = M - 1; i > 0; --i) line[i] = line[i - 1];
        line[0] = x[n];
        const double d = dot(wo, line) + v[n];

        for (size_t a = 0; a < algos.size(); ++a) {
            if (res.diverged[a]) continue;
            double dev = 0.0;
            try {
                algos[a].step(line, d);
                const std::vector<double>& w = algos[a].w();
                for (int i = 0; i < M; ++i) {
                    const double diff = w[i] - wo[i];
                    dev += diff * diff;
                }
            } catch (const std::invalid_argument&) {
                // A usage error mid-run means the state went non-finite.
                dev = std::numeric_limits<double>::quiet_NaN();
            }
            if (!std::isfinite(dev)) {
                res.diverged[a] = 1;
                res.dev[a].clear();
            } else {
                res.dev[a][n] = dev;
            }
        }
    }
    return res;
}

}  // namespace

std::vector<NmsdTrace> run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    const Scenario& sc = cfg.scenario;
    const long long N = sc.horizon;
    const ChannelTimeline tl = build_timeline(sc);

    // Dry-run the algorithm constructors so config errors surface before any work.
    for (size_t i = 0; i < cfg.algorithms.size(); ++i)
        make_runner(cfg.algorithms[i], static_cast<int>(sc.channel.w_o.size()), i);

    const int runs = sc.runs;
    int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, runs);

    std::vector<RunResult> results(runs);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int r = next.fetch_add(1);
            if (r >= runs) return;
            results[r] = simulate_run(cfg, tl, r);
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // Merge strictly in run order so the averaged trace does not depend on
    // completion order.
    const size_t A = cfg.algorithms.size();
    std::vector<NmsdTrace> traces(A);
    std::vector<std::vector<double>> acc(A, std::vector<double>(N, 0.0));
    for (size_t a = 0; a < A; ++a) {
        traces[a].name = cfg.algorithms[a].name;
        int valid = 0;
        for (int r = 0; r < runs; ++r) {
            if (results[r].diverged[a]) {
                ++traces[a].diverged_runs;
                continue;
            }
            const std::vector<double>& dev = results[r].dev[a];
            for (long long n = 0; n < N; ++n) acc[a][n] += dev[n];
            ++valid;
        }
        traces[a].runs = valid;
        traces[a].nmsd_db.assign(N, kNmsdFloorDb);
        if (valid > 0) {
            for (long long n = 0; n < N; ++n) {
                const double ref = tl.ref_energy[tl.segment_at(n)];
                const double mean = acc[a][n] / valid / ref;
                traces[a].nmsd_db[n] = std::max(10.0 * std::log10(mean), kNmsdFloorDb);
            }
        }
    }
    return traces;
}

double steady_state_db(const std::vector<double>& trace_db, long long begin, long long end) {
    if (!(begin >= 0 && end > begin && end <= static_cast<long long>(trace_db.size())))
        throw std::invalid_argument("steady_state_db: bad segment");
    const long long len = end - begin;
    const long long w0 = end - std::max<long long>(1, len / 10);
    double acc = 0.0;
    for (long long n = w0; n < end; ++n) acc += std::pow(10.0, trace_db[n] / 10.0);
    return 10.0 * std::log10(acc / (end - w0));
}

long long reconvergence_time(const std::vector<double>& trace_db, long long event, double pre_db) {
    for (long long n = event; n < static_cast<long long>(trace_db.size()); ++n)
        if (trace_db[n] <= pre_db + 3.0) return n - event + 1;
    return -1;
}

std::vector<AlgoSummary> summarize(const std::vector<NmsdTrace>& traces, const Scenario& scenario) {
    std::vector<AlgoSummary> out;
    const long long N = scenario.horizon;
    for (const NmsdTrace& tr : traces) {
        AlgoSummary s;
        s.name = tr.name;
        s.diverged_runs = tr.diverged_runs;
        s.steady_state_db = steady_state_db(tr.nmsd_db, 0, N);
        long long seg_start = 0;
        for (const ChangeEvent& ev : scenario.changes) {
            ChangeSummary cs;
            cs.time = ev.time;
            cs.pre_steady_db = steady_state_db(tr.nmsd_db, seg_start, ev.time);
            cs.reconvergence = reconvergence_time(tr.nmsd_db, ev.time, cs.pre_steady_db);
            s.changes.push_back(cs);
            seg_start = ev.time;
        }
        out.push_back(std::move(s));
    }
    return out;
}

void emit_outputs(const std::vector<NmsdTrace>& traces, const ExperimentConfig& cfg) {
    if (traces.empty()) throw std::invalid_argument("emit_outputs: no traces");
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);

    const long long N = cfg.scenario.horizon;
    const int dec = cfg.decimation;

    std::ofstream tf(fs::path(cfg.out_dir) / "traces.csv");
    if (!tf) throw std::runtime_error("emit_outputs: cannot write traces.csv in " + cfg.out_dir);
    tf << "n";
    for (const auto& tr : traces) tf << "," << tr.name;
    tf << "\n";
    char buf[64];
    for (long long n = dec - 1; n < N; n += dec) {
        tf << (n + 1);
        for (const auto& tr : traces) {
            std::snprintf(buf, sizeof buf, "%.6f", tr.nmsd_db[n]);
            tf << "," << buf;
        }
        tf << "\n";
    }
    tf.close();
    if (!tf) throw std::runtime_error("emit_outputs: write failed for traces.csv");

    const std::vector<AlgoSummary> sums = summarize(traces, cfg.scenario);
    std::ofstream sf(fs::path(cfg.out_dir) / "summary.csv");
    if (!sf) throw std::runtime_error("emit_outputs: cannot write summary.csv in " + cfg.out_dir);
    sf << "algorithm,runs,diverged_runs,steady_state_db";
    for (const ChangeEvent& ev : cfg.scenario.changes)
        sf << ",pre_db_at_" << ev.time << ",reconv_at_" << ev.time;
    sf << "\n";
    for (size_t a = 0; a < sums.size(); ++a) {
        const AlgoSummary& s = sums[a];
        std::snprintf(buf, sizeof buf, "%.6f", s.steady_state_db);
        sf << s.name << "," << traces[a].runs << "," << s.diverged_runs << "," << buf;
        for (const ChangeSummary& cs : s.changes) {
            std::snprintf(buf, sizeof buf, "%.6f", cs.pre_steady_db);
            sf << "," << buf << "," << cs.reconvergence;
        }
        sf << "\n";
    }
    sf.close();
    if (!sf) throw std::runtime_error("emit_outputs: write failed for summary.csv");
}

}  // namespace dcdaf
