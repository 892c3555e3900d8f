#pragma once

#include <string>
#include <variant>
#include <vector>

#include "dcdaf/baselines.hpp"
#include "dcdaf/filter.hpp"
#include "dcdaf/signals.hpp"

namespace dcdaf {

// Algorithm roster entries: either the DCD recursion with some strategy, or
// one of the reference baselines.
struct RlsAlgo {
    double lambda = 0.998;
    double delta0 = 0.01;
};
struct RmccAlgo {
    double lambda = 0.998;
    double delta0 = 0.01;
    double beta2 = 0.03;
};
struct GdMccAlgo {
    double mu = 0.001;
    double beta2 = 0.6;
};
struct LmsAlgo {
    double mu = 0.01;
};

struct Algorithm {
    std::string name;
    std::variant<FilterConfig, RlsAlgo, RmccAlgo, GdMccAlgo, LmsAlgo> impl;
};

struct ExperimentConfig {
    Scenario scenario;
    std::vector<Algorithm> algorithms;
    std::string out_dir = "out";
    int decimation = 1;
    int threads = 0;  // 0 = hardware concurrency, capped by run count
};

struct NmsdTrace {
    std::string name;
    std::vector<double> nmsd_db;  // full-resolution mean trace
    int runs = 0;                 // runs contributing to the mean
    int diverged_runs = 0;        // runs excluded for non-finite deviation
};

struct ChangeSummary {
    long long time = 0;
    double pre_steady_db = 0.0;
    long long reconvergence = -1;  // samples after the event; -1 = not reached
};

struct AlgoSummary {
    std::string name;
    double steady_state_db = 0.0;  // linear mean over the final 10% of samples
    int diverged_runs = 0;
    std::vector<ChangeSummary> changes;
};

// Run the Monte-Carlo experiment: every run draws its own input/noise
// substreams, all algorithms see the same data within a run, deviations are
// averaged linearly across runs (merged in run order) and converted to dB.
std::vector<NmsdTrace> run_experiment(const ExperimentConfig& cfg);

std::vector<AlgoSummary> summarize(const std::vector<NmsdTrace>& traces, const Scenario& scenario);

// Write traces.csv (sample index + one NMSD column per algorithm, decimated)
// and summary.csv into cfg.out_dir.
void emit_outputs(const std::vector<NmsdTrace>& traces, const ExperimentConfig& cfg);

// Steady state of a trace segment: dB of the linear mean over its final 10%.
double steady_state_db(const std::vector<double>& trace_db, long long begin, long long end);

// First sample index after `event` at which the trace re-enters within 3 dB
// of pre_db, as an offset from the event; -1 when it never does.
long long reconvergence_time(const std::vector<double>& trace_db, long long event, double pre_db);

}  // namespace dcdaf
