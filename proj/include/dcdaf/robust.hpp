#pragma once

#include <variant>
#include <vector>

namespace dcdaf {

// Robust weighting strategies f(e) = phi'(e)/e applied to the rank-one data
// terms of the recursion. MCC and MEstimate weights live in [0,1]; the
// p-norm and mixed-p-norm weights are nonnegative and may exceed 1.
struct PlainRls {};

struct Mcc {
    double beta2 = 0.03;  // squared kernel width
};

struct MEstimate {
    double tau = 2.576;  // rejection threshold multiplier, xi = tau*sigma
    double zeta = 0.99;  // sigma estimator smoothing factor
    int Nw = 9;          // sigma estimator window length
};

struct LpNorm {
    double p = 1.2;
    double epsilon = 1e-2;
};

struct Cmpn {};

using RobustStrategy = std::variant<PlainRls, Mcc, MEstimate, LpNorm, Cmpn>;

// Cap for the mixed-p-norm weight, which grows like 1/(|e|*|ln|e||) as e -> 0.
inline constexpr double kCmpnWeightCap = 1e3;

// Robust error-power estimator: an exponentially smoothed, median-of-window
// estimate of the impulse-free e^2, with the small-sample correction factor
// c_sigma = 1.483*(1 + 5/(Nw-1)).
struct SigmaEstimator {
    double zeta = 0.99;
    int Nw = 9;
    double c_sigma = 0.0;
    double sigma2 = 0.0;
    std::vector<double> window;  // ring buffer of the last Nw squared errors
    int head = 0;
    long long samples_seen = 0;

    SigmaEstimator() : SigmaEstimator(0.99, 9) {}
    SigmaEstimator(double zeta_, int Nw_);

    // Push e^2 and refresh sigma2. The smoothing factor is treated as zero at
    // the very first sample; with a partially filled window the median runs
    // over the samples present.
    void update(double e);

    double threshold(double tau) const;
};

void validate_strategy(const RobustStrategy& s);

// Robust weight for the current a-priori error. MEstimate consults the
// estimator's threshold and is 1 during warm-up (before any sigma sample).
double weight(const RobustStrategy& s, double e, const SigmaEstimator* est = nullptr);

// Mixed-p-norm weight ((2a-1)ln a - a + 1)/(a ln^2 a), a = |e|, continued by
// series across a = 1 and capped at kCmpnWeightCap near 0. Exposed for tests.
double cmpn_weight(double e);

}  // namespace dcdaf
