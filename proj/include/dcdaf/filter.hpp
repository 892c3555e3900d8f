#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dcdaf/dcd.hpp"
#include "dcdaf/matrix.hpp"
#include "dcdaf/robust.hpp"

namespace dcdaf {

enum class Structure { General, TappedDelay };

// Variable forgetting factor: lambda_n = lambda_min + (1-lambda_min)*exp(-rho*e2f)
// where e2f is the impulse-free squared error. Clip mode uses min(e^2, xi^2)
// with xi from the sigma estimator; SigmaDirect feeds sigma^2 itself.
struct VffConfig {
    double rho = 3.0;
    double lambda_min = 0.97;
    enum class ErrorMode { Clip, SigmaDirect };
    ErrorMode mode = ErrorMode::Clip;
};

double vff_step(const VffConfig& vff, double e2_f);

struct StepReport {
    double e = 0.0;            // a-priori error
    double f = 0.0;            // robust weight applied
    double lambda_used = 0.0;  // forgetting factor applied this step
    int dcd_updates = 0;
    long long dcd_additions = 0;
};

struct FilterConfig {
    int M = 0;
    double lambda = 0.998;  // in (0,1]
    double delta0 = 0.01;
    RobustStrategy strategy = PlainRls{};
    DcdConfig dcd;
    Structure structure = Structure::General;
    std::optional<VffConfig> vff;
    // Optional regularization schedule delta(n), n >= 0 with delta(-1) = delta0.
    // When set, the (delta_n - lambda*delta_{n-1}) terms enter both rank-one
    // updates explicitly; General structure only. Default: delta_n = lambda^{n+1}
    // * delta0, which makes those terms vanish.
    std::function<double(long long)> delta_schedule;
};

// The unified robust recursion: per-sample a-priori error, robust weight,
// optional VFF, weighted rank-one updates of R and b, DCD solve, estimate
// update. R is kept symmetric; the DCD residual is carried across samples.
struct FilterState {
    FilterConfig cfg;
    std::vector<double> w_hat;
    Matrix R;
    std::vector<double> r;
    long long n = 0;
    double delta_cur = 0.0;   // current delta_n (starts at delta0)
    SigmaEstimator sigma_est;
    double sigma_tau = 2.576;  // threshold multiplier for the VFF clip

    StepReport step(const std::vector<double>& x, double d);
};

FilterState filter_init(const FilterConfig& cfg);

// R' = lambda_n*R + f*x*x^T, computed on the upper triangle and mirrored.
void update_R_general(Matrix& R, const std::vector<double>& x, double f, double lambda_n);

// Tapped-delay fast path: lower-right (M-1)^2 block copied from the old
// upper-left block, first column = lambda_n*old column + f*x0*x, first row
// mirrored. Exact when f is constant at 1; an approximation otherwise.
void update_R_tapped_delay(Matrix& R, const std::vector<double>& x, double f, double lambda_n);

}  // namespace dcdaf
