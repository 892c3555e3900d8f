#include "dcdaf/dcd.hpp"

#include <cmath>
#include <stdexcept>

namespace dcdaf {

namespace {

bool is_power_of_two(double v) {
    if (!(v > 0.0) || !std::isfinite(v)) return false;
    int exp = 0;
    return std::frexp(v, &exp) == 0.5;
}

void validate(const Matrix& R, const std::vector<double>& b, const DcdConfig& cfg) {
    const int M = static_cast<int>(b.size());
    if (M < 1 || R.n != M) throw std::invalid_argument("dcd_solve: dimension mismatch");
    if (!is_power_of_two(cfg.H)) throw std::invalid_argument("dcd_solve: H must be a positive power of two");
    if (cfg.Mb < 1) throw std::invalid_argument("dcd_solve: Mb must be >= 1");
    if (cfg.Nu < 0) throw std::invalid_argument("dcd_solve: Nu must be >= 0");
    for (double v : b)
        if (!std::isfinite(v)) throw std::invalid_argument("dcd_solve: non-finite entry in b");
    for (double v : R.a)
        if (!std::isfinite(v)) throw std::invalid_argument("dcd_solve: non-finite entry in R");
    for (int i = 0; i < M; ++i)
        if (!(R(i, i) > 0.0)) throw std::invalid_argument("dcd_solve: non-positive diagonal in R");
}

}  // namespace

DcdSolution dcd_solve(const Matrix& R, const std::vector<double>& b, const DcdConfig& cfg) {
    validate(R, b, cfg);
    const int M = static_cast<int>(b.size());

    DcdSolution sol;
    sol.delta_w.assign(static_cast<size_t>(M), 0.0);
    sol.residual = b;
    std::vector<double>& r = sol.residual;

    // Step size mu and bit counter y persist across update iterations.
    double mu = cfg.H / 2.0;
    int y = 1;
    long long adds = 0;

    for (int j = 0; j < cfg.Nu; ++j) {
        // Leading element: largest |r_l|, lowest index on ties.
        int l = 0;
        double best = std::fabs(r[0]);
        for (int i = 1; i < M; ++i) {
            const double v = std::fabs(r[i]);
            if (v > best) {
                best = v;
                l = i;
            }
        }
        adds += M - 1;

        while (best <= 0.5 * mu * R(l, l) && y <= cfg.Mb) {
            ++y;
            mu *= 0.5;
            ++adds;
        }
        if (y > cfg.Mb) break;

        // sign(0) := +1; unreachable for valid inputs since the step test
        // requires |r_l| > mu/2 * R_ll > 0, kept total anyway.
        const double step = (r[l] >= 0.0) ? mu : -mu;
        sol.delta_w[static_cast<size_t>(l)] += step;
        ++adds;

        const double* col = R.row(l);  // symmetric: row l is column l
        for (int i = 0; i < M; ++i) r[static_cast<size_t>(i)] -= step * col[i];
        adds += M;

        ++sol.updates_performed;
    }

    sol.additions_count = adds;
    return sol;
}

long long count_ops(const DcdConfig& cfg, int M) {
    if (M < 1) throw std::invalid_argument("count_ops: M must be >= 1");
    return 2LL * cfg.Nu * M + cfg.Mb;
}

}  // namespace dcdaf
