#include "dcdaf/filter.hpp"

#include <cmath>
#include <stdexcept>

namespace dcdaf {

double vff_step(const VffConfig& vff, double e2_f) {
    if (!(e2_f >= 0.0)) throw std::invalid_argument("vff_step: e2_f must be nonnegative");
    return vff.lambda_min + (1.0 - vff.lambda_min) * std::exp(-vff.rho * e2_f);
}

FilterState filter_init(const FilterConfig& cfg) {
    if (cfg.M < 1) throw std::invalid_argument("filter_init: M must be >= 1");
    if (!(cfg.lambda > 0.0 && cfg.lambda <= 1.0))
        throw std::invalid_argument("filter_init: lambda must be in (0,1]");
    if (!(cfg.delta0 > 0.0)) throw std::invalid_argument("filter_init: delta0 must be positive");
    validate_strategy(cfg.strategy);
    if (cfg.vff) {
        if (!(cfg.vff->rho > 0.0)) throw std::invalid_argument("filter_init: vff rho must be positive");
        if (!(cfg.vff->lambda_min > 0.0 && cfg.vff->lambda_min < 1.0))
            throw std::invalid_argument("filter_init: vff lambda_min must be in (0,1)");
    }
    if (cfg.delta_schedule && cfg.structure == Structure::TappedDelay)
        throw std::invalid_argument("filter_init: custom delta schedule requires General structure");

    FilterState st;
    st.cfg = cfg;
    st.w_hat.assign(cfg.M, 0.0);
    st.R = Matrix::identity(cfg.M, cfg.delta0);
    st.r.assign(cfg.M, 0.0);
    st.delta_cur = cfg.delta0;
    if (const auto* m = std::get_if<MEstimate>(&cfg.strategy)) {
        st.sigma_est = SigmaEstimator(m->zeta, m->Nw);
        st.sigma_tau = m->tau;
    } else {
        st.sigma_est = SigmaEstimator();  // defaults, used by the VFF clip
    }
    return st;
}

void update_R_general(Matrix& R, const std::vector<double>& x, double f, double lambda_n) {
    const int M = R.n;
    if (static_cast<int>(x.size()) != M) throw std::invalid_argument("update_R_general: dimension mismatch");
    for (int i = 0; i < M; ++i) {
        double* row = R.row(i);
        const double fx = f * x[i];
        for (int j = i; j < M; ++j) row[j] = lambda_n * row[j] + fx * x[j];
    }
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < i; ++j) R(i, j) = R(j, i);
}

void update_R_tapped_delay(Matrix& R, const std::vector<double>& x, double f, double lambda_n) {
    const int M = R.n;
    if (static_cast<int>(x.size()) != M)
        throw std::invalid_argument("update_R_tapped_delay: dimension mismatch");
    // Copy the old upper-left block into the lower-right block. Descending row
    // order reads row i-1 before it is overwritten; column 0 and row 0 of the
    // old matrix stay intact for the first-column update below.
    for (int i = M - 1; i >= 1; --i) {
        double* dst = R.row(i);
        const double* src = R.row(i - 1);
        for (int j = M - 1; j >= 1; --j) dst[j] = src[j - 1];
    }
    const double fx0 = f * x[0];
    for (int i = 0; i < M; ++i) R(i, 0) = lambda_n * R(i, 0) + fx0 * x[i];
    for (int j = 1; j < M; ++j) R(0, j) = R(j, 0);
}

StepReport FilterState::step(const std::vector<double>& x, double d) {
    const int M = cfg.M;
    if (static_cast<int>(x.size()) != M) throw std::invalid_argument("filter step: dimension mismatch");
    if (!std::isfinite(d) || !all_finite(x)) throw std::invalid_argument("filter step: non-finite input");

    const double e = d - dot(x, w_hat);
    const double f = weight(cfg.strategy, e, &sigma_est);

    // Forgetting factor for this step; thresholds use the previous sigma.
    double lambda_n = cfg.lambda;
    if (cfg.vff) {
        double e2f;
        if (cfg.vff->mode == VffConfig::ErrorMode::SigmaDirect) {
            e2f = sigma_est.sigma2;
        } else if (sigma_est.samples_seen == 0) {
            e2f = e * e;  // no threshold yet
        } else {
            const double xi = sigma_est.threshold(sigma_tau);
            e2f = std::min(e * e, xi * xi);
        }
        lambda_n = vff_step(*cfg.vff, e2f);
    }

    const double delta_next =
        cfg.delta_schedule ? cfg.delta_schedule(n) : lambda_n * delta_cur;

    if (cfg.structure == Structure::TappedDelay) {
        update_R_tapped_delay(R, x, f, lambda_n);
        // The copied block carries the previous step's regularization on its
        // diagonal; refresh it to the current schedule value.
        const double adj = delta_next - delta_cur;
        for (int i = 1; i < M; ++i) R(i, i) += adj;
    } else {
        update_R_general(R, x, f, lambda_n);
        if (cfg.delta_schedule) {
            const double adj = delta_next - lambda_n * delta_cur;
            for (int i = 0; i < M; ++i) R(i, i) += adj;
        }
    }

    std::vector<double> b(M);
    const double fe = f * e;
    for (int i = 0; i < M; ++i) b[i] = lambda_n * r[i] + fe * x[i];
    if (cfg.delta_schedule) {
        const double adj = delta_next - lambda_n * delta_cur;
        for (int i = 0; i < M; ++i) b[i] -= adj * w_hat[i];
    }

    DcdSolution sol = dcd_solve(R, b, cfg.dcd);
    for (int i = 0; i < M; ++i) w_hat[i] += sol.delta_w[i];
    r = std::move(sol.residual);

    sigma_est.update(e);
    delta_cur = delta_next;
    ++n;

    StepReport rep;
    rep.e = e;
    rep.f = f;
    rep.lambda_used = lambda_n;
    rep.dcd_updates = sol.updates_performed;
    rep.dcd_additions = sol.additions_count;
    return rep;
}

}  // namespace dcdaf
