#include "dcdaf/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace dcdaf {

double RlsBaseline::weighted_step(const std::vector<double>& x, double d, double f) {
    const int M = static_cast<int>(w.size());
    if (static_cast<int>(x.size()) != M) throw std::invalid_argument("rls step: dimension mismatch");

    const double e = d - dot(x, w);
    std::vector<double> Px = matvec(P, x);
    const double denom = lambda + f * dot(x, Px);

    // Gain k = f*P*x / (lambda + f*x'Px); w += k*e; P = (P - k*(x'P))/lambda.
    std::vector<double> k(M);
    for (int i = 0; i < M; ++i) k[i] = f * Px[i] / denom;
    for (int i = 0; i < M; ++i) w[i] += k[i] * e;
    for (int i = 0; i < M; ++i) {
        double* row = P.row(i);
        const double ki = k[i];
        for (int j = 0; j < M; ++j) row[j] = (row[j] - ki * Px[j]) / lambda;
    }
    for (int i = 0; i < M; ++i)
        for (int j = i + 1; j < M; ++j) {
            const double s = 0.5 * (P(i, j) + P(j, i));
            P(i, j) = s;
            P(j, i) = s;
        }
    return e;
}

double RmccBaseline::step(const std::vector<double>& x, double d) {
    const double e = d - dot(x, rls.w);
    const double f = std::exp(-(e * e) / (2.0 * beta2));
    return rls.weighted_step(x, d, f);
}

double GdMccBaseline::step(const std::vector<double>& x, double d) {
    const double e = d - dot(x, w);
    const double f = std::exp(-(e * e) / (2.0 * beta2));
    const double g = mu * f * e;
    for (size_t i = 0; i < w.size(); ++i) w[i] += g * x[i];
    return e;
}

double LmsBaseline::step(const std::vector<double>& x, double d) {
    const double e = d - dot(x, w);
    const double g = mu * e;
    for (size_t i = 0; i < w.size(); ++i) w[i] += g * x[i];
    return e;
}

}  // namespace dcdaf
