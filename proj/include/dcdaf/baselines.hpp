#pragma once

#include <vector>

#include "dcdaf/matrix.hpp"

namespace dcdaf {

// Exact exponentially weighted RLS via the matrix inversion lemma, with an
// optional robust weight on the rank-one data term (weight 1 = plain RLS,
// weight exp(-e^2/(2*beta2)) = the recursive MCC variant). P = R^-1 is
// re-symmetrized every step to stop round-off drift.
struct RlsBaseline {
    double lambda;
    std::vector<double> w;
    Matrix P;

    RlsBaseline(int M, double lambda_, double delta0) : lambda(lambda_), w(M, 0.0) {
        P = Matrix::identity(M, 1.0 / delta0);
    }

    // One update with data weight f; returns the a-priori error.
    double weighted_step(const std::vector<double>& x, double d, double f);

    double step(const std::vector<double>& x, double d) { return weighted_step(x, d, 1.0); }
};

struct RmccBaseline {
    RlsBaseline rls;
    double beta2;

    RmccBaseline(int M, double lambda, double delta0, double beta2_) : rls(M, lambda, delta0), beta2(beta2_) {}

    const std::vector<double>& w() const { return rls.w; }
    double step(const std::vector<double>& x, double d);
};

// Gradient-descent MCC: w += mu * f * e * x with f = exp(-e^2/(2*beta2)).
struct GdMccBaseline {
    double mu;
    double beta2;
    std::vector<double> w;

    GdMccBaseline(int M, double mu_, double beta2_) : mu(mu_), beta2(beta2_), w(M, 0.0) {}
    double step(const std::vector<double>& x, double d);
};

struct LmsBaseline {
    double mu;
    std::vector<double> w;

    LmsBaseline(int M, double mu_) : mu(mu_), w(M, 0.0) {}
    double step(const std::vector<double>& x, double d);
};

}  // namespace dcdaf
