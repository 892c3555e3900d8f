#include "dcdaf/signals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dcdaf {

std::vector<double> gen_ar1(const InputModel& model, long long n, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_ar1: n must be >= 1");
    if (!(std::fabs(model.rho) < 1.0)) throw std::invalid_argument("gen_ar1: |rho| must be < 1");
    Rng rng(seed);
    std::vector<double> x(n);
    x[0] = rng.normal();
    for (long long k = 1; k < n; ++k) x[k] = model.rho * x[k - 1] + rng.normal();
    return x;
}

std::vector<double> gen_alpha_stable(const AlphaStable& model, long long n, uint64_t seed) {
    if (n < 0) throw std::invalid_argument("gen_alpha_stable: n must be >= 0");
    if (!(model.alpha > 0.0 && model.alpha <= 2.0))
        throw std::invalid_argument("gen_alpha_stable: alpha must be in (0,2]");
    if (!(model.gamma > 0.0)) throw std::invalid_argument("gen_alpha_stable: gamma must be positive");

    const double alpha = model.alpha;
    const double scale = std::pow(model.gamma, 1.0 / alpha);
    Rng rng(seed);
    std::vector<double> v(n);
    for (long long k = 0; k < n; ++k) {
        const double U = 3.14159265358979323846 * (rng.uniform_open() - 0.5);
        double s;
        if (alpha == 1.0) {
            s = std::tan(U);
        } else {
            const double W = rng.exponential();
            s = std::sin(alpha * U) / std::pow(std::cos(U), 1.0 / alpha) *
                std::pow(std::cos(U - alpha * U) / W, (1.0 - alpha) / alpha);
        }
        v[k] = scale * s;
    }
    return v;
}

std::vector<double> gen_noise(const NoiseModel& model, long long n, uint64_t seed) {
    if (const auto* as = std::get_if<AlphaStable>(&model)) return gen_alpha_stable(*as, n, seed);
    if (const auto* g = std::get_if<GaussianNoise>(&model)) {
        if (!(g->variance >= 0.0)) throw std::invalid_argument("gen_noise: variance must be nonnegative");
        Rng rng(seed);
        const double sd = std::sqrt(g->variance);
        std::vector<double> v(n);
        for (long long k = 0; k < n; ++k) v[k] = sd * rng.normal();
        return v;
    }
    return std::vector<double>(n, 0.0);
}

namespace {

void normalize(std::vector<double>& w) {
    double e = 0.0;
    for (double v : w) e += v * v;
    const double inv = 1.0 / std::sqrt(e);
    for (double& v : w) v *= inv;
}

}  // namespace

Channel gen_channel(ChannelKind kind, int M, uint64_t seed) {
    if (M < 1) throw std::invalid_argument("gen_channel: M must be >= 1");
    Channel ch;
    ch.kind = kind;
    ch.w_o.assign(M, 0.0);
    Rng rng(Rng::mix(seed));

    if (kind == ChannelKind::Sparse) {
        // A short burst of taps with an exponentially decaying envelope and a
        // seeded sign/jitter pattern; everything outside the burst exactly zero.
        const int burst = std::clamp(M / 8, 1, 16);
        const int offset = M / 4;
        for (int i = 0; i < burst && offset + i < M; ++i) {
            const double sign = (rng.uniform01() < 0.5) ? -1.0 : 1.0;
            const double mag = std::exp(-0.35 * i) * (0.7 + 0.6 * rng.uniform01());
            ch.w_o[offset + i] = sign * mag;
        }
    } else if (kind == ChannelKind::Disperse) {
        // Decaying oscillation spread over all taps.
        const double phase = 6.283185307179586 * rng.uniform01();
        for (int i = 0; i < M; ++i) {
            const double env = std::exp(-2.2 * i / M);
            const double jit = 0.85 + 0.3 * rng.uniform01();
            ch.w_o[i] = env * jit * std::cos(0.9 * i + phase);
        }
    } else {
        throw std::invalid_argument("gen_channel: Custom channels are supplied, not generated");
    }
    normalize(ch.w_o);
    return ch;
}

Channel shift_channel(const Channel& ch, int k) {
    const int M = static_cast<int>(ch.w_o.size());
    if (k < 0 || k >= M) throw std::invalid_argument("shift_channel: shift out of range");
    Channel out;
    out.kind = ch.kind;
    out.w_o.assign(M, 0.0);
    for (int i = k; i < M; ++i) out.w_o[i] = ch.w_o[i - k];
    return out;
}

double nmsd(const std::vector<double>& w_hat, const std::vector<double>& w_o) {
    if (w_hat.size() != w_o.size()) throw std::invalid_argument("nmsd: dimension mismatch");
    double dev = 0.0, ref = 0.0;
    for (size_t i = 0; i < w_o.size(); ++i) {
        const double d = w_hat[i] - w_o[i];
        dev += d * d;
        ref += w_o[i] * w_o[i];
    }
    if (!(ref > 0.0)) throw std::invalid_argument("nmsd: reference channel has zero norm");
    const double ratio = dev / ref;
    const double db = 10.0 * std::log10(ratio);
    return std::max(db, kNmsdFloorDb);
}

}  // namespace dcdaf
