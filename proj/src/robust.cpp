#include "dcdaf/robust.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dcdaf {

SigmaEstimator::SigmaEstimator(double zeta_, int Nw_) : zeta(zeta_), Nw(Nw_) {
    if (!(zeta >= 0.0 && zeta < 1.0)) throw std::invalid_argument("SigmaEstimator: zeta must be in [0,1)");
    if (Nw < 1) throw std::invalid_argument("SigmaEstimator: Nw must be >= 1");
    // The correction formula is undefined at Nw = 1; its large-window value
    // 1.483 is used there (degenerate configuration, tests only).
    c_sigma = (Nw >= 2) ? 1.483 * (1.0 + 5.0 / (Nw - 1)) : 1.483;
    window.assign(static_cast<size_t>(Nw), 0.0);
}

namespace {

double median_of(std::vector<double> v) {
    const size_t n = v.size();
    const size_t mid = n / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<long>(mid), v.end());
    double m = v[mid];
    if (n % 2 == 0) {
        const double lo = *std::max_element(v.begin(), v.begin() + static_cast<long>(mid));
        m = 0.5 * (lo + m);
    }
    return m;
}

}  // namespace

void SigmaEstimator::update(double e) {
    if (!std::isfinite(e)) throw std::invalid_argument("SigmaEstimator::update: non-finite error");
    window[static_cast<size_t>(head)] = e * e;
    head = (head + 1) % Nw;
    ++samples_seen;

    const int filled = static_cast<int>(std::min<long long>(samples_seen, Nw));
    std::vector<double> present(window.begin(), window.begin() + filled);
    const double med = median_of(std::move(present));

    const double z = (samples_seen == 1) ? 0.0 : zeta;
    sigma2 = z * sigma2 + c_sigma * (1.0 - z) * med;
}

double SigmaEstimator::threshold(double tau) const { return tau * std::sqrt(sigma2); }

void validate_strategy(const RobustStrategy& s) {
    if (const auto* m = std::get_if<Mcc>(&s)) {
        if (!(m->beta2 > 0.0)) throw std::invalid_argument("Mcc: beta2 must be positive");
    } else if (const auto* m = std::get_if<MEstimate>(&s)) {
        if (!(m->tau > 0.0)) throw std::invalid_argument("MEstimate: tau must be positive");
        if (!(m->zeta >= 0.0 && m->zeta < 1.0)) throw std::invalid_argument("MEstimate: zeta must be in [0,1)");
        if (m->Nw < 1) throw std::invalid_argument("MEstimate: Nw must be >= 1");
    } else if (const auto* m = std::get_if<LpNorm>(&s)) {
        if (!(m->p > 0.0 && m->p <= 2.0)) throw std::invalid_argument("LpNorm: p must be in (0,2]");
        if (!(m->epsilon > 0.0)) throw std::invalid_argument("LpNorm: epsilon must be positive");
    }
}

double cmpn_weight(double e) {
    const double a = std::fabs(e);
    if (a == 0.0) return kCmpnWeightCap;
    const double h = a - 1.0;
    if (std::fabs(h) < 1e-4) {
        // Series continuation across the removable singularity at a = 1,
        // limit 3/2; truncation error O(h^3).
        return 1.5 - (2.0 / 3.0) * h + (13.0 / 24.0) * h * h;
    }
    const double ln = std::log(a);
    const double f = ((2.0 * a - 1.0) * ln - a + 1.0) / (a * ln * ln);
    return std::min(f, kCmpnWeightCap);
}

double weight(const RobustStrategy& s, double e, const SigmaEstimator* est) {
    if (!std::isfinite(e)) throw std::invalid_argument("weight: non-finite error");
    if (std::holds_alternative<PlainRls>(s)) return 1.0;
    if (const auto* m = std::get_if<Mcc>(&s)) return std::exp(-(e * e) / (2.0 * m->beta2));
    if (const auto* m = std::get_if<MEstimate>(&s)) {
        if (est == nullptr) throw std::invalid_argument("weight: MEstimate needs a SigmaEstimator");
        if (est->samples_seen == 0) return 1.0;  // no threshold yet
        return (std::fabs(e) <= est->threshold(m->tau)) ? 1.0 : 0.0;
    }
    if (const auto* m = std::get_if<LpNorm>(&s)) return std::pow(std::fabs(e), m->p) / (e * e + m->epsilon);
    return cmpn_weight(e);
}

}  // namespace dcdaf
