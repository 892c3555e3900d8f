#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace dcdaf {

// Deterministic cross-platform randomness: the mt19937_64 engine is bit-exact
// by the standard; the variate transforms are written out here because the
// std distributions are not. Per-run substreams come from splitmix64 mixing.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(uint64_t seed) : eng(seed) {}

    static uint64_t mix(uint64_t z) {  // splitmix64 finalizer
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static Rng substream(uint64_t seed, uint64_t index) { return Rng(mix(seed + mix(index))); }

    double uniform01() {  // in [0,1)
        return (eng() >> 11) * 0x1.0p-53;
    }

    double uniform_open() {  // in (0,1)
        double u;
        do {
            u = uniform01();
        } while (u == 0.0);
        return u;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_open();
        const double u2 = uniform01();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 6.283185307179586476925286766559 * u2;
        spare_ = rad * std::sin(ang);
        have_spare_ = true;
        return rad * std::cos(ang);
    }

    double exponential() { return -std::log1p(-uniform_open()); }  // mean 1, > 0

   private:
    double spare_ = 0.0;
    bool have_spare_ = false;
};

struct AlphaStable {
    double alpha = 1.4;
    double gamma = 0.05;  // dispersion
};
struct GaussianNoise {
    double variance = 1.0;
};
struct NoNoise {};
using NoiseModel = std::variant<AlphaStable, GaussianNoise, NoNoise>;

struct InputModel {
    double rho = 0.0;  // AR(1) coefficient, |rho| < 1; unit-variance innovations
};

enum class ChannelKind { Sparse, Disperse, Custom };

struct Channel {
    std::vector<double> w_o;
    ChannelKind kind = ChannelKind::Custom;
};

struct ChangeEvent {
    long long time = 0;  // sample index at which the shift is applied
    int shift = 0;       // taps of delay added to the impulse response
};

struct Scenario {
    Channel channel;
    InputModel input;
    NoiseModel noise = NoNoise{};
    long long horizon = 0;
    std::vector<ChangeEvent> changes;
    int runs = 1;
    uint64_t seed = 1;
};

std::vector<double> gen_ar1(const InputModel& model, long long n, uint64_t seed);

// Symmetric alpha-stable samples with characteristic function exp(-gamma|t|^alpha)
// via the Chambers-Mallows-Stuck transform (dedicated branch at alpha = 1).
std::vector<double> gen_alpha_stable(const AlphaStable& model, long long n, uint64_t seed);

std::vector<double> gen_noise(const NoiseModel& model, long long n, uint64_t seed);

// Synthetic echo channels, unit 2-norm, deterministic per seed. Sparse: a
// short burst of significant taps on a zero background; Disperse: a decaying
// oscillatory envelope with energy over most taps.
Channel gen_channel(ChannelKind kind, int M, uint64_t seed);

// Delay the impulse response by k taps (zero-fill head, truncate tail).
Channel shift_channel(const Channel& ch, int k);

// 10*log10(||w_hat - w_o||^2 / ||w_o||^2), floored at -300 dB.
double nmsd(const std::vector<double>& w_hat, const std::vector<double>& w_o);

inline constexpr double kNmsdFloorDb = -300.0;

}  // namespace dcdaf
