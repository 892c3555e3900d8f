#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dcdaf/signals.hpp"
#include "oracles.hpp"

using namespace dcdaf;

TEST_CASE("rng: substreams are deterministic and decorrelated") {
    Rng a = Rng::substream(123, 7);
    Rng b = Rng::substream(123, 7);
    Rng c = Rng::substream(123, 8);
    bool all_equal = true, any_equal_to_c = false;
    for (int i = 0; i < 100; ++i) {
        const double va = a.uniform01(), vb = b.uniform01(), vc = c.uniform01();
        all_equal = all_equal && (va == vb);
        any_equal_to_c = any_equal_to_c || (va == vc);
        CHECK(va >= 0.0);
        CHECK(va < 1.0);
    }
    CHECK(all_equal);
    CHECK_FALSE(any_equal_to_c);
}

TEST_CASE("rng: normal variates have the right first moments") {
    Rng rng(2024);
    const int n = 100000;
    double mean = 0.0, var = 0.0;
    std::vector<double> v(n);
    for (double& x : v) x = rng.normal();
    for (double x : v) mean += x;
    mean /= n;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= n;
    CHECK(std::fabs(mean) < 0.02);
    CHECK(var == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("ar1 input: white case has unit variance and no memory") {
    const auto x = gen_ar1(InputModel{0.0}, 100000, 7);
    double var = 0.0, lag1 = 0.0;
    for (double v : x) var += v * v;
    var /= static_cast<double>(x.size());
    for (size_t i = 1; i < x.size(); ++i) lag1 += x[i] * x[i - 1];
    lag1 /= (var * static_cast<double>(x.size() - 1));
    CHECK(var == doctest::Approx(1.0).epsilon(0.1));
    CHECK(std::fabs(lag1) < 0.05);
}

TEST_CASE("ar1 input: correlated case matches the stationary variance and lag profile") {
    const double rho = 0.9;
    const auto x = gen_ar1(InputModel{rho}, 100000, 11);
    double var = 0.0, lag1 = 0.0;
    for (double v : x) var += v * v;
    var /= static_cast<double>(x.size());
    for (size_t i = 1; i < x.size(); ++i) lag1 += x[i] * x[i - 1];
    lag1 /= (var * static_cast<double>(x.size() - 1));
    CHECK(var == doctest::Approx(1.0 / (1.0 - rho * rho)).epsilon(0.1));
    CHECK(lag1 == doctest::Approx(rho).epsilon(0.03));
}

TEST_CASE("ar1 input: the 128-tap covariance spread matches the known conditioning") {
    // Estimated autocorrelation out to lag 127, assembled as a symmetric
    // Toeplitz matrix; its eigenvalue spread for rho = 0.9 is 346.647.
    const int M = 128;
    const long long n = 100000;
    const auto x = gen_ar1(InputModel{0.9}, n, 21);
    Matrix T(M);
    for (int k = 0; k < M; ++k) {
        double s = 0.0;
        for (long long i = 0; i + k < n; ++i) s += x[i] * x[i + k];
        const double rk = s / static_cast<double>(n - k);
        for (int i = 0; i + k < M; ++i) T(i, i + k) = T(i + k, i) = rk;
    }
    const auto ev = oracle::symmetric_eigenvalues(T);
    const double spread = ev.back() / ev.front();
    CHECK(spread == doctest::Approx(346.647).epsilon(0.15));
}

TEST_CASE("ar1 input: determinism and validation") {
    const auto a = gen_ar1(InputModel{0.5}, 100, 3);
    const auto b = gen_ar1(InputModel{0.5}, 100, 3);
    CHECK(a == b);
    CHECK_THROWS_AS(gen_ar1(InputModel{1.0}, 100, 3), std::invalid_argument);
    CHECK_THROWS_AS(gen_ar1(InputModel{0.5}, 0, 3), std::invalid_argument);
}

TEST_CASE("alpha-stable noise: the Gaussian corner is exactly normal") {
    // alpha = 2 has characteristic function exp(-gamma*t^2) = N(0, 2*gamma);
    // gamma = 1/2 gives the standard normal.
    const auto v = gen_alpha_stable(AlphaStable{2.0, 0.5}, 10000, 31);
    const double d = oracle::ks_normal(v, 1.0);
    CHECK(d < 1.628 / std::sqrt(10000.0));  // 1% critical value
}

TEST_CASE("alpha-stable noise: the alpha = 1 branch is Cauchy") {
    const auto v = gen_alpha_stable(AlphaStable{1.0, 1.0}, 100000, 37);
    const double q1 = oracle::quantile(v, 0.25);
    const double q3 = oracle::quantile(v, 0.75);
    CHECK(std::fabs(oracle::quantile(v, 0.5)) < 0.02);
    CHECK((q3 - q1) == doctest::Approx(2.0).epsilon(0.05));  // quartiles at -+1
}

TEST_CASE("alpha-stable noise: empirical characteristic function at alpha = 1.4") {
    const AlphaStable model{1.4, 0.05};
    const auto v = gen_alpha_stable(model, 100000, 41);
    for (double t : {0.5, 1.0, 2.0}) {
        const double expected = std::exp(-model.gamma * std::pow(t, model.alpha));
        CHECK(std::fabs(oracle::ecf(v, t) - expected) <= 0.02);
    }
    CHECK(oracle::kurtosis(v) > 10.0);  // far heavier tails than any Gaussian
}

TEST_CASE("alpha-stable noise: determinism and validation") {
    const auto a = gen_alpha_stable(AlphaStable{1.4, 0.05}, 50, 5);
    const auto b = gen_alpha_stable(AlphaStable{1.4, 0.05}, 50, 5);
    CHECK(a == b);
    CHECK_THROWS_AS(gen_alpha_stable(AlphaStable{0.0, 0.05}, 10, 5), std::invalid_argument);
    CHECK_THROWS_AS(gen_alpha_stable(AlphaStable{2.1, 0.05}, 10, 5), std::invalid_argument);
    CHECK_THROWS_AS(gen_alpha_stable(AlphaStable{1.4, 0.0}, 10, 5), std::invalid_argument);
}

TEST_CASE("noise dispatch covers all models") {
    const auto stable = gen_noise(AlphaStable{1.4, 0.05}, 20, 9);
    CHECK(stable == gen_alpha_stable(AlphaStable{1.4, 0.05}, 20, 9));

    const auto g = gen_noise(GaussianNoise{4.0}, 50000, 9);
    double var = 0.0;
    for (double v : g) var += v * v;
    var /= static_cast<double>(g.size());
    CHECK(var == doctest::Approx(4.0).epsilon(0.1));

    const auto silent = gen_noise(NoNoise{}, 10, 9);
    for (double v : silent) CHECK(v == 0.0);
}

TEST_CASE("sparse channel: a localized burst on an exactly zero background") {
    const int M = 128;
    const Channel ch = gen_channel(ChannelKind::Sparse, M, 1);
    int zeros = 0;
    for (double v : ch.w_o) zeros += (v == 0.0) ? 1 : 0;
    CHECK(zeros >= static_cast<int>(0.85 * M));
    double energy = 0.0;
    for (double v : ch.w_o) energy += v * v;
    CHECK(energy == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gen_channel(ChannelKind::Sparse, M, 1).w_o == ch.w_o);

    const Channel tiny = gen_channel(ChannelKind::Sparse, 1, 2);
    CHECK(std::fabs(tiny.w_o[0]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("disperse channel: energy over most taps, no long dead stretches") {
    const int M = 128;
    const Channel ch = gen_channel(ChannelKind::Disperse, M, 1);
    double energy = 0.0;
    for (double v : ch.w_o) energy += v * v;
    CHECK(energy == doctest::Approx(1.0).epsilon(1e-12));
    int longest_dead = 0, run = 0;
    for (double v : ch.w_o) {
        run = (std::fabs(v) < 1e-6) ? run + 1 : 0;
        longest_dead = std::max(longest_dead, run);
    }
    CHECK(longest_dead <= 8);
    CHECK_THROWS_AS(gen_channel(ChannelKind::Custom, M, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_channel(ChannelKind::Sparse, 0, 1), std::invalid_argument);
}

TEST_CASE("channel shift: delay with zero fill and tail truncation") {
    Channel ch;
    ch.w_o = {1.0, 2.0, 3.0, 4.0};
    CHECK(shift_channel(ch, 0).w_o == ch.w_o);
    CHECK(shift_channel(ch, 1).w_o == std::vector<double>{0.0, 1.0, 2.0, 3.0});
    CHECK(shift_channel(ch, 3).w_o == std::vector<double>{0.0, 0.0, 0.0, 1.0});
    CHECK_THROWS_AS(shift_channel(ch, 4), std::invalid_argument);
    CHECK_THROWS_AS(shift_channel(ch, -1), std::invalid_argument);
}

TEST_CASE("normalized deviation in dB") {
    const std::vector<double> w_o = {3.0, 4.0};
    CHECK(nmsd(w_o, w_o) == kNmsdFloorDb);                       // exact match hits the floor
    CHECK(nmsd({0.0, 0.0}, w_o) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(nmsd({3.3, 4.4}, w_o) == doctest::Approx(-20.0).epsilon(1e-9));

    SUBCASE("invariant under a change of orthonormal basis") {
        // Rotate both vectors by the same Givens rotation: ratio unchanged.
        const double c = std::cos(0.7), s = std::sin(0.7);
        const std::vector<double> w_hat = {3.5, 3.8};
        const std::vector<double> rw_o = {c * w_o[0] - s * w_o[1], s * w_o[0] + c * w_o[1]};
        const std::vector<double> rw_hat = {c * w_hat[0] - s * w_hat[1], s * w_hat[0] + c * w_hat[1]};
        CHECK(nmsd(w_hat, w_o) == doctest::Approx(nmsd(rw_hat, rw_o)).epsilon(1e-10));
    }

    CHECK_THROWS_AS(nmsd({1.0}, w_o), std::invalid_argument);
    CHECK_THROWS_AS(nmsd({1.0, 1.0}, {0.0, 0.0}), std::invalid_argument);
}
