#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "wavephy/channel.hpp"
#include "wavephy/ofdm.hpp"

using namespace wavephy;

TEST_CASE("awgn at infinite snr is a passthrough") {
  std::mt19937_64 rng(61);
  std::vector<cplx> x = {cplx(1.0, -2.0), cplx(0.5, 0.5), cplx(-3.0, 0.0)};
  auto out = apply(x, ChannelSpec::awgn(std::numeric_limits<double>::infinity()), 64, rng);
  REQUIRE(out.samples.size() == x.size());
  for (size_t i = 0; i < x.size(); ++i) CHECK(out.samples[i] == x[i]);
  REQUIRE(out.realization.taps.size() == 1);
  CHECK(out.realization.taps[0] == cplx(1.0, 0.0));
}

TEST_CASE("noise variance follows the snr in db") {
  CHECK(noise_variance(0.0) == doctest::Approx(1.0));
  CHECK(noise_variance(10.0) == doctest::Approx(0.1));
  CHECK(noise_variance(std::numeric_limits<double>::infinity()) == 0.0);
}

TEST_CASE("empirical noise power matches the configured snr within 0.1 db") {
  std::mt19937_64 rng(67);
  const size_t n = 1000000;
  std::vector<cplx> zeros(n, cplx(0.0, 0.0));
  for (double snr : {0.0, 10.0, 23.0}) {
    auto out = apply(zeros, ChannelSpec::awgn(snr), 64, rng);
    double p = 0.0;
    cplx mean(0.0, 0.0);
    for (const auto& v : out.samples) {
      p += std::norm(v);
      mean += v;
    }
    p /= static_cast<double>(n);
    mean /= static_cast<double>(n);
    double measured_snr = -10.0 * std::log10(p);
    CHECK(std::abs(measured_snr - snr) < 0.1);
    // complex noise is zero mean
    CHECK(std::abs(mean) < 5.0 * std::sqrt(noise_variance(snr) / n));
  }
}

TEST_CASE("flat rayleigh is a single multiplicative tap") {
  std::mt19937_64 rng(71);
  std::vector<cplx> x(128, cplx(1.0, 0.0));
  auto out = apply(x, ChannelSpec::flat_rayleigh(std::numeric_limits<double>::infinity()),
                   64, rng);
  REQUIRE(out.realization.taps.size() == 1);
  cplx h = out.realization.taps[0];
  for (const auto& v : out.samples) CHECK(std::abs(v - h) < 1e-12);
  // frequency response of a flat channel is constant
  for (const auto& H : out.realization.freq) CHECK(std::abs(H - h) < 1e-12);
}

TEST_CASE("rayleigh taps have the configured mean powers") {
  std::mt19937_64 rng(73);
  auto spec = ChannelSpec::rayleigh_default(std::numeric_limits<double>::infinity());
  std::vector<double> acc(4, 0.0);
  const int trials = 200000;
  std::vector<cplx> x(1, cplx(0.0, 0.0));
  for (int t = 0; t < trials; ++t) {
    auto out = apply(x, spec, 64, rng);
    for (int d = 0; d < 4; ++d) acc[d] += std::norm(out.realization.taps[d]);
  }
  for (int d = 0; d < 4; ++d) {
    double measured = acc[d] / trials;
    CHECK(measured == doctest::Approx(spec.pdp[d].power).epsilon(0.02));
  }
}

TEST_CASE("noiseless multipath output matches per-bin multiplication") {
  std::mt19937_64 rng(79);
  std::normal_distribution<double> g(0.0, 1.0);
  OfdmGrid grid(64);
  for (int k = -26; k <= 26; ++k) {
    if (k != 0) grid.at(k) = cplx(g(rng), g(rng));
  }
  auto tx = add_cp(to_time(grid), 16);
  auto spec = ChannelSpec::rayleigh_default(std::numeric_limits<double>::infinity());

  // prepend a dummy symbol so the convolution tail has settled
  std::vector<cplx> burst = tx;
  burst.insert(burst.end(), tx.begin(), tx.end());
  auto out = apply(burst, spec, 64, rng);

  auto rx = to_freq(remove_cp({out.samples.begin() + 80, out.samples.end()}, 16));
  for (int k = -26; k <= 26; ++k) {
    if (k == 0) continue;
    cplx H = out.realization.freq[(k + 64) % 64];
    CHECK(std::abs(rx.at(k) - H * grid.at(k)) < 1e-9);
  }
}

TEST_CASE("realization frequency response is the dft of the taps") {
  std::mt19937_64 rng(83);
  auto spec = ChannelSpec::rayleigh_default(10.0);
  auto out = apply(std::vector<cplx>(16, cplx(0.0, 0.0)), spec, 64, rng);
  const auto& h = out.realization.taps;
  for (int k = 0; k < 64; ++k) {
    cplx acc(0.0, 0.0);
    for (size_t d = 0; d < h.size(); ++d)
      acc += h[d] * std::exp(cplx(0.0, -2.0 * 3.14159265358979323846 * k * double(d) / 64.0));
    CHECK(std::abs(out.realization.freq[k] - acc) < 1e-12);
  }
}

TEST_CASE("doppler frequency") {
  CHECK(doppler_hz(0.0, 5.9e9) == 0.0);
  CHECK(doppler_hz(50.0, 5.9e9) == doctest::Approx(273.3).epsilon(0.01));
  // linear in speed
  CHECK(doppler_hz(100.0, 5.9e9) == doctest::Approx(2.0 * doppler_hz(50.0, 5.9e9)));
  CHECK_THROWS(doppler_hz(-1.0, 5.9e9));
}

TEST_CASE("spec validation") {
  auto spec = ChannelSpec::rayleigh_default(10.0);
  CHECK_NOTHROW(spec.validate(16));
  CHECK_THROWS(spec.validate(3));  // delay 3 not below cp_len 3
  spec.pdp[0].power += 0.1;
  CHECK_THROWS(spec.validate(16));  // powers no longer sum to one
  ChannelSpec empty;
  empty.kind = ChannelKind::RayleighTdl;
  CHECK_THROWS(empty.validate(16));
}
