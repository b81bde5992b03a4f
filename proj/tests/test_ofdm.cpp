#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "wavephy/modem.hpp"
#include "wavephy/ofdm.hpp"

using namespace wavephy;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<cplx> random_samples(size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> out(n);
  for (auto& x : out) x = cplx(g(rng), g(rng));
  return out;
}

double power(const std::vector<cplx>& x) {
  double p = 0.0;
  for (const auto& v : x) p += std::norm(v);
  return p;
}

}  // namespace

TEST_CASE("fft of a delta is flat with unitary scaling") {
  std::vector<cplx> x(64, cplx(0.0, 0.0));
  x[0] = 1.0;
  auto X = fft(x);
  for (const auto& v : X) {
    CHECK(v.real() == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
    CHECK(std::abs(v.imag()) < 1e-12);
  }
}

TEST_CASE("fft round trips and preserves energy") {
  std::mt19937_64 rng(43);
  for (int n : {8, 64, 256}) {
    auto x = random_samples(static_cast<size_t>(n), rng);
    auto X = fft(x);
    CHECK(power(X) == doctest::Approx(power(x)).epsilon(1e-10));  // Parseval
    auto back = ifft(X);
    for (int i = 0; i < n; ++i) CHECK(std::abs(back[i] - x[i]) < 1e-10);
  }
}

TEST_CASE("fft matches the direct dft on a small size") {
  std::mt19937_64 rng(47);
  const int n = 16;
  auto x = random_samples(n, rng);
  auto X = fft(x);
  for (int k = 0; k < n; ++k) {
    cplx acc(0.0, 0.0);
    for (int t = 0; t < n; ++t)
      acc += x[t] * std::exp(cplx(0.0, -2.0 * kPi * k * t / n));
    acc /= std::sqrt(static_cast<double>(n));
    CHECK(std::abs(X[k] - acc) < 1e-10);
  }
}

TEST_CASE("grid assembly places data, pilots and nulls") {
  auto geom = FftGeometry::ieee80211p();
  auto pilots = PilotScheme::standard4();
  auto bins = data_subcarriers(pilots, geom);
  REQUIRE(bins.size() == 48);

  std::vector<cplx> data(48);
  for (int i = 0; i < 48; ++i) data[i] = cplx(i + 1.0, -i);
  auto grid = assemble_grid(data, pilots, geom);

  CHECK(grid.at(0) == cplx(0.0, 0.0));
  CHECK(grid.role(0) == BinRole::Null);
  CHECK(grid.at(-21) == cplx(1.0, 0.0));
  CHECK(grid.at(21) == cplx(-1.0, 0.0));
  CHECK(grid.role(7) == BinRole::Pilot);
  CHECK(grid.at(27) == cplx(0.0, 0.0));  // guard stays null under standard4

  auto extracted = extract_data(grid, bins);
  REQUIRE(extracted.size() == data.size());
  for (size_t i = 0; i < data.size(); ++i) CHECK(extracted[i] == data[i]);
}

TEST_CASE("extended scheme activates the guard-adjacent bins") {
  auto geom = FftGeometry::ieee80211p();
  auto pilots = PilotScheme::extended6();
  CHECK(data_subcarriers(pilots, geom).size() == 48);
  auto grid = reference_grid(pilots, geom);
  CHECK(grid.at(-27) == cplx(1.0, 0.0));
  CHECK(grid.at(27) == cplx(1.0, 0.0));
  CHECK(grid.role(27) == BinRole::Pilot);
}

TEST_CASE("cyclic prefix add/remove are inverse") {
  std::mt19937_64 rng(53);
  auto x = random_samples(64, rng);
  auto with_cp = add_cp(x, 16);
  REQUIRE(with_cp.size() == 80);
  // prefix equals the tail
  for (int i = 0; i < 16; ++i) CHECK(with_cp[i] == x[48 + i]);
  auto stripped = remove_cp(with_cp, 16);
  REQUIRE(stripped.size() == 64);
  for (int i = 0; i < 64; ++i) CHECK(stripped[i] == x[i]);
}

TEST_CASE("cp turns linear convolution into per-bin multiplication") {
  std::mt19937_64 rng(59);
  auto geom = FftGeometry::ieee80211p();
  auto pilots = PilotScheme::standard4();
  auto data = random_samples(48, rng);
  auto grid = assemble_grid(data, pilots, geom);
  auto tx = add_cp(to_time(grid), geom.cp_len);

  // two-tap channel, direct linear convolution
  std::vector<cplx> h = {cplx(1.0, 0.0), cplx(0.0, 0.5)};
  std::vector<cplx> rx(tx.size() + h.size() - 1, cplx(0.0, 0.0));
  for (size_t i = 0; i < tx.size(); ++i)
    for (size_t j = 0; j < h.size(); ++j) rx[i + j] += tx[i] * h[j];

  rx.resize(tx.size());
  auto rx_freq = to_freq(remove_cp(rx, geom.cp_len));

  for (int k = -26; k <= 26; ++k) {
    if (k == 0) continue;
    cplx H = h[0] + h[1] * std::exp(cplx(0.0, -2.0 * kPi * k / 64.0));
    CHECK(std::abs(rx_freq.at(k) - H * grid.at(k)) < 1e-9);
  }
}

TEST_CASE("preamble layout and training structure") {
  auto spec = PreambleSpec::ieee80211();
  auto pre = gen_preamble(spec);
  REQUIRE(static_cast<int>(pre.size()) == spec.length());
  CHECK(pre.size() == 320);

  // short training: period 16 across the first 160 samples
  for (int i = 0; i < 160 - 16; ++i) CHECK(std::abs(pre[i] - pre[i + 16]) < 1e-12);

  // two identical long training symbols after the double guard
  for (int i = 0; i < 64; ++i)
    CHECK(std::abs(pre[192 + i] - pre[256 + i]) < 1e-12);

  // GI2 is the cyclic extension of the long symbol
  for (int i = 0; i < 32; ++i)
    CHECK(std::abs(pre[160 + i] - pre[224 + i]) < 1e-12);
}

TEST_CASE("short training occupies every fourth bin only") {
  auto spec = PreambleSpec::ieee80211();
  int active = 0;
  for (int k = 0; k < 64; ++k) {
    if (std::abs(spec.short_seq[k]) > 0) {
      CHECK(k % 4 == 0);
      ++active;
      CHECK(std::abs(std::abs(spec.short_seq[k]) - std::sqrt(13.0 / 6.0) * std::sqrt(2.0)) <
            1e-12);
    }
  }
  CHECK(active == 12);
}

TEST_CASE("long training is +-1 on the 52 used bins") {
  auto spec = PreambleSpec::ieee80211();
  auto geom = FftGeometry::ieee80211p();
  int active = 0;
  for (int k = -32; k < 32; ++k) {
    cplx v = spec.long_seq[(k + 64) % 64];
    if (geom.is_used(k)) {
      CHECK(std::abs(std::abs(v.real()) - 1.0) < 1e-12);
      CHECK(v.imag() == 0.0);
      ++active;
    } else {
      CHECK(std::abs(v) == 0.0);
    }
  }
  CHECK(active == 52);
}
