#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "wavephy/params.hpp"

using namespace wavephy;

namespace {

// Independent run counter over the transmitted bin list.
int oracle_run(const std::vector<int>& bins, const std::set<int>& pilots) {
  int best = 0, cur = 0;
  for (int k : bins) {
    if (pilots.count(k)) {
      cur = 0;
    } else {
      ++cur;
      if (cur > best) best = cur;
    }
  }
  return best;
}

// Brute-force minimum run over every uniform (offset, stride) placement.
int oracle_best_uniform_run(const FftGeometry& geom, int n_pilots) {
  const auto& used = geom.used_indices;
  const int n = static_cast<int>(used.size());
  int best = n + 1;
  for (int stride = 1; stride <= n; ++stride) {
    int span = (n_pilots - 1) * stride;
    if (span >= n) break;
    for (int offset = 0; offset + span < n; ++offset) {
      std::set<int> pos;
      for (int i = 0; i < n_pilots; ++i) pos.insert(used[offset + i * stride]);
      if (static_cast<int>(pos.size()) != n_pilots) continue;
      best = std::min(best, oracle_run(used, pos));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("standard pilot scheme gives run 13") {
  auto geom = FftGeometry::ieee80211p();
  CHECK(max_unestimated_run(geom, PilotScheme::standard4()) == 13);
}

TEST_CASE("all-pilot scheme gives run 0") {
  FftGeometry geom;
  geom.fft_size = 8;
  geom.cp_len = 2;
  geom.used_indices = {-2, -1, 1, 2};
  PilotScheme pilots;
  pilots.positions = {-2, -1, 1, 2};
  pilots.values.assign(4, cplx(1.0, 0.0));
  CHECK(max_unestimated_run(geom, pilots) == 0);
}

TEST_CASE("derived regular pattern matches exhaustive oracle") {
  auto geom = FftGeometry::ieee80211p();
  for (int n_pilots : {2, 3, 4, 5, 6, 8}) {
    auto scheme = derive_regular_pattern(geom, n_pilots);
    CHECK(static_cast<int>(scheme.positions.size()) == n_pilots);
    int run = max_unestimated_run(geom, scheme);
    CHECK(run == oracle_best_uniform_run(geom, n_pilots));
  }
}

TEST_CASE("derived four-pilot pattern beats the standard placement") {
  auto geom = FftGeometry::ieee80211p();
  auto scheme = derive_regular_pattern(geom, 4);
  CHECK(scheme.name == PilotPattern::Regular4);
  int run = max_unestimated_run(geom, scheme);
  CHECK(run <= 12);
  CHECK(run < max_unestimated_run(geom, PilotScheme::standard4()));
  // placement is DC symmetric
  for (int p : scheme.positions)
    CHECK(std::binary_search(scheme.positions.begin(), scheme.positions.end(), -p));
}

TEST_CASE("three-subcarrier toy geometry") {
  FftGeometry geom;
  geom.fft_size = 8;
  geom.cp_len = 2;
  geom.used_indices = {-1, 1, 2};
  auto scheme = derive_regular_pattern(geom, 1);
  CHECK(scheme.positions == std::vector<int>{1});
  CHECK(max_unestimated_run(geom, scheme) == 1);
}

TEST_CASE("spectral efficiency fractions are exact") {
  auto geom = FftGeometry::ieee80211p();

  auto s4 = spectral_efficiency_pilots(PilotScheme::standard4(), geom);
  CHECK(s4.n_pilots == 4);
  CHECK(s4.n_used == 52);
  CHECK(s4.n_data == 48);
  CHECK(s4.ratio() == 4.0 / 52.0);
  CHECK(std::lround(s4.ratio() * 1e4) == 769);

  auto e6 = spectral_efficiency_pilots(PilotScheme::extended6(), geom);
  CHECK(e6.n_pilots == 6);
  CHECK(e6.n_used == 52);
  CHECK(e6.n_data == 48);  // the two extra pilots live on formerly null bins
  CHECK(e6.ratio() == 6.0 / 52.0);
  CHECK(std::lround(e6.ratio() * 1e4) == 1154);
  CHECK(e6.ratio_incl_pilots() == 6.0 / 54.0);
}

TEST_CASE("extended scheme does not raise the worst-case run") {
  auto geom = FftGeometry::ieee80211p();
  int run6 = max_unestimated_run(geom, PilotScheme::extended6());
  int run4 = max_unestimated_run(geom, PilotScheme::standard4());
  CHECK(run6 <= run4);
}

TEST_CASE("run length is mirror invariant") {
  auto geom = FftGeometry::ieee80211p();
  for (int n_pilots : {2, 4, 6}) {
    auto scheme = derive_regular_pattern(geom, n_pilots);
    PilotScheme mirrored = scheme;
    for (auto& p : mirrored.positions) p = -p;
    std::sort(mirrored.positions.begin(), mirrored.positions.end());
    CHECK(max_unestimated_run(geom, mirrored) == max_unestimated_run(geom, scheme));
  }
}

TEST_CASE("more uniform pilots never hurt the worst-case run") {
  auto geom = FftGeometry::ieee80211p();
  int prev = geom.n_used() + 1;
  for (int n_pilots = 1; n_pilots <= 12; ++n_pilots) {
    auto scheme = derive_regular_pattern(geom, n_pilots);
    int run = max_unestimated_run(geom, scheme);
    CHECK(run <= prev);
    prev = run;
  }
}

TEST_CASE("parameter validation rejects bad inputs") {
  auto geom = FftGeometry::ieee80211p();
  CHECK_THROWS(derive_regular_pattern(geom, 0));
  CHECK_THROWS(derive_regular_pattern(geom, 53));

  FftGeometry bad = geom;
  bad.fft_size = 60;  // not a power of two
  CHECK_THROWS(bad.validate());

  PilotScheme dup = PilotScheme::standard4();
  dup.positions = {-21, -7, -7, 21};
  CHECK_THROWS(dup.validate(geom));

  PilotScheme dc = PilotScheme::standard4();
  dc.positions = {-21, -7, 0, 21};
  CHECK_THROWS(dc.validate(geom));

  McsScheme bad_mcs{Modulation::Bpsk, CodeRate::R23};
  CHECK_THROWS(bad_mcs.validate());
  CHECK(all_mcs().size() == 8);
  for (const auto& mcs : all_mcs()) CHECK_NOTHROW(mcs.validate());
}
