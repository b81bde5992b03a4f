#include "wavephy/estimator.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wavephy {

const char* estimator_name(EstMethod m) {
  switch (m) {
    case EstMethod::Ls: return "ls";
    case EstMethod::Mmse: return "mmse";
    case EstMethod::Perfect: return "perfect";
  }
  return "?";
}

ChannelEstimate ls_estimate(const OfdmGrid& rx, const OfdmGrid& ref,
                            const std::vector<int>& at) {
  ChannelEstimate est;
  est.method = EstMethod::Ls;
  est.bins = at;
  std::sort(est.bins.begin(), est.bins.end());
  est.response.reserve(at.size());
  for (int k : est.bins) {
    const cplx x = ref.at(k);
    if (std::abs(x) == 0.0)
      throw std::invalid_argument("LS reference symbol is zero at requested bin");
    est.response.push_back(rx.at(k) / x);
  }
  return est;
}

namespace {

Eigen::MatrixXcd freq_correlation(const std::vector<PdpTap>& pdp,
                                  const std::vector<int>& bins, int fft_size) {
  const int n = static_cast<int>(bins.size());
  Eigen::MatrixXcd r(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      cplx acc(0.0, 0.0);
      for (const auto& tap : pdp) {
        double ang = -2.0 * std::numbers::pi * (bins[a] - bins[b]) * tap.delay /
                     fft_size;
        acc += tap.power * cplx(std::cos(ang), std::sin(ang));
      }
      r(a, b) = acc;
    }
  }
  return r;
}

}  // namespace

MmseContext MmseContext::build(const std::vector<PdpTap>& pdp, double sigma2,
                               const std::vector<int>& bins, int fft_size,
                               bool regularize, double cond_limit) {
  if (sigma2 < 0) throw std::invalid_argument("sigma2 must be >= 0");
  const int n = static_cast<int>(bins.size());
  Eigen::MatrixXcd r = freq_correlation(pdp, bins, fft_size);
  Eigen::MatrixXcd a = r + sigma2 * Eigen::MatrixXcd::Identity(n, n);

  if (regularize) {
    a += 1e-12 * Eigen::MatrixXcd::Identity(n, n);
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const double smin = svd.singularValues()(n - 1);
    const double smax = svd.singularValues()(0);
    if (smin <= 0.0 || smax / smin > cond_limit)
      throw std::runtime_error("MMSE system is ill-conditioned");
  }

  Eigen::MatrixXcd w = r * a.inverse();
  MmseContext ctx;
  ctx.bins = bins;
  ctx.sigma2 = sigma2;
  ctx.weights.resize(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ctx.weights[static_cast<size_t>(i) * n + j] = w(i, j);
  return ctx;
}

ChannelEstimate mmse_estimate(const ChannelEstimate& ls, const MmseContext& ctx) {
  if (ls.bins != ctx.bins)
    throw std::invalid_argument("MMSE context bins do not match the LS estimate");
  const size_t n = ls.bins.size();
  ChannelEstimate out;
  out.method = EstMethod::Mmse;
  out.source = ls.source;
  out.bins = ls.bins;
  out.response.resize(n);
  for (size_t i = 0; i < n; ++i) {
    cplx acc(0.0, 0.0);
    for (size_t j = 0; j < n; ++j)
      acc += ctx.weights[i * n + j] * ls.response[j];
    out.response[i] = acc;
  }
  return out;
}

namespace {

ChannelEstimate interp_linear(const ChannelEstimate& partial,
                              const std::vector<int>& out_bins) {
  // abscissa: position in the ordered output bin list
  std::vector<int> pilot_pos;
  pilot_pos.reserve(partial.bins.size());
  for (int k : partial.bins) {
    auto it = std::lower_bound(out_bins.begin(), out_bins.end(), k);
    if (it == out_bins.end() || *it != k)
      throw std::invalid_argument("pilot bin missing from output bin list");
    pilot_pos.push_back(static_cast<int>(it - out_bins.begin()));
  }

  ChannelEstimate out;
  out.method = partial.method;
  out.source = partial.source;
  out.bins = out_bins;
  out.response.resize(out_bins.size());
  size_t seg = 0;
  for (size_t i = 0; i < out_bins.size(); ++i) {
    const int pos = static_cast<int>(i);
    if (pos <= pilot_pos.front()) {
      out.response[i] = partial.response.front();
    } else if (pos >= pilot_pos.back()) {
      out.response[i] = partial.response.back();
    } else {
      while (pilot_pos[seg + 1] < pos) ++seg;
      const double t = static_cast<double>(pos - pilot_pos[seg]) /
                       (pilot_pos[seg + 1] - pilot_pos[seg]);
      out.response[i] =
          (1.0 - t) * partial.response[seg] + t * partial.response[seg + 1];
    }
  }
  return out;
}

ChannelEstimate interp_dft(const ChannelEstimate& partial,
                           const std::vector<int>& out_bins, int fft_size,
                           int cp_len) {
  const int n_p = static_cast<int>(partial.bins.size());
  const int n_taps = std::min(n_p, cp_len);
  Eigen::MatrixXcd a(n_p, n_taps);
  Eigen::VectorXcd y(n_p);
  for (int p = 0; p < n_p; ++p) {
    y(p) = partial.response[p];
    for (int t = 0; t < n_taps; ++t) {
      double ang = -2.0 * std::numbers::pi * partial.bins[p] * t / fft_size;
      a(p, t) = cplx(std::cos(ang), std::sin(ang));
    }
  }
  Eigen::VectorXcd taps = a.colPivHouseholderQr().solve(y);

  ChannelEstimate out;
  out.method = partial.method;
  out.source = partial.source;
  out.bins = out_bins;
  out.response.resize(out_bins.size());
  for (size_t i = 0; i < out_bins.size(); ++i) {
    cplx acc(0.0, 0.0);
    for (int t = 0; t < n_taps; ++t) {
      double ang = -2.0 * std::numbers::pi * out_bins[i] * t / fft_size;
      acc += taps(t) * cplx(std::cos(ang), std::sin(ang));
    }
    out.response[i] = acc;
  }
  return out;
}

}  // namespace

ChannelEstimate interpolate(const ChannelEstimate& partial, Interpolation method,
                            const std::vector<int>& out_bins, int fft_size,
                            int cp_len) {
  if (!std::is_sorted(partial.bins.begin(), partial.bins.end()))
    throw std::invalid_argument("partial estimate bins must be sorted");
  if (method == Interpolation::Linear) {
    if (partial.bins.size() < 2)
      throw std::invalid_argument("linear interpolation needs >= 2 known points");
    return interp_linear(partial, out_bins);
  }
  if (partial.bins.empty())
    throw std::invalid_argument("DFT interpolation needs >= 1 known point");
  return interp_dft(partial, out_bins, fft_size, cp_len);
}

EqualizedData equalize(const OfdmGrid& rx, const ChannelEstimate& full,
                       const std::vector<int>& data_bins) {
  double rms = 0.0;
  for (const cplx& h : full.response) rms += std::norm(h);
  rms = std::sqrt(rms / std::max<size_t>(full.response.size(), 1));
  const double floor = 1e-6 * rms;

  EqualizedData out;
  out.symbols.reserve(data_bins.size());
  out.flagged.reserve(data_bins.size());
  for (int k : data_bins) {
    auto it = std::lower_bound(full.bins.begin(), full.bins.end(), k);
    if (it == full.bins.end() || *it != k)
      throw std::invalid_argument("estimate undefined on a data bin");
    const cplx h = full.response[it - full.bins.begin()];
    const bool low = std::abs(h) < floor;
    out.flagged.push_back(low);
    out.symbols.push_back(low ? rx.at(k) : rx.at(k) / h);
  }
  return out;
}

}  // namespace wavephy
