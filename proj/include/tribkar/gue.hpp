#pragma once

/**
 * @file gue.hpp
 * @brief The tridiagonal model Tri_N (normal diagonal, Gamma superdiagonal,
 *        unit subdiagonal) and Monte-Carlo estimates of joint cumulants of
 *        its power traces.
 */

#include "perm.hpp"
#include "set_partition.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace tribkar {

struct TridiagonalSample {
  std::vector<double> xi;   ///< diagonal ξ_1..ξ_N
  std::vector<double> eta;  ///< superdiagonal η_1..η_{N−1}
  int size() const { return static_cast<int>(xi.size()); }
};

/// η_i is a sum of i unit exponentials, drawn as −log of a product of i
/// uniforms on (0,1].
template <typename Rng>
TridiagonalSample sample_tridiagonal(int N, Rng& rng) {
  if (N < 1) throw std::invalid_argument("tridiagonal model needs N >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  TridiagonalSample s;
  s.xi.resize(N);
  s.eta.resize(N - 1);
  for (auto& x : s.xi) x = normal(rng);
  for (int i = 1; i < N; ++i) {
    double prod = 1.0;
    for (int k = 0; k < i; ++k) prod *= 1.0 - unif(rng);
    s.eta[i - 1] = -std::log(prod);
  }
  return s;
}

/// tr Tri^k for k = 0..kmax. Powers are kept as band matrices: row r of
/// T^m holds entries at columns r−m..r+m.
inline std::vector<long double> tridiagonal_traces(const TridiagonalSample& s, int kmax) {
  const int N = s.size();
  std::vector<long double> out(kmax + 1, 0.0L);
  out[0] = N;
  if (kmax == 0) return out;
  int m = 0;
  std::vector<long double> band(N, 1.0L);  // T^0, width 1
  auto at = [&](const std::vector<long double>& b, int width, int r, int c) -> long double {
    const int off = c - r + width;
    if (c < 0 || c >= N || off < 0 || off > 2 * width) return 0.0L;
    return b[static_cast<std::size_t>(r) * (2 * width + 1) + off];
  };
  for (int k = 1; k <= kmax; ++k) {
    const int w = m + 1;
    std::vector<long double> next(static_cast<std::size_t>(N) * (2 * w + 1), 0.0L);
    // (T^{m}·T)(r,c) = Σ_t T^m(r,t) T(t,c) with T(t,t)=ξ, T(t,t+1)=η, T(t+1,t)=1
    for (int r = 0; r < N; ++r)
      for (int c = std::max(0, r - w); c <= std::min(N - 1, r + w); ++c) {
        long double v = at(band, m, r, c) * s.xi[c];
        if (c >= 1) v += at(band, m, r, c - 1) * s.eta[c - 1];
        if (c + 1 < N) v += at(band, m, r, c + 1);
        next[static_cast<std::size_t>(r) * (2 * w + 1) + (c - r + w)] = v;
      }
    band = std::move(next);
    m = w;
    long double tr = 0.0L;
    for (int r = 0; r < N; ++r) tr += at(band, m, r, r);
    out[k] = tr;
  }
  return out;
}

/// SplitMix64 step, used to derive independent group seeds from one seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct McEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  long samples = 0;
};

namespace detail {

/// Joint cumulant estimate from subset power sums S[T] = Σ_s ∏_{a∈T} x_a(s)
/// over `count` samples. Unbiased k-statistics for ℓ ≤ 3, plug-in beyond.
inline long double cumulant_from_sums(const std::vector<long double>& S, int ell, long double count) {
  const long double n = count;
  if (ell == 1) return S[1] / n;
  if (ell == 2) return (S[3] - S[1] * S[2] / n) / (n - 1);
  if (ell == 3) {
    const long double num = n * n * S[7] - n * (S[3] * S[4] + S[5] * S[2] + S[6] * S[1]) +
                            2 * S[1] * S[2] * S[4];
    return num / (n * (n - 1) * (n - 2));
  }
  return joint_cumulant<long double>(
      SetPartition::finest(ell),
      [&](const SetPartition& p) {
        long double prod = 1.0L;
        for (const auto& block : p.blocks()) {
          unsigned mask = 0;
          for (int a : block) mask |= 1u << a;
          prod *= S[mask] / n;
        }
        return prod;
      });
}

}  // namespace detail

/// κ(tr Tri^{λ_1}, …, tr Tri^{λ_ℓ}) from `samples` draws split into `groups`
/// blocks with seeds derived from `seed`; the standard error is a
/// delete-one-group jackknife. Groups run on up to `jobs` threads and the
/// result does not depend on the thread count. Values are centered at a pilot mean so the
/// power sums stay well conditioned.
inline McEstimate mc_cumulant(const NumericalPartition& lambda, int N, long samples, std::uint64_t seed,
                              int jobs = 1, int groups = 100) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  const int ell = lambda.length();
  if (ell > kDefaultIntervalCap) throw std::length_error("too many traces");
  groups = static_cast<int>(std::min<long>(groups, samples));
  if (groups < 2) groups = 2;
  const int kmax = lambda.parts().front();
  const std::size_t subsets = std::size_t{1} << ell;

  std::vector<long double> values(static_cast<std::size_t>(samples) * ell);
  std::vector<long> group_of(samples);
  std::vector<long> start(groups + 1, 0);
  for (int g = 0; g < groups; ++g) start[g + 1] = start[g] + samples / groups + (g < samples % groups ? 1 : 0);
  std::vector<std::uint64_t> seeds(groups);
  std::uint64_t state = seed;
  for (auto& s : seeds) s = splitmix64(state);
  auto run_group = [&](int g) {
    std::mt19937_64 rng(seeds[g]);
    for (long s = start[g]; s < start[g + 1]; ++s) {
      const auto tr = tridiagonal_traces(sample_tridiagonal(N, rng), kmax);
      for (int a = 0; a < ell; ++a) values[static_cast<std::size_t>(s) * ell + a] = tr[lambda.parts()[a]];
      group_of[s] = g;
    }
  };
  jobs = std::clamp(jobs, 1, groups);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int g = next++; g < groups; g = next++) run_group(g);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<long double> shift(ell, 0.0L);
  for (long s = 0; s < samples; ++s)
    for (int a = 0; a < ell; ++a) shift[a] += values[static_cast<std::size_t>(s) * ell + a];
  for (auto& c : shift) c /= static_cast<long double>(samples);

  std::vector<std::vector<long double>> gsum(groups, std::vector<long double>(subsets, 0.0L));
  for (long s = 0; s < samples; ++s) {
    auto& row = gsum[group_of[s]];
    for (std::size_t T = 0; T < subsets; ++T) {
      long double p = 1.0L;
      for (int a = 0; a < ell; ++a)
        if (T & (std::size_t{1} << a)) p *= values[static_cast<std::size_t>(s) * ell + a] - shift[a];
      row[T] += p;
    }
  }
  std::vector<long double> total(subsets, 0.0L);
  std::vector<long> gcount(groups, 0);
  for (long s = 0; s < samples; ++s) ++gcount[group_of[s]];
  for (const auto& row : gsum)
    for (std::size_t T = 0; T < subsets; ++T) total[T] += row[T];

  const long double offset = ell == 1 ? shift[0] : 0.0L;
  McEstimate out;
  out.samples = samples;
  out.estimate = static_cast<double>(detail::cumulant_from_sums(total, ell, samples) + offset);
  std::vector<long double> loo(groups);
  long double mean = 0.0L;
  for (int g = 0; g < groups; ++g) {
    std::vector<long double> rest(subsets);
    for (std::size_t T = 0; T < subsets; ++T) rest[T] = total[T] - gsum[g][T];
    loo[g] = detail::cumulant_from_sums(rest, ell, samples - gcount[g]);
    mean += loo[g];
  }
  mean /= groups;
  long double var = 0.0L;
  for (auto v : loo) var += (v - mean) * (v - mean);
  var *= static_cast<long double>(groups - 1) / groups;
  out.stderr_ = static_cast<double>(std::sqrt(var));
  return out;
}

}  // namespace tribkar
