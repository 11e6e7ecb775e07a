#include "generators.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace tribkar;

namespace {

std::vector<double> dense_traces(const TridiagonalSample& s, int kmax) {
  const int n = s.size();
  std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    t[i][i] = s.xi[i];
    if (i + 1 < n) {
      t[i][i + 1] = s.eta[i];
      t[i + 1][i] = 1.0;
    }
  }
  std::vector<double> out{static_cast<double>(n)};
  auto p = t;
  for (int k = 1; k <= kmax; ++k) {
    double tr = 0;
    for (int i = 0; i < n; ++i) tr += p[i][i];
    out.push_back(tr);
    std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
      for (int m = 0; m < n; ++m)
        for (int j = 0; j < n; ++j) q[i][j] += p[i][m] * t[m][j];
    p = std::move(q);
  }
  return out;
}

}  // namespace

TEST_CASE("tridiagonal sampler shape", "[gue]") {
  gen::Engine rng(61);
  const auto one = sample_tridiagonal(1, rng);
  CHECK(one.size() == 1);
  CHECK(one.eta.empty());
  CHECK_THROWS(sample_tridiagonal(0, rng));
  const auto s = sample_tridiagonal(7, rng);
  CHECK(s.eta.size() == 6);
  for (double e : s.eta) CHECK(e > 0.0);
}

TEST_CASE("superdiagonal means and trace of the square", "[gue][statistical]") {
  // E η_i = i with variance i; E tr T² = N².
  gen::Engine rng(62);
  const int N = 6, draws = 100000;
  std::vector<double> sum(N - 1, 0.0);
  double tr2 = 0, tr2sq = 0;
  for (int d = 0; d < draws; ++d) {
    const auto s = sample_tridiagonal(N, rng);
    for (int i = 0; i < N - 1; ++i) sum[i] += s.eta[i];
    const double v = static_cast<double>(tridiagonal_traces(s, 2)[2]);
    tr2 += v;
    tr2sq += v * v;
  }
  for (int i = 1; i < N; ++i) CHECK(std::abs(sum[i - 1] / draws - i) < 3.0 * std::sqrt(i / double(draws)));
  const double mean = tr2 / draws;
  const double se = std::sqrt((tr2sq / draws - mean * mean) / draws);
  CHECK(std::abs(mean - N * N) < 3.0 * se);
}

TEST_CASE("banded traces match dense powers", "[gue]") {
  gen::Engine rng(63);
  for (int N : {1, 2, 3, 5, 9}) {
    const auto s = sample_tridiagonal(N, rng);
    const auto fast = tridiagonal_traces(s, 8);
    const auto slow = dense_traces(s, 8);
    for (int k = 0; k <= 8; ++k)
      CHECK(static_cast<double>(fast[k]) == Catch::Approx(slow[k]).epsilon(1e-9).margin(1e-9));
  }
}

TEST_CASE("Monte-Carlo cumulants", "[gue][statistical]") {
  const auto two = NumericalPartition::parse("2");
  const auto r = mc_cumulant(two, 10, 20000, 7);
  CHECK(r.samples == 20000);
  CHECK(r.stderr_ > 0.0);
  CHECK(std::abs(r.estimate - 100.0) < 4.0 * r.stderr_);

  const auto again = mc_cumulant(two, 10, 20000, 7);
  CHECK(again.estimate == r.estimate);
  CHECK(again.stderr_ == r.stderr_);
  const auto threaded = mc_cumulant(two, 10, 20000, 7, 4);
  CHECK(threaded.estimate == r.estimate);
  CHECK(threaded.stderr_ == r.stderr_);
  CHECK(mc_cumulant(two, 10, 20000, 8).estimate != r.estimate);

  CHECK_THROWS(mc_cumulant(two, 10, 1, 7));
  const auto pair = mc_cumulant(NumericalPartition::parse("2,2"), 6, 40000, 9, 2);
  CHECK(std::abs(pair.estimate - 72.0) < 4.0 * pair.stderr_);
}

TEST_CASE("standard errors shrink like samples^-1/2", "[gue][statistical]") {
  const auto lambda = NumericalPartition::parse("2");
  std::vector<double> logs, loge;
  for (long samples : {1000L, 10000L, 100000L, 1000000L}) {
    const auto r = mc_cumulant(lambda, 4, samples, 11, 4);
    logs.push_back(std::log10(static_cast<double>(samples)));
    loge.push_back(std::log10(r.stderr_));
  }
  const double mx = (logs[0] + logs[1] + logs[2] + logs[3]) / 4;
  const double my = (loge[0] + loge[1] + loge[2] + loge[3]) / 4;
  double sxy = 0, sxx = 0;
  for (int k = 0; k < 4; ++k) {
    sxy += (logs[k] - mx) * (loge[k] - my);
    sxx += (logs[k] - mx) * (logs[k] - mx);
  }
  CHECK(sxy / sxx == Catch::Approx(-0.5).margin(0.1));
}
