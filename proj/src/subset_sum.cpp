#include "scenopt/subset_sum.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "scenopt/error.hpp"

namespace scenopt {

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    correction_ += (sum_ - t) + x;
  } else {
    correction_ += (x - t) + sum_;
  }
  sum_ = t;
}

void CompensatedSum::add(const CompensatedSum& other) {
  add(other.sum_);
  add(other.correction_);
}

long double log_binomial_ld(std::uint64_t n, std::uint64_t k) {
  if (k > n) return -INFINITY;
  if (k == 0 || k == n) return 0.0L;
  const auto nd = static_cast<long double>(n);
  const auto kd = static_cast<long double>(k);
  return std::lgammal(nd + 1.0L) - std::lgammal(kd + 1.0L) - std::lgammal(nd - kd + 1.0L);
}

double log_binomial(std::uint64_t n, std::uint64_t k) {
  return static_cast<double>(log_binomial_ld(n, k));
}

double binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0.0;
  if (k > n - k) k = n - k;
  // Small cases exactly by the multiplicative formula; beyond that via lgamma.
  if (k <= 30 && n <= 1000) {
    double c = 1.0;
    for (std::uint64_t j = 1; j <= k; ++j) {
      c = c * static_cast<double>(n - k + j) / static_cast<double>(j);
    }
    return std::round(c);
  }
  return std::exp(log_binomial(n, k));
}

namespace {

struct FactorTable {
  std::vector<double> logs;     // log f_i, 0 for zero factors
  std::vector<std::uint8_t> zero;
  std::size_t zero_count = 0;
  double log_total = 0.0;       // Σ log f_i over non-zero factors
};

FactorTable tabulate(std::span<const double> factors) {
  FactorTable t;
  t.logs.resize(factors.size());
  t.zero.resize(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const double f = factors[i];
    if (!(f >= 0.0 && f <= 1.0)) {
      throw DomainError("subset-sum factors must lie in [0, 1], got " + std::to_string(f));
    }
    if (f == 0.0) {
      t.zero[i] = 1;
      ++t.zero_count;
    } else {
      t.logs[i] = std::log(f);
      t.log_total += t.logs[i];
    }
  }
  return t;
}

// Subsets whose smallest member is `first`, in lexicographic order.
void enumerate_from(const FactorTable& t, std::size_t k, std::size_t first, CompensatedSum& acc) {
  const std::size_t n = t.logs.size();
  std::vector<std::size_t> idx(k);
  idx[0] = first;
  for (std::size_t j = 1; j < k; ++j) idx[j] = first + j;
  if (k > 0 && idx[k - 1] >= n) return;
  while (true) {
    double log_members = 0.0;
    std::size_t zeros_in = 0;
    for (std::size_t j = 0; j < k; ++j) {
      log_members += t.logs[idx[j]];
      zeros_in += t.zero[idx[j]];
    }
    if (zeros_in == t.zero_count) acc.add(std::exp(t.log_total - log_members));
    // Advance positions 1..k-1; position 0 stays fixed.
    std::size_t j = k;
    while (j > 1 && idx[j - 1] == n - k + j - 1) --j;
    if (j <= 1) return;
    ++idx[j - 1];
    for (std::size_t m = j; m < k; ++m) idx[m] = idx[m - 1] + 1;
  }
}

}  // namespace

double complement_product_sum(std::span<const double> factors, std::size_t k,
                              const EnumerationOptions& options) {
  const std::size_t n = factors.size();
  if (k > n) throw DomainError("subset size exceeds the number of factors");
  const double count = binomial(n, k);
  if (count > options.guard) {
    throw CapacityError("subset enumeration needs C(" + std::to_string(n) + ", " +
                        std::to_string(k) + ") = " + std::to_string(count) +
                        " terms, above the guard of " + std::to_string(options.guard) +
                        "; use the Model A bound instead");
  }
  const FactorTable table = tabulate(factors);
  if (k == 0) return table.zero_count > 0 ? 0.0 : std::exp(table.log_total);

  const std::size_t firsts = n - k + 1;
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads,
                                                           static_cast<unsigned>(firsts)));
  std::vector<CompensatedSum> partial(threads);
  if (threads == 1) {
    for (std::size_t f = 0; f < firsts; ++f) enumerate_from(table, k, f, partial[0]);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t f = t; f < firsts; f += threads) enumerate_from(table, k, f, partial[t]);
      });
    }
  }
  CompensatedSum total;
  for (const auto& p : partial) total.add(p);
  return total.value();
}

long double complement_product_sum_recurrence(std::span<const double> factors, std::size_t k) {
  const std::size_t n = factors.size();
  if (k > n) throw DomainError("subset size exceeds the number of factors");
  const std::size_t m = n - k;
  std::vector<long double> e(m + 1, 0.0L);
  e[0] = 1.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double f = factors[i];
    const std::size_t top = std::min(m, i + 1);
    for (std::size_t j = top; j >= 1; --j) e[j] += e[j - 1] * f;
  }
  return e[m];
}

}  // namespace scenopt
