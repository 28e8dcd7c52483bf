// Copyright 2026 The walkref Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "walkref/walk_mpnn.hpp"

#include <cmath>
#include <mutex>
#include <unordered_map>

namespace walkref {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<unsigned long> first_primes(std::size_t count) {
  std::vector<unsigned long> primes;
  for (unsigned long c = 2; primes.size() < count; ++c) {
    bool prime = true;
    for (auto p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

std::size_t walks_per_pair(std::size_t n, int ell) {
  std::size_t m = 1;
  for (int k = 1; k < ell; ++k) m *= n;
  return m;
}

template <class Int>
FeatureMatrix<Int> id_features(const Labelling& l) {
  FeatureMatrix<Int> m;
  m.n = l.n();
  m.cells.reserve(l.cells().size());
  for (auto id : l.cells()) m.cells.push_back(static_cast<Int>(id));
  return m;
}

}  // namespace

void accumulate(std::int64_t& acc, const std::int64_t& x) {
  if (__builtin_add_overflow(acc, x, &acc)) throw std::overflow_error("int64 message sum overflowed");
}

void accumulate(mpz_class& acc, const mpz_class& x) { acc += x; }

void accumulate(RationalVector& acc, const RationalVector& x) {
  if (acc.size() != x.size()) {
    throw DimensionError("message dimensions differ: " + std::to_string(acc.size()) + " vs " +
                         std::to_string(x.size()));
  }
  for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += x[k];
}

void accumulate(TupleCounts& acc, const TupleCounts& x) {
  for (const auto& [tuple, count] : x) acc[tuple] += count;
}

std::string feature_key(const std::int64_t& x) { return KeyWriter().u64(static_cast<std::uint64_t>(x)).take(); }
std::string feature_key(const std::uint64_t& x) { return KeyWriter().u64(x).take(); }
std::string feature_key(const mpz_class& x) { return KeyWriter().str(x.get_str(16)).take(); }
std::string feature_key(const RationalVector& x) {
  KeyWriter w;
  w.u32(static_cast<std::uint32_t>(x.size()));
  for (const auto& q : x) w.str(q.get_str(16));
  return w.take();
}

FeatureMatrix<std::int64_t> integer_features(const Labelling& l) { return id_features<std::int64_t>(l); }
FeatureMatrix<std::uint64_t> natural_features(const Labelling& l) { return id_features<std::uint64_t>(l); }
FeatureMatrix<mpz_class> big_integer_features(const Labelling& l) { return id_features<mpz_class>(l); }

FeatureMatrix<RationalVector> rational_features(const Labelling& l) {
  FeatureMatrix<RationalVector> m;
  m.n = l.n();
  for (auto id : l.cells()) m.cells.push_back(RationalVector{mpq_class(id)});
  return m;
}

WalkMpnn<std::int64_t> random_table_mpnn(int ell, std::uint64_t seed, std::int64_t message_range,
                                         std::int64_t update_range) {
  if (message_range < 1 || update_range < 1) throw std::invalid_argument("table ranges must be positive");
  WalkMpnn<std::int64_t> m;
  m.ell = ell;
  m.message = [=](std::size_t round, std::span<const std::int64_t* const> walk) {
    std::uint64_t h = splitmix64(seed ^ (0x51ed270b27ULL * round));
    for (const auto* x : walk) h = splitmix64(h ^ static_cast<std::uint64_t>(*x));
    return static_cast<std::int64_t>(h % static_cast<std::uint64_t>(message_range));
  };
  m.update = [=](std::size_t round, const std::int64_t& own, const std::int64_t& agg) {
    std::uint64_t h = splitmix64(~seed ^ (0x2545f4914fULL * round));
    h = splitmix64(h ^ static_cast<std::uint64_t>(own));
    h = splitmix64(h ^ static_cast<std::uint64_t>(agg));
    return static_cast<std::int64_t>(h % static_cast<std::uint64_t>(update_range));
  };
  return m;
}

mpz_class prime_power_pairing(std::span<const mpz_class> tuple, std::size_t max_bits) {
  const auto primes = first_primes(tuple.size());
  double bits = 0;
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    if (sgn(tuple[k]) < 0) throw std::invalid_argument("pairing needs natural numbers");
    if (!tuple[k].fits_ulong_p()) {
      // The exponent alone has this many bits; tau has at least 2^(that - 1) bits.
      throw LimitError("prime-power pairing exceeds the bit cap",
                       "2^" + std::to_string(mpz_sizeinbase(tuple[k].get_mpz_t(), 2) - 1));
    }
    bits += tuple[k].get_d() * std::log2(static_cast<double>(primes[k]));
  }
  if (bits > static_cast<double>(max_bits) || !std::isfinite(bits)) {
    throw LimitError("prime-power pairing exceeds the bit cap", std::to_string(static_cast<unsigned long long>(std::ceil(bits))));
  }
  mpz_class tau = 1;
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), primes[k], tuple[k].get_ui());
    tau *= power;
  }
  return tau;
}

mpz_class walk_tuple_code(std::size_t n, int ell, std::span<const mpz_class> tuple,
                          std::size_t max_bits) {
  const mpz_class tau = prime_power_pairing(tuple, max_bits);
  const auto base = static_cast<unsigned long>(walks_per_pair(n, ell) + 1);
  const double per_unit = std::log2(static_cast<double>(base));
  if (!tau.fits_ulong_p() || tau.get_d() * per_unit > static_cast<double>(max_bits)) {
    mpz_class estimate = tau * static_cast<unsigned long>(std::ceil(per_unit));
    throw LimitError("walk tuple code (n^{l-1}+1)^tau exceeds the bit cap", estimate.get_str());
  }
  mpz_class h;
  mpz_ui_pow_ui(h.get_mpz_t(), base, tau.get_ui());
  return h;
}

WalkMpnn<mpz_class> countable_simulator(std::size_t n, int ell, CountableLimits limits) {
  if (ell < 2) throw std::invalid_argument("countable simulator needs ell >= 2");
  WalkMpnn<mpz_class> m;
  m.ell = ell;
  m.message = [=](std::size_t, std::span<const mpz_class* const> walk) {
    std::vector<mpz_class> tuple;
    tuple.reserve(walk.size());
    for (const auto* x : walk) tuple.push_back(*x);
    return walk_tuple_code(n, ell, tuple, limits.max_bits);
  };
  m.update = [](std::size_t, const mpz_class&, const mpz_class& b) { return b; };
  return m;
}

WalkMpnn<std::uint64_t, TupleCounts> interned_countable_simulator(std::size_t n, int ell) {
  if (ell < 2) throw std::invalid_argument("countable simulator needs ell >= 2");
  (void)n;
  struct Table {
    std::mutex mu;
    std::unordered_map<std::string, std::uint64_t> ids;
  };
  auto table = std::make_shared<Table>();
  WalkMpnn<std::uint64_t, TupleCounts> m;
  m.ell = ell;
  m.message = [](std::size_t, std::span<const std::uint64_t* const> walk) {
    std::vector<std::uint64_t> tuple;
    tuple.reserve(walk.size());
    for (const auto* x : walk) tuple.push_back(*x);
    return TupleCounts{{std::move(tuple), 1}};
  };
  m.update = [table](std::size_t round, const std::uint64_t&, const TupleCounts& digits) {
    KeyWriter w;
    w.u64(round).u32(static_cast<std::uint32_t>(digits.size()));
    for (const auto& [tuple, count] : digits) {
      for (auto x : tuple) w.u64(x);
      w.u64(count);
    }
    std::lock_guard lock(table->mu);
    const auto next = static_cast<std::uint64_t>(table->ids.size());
    return table->ids.emplace(w.take(), next).first->second;
  };
  return m;
}

namespace {

// Each alpha as the non-decreasing list of positions it raises (position k
// appears alpha_k times). Ascending lexicographic order on these lists is
// descending lexicographic order on the dense vectors.
using PositionList = std::vector<std::uint32_t>;

std::vector<PositionList> bounded_position_lists(std::size_t a, std::size_t m) {
  std::vector<PositionList> out;
  out.push_back({});
  if (a == 0) return out;
  for (std::size_t degree = 1; degree <= m; ++degree) {
    PositionList pos(degree, 0);
    while (true) {
      out.push_back(pos);
      // Advance to the next non-decreasing sequence over [0, a).
      std::size_t k = degree;
      while (k > 0 && pos[k - 1] + 1 == a) --k;
      if (k == 0) break;
      const std::uint32_t v = pos[k - 1] + 1;
      for (std::size_t j = k - 1; j < degree; ++j) pos[j] = v;
    }
  }
  return out;
}

RationalVector monomials(std::span<const mpq_class> x, const std::vector<PositionList>& alphas) {
  RationalVector out;
  out.reserve(alphas.size());
  for (const auto& alpha : alphas) {
    mpq_class term = 1;
    for (auto k : alpha) term *= x[k];
    out.push_back(std::move(term));
  }
  return out;
}

}  // namespace

std::vector<std::vector<unsigned>> bounded_multi_indices(std::size_t a, std::size_t m) {
  std::vector<std::vector<unsigned>> out;
  if (a == 0) return {std::vector<unsigned>{}};
  for (const auto& positions : bounded_position_lists(a, m)) {
    std::vector<unsigned> alpha(a, 0);
    for (auto k : positions) ++alpha[k];
    out.push_back(std::move(alpha));
  }
  return out;
}

RationalVector powersum_encoder(std::span<const RationalVector> rows) {
  if (rows.empty()) throw std::invalid_argument("power-sum encoding needs at least one row");
  const std::size_t a = rows.front().size();
  if (a == 0) throw std::invalid_argument("power-sum encoding needs rows of dimension >= 1");
  for (const auto& r : rows) {
    if (r.size() != a) throw DimensionError("power-sum rows must share one dimension");
  }
  const std::size_t m = rows.size();
  const auto alphas = bounded_position_lists(a, m);
  RationalVector sum(alphas.size(), mpq_class(0));
  for (const auto& r : rows) accumulate(sum, monomials(r, alphas));
  return sum;
}

mpz_class feature_dim(std::size_t n, int ell, std::size_t s_prev) {
  if (n < 1 || ell < 1 || s_prev < 1) throw std::invalid_argument("feature_dim arguments must be >= 1");
  const std::size_t a = static_cast<std::size_t>(ell) * s_prev;
  mpz_class result;
  mpz_bin_uiui(result.get_mpz_t(), walks_per_pair(n, ell) + a, a);
  return result;
}

WalkMpnn<RationalVector> uncountable_simulator(std::size_t n, int ell, std::size_t s0,
                                               UncountableLimits limits) {
  if (ell < 2) throw std::invalid_argument("uncountable simulator needs ell >= 2");
  if (s0 < 1) throw std::invalid_argument("uncountable simulator needs s0 >= 1");
  const std::size_t m = walks_per_pair(n, ell);

  struct Plan {
    std::vector<std::size_t> input_dim;  // s_{t-1}, indexed by t-1
    std::vector<std::vector<PositionList>> alphas;
    std::string refused_dim;             // s_t of the first round over the cap
  };
  auto plan = std::make_shared<Plan>();
  std::size_t s = s0;
  while (true) {
    const mpz_class next = feature_dim(n, ell, s);
    if (!next.fits_ulong_p() || next.get_ui() > limits.max_feature_dim) {
      plan->refused_dim = next.get_str();
      break;
    }
    plan->input_dim.push_back(s);
    plan->alphas.push_back(bounded_position_lists(static_cast<std::size_t>(ell) * s, m));
    s = next.get_ui();
  }

  WalkMpnn<RationalVector> mp;
  mp.ell = ell;
  mp.message = [plan, m](std::size_t round, std::span<const RationalVector* const> walk) {
    if (round == 0 || round > plan->alphas.size()) {
      throw LimitError("round " + std::to_string(round) + " needs feature dimension " +
                           plan->refused_dim + ", above the configured cap",
                       plan->refused_dim);
    }
    const std::size_t expected = plan->input_dim[round - 1];
    RationalVector x;
    x.reserve(expected * walk.size());
    for (const auto* f : walk) {
      if (f->size() != expected) {
        throw DimensionError("round " + std::to_string(round) + " expects features of dimension " +
                             std::to_string(expected) + ", got " + std::to_string(f->size()));
      }
      x.insert(x.end(), f->begin(), f->end());
    }
    return monomials(x, plan->alphas[round - 1]);
  };
  mp.update = [](std::size_t, const RationalVector&, const RationalVector& y) { return y; };
  return mp;
}

}  // namespace walkref
