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

#include "walkref/second_order.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "walkref/errors.hpp"
#include "walkref/parallel.hpp"

namespace walkref {
namespace {

void require_pair_tensor(const RationalTensor& a, const char* what) {
  if (a.rank() != 3 || a.shape()[0] != a.shape()[1] || a.shape()[0] == 0) {
    throw DimensionError(std::string(what) + " must have shape (n, n, s) with n >= 1");
  }
}

// Class index of every pair under first-occurrence numbering of the label
// vectors, plus the distinct vectors themselves.
struct LabelClasses {
  std::vector<std::size_t> of_cell;
  std::vector<RationalVector> unique;
};

LabelClasses classify_labels(const RationalTensor& a) {
  const std::size_t n = a.shape()[0];
  LabelClasses out;
  out.of_cell.resize(n * n);
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      RationalVector v = a.label(i, j);
      auto [it, inserted] = seen.emplace(feature_key(v), out.unique.size());
      if (inserted) out.unique.push_back(std::move(v));
      out.of_cell[i * n + j] = it->second;
    }
  }
  return out;
}

mpz_class power(const mpz_class& base, std::size_t exponent) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

// V with unique * V = Id, via Gauss-Jordan on [unique | Id]. Rows of V at the
// pivot columns hold the accumulated row operations; the rest are zero.
RationalTensor right_inverse(const std::vector<RationalVector>& unique, std::size_t dim) {
  const std::size_t rows = unique.size();
  std::vector<std::vector<mpq_class>> m(rows, std::vector<mpq_class>(dim + rows, mpq_class(0)));
  for (std::size_t r = 0; r < rows; ++r) {
    std::copy(unique[r].begin(), unique[r].end(), m[r].begin());
    m[r][dim + r] = 1;
  }
  std::vector<std::size_t> pivot_col(rows);
  std::size_t r = 0;
  for (std::size_t col = 0; col < dim && r < rows; ++col) {
    std::size_t p = r;
    while (p < rows && sgn(m[p][col]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const mpq_class inv = 1 / m[r][col];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][col]) == 0) continue;
      const mpq_class f = m[i][col];
      for (std::size_t k = col; k < dim + rows; ++k) {
        if (sgn(m[r][k]) != 0) m[i][k] -= f * m[r][k];
      }
    }
    pivot_col[r++] = col;
  }
  if (r != rows) throw LabelDependenceError("distinct labels are linearly dependent; hot-one encode first");
  RationalTensor v({dim, rows});
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t c = 0; c < rows; ++c) v(pivot_col[k], c) = m[k][dim + c];
  }
  return v;
}

}  // namespace

RationalTensor::RationalTensor(std::vector<std::size_t> shape) : shape_(std::move(shape)) {
  const std::size_t total =
      std::accumulate(shape_.begin(), shape_.end(), std::size_t{1}, std::multiplies<>());
  data_.assign(total, mpq_class(0));
}

RationalVector RationalTensor::label(std::size_t i, std::size_t j) const {
  const std::size_t s = shape_[2];
  const std::size_t base = offset(i, j, 0);
  return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(base),
                        data_.begin() + static_cast<std::ptrdiff_t>(base + s));
}

RationalTensor layer_forward(const RationalTensor& a_prev, const LayerWeights& w) {
  require_pair_tensor(a_prev, "layer input");
  const std::size_t n = a_prev.shape()[0];
  const std::size_t s = a_prev.shape()[2];
  const auto& ws = w.weights.shape();
  if (w.weights.rank() != 3 || ws[0] != s || ws[1] != s) {
    throw DimensionError("weights must have shape (" + std::to_string(s) + ", " + std::to_string(s) +
                         ", s_next)");
  }
  const std::size_t s_next = ws[2];

  // Integer numerators per channel: A[., ., c] = scaled[., ., c] / scale[c].
  std::vector<mpz_class> scale(s, 1);
  for (std::size_t c = 0; c < s; ++c) {
    for (std::size_t cell = 0; cell < n * n; ++cell) {
      const mpq_class& x = a_prev.data()[cell * s + c];
      mpz_lcm(scale[c].get_mpz_t(), scale[c].get_mpz_t(), x.get_den_mpz_t());
    }
  }
  std::vector<mpz_class> scaled(n * n * s);
  std::vector<std::vector<std::size_t>> nonzero(n * n);
  for (std::size_t cell = 0; cell < n * n; ++cell) {
    for (std::size_t c = 0; c < s; ++c) {
      const mpq_class& x = a_prev.data()[cell * s + c];
      if (sgn(x) == 0) continue;
      scaled[cell * s + c] = x.get_num() * (scale[c] / x.get_den());
      nonzero[cell].push_back(c);
    }
  }

  // pair_sums[i,j,c,d] = sum_k scaled[i,k,c] * scaled[k,j,d].
  std::vector<mpz_class> pair_sums(n * n * s * s);
  parallel_for(n * n, [&](std::size_t cell) {
    const std::size_t i = cell / n;
    const std::size_t j = cell % n;
    mpz_class* out = &pair_sums[cell * s * s];
    for (std::size_t k = 0; k < n; ++k) {
      for (auto c : nonzero[i * n + k]) {
        const mpz_class& left = scaled[(i * n + k) * s + c];
        for (auto d : nonzero[k * n + j]) {
          mpz_addmul(out[c * s + d].get_mpz_t(), left.get_mpz_t(), scaled[(k * n + j) * s + d].get_mpz_t());
        }
      }
    }
  });

  // Per output channel: W[c,d,t] / (scale[c] scale[d]) over one common denominator.
  RationalTensor out({n, n, s_next});
  parallel_for(s_next, [&](std::size_t t) {
    mpz_class common = 1;
    std::vector<mpq_class> ratio(s * s);
    for (std::size_t c = 0; c < s; ++c) {
      for (std::size_t d = 0; d < s; ++d) {
        const mpq_class& wv = w.weights(c, d, t);
        if (sgn(wv) == 0) continue;
        ratio[c * s + d] = wv / mpq_class(scale[c] * scale[d]);
        mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), ratio[c * s + d].get_den_mpz_t());
      }
    }
    std::vector<mpz_class> coeff(s * s);
    std::vector<std::size_t> live;
    for (std::size_t cd = 0; cd < s * s; ++cd) {
      if (sgn(ratio[cd]) == 0) continue;
      coeff[cd] = ratio[cd].get_num() * (common / ratio[cd].get_den());
      live.push_back(cd);
    }
    for (std::size_t cell = 0; cell < n * n; ++cell) {
      mpz_class acc = 0;
      for (auto cd : live) mpz_addmul(acc.get_mpz_t(), pair_sums[cell * s * s + cd].get_mpz_t(), coeff[cd].get_mpz_t());
      mpq_class value(acc, common);
      value.canonicalize();
      value -= w.threshold;
      out.data()[cell * s_next + t] = sgn(value) > 0 ? value : mpq_class(0);
    }
  });
  return out;
}

LayerSynthesis synthesize_layer_detailed(const RationalTensor& a_prev) {
  require_pair_tensor(a_prev, "layer input");
  const std::size_t n = a_prev.shape()[0];
  const std::size_t s = a_prev.shape()[2];
  LayerSynthesis syn;

  const LabelClasses classes = classify_labels(a_prev);
  if (rational_rank(classes.unique) != classes.unique.size()) {
    throw LabelDependenceError("distinct labels are linearly dependent; hot-one encode first");
  }
  syn.unique_labels = classes.unique;
  const std::size_t c_count = classes.unique.size();

  // V with uniq * V = Id.
  syn.right_inverse = right_inverse(classes.unique, s);
  for (std::size_t r = 0; r < c_count; ++r) {
    for (std::size_t c = 0; c < c_count; ++c) {
      mpq_class dot = 0;
      for (std::size_t k = 0; k < s; ++k) {
        if (sgn(classes.unique[r][k]) != 0) dot += classes.unique[r][k] * syn.right_inverse(k, c);
      }
      if (dot != (r == c ? 1 : 0)) throw std::logic_error("right inverse check failed");
    }
  }

  // B = A V is the one-hot class indicator, so C[i,j,c,d] counts the k with
  // class(i,k) = c and class(k,j) = d.
  std::vector<std::uint32_t> counts(n * n * c_count * c_count, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::uint32_t* cell = &counts[(i * n + j) * c_count * c_count];
      for (std::size_t k = 0; k < n; ++k) {
        ++cell[classes.of_cell[i * n + k] * c_count + classes.of_cell[k * n + j]];
      }
    }
  }
  syn.max_count = *std::max_element(counts.begin(), counts.end());

  // D[i,j,c] = sum_d C[i,j,c,d] (max + 1)^d
  syn.count_radix.resize(c_count);
  for (std::size_t d = 0; d < c_count; ++d) syn.count_radix[d] = power(syn.max_count + 1, d);
  std::vector<mpz_class> digits(n * n * c_count, 0);
  for (std::size_t cell = 0; cell < n * n; ++cell) {
    for (std::size_t c = 0; c < c_count; ++c) {
      mpz_class& acc = digits[cell * c_count + c];
      for (std::size_t d = 0; d < c_count; ++d) {
        const auto cnt = counts[(cell * c_count + c) * c_count + d];
        if (cnt != 0) acc += syn.count_radix[d] * cnt;
      }
    }
  }
  syn.max_digit = *std::max_element(digits.begin(), digits.end());

  // E[i,j] = sum_c D[i,j,c] (max' + 1)^c
  syn.digit_radix.resize(c_count);
  for (std::size_t c = 0; c < c_count; ++c) syn.digit_radix[c] = power(syn.max_digit + 1, c);
  syn.code_matrix.assign(n * n, 0);
  for (std::size_t cell = 0; cell < n * n; ++cell) {
    for (std::size_t c = 0; c < c_count; ++c) {
      syn.code_matrix[cell] += digits[cell * c_count + c] * syn.digit_radix[c];
    }
  }

  syn.codes = syn.code_matrix;
  std::sort(syn.codes.begin(), syn.codes.end(), std::greater<>());
  syn.codes.erase(std::unique(syn.codes.begin(), syn.codes.end()), syn.codes.end());
  const std::size_t s_next = syn.codes.size();

  // q: the largest E[i,j] / e_s below 1, i.e. the largest ratio of
  // consecutive distinct codes. A single code has no such value.
  mpq_class q(1, 2);
  if (s_next > 1) {
    q = 0;
    for (std::size_t t = 0; t + 1 < s_next; ++t) {
      mpq_class ratio(syn.codes[t + 1], syn.codes[t]);
      ratio.canonicalize();
      if (ratio > q) q = ratio;
    }
  }

  // W[c,d,s] = sum_{c',d'} V[c,c'] V[d,d'] M[d'] N[c'] U[s], evaluated as
  // (sum_c' V[c,c'] N[c']) (sum_d' V[d,d'] M[d']) U[s].
  std::vector<mpq_class> row_code(s, mpq_class(0));
  std::vector<mpq_class> col_code(s, mpq_class(0));
  for (std::size_t c = 0; c < s; ++c) {
    for (std::size_t k = 0; k < c_count; ++k) {
      const mpq_class& v = syn.right_inverse(c, k);
      if (sgn(v) == 0) continue;
      row_code[c] += v * mpq_class(syn.digit_radix[k]);
      col_code[c] += v * mpq_class(syn.count_radix[k]);
    }
  }
  RationalTensor weights({s, s, s_next});
  for (std::size_t c = 0; c < s; ++c) {
    for (std::size_t d = 0; d < s; ++d) {
      const mpq_class cd = row_code[c] * col_code[d];
      if (sgn(cd) == 0) continue;
      for (std::size_t t = 0; t < s_next; ++t) {
        mpq_class u(1, syn.codes[t]);
        u.canonicalize();
        weights(c, d, t) = cd * u;
      }
    }
  }
  syn.layer = LayerWeights{std::move(weights), q};
  return syn;
}

LayerWeights synthesize_layer(const RationalTensor& a_prev) {
  return synthesize_layer_detailed(a_prev).layer;
}

RationalTensor hot_one_encode(const Labelling& l) {
  const std::size_t n = l.n();
  RationalTensor t({n, n, std::max<std::size_t>(l.class_count(), 1)});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t(i, j, l.at(i, j)) = 1;
  }
  return t;
}

std::size_t rational_rank(std::span<const RationalVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::vector<std::vector<mpz_class>> m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != cols) throw DimensionError("rank: rows of different length");
    mpz_class lcm = 1;
    for (const auto& x : r) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> row(cols);
    for (std::size_t k = 0; k < cols; ++k) row[k] = r[k].get_num() * (lcm / r[k].get_den());
    m.push_back(std::move(row));
  }
  // Bareiss: every division below is exact.
  std::size_t rank = 0;
  mpz_class prev_pivot = 1;
  for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
    std::size_t p = rank;
    while (p < m.size() && sgn(m[p][col]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      for (std::size_t k = col + 1; k < cols; ++k) {
        mpz_class v = m[i][k] * m[rank][col] - m[i][col] * m[rank][k];
        if (!mpz_divisible_p(v.get_mpz_t(), prev_pivot.get_mpz_t())) {
          throw std::logic_error("Bareiss division was not exact");
        }
        mpz_divexact(m[i][k].get_mpz_t(), v.get_mpz_t(), prev_pivot.get_mpz_t());
      }
      m[i][col] = 0;
    }
    prev_pivot = m[rank][col];
    ++rank;
  }
  return rank;
}

bool check_label_independence(const RationalTensor& a) {
  require_pair_tensor(a, "tensor");
  const auto classes = classify_labels(a);
  return rational_rank(classes.unique) == classes.unique.size();
}

Labelling partition_of(const RationalTensor& a) {
  require_pair_tensor(a, "tensor");
  const std::size_t n = a.shape()[0];
  std::vector<std::string> keys;
  keys.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) keys.push_back(feature_key(a.label(i, j)));
  }
  return Labelling::from_keys(n, std::move(keys));
}

mpq_class uniform_threshold_bound(std::size_t n, std::size_t max_bits) {
  if (n < 1) throw std::invalid_argument("uniform threshold needs n >= 1");
  // exponent = (n^2)^(n^2)
  mpz_class exponent;
  mpz_ui_pow_ui(exponent.get_mpz_t(), n * n, n * n);
  const double bits = exponent.get_d() * std::log2(static_cast<double>(n));
  if (!exponent.fits_ulong_p() || bits > static_cast<double>(max_bits)) {
    throw LimitError("uniform threshold needs n^((n^2)^(n^2)) exactly", std::to_string(bits));
  }
  mpz_class m;
  mpz_ui_pow_ui(m.get_mpz_t(), n, exponent.get_ui());
  mpq_class q(m - 1, m);
  q.canonicalize();
  return q;
}

WalkMpnn<RationalVector> layer_as_walk_mpnn(const LayerWeights& w, std::size_t n) {
  if (w.weights.rank() != 3) throw DimensionError("weights must be a rank-3 tensor");
  WalkMpnn<RationalVector> m;
  m.ell = 2;
  const mpq_class share = w.threshold / mpq_class(static_cast<unsigned long>(n));
  const auto shape = w.weights.shape();

  // Per output channel: integer weights over one common denominator, kept
  // sparse as (c * s_in + d, numerator).
  struct Channel {
    mpz_class denominator = 1;
    std::vector<std::pair<std::size_t, mpz_class>> terms;
  };
  auto channels = std::make_shared<std::vector<Channel>>(shape[2]);
  for (std::size_t t = 0; t < shape[2]; ++t) {
    auto& ch = (*channels)[t];
    for (std::size_t c = 0; c < shape[0]; ++c) {
      for (std::size_t d = 0; d < shape[1]; ++d) {
        const auto& x = w.weights(c, d, t);
        if (sgn(x) != 0) mpz_lcm(ch.denominator.get_mpz_t(), ch.denominator.get_mpz_t(), x.get_den_mpz_t());
      }
    }
    for (std::size_t c = 0; c < shape[0]; ++c) {
      for (std::size_t d = 0; d < shape[1]; ++d) {
        const auto& x = w.weights(c, d, t);
        if (sgn(x) != 0) ch.terms.emplace_back(c * shape[1] + d, x.get_num() * (ch.denominator / x.get_den()));
      }
    }
  }

  m.message = [channels, shape, share](std::size_t, std::span<const RationalVector* const> walk) {
    const auto& a = *walk[0];
    const auto& b = *walk[1];
    if (a.size() != shape[0] || b.size() != shape[1]) {
      throw DimensionError("message inputs do not match the weight tensor");
    }
    auto integral = [](const RationalVector& v, mpz_class& den) {
      den = 1;
      for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
      std::vector<mpz_class> out(v.size());
      for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k].get_num() * (den / v[k].get_den());
      return out;
    };
    mpz_class da, db;
    const auto ia = integral(a, da);
    const auto ib = integral(b, db);
    std::vector<mpz_class> outer(shape[0] * shape[1]);
    for (std::size_t c = 0; c < shape[0]; ++c) {
      if (sgn(ia[c]) == 0) continue;
      for (std::size_t d = 0; d < shape[1]; ++d) outer[c * shape[1] + d] = ia[c] * ib[d];
    }
    const mpz_class scale = da * db;
    RationalVector out(shape[2]);
    for (std::size_t t = 0; t < shape[2]; ++t) {
      const auto& ch = (*channels)[t];
      mpz_class acc = 0;
      for (const auto& [cd, coeff] : ch.terms) mpz_addmul(acc.get_mpz_t(), outer[cd].get_mpz_t(), coeff.get_mpz_t());
      mpq_class value(acc, scale * ch.denominator);
      value.canonicalize();
      out[t] = value - share;
    }
    return out;
  };
  m.update = [](std::size_t, const RationalVector&, const RationalVector& b) {
    RationalVector out = b;
    for (auto& x : out) {
      if (sgn(x) < 0) x = 0;
    }
    return out;
  };
  return m;
}

FeatureMatrix<RationalVector> to_feature_matrix(const RationalTensor& a) {
  require_pair_tensor(a, "tensor");
  FeatureMatrix<RationalVector> m;
  m.n = a.shape()[0];
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) m.cells.push_back(a.label(i, j));
  }
  return m;
}

RationalTensor from_feature_matrix(const FeatureMatrix<RationalVector>& m) {
  check_uniform_dimension(m);
  const std::size_t s = m.cells.empty() ? 0 : m.cells.front().size();
  RationalTensor t({m.n, m.n, s});
  for (std::size_t cell = 0; cell < m.cells.size(); ++cell) {
    std::copy(m.cells[cell].begin(), m.cells[cell].end(), t.data().begin() + static_cast<std::ptrdiff_t>(cell * s));
  }
  return t;
}

}  // namespace walkref
