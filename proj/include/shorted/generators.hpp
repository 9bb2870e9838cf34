#pragma once

// Seeded instance generation for the property suites. Entries are drawn from
// the Rng stream in column-major order:
//   float:    re, im uniform in [-1, 1)
//   rational: re = p/q, im = r/s with p, r in [-10, 10] and q, s in [1, 10]

#include <cstdint>
#include <vector>

#include "shorted/rng.hpp"
#include "shorted/schur.hpp"

namespace shorted {

struct GenConfig {
  std::uint64_t seed = 1;
  Index min_dim = 1;
  Index max_dim = 4;
};

template <class S>
S draw_entry(Rng& rng) {
  if constexpr (is_exact_v<S>) {
    const auto p = rng.uniform_int(-10, 10);
    const auto q = rng.uniform_int(1, 10);
    const auto r = rng.uniform_int(-10, 10);
    const auto s = rng.uniform_int(1, 10);
    return S(mpq_class(p, static_cast<unsigned long>(q)), mpq_class(r, static_cast<unsigned long>(s)));
  } else {
    const double re = rng.symmetric();
    return Complex(re, rng.symmetric());
  }
}

template <class S>
Mat<S> random_matrix(Index rows, Index cols, Rng& rng) {
  Mat<S> m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = draw_entry<S>(rng);
  return m;
}

/// Random Hermitian matrix X + X*.
template <class S>
Mat<S> random_hermitian(Index n, Rng& rng) {
  const Mat<S> x = random_matrix<S>(n, n, rng);
  return x + x.adjoint();
}

/// rows x cols matrix of rank exactly `rows` (redrawn until it is).
template <class S>
Mat<S> random_full_row_rank(Index rows, Index cols, Rng& rng) {
  require(rows <= cols, ErrorKind::Validation, "random_full_row_rank: rows > cols");
  for (;;) {
    Mat<S> g = random_matrix<S>(rows, cols, rng);
    if (rank<S>(g) == rows) return g;
  }
}

/// G* G for a random rank-`rank` matrix G; exactly PSD of exact rank on the
/// rational backend.
template <class S>
Mat<S> gen_psd(Index n, Index rank_, Rng& rng) {
  require(rank_ >= 0 && rank_ <= n, ErrorKind::Validation, "gen_psd: rank must lie in [0, n]");
  const Mat<S> g = random_full_row_rank<S>(rank_, n, rng);
  return symmetrized<S>(g.adjoint() * g);
}

template <class S>
struct GeneratedPair {
  Mat<S> A;
  Mat<S> B;
};

/// A = gen_psd(n_x, rank_a), B = A C, so ran B ⊆ ran A. With full rank A
/// the projection is skipped and B is drawn directly.
template <class S>
GeneratedPair<S> gen_positive_pair(Index nx, Index ny, Index rank_a, Rng& rng) {
  require(rank_a <= nx, ErrorKind::Validation, "gen_positive_pair: rank_a > n_x");
  Mat<S> a = gen_psd<S>(nx, rank_a, rng);
  Mat<S> b = rank_a == nx ? random_matrix<S>(nx, ny, rng) : Mat<S>(a * random_matrix<S>(nx, ny, rng));
  return {std::move(a), std::move(b)};
}

/// PSD block matrix of random rank via Gram assembly of the whole matrix.
template <class S>
Block2<S> gen_block2_psd(Index nx, Index ny, Rng& rng) {
  const Index n = nx + ny;
  const Index r = rng.uniform_int(0, n);
  return Block2<S>::split(gen_psd<S>(n, r, rng), nx);
}

/// Hermitian block matrix drawn from four families so that all three Albert
/// classes occur: 0 PSD Gram, 1 Gram with D pushed down by a rank-one term,
/// 2 singular A with B leaking into ker A, 3 unstructured X + X*.
template <class S>
Block2<S> gen_block2_hermitian(Index nx, Index ny, Rng& rng) {
  const auto family = rng.uniform_int(0, 3);
  if (family == 0) return gen_block2_psd<S>(nx, ny, rng);
  if (family == 1) {
    Block2<S> m = gen_block2_psd<S>(nx, ny, rng);
    const Mat<S> v = random_matrix<S>(ny, 1, rng);
    m.D -= S(static_cast<long>(rng.uniform_int(1, 3))) * v * v.adjoint();
    return m;
  }
  if (family == 2 && nx > 0) {
    const Mat<S> a = gen_psd<S>(nx, rng.uniform_int(0, nx - 1), rng);
    const Mat<S> ker = kernel_basis<S>(a);
    const Mat<S> c = random_matrix<S>(nx, ny, rng);
    const Mat<S> leak = random_matrix<S>(ker.cols(), ny, rng);
    Mat<S> b = a * c + ker * leak;
    Mat<S> d = gen_psd<S>(ny, rng.uniform_int(0, ny), rng);
    return {a, std::move(b), std::move(d)};
  }
  return Block2<S>::split(random_hermitian<S>(nx + ny, rng), nx);
}

template <class S>
Block3<S> gen_block3_psd(Index nx, Index ny, Index nz, Rng& rng) {
  const Index n = nx + ny + nz;
  const Index r = rng.uniform_int(0, n);
  return Block3<S>::split(gen_psd<S>(n, r, rng), nx, ny);
}

/// Extremal block matrix M_ex built from a generated positive pair.
template <class S>
Block2<S> gen_extremal(Index nx, Index ny, Rng& rng) {
  const GeneratedPair<S> p = gen_positive_pair<S>(nx, ny, rng.uniform_int(0, nx), rng);
  return minimal_completion<S>(p.A, p.B);
}

template <class S>
struct Chain {
  std::vector<Block2<S>> elements;  // A_1 >= A_2 >= ...
  Block2<S> limit;
};

namespace detail {

template <class S>
S reciprocal(Index k) {
  if constexpr (is_exact_v<S>) {
    return S(mpq_class(1, static_cast<unsigned long>(k)));
  } else {
    return Complex(1.0 / static_cast<double>(k), 0.0);
  }
}

}  // namespace detail

/// A_k = A_inf + N / k for k = 1..len, with A_inf PSD and N positive
/// definite, so the chain is strictly decreasing with limit A_inf.
template <class S>
Chain<S> gen_decreasing_chain(Index len, Index nx, Index ny, Rng& rng) {
  Chain<S> out;
  out.limit = gen_block2_psd<S>(nx, ny, rng);
  const Mat<S> noise = gen_psd<S>(nx + ny, nx + ny, rng);
  const Mat<S> lim = out.limit.assembled();
  for (Index k = 1; k <= len; ++k)
    out.elements.push_back(Block2<S>::split(Mat<S>(lim + detail::reciprocal<S>(k) * noise), nx));
  return out;
}

/// A_k = A_inf + diag(I / k, 0) where A_inf has singular A-block and B
/// leaking into its kernel: every A_k is of positive type, A_inf is not, and
/// sigma(A_k) decreases without bound. Requires n_x >= 1.
template <class S>
Chain<S> gen_unbounded_chain(Index len, Index nx, Index ny, Rng& rng) {
  require(nx >= 1 && ny >= 1, ErrorKind::Validation, "gen_unbounded_chain: needs n_x, n_y >= 1");
  Chain<S> out;
  const Mat<S> a = gen_psd<S>(nx, rng.uniform_int(0, nx - 1), rng);
  const Mat<S> ker = kernel_basis<S>(a);
  Mat<S> leak = random_matrix<S>(ker.cols(), ny, rng);
  leak(0, 0) += S(1);  // keep the leak nonzero
  const Mat<S> b = a * random_matrix<S>(nx, ny, rng) + ker * leak;
  out.limit = {a, b, random_hermitian<S>(ny, rng)};
  for (Index k = 1; k <= len; ++k) {
    Block2<S> m = out.limit;
    m.A += detail::reciprocal<S>(k) * Mat<S>::Identity(nx, nx);
    out.elements.push_back(std::move(m));
  }
  return out;
}

}  // namespace shorted
