#pragma once

// Generalized Schur complement sigma(M) = D - omega(A, B) and the shorted
// operator S(M) = diag(0, sigma) of a Hermitian block matrix
// M = [[A, B], [B*, D]] of positive type, with the results built on them.

#include <string>
#include <vector>

#include "shorted/positive_pair.hpp"

namespace shorted {

template <class S>
struct Block2 {
  Mat<S> A;  // n_X x n_X
  Mat<S> B;  // n_X x n_Y
  Mat<S> D;  // n_Y x n_Y

  Index nx() const { return A.rows(); }
  Index ny() const { return D.rows(); }

  Mat<S> assembled() const {
    Mat<S> m(nx() + ny(), nx() + ny());
    m.topLeftCorner(nx(), nx()) = A;
    m.topRightCorner(nx(), ny()) = B;
    m.bottomLeftCorner(ny(), nx()) = B.adjoint();
    m.bottomRightCorner(ny(), ny()) = D;
    return m;
  }

  /// Splits a Hermitian matrix after the first `nx` rows/columns.
  static Block2 split(const Mat<S>& m_in, Index nx) {
    const Mat<S> m = hermitian<S>(m_in);
    require(nx >= 0 && nx <= m.rows(), ErrorKind::Validation, "Block2: partition exceeds matrix size");
    const Index ny = m.rows() - nx;
    return {m.topLeftCorner(nx, nx), m.topRightCorner(nx, ny), m.bottomRightCorner(ny, ny)};
  }
};

template <class S>
struct Block3 {
  Mat<S> A, B, BX, D, BY, D1;  // [[A, B, BX], [B*, D, BY], [BX*, BY*, D1]]

  Index nx() const { return A.rows(); }
  Index ny() const { return D.rows(); }
  Index nz() const { return D1.rows(); }

  Mat<S> assembled() const {
    const Index n = nx() + ny() + nz();
    Mat<S> m(n, n);
    m.block(0, 0, nx(), nx()) = A;
    m.block(0, nx(), nx(), ny()) = B;
    m.block(0, nx() + ny(), nx(), nz()) = BX;
    m.block(nx(), nx(), ny(), ny()) = D;
    m.block(nx(), nx() + ny(), ny(), nz()) = BY;
    m.block(nx() + ny(), nx() + ny(), nz(), nz()) = D1;
    m.block(nx(), 0, ny(), nx()) = B.adjoint();
    m.block(nx() + ny(), 0, nz(), nx()) = BX.adjoint();
    m.block(nx() + ny(), nx(), nz(), ny()) = BY.adjoint();
    return m;
  }

  static Block3 split(const Mat<S>& m_in, Index nx, Index ny) {
    const Mat<S> m = hermitian<S>(m_in);
    require(nx >= 0 && ny >= 0 && nx + ny <= m.rows(), ErrorKind::Validation,
            "Block3: partition exceeds matrix size");
    const Index nz = m.rows() - nx - ny;
    return {m.block(0, 0, nx, nx),          m.block(0, nx, nx, ny),  m.block(0, nx + ny, nx, nz),
            m.block(nx, nx, ny, ny),        m.block(nx, nx + ny, ny, nz),
            m.block(nx + ny, nx + ny, nz, nz)};
  }

  /// The leading 2x2 block [[A, B], [B*, D]].
  Block2<S> leading() const { return {A, B, D}; }
};

template <class S>
struct ShortedResult {
  Mat<S> sigma;       // n_Y x n_Y
  Block2<S> shorted;  // diag(0, sigma)
  bool positive_type = true;
};

namespace detail {

template <class S>
ShortedResult<S> make_shorted(Index nx, Mat<S> sigma) {
  const Index ny = sigma.rows();
  ShortedResult<S> out;
  out.shorted = {Mat<S>::Zero(nx, nx), Mat<S>::Zero(nx, ny), sigma};
  out.sigma = std::move(sigma);
  return out;
}

}  // namespace detail

/// sigma = D - omega(A, B). Throws NotPositivePair with the pair diagnostic
/// when (A, B) is not a positive pair.
template <class S>
ShortedResult<S> schur_complement(const Block2<S>& m, OmegaRoute route = OmegaRoute::PseudoInverse,
                                  const ToleranceProfile& tol = {}) {
  const Block2<S> h = Block2<S>::split(m.assembled(), m.nx());
  const PositivePairData<S> pair = build_pair<S>(h.A, h.B, route, tol);
  return detail::make_shorted<S>(h.nx(), symmetrized<S>(h.D - pair.omega));
}

/// S(M) in assembled form.
template <class S>
Mat<S> shorted_operator(const Block2<S>& m, const ToleranceProfile& tol = {}) {
  return schur_complement<S>(m, OmegaRoute::PseudoInverse, tol).shorted.assembled();
}

/// S(M) = R* P R for a square root R of M, with P the orthoprojector onto
/// the orthogonal complement of R X (the range of R restricted to the X-block).
template <class S>
ShortedResult<S> shorted_via_projection(const Block2<S>& m, const ToleranceProfile& tol = {}) {
  if constexpr (is_exact_v<S>) {
    throw detail::unsupported("shorted_via_projection");
  } else {
    const MatC full = m.assembled();
    const MatC r = minimal_square_root<S>(full, tol).R;
    const Subspace<S> rx = Subspace<S>::span(MatC(r.leftCols(m.nx())), tol);
    const MatC p = MatC::Identity(r.rows(), r.rows()) - orthoprojector<S>(rx);
    const MatC s = symmetrized<S>(r.adjoint() * p * r);
    return detail::make_shorted<S>(m.nx(), MatC(s.bottomRightCorner(m.ny(), m.ny())));
  }
}

/// inf_z <M (x - z, y), (x - z, y)>, attained at x - z = -A^+ B y; equals
/// y* sigma y for every x.
template <class S>
S variational_value(const Block2<S>& m, const Vec<S>& x, const Vec<S>& y, const ToleranceProfile& tol = {}) {
  require(x.size() == m.nx() && y.size() == m.ny(), ErrorKind::Validation, "variational_value: vector sizes");
  const PairDiagnostic<S> diag = check_positive_pair<S>(m.A, m.B, tol);
  require(diag.positive, ErrorKind::NotPositivePair, "not of positive type: " + diag.message);
  const Vec<S> z = x + pseudo_inverse<S>(m.A, tol) * m.B * y;
  Vec<S> v(m.nx() + m.ny());
  v.head(m.nx()) = x - z;
  v.tail(m.ny()) = y;
  S value = (v.adjoint() * m.assembled() * v)(0, 0);
  if constexpr (!is_exact_v<S>) value = Complex(value.real(), 0.0);
  return value;
}

enum class AlbertClass { PSD, NotPositiveType, SigmaNotPsd };

inline const char* to_string(AlbertClass c) {
  switch (c) {
    case AlbertClass::PSD: return "PSD";
    case AlbertClass::NotPositiveType: return "NOT_POSITIVE_TYPE";
    case AlbertClass::SigmaNotPsd: return "SIGMA_NOT_PSD";
  }
  return "?";
}

template <class S>
struct AlbertVerdict {
  AlbertClass classification = AlbertClass::PSD;
  std::optional<Mat<S>> sigma;
  std::string diagnostic;
};

/// M is PSD iff (A, B) is a positive pair and sigma(M) is PSD. In float all
/// PSD decisions share the slack scale |M| (spectral norm).
template <class S>
AlbertVerdict<S> albert_classify(const Block2<S>& m, const ToleranceProfile& tol = {}) {
  const Block2<S> h = Block2<S>::split(m.assembled(), m.nx());
  double scale = 0.0;
  if constexpr (!is_exact_v<S>) {
    scale = hermitian_norm(h.assembled());
    if (scale == 0.0) scale = 1.0;
  }
  AlbertVerdict<S> out;
  if (!is_psd<S>(h.A, tol, scale)) {
    out.classification = AlbertClass::NotPositiveType;
    out.diagnostic = "A not non-negative";
    return out;
  }
  const PairDiagnostic<S> diag = check_positive_pair<S>(symmetrized<S>(h.A), h.B, tol, scale);
  if (!diag.positive) {
    out.classification = AlbertClass::NotPositiveType;
    out.diagnostic = diag.message;
    return out;
  }
  Mat<S> sigma = symmetrized<S>(h.D - omega_pinv<S>(h.A, h.B, tol));
  out.classification = is_psd<S>(sigma, tol, scale) ? AlbertClass::PSD : AlbertClass::SigmaNotPsd;
  out.sigma = std::move(sigma);
  return out;
}

template <class S>
struct ContractionResult {
  Mat<S> K;   // h_A x h_D, B = R_A* K R_D, |K| <= 1
  Mat<S> RA;
  Mat<S> RD;
};

/// K = (R_A*)^+ B R_D^+, projected onto ran R_A.
template <class S>
ContractionResult<S> contraction_decomposition(const Block2<S>& m, const ToleranceProfile& tol = {}) {
  if constexpr (is_exact_v<S>) {
    throw detail::unsupported("contraction_decomposition");
  } else {
    require(is_psd<S>(m.assembled(), tol), ErrorKind::Validation, "not non-negative");
    ContractionResult<S> out;
    out.RA = minimal_square_root<S>(m.A, tol).R;
    out.RD = minimal_square_root<S>(m.D, tol).R;
    const MatC k = pseudo_inverse<S>(MatC(out.RA.adjoint()), tol) * m.B * pseudo_inverse<S>(out.RD, tol);
    out.K = orthoprojector<S>(Subspace<S>::span(out.RA, tol)) * k;
    return out;
  }
}

template <class S>
struct QuotientReport {
  Mat<S> d_over_a;   // D/A, (n_Y + n_Z) square
  Mat<S> a_over_a;   // M/A, n_Y square
  Mat<S> lhs;        // (D/A)/(M/A)
  Mat<S> rhs;        // D/M
  bool corner_matches = false;
  bool identity_holds = false;
};

/// Nested Schur complements of a PSD 3-block matrix: M/A is the upper-left
/// corner of D/A, and (D/A)/(M/A) = D/M.
template <class S>
QuotientReport<S> quotient_formula_check(const Block3<S>& d, const ToleranceProfile& tol = {}) {
  const Mat<S> full = d.assembled();
  require(is_psd<S>(full, tol), ErrorKind::Validation, "not non-negative");
  QuotientReport<S> out;
  out.d_over_a = schur_complement<S>(Block2<S>::split(full, d.nx()), OmegaRoute::PseudoInverse, tol).sigma;
  out.a_over_a = schur_complement<S>(d.leading(), OmegaRoute::PseudoInverse, tol).sigma;
  out.lhs = schur_complement<S>(Block2<S>::split(out.d_over_a, d.ny()), OmegaRoute::PseudoInverse, tol).sigma;
  out.rhs = schur_complement<S>(Block2<S>::split(full, d.nx() + d.ny()), OmegaRoute::PseudoInverse, tol).sigma;
  out.corner_matches =
      approx_equal<S>(Mat<S>(out.d_over_a.topLeftCorner(d.ny(), d.ny())), out.a_over_a, 1e-9);
  out.identity_holds = approx_equal<S>(out.lhs, out.rhs, 1e-9);
  return out;
}

/// M_ex = [[A, B], [B*, omega(A, B)]], the least PSD completion.
template <class S>
Block2<S> minimal_completion(const Mat<S>& a, const Mat<S>& b, const ToleranceProfile& tol = {}) {
  const PositivePairData<S> pair = build_pair<S>(a, b, OmegaRoute::PseudoInverse, tol);
  return {pair.A, pair.B, pair.omega};
}

/// ran M ∩ ({0} x C^{n_Y}).
template <class S>
Subspace<S> range_meets_y(const Block2<S>& m, const ToleranceProfile& tol = {}) {
  const Index n = m.nx() + m.ny();
  Mat<S> y_axis = Mat<S>::Zero(n, m.ny());
  y_axis.bottomRows(m.ny()).setIdentity();
  return Subspace<S>::span(m.assembled(), tol).intersect(Subspace<S>(n, y_axis), tol);
}

template <class S>
struct InfimumReport {
  bool limit_positive_type = false;
  bool limit_below_chain = false;        // limit <= A_n for all n
  bool limit_short_is_lower_bound = false;  // S(limit) <= S(A_n) for all n
  std::vector<bool> candidate_is_lower_bound;  // L <= S(A_n) for all n, per candidate
  std::vector<bool> candidate_below_limit;     // L <= S(limit), per candidate
  bool consistent = false;
  std::string verdict;
};

/// Checks that S(limit) is the infimum of {S(A_n)} for a decreasing chain
/// with the given limit. Boundedness below of {S(A_n)} is certified by
/// S(limit) itself or by one of the supplied candidate lower bounds (given in
/// assembled form). Throws Validation if the chain is not decreasing and
/// NotPositivePair if some chain element is not of positive type.
template <class S>
InfimumReport<S> infimum_of_chain(const std::vector<Block2<S>>& chain, const Block2<S>& limit,
                                  const std::vector<Mat<S>>& lower_bounds = {},
                                  const ToleranceProfile& tol = {}) {
  require(!chain.empty(), ErrorKind::Validation, "infimum_of_chain: empty chain");
  std::vector<Mat<S>> assembled;
  for (const auto& m : chain) assembled.push_back(m.assembled());
  for (std::size_t k = 1; k < assembled.size(); ++k)
    require(loewner_leq<S>(assembled[k], assembled[k - 1], tol), ErrorKind::Validation, "chain not decreasing");

  std::vector<Mat<S>> shorted;
  for (const auto& m : chain) shorted.push_back(shorted_operator<S>(m, tol));

  auto below_all = [&](const Mat<S>& l) {
    for (const auto& s : shorted)
      if (!loewner_leq<S>(l, s, tol)) return false;
    return true;
  };

  InfimumReport<S> out;
  const Mat<S> lim = limit.assembled();
  out.limit_below_chain = true;
  for (const auto& a : assembled) out.limit_below_chain = out.limit_below_chain && loewner_leq<S>(lim, a, tol);
  out.limit_positive_type = is_psd<S>(limit.A, tol) && check_positive_pair<S>(limit.A, limit.B, tol).positive;

  bool certified = false;
  Mat<S> limit_short;
  if (out.limit_positive_type) {
    limit_short = shorted_operator<S>(limit, tol);
    out.limit_short_is_lower_bound = below_all(limit_short);
    certified = out.limit_short_is_lower_bound;
  }
  bool dominated = true;
  for (const auto& l : lower_bounds) {
    const bool is_lb = below_all(l);
    out.candidate_is_lower_bound.push_back(is_lb);
    certified = certified || is_lb;
    const bool below = out.limit_positive_type && loewner_leq<S>(l, limit_short, tol);
    out.candidate_below_limit.push_back(below);
    if (is_lb && !below) dominated = false;
  }

  if (out.limit_positive_type) {
    out.consistent = out.limit_below_chain && out.limit_short_is_lower_bound && dominated;
    out.verdict = out.consistent ? "S(limit) is the infimum" : "infimum property violated";
  } else {
    out.consistent = !certified;
    out.verdict = out.consistent ? "not in L+" : "limit not of positive type but S(A_n) bounded below";
  }
  return out;
}

}  // namespace shorted
