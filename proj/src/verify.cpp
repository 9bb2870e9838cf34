#include "shorted/verify.hpp"

#include <chrono>
#include <functional>
#include <map>

#include "shorted/extremal.hpp"
#include "shorted/generators.hpp"
#include "shorted/io.hpp"
#include "shorted/oracles.hpp"

namespace shorted::verify {

namespace {

// Collects the first failed check of one instance.
struct Checks {
  std::string failed;
  void operator()(bool ok, const std::string& what) {
    if (!ok && failed.empty()) failed = what;
  }
};

class Tally {
 public:
  Tally(std::string name, std::uint64_t seed) : master_(seed) { result_.name = std::move(name); }

  template <class Body>
  void instance(Body&& body) {
    const int id = result_.total++;
    Rng rng = master_.fork();
    Checks checks;
    try {
      body(rng, checks);
    } catch (const std::exception& e) {
      checks.failed = std::string("exception: ") + e.what();
    }
    if (checks.failed.empty()) {
      ++result_.passed;
    } else if (result_.failures.size() < 10) {
      result_.failures.push_back("#" + std::to_string(id) + ": " + checks.failed);
    }
  }

  SuiteResult take() { return std::move(result_); }

 private:
  Rng master_;
  SuiteResult result_;
};

Index dim(Rng& rng, Index lo, Index hi) { return static_cast<Index>(rng.uniform_int(lo, hi)); }

template <class S>
Mat<S> gram_noise(Index n, Rng& rng) {
  return gen_psd<S>(n, n == 0 ? 0 : dim(rng, 1, n), rng);
}

// Positive type but generally indefinite: a PSD Gram block with a Hermitian
// perturbation of D.
template <class S>
Block2<S> gen_positive_type(Index nx, Index ny, Rng& rng) {
  Block2<S> m = gen_block2_psd<S>(nx, ny, rng);
  m.D += random_hermitian<S>(ny, rng);
  return m;
}

template <class S>
Vec<S> random_vector(Index n, Rng& rng) {
  return random_matrix<S>(n, 1, rng);
}

template <class S>
Mat<S> embed_y(const Mat<S>& d, Index nx) {
  const Index n = nx + d.rows();
  Mat<S> out = Mat<S>::Zero(n, n);
  out.bottomRightCorner(d.rows(), d.rows()) = d;
  return out;
}

// ---------------------------------------------------------------- albert

SuiteResult albert(int count, std::uint64_t seed) {
  Tally t("albert", seed);
  for (int k = 0; k < count; ++k)
    t.instance([](Rng& rng, Checks& check) {
      const Index nx = dim(rng, 1, 8);
      const Index ny = dim(rng, 1, 8);
      const Block2<Complex> m = gen_block2_hermitian<Complex>(nx, ny, rng);
      const AlbertVerdict<Complex> v = albert_classify<Complex>(m);
      const bool oracle = oracle::psd_by_eigenvalues(m.assembled(), 1e-8);
      check((v.classification == AlbertClass::PSD) == oracle,
            std::string("albert ") + to_string(v.classification) + " vs eigenvalue oracle " +
                (oracle ? "PSD" : "not PSD"));
    });
  return t.take();
}

SuiteResult albert_exact(int count, std::uint64_t seed) {
  Tally t("albert-exact", seed);
  for (int k = 0; k < count; ++k)
    t.instance([](Rng& rng, Checks& check) {
      const Index nx = dim(rng, 1, 5);
      const Index ny = dim(rng, 1, 5);
      const Block2<Rational> m = gen_block2_hermitian<Rational>(nx, ny, rng);
      const AlbertVerdict<Rational> v = albert_classify<Rational>(m);
      const bool oracle = oracle::psd_by_principal_minors(m.assembled());
      check((v.classification == AlbertClass::PSD) == oracle,
            std::string("albert ") + to_string(v.classification) + " vs minor oracle " +
                (oracle ? "PSD" : "not PSD"));
      check(is_psd<Rational>(m.assembled()) == oracle, "LDL* test disagrees with minor oracle");
    });
  return t.take();
}

// ---------------------------------------------------- square-root independence

SuiteResult sqrt_independence(int count, std::uint64_t seed) {
  Tally t("sqrt-independence", seed);
  for (int k = 0; k < count; ++k)
    t.instance([](Rng& rng, Checks& check) {
      const Index nx = dim(rng, 1, 6);
      const Index ny = dim(rng, 1, 6);
      const Index ra = dim(rng, 0, nx);
      const GeneratedPair<Complex> p = gen_positive_pair<Complex>(nx, ny, ra, rng);
      const MatC eig = omega_from_root<Complex>(minimal_square_root<Complex>(p.A).R, p.B);
      const MatC chol = omega_from_root<Complex>(cholesky_square_root<Complex>(p.A).R, p.B);
      const Index extra = dim(rng, 1, 3);
      const MatC pad = omega_from_root<Complex>(nonminimal_square_root<Complex>(p.A, extra, rng.next()).R, p.B);
      const MatC pinv = omega_pinv<Complex>(p.A, p.B);
      const std::vector<std::pair<const char*, const MatC*>> all = {
          {"eigen", &eig}, {"cholesky", &chol}, {"padded", &pad}, {"pinv", &pinv}};
      for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
          check(approx_equal<Complex>(*all[i].second, *all[j].second, 1e-9),
                std::string("omega via ") + all[i].first + " != via " + all[j].first);
    });
  return t.take();
}

// ------------------------------------------------------------- variational

SuiteResult variational(int count, std::uint64_t seed) {
  Tally t("variational", seed);
  for (int k = 0; k < count; ++k)
    t.instance([](Rng& rng, Checks& check) {
      const Index nx = dim(rng, 1, 4);
      const Index ny = dim(rng, 1, 4);
      const Block2<Complex> m = gen_positive_type<Complex>(nx, ny, rng);
      const VecC y = random_vector<Complex>(m.ny(), rng);
      const VecC x1 = random_vector<Complex>(m.nx(), rng);
      const VecC x2 = random_vector<Complex>(m.nx(), rng);
      const double v1 = variational_value<Complex>(m, x1, y).real();
      const double v2 = variational_value<Complex>(m, x2, y).real();
      VecC xy(m.nx() + m.ny());
      xy << x1, y;
      const double shorted = (xy.adjoint() * shorted_operator<Complex>(m) * xy)(0, 0).real();
      check(std::abs(v1 - shorted) <= 1e-8 * (1.0 + std::abs(shorted)), "closed form != <S(M)(x,y),(x,y)>");
      check(std::abs(v1 - v2) < 1e-10 * (1.0 + std::abs(v1)), "value depends on x");
      const double brute = oracle::descent_infimum(m.A, m.B, m.D, x1, y);
      const std::string values = " (closed " + std::to_string(v1) + ", descent " + std::to_string(brute) + ")";
      check(v1 >= brute - 1e-6, "descent did not reach the closed-form infimum" + values);
      check(brute >= v1 - 1e-6, "descent found a value below the closed-form infimum" + values);
    });
  return t.take();
}

// ---------------------------------------------------------------- quotient

SuiteResult quotient(int count, std::uint64_t seed) {
  Tally t("quotient", seed);
  for (int k = 0; k < count; ++k)
    t.instance([](Rng& rng, Checks& check) {
      const Index nx = dim(rng, 1, 3);
      const Index ny = dim(rng, 1, 3);
      const Index nz = dim(rng, 1, 3);
      const Block3<Rational> d = gen_block3_psd<Rational>(nx, ny, nz, rng);
      const QuotientReport<Rational> r = quotient_formula_check<Rational>(d);
      check(r.corner_matches, "M/A is not the upper-left corner of D/A");
      check(r.identity_holds, "(D/A)/(M/A) != D/M");
    });
  return t.take();
}

// ------------------------------------------------------------------- order

// Float order checks take their slack from the inputs: a shorted operator
// that is zero up to rounding has no scale of its own.
template <class S>
double input_scale(std::initializer_list<const Mat<S>*> inputs) {
  double out = 0.0;
  for (const Mat<S>* m : inputs) out = std::max(out, max_abs(*m) * static_cast<double>(m->rows()));
  return out;
}

template <class S>
void order_instance(Rng& rng, Checks& check) {
  const Index nx = dim(rng, 1, 4);
  const Index ny = dim(rng, 1, 4);
  const Index n = nx + ny;
  const Block2<S> m = gen_block2_psd<S>(nx, ny, rng);
  const Mat<S> full = m.assembled();
  const ShortedResult<S> sr = schur_complement<S>(m);
  const Mat<S> sm = sr.shorted.assembled();
  const ToleranceProfile tol;

  // S(M) <= M, and S(M) vanishes on ker M.
  check(loewner_leq<S>(sm, full, tol, input_scale<S>({&full})), "S(M) <= M fails");
  const Mat<S> ker = kernel_basis<S>(full);
  check(is_zero_matrix<S>(Mat<S>(sm * ker), 1e-8 * (1.0 + max_abs(full))), "ker M ⊄ ker S(M)");
  if constexpr (is_exact_v<S>)
    check(Subspace<S>::kernel(sm).contains(Subspace<S>::kernel(full)), "ker M ⊄ ker S(M) (subspaces)");

  // Monotonicity.
  const Mat<S> full1 = full + gram_noise<S>(n, rng);
  const Block2<S> m1 = Block2<S>::split(full1, nx);
  check(loewner_leq<S>(sm, shorted_operator<S>(m1), tol, input_scale<S>({&full1})), "monotonicity S(M) <= S(M1) fails");

  // Superadditivity.
  const Block2<S> m2 = gen_block2_psd<S>(nx, ny, rng);
  const Mat<S> full_sum = full + m2.assembled();
  const Block2<S> sum = Block2<S>::split(full_sum, nx);
  check(loewner_leq<S>(Mat<S>(sm + shorted_operator<S>(m2)), shorted_operator<S>(sum), tol,
                       input_scale<S>({&full_sum})), "superadditivity fails");

  // Minimality of M_ex over PSD completions.
  const Mat<S> omega = omega_pinv<S>(m.A, m.B);
  const Mat<S> above = omega + gram_noise<S>(ny, rng);
  check(is_psd<S>(Block2<S>{m.A, m.B, above}.assembled()), "[[A,B],[B*,omega+G]] not PSD");
  check(loewner_leq<S>(omega, above, tol, input_scale<S>({&full, &above})), "omega <= D fails for a PSD completion");
  Mat<S> below = omega - gen_psd<S>(ny, dim(rng, 1, ny), rng);
  check(!is_psd<S>(Block2<S>{m.A, m.B, below}.assembled()), "completion with D below omega is PSD");

  // Maximality of S(M) among diag(0, D1) <= M.
  const Mat<S> d1 = sr.sigma - gram_noise<S>(ny, rng);
  const Mat<S> a1 = embed_y<S>(d1, nx);
  check(loewner_leq<S>(a1, full, tol, input_scale<S>({&full})), "diag(0, sigma - G) <= M fails");
  check(loewner_leq<S>(a1, sm, tol, input_scale<S>({&full})), "diag(0, D1) <= S(M) fails");

  // Positive type <=> some diag(0, D1) <= M, both directions.
  const Block2<S> pt = gen_positive_type<S>(nx, ny, rng);
  const Mat<S> pt_sigma = schur_complement<S>(pt).sigma;
  check(loewner_leq<S>(embed_y<S>(pt_sigma, nx), pt.assembled()), "diag(0, sigma) <= M fails (positive type)");
  const Mat<S> lift = embed_y<S>(random_hermitian<S>(ny, rng), nx);
  const Mat<S> lifted = lift + gen_psd<S>(n, dim(rng, 0, n), rng);
  const Block2<S> lb = Block2<S>::split(lifted, nx);
  check(is_psd<S>(lb.A) && check_positive_pair<S>(lb.A, lb.B).positive,
        "M >= diag(0, D1) but M is not of positive type");
}

SuiteResult order(int count, std::uint64_t seed) {
  Tally t("order", seed);
  for (int k = 0; k < count; ++k) t.instance(order_instance<Rational>);
  for (int k = 0; k < count; ++k) t.instance(order_instance<Complex>);
  return t.take();
}

// ------------------------------------------------------------------ douglas

SuiteResult douglas(int count, std::uint64_t seed) {
  Tally t("douglas", seed);
  for (int k = 0; k < count; ++k)
    t.instance([](Rng& rng, Checks& check) {
      const Index n = dim(rng, 1, 6);
      const double alpha = 0.25 + 2.0 * rng.uniform01();
      // D = G*G and A = alpha^2 G* C G with 0 <= C <= I, so A <= alpha^2 D.
      const MatC g = random_matrix<Complex>(dim(rng, 1, n), n, rng);
      MatC c = gen_psd<Complex>(g.rows(), dim(rng, 0, g.rows()), rng);
      const double cn = hermitian_norm(c);
      if (cn > 0) c /= cn * (1.0 + rng.uniform01());
      const MatC d = symmetrized<Complex>(g.adjoint() * g);
      const MatC a = symmetrized<Complex>(alpha * alpha * g.adjoint() * c * g);
      const DouglasFactorization<Complex> f = douglas_factorization<Complex>(a, d, alpha);
      check(max_abs(MatC(f.RD.adjoint() * f.W - f.RA.adjoint())) <= 1e-9, "R_D* W != R_A*");
      check(f.op_norm_W <= alpha + 1e-9, "|W| > alpha");
      check(rank<Complex>(f.W) == rank<Complex>(MatC(f.RA.adjoint())), "ker W != ker R_A* (rank)");
      check(Subspace<Complex>::span(f.W).equals(Subspace<Complex>::span(f.W).intersect(
                Subspace<Complex>::span(f.RD))),
            "ran W ⊄ ran R_D");
      check(approx_equal<Complex>(f.W, douglas_least_squares(f.RA, f.RD), 1e-9),
            "pseudo-inverse and least-squares W differ");
    });
  return t.take();
}

// ------------------------------------------------------------------- ranges

SuiteResult ranges(int count, std::uint64_t seed) {
  Tally t("ranges", seed);
  for (int k = 0; k < count; ++k)
    t.instance([](Rng& rng, Checks& check) {
      const Index nx = dim(rng, 1, 4);
      const Index ny = dim(rng, 1, 4);
      const Block2<Rational> m = gen_block2_psd<Rational>(nx, ny, rng);
      check(Subspace<Rational>::span(shorted_operator<Rational>(m)).equals(range_meets_y<Rational>(m)),
            "ran S(M) != ran M ∩ Y'");
      const Block2<Rational> pt = gen_positive_type<Rational>(nx, ny, rng);
      check(Subspace<Rational>::span(shorted_operator<Rational>(pt)).contains(range_meets_y<Rational>(pt)),
            "ran M ∩ Y' ⊄ ran S(M) (positive type)");
      const Index n = dim(rng, 1, 5);
      const MatQ f1 = random_matrix<Rational>(dim(rng, 1, 4), n, rng);
      const MatQ r1 = f1 * gen_psd<Rational>(n, dim(rng, 0, n), rng);
      const MatQ r2 = random_matrix<Rational>(dim(rng, 1, 4), n, rng);
      const RangeAdditivityReport<Rational> rep = verify_range_additivity<Rational>(r1, r2);
      check(rep.holds, "ran R* != ran R1* + ran R2*");
      check(oracle::exact_rank(hstack<Rational>(MatQ(r1.adjoint()), MatQ(r2.adjoint()))) ==
                oracle::exact_rank(MatQ(r1.adjoint() * r1 + r2.adjoint() * r2)),
            "rank [R1*|R2*] != rank A");
    });
  return t.take();
}

// ----------------------------------------------------------------- extremal

template <class S>
void extremal_instance(Rng& rng, Checks& check, bool control) {
  const Index nx = dim(rng, 1, 4);
  const Index ny = dim(rng, 1, 4);
  Block2<S> m = gen_extremal<S>(nx, ny, rng);
  if (control) m.D += gen_psd<S>(ny, dim(rng, 1, ny), rng);
  const ExtremalityReport<S> r = extremality_criteria<S>(m);
  check(r.criteria_agree, "the four extremality criteria disagree");
  check(r.sigma_zero == !control, control ? "control reported extremal" : "M_ex reported non-extremal");
  const KernelEqualityReport<S> ke = kernel_equality_check<S>(m.A, m.B);
  check(ke.equivalence_holds, "doubly extremal != (ker A = ker B*)");
  check(r.is_doubly_extremal == (r.h1_dim == 0), "doubly extremal != (dim H1 = 0)");
  check(is_extremal<S>(minimal_completion<S>(m.A, m.B)), "M_ex not extremal");
  check(approx_equal<S>(Mat<S>(shorted_operator<S>(m) + minimal_completion<S>(m.A, m.B).assembled()),
                        m.assembled(), 1e-9),
        "M != S(M) + M_ex");

  const Mat<S> omega = omega_pinv<S>(m.A, m.B);
  const Mat<S> triple = omega_pinv<S>(double_omega<S>(m.A, m.B), m.B);
  check(approx_equal<S>(triple, omega, 1e-9), "omega involution fails");
  if constexpr (!is_exact_v<S>) {
    check(approx_equal<S>(double_omega<S>(m.A, m.B, OmegaRoute::SquareRoot), double_omega<S>(m.A, m.B), 1e-9),
          "R* P_B R != B omega^+ B*");
  }
}

// Pairs with ran B = ran A are doubly extremal.
template <class S>
void full_range_instance(Rng& rng, Checks& check) {
  const Index nx = dim(rng, 1, 4);
  const Index ny = nx + dim(rng, 0, 2);
  const Mat<S> a = gen_psd<S>(nx, dim(rng, 0, nx), rng);
  const Mat<S> b = a * random_full_row_rank<S>(nx, ny, rng);
  check(is_doubly_extremal<S>(a, b), "ran B = ran A but not doubly extremal");
}

SuiteResult extremal(int count, std::uint64_t seed) {
  Tally t("extremal", seed);
  for (int k = 0; k < count; ++k) t.instance([](Rng& r, Checks& c) { extremal_instance<Rational>(r, c, false); });
  for (int k = 0; k < count; ++k) t.instance([](Rng& r, Checks& c) { extremal_instance<Rational>(r, c, true); });
  for (int k = 0; k < count; ++k) t.instance([](Rng& r, Checks& c) { extremal_instance<Complex>(r, c, false); });
  for (int k = 0; k < count; ++k) t.instance([](Rng& r, Checks& c) { extremal_instance<Complex>(r, c, true); });
  for (int k = 0; k < count / 4 + 1; ++k) t.instance(full_range_instance<Rational>);
  for (int k = 0; k < count / 4 + 1; ++k) t.instance(full_range_instance<Complex>);
  return t.take();
}

// ----------------------------------------------------------------- infimum

SuiteResult infimum(int count, std::uint64_t seed) {
  Tally t("infimum", seed);
  // count bounded chains with known limits, then count / 5 + 1 unbounded ones
  const int unbounded = count / 5 + 1;
  for (int k = 0; k < count + unbounded; ++k)
    t.instance([k, count](Rng& rng, Checks& check) {
      const Index nx = dim(rng, 1, 3);
      const Index ny = dim(rng, 1, 3);
      if (k >= count) {
        const Chain<Rational> c = gen_unbounded_chain<Rational>(10, nx, ny, rng);
        const InfimumReport<Rational> r = infimum_of_chain<Rational>(c.elements, c.limit);
        check(!r.limit_positive_type && r.consistent && r.verdict == "not in L+", "unbounded chain: " + r.verdict);
        for (std::size_t i = 1; i < c.elements.size(); ++i) {
          const MatQ prev = shorted_operator<Rational>(c.elements[i - 1]);
          const MatQ next = shorted_operator<Rational>(c.elements[i]);
          check(loewner_leq<Rational>(next, prev) && next != prev, "S(A_n) not strictly decreasing");
        }
        return;
      }
      const Chain<Rational> c = gen_decreasing_chain<Rational>(10, nx, ny, rng);
      const MatQ limit_short = shorted_operator<Rational>(c.limit);
      const std::vector<MatQ> bounds = {MatQ(limit_short - gram_noise<Rational>(nx + ny, rng)),
                                        MatQ(embed_y<Rational>(MatQ(schur_complement<Rational>(c.limit).sigma -
                                                                    gram_noise<Rational>(ny, rng)),
                                                               nx))};
      const InfimumReport<Rational> r = infimum_of_chain<Rational>(c.elements, c.limit, bounds);
      check(r.limit_positive_type, "limit not of positive type");
      check(r.limit_short_is_lower_bound, "S(limit) <= S(A_n) fails");
      for (std::size_t i = 0; i < bounds.size(); ++i) {
        check(r.candidate_is_lower_bound[i], "constructed lower bound is not a lower bound");
        check(r.candidate_below_limit[i], "S(limit) does not dominate a lower bound");
      }
      check(r.consistent, r.verdict);
    });
  return t.take();
}

// ------------------------------------------------------------- determinism

std::string corpus_bytes(std::uint64_t seed) {
  Rng rng(seed);
  std::string out;
  out += to_json<Complex>(gen_block2_hermitian<Complex>(3, 2, rng).assembled(), {3, 2}).dump();
  out += to_json<Rational>(gen_block2_hermitian<Rational>(2, 3, rng).assembled(), {2, 3}).dump();
  out += to_json<Rational>(gen_block3_psd<Rational>(2, 2, 2, rng).assembled(), {2, 2, 2}).dump();
  const GeneratedPair<Rational> p = gen_positive_pair<Rational>(3, 2, 2, rng);
  out += to_json<Rational>(p.A).dump() + to_json<Rational>(p.B).dump();
  for (const auto& e : gen_decreasing_chain<Complex>(4, 2, 2, rng).elements)
    out += to_json<Complex>(e.assembled(), {2, 2}).dump();
  return out;
}

SuiteResult determinism(int count, std::uint64_t seed) {
  Tally t("determinism", seed);
  for (int k = 0; k < count; ++k)
    t.instance([](Rng& rng, Checks& check) {
      const std::uint64_t s = rng.next();
      check(corpus_bytes(s) == corpus_bytes(s), "two runs with one seed differ");
    });
  return t.take();
}

// ------------------------------------------------------------------ kernel

template <class S>
void kernel_instance(Rng& rng, Checks& check) {
  const Index n = dim(rng, 1, 5);
  const Mat<S> h = gen_psd<S>(n, dim(rng, 0, n), rng);
  const Vec<S> x1 = random_vector<S>(n, rng);
  const Vec<S> x2 = random_vector<S>(n, rng);
  const S cross = (x2.adjoint() * h * x1)(0, 0);
  const S q1 = (x1.adjoint() * h * x1)(0, 0);
  const S q2 = (x2.adjoint() * h * x2)(0, 0);
  if constexpr (is_exact_v<S>) {
    check(abs2(cross) <= real(q1) * real(q2), "Cauchy inequality fails");
  } else {
    check(std::norm(cross) <= q1.real() * q2.real() * (1.0 + 1e-10) + 1e-12, "Cauchy inequality fails");
  }

  // Penrose conditions and rank on a random low-rank product.
  const Index rows = dim(rng, 1, 5);
  const Index cols = dim(rng, 1, 5);
  const Index r = dim(rng, 0, std::min(rows, cols));
  const Mat<S> left = random_matrix<S>(rows, r, rng);
  const Mat<S> m = left * random_matrix<S>(r, cols, rng);
  const Mat<S> p = pseudo_inverse<S>(m);
  check(approx_equal<S>(Mat<S>(m * p * m), m, 1e-9), "M M+ M != M");
  check(approx_equal<S>(Mat<S>(p * m * p), p, 1e-9), "M+ M M+ != M+");
  check(approx_equal<S>(Mat<S>((m * p).adjoint()), Mat<S>(m * p), 1e-9), "M M+ not Hermitian");
  check(approx_equal<S>(Mat<S>((p * m).adjoint()), Mat<S>(p * m), 1e-9), "M+ M not Hermitian");
  const Index rk = rank<S>(m);
  check(rk <= r, "rank exceeds inner dimension");
  if constexpr (is_exact_v<S>) check(rk == oracle::exact_rank(m), "rank disagrees with elimination oracle");
  check(kernel_basis<S>(m).cols() == cols - rk, "rank-nullity fails");

  // dim(U + V) + dim(U ∩ V) = dim U + dim V, and P_U is an orthoprojector onto U.
  const Subspace<S> u = Subspace<S>::span(random_matrix<S>(n, dim(rng, 0, n), rng));
  const Subspace<S> v = Subspace<S>::span(gen_psd<S>(n, dim(rng, 0, n), rng));
  check(u.sum(v).dim() + u.intersect(v).dim() == u.dim() + v.dim(), "Grassmann dimension identity fails");
  check(u.intersect(v).equals(v.intersect(u)), "intersection not symmetric");
  check(u.orthogonal_complement().dim() == n - u.dim(), "complement has wrong dimension");
  const Mat<S> pu = orthoprojector<S>(u);
  check(approx_equal<S>(Mat<S>(pu * pu), pu, 1e-9), "P_U not idempotent");
  check(Subspace<S>::span(pu).equals(u), "ran P_U != U");
}

SuiteResult kernel(int count, std::uint64_t seed) {
  Tally t("kernel", seed);
  for (int k = 0; k < count; ++k) t.instance(kernel_instance<Rational>);
  for (int k = 0; k < count; ++k) t.instance(kernel_instance<Complex>);
  return t.take();
}

// ------------------------------------------------------------- square-root

SuiteResult square_root(int count, std::uint64_t seed) {
  Tally t("square-root", seed);
  for (int k = 0; k < count; ++k)
    t.instance([](Rng& rng, Checks& check) {
      const Index n = dim(rng, 1, 6);
      const Index r = dim(rng, 0, n);
      const MatC a = gen_psd<Complex>(n, r, rng);
      const double tol = 1e-12 * (1.0 + max_abs(a)) * 1e3;
      const SquareRootFactor<Complex> eig = minimal_square_root<Complex>(a);
      const SquareRootFactor<Complex> chol = cholesky_square_root<Complex>(a);
      const Index extra = dim(rng, 1, 3);
      const SquareRootFactor<Complex> pad = nonminimal_square_root<Complex>(a, extra, rng.next());
      check(max_abs(MatC(eig.R.adjoint() * eig.R - a)) <= tol, "R*R != A (eigen)");
      check(max_abs(MatC(chol.R.adjoint() * chol.R - a)) <= tol, "R*R != A (cholesky)");
      check(max_abs(MatC(pad.R.adjoint() * pad.R - a)) <= tol, "R*R != A (padded)");
      check(eig.hilbert_dim() == r && chol.hilbert_dim() == r, "minimal root has wrong Hilbert dimension");
      check(!pad.minimal && pad.hilbert_dim() > r, "padded root reported minimal");
      const MatC u = linking_isometry<Complex>(pad, eig);
      check(approx_equal<Complex>(MatC(u.adjoint() * u), MatC::Identity(r, r), 1e-9), "U*U != I");
      check(approx_equal<Complex>(MatC(u * eig.R), pad.R, 1e-9), "U S != R");

      // x' = A z lies in ran R*; a vector with a kernel component does not.
      const VecC inside = a * random_vector<Complex>(n, rng);
      const MembershipCertificate<Complex> in = membership_ran_rstar<Complex>(eig, inside);
      check(in.member && in.annihilates_kernel && in.sup_finite, "A z not certified in ran R*");
      const VecC x = generalized_inverse_apply<Complex>(eig, inside);
      check(max_abs(VecC(eig.R.adjoint() * x - inside)) <= 1e-8 * (1.0 + max_abs(inside)), "R* R^-* x' != x'");
      if (r < n) {
        const MatC ker = kernel_basis<Complex>(a);
        const VecC outside = inside + ker.col(0);
        const MembershipCertificate<Complex> out = membership_ran_rstar<Complex>(eig, outside);
        check(!out.member && !out.annihilates_kernel && !out.sup_finite, "vector off ran R* certified inside");
      }
    });
  return t.take();
}

// ------------------------------------------------------------------- pairs

template <class S>
void pair_instance(Rng& rng, Checks& check) {
  const Index nx = dim(rng, 1, 4);
  const Index ny = dim(rng, 1, 4);
  const GeneratedPair<S> g = gen_positive_pair<S>(nx, ny, dim(rng, 0, nx), rng);
  const PairDiagnostic<S> d = check_positive_pair<S>(g.A, g.B);
  check(d.positive && d.kernel_condition && d.sup_finite, "generated pair rejected: " + d.message);
  const PositivePairData<S> p = build_pair<S>(g.A, g.B);
  check(is_psd<S>(p.omega), "omega not PSD");

  const Vec<S> y = random_vector<S>(ny, rng);
  const SupRatio<S> s = sup_ratio<S>(p, y);
  const Vec<S> by = g.B * y;
  const S ax = (s.maximizer.adjoint() * g.A * s.maximizer)(0, 0);
  const S bx = (s.maximizer.adjoint() * by)(0, 0);
  if constexpr (is_exact_v<S>) {
    // |<By, x*>|^2 = value * <A x*, x*> and <A x*, x*> = value at the maximizer.
    check(abs2(bx) == real(s.value) * real(ax), "maximizer does not attain the supremum");
    check(ax == s.value, "<A x*, x*> != <omega y, y>");
  } else {
    const double v = s.value.real();
    check(std::abs(std::norm(bx) - v * ax.real()) <= 1e-8 * (1.0 + v * v), "maximizer does not attain the supremum");
    const VecC x = random_vector<Complex>(nx, rng);
    const double axx = (x.adjoint() * g.A * x)(0, 0).real();
    if (axx > 1e-8) check(std::norm(x.dot(by)) / axx <= v * (1.0 + 1e-8) + 1e-8, "ratio exceeds supremum");
  }

  const GeneratedPair<S> g2 = gen_positive_pair<S>(nx, ny, dim(rng, 0, nx), rng);
  const SubadditivityReport<S> sub = omega_subadditivity_check<S>(p, build_pair<S>(g2.A, g2.B));
  check(sub.sum_is_pair && sub.holds, "omega subadditivity fails");

  // A vector leaking into ker A breaks the pair.
  if (rank<S>(g.A) < nx) {
    Mat<S> b = g.B;
    b.col(0) += kernel_basis<S>(g.A).col(0);
    const PairDiagnostic<S> bad = check_positive_pair<S>(g.A, b);
    check(!bad.positive && !bad.kernel_condition, "pair with B leaking into ker A accepted");
  }
}

SuiteResult pairs(int count, std::uint64_t seed) {
  Tally t("pairs", seed);
  for (int k = 0; k < count; ++k) t.instance(pair_instance<Rational>);
  for (int k = 0; k < count; ++k) t.instance(pair_instance<Complex>);
  return t.take();
}

using SuiteFn = SuiteResult (*)(int, std::uint64_t);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"albert", albert},       {"albert-exact", albert_exact}, {"sqrt-independence", sqrt_independence},
      {"variational", variational}, {"quotient", quotient},   {"order", order},
      {"douglas", douglas},     {"ranges", ranges},             {"extremal", extremal},
      {"infimum", infimum},     {"determinism", determinism},   {"kernel", kernel},
      {"square-root", square_root}, {"pairs", pairs}};
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, int count, std::uint64_t seed) {
  require(count > 0, ErrorKind::Validation, "count must be positive");
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    const auto start = std::chrono::steady_clock::now();
    SuiteResult r = fn(count, seed);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }
  throw Error(ErrorKind::Validation, "unknown suite \"" + name + "\"");
}

}  // namespace shorted::verify
