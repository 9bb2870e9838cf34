#include <doctest.h>

#include "helpers.hpp"
#include "shorted/generators.hpp"
#include "shorted/square_root.hpp"

using namespace testing;

namespace {

double gram_error(const MatC& r, const MatC& a) { return max_abs(MatC(r.adjoint() * r - a)); }

}  // namespace

TEST_CASE("minimal square root") {
  const SquareRootFactor<Complex> id = minimal_square_root<Complex>(MatC::Identity(3, 3));
  CHECK(id.hilbert_dim() == 3);
  CHECK(id.minimal);
  CHECK(gram_error(id.R, MatC::Identity(3, 3)) <= 1e-12);

  const SquareRootFactor<Complex> zero = minimal_square_root<Complex>(MatC::Zero(2, 2));
  CHECK(zero.R.rows() == 0);
  CHECK(zero.R.cols() == 2);

  const SquareRootFactor<Complex> one = minimal_square_root<Complex>(ones_c(2, 2));
  CHECK(one.R.rows() == 1);
  CHECK(one.R.cols() == 2);
  CHECK(gram_error(one.R, ones_c(2, 2)) <= 1e-12);

  const SquareRootFactor<Complex> chol = cholesky_square_root<Complex>(ones_c(2, 2));
  CHECK(chol.R.rows() == 1);
  CHECK(gram_error(chol.R, ones_c(2, 2)) <= 1e-12);

  CHECK_THROWS_AS(minimal_square_root<Complex>(mc({{1, 2}, {2, 1}})), Error);
  CHECK_THROWS_AS(minimal_square_root<Rational>(ones_q(2, 2)), Error);
}

TEST_CASE("roots of random PSD matrices") {
  Rng rng(21);
  for (int k = 0; k < 100; ++k) {
    const Index n = rng.uniform_int(1, 6);
    const Index r = rng.uniform_int(0, n);
    const MatC a = gen_psd<Complex>(n, r, rng);
    const double tol = 1e-10 * (1.0 + max_abs(a));
    for (const SquareRootFactor<Complex>& f :
         {minimal_square_root<Complex>(a), cholesky_square_root<Complex>(a)}) {
      CHECK(gram_error(f.R, a) <= tol);
      CHECK(f.hilbert_dim() == r);
      CHECK(rank<Complex>(f.R) == f.hilbert_dim());
      CHECK(Subspace<Complex>::kernel(f.R).equals(Subspace<Complex>::kernel(a)));
    }
  }
}

TEST_CASE("padded square root") {
  const SquareRootFactor<Complex> p = nonminimal_square_root<Complex>(MatC::Identity(2, 2), 1);
  CHECK(p.R.rows() == 3);
  CHECK(p.R.cols() == 2);
  CHECK_FALSE(p.minimal);
  CHECK(gram_error(p.R, MatC::Identity(2, 2)) <= 1e-12);

  const SquareRootFactor<Complex> o = nonminimal_square_root<Complex>(ones_c(2, 2), 2);
  CHECK(o.R.rows() == 3);
  CHECK(rank<Complex>(o.R) == 1);
  CHECK(gram_error(o.R, ones_c(2, 2)) <= 1e-12);

  const SquareRootFactor<Complex> none = nonminimal_square_root<Complex>(ones_c(2, 2), 0);
  CHECK(none.minimal);
  CHECK(none.R.rows() == 1);
  CHECK(gram_error(none.R, ones_c(2, 2)) <= 1e-12);
}

TEST_CASE("generalized inverse apply") {
  const SquareRootFactor<Complex> id{MatC::Identity(2, 2), true};
  const VecC x = mc({{3}, {-2}});
  CHECK(approx_equal<Complex>(generalized_inverse_apply<Complex>(id, x), x, 1e-12));

  const SquareRootFactor<Complex> r{mc({{1, 1}}), true};
  const VecC h = generalized_inverse_apply<Complex>(r, VecC(mc({{1}, {1}})));
  CHECK(h.size() == 1);
  CHECK(std::abs(h(0) - 1.0) <= 1e-12);
  try {
    generalized_inverse_apply<Complex>(r, VecC(mc({{1}, {-1}})));
    FAIL("expected OutsideRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutsideRange);
  }
}

TEST_CASE("membership in ran R*") {
  const SquareRootFactor<Complex> id{MatC::Identity(2, 2), true};
  const MembershipCertificate<Complex> all = membership_ran_rstar<Complex>(id, VecC(mc({{3}, {4}})));
  CHECK(all.member);
  CHECK(all.sup == doctest::Approx(25.0));

  const SquareRootFactor<Complex> r{mc({{1, 1}}), true};
  const MembershipCertificate<Complex> off = membership_ran_rstar<Complex>(r, VecC(mc({{1}, {-1}})));
  CHECK_FALSE(off.member);
  CHECK_FALSE(off.annihilates_kernel);
  CHECK_FALSE(off.sup_finite);

  // x' = R* h with h = 2, so the supremum is |h|^2 = 4.
  const MembershipCertificate<Complex> in = membership_ran_rstar<Complex>(r, VecC(mc({{2}, {2}})));
  CHECK(in.member);
  CHECK(in.annihilates_kernel);
  CHECK(in.sup == doctest::Approx(4.0));

  const SquareRootFactor<Rational> rq{mq({{1, 1}}), true};
  const MembershipCertificate<Rational> inq = membership_ran_rstar<Rational>(rq, VecQ(mq({{2}, {2}})));
  CHECK(inq.member);
  CHECK(inq.sup == 4.0);

  // sup over random x of |<x', x>|^2 / |Rx|^2 stays below 4 and gets close to it
  Rng rng(4);
  double best = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const VecC x = random_matrix<Complex>(2, 1, rng);
    const double ratio = std::norm(x.dot(VecC(mc({{2}, {2}})))) / (r.R * x).squaredNorm();
    CHECK(ratio <= 4.0 + 1e-9);
    best = std::max(best, ratio);
  }
  CHECK(best == doctest::Approx(4.0));
}

TEST_CASE("douglas factorization") {
  const DouglasFactorization<Complex> id =
      douglas_factorization<Complex>(MatC::Identity(2, 2), MatC::Identity(2, 2), 1.0);
  CHECK(id.op_norm_W == doctest::Approx(1.0));
  CHECK(approx_equal<Complex>(MatC(id.W.adjoint() * id.W), MatC::Identity(2, 2), 1e-12));

  const DouglasFactorization<Complex> f =
      douglas_factorization<Complex>(mc({{1, 0}, {0, 0}}), MatC::Identity(2, 2), 1.0);
  CHECK(f.op_norm_W == doctest::Approx(1.0));
  CHECK(max_abs(MatC(f.RD.adjoint() * f.W - f.RA.adjoint())) <= 1e-12);
  CHECK(rank<Complex>(f.W) == rank<Complex>(MatC(f.RA.adjoint())));
  CHECK(Subspace<Complex>::span(f.RD).contains(Subspace<Complex>::span(f.W)));

  try {
    douglas_factorization<Complex>(MatC::Identity(2, 2), MatC::Zero(2, 2), 1.0);
    FAIL("expected OrderViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OrderViolated);
    CHECK(std::string(e.what()) == "A ≰ α²D");
  }
}

TEST_CASE("linking isometry") {
  const MatC a = mc({{2, 1}, {1, 2}});
  const SquareRootFactor<Complex> s = minimal_square_root<Complex>(a);
  CHECK(approx_equal<Complex>(linking_isometry<Complex>(s, s), MatC::Identity(2, 2), 1e-12));

  const SquareRootFactor<Complex> r = nonminimal_square_root<Complex>(a, 2, 17);
  const MatC u = linking_isometry<Complex>(r, s);
  CHECK(approx_equal<Complex>(MatC(u.adjoint() * u), MatC::Identity(2, 2), 1e-10));
  CHECK(approx_equal<Complex>(MatC(u * s.R), r.R, 1e-10));

  const SquareRootFactor<Complex> z = minimal_square_root<Complex>(MatC::Zero(2, 2));
  const MatC empty = linking_isometry<Complex>(z, z);
  CHECK(empty.size() == 0);
}

TEST_CASE("range additivity") {
  const RangeAdditivityReport<Rational> a = verify_range_additivity<Rational>(MatQ::Identity(3, 3), MatQ::Zero(3, 3));
  CHECK(a.holds);
  CHECK(a.ran_rstar.dim() == 3);
  const RangeAdditivityReport<Rational> b = verify_range_additivity<Rational>(mq({{1, 0}}), mq({{0, 1}}));
  CHECK(b.holds);
  CHECK(b.ran_rstar.dim() == 2);
  Rng rng(6);
  for (int k = 0; k < 30; ++k) {
    const MatQ r1 = random_matrix<Rational>(3, 4, rng);
    const MatQ r2 = random_matrix<Rational>(3, 4, rng);
    CHECK(verify_range_additivity<Rational>(r1, r2).holds);
    CHECK(verify_range_additivity<Complex>(to_float(r1), to_float(r2)).holds);
  }
}
