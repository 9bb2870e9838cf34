#include <doctest.h>

#include "helpers.hpp"
#include "shorted/generators.hpp"
#include "shorted/oracles.hpp"

using namespace testing;

TEST_CASE("adjoint identities") {
  Rng rng(3);
  const MatQ m = random_matrix<Rational>(3, 2, rng);
  const MatQ n = random_matrix<Rational>(2, 4, rng);
  CHECK(adjoint<Rational>(adjoint<Rational>(m)) == m);
  CHECK(adjoint<Rational>(MatQ(m * n)) == MatQ(adjoint<Rational>(n) * adjoint<Rational>(m)));

  const MatQ h = random_hermitian<Rational>(3, rng);
  const VecQ x1 = random_matrix<Rational>(3, 1, rng);
  const VecQ x2 = random_matrix<Rational>(3, 1, rng);
  CHECK(pairing<Rational>(VecQ(h * x1), x2) == conj(pairing<Rational>(VecQ(h.adjoint() * x2), x1)));
}

TEST_CASE("hermitian validation") {
  CHECK_NOTHROW(hermitian<Rational>(mq({{1, 2}, {2, 1}})));
  CHECK_THROWS_AS(hermitian<Rational>(mq({{1, 2}, {3, 1}})), Error);
  MatC near = mc({{1, 2}, {2, 1}});
  near(0, 1) += 1e-12;
  const MatC fixed = hermitian<Complex>(near);
  CHECK(fixed(0, 1) == fixed(1, 0));
  CHECK_THROWS_AS(hermitian<Complex>(mc({{1, 2}, {2.1, 1}})), Error);
}

TEST_CASE("rank factorization") {
  const RankFactorization<Rational> id = rank_factorization<Rational>(MatQ::Identity(3, 3));
  CHECK(id.rank() == 3);
  CHECK(MatQ(id.F * id.G) == MatQ::Identity(3, 3));

  const RankFactorization<Rational> one = rank_factorization<Rational>(ones_q(2, 2));
  CHECK(one.rank() == 1);
  CHECK(MatQ(one.F * one.G) == ones_q(2, 2));

  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    MatQ m = random_matrix<Rational>(5, 5, rng);
    m.col(3) = m.col(0);
    m.col(4) = m.col(1);
    const RankFactorization<Rational> f = rank_factorization<Rational>(m);
    CHECK(f.rank() <= 3);
    CHECK(f.rank() == oracle::exact_rank(m));
    CHECK(MatQ(f.F * f.G) == m);
  }

  const RankFactorization<Complex> fc = rank_factorization<Complex>(ones_c(2, 2));
  CHECK(fc.rank() == 1);
  CHECK(approx_equal<Complex>(MatC(fc.F * fc.G), ones_c(2, 2), 1e-12));
}

TEST_CASE("pseudo-inverse") {
  CHECK(pseudo_inverse<Rational>(mq({{2, 0}, {0, 0}})) == (MatQ(2, 2) << q("1/2"), Rational(0), Rational(0), Rational(0)).finished());
  CHECK(pseudo_inverse<Rational>(MatQ::Zero(2, 3)) == MatQ::Zero(3, 2));

  const MatQ o = ones_q(2, 2);
  const MatQ p = pseudo_inverse<Rational>(o);
  CHECK(p == MatQ::Constant(2, 2, q("1/4")));
  CHECK(MatQ(o * p * o) == o);
  CHECK(MatQ(p * o * p) == p);
  CHECK(MatQ((o * p).adjoint()) == MatQ(o * p));
  CHECK(MatQ((p * o).adjoint()) == MatQ(p * o));

  CHECK(approx_equal<Complex>(pseudo_inverse<Complex>(ones_c(2, 2)), MatC::Constant(2, 2, 0.25), 1e-12));
  CHECK(pseudo_inverse<Complex>(MatC::Zero(0, 3)).rows() == 3);
}

TEST_CASE("orthoprojector") {
  CHECK(orthoprojector<Rational>(Subspace<Rational>::span(mq({{1}, {0}}))) == mq({{1, 0}, {0, 0}}));
  CHECK(orthoprojector<Rational>(Subspace<Rational>::whole(3)) == MatQ::Identity(3, 3));
  const MatQ p = orthoprojector<Rational>(Subspace<Rational>::span(mq({{1}, {1}})));
  CHECK(p == MatQ::Constant(2, 2, q("1/2")));
  CHECK(MatQ(p * p) == p);
  CHECK(MatQ(p.adjoint()) == p);
  CHECK(VecQ(p * mq({{1}, {1}})) == VecQ(mq({{1}, {1}})));
  CHECK(orthoprojector<Rational>(Subspace<Rational>::zero(2)) == MatQ::Zero(2, 2));

  const MatC pc = orthoprojector<Complex>(Subspace<Complex>::span(mc({{1}, {1}})));
  CHECK(approx_equal<Complex>(pc, MatC::Constant(2, 2, 0.5), 1e-12));
}

TEST_CASE("range inclusion") {
  const MatQ e1 = mq({{1}, {0}});
  const MatQ e2 = mq({{0}, {1}});
  CHECK(range_inclusion<Rational>(e1, MatQ::Identity(2, 2)));
  CHECK_FALSE(range_inclusion<Rational>(e2, e1));
  CHECK(range_inclusion<Complex>(to_float(e1), MatC::Identity(2, 2)));
  CHECK_FALSE(range_inclusion<Complex>(to_float(e2), to_float(e1)));

  Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    const MatQ a = gen_psd<Rational>(4, 2, rng);
    CHECK(range_inclusion<Rational>(MatQ(a * random_matrix<Rational>(4, 1, rng)), a));
    const MatC af = gen_psd<Complex>(4, 2, rng);
    CHECK(range_inclusion<Complex>(MatC(af * random_matrix<Complex>(4, 1, rng)), af));
  }
}

TEST_CASE("subspaces") {
  const Subspace<Rational> x = Subspace<Rational>::span(mq({{1}, {0}, {0}}));
  const Subspace<Rational> xy = Subspace<Rational>::span(mq({{1, 0}, {0, 1}, {0, 0}}));
  const Subspace<Rational> yz = Subspace<Rational>::span(mq({{0, 0}, {1, 0}, {0, 1}}));
  CHECK(xy.contains(x));
  CHECK_FALSE(x.contains(xy));
  CHECK(xy.intersect(yz).dim() == 1);
  CHECK(xy.intersect(yz).equals(Subspace<Rational>::span(mq({{0}, {1}, {0}}))));
  CHECK(xy.sum(yz).equals(Subspace<Rational>::whole(3)));
  CHECK(x.orthogonal_complement().equals(yz));
  CHECK(Subspace<Rational>::kernel(ones_q(2, 2)).equals(Subspace<Rational>::span(mq({{1}, {-1}}))));
  CHECK(rank<Rational>(xy.basis()) == xy.dim());

  // equality is mutual inclusion
  const Subspace<Rational> other = Subspace<Rational>::span(mq({{1, 1}, {1, -1}, {0, 0}}));
  CHECK(other.equals(xy));
  CHECK((other.contains(xy) && xy.contains(other)));
}

TEST_CASE("is_psd") {
  CHECK(is_psd<Rational>(mq({{1, 0}, {0, 0}})));
  CHECK_FALSE(is_psd<Rational>(mq({{1, 2}, {2, 1}})));
  CHECK(is_psd<Complex>(mc({{1, 0}, {0, 0}})));
  CHECK_FALSE(is_psd<Complex>(mc({{1, 2}, {2, 1}})));
  Rng rng(9);
  for (int k = 0; k < 50; ++k) {
    const MatQ g = random_matrix<Rational>(3, 4, rng);
    CHECK(is_psd<Rational>(MatQ(g.adjoint() * g)));
  }
}

TEST_CASE("loewner order") {
  CHECK(loewner_leq<Rational>(MatQ::Zero(2, 2), MatQ::Identity(2, 2)));
  CHECK_FALSE(loewner_leq<Rational>(MatQ::Identity(2, 2), MatQ::Zero(2, 2)));
  CHECK_FALSE(loewner_leq<Complex>(MatC::Identity(2, 2), MatC::Zero(2, 2)));
  Rng rng(10);
  for (int k = 0; k < 50; ++k) {
    const MatQ a = random_hermitian<Rational>(3, rng);
    const MatQ g = random_matrix<Rational>(2, 3, rng);
    CHECK(loewner_leq<Rational>(a, MatQ(a + g.adjoint() * g)));
    const MatC af = random_hermitian<Complex>(3, rng);
    const MatC gf = random_matrix<Complex>(2, 3, rng);
    CHECK(loewner_leq<Complex>(af, MatC(af + gf.adjoint() * gf)));
  }
}

TEST_CASE("oracles agree with the kernel on small cases") {
  CHECK(oracle::psd_by_principal_minors(mq({{1, 0}, {0, 0}})));
  CHECK_FALSE(oracle::psd_by_principal_minors(mq({{1, 2}, {2, 1}})));
  const std::vector<Rational> c = oracle::characteristic_polynomial(mq({{1, 2}, {2, 1}}));
  // t^2 - 2t - 3 = (t - 3)(t + 1)
  CHECK(c[1] == Rational(-2));
  CHECK(c[2] == Rational(-3));
  CHECK(oracle::min_eigenvalue(mc({{1, 2}, {2, 1}})) == doctest::Approx(-1.0));
}
