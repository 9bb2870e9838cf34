#include <doctest.h>

#include "helpers.hpp"
#include "shorted/generators.hpp"
#include "shorted/positive_pair.hpp"

using namespace testing;

TEST_CASE("check_positive_pair") {
  CHECK(check_positive_pair<Rational>(MatQ::Identity(2, 2), mq({{5, -1}, {2, 7}})).positive);
  const PairDiagnostic<Rational> bad = check_positive_pair<Rational>(mq({{1, 0}, {0, 0}}), mq({{0}, {1}}));
  CHECK_FALSE(bad.positive);
  CHECK_FALSE(bad.kernel_condition);
  CHECK(bad.message.find("(i) fails") != std::string::npos);
  CHECK(check_positive_pair<Rational>(mq({{1, 0}, {0, 0}}), mq({{3}, {0}})).positive);
  CHECK(check_positive_pair<Complex>(mc({{1, 0}, {0, 0}}), mc({{3}, {0}})).positive);
  CHECK_FALSE(check_positive_pair<Complex>(mc({{1, 0}, {0, 0}}), mc({{0}, {1}})).positive);
  CHECK_THROWS_AS(check_positive_pair<Rational>(mq({{1, 2}, {2, 1}}), mq({{1}, {1}})), Error);
}

TEST_CASE("build_pair and omega") {
  const MatQ b = mq({{1, 2}, {3, 4}});
  CHECK(build_pair<Rational>(MatQ::Identity(2, 2), b).omega == MatQ(b.adjoint() * b));
  CHECK(build_pair<Rational>(mq({{1, 0}, {0, 0}}), mq({{1}, {0}})).omega == mq({{1}}));
  CHECK(build_pair<Rational>(ones_q(2, 2), mq({{1}, {1}})).omega == mq({{1}}));
  CHECK_THROWS_AS(build_pair<Rational>(mq({{1, 0}, {0, 0}}), mq({{0}, {1}})), Error);

  const PositivePairData<Complex> viaroot = build_pair<Complex>(ones_c(2, 2), mc({{1}, {1}}), OmegaRoute::SquareRoot);
  REQUIRE(viaroot.T);
  REQUIRE(viaroot.R);
  CHECK(approx_equal<Complex>(viaroot.omega, mc({{1}}), 1e-12));
  CHECK(approx_equal<Complex>(MatC(viaroot.R->adjoint() * *viaroot.T), mc({{1}, {1}}), 1e-12));
}

TEST_CASE("omega routes agree on generated pairs") {
  Rng rng(31);
  for (int k = 0; k < 100; ++k) {
    const Index nx = rng.uniform_int(1, 5);
    const Index ny = rng.uniform_int(1, 5);
    const Index r = rng.uniform_int(0, nx);
    const GeneratedPair<Complex> p = gen_positive_pair<Complex>(nx, ny, r, rng);
    const PositivePairData<Complex> root = build_pair<Complex>(p.A, p.B, OmegaRoute::SquareRoot);
    const PositivePairData<Complex> pinv = build_pair<Complex>(p.A, p.B, OmegaRoute::PseudoInverse);
    CHECK(approx_equal<Complex>(root.omega, pinv.omega, 1e-9));
    CHECK(range_inclusion<Complex>(*root.T, *root.R * root.R->adjoint()));
  }
}

TEST_CASE("sup ratio") {
  const PositivePairData<Rational> id = build_pair<Rational>(MatQ::Identity(2, 2), MatQ::Identity(2, 2));
  const SupRatio<Rational> s1 = sup_ratio<Rational>(id, VecQ(mq({{1}, {0}})));
  CHECK(s1.value == Rational(1));
  CHECK(s1.maximizer == VecQ(mq({{1}, {0}})));

  const PositivePairData<Rational> one = build_pair<Rational>(ones_q(2, 2), mq({{1}, {1}}));
  const SupRatio<Rational> s2 = sup_ratio<Rational>(one, VecQ(mq({{1}})));
  CHECK(s2.value == Rational(1));
  CHECK(s2.maximizer == VecQ(MatQ::Constant(2, 1, q("1/2"))));

  const PositivePairData<Rational> zero = build_pair<Rational>(ones_q(2, 2), MatQ::Zero(2, 1));
  CHECK(sup_ratio<Rational>(zero, VecQ(mq({{3}}))).value == Rational(0));
}

TEST_CASE("omega subadditivity") {
  const PositivePairData<Rational> p = build_pair<Rational>(mq({{2, 1}, {1, 1}}), mq({{1}, {2}}));
  const PositivePairData<Rational> z = build_pair<Rational>(MatQ::Zero(2, 2), MatQ::Zero(2, 1));
  const SubadditivityReport<Rational> same = omega_subadditivity_check<Rational>(p, z);
  CHECK(same.holds);
  CHECK(same.lhs == same.rhs);

  // omega(2A, 2B) = 4 B* (A^+ / 2) B = 2 omega(A, B)
  const SubadditivityReport<Rational> twice = omega_subadditivity_check<Rational>(p, p);
  CHECK(twice.holds);
  CHECK(twice.lhs == MatQ(Rational(2) * p.omega));

  Rng rng(12);
  for (int k = 0; k < 100; ++k) {
    const GeneratedPair<Rational> a = gen_positive_pair<Rational>(3, 2, rng.uniform_int(0, 3), rng);
    const GeneratedPair<Rational> b = gen_positive_pair<Rational>(3, 2, rng.uniform_int(0, 3), rng);
    const SubadditivityReport<Rational> r =
        omega_subadditivity_check<Rational>(build_pair<Rational>(a.A, a.B), build_pair<Rational>(b.A, b.B));
    CHECK(r.sum_is_pair);
    CHECK(r.holds);
  }
}
