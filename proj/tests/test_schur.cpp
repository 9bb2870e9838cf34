#include <doctest.h>

#include "helpers.hpp"
#include "shorted/generators.hpp"
#include "shorted/oracles.hpp"
#include "shorted/schur.hpp"

using namespace testing;

namespace {

Block2<Rational> b2(const MatQ& m) { return Block2<Rational>::split(m, 1); }

}  // namespace

TEST_CASE("schur complement of 2x2 examples") {
  CHECK(schur_complement<Rational>(b2(ones_q(2, 2))).sigma == mq({{0}}));
  CHECK(schur_complement<Rational>(b2(mq({{2, 1}, {1, 1}}))).sigma == MatQ::Constant(1, 1, q("1/2")));
  const ShortedResult<Rational> ind = schur_complement<Rational>(b2(mq({{1, 2}, {2, 1}})));
  CHECK(ind.sigma == mq({{-3}}));
  CHECK(ind.shorted.assembled() == mq({{0, 0}, {0, -3}}));

  const ShortedResult<Complex> f = schur_complement<Complex>(Block2<Complex>::split(mc({{2, 1}, {1, 1}}), 1));
  CHECK(std::abs(f.sigma(0, 0) - 0.5) <= 1e-12);

  try {
    schur_complement<Rational>(b2(mq({{0, 1}, {1, 0}})));
    FAIL("expected NotPositivePair");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPositivePair);
    CHECK(std::string(e.what()).find("(i) fails") != std::string::npos);
  }
}

TEST_CASE("B = 0 echoes D") {
  Block2<Rational> m{mq({{3, 1}, {1, 2}}), MatQ::Zero(2, 2), mq({{5, -1}, {-1, 4}})};
  CHECK(schur_complement<Rational>(m).sigma == m.D);
  CHECK(shorted_operator<Rational>(m).bottomRightCorner(2, 2) == m.D);
}

TEST_CASE("shorted via projection") {
  auto proj = [](const MatC& m) { return shorted_via_projection<Complex>(Block2<Complex>::split(m, 1)).shorted.assembled(); };
  CHECK(approx_equal<Complex>(proj(MatC::Identity(2, 2)), mc({{0, 0}, {0, 1}}), 1e-12));
  CHECK(max_abs(proj(ones_c(2, 2))) <= 1e-12);
  CHECK(max_abs(MatC(proj(mc({{2, 1}, {1, 1}})) - mc({{0, 0}, {0, 0.5}}))) <= 1e-10);

  Rng rng(41);
  for (int k = 0; k < 100; ++k) {
    const Index nx = rng.uniform_int(1, 4);
    const Index ny = rng.uniform_int(1, 4);
    const Block2<Complex> m = gen_block2_psd<Complex>(nx, ny, rng);
    CHECK(approx_equal<Complex>(shorted_via_projection<Complex>(m).sigma, schur_complement<Complex>(m).sigma, 1e-9));
  }
}

TEST_CASE("variational value") {
  Block2<Rational> zero_b{mq({{1, 0}, {0, 2}}), MatQ::Zero(2, 1), mq({{3}})};
  CHECK(variational_value<Rational>(zero_b, VecQ(mq({{4}, {-1}})), VecQ(mq({{2}}))) == Rational(12));
  CHECK(variational_value<Rational>(b2(ones_q(2, 2)), VecQ(mq({{5}})), VecQ(mq({{-3}}))) == Rational(0));
  CHECK(variational_value<Rational>(b2(mq({{2, 1}, {1, 1}})), VecQ(mq({{7}})), VecQ(mq({{1}}))) == q("1/2"));

  const Block2<Complex> f = Block2<Complex>::split(mc({{2, 1}, {1, 1}}), 1);
  const double brute = oracle::descent_infimum(f.A, f.B, f.D, VecC(mc({{7}})), VecC(mc({{1}})));
  CHECK(std::abs(brute - 0.5) <= 1e-6);
}

TEST_CASE("albert classification") {
  CHECK(albert_classify<Rational>(b2(MatQ::Identity(2, 2))).classification == AlbertClass::PSD);
  const AlbertVerdict<Rational> npt = albert_classify<Rational>(b2(mq({{0, 1}, {1, 0}})));
  CHECK(npt.classification == AlbertClass::NotPositiveType);
  CHECK(npt.diagnostic.find("(i) fails") != std::string::npos);
  const AlbertVerdict<Rational> snp = albert_classify<Rational>(b2(mq({{1, 2}, {2, 1}})));
  CHECK(snp.classification == AlbertClass::SigmaNotPsd);
  REQUIRE(snp.sigma);
  CHECK(*snp.sigma == mq({{-3}}));
  CHECK(albert_classify<Rational>(b2(mq({{-1, 0}, {0, 1}}))).classification == AlbertClass::NotPositiveType);
  CHECK(std::string(to_string(AlbertClass::SigmaNotPsd)) == "SIGMA_NOT_PSD");

  CHECK(albert_classify<Complex>(Block2<Complex>::split(mc({{1, 2}, {2, 1}}), 1)).classification ==
        AlbertClass::SigmaNotPsd);
}

TEST_CASE("contraction decomposition") {
  Block2<Complex> zero_b{MatC::Identity(2, 2), MatC::Zero(2, 1), mc({{2}})};
  CHECK(max_abs(contraction_decomposition<Complex>(zero_b).K) <= 1e-12);

  const ContractionResult<Complex> one = contraction_decomposition<Complex>(Block2<Complex>::split(ones_c(2, 2), 1));
  CHECK(one.K.rows() == 1);
  CHECK(one.K.cols() == 1);
  CHECK(std::abs(std::abs(one.K(0, 0)) - 1.0) <= 1e-12);

  Rng rng(43);
  for (int k = 0; k < 200; ++k) {
    const Index nx = rng.uniform_int(1, 4);
    const Index ny = rng.uniform_int(1, 4);
    const Block2<Complex> m = gen_block2_psd<Complex>(nx, ny, rng);
    const ContractionResult<Complex> c = contraction_decomposition<Complex>(m);
    CHECK(max_abs(MatC(c.RA.adjoint() * c.K * c.RD - m.B)) <= 1e-9);
    CHECK(operator_norm(c.K) <= 1.0 + 1e-9);
  }
}

TEST_CASE("quotient formula") {
  const QuotientReport<Rational> ones = quotient_formula_check<Rational>(Block3<Rational>::split(ones_q(3, 3), 1, 1));
  CHECK(ones.d_over_a == MatQ::Zero(2, 2));
  CHECK(ones.a_over_a == mq({{0}}));
  CHECK(ones.lhs == mq({{0}}));
  CHECK(ones.rhs == mq({{0}}));
  CHECK(ones.identity_holds);

  MatQ d = MatQ::Zero(4, 4);
  d(0, 0) = Rational(2);
  d.block(1, 1, 2, 2) = mq({{2, 1}, {1, 3}});
  d(3, 3) = Rational(5);
  const QuotientReport<Rational> diag = quotient_formula_check<Rational>(Block3<Rational>::split(d, 1, 2));
  CHECK(diag.d_over_a == d.bottomRightCorner(3, 3));
  CHECK(diag.lhs == mq({{5}}));
  CHECK(diag.identity_holds);
  CHECK(diag.corner_matches);
}

TEST_CASE("minimal completion") {
  const MatQ a = mq({{3, 1}, {1, 2}});
  const Block2<Rational> z = minimal_completion<Rational>(a, MatQ::Zero(2, 1));
  CHECK(z.D == mq({{0}}));
  CHECK(z.A == a);
  CHECK(minimal_completion<Rational>(ones_q(2, 2), mq({{1}, {1}})).D == mq({{1}}));
  CHECK(minimal_completion<Rational>(mq({{1, 0}, {0, 0}}), mq({{1}, {0}})).D == mq({{1}}));
}

TEST_CASE("range of the shorted operator") {
  const Block2<Rational> m = b2(mq({{2, 1}, {1, 1}}));
  CHECK(range_meets_y<Rational>(m).equals(Subspace<Rational>::span(shorted_operator<Rational>(m))));
  CHECK(range_meets_y<Rational>(b2(ones_q(2, 2))).dim() == 0);
}

TEST_CASE("infimum of chains") {
  const Block2<Rational> base = b2(mq({{2, 1}, {1, 1}}));
  const InfimumReport<Rational> constant = infimum_of_chain<Rational>({base, base}, base);
  CHECK(constant.consistent);
  CHECK(constant.verdict == "S(limit) is the infimum");

  std::vector<Block2<Rational>> chain;
  for (long n = 1; n <= 6; ++n) {
    MatQ m = ones_q(2, 2);
    m(1, 1) += Rational(mpq_class(1, n));
    chain.push_back(b2(m));
    CHECK(schur_complement<Rational>(chain.back()).sigma == MatQ::Constant(1, 1, Rational(mpq_class(1, n))));
  }
  const InfimumReport<Rational> r = infimum_of_chain<Rational>(chain, b2(ones_q(2, 2)));
  CHECK(r.consistent);
  CHECK(r.limit_short_is_lower_bound);

  std::reverse(chain.begin(), chain.end());
  CHECK_THROWS_AS(infimum_of_chain<Rational>(chain, b2(ones_q(2, 2))), Error);

  Rng rng(47);
  const Chain<Rational> un = gen_unbounded_chain<Rational>(10, 2, 1, rng);
  const InfimumReport<Rational> u = infimum_of_chain<Rational>(un.elements, un.limit);
  CHECK(u.verdict == "not in L+");
}

TEST_CASE("shorted operator is PSD for PSD input") {
  Rng rng(49);
  for (int k = 0; k < 100; ++k) {
    const Block2<Rational> m = gen_block2_psd<Rational>(rng.uniform_int(1, 3), rng.uniform_int(1, 3), rng);
    const ShortedResult<Rational> r = schur_complement<Rational>(m);
    CHECK(is_psd<Rational>(r.sigma));
    CHECK(loewner_leq<Rational>(r.shorted.assembled(), m.assembled()));
  }
}
