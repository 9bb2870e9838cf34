// shorted: command line front end over the library.
//
// Exit codes: 0 ok, 2 positive-type / pair / order failure, 3 sigma not PSD,
// 64 parse error, 65 validation error, 70 internal error or failed suite.

#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "shorted/extremal.hpp"
#include "shorted/generators.hpp"
#include "shorted/io.hpp"
#include "shorted/verify.hpp"

using namespace shorted;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kPositiveType = 2;
constexpr int kSigmaIndefinite = 3;
constexpr int kParse = 64;
constexpr int kValidation = 65;
constexpr int kInternal = 70;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return kParse;
    case ErrorKind::Validation: return kValidation;
    case ErrorKind::Unsupported: return kValidation;
    case ErrorKind::NotPositivePair:
    case ErrorKind::OrderViolated:
    case ErrorKind::OutsideRange: return kPositiveType;
    case ErrorKind::SigmaIndefinite: return kSigmaIndefinite;
    case ErrorKind::Internal: return kInternal;
  }
  return kInternal;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SHORTED_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, std::string("SHORTED_SEED is not an integer: ") + env);
    }
  }
  return 1;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

struct Input {
  std::string file;
  std::string backend;  // empty: keep the document's backend
  std::optional<double> tol;

  ToleranceProfile profile() const {
    ToleranceProfile p;
    if (tol) {
      require(*tol > 0.0, ErrorKind::Validation, "--tol must be positive");
      p.rank_rel_threshold = *tol;
    }
    return p;
  }
};

// Loads the document and calls f(matrix, partition) with the requested backend.
template <class F>
int with_document(const Input& in, F&& f) {
  MatrixDocument doc = MatrixDocument::read_file(in.file);
  if (in.backend == "float" && doc.is_rational()) doc.matrix = to_float(std::get<MatQ>(doc.matrix));
  require(!(in.backend == "rational" && !doc.is_rational()), ErrorKind::Validation,
          "a float document cannot be read with --backend rational");
  return std::visit([&](const auto& m) { return f(m, doc.partition); }, doc.matrix);
}

template <class S>
Block2<S> read_block2(const Mat<S>& m, const std::vector<Index>& partition) {
  require(m.rows() == m.cols(), ErrorKind::Validation, "matrix must be square");
  require(partition.size() == 2, ErrorKind::Validation, "expected a partition [n_X, n_Y]");
  return Block2<S>::split(hermitian<S>(m), partition[0]);
}

// ---------------------------------------------------------------- commands

int cmd_schur(const Input& in) {
  return with_document(in, [&](const auto& m, const auto& partition) {
    using S = typename std::decay_t<decltype(m)>::Scalar;
    const ToleranceProfile tol = in.profile();
    const Block2<S> b = read_block2<S>(m, partition);
    const ShortedResult<S> r = schur_complement<S>(b, OmegaRoute::PseudoInverse, tol);
    emit({{"sigma", to_json<S>(r.sigma)},
          {"shorted", to_json<S>(r.shorted.assembled(), {b.nx(), b.ny()})},
          {"positive_type", r.positive_type}});
    return kOk;
  });
}

int cmd_albert(const Input& in) {
  return with_document(in, [&](const auto& m, const auto& partition) {
    using S = typename std::decay_t<decltype(m)>::Scalar;
    const AlbertVerdict<S> v = albert_classify<S>(read_block2<S>(m, partition), in.profile());
    std::cout << to_string(v.classification) << '\n';
    if (v.sigma) std::cout << to_json<S>(*v.sigma).dump() << '\n';
    if (!v.diagnostic.empty()) std::cerr << v.diagnostic << '\n';
    switch (v.classification) {
      case AlbertClass::PSD: return kOk;
      case AlbertClass::NotPositiveType: return kPositiveType;
      case AlbertClass::SigmaNotPsd: return kSigmaIndefinite;
    }
    return kInternal;
  });
}

int cmd_extremal(const Input& in) {
  return with_document(in, [&](const auto& m, const auto& partition) {
    using S = typename std::decay_t<decltype(m)>::Scalar;
    const Block2<S> b = read_block2<S>(m, partition);
    const ExtremalityReport<S> r = extremality_criteria<S>(b, in.profile());
    emit({{"extremal", r.is_extremal},
          {"sigma_zero", r.sigma_zero},
          {"variational_vanishes", r.variational_vanishes},
          {"rx_spans_ran_r", r.rx_spans_ran_r},
          {"range_misses_y", r.range_misses_y},
          {"criteria_agree", r.criteria_agree},
          {"doubly_extremal", r.is_doubly_extremal},
          {"h1_dim", r.h1_dim},
          {"double_omega", to_json<S>(r.double_omega)}});
    return kOk;
  });
}

int cmd_pair_check(const Input& in) {
  return with_document(in, [&](const auto& m, const auto& partition) {
    using S = typename std::decay_t<decltype(m)>::Scalar;
    const ToleranceProfile tol = in.profile();
    const Block2<S> b = read_block2<S>(m, partition);
    const PairDiagnostic<S> d = check_positive_pair<S>(b.A, b.B, tol);
    json out = {{"positive_pair", d.positive},
                {"kernel_condition", d.kernel_condition},
                {"sup_finite", d.sup_finite},
                {"message", d.message}};
    if (d.positive) {
      out["omega"] = to_json<S>(omega_pinv<S>(b.A, b.B, tol));
      out["doubly_extremal"] = is_doubly_extremal<S>(b.A, b.B, tol);
    }
    emit(out);
    if (!d.positive) std::cerr << d.message << '\n';
    return d.positive ? kOk : kPositiveType;
  });
}

int cmd_quotient(const Input& in) {
  return with_document(in, [&](const auto& m, const auto& partition) {
    using S = typename std::decay_t<decltype(m)>::Scalar;
    require(m.rows() == m.cols(), ErrorKind::Validation, "matrix must be square");
    require(partition.size() == 3, ErrorKind::Validation, "expected a partition [n_X, n_Y, n_Z]");
    const Block3<S> d = Block3<S>::split(hermitian<S>(m), partition[0], partition[1]);
    const QuotientReport<S> r = quotient_formula_check<S>(d, in.profile());
    emit({{"corner_matches", r.corner_matches},
          {"identity_holds", r.identity_holds},
          {"d_over_a", to_json<S>(r.d_over_a)},
          {"m_over_a", to_json<S>(r.a_over_a)},
          {"lhs", to_json<S>(r.lhs)},
          {"rhs", to_json<S>(r.rhs)}});
    return r.corner_matches && r.identity_holds ? kOk : kInternal;
  });
}

int cmd_douglas(const std::string& a_file, const std::string& d_file, double alpha, std::optional<double> tol_arg) {
  Input in{a_file, "float", tol_arg};
  const ToleranceProfile tol = in.profile();
  auto load = [](const std::string& file) {
    MatrixDocument doc = MatrixDocument::read_file(file);
    MatC m = doc.is_rational() ? to_float(std::get<MatQ>(doc.matrix)) : std::get<MatC>(doc.matrix);
    return hermitian<Complex>(m);
  };
  const MatC a = load(a_file);
  const MatC d = load(d_file);
  require(a.rows() == a.cols() && d.rows() == d.cols() && a.rows() == d.rows(), ErrorKind::Validation,
          "A and D must be square of the same size");
  const DouglasFactorization<Complex> f = douglas_factorization<Complex>(a, d, alpha, tol);
  emit({{"W", to_json<Complex>(f.W)},
        {"alpha", f.alpha},
        {"norm_W", f.op_norm_W},
        {"R_A", to_json<Complex>(f.RA)},
        {"R_D", to_json<Complex>(f.RD)}});
  return kOk;
}

struct GenOptions {
  std::string kind = "block2-psd";
  std::optional<std::uint64_t> seed;
  std::vector<Index> dims;
  std::string backend = "rational";
  Index length = 10;
};

template <class S>
json generate(const GenOptions& o, Rng& rng) {
  auto need = [&](std::size_t lo, std::size_t hi) {
    require(o.dims.size() >= lo && o.dims.size() <= hi, ErrorKind::Validation,
            "--dims needs " + std::to_string(lo) + (lo == hi ? "" : "-" + std::to_string(hi)) + " values for " +
                o.kind);
    for (Index d : o.dims) require(d >= 0 && d <= 64, ErrorKind::Validation, "--dims entries must lie in [0, 64]");
  };
  const auto& d = o.dims;
  if (o.kind == "psd") {
    need(1, 2);
    return to_json<S>(gen_psd<S>(d[0], d.size() == 2 ? d[1] : d[0], rng));
  }
  if (o.kind == "positive-pair") {
    need(2, 3);
    const GeneratedPair<S> p = gen_positive_pair<S>(d[0], d[1], d.size() == 3 ? d[2] : d[0], rng);
    return {{"A", to_json<S>(p.A)}, {"B", to_json<S>(p.B)}};
  }
  if (o.kind == "block2-psd") {
    need(2, 2);
    return to_json<S>(gen_block2_psd<S>(d[0], d[1], rng).assembled(), {d[0], d[1]});
  }
  if (o.kind == "block2-hermitian") {
    need(2, 2);
    return to_json<S>(gen_block2_hermitian<S>(d[0], d[1], rng).assembled(), {d[0], d[1]});
  }
  if (o.kind == "block3-psd") {
    need(3, 3);
    return to_json<S>(gen_block3_psd<S>(d[0], d[1], d[2], rng).assembled(), {d[0], d[1], d[2]});
  }
  if (o.kind == "extremal") {
    need(2, 2);
    return to_json<S>(gen_extremal<S>(d[0], d[1], rng).assembled(), {d[0], d[1]});
  }
  if (o.kind == "chain") {
    need(2, 2);
    require(o.length >= 1, ErrorKind::Validation, "--length must be positive");
    const Chain<S> c = gen_decreasing_chain<S>(o.length, d[0], d[1], rng);
    json elements = json::array();
    for (const auto& e : c.elements) elements.push_back(to_json<S>(e.assembled(), {d[0], d[1]}));
    return {{"elements", elements}, {"limit", to_json<S>(c.limit.assembled(), {d[0], d[1]})}};
  }
  throw Error(ErrorKind::Validation, "unknown --kind " + o.kind);
}

int cmd_gen(const GenOptions& o) {
  Rng rng(o.seed ? *o.seed : default_seed());
  emit(o.backend == "float" ? generate<Complex>(o, rng) : generate<Rational>(o, rng));
  return kOk;
}

int cmd_verify(const std::string& suite, int count, std::optional<std::uint64_t> seed_arg) {
  const std::uint64_t seed = seed_arg ? *seed_arg : default_seed();
  std::vector<std::string> names;
  if (suite == "all") {
    names = verify::suite_names();
  } else {
    names.push_back(suite);
  }
  bool ok = true;
  for (const std::string& name : names) {
    const verify::SuiteResult r = verify::run_suite(name, count, seed);
    if (names.size() > 1) std::cout << r.name << ": ";
    std::cout << r.passed << "/" << r.total << " pass\n";
    for (const std::string& f : r.failures) std::cerr << "  " << r.name << " " << f << '\n';
    ok = ok && r.ok();
  }
  return ok ? kOk : kInternal;
}

void add_input(CLI::App* cmd, Input& in) {
  cmd->add_option("file", in.file, "JSON matrix document")->required();
  cmd->add_option("--backend", in.backend, "float or rational (default: the document's)")
      ->check(CLI::IsMember({"float", "rational"}));
  cmd->add_option("--tol", in.tol, "relative rank threshold (float backend)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Schur complements and shorted operators of Hermitian block matrices"};
  app.require_subcommand(1);

  Input schur_in, albert_in, extremal_in, pair_in, quotient_in;
  auto* schur = app.add_subcommand("schur", "sigma = D - B* A^+ B and the shorted operator");
  add_input(schur, schur_in);
  auto* albert = app.add_subcommand("albert", "PSD / NOT_POSITIVE_TYPE / SIGMA_NOT_PSD");
  add_input(albert, albert_in);
  auto* extremal = app.add_subcommand("extremal", "extremality criteria of a PSD block matrix");
  add_input(extremal, extremal_in);
  auto* pair = app.add_subcommand("pair-check", "is (A, B) a positive pair; omega(A, B)");
  add_input(pair, pair_in);
  auto* quotient = app.add_subcommand("quotient", "nested Schur complements of a 3-block matrix");
  add_input(quotient, quotient_in);

  std::string a_file, d_file;
  double alpha = 1.0;
  std::optional<double> douglas_tol;
  auto* douglas = app.add_subcommand("douglas", "W with R_A* = R_D* W, |W| <= alpha");
  douglas->add_option("--a", a_file, "document for A")->required();
  douglas->add_option("--d", d_file, "document for D")->required();
  douglas->add_option("--alpha", alpha, "bound with A <= alpha^2 D")->required()->check(CLI::NonNegativeNumber);
  douglas->add_option("--tol", douglas_tol, "relative rank threshold");

  GenOptions gen_opts;
  auto* gen = app.add_subcommand("gen", "generate a seeded instance");
  gen->add_option("--kind", gen_opts.kind, "psd, positive-pair, block2-psd, block2-hermitian, block3-psd, extremal, chain")
      ->check(CLI::IsMember({"psd", "positive-pair", "block2-psd", "block2-hermitian", "block3-psd", "extremal", "chain"}));
  gen->add_option("--seed", gen_opts.seed, "stream seed (default $SHORTED_SEED or 1)");
  gen->add_option("--dims", gen_opts.dims, "block sizes, e.g. 2,2")->delimiter(',')->required();
  gen->add_option("--backend", gen_opts.backend, "float or rational")->check(CLI::IsMember({"float", "rational"}));
  gen->add_option("--length", gen_opts.length, "chain length");

  std::string suite;
  int count = 100;
  std::optional<std::uint64_t> verify_seed;
  auto* verify_cmd = app.add_subcommand("verify", "run a property suite");
  std::vector<std::string> suites = verify::suite_names();
  suites.push_back("all");
  verify_cmd->add_option("--suite", suite, "suite name or all")->required()->check(CLI::IsMember(suites));
  verify_cmd->add_option("--count", count, "instances per family")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify_seed, "stream seed (default $SHORTED_SEED or 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*schur) return cmd_schur(schur_in);
    if (*albert) return cmd_albert(albert_in);
    if (*extremal) return cmd_extremal(extremal_in);
    if (*pair) return cmd_pair_check(pair_in);
    if (*quotient) return cmd_quotient(quotient_in);
    if (*douglas) return cmd_douglas(a_file, d_file, alpha, douglas_tol);
    if (*gen) return cmd_gen(gen_opts);
    if (*verify_cmd) return cmd_verify(suite, count, verify_seed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
