#include "shorted/io.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

namespace shorted {

namespace {

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorKind::Parse, "malformed document: " + why); }

Complex float_entry(const nlohmann::json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
    malformed("float entries must be [re, im] pairs");
  return {e[0].get<double>(), e[1].get<double>()};
}

Rational rational_entry(const nlohmann::json& e) {
  if (!e.is_string()) malformed("rational entries must be strings");
  return Rational::parse(e.get<std::string>());
}

template <class S, class F>
Mat<S> read_entries(const nlohmann::json& entries, Index rows, Index cols, F&& convert) {
  Mat<S> m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = convert(entries[static_cast<std::size_t>(i * cols + j)]);
  return m;
}

Index count_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
    malformed(std::string("\"") + key + "\" must be a nonnegative integer");
  return static_cast<Index>(j[key].get<long long>());
}

}  // namespace

Index MatrixDocument::rows() const {
  return std::visit([](const auto& m) { return m.rows(); }, matrix);
}

Index MatrixDocument::cols() const {
  return std::visit([](const auto& m) { return m.cols(); }, matrix);
}

MatrixDocument MatrixDocument::from_json(const nlohmann::json& j) {
  if (!j.is_object()) malformed("top level must be an object");
  if (!j.contains("backend") || !j["backend"].is_string()) malformed("missing \"backend\"");
  const std::string backend = j["backend"].get<std::string>();
  const Index rows = count_field(j, "rows");
  const Index cols = count_field(j, "cols");
  if (!j.contains("entries") || !j["entries"].is_array()) malformed("missing \"entries\" array");
  const auto& entries = j["entries"];
  if (static_cast<Index>(entries.size()) != rows * cols)
    malformed("entry count " + std::to_string(entries.size()) + " != rows*cols");

  MatrixDocument doc;
  if (backend == "float") {
    doc.matrix = read_entries<Complex>(entries, rows, cols, float_entry);
  } else if (backend == "rational") {
    doc.matrix = read_entries<Rational>(entries, rows, cols, rational_entry);
  } else {
    malformed("backend must be \"float\" or \"rational\"");
  }

  if (j.contains("partition")) {
    const auto& p = j["partition"];
    if (!p.is_array() || p.size() < 2 || p.size() > 3) malformed("partition must have 2 or 3 parts");
    for (const auto& part : p) {
      if (!part.is_number_integer() || part.get<long long>() < 0) malformed("partition parts must be nonnegative");
      doc.partition.push_back(static_cast<Index>(part.get<long long>()));
    }
    if (std::accumulate(doc.partition.begin(), doc.partition.end(), Index{0}) != rows)
      malformed("partition does not sum to rows");
  }
  return doc;
}

MatrixDocument MatrixDocument::parse(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
  }
  return from_json(j);
}

MatrixDocument MatrixDocument::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

nlohmann::json MatrixDocument::to_json() const {
  nlohmann::json j;
  j["backend"] = is_rational() ? "rational" : "float";
  j["rows"] = rows();
  j["cols"] = cols();
  nlohmann::json entries = nlohmann::json::array();
  std::visit(
      [&entries](const auto& m) {
        using S = typename std::decay_t<decltype(m)>::Scalar;
        for (Index i = 0; i < m.rows(); ++i)
          for (Index j = 0; j < m.cols(); ++j) {
            if constexpr (is_exact_v<S>) {
              entries.push_back(m(i, j).to_string());
            } else {
              entries.push_back({m(i, j).real(), m(i, j).imag()});
            }
          }
      },
      matrix);
  j["entries"] = std::move(entries);
  if (!partition.empty()) j["partition"] = partition;
  return j;
}

}  // namespace shorted
