#pragma once

// JSON matrix documents:
//   {"backend": "float" | "rational", "rows": r, "cols": c,
//    "entries": [...row-major...], "partition": [n_X, n_Y(, n_Z)]?}
// Float entries are [re, im] pairs; rational entries are strings "p/q" or
// "p/q+r/si".

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "shorted/core.hpp"

namespace shorted {

struct MatrixDocument {
  std::variant<MatC, MatQ> matrix;
  std::vector<Index> partition;  // empty when absent

  bool is_rational() const { return std::holds_alternative<MatQ>(matrix); }
  Index rows() const;
  Index cols() const;

  /// Throws Error(Parse) on malformed documents.
  static MatrixDocument from_json(const nlohmann::json& j);
  static MatrixDocument parse(const std::string& text);
  static MatrixDocument read_file(const std::string& path);

  nlohmann::json to_json() const;
  /// Compact, deterministic text form.
  std::string dump() const { return to_json().dump(); }
};

template <class S>
MatrixDocument make_document(const Mat<S>& m, std::vector<Index> partition = {}) {
  return {m, std::move(partition)};
}

template <class S>
nlohmann::json to_json(const Mat<S>& m, std::vector<Index> partition = {}) {
  return make_document<S>(m, std::move(partition)).to_json();
}

}  // namespace shorted
