#include "polycap/io.hpp"

#include <fstream>
#include <sstream>

#include "polycap/errors.hpp"

namespace polycap::io {
namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& message) {
  throw InputError("field '" + path + "': " + message);
}

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // locate the byte offset as line:column
    std::size_t line = 1, column = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                     e.what());
  }
}

const Json& require(const Json& object, const std::string& key, const std::string& path) {
  if (!object.is_object()) field_error(path, "expected an object");
  const auto it = object.find(key);
  if (it == object.end()) field_error(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

Rational parse_scalar(const Json& value, const std::string& path) {
  try {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return Rational(mpz_class(value.dump()));
    if (value.is_number_float()) return to_rational(value.get<double>());
  } catch (const InputError& e) {
    field_error(path, e.what());
  }
  field_error(path, "expected a number or a numeric string");
}

int parse_int(const Json& value, const std::string& path) {
  if (!value.is_number_integer()) field_error(path, "expected an integer");
  return value.get<int>();
}

RationalMatrix parse_matrix_value(const Json& value, const std::string& path) {
  if (!value.is_array() || value.empty()) field_error(path, "expected a non-empty array of rows");
  const std::size_t rows = value.size();
  std::size_t cols = 0;
  RationalMatrix m;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    const Json& row = value[i];
    if (!row.is_array()) field_error(row_path, "expected an array");
    if (i == 0) {
      cols = row.size();
      m = RationalMatrix(rows, cols, Rational(0));
    } else if (row.size() != cols) {
      field_error(row_path, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = parse_scalar(row[j], row_path + "[" + std::to_string(j) + "]");
  }
  return m;
}

std::string kind_of(const Json& doc) {
  const Json& kind = require(doc, "kind", "");
  if (!kind.is_string()) field_error("kind", "expected a string");
  return kind.get<std::string>();
}

Polynomial build(const Json& doc, ScalarMode mode) {
  const std::string kind = kind_of(doc);
  if (kind == "sparse") {
    const int n = parse_int(require(doc, "n", ""), "n");
    if (n < 1) field_error("n", "must be positive");
    const Json& terms = require(doc, "terms", "");
    if (!terms.is_array()) field_error("terms", "expected an array");
    std::vector<std::pair<Exponent, Rational>> list;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const std::string path = "terms[" + std::to_string(t) + "]";
      const Json& exp = require(terms[t], "exp", path);
      if (!exp.is_array() || static_cast<int>(exp.size()) != n) {
        field_error(path + ".exp", "expected an array of " + std::to_string(n) + " integers");
      }
      Exponent e;
      for (std::size_t i = 0; i < exp.size(); ++i) {
        e.push_back(parse_int(exp[i], path + ".exp[" + std::to_string(i) + "]"));
      }
      list.emplace_back(std::move(e), parse_scalar(require(terms[t], "coef", path), path + ".coef"));
    }
    return SparsePolynomial::from_terms(n, list, mode);
  }
  if (kind == "product" || kind == "matrix") {
    return ProductFormPolynomial(parse_matrix_value(require(doc, "matrix", ""), "matrix"), mode);
  }
  if (kind == "determinantal") {
    const Json& matrices = require(doc, "matrices", "");
    if (!matrices.is_array() || matrices.empty()) field_error("matrices", "expected a non-empty array");
    std::vector<RationalMatrix> list;
    for (std::size_t i = 0; i < matrices.size(); ++i) {
      list.push_back(parse_matrix_value(matrices[i], "matrices[" + std::to_string(i) + "]"));
    }
    return DeterminantalPolynomial(std::move(list), mode);
  }
  field_error("kind", "unknown kind '" + kind + "' (expected sparse, product, matrix or determinantal)");
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Polynomial parse_polynomial(std::string_view text, ScalarMode mode) { return build(parse_document(text), mode); }

Polynomial read_polynomial(const std::string& path, ScalarMode mode) { return parse_polynomial(read_file(path), mode); }

RationalMatrix parse_matrix(std::string_view text) {
  const Json doc = parse_document(text);
  const std::string kind = kind_of(doc);
  if (kind != "product" && kind != "matrix") field_error("kind", "expected a product or matrix document");
  RationalMatrix m = parse_matrix_value(require(doc, "matrix", ""), "matrix");
  if (!m.square()) field_error("matrix", "expected a square matrix");
  return m;
}

RationalMatrix read_matrix(const std::string& path) { return parse_matrix(read_file(path)); }

Json to_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const RealMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Polynomial& p) {
  Json doc;
  if (const auto* sparse = std::get_if<SparsePolynomial>(&p)) {
    doc["kind"] = "sparse";
    doc["n"] = sparse->n_vars();
    Json terms = Json::array();
    for (const auto& [e, c] : sparse->terms()) terms.push_back({{"exp", e}, {"coef", to_string(c)}});
    doc["terms"] = std::move(terms);
  } else if (const auto* product = std::get_if<ProductFormPolynomial>(&p)) {
    doc["kind"] = "product";
    doc["matrix"] = to_json(product->matrix());
  } else {
    const auto& det = std::get<DeterminantalPolynomial>(p);
    doc["kind"] = "determinantal";
    Json list = Json::array();
    for (const auto& m : det.matrices()) list.push_back(to_json(m));
    doc["matrices"] = std::move(list);
  }
  return doc;
}

}  // namespace polycap::io
