#include "rankspan/json_io.hpp"

#include <fstream>
#include <sstream>

namespace rankspan {

namespace {

std::size_t get_positive(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw ParseError(std::string("missing integer field '") + key + "'");
  }
  long long v = j[key].get<long long>();
  if (v <= 0) throw ParseError(std::string("field '") + key + "' must be positive");
  return std::size_t(v);
}

Fq get_field(const json& j) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  std::size_t q = get_positive(j, "q");
  try {
    return Fq(unsigned(q));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

json entries_to_json(const FqMat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Elem e : m.row(i)) r.push_back(int(e));
    rows.push_back(std::move(r));
  }
  return rows;
}

FqMat entries_from_json(Fq field, std::size_t rows, std::size_t cols, const json& entries) {
  if (!entries.is_array() || entries.size() != rows) {
    throw ParseError("entries must be an array of " + std::to_string(rows) + " rows");
  }
  std::vector<Elem> flat;
  flat.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& r = entries[i];
    if (!r.is_array() || r.size() != cols) {
      throw ParseError("row " + std::to_string(i) + " must hold " + std::to_string(cols) + " integers");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (!r[j].is_number_integer()) throw ParseError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not an integer");
      long long v = r[j].get<long long>();
      if (v < 0 || v >= (long long)field.q()) {
        throw ParseError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") outside [0," +
                         std::to_string(field.q()) + ")");
      }
      flat.push_back(Elem(v));
    }
  }
  return FqMat(field, rows, cols, std::move(flat));
}

json matrix_to_json(const FqMat& m) {
  return json{{"q", m.q()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries_to_json(m)}};
}

FqMat matrix_from_json(const json& j) {
  Fq f = get_field(j);
  std::size_t n = get_positive(j, "rows"), p = get_positive(j, "cols");
  if (!j.contains("entries")) throw ParseError("missing field 'entries'");
  return entries_from_json(f, n, p, j["entries"]);
}

json subspace_to_json(const MatSubspace& v) {
  json basis = json::array();
  for (const auto& b : v.basis()) basis.push_back(entries_to_json(b));
  return json{{"q", v.q()}, {"rows", v.rows()}, {"cols", v.cols()}, {"basis", std::move(basis)}};
}

MatSubspace subspace_from_json(const json& j) {
  Fq f = get_field(j);
  std::size_t n = get_positive(j, "rows"), p = get_positive(j, "cols");
  if (!j.contains("basis") || !j["basis"].is_array()) throw ParseError("missing array field 'basis'");
  std::vector<FqMat> mats;
  for (std::size_t k = 0; k < j["basis"].size(); ++k) {
    try {
      mats.push_back(entries_from_json(f, n, p, j["basis"][k]));
    } catch (const ParseError& e) {
      throw ParseError("basis[" + std::to_string(k) + "]: " + e.what());
    }
  }
  return MatSubspace::from_basis(f, n, p, mats);
}

json affine_to_json(const AffineMatSubspace& a) {
  json j = subspace_to_json(a.direction());
  j["point"] = entries_to_json(a.point());
  return j;
}

AffineMatSubspace affine_from_json(const json& j) {
  MatSubspace dir = subspace_from_json(j);
  if (!j.contains("point")) throw ParseError("missing field 'point'");
  FqMat point = [&] {
    try {
      return entries_from_json(dir.field(), dir.rows(), dir.cols(), j["point"]);
    } catch (const ParseError& e) {
      throw ParseError(std::string("point: ") + e.what());
    }
  }();
  return AffineMatSubspace(point, dir);
}

bool is_affine_document(const json& j) { return j.is_object() && j.contains("point"); }

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
}

json load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_document(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_document(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace rankspan
