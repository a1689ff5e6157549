#pragma once

#include <filesystem>
#include <string>

#include "rankspan/affine.hpp"
#include "rankspan/matrix.hpp"
#include "rankspan/subspace.hpp"
#include "rankspan/verdict.hpp"

namespace rankspan {

/// Thrown for malformed documents; the message carries line/column context.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// [[row0...], [row1...], ...]
json entries_to_json(const FqMat& m);
FqMat entries_from_json(Fq field, std::size_t rows, std::size_t cols, const json& entries);

/// {"q", "rows", "cols", "entries"}
json matrix_to_json(const FqMat& m);
FqMat matrix_from_json(const json& j);

/// {"q", "rows", "cols", "basis": [entries...]}; canonicalized on load.
json subspace_to_json(const MatSubspace& v);
MatSubspace subspace_from_json(const json& j);

/// Subspace document plus "point".
json affine_to_json(const AffineMatSubspace& a);
AffineMatSubspace affine_from_json(const json& j);
bool is_affine_document(const json& j);

/// Parses text, reporting syntax errors as "line L, column C: ...".
json parse_document(const std::string& text);
json load_document(const std::filesystem::path& path);
void save_document(const std::filesystem::path& path, const json& j);

}  // namespace rankspan
