#pragma once

#include <filesystem>
#include <string>

#include "rieszdec/matrix.hpp"

namespace rieszdec::io {

enum class MatrixFormat { json, matrix_market };

struct LoadedMatrix {
    Matrix matrix;
    MatrixFormat format = MatrixFormat::json;
    std::string digest;  // fnv1a-64 of the raw file bytes, 16 hex chars
};

/// Reads either format; Matrix Market files are recognized by the %% banner.
LoadedMatrix read_matrix_file(const std::filesystem::path& path);

/// {"rows": r, "cols": c, "entries": [[re, im], ...]} row-major.
Matrix parse_matrix_json(const std::string& text);

/// "%%MatrixMarket matrix array complex general", column-major body.
Matrix parse_matrix_market(const std::string& text);

/// Canonical JSON file form (deterministic: sorted keys, 17 significant digits).
std::string matrix_to_json_text(const Matrix& a);
void write_matrix_file(const std::filesystem::path& path, const Matrix& a);

std::string fnv1a64_hex(const std::string& bytes);

std::string read_file(const std::filesystem::path& path);  // ParseError on failure
void write_file(const std::filesystem::path& path, const std::string& text);

} // namespace rieszdec::io
