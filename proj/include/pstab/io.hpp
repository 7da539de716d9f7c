#pragma once

#include <string>

#include "pstab/labels.hpp"
#include "pstab/matrix.hpp"

namespace pstab {

enum class MatrixFormat { autodetect, csv, binary };

MatrixFormat matrix_format_from_name(const std::string& name);
const char* matrix_format_name(MatrixFormat format);

// CSV: comma-separated, '.' decimal, optional first line "# rows cols".
// Binary: magic "PSTB", u32 version=1, u64 rows, u64 cols, then rows*cols
// little-endian f64 values row-major.
Matrix load_matrix(const std::string& path,
                   MatrixFormat format = MatrixFormat::autodetect);
void write_matrix(const Matrix& m, const std::string& path, MatrixFormat format);

// Single-column integer file, one class id per row. Gapped ids are remapped
// to a contiguous range.
Labels load_labels(const std::string& path);
void write_labels(const Labels& labels, const std::string& path);

}  // namespace pstab
