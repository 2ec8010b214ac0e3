#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "permabench/core.hpp"
#include "permabench/stats.hpp"

namespace permabench {

struct LsmatData {
    std::vector<std::string> ids;
    DistanceMatrix matrix;
};

// Tab-separated labeled square matrix: header line of N sample IDs
// (optionally after an empty leading cell), then one line per row of
// ID + N numeric fields. Rows are aligned to header order before validation.
LsmatData read_lsmat(const std::filesystem::path& path);

std::string write_lsmat(std::span<const std::string> ids, const DistanceMatrix& mat);

struct GroupingReadStats {
    uint32_t ignored_rows = 0;  // metadata rows whose id is not in the matrix
};

// Sample metadata TSV with a header row. Every matrix id must appear exactly
// once under id_column; extra rows are ignored. Labels are taken from
// group_column in matrix id order.
Grouping read_grouping(const std::filesystem::path& path, const std::string& id_column,
                       const std::string& group_column,
                       std::span<const std::string> ids,
                       GroupingReadStats* stats = nullptr);

// Raw little-endian fp32 row-major dump, no header; n_dims supplied out of
// band. File length must be exactly n_dims^2 * 4 bytes.
DistanceMatrix read_binary_matrix(const std::filesystem::path& path, uint32_t n_dims);

void write_binary_matrix(const std::filesystem::path& path, const DistanceMatrix& mat);

enum class ResultFormat { json, tsv };

// Renders a result as a json object or a two-line TSV. Floating-point fields
// use 17 significant digits so parsing the text back is bit-exact.
std::string write_result(const PermanovaResult& result, ResultFormat format);

}  // namespace permabench
