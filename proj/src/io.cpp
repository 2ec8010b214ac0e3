#include "permabench/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <unordered_map>

namespace permabench {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    size_t start = 0;
    while (true) {
        const size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

// getline plus CRLF tolerance.
bool next_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

float parse_float(std::string_view field, const std::string& context) {
    float value = 0.0f;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw Error(errc::malformed,
                    context + ": cannot parse '" + std::string(field) + "' as a number");
    return value;
}

std::string fmt_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// json has no literal for non-finite numbers; fall back to a string.
std::string json_number(double v) {
    if (std::isfinite(v)) return fmt_g17(v);
    if (std::isnan(v)) return "\"nan\"";
    return v > 0 ? "\"inf\"" : "\"-inf\"";
}

}  // namespace

LsmatData read_lsmat(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(errc::io_error, "cannot open " + path.string());

    std::string line;
    if (!next_line(in, line))
        throw Error(errc::malformed, path.string() + ": empty file");

    auto header = split_tabs(line);
    if (!header.empty() && header.front().empty())
        header.erase(header.begin());
    if (header.empty())
        throw Error(errc::malformed, path.string() + ": header has no sample ids");

    const size_t n = header.size();
    std::vector<std::string> ids(header.begin(), header.end());
    std::unordered_map<std::string_view, uint32_t> id_index;
    id_index.reserve(n);
    for (uint32_t i = 0; i < n; ++i) {
        if (!id_index.try_emplace(ids[i], i).second)
            throw Error(errc::duplicate_id, path.string() + ": duplicate id '" + ids[i] +
                                                "' in header");
    }

    std::vector<float> data(n * n, 0.0f);
    std::vector<bool> seen(n, false);
    size_t rows_read = 0;
    while (next_line(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_tabs(line);
        const std::string row_id(fields[0]);
        const auto it = id_index.find(std::string_view(row_id));
        if (it == id_index.end())
            throw Error(errc::id_mismatch,
                        path.string() + ": row id '" + row_id + "' not in header");
        const uint32_t row = it->second;
        if (seen[row])
            throw Error(errc::duplicate_id,
                        path.string() + ": duplicate row '" + row_id + "'");
        seen[row] = true;
        if (fields.size() != n + 1)
            throw Error(errc::malformed, path.string() + ": row '" + row_id + "' has " +
                                             std::to_string(fields.size() - 1) +
                                             " fields, expected " + std::to_string(n));
        for (size_t col = 0; col < n; ++col)
            data[row * n + col] = parse_float(fields[col + 1], path.string());
        ++rows_read;
    }
    if (rows_read != n)
        throw Error(errc::malformed, path.string() + ": " + std::to_string(rows_read) +
                                         " data rows for " + std::to_string(n) + " ids");

    LsmatData out;
    out.ids = std::move(ids);
    try {
        out.matrix = validate_matrix(uint32_t(n), std::move(data));
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
    return out;
}

std::string write_lsmat(std::span<const std::string> ids, const DistanceMatrix& mat) {
    std::string text;
    const uint32_t n = mat.n_dims;
    for (uint32_t i = 0; i < n; ++i) {
        text += '\t';
        text += ids[i];
    }
    text += '\n';
    char buf[48];
    for (uint32_t i = 0; i < n; ++i) {
        text += ids[i];
        const float* row = mat.row(i);
        for (uint32_t j = 0; j < n; ++j) {
            std::snprintf(buf, sizeof buf, "\t%.9g", double(row[j]));
            text += buf;
        }
        text += '\n';
    }
    return text;
}

Grouping read_grouping(const std::filesystem::path& path, const std::string& id_column,
                       const std::string& group_column,
                       std::span<const std::string> ids, GroupingReadStats* stats) {
    std::ifstream in(path);
    if (!in)
        throw Error(errc::io_error, "cannot open " + path.string());

    std::string line;
    if (!next_line(in, line))
        throw Error(errc::malformed, path.string() + ": empty file");
    const auto header = split_tabs(line);

    size_t id_idx = header.size(), group_idx = header.size();
    for (size_t i = 0; i < header.size(); ++i) {
        if (header[i] == id_column) id_idx = i;
        if (header[i] == group_column) group_idx = i;
    }
    if (id_idx == header.size())
        throw Error(errc::missing_column,
                    path.string() + ": no column '" + id_column + "'");
    if (group_idx == header.size())
        throw Error(errc::missing_column,
                    path.string() + ": no column '" + group_column + "'");

    std::unordered_map<std::string_view, uint32_t> wanted;
    wanted.reserve(ids.size());
    for (uint32_t i = 0; i < ids.size(); ++i) wanted.emplace(ids[i], i);

    std::vector<std::string> groups(ids.size());
    std::vector<bool> found(ids.size(), false);
    uint32_t ignored = 0;
    while (next_line(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_tabs(line);
        if (fields.size() <= std::max(id_idx, group_idx))
            throw Error(errc::malformed,
                        path.string() + ": row with too few columns: '" + line + "'");
        const auto it = wanted.find(fields[id_idx]);
        if (it == wanted.end()) {
            ++ignored;
            continue;
        }
        if (found[it->second])
            throw Error(errc::duplicate_sample, path.string() + ": sample '" +
                                                    std::string(fields[id_idx]) +
                                                    "' listed twice");
        found[it->second] = true;
        groups[it->second] = std::string(fields[group_idx]);
    }
    for (uint32_t i = 0; i < ids.size(); ++i)
        if (!found[i])
            throw Error(errc::missing_sample,
                        path.string() + ": no metadata row for sample '" + ids[i] + "'");
    if (stats) stats->ignored_rows = ignored;
    return build_grouping(std::span<const std::string>(groups));
}

DistanceMatrix read_binary_matrix(const std::filesystem::path& path, uint32_t n_dims) {
    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    if (ec)
        throw Error(errc::io_error, "cannot stat " + path.string());
    const uint64_t expected = uint64_t(n_dims) * n_dims * sizeof(float);
    if (size != expected)
        throw Error(errc::size_mismatch, path.string() + " is " + std::to_string(size) +
                                             " bytes, expected " +
                                             std::to_string(expected) + " for n_dims=" +
                                             std::to_string(n_dims));

    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(errc::io_error, "cannot open " + path.string());
    std::vector<float> data(uint64_t(n_dims) * n_dims);
    in.read(reinterpret_cast<char*>(data.data()), std::streamsize(expected));
    if (!in)
        throw Error(errc::io_error, "short read on " + path.string());

    if constexpr (std::endian::native != std::endian::little) {
        for (auto& v : data) {
            uint32_t bits;
            std::memcpy(&bits, &v, 4);
            bits = __builtin_bswap32(bits);
            std::memcpy(&v, &bits, 4);
        }
    }
    try {
        return validate_matrix(n_dims, std::move(data));
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

void write_binary_matrix(const std::filesystem::path& path, const DistanceMatrix& mat) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(errc::io_error, "cannot open " + path.string() + " for writing");
    if constexpr (std::endian::native == std::endian::little) {
        out.write(reinterpret_cast<const char*>(mat.data.data()),
                  std::streamsize(mat.data.size() * sizeof(float)));
    } else {
        for (float v : mat.data) {
            uint32_t bits;
            std::memcpy(&bits, &v, 4);
            bits = __builtin_bswap32(bits);
            out.write(reinterpret_cast<const char*>(&bits), 4);
        }
    }
    if (!out)
        throw Error(errc::io_error, "short write on " + path.string());
}

std::string write_result(const PermanovaResult& r, ResultFormat format) {
    if (format == ResultFormat::json) {
        std::string text = "{\n";
        text += "  \"method\": \"PERMANOVA\",\n";
        text += "  \"test_statistic_name\": \"pseudo-F\",\n";
        text += "  \"sample_size\": " + std::to_string(r.n_dims) + ",\n";
        text += "  \"number_of_groups\": " + std::to_string(r.n_groups) + ",\n";
        text += "  \"test_statistic\": " + json_number(r.f_observed) + ",\n";
        text += "  \"p_value\": " + json_number(r.p_value) + ",\n";
        text += "  \"number_of_permutations\": " + std::to_string(r.n_perms) + "\n";
        text += "}";
        return text;
    }
    std::string text =
        "method\tsample_size\tnumber_of_groups\ttest_statistic\tp_value\t"
        "number_of_permutations\n";
    text += "PERMANOVA\t" + std::to_string(r.n_dims) + "\t" + std::to_string(r.n_groups) +
            "\t" + fmt_g17(r.f_observed) + "\t" + fmt_g17(r.p_value) + "\t" +
            std::to_string(r.n_perms);
    return text;
}

}  // namespace permabench
