#pragma once

#include <complex>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ridgelab {

/// Shortest-safe decimal form: 17 significant digits, '.' radix.
std::string format_number(double v);

/// Builds a CSV document in memory; rows are LF terminated.
class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& header);

    CsvWriter& field(double v);
    CsvWriter& field(std::string_view text);
    CsvWriter& field(long long v);
    void end_row();

    const std::string& text() const { return text_; }

private:
    std::string text_;
    bool row_started_ = false;
};

/// A uniformly sampled series read from CSV.
struct Series {
    std::vector<double> values;
    std::vector<double> times;  // empty for a single value column
    double dt = 1.0;
};

/// Accepts one value column or (time, value) columns, with an optional
/// non-numeric header row. Times must be increasing with uniform spacing
/// to 1e-6 relative. Throws IoError when the file cannot be read and
/// FormatError for malformed content.
Series read_series(const std::filesystem::path& path, double default_dt = 1.0);
Series parse_series(std::string_view text, double default_dt = 1.0);

/// Interleaved little-endian float64 (re, im) pairs.
std::string complex_to_bytes(const std::vector<std::complex<double>>& values);

/// A set of output files written only once all of them are ready. Each file
/// is written to a temporary name and renamed; on failure the files written
/// so far are removed. Throws IoError.
class OutputSet {
public:
    void add(std::filesystem::path path, std::string content);
    void commit() const;

private:
    std::vector<std::pair<std::filesystem::path, std::string>> files_;
};

}  // namespace ridgelab
