#include "ridgelab/io.hpp"

#include <bit>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ridgelab/error.hpp"

namespace ridgelab {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::vector<std::string>& header) {
    for (const auto& h : header) {
        field(std::string_view(h));
    }
    end_row();
}

CsvWriter& CsvWriter::field(std::string_view s) {
    if (row_started_) {
        text_ += ',';
    }
    text_ += s;
    row_started_ = true;
    return *this;
}

CsvWriter& CsvWriter::field(double v) { return field(std::string_view(format_number(v))); }

CsvWriter& CsvWriter::field(long long v) { return field(std::string_view(std::to_string(v))); }

void CsvWriter::end_row() {
    text_ += '\n';
    row_started_ = false;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        auto f = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
        while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) {
            f.remove_prefix(1);
        }
        while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) {
            f.remove_suffix(1);
        }
        out.push_back(f);
        if (comma == std::string_view::npos) {
            return out;
        }
        start = comma + 1;
    }
}

bool parse_double(std::string_view f, double& out) {
    if (f.empty()) {
        return false;
    }
    const std::string s(f);
    char* end = nullptr;
    errno = 0;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && errno != ERANGE && std::isfinite(out);
}

}  // namespace

Series parse_series(std::string_view text, double default_dt) {
    Series s;
    std::size_t columns = 0;
    std::size_t line_no = 0;
    bool first_content = true;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.find_first_not_of(" \t") == std::string_view::npos) {
            continue;
        }
        const auto fields = split_fields(line);
        std::vector<double> nums(fields.size());
        bool numeric = true;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            numeric = numeric && parse_double(fields[i], nums[i]);
        }
        if (first_content) {
            first_content = false;
            if (fields.size() != 1 && fields.size() != 2) {
                throw FormatError("expected one value column or (time, value) columns");
            }
            columns = fields.size();
            if (!numeric) {
                continue;  // header row
            }
        }
        if (fields.size() != columns) {
            throw FormatError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(columns) + " columns");
        }
        if (!numeric) {
            throw FormatError("line " + std::to_string(line_no) + ": not a finite number");
        }
        if (columns == 2) {
            s.times.push_back(nums[0]);
        }
        s.values.push_back(nums.back());
    }
    if (s.values.empty()) {
        throw FormatError("no samples");
    }
    if (columns == 1) {
        if (!(default_dt > 0.0) || !std::isfinite(default_dt)) {
            throw FormatError("sample interval must be positive");
        }
        s.dt = default_dt;
        return s;
    }
    if (s.times.size() < 2) {
        throw FormatError("a time column needs at least two samples");
    }
    const double dt = (s.times.back() - s.times.front()) / static_cast<double>(s.times.size() - 1);
    if (!(dt > 0.0)) {
        throw FormatError("times must increase");
    }
    for (std::size_t i = 1; i < s.times.size(); ++i) {
        const double step = s.times[i] - s.times[i - 1];
        if (std::abs(step - dt) > 1e-6 * dt) {
            throw FormatError("non-uniform sampling near time " +
                              format_number(s.times[i]));
        }
    }
    s.dt = dt;
    return s;
}

Series read_series(const std::filesystem::path& path, double default_dt) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("cannot read " + path.string());
    }
    return parse_series(buf.str(), default_dt);
}

std::string complex_to_bytes(const std::vector<std::complex<double>>& values) {
    std::string out(values.size() * 16, '\0');
    auto put = [&out](std::size_t at, double v) {
        auto bits = std::bit_cast<std::uint64_t>(v);
        for (int b = 0; b < 8; ++b) {
            out[at + b] = static_cast<char>(bits & 0xffu);
            bits >>= 8;
        }
    };
    for (std::size_t i = 0; i < values.size(); ++i) {
        put(16 * i, values[i].real());
        put(16 * i + 8, values[i].imag());
    }
    return out;
}

void OutputSet::add(std::filesystem::path path, std::string content) {
    files_.emplace_back(std::move(path), std::move(content));
}

void OutputSet::commit() const {
    std::vector<std::filesystem::path> done;
    auto rollback = [&done] {
        std::error_code ec;
        for (const auto& p : done) {
            std::filesystem::remove(p, ec);
        }
    };
    for (const auto& [path, content] : files_) {
        auto tmp = path;
        tmp += ".partial";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out.write(content.data(), static_cast<std::streamsize>(content.size()));
            out.close();
            if (!out) {
                std::error_code ec;
                std::filesystem::remove(tmp, ec);
                rollback();
                throw IoError("cannot write " + path.string());
            }
        }
        std::error_code ec;
        std::filesystem::rename(tmp, path, ec);
        if (ec) {
            std::filesystem::remove(tmp, ec);
            rollback();
            throw IoError("cannot write " + path.string());
        }
        done.push_back(path);
    }
}

}  // namespace ridgelab
