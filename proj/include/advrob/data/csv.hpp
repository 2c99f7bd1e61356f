#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "advrob/data/dataset.hpp"

namespace advrob {

/// Labels are mapped through an explicit two-value table; anything else is a
/// format error.
struct CsvOptions {
    std::size_t label_column = 0;
    char delimiter = ',';
    bool has_header = false;
    std::string pos_label = "1";
    std::string neg_label = "-1";
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(delim, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

[[noreturn]] inline void csv_error(const std::string& source, std::size_t line, const std::string& msg) {
    fail(ErrorKind::format, source + ":" + std::to_string(line) + ": " + msg);
}

} // namespace detail

inline LabeledDataset parse_csv(std::istream& in, const CsvOptions& opts, const std::string& source = "<csv>") {
    std::vector<Vector> points;
    std::vector<Label> labels;
    std::string line;
    std::size_t lineno = 0;
    std::size_t columns = 0;
    bool header_pending = opts.has_header;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty())
            continue;
        const auto fields = detail::split(line, opts.delimiter);
        if (columns == 0) {
            columns = fields.size();
            if (opts.label_column >= columns)
                detail::csv_error(source, lineno, "label column " + std::to_string(opts.label_column) + " out of range");
            if (columns < 2)
                detail::csv_error(source, lineno, "need a label and at least one feature");
        } else if (fields.size() != columns) {
            detail::csv_error(source, lineno, "expected " + std::to_string(columns) + " fields, got " +
                                                  std::to_string(fields.size()));
        }
        if (header_pending) {
            header_pending = false;
            continue;
        }
        Vector x;
        x.reserve(columns - 1);
        Label y = 0;
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const auto f = fields[c];
            if (c == opts.label_column) {
                if (f == opts.pos_label)
                    y = 1;
                else if (f == opts.neg_label)
                    y = -1;
                else
                    detail::csv_error(source, lineno, "unknown label '" + std::string(f) + "'");
                continue;
            }
            double v = 0.0;
            const auto* end = f.data() + f.size();
            auto [ptr, ec] = std::from_chars(f.data(), end, v);
            if (ec != std::errc() || ptr != end || f.empty())
                detail::csv_error(source, lineno, "cannot parse '" + std::string(f) + "' as a number");
            x.push_back(v);
        }
        points.push_back(std::move(x));
        labels.push_back(y);
    }
    if (points.empty())
        fail(ErrorKind::format, source + ": no data rows");
    return LabeledDataset(std::move(points), std::move(labels));
}

inline LabeledDataset load_csv(const std::string& path, const CsvOptions& opts = {}) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::format, "cannot open '" + path + "'");
    return parse_csv(in, opts, path);
}

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Writes rows in the layout `parse_csv` reads with the same options.
inline void write_csv(std::ostream& out, const LabeledDataset& ds, const CsvOptions& opts = {}) {
    const std::size_t columns = ds.dim() + 1;
    if (opts.has_header) {
        std::size_t feature = 0;
        for (std::size_t c = 0; c < columns; ++c) {
            if (c)
                out << opts.delimiter;
            out << (c == opts.label_column ? std::string("label") : "x" + std::to_string(feature++));
        }
        out << '\n';
    }
    for (std::size_t i = 0; i < ds.size(); ++i) {
        std::size_t feature = 0;
        for (std::size_t c = 0; c < columns; ++c) {
            if (c)
                out << opts.delimiter;
            if (c == opts.label_column)
                out << (ds.label(i) == 1 ? opts.pos_label : opts.neg_label);
            else
                out << format_double(ds.point(i)[feature++]);
        }
        out << '\n';
    }
}

inline void save_csv(const std::string& path, const LabeledDataset& ds, const CsvOptions& opts = {}) {
    std::ofstream out(path);
    if (!out)
        fail(ErrorKind::format, "cannot write '" + path + "'");
    write_csv(out, ds, opts);
}

} // namespace advrob
