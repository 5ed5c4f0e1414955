#include "bms/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bms/error.hpp"

namespace bms::io {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_number(std::string_view cell, double& out) {
    cell = trim(cell);
    if (cell.empty()) return false;
    if (cell.front() == '+') cell.remove_prefix(1);
    const auto* end = cell.data() + cell.size();
    const auto res = std::from_chars(cell.data(), end, out);
    return res.ec == std::errc() && res.ptr == end && std::isfinite(out);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        cells.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return cells;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

Configuration parse_csv(std::string_view text) {
    std::vector<double> coords;
    std::size_t d = 0;
    std::size_t n = 0;
    std::size_t row = 0;
    bool seen_content = false;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        const auto line = trim(text.substr(start, nl - start));
        start = nl + 1;
        ++row;
        if (line.empty()) {
            if (nl == text.size()) break;
            continue;
        }
        const auto cells = split(line, ',');
        std::vector<double> values(cells.size());
        std::size_t bad_col = 0;
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (!parse_number(cells[c], values[c]) && bad_col == 0) bad_col = c + 1;

        if (!seen_content) {
            seen_content = true;
            if (bad_col != 0) continue;  // header row
        }
        if (bad_col != 0) throw ParseError("non-numeric cell", row, bad_col);
        if (d == 0) d = values.size();
        if (values.size() != d)
            throw ParseError("row has " + std::to_string(values.size()) + " columns, expected " +
                                 std::to_string(d),
                             row, std::min(values.size(), d) + 1);
        coords.insert(coords.end(), values.begin(), values.end());
        ++n;
        if (nl == text.size()) break;
    }
    if (n == 0) throw ParseError("no data rows", row, 0);
    return Configuration(n, d, std::move(coords));
}

Configuration parse_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 0, 0);
    }
    if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty array of arrays", 0, 0);
    std::vector<double> coords;
    std::size_t d = 0;
    for (std::size_t r = 0; r < j.size(); ++r) {
        const auto& row = j[r];
        if (!row.is_array()) throw ParseError("row is not an array", r + 1, 0);
        if (d == 0) d = row.size();
        if (row.size() != d || d == 0) throw ParseError("ragged row", r + 1, row.size());
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (!row[c].is_number()) throw ParseError("non-numeric cell", r + 1, c + 1);
            coords.push_back(row[c].get<double>());
        }
    }
    return Configuration(j.size(), d, std::move(coords));
}

Configuration load_points(const std::filesystem::path& path, PointFormat format) {
    const std::string text = read_file(path);
    if (format == PointFormat::automatic)
        format = path.extension() == ".json" ? PointFormat::json : PointFormat::csv;
    return format == PointFormat::json ? parse_json(text) : parse_csv(text);
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string trace_line(const IterationRecord& rec) {
    ordered_json j;
    j["t"] = rec.t;
    j["L"] = rec.objective;
    j["d"] = rec.diameter;
    j["rho"] = rec.comp_diameter;
    j["max_move"] = rec.max_move;
    j["M"] = rec.n_components;
    j["closed"] = rec.closed;
    j["singular"] = rec.singular;
    j["stable"] = rec.stable;
    return j.dump();
}

void write_trace(std::ostream& out, const std::vector<IterationRecord>& records) {
    for (const auto& rec : records) out << trace_line(rec) << '\n';
}

void emit_trace(const std::vector<IterationRecord>& records, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open trace file " + path.string());
    write_trace(out, records);
    if (!out) throw Error("failed writing trace file " + path.string());
}

IterationRecord parse_trace_line(std::string_view line) {
    try {
        const auto j = nlohmann::json::parse(line);
        IterationRecord rec;
        rec.t = j.at("t").get<std::size_t>();
        rec.objective = j.at("L").get<double>();
        rec.diameter = j.at("d").get<double>();
        rec.comp_diameter = j.at("rho").get<double>();
        rec.max_move = j.at("max_move").get<double>();
        rec.n_components = j.at("M").get<std::size_t>();
        rec.closed = j.at("closed").get<bool>();
        rec.singular = j.at("singular").get<bool>();
        rec.stable = j.at("stable").get<bool>();
        return rec;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad trace line: ") + e.what(), 0, 0);
    }
}

std::string cluster_result_json(const ClusterResult& result, double h, std::string_view kernel) {
    ordered_json j;
    j["labels"] = result.labels;
    j["representatives"] = result.representatives;
    j["T"] = result.T;
    j["M"] = result.M;
    j["stop_reason"] = std::string(to_string(result.stop_reason));
    j["h"] = h;
    j["kernel"] = std::string(kernel);
    return j.dump(2) + "\n";
}

std::string simplex_csv(const SimplexComparison& cmp) {
    std::string out = "t,r_oracle,r_sim,ratio\n";
    for (const auto& row : cmp.rows) {
        out += std::to_string(row.t) + "," + format_double(row.r_oracle) + "," +
               format_double(row.r_sim) + "," + format_double(row.cubic_ratio) + "\n";
    }
    return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "h,M,T,L_final,stop_reason\n";
    for (const auto& row : rows)
        out += format_double(row.h) + "," + std::to_string(row.M) + "," + std::to_string(row.T) +
               "," + format_double(row.L_final) + "," + std::string(to_string(row.stop_reason)) +
               "\n";
    return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open output file " + path.string());
    out << text;
    if (!out) throw Error("failed writing " + path.string());
}

}  // namespace bms::io
