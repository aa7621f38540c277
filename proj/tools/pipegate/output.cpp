#include "pipegate/output.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace pipegate::cli {
namespace {

using Json = nlohmann::ordered_json;

std::string shortest(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string three_sig(double v) {
    if (!std::isfinite(v)) return shortest(v);
    if (v == 0.0) return "0";
    if (std::abs(v) >= 1000.0) {
        const double scale = std::pow(10.0, std::floor(std::log10(std::abs(v))) - 2.0);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.0f", std::round(v / scale) * scale);
        return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%#.3g", v);
    std::string s = buf;
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

std::string marker(const std::string& provenance) {
    if (provenance.find("bayes-estimated") != std::string::npos) return "*";
    if (provenance.find("optimistic") != std::string::npos) return "+";
    return {};
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string machine_text(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) return {};
            else if constexpr (std::is_same_v<T, double>) return shortest(x);
            else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
            else return x;
        },
        v.data);
}

Json to_json(const Value& v) {
    Json j;
    std::visit(
        [&j](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) j["value"] = nullptr;
            else if constexpr (std::is_same_v<T, double>) {
                if (std::isfinite(x)) j["value"] = x;
                else j["value"] = nullptr;
            } else j["value"] = x;
        },
        v.data);
    j["unit"] = std::string(to_string(v.unit));
    j["provenance"] = v.provenance;
    return j;
}

Json fields_json(const std::vector<Field>& fields) {
    Json j = Json::object();
    for (const auto& f : fields) j[f.name] = to_json(f.value);
    return j;
}

std::string render_json(const OutputRecord& r) {
    Json j;
    j["schema"] = std::string(kOutputSchemaId);
    j["command"] = r.command;
    j["status"] = r.status;
    j["inputs"] = fields_json(r.inputs);
    j["sections"] = Json::array();
    for (const auto& s : r.sections) {
        Json rows = Json::array();
        for (const auto& row : s.rows) rows.push_back(Json{{"label", row.label}, {"values", fields_json(row.fields)}});
        j["sections"].push_back(Json{{"name", s.name}, {"rows", std::move(rows)}});
    }
    j["warnings"] = r.warnings;
    return j.dump(2) + "\n";
}

std::string render_csv(const OutputRecord& r) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    const auto line = [&out](const std::string& section, const std::string& row, const std::string& field,
                             const std::string& value, std::string_view unit, const std::string& provenance) {
        out << csv_escape(section) << ',' << csv_escape(row) << ',' << csv_escape(field) << ',' << csv_escape(value)
            << ',' << unit << ',' << csv_escape(provenance) << '\n';
    };
    line("meta", "", "command", r.command, "", "");
    line("meta", "", "status", r.status, "", "");
    for (const auto& f : r.inputs) line("inputs", "", f.name, machine_text(f.value), to_string(f.value.unit), f.value.provenance);
    for (const auto& s : r.sections)
        for (const auto& row : s.rows)
            for (const auto& f : row.fields)
                line(s.name, row.label, f.name, machine_text(f.value), to_string(f.value.unit), f.value.provenance);
    for (std::size_t i = 0; i < r.warnings.size(); ++i) line("warnings", std::to_string(i), "message", r.warnings[i], "", "");
    return out.str();
}

std::string render_table(const OutputRecord& r) {
    std::ostringstream out;
    bool starred = false;
    bool optimistic = false;
    const auto note = [&](const Value& v) {
        const auto m = marker(v.provenance);
        starred = starred || m == "*";
        optimistic = optimistic || m == "+";
        return format_cell(v) + m;
    };

    out << r.command;
    if (r.status != "ok") out << "  [" << r.status << "]";
    out << '\n';
    for (const auto& f : r.inputs) {
        out << "  " << f.name << " = " << note(f.value);
        if (!f.value.provenance.empty()) out << "  (" << f.value.provenance << ")";
        out << '\n';
    }

    for (const auto& s : r.sections) {
        std::vector<std::string> columns;
        for (const auto& row : s.rows)
            for (const auto& f : row.fields)
                if (std::find(columns.begin(), columns.end(), f.name) == columns.end()) columns.push_back(f.name);

        std::vector<std::vector<std::string>> cells;
        cells.push_back({s.name});
        cells.front().insert(cells.front().end(), columns.begin(), columns.end());
        for (const auto& row : s.rows) {
            std::vector<std::string> line{row.label};
            for (const auto& c : columns) {
                const auto it = std::find_if(row.fields.begin(), row.fields.end(), [&](const Field& f) { return f.name == c; });
                line.push_back(it == row.fields.end() ? "" : note(it->value));
            }
            cells.push_back(std::move(line));
        }

        std::vector<std::size_t> width(columns.size() + 1, 0);
        for (const auto& line : cells)
            for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());

        out << '\n';
        for (std::size_t l = 0; l < cells.size(); ++l) {
            std::string text;
            for (std::size_t i = 0; i < cells[l].size(); ++i) {
                const auto& c = cells[l][i];
                if (i == 0) text += c + std::string(width[0] - c.size(), ' ');
                else text += "  " + std::string(width[i] - c.size(), ' ') + c;
            }
            while (!text.empty() && text.back() == ' ') text.pop_back();
            out << text << '\n';
            if (l == 0) {
                std::size_t total = width[0];
                for (std::size_t i = 1; i < width.size(); ++i) total += 2 + width[i];
                out << std::string(total, '-') << '\n';
            }
        }
    }

    if (starred || optimistic) out << '\n';
    if (starred) out << "* derived from a Bayes-estimated false positive rate\n";
    if (optimistic) out << "+ uses a lower-bound latency (optimistic)\n";
    if (!r.warnings.empty()) out << '\n';
    for (const auto& w : r.warnings) out << "warning: " << w << '\n';
    return out.str();
}

}  // namespace

std::optional<Format> parse_format(std::string_view text) noexcept {
    if (text == "table") return Format::Table;
    if (text == "csv") return Format::Csv;
    if (text == "json") return Format::Json;
    return std::nullopt;
}

std::string_view to_string(Unit u) noexcept {
    switch (u) {
        case Unit::None: return "";
        case Unit::Probability: return "probability";
        case Unit::Percent: return "fraction";
        case Unit::Seconds: return "s";
        case Unit::Count: return "count";
    }
    return "";
}

std::string format_cell(const Value& v) {
    return std::visit(
        [&v](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) return "-";
            else if constexpr (std::is_same_v<T, bool>) return x ? "yes" : "no";
            else if constexpr (std::is_same_v<T, std::string>) return x;
            else {
                switch (v.unit) {
                    case Unit::Percent: return three_sig(x * 100.0) + "%";
                    case Unit::Seconds: return x > 120.0 ? three_sig(x / 60.0) + " min" : three_sig(x) + " s";
                    default: return three_sig(x);
                }
            }
        },
        v.data);
}

std::string render(const OutputRecord& record, Format format) {
    switch (format) {
        case Format::Json: return render_json(record);
        case Format::Csv: return render_csv(record);
        case Format::Table: return render_table(record);
    }
    return {};
}

}  // namespace pipegate::cli
