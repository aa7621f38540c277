#pragma once
// Command results as a format-neutral record, rendered as an aligned table,
// long-format CSV or JSON.
//
// CSV header (stable): section,row,field,value,unit,provenance
// JSON layout: docs/output.schema.json

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pipegate::cli {

inline constexpr std::string_view kOutputSchemaId = "pipegate.output.v1";
inline constexpr std::string_view kCsvHeader = "section,row,field,value,unit,provenance";

enum class Format { Table, Csv, Json };
std::optional<Format> parse_format(std::string_view text) noexcept;

// Seconds print as minutes above 120 s in tables; percent values are stored as fractions.
enum class Unit { None, Probability, Percent, Seconds, Count };
std::string_view to_string(Unit u) noexcept;

struct Value {
    std::variant<std::monostate, double, std::string, bool> data;
    Unit unit = Unit::None;
    std::string provenance;  // reported, bayes-estimated, derived, user, default, optimistic, ...

    static Value number(double v, Unit unit, std::string provenance) { return {v, unit, std::move(provenance)}; }
    static Value text(std::string v, std::string provenance = {}) { return {std::move(v), Unit::None, std::move(provenance)}; }
    static Value flag(bool v, std::string provenance = {}) { return {v, Unit::None, std::move(provenance)}; }
    static Value missing(Unit unit = Unit::None) { return {std::monostate{}, unit, {}}; }
};

struct Field {
    std::string name;
    Value value;
};

struct Row {
    std::string label;
    std::vector<Field> fields;
};

struct Section {
    std::string name;
    std::vector<Row> rows;
};

struct OutputRecord {
    std::string command;
    std::string status = "ok";
    std::vector<Field> inputs;
    std::vector<Section> sections;
    std::vector<std::string> warnings;
};

std::string render(const OutputRecord& record, Format format);

// Three significant figures; minutes for seconds above 120.
std::string format_cell(const Value& v);

}  // namespace pipegate::cli
