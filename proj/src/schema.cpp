#include "grouplink/schema.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace grouplink {

schema::schema(std::vector<attribute_spec> attributes) : attributes_(std::move(attributes)) {
    bool has_common = false, has_dominant = false;
    for (std::size_t i = 0; i < attributes_.size(); ++i) {
        const auto& attr = attributes_[i];
        if (!by_name_.emplace(attr.name, i).second)
            throw std::invalid_argument("schema: duplicate attribute '" + attr.name + "'");
        has_common |= attr.role == attribute_role::common_value;
        has_dominant |= attr.role == attribute_role::dominant_value;
    }
    if (!has_common || !has_dominant)
        throw std::invalid_argument("schema: needs at least one common-value and one dominant-value attribute");
}

const attribute_spec& schema::attribute(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw std::invalid_argument("schema: unknown attribute '" + name + "'");
    return attributes_[it->second];
}

bool schema::has_attribute(const std::string& name) const { return by_name_.count(name) > 0; }

std::vector<std::string> schema::names_with_role(attribute_role role) const {
    std::vector<std::string> out;
    for (const auto& attr : attributes_)
        if (attr.role == role) out.push_back(attr.name);
    return out;
}

const record& dataset::by_id(const std::string& id) const {
    auto idx = index_of(id);
    if (!idx) throw std::out_of_range("dataset: no record '" + id + "'");
    return records[*idx];
}

std::optional<std::size_t> dataset::index_of(const std::string& id) const {
    if (id_index_.size() != records.size()) {
        id_index_.clear();
        for (std::size_t i = 0; i < records.size(); ++i) id_index_.emplace(records[i].id, i);
    }
    auto it = id_index_.find(id);
    if (it == id_index_.end()) return std::nullopt;
    return it->second;
}

std::string normalize_value(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (unsigned char c : raw) {
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

namespace {

// Splits one line on the delimiter, honoring double-quoted fields with ""
// escapes.
std::vector<std::string> split_row(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == delimiter) {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string quote_field(const std::string& field, char delimiter) {
    if (field.find(delimiter) == std::string::npos && field.find('"') == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

} // namespace

dataset parse_dataset(const std::string& text, const schema& sch, const parse_options& options) {
    dataset out;
    out.schema = sch;

    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw parse_error("dataset: missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto header = split_row(line, options.delimiter);
    std::optional<std::size_t> id_column;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == options.id_column) {
            id_column = i;
        } else if (!sch.has_attribute(header[i])) {
            throw parse_error("dataset: unknown column '" + header[i] + "'");
        }
    }
    if (!id_column) throw parse_error("dataset: header has no '" + options.id_column + "' column");

    std::set<std::string> seen_ids;
    std::size_t row_number = 1;
    while (std::getline(in, line)) {
        ++row_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        const auto fields = split_row(line, options.delimiter);
        if (fields.size() != header.size())
            throw parse_error("dataset: row " + std::to_string(row_number) + " has " +
                              std::to_string(fields.size()) + " fields, expected " +
                              std::to_string(header.size()));

        record rec;
        rec.id = fields[*id_column];
        if (rec.id.empty())
            throw parse_error("dataset: row " + std::to_string(row_number) + " has an empty id");
        if (!seen_ids.insert(rec.id).second)
            throw parse_error("dataset: row " + std::to_string(row_number) + " repeats id '" + rec.id + "'");

        for (const auto& attr : sch.attributes()) rec.values[attr.name];
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i == *id_column) continue;
            const auto& attr = sch.attribute(header[i]);
            auto& slot = rec.values[attr.name];
            if (attr.multi_valued) {
                std::string piece;
                std::istringstream cell(fields[i]);
                while (std::getline(cell, piece, options.multi_value_separator)) {
                    auto value = normalize_value(piece);
                    if (!value.empty()) slot.insert(std::move(value));
                }
            } else {
                auto value = normalize_value(fields[i]);
                if (!value.empty()) slot.insert(std::move(value));
            }
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

dataset parse_dataset_file(const std::string& path, const schema& sch, const parse_options& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("dataset: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_dataset(buffer.str(), sch, options);
}

std::string serialize_dataset(const dataset& data, const parse_options& options) {
    std::ostringstream out;
    out << options.id_column;
    for (const auto& attr : data.schema.attributes()) out << options.delimiter << attr.name;
    out << '\n';
    for (const auto& rec : data.records) {
        out << quote_field(rec.id, options.delimiter);
        for (const auto& attr : data.schema.attributes()) {
            std::string cell;
            for (const auto& value : rec.values_of(attr.name)) {
                if (!cell.empty()) cell.push_back(options.multi_value_separator);
                cell += value;
            }
            out << options.delimiter << quote_field(cell, options.delimiter);
        }
        out << '\n';
    }
    return out.str();
}

gold_standard parse_gold_standard(const std::string& text) {
    gold_standard gold;
    std::istringstream in(text);
    std::string line;
    std::size_t row_number = 0;
    while (std::getline(in, line)) {
        ++row_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw parse_error("gold standard: row " + std::to_string(row_number) + " is not 'record<TAB>group'");
        gold[line.substr(0, tab)] = line.substr(tab + 1);
    }
    return gold;
}

gold_standard parse_gold_standard_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("gold standard: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_gold_standard(buffer.str());
}

std::string serialize_gold_standard(const gold_standard& gold) {
    std::ostringstream out;
    for (const auto& [id, group] : gold) out << id << '\t' << group << '\n';
    return out.str();
}

} // namespace grouplink
