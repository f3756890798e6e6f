#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace grouplink {

enum class attribute_role { common_value, dominant_value, multi_value };

struct attribute_spec {
    std::string name;
    attribute_role role = attribute_role::multi_value;
    bool multi_valued = false;
};

// Ordered attribute list. Order is fixed so every iteration over attributes
// is deterministic. Requires at least one common-value and one dominant-value
// attribute; both stages depend on them.
class schema {
public:
    schema() = default;
    explicit schema(std::vector<attribute_spec> attributes);

    const std::vector<attribute_spec>& attributes() const { return attributes_; }
    const attribute_spec& attribute(const std::string& name) const;
    bool has_attribute(const std::string& name) const;

    std::vector<std::string> names_with_role(attribute_role role) const;

private:
    std::vector<attribute_spec> attributes_;
    std::map<std::string, std::size_t> by_name_;
};

struct record {
    std::string id;
    // attribute name -> set of normalized values; missing value = empty set
    std::map<std::string, std::set<std::string>> values;

    const std::set<std::string>& values_of(const std::string& attribute) const {
        static const std::set<std::string> empty;
        auto it = values.find(attribute);
        return it == values.end() ? empty : it->second;
    }
};

struct dataset {
    grouplink::schema schema;
    std::vector<record> records;

    const record& by_id(const std::string& id) const;
    std::optional<std::size_t> index_of(const std::string& id) const;

private:
    mutable std::map<std::string, std::size_t> id_index_;
};

// record id -> group id; singleton records may carry unique group ids
using gold_standard = std::map<std::string, std::string>;

struct parse_options {
    char delimiter = ',';
    std::string id_column = "id";
    char multi_value_separator = ';';
};

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// Trims surrounding whitespace, collapses internal whitespace runs to a
/// single space and lower-cases ASCII letters. Idempotent.
std::string normalize_value(const std::string& raw);

/// Parses delimited text with a header row into a dataset. The header must
/// name the id column plus a subset of schema attributes. Multi-valued cells
/// are split on the configured separator; every value is normalized.
/// Duplicate ids, unknown columns and rows with the wrong field count are
/// rejected with the offending row number.
dataset parse_dataset(const std::string& text, const schema& sch, const parse_options& options = {});

dataset parse_dataset_file(const std::string& path, const schema& sch, const parse_options& options = {});

/// Inverse of parse_dataset: emits a header plus one row per record, quoting
/// fields that contain the delimiter. parse(serialize(d)) == d.
std::string serialize_dataset(const dataset& data, const parse_options& options = {});

gold_standard parse_gold_standard(const std::string& text);
gold_standard parse_gold_standard_file(const std::string& path);
std::string serialize_gold_standard(const gold_standard& gold);

} // namespace grouplink
