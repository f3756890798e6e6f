#pragma once

#include <map>
#include <string>
#include <vector>

#include "grouplink/schema.hpp"

namespace grouplink {

// Weighted value profile of a record set. For every attribute value v the
// weight is |R(v)| / |R| over the member records, so a value shared by the
// whole set carries weight 1.
struct signature {
    std::map<std::string, std::map<std::string, double>> weights; // attribute -> value -> weight
    int record_count = 0;

    double weight_of(const std::string& attribute, const std::string& value) const {
        auto attr = weights.find(attribute);
        if (attr == weights.end()) return 0.0;
        auto val = attr->second.find(value);
        return val == attr->second.end() ? 0.0 : val->second;
    }
    bool empty_on(const std::string& attribute) const {
        auto attr = weights.find(attribute);
        return attr == weights.end() || attr->second.empty();
    }
};

signature build_signature(const std::vector<const record*>& records, const schema& sch);
signature build_signature(const std::vector<record>& records, const schema& sch);

// Incrementally maintained value counts for a changing record set; weights
// are derived on demand. Keeps cluster signatures equal to a fresh
// build_signature of the current members at all times.
class signature_accumulator {
public:
    void add(const record& rec);
    void remove(const record& rec);
    void add(const signature_accumulator& other);

    int record_count() const { return record_count_; }
    signature snapshot() const;

private:
    std::map<std::string, std::map<std::string, int>> counts_;
    int record_count_ = 0;
};

} // namespace grouplink
