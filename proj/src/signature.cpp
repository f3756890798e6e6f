#include "grouplink/signature.hpp"

#include <stdexcept>

namespace grouplink {

signature build_signature(const std::vector<const record*>& records, const schema& sch) {
    if (records.empty()) throw std::invalid_argument("build_signature: empty record set");
    signature sig;
    sig.record_count = static_cast<int>(records.size());
    std::map<std::string, std::map<std::string, int>> counts;
    for (const record* rec : records)
        for (const auto& attr : sch.attributes())
            for (const auto& value : rec->values_of(attr.name)) ++counts[attr.name][value];
    for (const auto& [attr, values] : counts)
        for (const auto& [value, count] : values)
            sig.weights[attr][value] = static_cast<double>(count) / sig.record_count;
    return sig;
}

signature build_signature(const std::vector<record>& records, const schema& sch) {
    std::vector<const record*> ptrs;
    ptrs.reserve(records.size());
    for (const auto& rec : records) ptrs.push_back(&rec);
    return build_signature(ptrs, sch);
}

void signature_accumulator::add(const record& rec) {
    ++record_count_;
    for (const auto& [attr, values] : rec.values)
        for (const auto& value : values) ++counts_[attr][value];
}

void signature_accumulator::remove(const record& rec) {
    --record_count_;
    for (const auto& [attr, values] : rec.values) {
        auto attr_it = counts_.find(attr);
        if (attr_it == counts_.end()) continue;
        for (const auto& value : values) {
            auto val_it = attr_it->second.find(value);
            if (val_it == attr_it->second.end()) continue;
            if (--val_it->second == 0) attr_it->second.erase(val_it);
        }
        if (attr_it->second.empty()) counts_.erase(attr_it);
    }
}

void signature_accumulator::add(const signature_accumulator& other) {
    record_count_ += other.record_count_;
    for (const auto& [attr, values] : other.counts_)
        for (const auto& [value, count] : values) counts_[attr][value] += count;
}

signature signature_accumulator::snapshot() const {
    signature sig;
    sig.record_count = record_count_;
    if (record_count_ <= 0) return sig;
    for (const auto& [attr, values] : counts_)
        for (const auto& [value, count] : values)
            sig.weights[attr][value] = static_cast<double>(count) / record_count_;
    return sig;
}

} // namespace grouplink
