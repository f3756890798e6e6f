#include "grouplink/metrics.hpp"

#include <sstream>
#include <stdexcept>

namespace grouplink {

std::string metrics::to_line() const {
    std::ostringstream out;
    out.precision(6);
    out << "precision=" << precision << " recall=" << recall << " f1=" << f1 << " tp=" << tp
        << " fp=" << fp << " fn=" << fn;
    return out.str();
}

metrics evaluate(const std::map<std::string, std::string>& predicted, const gold_standard& gold) {
    std::string missing;
    int missing_count = 0;
    auto note_missing = [&](const std::string& id, const char* where) {
        if (++missing_count <= 5) missing += std::string(missing.empty() ? "" : ", ") + id + " (" + where + ")";
    };
    for (const auto& [id, group] : predicted) {
        (void)group;
        if (!gold.count(id)) note_missing(id, "not in gold");
    }
    for (const auto& [id, group] : gold) {
        (void)group;
        if (!predicted.count(id)) note_missing(id, "not in prediction");
    }
    if (missing_count > 0)
        throw std::invalid_argument("evaluate: record universes differ for " + std::to_string(missing_count) +
                                    " ids: " + missing);

    auto pair_count = [](long long n) { return n * (n - 1) / 2; };
    std::map<std::string, long long> predicted_sizes, gold_sizes;
    std::map<std::pair<std::string, std::string>, long long> joint_sizes;
    for (const auto& [id, pred_group] : predicted) {
        ++predicted_sizes[pred_group];
        ++gold_sizes[gold.at(id)];
        ++joint_sizes[{pred_group, gold.at(id)}];
    }
    long long predicted_pairs = 0, gold_pairs = 0, tp = 0;
    for (const auto& [group, n] : predicted_sizes) {
        (void)group;
        predicted_pairs += pair_count(n);
    }
    for (const auto& [group, n] : gold_sizes) {
        (void)group;
        gold_pairs += pair_count(n);
    }
    for (const auto& [key, n] : joint_sizes) {
        (void)key;
        tp += pair_count(n);
    }

    metrics m;
    m.tp = tp;
    m.fp = predicted_pairs - tp;
    m.fn = gold_pairs - tp;
    m.precision = (m.tp + m.fp) == 0 ? 1.0 : static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp);
    m.recall = (m.tp + m.fn) == 0 ? 1.0 : static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
    m.f1 = (m.precision + m.recall) == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

} // namespace grouplink
