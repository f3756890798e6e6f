#include "grouplink/jaro_winkler.hpp"

#include <algorithm>
#include <vector>

namespace grouplink {

double jaro(std::string_view a, std::string_view b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    if (a == b) return 1.0;

    const auto la = static_cast<long>(a.size());
    const auto lb = static_cast<long>(b.size());
    const long window = std::max(std::max(la, lb) / 2 - 1, 0L);

    std::vector<bool> matched_a(a.size(), false), matched_b(b.size(), false);
    long matches = 0;
    for (long i = 0; i < la; ++i) {
        const long lo = std::max(0L, i - window);
        const long hi = std::min(lb, i + window + 1);
        for (long j = lo; j < hi; ++j) {
            if (matched_b[j] || a[i] != b[j]) continue;
            matched_a[i] = matched_b[j] = true;
            ++matches;
            break;
        }
    }
    if (matches == 0) return 0.0;

    // Transpositions: matched characters out of order, counted pairwise.
    long transpositions = 0;
    long j = 0;
    for (long i = 0; i < la; ++i) {
        if (!matched_a[i]) continue;
        while (!matched_b[j]) ++j;
        if (a[i] != b[j]) ++transpositions;
        ++j;
    }
    const double m = static_cast<double>(matches);
    return (m / la + m / lb + (m - transpositions / 2.0) / m) / 3.0;
}

double jaro_winkler(std::string_view a, std::string_view b) {
    const double j = jaro(a, b);
    std::size_t prefix = 0;
    const std::size_t limit = std::min({a.size(), b.size(), std::size_t{4}});
    while (prefix < limit && a[prefix] == b[prefix]) ++prefix;
    return j + static_cast<double>(prefix) * 0.1 * (1.0 - j);
}

} // namespace grouplink
