#pragma once

#include <map>
#include <string>

#include "grouplink/schema.hpp"

namespace grouplink {

struct metrics {
    long long tp = 0;
    long long fp = 0;
    long long fn = 0;
    double precision = 1.0;
    double recall = 1.0;
    double f1 = 1.0;

    std::string to_line() const; // precision=<x> recall=<y> f1=<z> tp=<n> fp=<n> fn=<n>
};

/// Pairwise same-group comparison over unordered record pairs. Both maps
/// must cover the same record ids; 0/0 ratios evaluate to 1.
metrics evaluate(const std::map<std::string, std::string>& predicted, const gold_standard& gold);

} // namespace grouplink
