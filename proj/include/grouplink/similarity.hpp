#pragma once

#include <functional>
#include <string>

#include "grouplink/schema.hpp"
#include "grouplink/signature.hpp"

namespace grouplink {

struct similarity_params {
    double p = 0.8;                    // probability a shared primary value implies same group
    double theta_th = 0.6;             // strong-evidence threshold gating the multi-value bonus
    double w_c = 1.0;                  // weight of common-value agreement
    double w_o = 1.0;                  // weight of dominant-value agreement
    double w_m = 0.1;                  // weight of the multi-value bonus
    double distinct_boost = 1.5;       // multiplier for weights of distinct values, clamped to 1
    double value_match_threshold = 0.95; // two values count as the same above this similarity
    double primary_merge_threshold = 0.5; // both-side weight floor for merge evidence

    void validate() const;
};

// Tells whether an (attribute, value) pair currently occurs in exactly one
// cluster. Distinct values are stronger evidence and get their weights
// boosted before similarity computation.
using distinctness_fn = std::function<bool(const std::string& attribute, const std::string& value)>;

inline bool no_distinct_values(const std::string&, const std::string&) { return false; }

/// Similarity on common-value attributes: per attribute the best value pair
/// by string similarity weighted by the cluster-side weight, averaged across
/// common attributes. An attribute empty on both sides contributes 1 (no
/// evidence against); empty on one side contributes 0.
double sim_com(const signature& element, const signature& cluster, const schema& sch,
               const similarity_params& params, const distinctness_fn& distinct = no_distinct_values);

/// Similarity on dominant-value attributes, all pooled into one noisy-or
/// product: 1 - prod over same-attribute cross pairs of
/// (1 - p * w_e(v) * w_cl(v') * s(v,v')), where s is string similarity
/// zeroed below value_match_threshold.
double sim_dom(const signature& element, const signature& cluster, const schema& sch,
               const similarity_params& params, const distinctness_fn& distinct = no_distinct_values);

/// Similarity on multi-value attributes: threshold-matched Jaccard overlap
/// per attribute, averaged across multi-value attributes.
double sim_multi(const signature& element, const signature& cluster, const schema& sch,
                 const similarity_params& params);

/// Full element-to-cluster similarity:
///   sim_s = (w_c * sim_com + w_o * sim_dom) / (w_c + w_o)
///   result = min{1, sim_s + tau * w_m * sim_multi},
/// with tau = 1 iff sim_s >= theta_th. Distinct-value weights are boosted on
/// both sides before combination.
double element_cluster_sim(const signature& element, const signature& cluster, const schema& sch,
                           const similarity_params& params,
                           const distinctness_fn& distinct = no_distinct_values);

/// True when the two signatures share at least one dominant value (up to
/// value_match_threshold) whose raw weight reaches primary_merge_threshold on
/// both sides. Sharing a primary value is the evidence required to merge two
/// clusters outright.
bool shares_primary_dominant_value(const signature& a, const signature& b, const schema& sch,
                                   const similarity_params& params);

} // namespace grouplink
