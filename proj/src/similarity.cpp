#include "grouplink/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "grouplink/jaro_winkler.hpp"

namespace grouplink {

namespace {

constexpr double kThresholdSlack = 1e-12;

double boosted(double weight, bool distinct, double boost) {
    return distinct ? std::min(1.0, weight * boost) : weight;
}

} // namespace

void similarity_params::validate() const {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("similarity_params: p must be in (0,1]");
    if (theta_th < 0.0 || theta_th > 1.0) throw std::invalid_argument("similarity_params: theta_th must be in [0,1]");
    if (value_match_threshold < 0.0 || value_match_threshold > 1.0)
        throw std::invalid_argument("similarity_params: value_match_threshold must be in [0,1]");
    if (w_c < 0.0 || w_o < 0.0 || w_m < 0.0) throw std::invalid_argument("similarity_params: weights must be non-negative");
    if (w_c + w_o <= 0.0) throw std::invalid_argument("similarity_params: w_c + w_o must be positive");
    if (distinct_boost < 1.0) throw std::invalid_argument("similarity_params: distinct_boost must be >= 1");
}

double sim_com(const signature& element, const signature& cluster, const schema& sch,
               const similarity_params& params, const distinctness_fn& distinct) {
    const auto attrs = sch.names_with_role(attribute_role::common_value);
    if (attrs.empty()) return 0.0;
    double total = 0.0;
    for (const auto& attr : attrs) {
        const bool e_empty = element.empty_on(attr);
        const bool c_empty = cluster.empty_on(attr);
        if (e_empty && c_empty) {
            total += 1.0; // mutually absent: no evidence against
            continue;
        }
        if (e_empty || c_empty) continue;
        double best = 0.0;
        for (const auto& [ev, ew] : element.weights.at(attr)) {
            (void)ew;
            for (const auto& [cv, cw] : cluster.weights.at(attr)) {
                const double w = boosted(cw, distinct(attr, cv), params.distinct_boost);
                best = std::max(best, jaro_winkler(ev, cv) * w);
            }
        }
        total += best;
    }
    return total / static_cast<double>(attrs.size());
}

double sim_dom(const signature& element, const signature& cluster, const schema& sch,
               const similarity_params& params, const distinctness_fn& distinct) {
    double survive = 1.0;
    bool any_pair = false;
    for (const auto& attr : sch.names_with_role(attribute_role::dominant_value)) {
        auto e_it = element.weights.find(attr);
        auto c_it = cluster.weights.find(attr);
        if (e_it == element.weights.end() || c_it == cluster.weights.end()) continue;
        for (const auto& [ev, ew] : e_it->second) {
            const double we = boosted(ew, distinct(attr, ev), params.distinct_boost);
            for (const auto& [cv, cw] : c_it->second) {
                any_pair = true;
                double s = ev == cv ? 1.0 : jaro_winkler(ev, cv);
                if (s < params.value_match_threshold) s = 0.0;
                if (s == 0.0) continue;
                const double wc = boosted(cw, distinct(attr, cv), params.distinct_boost);
                survive *= 1.0 - params.p * we * wc * s;
            }
        }
    }
    if (!any_pair) return 0.0;
    return std::clamp(1.0 - survive, 0.0, 1.0);
}

double sim_multi(const signature& element, const signature& cluster, const schema& sch,
                 const similarity_params& params) {
    const auto attrs = sch.names_with_role(attribute_role::multi_value);
    if (attrs.empty()) return 0.0;
    double total = 0.0;
    for (const auto& attr : attrs) {
        if (element.empty_on(attr) || cluster.empty_on(attr)) continue;
        const auto& evs = element.weights.at(attr);
        const auto& cvs = cluster.weights.at(attr);
        // Threshold-matched Jaccard: element values with a match on the other
        // side count toward the intersection, and symmetrically.
        std::size_t matched_e = 0, matched_c = 0;
        for (const auto& [ev, ew] : evs) {
            (void)ew;
            for (const auto& [cv, cw] : cvs) {
                (void)cw;
                if (ev == cv || jaro_winkler(ev, cv) >= params.value_match_threshold) {
                    ++matched_e;
                    break;
                }
            }
        }
        for (const auto& [cv, cw] : cvs) {
            (void)cw;
            for (const auto& [ev, ew] : evs) {
                (void)ew;
                if (ev == cv || jaro_winkler(ev, cv) >= params.value_match_threshold) {
                    ++matched_c;
                    break;
                }
            }
        }
        const double inter = static_cast<double>(std::min(matched_e, matched_c));
        const double uni = static_cast<double>(evs.size() + cvs.size()) - inter;
        if (uni > 0.0) total += inter / uni;
    }
    return total / static_cast<double>(attrs.size());
}

double element_cluster_sim(const signature& element, const signature& cluster, const schema& sch,
                           const similarity_params& params, const distinctness_fn& distinct) {
    const double com = sim_com(element, cluster, sch, params, distinct);
    const double dom = sim_dom(element, cluster, sch, params, distinct);
    const double sim_s = (params.w_c * com + params.w_o * dom) / (params.w_c + params.w_o);
    const bool tau = sim_s >= params.theta_th - kThresholdSlack; // boundary inclusive
    double result = sim_s;
    if (tau) result += params.w_m * sim_multi(element, cluster, sch, params);
    return std::clamp(result, 0.0, 1.0);
}

bool shares_primary_dominant_value(const signature& a, const signature& b, const schema& sch,
                                   const similarity_params& params) {
    if (params.primary_merge_threshold <= 0.0) return true;
    for (const auto& attr : sch.names_with_role(attribute_role::dominant_value)) {
        auto a_it = a.weights.find(attr);
        auto b_it = b.weights.find(attr);
        if (a_it == a.weights.end() || b_it == b.weights.end()) continue;
        for (const auto& [av, aw] : a_it->second) {
            if (aw < params.primary_merge_threshold) continue;
            for (const auto& [bv, bw] : b_it->second) {
                if (bw < params.primary_merge_threshold) continue;
                if (av == bv || jaro_winkler(av, bv) >= params.value_match_threshold) return true;
            }
        }
    }
    return false;
}

} // namespace grouplink
