#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "grouplink/schema.hpp"
#include "grouplink/signature.hpp"
#include "grouplink/similarity.hpp"

namespace grouplink {

// Clustering unit: a core (>= 2 records) or a satellite (exactly 1).
struct element {
    enum class kind_t { core, satellite };

    kind_t kind = kind_t::satellite;
    std::string label;
    std::vector<std::string> records; // sorted
    signature_accumulator values;

    signature sig() const { return values.snapshot(); }
};

element make_core_element(const std::vector<const record*>& records, const schema& sch);
element make_satellite_element(const record& rec, const schema& sch);

struct grouping_params {
    similarity_params sim;
    double alpha = 0.01;
    double beta = 0.02;
    double theta_ini = 0.8; // initialization join threshold
    double theta_s = 0.3;   // border-element threshold
};

/// Silhouette score (a - b + alpha) / (max{a, b} + beta) of one element
/// given its own-cluster similarity a and best other-cluster similarity b.
double sv_element_score(double a, double b, double alpha, double beta);

class clustering;

// Element-to-cluster similarity used by the clustering engine. The
// production model derives it from weighted signatures; tests may inject
// fixed matrices.
class cluster_similarity_model {
public:
    virtual ~cluster_similarity_model() = default;
    virtual double similarity(const clustering& state, int element_id, int cluster_id) const = 0;
    /// Gate for outright cluster merges; move plans are not gated.
    virtual bool merge_admissible(const clustering& state, int cluster_a, int cluster_b) const {
        (void)state;
        (void)cluster_a;
        (void)cluster_b;
        return true;
    }
};

class signature_similarity_model final : public cluster_similarity_model {
public:
    signature_similarity_model(schema sch, similarity_params params)
        : schema_(std::move(sch)), params_(params) {}

    double similarity(const clustering& state, int element_id, int cluster_id) const override;
    /// Two clusters may merge only when they share a dominant value that is
    /// primary (weight >= primary_merge_threshold) on both sides.
    bool merge_admissible(const clustering& state, int cluster_a, int cluster_b) const override;

private:
    schema schema_;
    similarity_params params_;
};

// Mutable clustering state over a fixed element set. Cluster signatures stay
// equal to the aggregate of their members' value counts; distinctness (value
// present in exactly one cluster) is derived from the current state.
class clustering {
public:
    clustering(std::shared_ptr<const std::vector<element>> elements, grouping_params params,
               const cluster_similarity_model* model);

    /// Builds a clustering with an explicit assignment (one inner vector of
    /// element ids per cluster). Used by stage drivers and tests.
    static clustering from_assignment(std::shared_ptr<const std::vector<element>> elements,
                                      const std::vector<std::vector<int>>& groups, grouping_params params,
                                      const cluster_similarity_model* model);

    const std::vector<element>& elements() const { return *elements_; }
    const grouping_params& params() const { return params_; }

    std::vector<int> cluster_ids() const;
    int cluster_of(int element_id) const { return assignment_[element_id]; }
    const std::set<int>& members(int cluster_id) const;
    std::vector<std::string> cluster_element_labels(int cluster_id) const; // sorted
    const signature& cluster_signature(int cluster_id) const;
    bool value_distinct(const std::string& attribute, const std::string& value) const;
    bool cluster_valid(int cluster_id) const; // at most one satellite when coreless
    bool all_clusters_valid() const;

    int create_cluster();
    void assign(int element_id, int cluster_id); // moves the element; empty clusters are dropped

    double similarity(int element_id, int cluster_id) const;
    bool merge_admissible(int cluster_a, int cluster_b) const;

    struct element_scores {
        double a = 0.0;
        double b = 0.0;
        int best_other = -1; // cluster id, -1 when no other cluster exists
        double s = 0.0;
    };
    element_scores scores_of(int element_id) const;
    double sv_of(int element_id) const { return scores_of(element_id).s; }
    /// Average S(e) over all elements. Throws on an empty clustering.
    double sv_index() const;

    std::map<std::string, std::string> to_groups() const; // record id -> stable group id

private:
    friend class signature_similarity_model;

    struct cluster_state {
        std::set<int> members;
        signature_accumulator values;
        int cores = 0;
        int satellites = 0;
    };

    void bump() { ++version_; }
    void refresh_distinctness() const;

    std::shared_ptr<const std::vector<element>> elements_;
    grouping_params params_;
    const cluster_similarity_model* model_;
    std::vector<int> assignment_;
    std::map<int, cluster_state> clusters_;
    int next_cluster_id_ = 0;

    mutable std::uint64_t version_ = 1;
    mutable std::uint64_t signature_version_ = 0;
    mutable std::map<int, signature> signature_cache_;
    mutable std::uint64_t distinct_version_ = 0;
    mutable std::map<std::pair<std::string, std::string>, int> distinct_counts_;
};

/// One cluster per core, then satellites in ascending label order, each
/// joined to the most similar cluster when the similarity reaches theta_ini
/// and opening a fresh cluster otherwise. Ties go to the oldest cluster.
clustering initialize(std::shared_ptr<const std::vector<element>> elements, const grouping_params& params,
                      const cluster_similarity_model& model);

struct candidate_pair {
    int cluster_a = -1;
    int cluster_b = -1;
    std::vector<int> borders; // element ids
    double benefit = 0.0;
};

/// Border elements are those with S(e) <= theta_s (plus a small slack for
/// reported-rounding); their closest/second-closest clusters form candidate
/// pairs ranked by total benefit sum(1 - S(e)).
std::vector<candidate_pair> find_candidates(const clustering& state, double theta_s);

struct reclustering_plan {
    std::string kind; // "merge", "move_borders_ab", "move_borders_ba", "extract_borders"
    clustering result;
    double score = 0.0; // sum of S(e) over the affected element set
};

/// The four re-clustering plans for a candidate pair, minus invalid ones
/// (validity rule) and merges without shared primary evidence. Scores cover
/// only elements in the two clusters or second-closest to them.
std::vector<reclustering_plan> enumerate_plans(const candidate_pair& pair, const clustering& state);

/// Greedy SV-index maximization: repeatedly applies the best-scoring plan of
/// the best candidate pair while it strictly improves the affected score,
/// re-homing any element whose closest cluster changed after each accepted
/// plan.
clustering adjust(clustering state);

/// initialize + adjust.
clustering cluster_block(std::shared_ptr<const std::vector<element>> elements, const grouping_params& params,
                         const cluster_similarity_model& model);

} // namespace grouplink
