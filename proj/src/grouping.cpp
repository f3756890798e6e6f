#include "grouplink/grouping.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "grouplink/simgraph.hpp"

namespace grouplink {

namespace {
constexpr double kScoreSlack = 1e-12;
// Border comparisons tolerate the two-decimal rounding used when S(e) values
// are reported.
constexpr double kBorderSlack = 0.005;
} // namespace

element make_core_element(const std::vector<const record*>& records, const schema& sch) {
    (void)sch;
    if (records.size() < 2) throw std::invalid_argument("core element needs at least 2 records");
    element e;
    e.kind = element::kind_t::core;
    for (const record* rec : records) {
        e.records.push_back(rec->id);
        e.values.add(*rec);
    }
    std::sort(e.records.begin(), e.records.end());
    e.label = e.records.front();
    for (std::size_t i = 1; i < e.records.size(); ++i) e.label += "/" + e.records[i];
    return e;
}

element make_satellite_element(const record& rec, const schema& sch) {
    (void)sch;
    element e;
    e.kind = element::kind_t::satellite;
    e.label = rec.id;
    e.records = {rec.id};
    e.values.add(rec);
    return e;
}

double sv_element_score(double a, double b, double alpha, double beta) {
    return (a - b + alpha) / (std::max(a, b) + beta);
}

double signature_similarity_model::similarity(const clustering& state, int element_id,
                                              int cluster_id) const {
    const auto& e = state.elements()[element_id];
    const auto sig = e.sig();
    const auto& cluster_sig = state.cluster_signature(cluster_id);
    auto distinct = [&state](const std::string& attr, const std::string& value) {
        return state.value_distinct(attr, value);
    };
    return element_cluster_sim(sig, cluster_sig, schema_, params_, distinct);
}

bool signature_similarity_model::merge_admissible(const clustering& state, int cluster_a,
                                                  int cluster_b) const {
    return shares_primary_dominant_value(state.cluster_signature(cluster_a),
                                         state.cluster_signature(cluster_b), schema_, params_);
}

clustering::clustering(std::shared_ptr<const std::vector<element>> elements, grouping_params params,
                       const cluster_similarity_model* model)
    : elements_(std::move(elements)), params_(params), model_(model),
      assignment_(elements_->size(), -1) {}

clustering clustering::from_assignment(std::shared_ptr<const std::vector<element>> elements,
                                       const std::vector<std::vector<int>>& groups, grouping_params params,
                                       const cluster_similarity_model* model) {
    clustering state(std::move(elements), params, model);
    for (const auto& group : groups) {
        const int cl = state.create_cluster();
        for (int e : group) state.assign(e, cl);
    }
    for (int assigned : state.assignment_)
        if (assigned < 0) throw std::invalid_argument("from_assignment: element left unassigned");
    return state;
}

std::vector<int> clustering::cluster_ids() const {
    std::vector<int> ids;
    for (const auto& [id, cluster] : clusters_) {
        (void)cluster;
        ids.push_back(id);
    }
    return ids;
}

const std::set<int>& clustering::members(int cluster_id) const { return clusters_.at(cluster_id).members; }

std::vector<std::string> clustering::cluster_element_labels(int cluster_id) const {
    std::vector<std::string> labels;
    for (int e : members(cluster_id)) labels.push_back((*elements_)[e].label);
    std::sort(labels.begin(), labels.end());
    return labels;
}

const signature& clustering::cluster_signature(int cluster_id) const {
    if (signature_version_ != version_) {
        signature_cache_.clear();
        signature_version_ = version_;
    }
    auto it = signature_cache_.find(cluster_id);
    if (it == signature_cache_.end())
        it = signature_cache_.emplace(cluster_id, clusters_.at(cluster_id).values.snapshot()).first;
    return it->second;
}

void clustering::refresh_distinctness() const {
    if (distinct_version_ == version_) return;
    distinct_counts_.clear();
    for (const auto& [id, cluster] : clusters_) {
        (void)id;
        const auto sig = cluster.values.snapshot();
        for (const auto& [attr, values] : sig.weights)
            for (const auto& [value, weight] : values) {
                (void)weight;
                ++distinct_counts_[{attr, value}];
            }
    }
    distinct_version_ = version_;
}

bool clustering::value_distinct(const std::string& attribute, const std::string& value) const {
    refresh_distinctness();
    auto it = distinct_counts_.find({attribute, value});
    return it != distinct_counts_.end() && it->second == 1;
}

bool clustering::cluster_valid(int cluster_id) const {
    const auto& cluster = clusters_.at(cluster_id);
    return !(cluster.cores == 0 && cluster.satellites > 1);
}

bool clustering::all_clusters_valid() const {
    for (const auto& [id, cluster] : clusters_) {
        (void)cluster;
        if (!cluster_valid(id)) return false;
    }
    return true;
}

int clustering::create_cluster() {
    const int id = next_cluster_id_++;
    clusters_[id];
    bump();
    return id;
}

void clustering::assign(int element_id, int cluster_id) {
    const auto& e = (*elements_)[element_id];
    const int old_cluster = assignment_[element_id];
    if (old_cluster == cluster_id) return;
    if (old_cluster >= 0) {
        auto& old_state = clusters_.at(old_cluster);
        old_state.members.erase(element_id);
        old_state.values = {};
        for (int member : old_state.members) old_state.values.add((*elements_)[member].values);
        (e.kind == element::kind_t::core ? old_state.cores : old_state.satellites) -= 1;
        if (old_state.members.empty()) clusters_.erase(old_cluster);
    }
    auto& target = clusters_.at(cluster_id);
    target.members.insert(element_id);
    target.values.add(e.values);
    (e.kind == element::kind_t::core ? target.cores : target.satellites) += 1;
    assignment_[element_id] = cluster_id;
    bump();
}

double clustering::similarity(int element_id, int cluster_id) const {
    return model_->similarity(*this, element_id, cluster_id);
}

bool clustering::merge_admissible(int cluster_a, int cluster_b) const {
    return model_->merge_admissible(*this, cluster_a, cluster_b);
}

clustering::element_scores clustering::scores_of(int element_id) const {
    element_scores scores;
    const int own = assignment_[element_id];
    // An element alone in its cluster is perfectly similar to it; the
    // signature model would otherwise score evidence-free singletons at the
    // name-only floor and turn them into perpetual border elements.
    scores.a = clusters_.at(own).members.size() == 1 ? 1.0 : similarity(element_id, own);
    for (const auto& [id, cluster] : clusters_) {
        (void)cluster;
        if (id == own) continue;
        const double sim = similarity(element_id, id);
        if (scores.best_other == -1 || sim > scores.b + kScoreSlack) {
            scores.best_other = id;
            scores.b = sim;
        }
    }
    if (scores.best_other == -1) scores.b = 0.0; // single cluster
    scores.s = sv_element_score(scores.a, scores.b, params_.alpha, params_.beta);
    return scores;
}

double clustering::sv_index() const {
    if (elements_->empty()) throw std::invalid_argument("sv_index: empty clustering");
    double total = 0.0;
    for (std::size_t e = 0; e < elements_->size(); ++e) total += sv_of(static_cast<int>(e));
    return total / static_cast<double>(elements_->size());
}

std::map<std::string, std::string> clustering::to_groups() const {
    std::map<std::string, std::string> groups;
    for (const auto& [id, cluster] : clusters_) {
        (void)id;
        std::vector<std::string> records;
        for (int e : cluster.members)
            records.insert(records.end(), (*elements_)[e].records.begin(), (*elements_)[e].records.end());
        std::sort(records.begin(), records.end());
        std::string joined;
        for (const auto& rec : records) {
            if (!joined.empty()) joined += ",";
            joined += rec;
        }
        char hash[32];
        std::snprintf(hash, sizeof hash, "g%016llx", static_cast<unsigned long long>(fnv1a64(joined)));
        for (const auto& rec : records) groups[rec] = hash;
    }
    return groups;
}

clustering initialize(std::shared_ptr<const std::vector<element>> elements, const grouping_params& params,
                      const cluster_similarity_model& model) {
    clustering state(elements, params, &model);
    std::vector<int> cores, satellites;
    for (std::size_t i = 0; i < elements->size(); ++i)
        ((*elements)[i].kind == element::kind_t::core ? cores : satellites).push_back(static_cast<int>(i));
    auto by_label = [&](int a, int b) { return (*elements)[a].label < (*elements)[b].label; };
    std::sort(cores.begin(), cores.end(), by_label);
    std::sort(satellites.begin(), satellites.end(), by_label);

    for (int core : cores) state.assign(core, state.create_cluster());
    for (int satellite : satellites) {
        // Only cored clusters can take satellites: a coreless cluster holds
        // at most one satellite.
        int best = -1;
        double best_sim = 0.0;
        for (int cl : state.cluster_ids()) {
            bool has_core = false;
            for (int member : state.members(cl))
                has_core |= (*elements)[member].kind == element::kind_t::core;
            if (!has_core) continue;
            const double sim = state.similarity(satellite, cl);
            if (best == -1 || sim > best_sim + kScoreSlack) {
                best = cl;
                best_sim = sim;
            }
        }
        if (best != -1 && best_sim >= params.theta_ini - kScoreSlack) {
            state.assign(satellite, best);
        } else {
            state.assign(satellite, state.create_cluster());
        }
    }
    return state;
}

std::vector<candidate_pair> find_candidates(const clustering& state, double theta_s) {
    std::map<std::pair<int, int>, candidate_pair> pairs;
    for (std::size_t e = 0; e < state.elements().size(); ++e) {
        const auto scores = state.scores_of(static_cast<int>(e));
        if (scores.best_other == -1 || scores.s > theta_s + kBorderSlack) continue;
        const int own = state.cluster_of(static_cast<int>(e));
        const auto key = std::minmax(own, scores.best_other);
        auto& pair = pairs[{key.first, key.second}];
        pair.cluster_a = key.first;
        pair.cluster_b = key.second;
        pair.borders.push_back(static_cast<int>(e));
        pair.benefit += 1.0 - scores.s;
    }
    std::vector<candidate_pair> out;
    for (auto& [key, pair] : pairs) {
        (void)key;
        out.push_back(std::move(pair));
    }
    std::sort(out.begin(), out.end(), [](const candidate_pair& lhs, const candidate_pair& rhs) {
        if (lhs.benefit != rhs.benefit) return lhs.benefit > rhs.benefit;
        if (lhs.cluster_a != rhs.cluster_a) return lhs.cluster_a < rhs.cluster_a;
        return lhs.cluster_b < rhs.cluster_b;
    });
    return out;
}

namespace {

std::set<int> affected_elements(const clustering& state, const candidate_pair& pair) {
    std::set<int> affected;
    for (std::size_t e = 0; e < state.elements().size(); ++e) {
        const int id = static_cast<int>(e);
        const int own = state.cluster_of(id);
        if (own == pair.cluster_a || own == pair.cluster_b) {
            affected.insert(id);
            continue;
        }
        const auto scores = state.scores_of(id);
        if (scores.best_other == pair.cluster_a || scores.best_other == pair.cluster_b) affected.insert(id);
    }
    return affected;
}

double affected_score(const clustering& state, const std::set<int>& affected) {
    double total = 0.0;
    for (int e : affected) total += state.sv_of(e);
    return total;
}

std::vector<std::set<int>> partition_of(const clustering& state) {
    std::vector<std::set<int>> parts;
    for (int cl : state.cluster_ids()) parts.push_back(state.members(cl));
    std::sort(parts.begin(), parts.end());
    return parts;
}

} // namespace

std::vector<reclustering_plan> enumerate_plans(const candidate_pair& pair, const clustering& state) {
    std::vector<reclustering_plan> plans;
    std::vector<std::vector<std::set<int>>> seen{partition_of(state)};
    const auto affected = affected_elements(state, pair);

    std::vector<int> borders_in_a, borders_in_b;
    for (int e : pair.borders) {
        if (state.cluster_of(e) == pair.cluster_a) borders_in_a.push_back(e);
        else if (state.cluster_of(e) == pair.cluster_b) borders_in_b.push_back(e);
    }

    auto consider = [&](const std::string& kind, clustering next) {
        if (!next.all_clusters_valid()) return;
        auto parts = partition_of(next);
        for (const auto& prior : seen)
            if (prior == parts) return;
        seen.push_back(std::move(parts));
        reclustering_plan plan{kind, std::move(next), 0.0};
        plan.score = affected_score(plan.result, affected);
        plans.push_back(std::move(plan));
    };

    // merge the two clusters (needs shared primary evidence)
    if (state.merge_admissible(pair.cluster_a, pair.cluster_b)) {
        clustering merged = state;
        const std::vector<int> moving(state.members(pair.cluster_b).begin(),
                                      state.members(pair.cluster_b).end());
        for (int e : moving) merged.assign(e, pair.cluster_a);
        consider("merge", std::move(merged));
    }

    // move the borders sitting in one cluster to the other
    if (!borders_in_a.empty()) {
        clustering next = state;
        for (int e : borders_in_a) next.assign(e, pair.cluster_b);
        consider("move_borders_ab", std::move(next));
    }
    if (!borders_in_b.empty()) {
        clustering next = state;
        for (int e : borders_in_b) next.assign(e, pair.cluster_a);
        consider("move_borders_ba", std::move(next));
    }

    // extract the borders into a fresh merged cluster; a single border is
    // covered by the move plans already, and parking it alone would always
    // buy a small score gain from the singleton convention
    if (pair.borders.size() >= 2) {
        clustering next = state;
        const int fresh = next.create_cluster();
        for (int e : pair.borders) next.assign(e, fresh);
        consider("extract_borders", std::move(next));
    }
    return plans;
}

namespace {

// Re-home every element whose closest cluster changed; repeated until stable
// or the sweep budget runs out.
void coherence_sweep(clustering& state) {
    for (int sweep = 0; sweep < 5; ++sweep) {
        bool moved = false;
        for (std::size_t e = 0; e < state.elements().size(); ++e) {
            const int id = static_cast<int>(e);
            const auto scores = state.scores_of(id);
            if (scores.best_other == -1 || scores.b <= scores.a + 1e-9) continue;
            clustering next = state;
            next.assign(id, scores.best_other);
            if (!next.all_clusters_valid()) continue;
            state = std::move(next);
            moved = true;
        }
        if (!moved) break;
    }
}

} // namespace

clustering adjust(clustering state) {
    const std::size_t guard = 10 * state.elements().size() + 20;
    for (std::size_t round = 0; round < guard; ++round) {
        const auto candidates = find_candidates(state, state.params().theta_s);
        bool accepted = false;
        for (const auto& pair : candidates) {
            const auto affected = affected_elements(state, pair);
            const double current = affected_score(state, affected);
            auto plans = enumerate_plans(pair, state);
            const reclustering_plan* best = nullptr;
            for (const auto& plan : plans)
                if (!best || plan.score > best->score) best = &plan;
            if (!best || best->score <= current + kScoreSlack) continue;
            state = best->result;
            coherence_sweep(state);
            accepted = true;
            break;
        }
        if (!accepted) break;
    }
    return state;
}

clustering cluster_block(std::shared_ptr<const std::vector<element>> elements, const grouping_params& params,
                         const cluster_similarity_model& model) {
    if (elements->empty()) return clustering(elements, params, &model);
    return adjust(initialize(std::move(elements), params, model));
}

} // namespace grouplink
