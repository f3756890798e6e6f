#pragma once

#include <cstdint>
#include <utility>

#include "grouplink/schema.hpp"

namespace grouplink {

// Generation recipe for planted-chain benchmark data. Chains share a name
// class, one primary phone and one primary URL; members deviate through
// local values and injected errors. Everything is deterministic in the seed.
struct synth_spec {
    int chains = 10;
    int chain_size_min = 2;
    int chain_size_max = 20;
    int singletons = 0;
    double local_value_rate = 0.2;   // member carries a local phone or drops the URL
    double wrong_name_rate = 0.0;    // fraction per chain given one shared wrong name
    double wrong_url_rate = 0.0;     // fraction per chain given the next chain's URL
    double null_dominant_rate = 0.0; // fraction per chain with phone and URL blanked
    bool shared_base_name = false;   // all chains use one name (hard, single-block shape)
    std::uint64_t seed = 1;

    void validate() const;
};

/// The fixed schema synthetic data is generated against:
/// name (common), phone (dominant), url (dominant, multi), category (multi),
/// location (multi).
schema synth_schema();

std::pair<dataset, gold_standard> generate_synthetic(const synth_spec& spec);

} // namespace grouplink
