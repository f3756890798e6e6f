#include "grouplink/synth.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace grouplink {

void synth_spec::validate() const {
    if (chains < 0 || singletons < 0) throw std::invalid_argument("synth: negative counts");
    if (chains > 0 && (chain_size_min < 1 || chain_size_max < chain_size_min))
        throw std::invalid_argument("synth: bad chain size range");
    for (double rate : {local_value_rate, wrong_name_rate, wrong_url_rate, null_dominant_rate})
        if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("synth: rates must be in [0,1]");
}

schema synth_schema() {
    return schema({{"name", attribute_role::common_value, false},
                   {"phone", attribute_role::dominant_value, false},
                   {"url", attribute_role::dominant_value, true},
                   {"category", attribute_role::multi_value, true},
                   {"location", attribute_role::multi_value, false}});
}

namespace {

const char* kCategories[] = {"restaurant",  "hardware",  "grocery", "pharmacy", "bank", "clothing",
                             "electronics", "furniture", "salon",   "bakery",   "fuel", "books"};
const char* kStates[] = {"al", "ak", "az", "ca", "co", "fl", "ga", "il", "in", "md",
                         "mi", "nj", "ny", "oh", "pa", "sd", "tx", "ut", "wa", "wv"};

std::string syllable_name(std::mt19937_64& rng, int syllables) {
    static const char* consonants = "bcdfgklmnprstvz";
    static const char* vowels = "aeiou";
    std::string out;
    for (int i = 0; i < syllables; ++i) {
        out.push_back(consonants[rng() % 15]);
        out.push_back(vowels[rng() % 5]);
    }
    return out;
}

// Random digit strings: sequential numbers would sit within the string
// similarity match threshold of each other.
std::string fresh_number(std::mt19937_64& rng, std::set<std::string>& used, std::size_t digits) {
    while (true) {
        std::string out;
        for (std::size_t i = 0; i < digits; ++i) out.push_back(static_cast<char>('0' + rng() % 10));
        if (used.insert(out).second) return out;
    }
}

} // namespace

std::pair<dataset, gold_standard> generate_synthetic(const synth_spec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    auto chance = [&rng](double rate) {
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < rate;
    };

    dataset data;
    data.schema = synth_schema();
    gold_standard gold;
    int next_id = 0;
    auto fresh_id = [&next_id] {
        char buf[16];
        std::snprintf(buf, sizeof buf, "r%06d", next_id++);
        return std::string(buf);
    };

    struct chain_info {
        std::string name;
        std::string phone;
        std::string url;
        std::string category;
        int size = 0;
    };
    std::vector<chain_info> chains(static_cast<std::size_t>(spec.chains));
    std::set<std::string> used_numbers;
    const std::string shared_stem = syllable_name(rng, 4) + " " + syllable_name(rng, 3);
    const std::string wrong_name = syllable_name(rng, 4) + " " + syllable_name(rng, 3) + " group";
    for (int i = 0; i < spec.chains; ++i) {
        auto& chain = chains[i];
        chain.name = spec.shared_base_name ? shared_stem : syllable_name(rng, 4) + " " + syllable_name(rng, 3);
        char url[48];
        std::snprintf(url, sizeof url, "%s%04d", syllable_name(rng, 3).c_str(), i);
        chain.phone = fresh_number(rng, used_numbers, 10);
        chain.url = url;
        chain.category = kCategories[rng() % 12];
        chain.size = spec.chain_size_min +
                     (spec.chain_size_max > spec.chain_size_min
                          ? static_cast<int>(rng() % static_cast<std::uint64_t>(spec.chain_size_max - spec.chain_size_min + 1))
                          : 0);
    }

    for (int i = 0; i < spec.chains; ++i) {
        const auto& chain = chains[i];
        const int wrong_url_members = static_cast<int>(std::ceil(spec.wrong_url_rate * chain.size - 1e-9));
        const int wrong_name_members = static_cast<int>(std::ceil(spec.wrong_name_rate * chain.size - 1e-9));
        const int null_members = static_cast<int>(std::ceil(spec.null_dominant_rate * chain.size - 1e-9));
        for (int member = 0; member < chain.size; ++member) {
            record rec;
            rec.id = fresh_id();
            gold[rec.id] = "chain" + std::to_string(i);

            std::string name = chain.name;
            bool local_phone = chance(spec.local_value_rate);
            bool drop_url = chance(spec.local_value_rate);
            if (local_phone && drop_url) drop_url = false; // keep at least one primary dominant value

            rec.values["name"].insert(name);
            if (local_phone) {
                rec.values["phone"].insert(fresh_number(rng, used_numbers, 10));
            } else {
                rec.values["phone"].insert(chain.phone);
            }
            if (!drop_url) rec.values["url"].insert(chain.url);
            rec.values["category"].insert(normalize_value(chain.category));
            if (chance(0.3)) rec.values["category"].insert(kCategories[rng() % 12]);
            rec.values["location"].insert(kStates[rng() % 20]);

            // Correlated error injection hits a deterministic prefix of the
            // chain so wrong names and wrong URLs land on the same records.
            // Victims keep their own primary phone: the wrong URL then makes
            // them bridges between the two chains rather than records
            // indistinguishable from the other chain's members.
            if (member < wrong_url_members && spec.chains > 1 && i + 1 < spec.chains) {
                rec.values["url"].clear();
                rec.values["url"].insert(chains[i + 1].url);
                rec.values["phone"].clear();
                rec.values["phone"].insert(chain.phone);
            }
            if (member < wrong_name_members) {
                rec.values["name"].clear();
                rec.values["name"].insert(wrong_name);
            }
            if (member >= chain.size - null_members) {
                rec.values["phone"].clear();
                rec.values["url"].clear();
            }
            for (auto& [attr, values] : rec.values) {
                (void)attr;
                std::set<std::string> normalized;
                for (const auto& value : values) normalized.insert(normalize_value(value));
                normalized.erase("");
                values = std::move(normalized);
            }
            data.records.push_back(std::move(rec));
        }
    }

    for (int i = 0; i < spec.singletons; ++i) {
        record rec;
        rec.id = fresh_id();
        gold[rec.id] = "solo" + std::to_string(i);
        rec.values["name"].insert(syllable_name(rng, 4) + " " + syllable_name(rng, 2));
        rec.values["phone"].insert(fresh_number(rng, used_numbers, 10));
        if (chance(0.5)) rec.values["url"].insert(syllable_name(rng, 4));
        rec.values["category"].insert(kCategories[rng() % 12]);
        rec.values["location"].insert(kStates[rng() % 20]);
        data.records.push_back(std::move(rec));
    }
    return {std::move(data), std::move(gold)};
}

} // namespace grouplink
