#pragma once

// Deterministic synthetic corpus generator with planted communities and a
// per-phase vocabulary schedule, used as the ground-truth oracle for
// end-to-end tests.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "tagnet/corpus.hpp"

namespace tagnet {

struct SyntheticSpec {
    std::uint32_t users = 300;
    std::uint32_t hashtags = 600;
    std::uint32_t messages = 10000;
    std::uint32_t communities = 6;
    double mixing = 0.1;                          // per-tag-slot foreign draw probability
    std::vector<std::int64_t> phase_days{40, 80, 55};  // length of each phase, days
    std::uint64_t seed = 1;

    void validate() const;  // throws InputError
};

struct PlantedTruth {
    std::unordered_map<std::string, std::uint32_t> tag_community;
    std::unordered_map<std::string, std::uint32_t> user_community;
    std::vector<std::vector<std::string>> phase_vocabulary;  // tags debuting per phase
    std::vector<std::pair<std::int64_t, std::int64_t>> phase_ranges;  // 1-based inclusive days
};

struct SyntheticCorpus {
    std::vector<MessageRecord> records;
    PlantedTruth truth;
};

// Users and hashtags are assigned to communities round-robin. Every
// message carries its community's anchor tag (the community's rank-0
// hashtag) plus 1..3 further tags drawn with Zipf-weighted ranks from the
// vocabulary already unlocked by the current phase; each of those slots
// is foreign (uniform over communities) with probability `mixing`. A
// roll-call pass at the start of each phase guarantees that every tag's
// first occurrence lands in its planted phase. Fully determined by seed.
SyntheticCorpus generate_synthetic(const SyntheticSpec& spec);

}  // namespace tagnet
