#include "tagnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tagnet/error.hpp"
#include "tagnet/rng.hpp"
#include "tagnet/timeutil.hpp"

namespace tagnet {

void SyntheticSpec::validate() const {
    if (communities == 0) throw InputError("synthetic spec: need at least one community");
    if (users < communities) throw InputError("synthetic spec: need at least one user per community");
    if (hashtags < communities) {
        throw InputError("synthetic spec: need at least one hashtag per community");
    }
    if (messages < hashtags) {
        throw InputError("synthetic spec: need at least as many messages as hashtags");
    }
    if (!(mixing >= 0.0 && mixing <= 1.0)) {
        throw InputError("synthetic spec: mixing must be in [0,1]");
    }
    if (phase_days.empty()) throw InputError("synthetic spec: need at least one phase");
    for (const auto d : phase_days) {
        if (d < 1) throw InputError("synthetic spec: phase lengths must be positive");
    }
}

namespace {

std::string padded(const char* prefix, std::uint32_t value, std::size_t width) {
    std::string digits = std::to_string(value);
    std::string out(prefix);
    out.append(width > digits.size() ? width - digits.size() : 0, '0');
    out += digits;
    return out;
}

// Splits `total` into parts proportional to `weights`, handing the
// rounding remainder to the earliest parts.
std::vector<std::uint32_t> proportional_split(std::uint32_t total,
                                              const std::vector<std::int64_t>& weights) {
    const std::int64_t wsum = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
    std::vector<std::uint32_t> parts(weights.size());
    std::uint32_t assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        parts[i] = static_cast<std::uint32_t>(static_cast<std::int64_t>(total) * weights[i] / wsum);
        assigned += parts[i];
    }
    for (std::size_t i = 0; assigned < total; i = (i + 1) % parts.size()) {
        ++parts[i];
        ++assigned;
    }
    return parts;
}

}  // namespace

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    Rng rng(derive_seed(spec.seed, "synth"));

    const std::uint32_t c_count = spec.communities;
    const std::size_t user_width = std::to_string(spec.users).size();
    const std::size_t tag_width = std::to_string(spec.hashtags).size();
    const std::size_t msg_width = std::to_string(spec.messages).size();

    std::vector<std::string> user_label(spec.users), tag_label(spec.hashtags);
    for (std::uint32_t i = 0; i < spec.users; ++i) user_label[i] = padded("user", i + 1, user_width);
    for (std::uint32_t j = 0; j < spec.hashtags; ++j) tag_label[j] = padded("tag", j + 1, tag_width);

    // Round-robin community assignment: community of entity i is i % C, so
    // tag rank r of community c has index r * C + c (rank 0 = anchor).
    std::vector<std::uint32_t> vocab_size(c_count, 0);
    for (std::uint32_t j = 0; j < spec.hashtags; ++j) ++vocab_size[j % c_count];

    const std::size_t phases = spec.phase_days.size();
    std::vector<std::int64_t> phase_start(phases);  // 1-based first day
    std::int64_t total_days = 0;
    for (std::size_t p = 0; p < phases; ++p) {
        phase_start[p] = total_days + 1;
        total_days += spec.phase_days[p];
    }

    // Per community: how many ranks are unlocked once phase p has begun.
    std::vector<std::vector<std::uint32_t>> unlocked(c_count);
    for (std::uint32_t c = 0; c < c_count; ++c) {
        const auto slices = proportional_split(vocab_size[c], spec.phase_days);
        unlocked[c].resize(phases);
        std::uint32_t acc = 0;
        for (std::size_t p = 0; p < phases; ++p) {
            acc += slices[p];
            unlocked[c][p] = acc;
        }
    }

    // Zipf rank weights, shared across communities. zipf_cum[r] is the
    // total weight of ranks < r; drawing from the first A ranks inverts
    // the prefix at a uniform point below zipf_cum[A].
    std::uint32_t max_vocab = 0;
    for (const auto v : vocab_size) max_vocab = std::max(max_vocab, v);
    std::vector<double> zipf_cum(max_vocab + 1, 0.0);
    for (std::uint32_t r = 0; r < max_vocab; ++r) {
        zipf_cum[r + 1] = zipf_cum[r] + 1.0 / std::pow(static_cast<double>(r + 1), 1.2);
    }
    const auto zipf_draw = [&](std::uint32_t available) -> std::uint32_t {
        const double u = rng.unit() * zipf_cum[available];
        const auto it = std::upper_bound(zipf_cum.begin(), zipf_cum.begin() + available + 1, u);
        const auto rank = static_cast<std::uint32_t>(it - zipf_cum.begin()) - 1;
        return std::min(rank, available - 1);
    };

    SyntheticCorpus out;
    out.records.reserve(spec.messages);
    for (std::uint32_t j = 0; j < spec.hashtags; ++j) {
        out.truth.tag_community.emplace(tag_label[j], j % c_count);
    }
    for (std::uint32_t i = 0; i < spec.users; ++i) {
        out.truth.user_community.emplace(user_label[i], i % c_count);
    }
    out.truth.phase_vocabulary.resize(phases);
    for (std::uint32_t j = 0; j < spec.hashtags; ++j) {
        const std::uint32_t c = j % c_count, rank = j / c_count;
        std::size_t p = 0;
        while (rank >= unlocked[c][p]) ++p;
        out.truth.phase_vocabulary[p].push_back(tag_label[j]);
    }
    for (std::size_t p = 0; p < phases; ++p) {
        out.truth.phase_ranges.emplace_back(phase_start[p],
                                            phase_start[p] + spec.phase_days[p] - 1);
    }

    const std::int64_t epoch_day0 = days_from_civil(2020, 1, 1);
    const auto emit = [&](std::uint32_t author, std::int64_t day,
                          std::vector<std::string> tags) {
        MessageRecord rec;
        rec.id = padded("msg", static_cast<std::uint32_t>(out.records.size() + 1), msg_width);
        rec.author = user_label[author];
        rec.hashtags = std::move(tags);
        rec.timestamp = (epoch_day0 + day - 1) * kSecondsPerDay +
                        static_cast<std::int64_t>(rng.below(kSecondsPerDay));
        out.records.push_back(std::move(rec));
    };

    // users_in[c]: how many users the round-robin gave community c.
    std::vector<std::uint32_t> users_in(c_count, 0);
    for (std::uint32_t i = 0; i < spec.users; ++i) ++users_in[i % c_count];
    std::vector<std::uint32_t> roll_author(c_count, 0);

    const auto ordinary = proportional_split(spec.messages - spec.hashtags, spec.phase_days);

    for (std::size_t p = 0; p < phases; ++p) {
        // Roll call: every tag debuting in this phase co-occurs with its
        // community anchor on the phase's first day, so first occurrences
        // land in the planted phase and every community is one component.
        for (std::uint32_t c = 0; c < c_count; ++c) {
            const std::uint32_t from = p == 0 ? 0 : unlocked[c][p - 1];
            for (std::uint32_t rank = from; rank < unlocked[c][p]; ++rank) {
                const std::uint32_t author = c + (roll_author[c]++ % users_in[c]) * c_count;
                std::vector<std::string> tags;
                if (rank == 0) {
                    tags.push_back(tag_label[c]);
                    if (unlocked[c][p] > 1) tags.push_back(tag_label[c_count + c]);
                } else {
                    tags.push_back(tag_label[c]);  // anchor
                    tags.push_back(tag_label[rank * c_count + c]);
                }
                emit(author, phase_start[p], std::move(tags));
            }
        }

        for (std::uint32_t k = 0; k < ordinary[p]; ++k) {
            const std::int64_t day =
                phase_start[p] + static_cast<std::int64_t>(k) * spec.phase_days[p] /
                                     static_cast<std::int64_t>(ordinary[p]);
            const auto author = static_cast<std::uint32_t>(rng.below(spec.users));
            const std::uint32_t home = author % c_count;
            std::vector<std::string> tags{tag_label[home]};  // anchor slot, never mixed
            const std::uint64_t extras = 1 + rng.below(3);
            for (std::uint64_t e = 0; e < extras; ++e) {
                std::uint32_t src = home;
                if (spec.mixing > 0.0 && rng.unit() < spec.mixing) {
                    src = static_cast<std::uint32_t>(rng.below(c_count));
                }
                const std::uint32_t rank = zipf_draw(unlocked[src][p]);
                const std::string& tag = tag_label[rank * c_count + src];
                if (std::find(tags.begin(), tags.end(), tag) == tags.end()) tags.push_back(tag);
            }
            emit(author, day, std::move(tags));
        }
    }
    return out;
}

}  // namespace tagnet
