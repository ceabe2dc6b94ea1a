#pragma once

// Message corpus ingestion: parsing raw JSONL/CSV streams into canonical
// records, hashtag normalization, and exclusion/date filtering.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tagnet {

// One message. Hashtags are normalized, deduplicated, in original order.
// An empty hashtag list is valid: the record still counts as activity,
// it just contributes no projection edges.
struct MessageRecord {
    std::string id;
    std::string author;
    std::vector<std::string> hashtags;
    std::int64_t timestamp = 0;  // UTC epoch seconds
};

struct CorpusConfig {
    std::set<std::string> excluded_hashtags{"occupy"};
    std::optional<std::int64_t> from_instant;  // inclusive
    std::optional<std::int64_t> to_instant;    // inclusive
    bool lowercase_fold = true;

    // Normalizes the exclusion set itself so comparisons are apples to apples.
    void normalize();
};

// Strips leading '#', case-folds (ASCII plus the Latin-1 supplement; full
// Unicode folding is out of scope), and trims trailing .,!?:; punctuation.
// An empty result means "discard this token". Idempotent.
std::string normalize_hashtag(std::string_view token, bool lowercase_fold = true);

// '#'-prefixed whitespace-separated tokens of a free-text field,
// normalized and deduplicated in order of first occurrence.
std::vector<std::string> extract_hashtags(std::string_view text, bool lowercase_fold = true);

enum class CorpusFormat { jsonl, csv };

struct ParseReport {
    std::uint64_t lines = 0;      // non-blank lines seen
    std::uint64_t malformed = 0;  // counted and skipped
    std::uint64_t records = 0;
};

// One record per well-formed line. JSONL lines carry id (optional), user,
// text (optional), hashtags (optional, wins over text tokenization),
// timestamp. CSV needs the exact header id,user,hashtags,timestamp with
// '|'-separated hashtags. Throws InputError if the stream is unreadable
// or more than half of the lines are malformed.
std::vector<MessageRecord> parse_records(std::istream& in, CorpusFormat format,
                                         ParseReport* report = nullptr,
                                         bool lowercase_fold = true);

std::vector<MessageRecord> parse_records_file(const std::string& path, CorpusFormat format,
                                              ParseReport* report = nullptr,
                                              bool lowercase_fold = true);

// Removes excluded tags from every record and drops records outside the
// date range. Record order is preserved; records whose tag list becomes
// empty are kept.
std::vector<MessageRecord> filter_records(std::vector<MessageRecord> records,
                                          const CorpusConfig& config);

}  // namespace tagnet
