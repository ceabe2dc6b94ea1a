#include "tagnet/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <unordered_set>

#include "json.hpp"
#include "tagnet/error.hpp"
#include "tagnet/timeutil.hpp"

namespace tagnet {

namespace {

bool is_trailing_punct(char c) {
    return c == '.' || c == ',' || c == '!' || c == '?' || c == ':' || c == ';';
}

// ASCII + Latin-1 supplement lowercasing over UTF-8 bytes. Bytes outside
// those ranges pass through untouched.
void fold_case(std::string& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (c >= 'A' && c <= 'Z') {
            s[i] = static_cast<char>(c + 32);
        } else if (c == 0xC3 && i + 1 < s.size()) {
            unsigned char d = static_cast<unsigned char>(s[i + 1]);
            // U+00C0..U+00DE -> U+00E0..U+00FE, skipping the multiply sign
            if (d >= 0x80 && d <= 0x9E && d != 0x97) s[i + 1] = static_cast<char>(d + 0x20);
            ++i;
        }
    }
}

std::vector<std::string> dedup_in_order(std::vector<std::string> tags) {
    std::unordered_set<std::string> seen;
    std::vector<std::string> out;
    out.reserve(tags.size());
    for (auto& t : tags) {
        if (seen.insert(t).second) out.push_back(std::move(t));
    }
    return out;
}

}  // namespace

void CorpusConfig::normalize() {
    std::set<std::string> fixed;
    for (const auto& t : excluded_hashtags) {
        std::string n = normalize_hashtag(t, lowercase_fold);
        if (!n.empty()) fixed.insert(std::move(n));
    }
    excluded_hashtags = std::move(fixed);
}

std::string normalize_hashtag(std::string_view token, bool lowercase_fold) {
    std::size_t begin = 0;
    while (begin < token.size() && token[begin] == '#') ++begin;
    std::size_t end = token.size();
    while (end > begin && is_trailing_punct(token[end - 1])) --end;
    std::string out(token.substr(begin, end - begin));
    if (lowercase_fold) fold_case(out);
    return out;
}

std::vector<std::string> extract_hashtags(std::string_view text, bool lowercase_fold) {
    std::vector<std::string> tags;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j > i && text[i] == '#') {
            std::string tag = normalize_hashtag(text.substr(i, j - i), lowercase_fold);
            if (!tag.empty()) tags.push_back(std::move(tag));
        }
        i = j;
    }
    return dedup_in_order(std::move(tags));
}

namespace {

// Minimal RFC-4180 row split: quoted fields, "" escapes.
bool split_csv_row(const std::string& line, std::vector<std::string>& fields) {
    fields.clear();
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) return false;  // unterminated quote
    fields.push_back(std::move(cur));
    return true;
}

std::vector<std::string> split_pipe_tags(const std::string& s, bool fold) {
    std::vector<std::string> tags;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t bar = s.find('|', start);
        std::string_view piece(s.data() + start,
                               (bar == std::string::npos ? s.size() : bar) - start);
        if (!piece.empty()) {
            std::string tag = normalize_hashtag(piece, fold);
            if (!tag.empty()) tags.push_back(std::move(tag));
        }
        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    return dedup_in_order(std::move(tags));
}

bool parse_jsonl_line(const std::string& line, std::uint64_t line_no, bool fold,
                      MessageRecord& rec) {
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return false;
    if (!j.contains("user") || !j["user"].is_string()) return false;
    rec.author = j["user"].get<std::string>();
    if (rec.author.empty()) return false;
    if (!j.contains("timestamp") || !j["timestamp"].is_string()) return false;
    auto ts = parse_instant(j["timestamp"].get<std::string>());
    if (!ts) return false;
    rec.timestamp = *ts;

    if (j.contains("id") && j["id"].is_string() && !j["id"].get<std::string>().empty()) {
        rec.id = j["id"].get<std::string>();
    } else {
        rec.id = "line-" + std::to_string(line_no);
    }

    rec.hashtags.clear();
    if (j.contains("hashtags") && j["hashtags"].is_array()) {
        std::vector<std::string> tags;
        for (const auto& t : j["hashtags"]) {
            if (!t.is_string()) return false;
            std::string tag = normalize_hashtag(t.get<std::string>(), fold);
            if (!tag.empty()) tags.push_back(std::move(tag));
        }
        rec.hashtags = dedup_in_order(std::move(tags));
    } else if (j.contains("text") && j["text"].is_string()) {
        rec.hashtags = extract_hashtags(j["text"].get<std::string>(), fold);
    }
    return true;
}

bool parse_csv_line(const std::string& line, bool fold, MessageRecord& rec,
                    std::uint64_t line_no) {
    std::vector<std::string> fields;
    if (!split_csv_row(line, fields) || fields.size() != 4) return false;
    rec.id = fields[0].empty() ? "line-" + std::to_string(line_no) : fields[0];
    rec.author = fields[1];
    if (rec.author.empty()) return false;
    auto ts = parse_instant(fields[3]);
    if (!ts) return false;
    rec.timestamp = *ts;
    rec.hashtags = split_pipe_tags(fields[2], fold);
    return true;
}

}  // namespace

std::vector<MessageRecord> parse_records(std::istream& in, CorpusFormat format,
                                         ParseReport* report, bool lowercase_fold) {
    if (!in.good()) throw InputError("unreadable input stream");

    std::vector<MessageRecord> records;
    ParseReport rep;
    std::string line;
    std::uint64_t line_no = 0;
    bool saw_header = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        if (format == CorpusFormat::csv && !saw_header) {
            if (line != "id,user,hashtags,timestamp")
                throw InputError("csv header must be id,user,hashtags,timestamp");
            saw_header = true;
            continue;
        }

        ++rep.lines;
        MessageRecord rec;
        bool ok = format == CorpusFormat::jsonl
                      ? parse_jsonl_line(line, line_no, lowercase_fold, rec)
                      : parse_csv_line(line, lowercase_fold, rec, line_no);
        if (ok) {
            records.push_back(std::move(rec));
        } else {
            ++rep.malformed;
        }
    }
    if (in.bad()) throw InputError("I/O error while reading input");

    rep.records = records.size();
    if (rep.lines > 0 && rep.malformed * 2 > rep.lines)
        throw InputError("schema error: " + std::to_string(rep.malformed) + " of " +
                         std::to_string(rep.lines) + " lines malformed");
    if (report) *report = rep;
    return records;
}

std::vector<MessageRecord> parse_records_file(const std::string& path, CorpusFormat format,
                                              ParseReport* report, bool lowercase_fold) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return parse_records(in, format, report, lowercase_fold);
}

std::vector<MessageRecord> filter_records(std::vector<MessageRecord> records,
                                          const CorpusConfig& config) {
    std::vector<MessageRecord> out;
    out.reserve(records.size());
    for (auto& rec : records) {
        if (config.from_instant && rec.timestamp < *config.from_instant) continue;
        if (config.to_instant && rec.timestamp > *config.to_instant) continue;
        if (!config.excluded_hashtags.empty()) {
            std::erase_if(rec.hashtags, [&](const std::string& t) {
                return config.excluded_hashtags.count(t) > 0;
            });
        }
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace tagnet
