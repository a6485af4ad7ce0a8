#pragma once

// Tweet-stream corpus handling: JSONL parsing, keyword matching, the basic
// spam filter, and weekly unique-user aggregation.

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "sensecast/csv.hpp"
#include "sensecast/error.hpp"
#include "sensecast/text.hpp"
#include "sensecast/time.hpp"

namespace sensecast {

struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;
};

struct TweetRecord {
    std::string tweet_id;
    std::string author_id;
    std::string text;
    std::int64_t created_at = 0;  // epoch seconds UTC
    std::string lang;
    std::optional<GeoPoint> geo;
    std::vector<std::string> topic_keywords_hit;  // matched pattern ids
};

struct UserProfile {
    std::string user_id;
    std::string name;
    std::string screen_name;
    std::string bio;
    std::string location_raw;
    std::string profile_image_ref;  // empty = none
    std::string lang;               // account language ("en", ...)
    std::int64_t followers = 0;
    std::int64_t friends = 0;
    std::int64_t statuses = 0;
    std::int64_t favourites = 0;
    std::int64_t listed = 0;
    std::int64_t account_created_at = 0;
};

// A keyword pattern: ordered lowercase tokens, "**" matching 1..3 arbitrary
// tokens. Must contain a non-wildcard token; wildcard never first or last.
struct KeywordPattern {
    std::string pattern_id;
    std::vector<std::string> tokens;
};

constexpr const char* kGapWildcard = "**";
constexpr int kGapWildcardMinSpan = 1;
constexpr int kGapWildcardMaxSpan = 3;

// One value per consecutive 7-day UTC bin, anchored at week_start.
struct WeeklySignal {
    std::int64_t week_start = 0;  // epoch seconds, midnight UTC of bin 0
    std::vector<double> values;

    int n_weeks() const { return static_cast<int>(values.size()); }
    WeekGrid grid() const { return WeekGrid{week_start, n_weeks()}; }
};

// Logical field name -> dotted JSON path into each JSONL object.
using CorpusSchema = std::map<std::string, std::string>;

inline CorpusSchema default_corpus_schema() {
    return {
        {"tweet_id", "id"},
        {"author_id", "user.id"},
        {"text", "text"},
        {"created_at", "created_at"},
        {"lang", "user.lang"},
        {"coordinates", "coordinates"},
        {"name", "user.name"},
        {"screen_name", "user.screen_name"},
        {"bio", "user.description"},
        {"location", "user.location"},
        {"profile_image", "user.profile_image_url"},
        {"followers", "user.followers_count"},
        {"friends", "user.friends_count"},
        {"statuses", "user.statuses_count"},
        {"favourites", "user.favourites_count"},
        {"listed", "user.listed_count"},
        {"account_created_at", "user.created_at"},
    };
}

struct ParsedCorpus {
    std::vector<TweetRecord> records;
    std::map<std::string, UserProfile> profiles;  // author_id -> latest profile snapshot
    std::size_t skipped_lines = 0;                // malformed / duplicate-id lines
    std::size_t dropped_retweets = 0;
};

namespace detail {

inline const nlohmann::json* json_at_path(const nlohmann::json& obj, const std::string& dotted) {
    const nlohmann::json* cur = &obj;
    std::size_t pos = 0;
    while (pos <= dotted.size()) {
        const std::size_t dot = dotted.find('.', pos);
        const std::string key = dotted.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        if (!cur->is_object()) return nullptr;
        auto it = cur->find(key);
        if (it == cur->end()) return nullptr;
        cur = &*it;
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    return cur;
}

inline std::string need_string(const nlohmann::json& obj, const std::string& path) {
    const nlohmann::json* v = json_at_path(obj, path);
    if (!v) throw DomainError("missing field " + path);
    if (v->is_string()) return v->get<std::string>();
    if (v->is_number_integer()) return std::to_string(v->get<std::int64_t>());
    throw DomainError("field " + path + " is not a string");
}

inline std::string optional_string(const nlohmann::json& obj, const std::string& path) {
    const nlohmann::json* v = json_at_path(obj, path);
    if (!v || v->is_null()) return "";
    if (v->is_string()) return v->get<std::string>();
    return "";
}

inline std::int64_t need_count(const nlohmann::json& obj, const std::string& path) {
    const nlohmann::json* v = json_at_path(obj, path);
    if (!v || !v->is_number()) throw DomainError("missing count field " + path);
    const std::int64_t n = v->get<std::int64_t>();
    if (n < 0) throw DomainError("negative count in field " + path);
    return n;
}

inline bool is_retweet(const std::string& text) {
    const std::string t = trim(text);
    return t.rfind("RT @", 0) == 0;
}

}  // namespace detail

// Parses line-delimited JSON records. Malformed lines (bad JSON, missing or
// invalid fields, out-of-range geo, duplicate tweet ids) are counted and
// skipped. Retweets are dropped. Profiles are deduplicated by user_id,
// keeping the snapshot carried by the author's most recent tweet.
inline ParsedCorpus parse_corpus(std::istream& stream, const CorpusSchema& schema = default_corpus_schema()) {
    if (!stream) throw IoError("parse_corpus: unreadable stream");
    const auto field = [&schema](const char* logical) -> const std::string& {
        auto it = schema.find(logical);
        if (it == schema.end()) throw ConfigError(std::string("corpus schema missing entry: ") + logical);
        return it->second;
    };

    ParsedCorpus out;
    std::unordered_set<std::string> seen_ids;
    std::unordered_map<std::string, std::int64_t> profile_snapshot_time;
    std::string line;
    bool saw_line = false;
    while (std::getline(stream, line)) {
        if (trim(line).empty()) continue;
        saw_line = true;
        try {
            const nlohmann::json obj = nlohmann::json::parse(line);

            TweetRecord rec;
            rec.tweet_id = detail::need_string(obj, field("tweet_id"));
            rec.author_id = detail::need_string(obj, field("author_id"));
            rec.text = detail::need_string(obj, field("text"));
            rec.created_at = parse_timestamp(detail::need_string(obj, field("created_at")));
            rec.lang = detail::optional_string(obj, field("lang"));
            if (const nlohmann::json* coords = detail::json_at_path(obj, field("coordinates"))) {
                if (coords->is_array() && coords->size() == 2 &&
                    (*coords)[0].is_number() && (*coords)[1].is_number()) {
                    GeoPoint p;
                    p.lon = (*coords)[0].get<double>();
                    p.lat = (*coords)[1].get<double>();
                    if (p.lat < -90.0 || p.lat > 90.0 || p.lon < -180.0 || p.lon > 180.0) {
                        throw DomainError("geo out of range");
                    }
                    rec.geo = p;
                } else if (!coords->is_null()) {
                    throw DomainError("coordinates not a [lon,lat] pair");
                }
            }
            if (!seen_ids.insert(rec.tweet_id).second) throw DomainError("duplicate tweet_id");

            if (detail::is_retweet(rec.text)) {
                ++out.dropped_retweets;
                continue;
            }

            UserProfile prof;
            prof.user_id = rec.author_id;
            prof.name = detail::optional_string(obj, field("name"));
            prof.screen_name = detail::optional_string(obj, field("screen_name"));
            prof.bio = detail::optional_string(obj, field("bio"));
            prof.location_raw = detail::optional_string(obj, field("location"));
            prof.profile_image_ref = detail::optional_string(obj, field("profile_image"));
            prof.lang = rec.lang;
            prof.followers = detail::need_count(obj, field("followers"));
            prof.friends = detail::need_count(obj, field("friends"));
            prof.statuses = detail::need_count(obj, field("statuses"));
            prof.favourites = detail::need_count(obj, field("favourites"));
            prof.listed = detail::need_count(obj, field("listed"));
            prof.account_created_at = parse_timestamp(detail::need_string(obj, field("account_created_at")));

            auto it = profile_snapshot_time.find(rec.author_id);
            if (it == profile_snapshot_time.end() || rec.created_at > it->second) {
                profile_snapshot_time[rec.author_id] = rec.created_at;
                out.profiles[rec.author_id] = std::move(prof);
            }
            out.records.push_back(std::move(rec));
        } catch (const Error&) {
            ++out.skipped_lines;
        } catch (const nlohmann::json::exception&) {
            ++out.skipped_lines;
        }
    }
    if (stream.bad()) throw IoError("parse_corpus: stream read failure");
    if (!saw_line) throw EmptyCorpusError("parse_corpus: no lines in stream");
    if (out.records.empty() && out.dropped_retweets == 0) {
        throw EmptyCorpusError("parse_corpus: zero parseable lines");
    }
    return out;
}

inline ParsedCorpus parse_corpus_file(const std::string& path, const CorpusSchema& schema = default_corpus_schema()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus file: " + path);
    return parse_corpus(in, schema);
}

inline void validate_pattern(const KeywordPattern& p) {
    if (p.tokens.empty()) throw DomainError("keyword pattern '" + p.pattern_id + "' is empty");
    bool has_literal = false;
    for (const auto& t : p.tokens) {
        if (t != kGapWildcard) has_literal = true;
    }
    if (!has_literal) throw DomainError("keyword pattern '" + p.pattern_id + "' has no literal token");
    if (p.tokens.front() == kGapWildcard || p.tokens.back() == kGapWildcard) {
        throw DomainError("keyword pattern '" + p.pattern_id + "' starts or ends with the gap wildcard");
    }
}

// One pattern per line, tokens space-separated, "**" as the gap wildcard.
// The pattern id is the line itself (normalized to single spaces).
inline std::vector<KeywordPattern> load_keyword_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open keyword file: " + path);
    std::vector<KeywordPattern> patterns;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        KeywordPattern p;
        std::string tok;
        for (char c : t + " ") {
            if (c == ' ' || c == '\t') {
                if (!tok.empty()) {
                    p.tokens.push_back(tok == kGapWildcard ? tok : to_lower_ascii(tok));
                    tok.clear();
                }
            } else {
                tok += c;
            }
        }
        p.pattern_id = join_tokens(p.tokens, 0, p.tokens.size());
        validate_pattern(p);
        patterns.push_back(std::move(p));
    }
    return patterns;
}

namespace detail {

// Matches pattern elements against tokens starting at position pos.
inline bool match_at(const std::vector<std::string>& tokens, std::size_t pos,
                     const std::vector<std::string>& pat, std::size_t pi) {
    if (pi == pat.size()) return true;
    if (pos >= tokens.size()) return false;
    if (pat[pi] == kGapWildcard) {
        for (int span = kGapWildcardMinSpan; span <= kGapWildcardMaxSpan; ++span) {
            if (pos + static_cast<std::size_t>(span) > tokens.size()) break;
            if (match_at(tokens, pos + static_cast<std::size_t>(span), pat, pi + 1)) return true;
        }
        return false;
    }
    if (tokens[pos] != pat[pi]) return false;
    return match_at(tokens, pos + 1, pat, pi + 1);
}

}  // namespace detail

// Case-insensitive token-level matching: single-token patterns match any
// equal token, multi-token patterns match consecutive tokens, "**" spans 1..3
// tokens. Returns matched pattern ids in pattern order, each at most once.
inline std::vector<std::string> match_keywords(const std::string& text,
                                               const std::vector<KeywordPattern>& patterns) {
    if (patterns.empty()) throw DomainError("match_keywords: empty pattern list");
    const std::vector<std::string> tokens = tokenize(text);
    std::vector<std::string> hits;
    for (const auto& p : patterns) {
        bool matched = false;
        for (std::size_t pos = 0; pos < tokens.size() && !matched; ++pos) {
            matched = detail::match_at(tokens, pos, p.tokens, 0);
        }
        if (matched) hits.push_back(p.pattern_id);
    }
    return hits;
}

// Basic spam removal: account language "en", non-empty bio, 10 < statuses <
// 50000, followers >= 10, and at least 10 days since the account was created.
inline bool passes_spam_filter(const UserProfile& profile, std::int64_t as_of) {
    if (profile.lang != "en") return false;
    if (trim(profile.bio).empty()) return false;
    if (!(profile.statuses > 10 && profile.statuses < 50000)) return false;
    if (profile.followers < 10) return false;
    if (as_of - profile.account_created_at < 10 * kSecondsPerDay) return false;
    return true;
}

// values[w] = number of distinct authors with at least one record in bin w.
inline WeeklySignal weekly_unique_user_counts(const std::vector<TweetRecord>& records,
                                              std::int64_t week_start, int n_weeks) {
    const WeekGrid grid{week_start, n_weeks};
    std::vector<std::set<std::string>> authors(static_cast<std::size_t>(n_weeks));
    for (const auto& rec : records) {
        if (!grid.contains(rec.created_at)) {
            throw RangeError("record outside week grid: tweet_id=" + rec.tweet_id);
        }
        authors[static_cast<std::size_t>(grid.bin(rec.created_at))].insert(rec.author_id);
    }
    WeeklySignal sig;
    sig.week_start = week_start;
    sig.values.reserve(static_cast<std::size_t>(n_weeks));
    for (const auto& s : authors) sig.values.push_back(static_cast<double>(s.size()));
    return sig;
}

inline void write_signal_csv(const WeeklySignal& sig, const std::string& path) {
    csv::Writer w(path);
    w.row({"week_start", "value"});
    for (int i = 0; i < sig.n_weeks(); ++i) {
        w.row({format_date(sig.week_start + static_cast<std::int64_t>(i) * kSecondsPerWeek),
               csv::format_double(sig.values[static_cast<std::size_t>(i)])});
    }
}

inline WeeklySignal read_signal_csv(const std::string& path) {
    const csv::Table t = csv::read_file(path);
    const int ci_week = t.column("week_start");
    const int ci_value = t.column("value");
    WeeklySignal sig;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const std::int64_t ws = parse_date(t.rows[i][static_cast<std::size_t>(ci_week)]);
        if (i == 0) {
            sig.week_start = ws;
        } else if (ws != sig.week_start + static_cast<std::int64_t>(i) * kSecondsPerWeek) {
            throw DomainError("signal CSV has non-contiguous weeks at row " + std::to_string(i + 1));
        }
        const double v = csv::parse_double(t.rows[i][static_cast<std::size_t>(ci_value)]);
        if (v < 0.0) throw DomainError("negative signal value at row " + std::to_string(i + 1));
        sig.values.push_back(v);
    }
    if (sig.values.empty()) throw DomainError("signal CSV has no rows: " + path);
    return sig;
}

}  // namespace sensecast
