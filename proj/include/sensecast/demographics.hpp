#pragma once

// Per-user demographic inference: gender from first names, age bucket from a
// face-annotation service, U.S. state from geotags or profile location
// strings, and per-state penetration rates.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sensecast/corpus.hpp"
#include "sensecast/csv.hpp"
#include "sensecast/error.hpp"
#include "sensecast/text.hpp"

namespace sensecast {

enum class GenderLabel { male, female, unknown };
enum class AgeBucket { under24, atLeast24, unknown };

constexpr double kAgeBucketThresholdYears = 24.0;

inline const char* to_string(GenderLabel g) {
    switch (g) {
        case GenderLabel::male: return "male";
        case GenderLabel::female: return "female";
        default: return "unknown";
    }
}

inline const char* to_string(AgeBucket a) {
    switch (a) {
        case AgeBucket::under24: return "under24";
        case AgeBucket::atLeast24: return "atLeast24";
        default: return "unknown";
    }
}

// The 50 states plus DC, with full names for location-string matching.
inline const std::vector<std::pair<std::string, std::string>>& us_states() {
    static const std::vector<std::pair<std::string, std::string>> table = {
        {"AL", "alabama"}, {"AK", "alaska"}, {"AZ", "arizona"}, {"AR", "arkansas"},
        {"CA", "california"}, {"CO", "colorado"}, {"CT", "connecticut"}, {"DE", "delaware"},
        {"DC", "district of columbia"}, {"FL", "florida"}, {"GA", "georgia"}, {"HI", "hawaii"},
        {"ID", "idaho"}, {"IL", "illinois"}, {"IN", "indiana"}, {"IA", "iowa"},
        {"KS", "kansas"}, {"KY", "kentucky"}, {"LA", "louisiana"}, {"ME", "maine"},
        {"MD", "maryland"}, {"MA", "massachusetts"}, {"MI", "michigan"}, {"MN", "minnesota"},
        {"MS", "mississippi"}, {"MO", "missouri"}, {"MT", "montana"}, {"NE", "nebraska"},
        {"NV", "nevada"}, {"NH", "new hampshire"}, {"NJ", "new jersey"}, {"NM", "new mexico"},
        {"NY", "new york"}, {"NC", "north carolina"}, {"ND", "north dakota"}, {"OH", "ohio"},
        {"OK", "oklahoma"}, {"OR", "oregon"}, {"PA", "pennsylvania"}, {"RI", "rhode island"},
        {"SC", "south carolina"}, {"SD", "south dakota"}, {"TN", "tennessee"}, {"TX", "texas"},
        {"UT", "utah"}, {"VT", "vermont"}, {"VA", "virginia"}, {"WA", "washington"},
        {"WV", "west virginia"}, {"WI", "wisconsin"}, {"WY", "wyoming"},
    };
    return table;
}

inline bool is_state_code(const std::string& code) {
    for (const auto& [c, _] : us_states()) {
        if (c == code) return true;
    }
    return false;
}

// StateCode: one of the fixed 51 two-letter codes. Construction validates.
class StateCode {
public:
    StateCode() = default;
    explicit StateCode(const std::string& code) : code_(code) {
        std::string upper = code;
        for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (!is_state_code(upper)) throw DomainError("not a U.S. state code: '" + code + "'");
        code_ = upper;
    }
    const std::string& str() const { return code_; }
    bool operator==(const StateCode& o) const { return code_ == o.code_; }
    bool operator<(const StateCode& o) const { return code_ < o.code_; }

private:
    std::string code_;
};

struct PenetrationTable {
    std::map<StateCode, double> rates;  // users per capita, relative scale; all > 0
};

struct FaceAnnotation {
    std::optional<double> age_estimate;  // years; absent = no face detected
};

// Face annotation source. The fixture-file stub is the test implementation;
// an HTTP client lives in face_http.hpp behind configuration.
class FaceAnnotationClient {
public:
    virtual ~FaceAnnotationClient() = default;
    // May throw ClientError on transport failure.
    virtual FaceAnnotation annotate(const std::string& image_ref) = 0;
};

// CSV fixture keyed by image_ref; empty age column = no face detected.
// Refs absent from the fixture are treated as no face.
class FixtureFaceClient : public FaceAnnotationClient {
public:
    static FixtureFaceClient from_csv(const std::string& path) {
        const csv::Table t = csv::read_file(path);
        const int ci_ref = t.column("image_ref");
        const int ci_age = t.column("age");
        FixtureFaceClient client;
        for (const auto& row : t.rows) {
            const std::string& age = row[static_cast<std::size_t>(ci_age)];
            FaceAnnotation ann;
            if (!age.empty()) {
                const double a = csv::parse_double(age);
                if (a <= 0.0 || a >= 120.0) throw DomainError("face fixture age out of range: " + age);
                ann.age_estimate = a;
            }
            client.annotations_[row[static_cast<std::size_t>(ci_ref)]] = ann;
        }
        return client;
    }

    FaceAnnotation annotate(const std::string& image_ref) override {
        auto it = annotations_.find(image_ref);
        if (it == annotations_.end()) return FaceAnnotation{};
        return it->second;
    }

    void set(const std::string& image_ref, FaceAnnotation ann) { annotations_[image_ref] = ann; }

private:
    std::map<std::string, FaceAnnotation> annotations_;
};

using NameDictionary = std::map<std::string, std::string>;  // lowercase first name -> male|female|ambiguous

inline NameDictionary load_name_dictionary(const std::string& path) {
    const csv::Table t = csv::read_file(path);
    const int ci_name = t.column("name");
    const int ci_label = t.column("label");
    NameDictionary dict;
    for (const auto& row : t.rows) {
        const std::string& label = row[static_cast<std::size_t>(ci_label)];
        if (label != "male" && label != "female" && label != "ambiguous") {
            throw DomainError("name dictionary label must be male/female/ambiguous, got '" + label + "'");
        }
        dict[to_lower_ascii(row[static_cast<std::size_t>(ci_name)])] = label;
    }
    return dict;
}

// First whitespace-delimited token of the display name, lowercased and
// stripped of non-letters, looked up in the dictionary. Ambiguous or absent
// names map to unknown.
inline GenderLabel infer_gender(const std::string& name, const NameDictionary& dictionary) {
    if (dictionary.empty()) throw DomainError("infer_gender: empty dictionary");
    std::string first;
    for (char c : name) {
        if (c == ' ' || c == '\t') {
            if (!first.empty()) break;
            continue;
        }
        first += c;
    }
    std::string key;
    for (char c : first) {
        if ((c >= 'a' && c <= 'z')) key += c;
        else if (c >= 'A' && c <= 'Z') key += static_cast<char>(c - 'A' + 'a');
    }
    if (key.empty()) return GenderLabel::unknown;
    auto it = dictionary.find(key);
    if (it == dictionary.end() || it->second == "ambiguous") return GenderLabel::unknown;
    return it->second == "male" ? GenderLabel::male : GenderLabel::female;
}

struct StateBox {
    double min_lat = 0.0, min_lon = 0.0, max_lat = 0.0, max_lon = 0.0;
    double area() const { return (max_lat - min_lat) * (max_lon - min_lon); }
    bool contains(double lat, double lon) const {
        return lat >= min_lat && lat <= max_lat && lon >= min_lon && lon <= max_lon;
    }
};

using StateBoxes = std::map<StateCode, std::vector<StateBox>>;  // multiple boxes per state allowed
using CityMap = std::map<std::string, StateCode>;               // lowercase city -> state

inline StateBoxes load_state_boxes(const std::string& path) {
    const csv::Table t = csv::read_file(path);
    const int ci_state = t.column("state");
    const int ci_minlat = t.column("min_lat");
    const int ci_minlon = t.column("min_lon");
    const int ci_maxlat = t.column("max_lat");
    const int ci_maxlon = t.column("max_lon");
    StateBoxes boxes;
    for (const auto& row : t.rows) {
        StateBox b;
        b.min_lat = csv::parse_double(row[static_cast<std::size_t>(ci_minlat)]);
        b.min_lon = csv::parse_double(row[static_cast<std::size_t>(ci_minlon)]);
        b.max_lat = csv::parse_double(row[static_cast<std::size_t>(ci_maxlat)]);
        b.max_lon = csv::parse_double(row[static_cast<std::size_t>(ci_maxlon)]);
        if (b.max_lat < b.min_lat || b.max_lon < b.min_lon) {
            throw DomainError("state box with inverted bounds for " + row[static_cast<std::size_t>(ci_state)]);
        }
        boxes[StateCode(row[static_cast<std::size_t>(ci_state)])].push_back(b);
    }
    return boxes;
}

inline CityMap load_city_map(const std::string& path) {
    const csv::Table t = csv::read_file(path);
    const int ci_city = t.column("city");
    const int ci_state = t.column("state");
    CityMap map;
    for (const auto& row : t.rows) {
        const std::string city = to_lower_ascii(row[static_cast<std::size_t>(ci_city)]);
        auto [it, inserted] = map.emplace(city, StateCode(row[static_cast<std::size_t>(ci_state)]));
        if (!inserted) throw DomainError("duplicate city in city map: '" + city + "'");
    }
    return map;
}

namespace detail {

// Countries whose mention in a location string marks the user as non-U.S.
// "georgia" is deliberately absent (it is also a U.S. state).
inline const std::vector<std::string>& foreign_countries() {
    static const std::vector<std::string> list = {
        "afghanistan", "argentina", "australia", "austria", "bangladesh", "belgium", "brazil",
        "canada", "chile", "china", "colombia", "cuba", "denmark", "ecuador", "egypt", "england",
        "ethiopia", "finland", "france", "germany", "ghana", "greece", "india", "indonesia",
        "iran", "iraq", "ireland", "israel", "italy", "jamaica", "japan", "kenya", "malaysia",
        "mexico", "morocco", "nepal", "netherlands", "new zealand", "nigeria", "norway",
        "pakistan", "peru", "philippines", "poland", "portugal", "romania", "russia",
        "saudi arabia", "scotland", "singapore", "south africa", "south korea", "spain",
        "sweden", "switzerland", "thailand", "turkey", "uganda", "ukraine", "united kingdom",
        "venezuela", "vietnam", "wales",
    };
    return list;
}

// True when the token phrase appears as consecutive tokens.
inline bool contains_phrase(const std::vector<std::string>& tokens, const std::vector<std::string>& phrase,
                            std::size_t* at = nullptr) {
    if (phrase.empty() || phrase.size() > tokens.size()) return false;
    for (std::size_t i = 0; i + phrase.size() <= tokens.size(); ++i) {
        bool ok = true;
        for (std::size_t j = 0; j < phrase.size(); ++j) {
            if (tokens[i + j] != phrase[j]) {
                ok = false;
                break;
            }
        }
        if (ok) {
            if (at) *at = i;
            return true;
        }
    }
    return false;
}

}  // namespace detail

// State resolution precedence:
//   1. geotag inside a bounding box (smallest box wins, then code order);
//   2. a foreign country mentioned in the location string -> unresolved;
//   3. a full state name, or a two-letter code that is uppercase in the raw
//      string or follows a comma;
//   4. longest city-name match in the gazetteer.
inline std::optional<StateCode> resolve_state(const TweetRecord& record, const UserProfile& profile,
                                              const CityMap& city_map, const StateBoxes& state_boxes) {
    if (record.geo) {
        const StateCode* best = nullptr;
        double best_area = 0.0;
        for (const auto& [code, boxes] : state_boxes) {
            for (const auto& box : boxes) {
                if (!box.contains(record.geo->lat, record.geo->lon)) continue;
                if (!best || box.area() < best_area) {
                    best = &code;
                    best_area = box.area();
                }
            }
        }
        if (best) return *best;
    }

    const std::string& raw = profile.location_raw;
    const std::vector<std::string> tokens = tokenize(raw);
    if (tokens.empty()) return std::nullopt;

    for (const auto& country : detail::foreign_countries()) {
        if (detail::contains_phrase(tokens, tokenize(country))) return std::nullopt;
    }

    // Full state names, longest first so "west virginia" beats "virginia".
    {
        std::optional<StateCode> found;
        std::size_t found_at = 0;
        std::size_t found_len = 0;
        for (const auto& [code, name] : us_states()) {
            const std::vector<std::string> phrase = tokenize(name);
            std::size_t at = 0;
            if (detail::contains_phrase(tokens, phrase, &at)) {
                if (!found || phrase.size() > found_len || (phrase.size() == found_len && at < found_at)) {
                    found = StateCode(code);
                    found_at = at;
                    found_len = phrase.size();
                }
            }
        }
        if (found) return found;
    }

    // Two-letter abbreviations: only when uppercase in the raw string or
    // directly after a comma; "in Indiana" must not mean IN.
    {
        bool after_comma = false;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            const char c = raw[i];
            if (detail::is_alnum_ascii(c)) {
                const std::size_t start = i;
                while (i < raw.size() && (detail::is_alnum_ascii(raw[i]) ||
                                          (raw[i] == '\'' && i + 1 < raw.size() && detail::is_alnum_ascii(raw[i + 1])))) {
                    ++i;
                }
                const std::string word = raw.substr(start, i - start);
                --i;
                if (word.size() == 2) {
                    const bool uppercase = word[0] >= 'A' && word[0] <= 'Z' && word[1] >= 'A' && word[1] <= 'Z';
                    if (uppercase || after_comma) {
                        std::string code = word;
                        for (char& ch : code) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
                        if (is_state_code(code)) return StateCode(code);
                    }
                }
                after_comma = false;
            } else if (c == ',') {
                after_comma = true;
            } else if (c != ' ' && c != '\t') {
                after_comma = false;
            }
        }
    }

    // Longest city-name match; earliest position breaks length ties.
    {
        const CityMap::mapped_type* best_state = nullptr;
        std::size_t best_len = 0;
        std::size_t best_at = 0;
        for (const auto& [city, state] : city_map) {
            const std::vector<std::string> phrase = tokenize(city);
            std::size_t at = 0;
            if (detail::contains_phrase(tokens, phrase, &at)) {
                if (!best_state || phrase.size() > best_len ||
                    (phrase.size() == best_len && at < best_at)) {
                    best_state = &state;
                    best_len = phrase.size();
                    best_at = at;
                }
            }
        }
        if (best_state) return *best_state;
    }

    return std::nullopt;
}

// Age bucket from the profile picture: no picture or no detected face means
// unknown; otherwise split at the 24-year threshold (24.0 itself is atLeast24).
inline AgeBucket infer_age_bucket(const UserProfile& profile, FaceAnnotationClient& face_client) {
    if (profile.profile_image_ref.empty()) return AgeBucket::unknown;
    const FaceAnnotation ann = face_client.annotate(profile.profile_image_ref);
    if (!ann.age_estimate) return AgeBucket::unknown;
    return *ann.age_estimate < kAgeBucketThresholdYears ? AgeBucket::under24 : AgeBucket::atLeast24;
}

// rate[s] = baseline users in s / population of s. Only relative magnitudes
// are meaningful; every rate must end up positive.
inline PenetrationTable compute_penetration_table(const std::map<StateCode, std::int64_t>& baseline_user_states,
                                                  const std::map<StateCode, std::int64_t>& population) {
    PenetrationTable table;
    for (const auto& [state, users] : baseline_user_states) {
        auto pop = population.find(state);
        if (pop == population.end()) {
            throw MissingPopulationError("no population estimate for state " + state.str());
        }
        if (pop->second <= 0) throw DomainError("non-positive population for state " + state.str());
        if (users <= 0) throw DomainError("penetration rate must be positive; state " + state.str() + " has no users");
        table.rates[state] = static_cast<double>(users) / static_cast<double>(pop->second);
    }
    return table;
}

inline std::map<StateCode, std::int64_t> load_population_csv(const std::string& path) {
    const csv::Table t = csv::read_file(path);
    const int ci_state = t.column("state");
    const int ci_pop = t.column("population");
    std::map<StateCode, std::int64_t> pop;
    for (const auto& row : t.rows) {
        pop[StateCode(row[static_cast<std::size_t>(ci_state)])] =
            csv::parse_i64(row[static_cast<std::size_t>(ci_pop)]);
    }
    return pop;
}

}  // namespace sensecast
