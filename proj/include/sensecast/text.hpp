#pragma once

// Shared tokenization for keyword matching and n-gram features: lowercase,
// split on non-alphanumeric, keep apostrophes between letters ("don't" stays
// one token). Bytes outside ASCII act as separators; non-English tokenization
// is out of scope.

#include <string>
#include <vector>

namespace sensecast {

namespace detail {

inline bool is_alnum_ascii(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

inline char lower_ascii(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace detail

inline std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (detail::is_alnum_ascii(c)) {
            cur += detail::lower_ascii(c);
        } else if (c == '\'' && !cur.empty() && i + 1 < text.size() &&
                   detail::is_alnum_ascii(text[i + 1])) {
            cur += c;
        } else if (!cur.empty()) {
            tokens.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    return tokens;
}

inline std::string to_lower_ascii(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = detail::lower_ascii(c);
    return out;
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\n' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\n' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

// Joins token range [begin, begin+len) with single spaces; the canonical
// n-gram key used by the vocabulary.
inline std::string join_tokens(const std::vector<std::string>& tokens, std::size_t begin, std::size_t len) {
    std::string out;
    for (std::size_t i = 0; i < len; ++i) {
        if (i) out += ' ';
        out += tokens[begin + i];
    }
    return out;
}

}  // namespace sensecast
