#pragma once

// Journal title normalization and fuzzy title matching.
//
// Portal source-title search only accepts alphanumeric words: '&' is spelled
// "and", hyphens and slashes separate words, and any other punctuation is
// dropped in place ("John's" -> "johns").

#include <algorithm>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "biblio/error.hpp"
#include "biblio/text.hpp"

namespace biblio {

class NormalizedName {
public:
    NormalizedName() = default;

    /// Builds a name from already-normalized tokens. Throws PreconditionError
    /// if a token is empty or holds anything but lowercase letters and digits.
    static NormalizedName from_tokens(std::vector<std::string> words, std::string original = {}) {
        for (const auto& w : words) {
            if (!valid_token(w)) throw PreconditionError("invalid normalized token '" + w + "'");
        }
        if (original.empty()) original = text::join(words, " ");
        NormalizedName n;
        n.words_ = std::move(words);
        n.original_ = std::move(original);
        return n;
    }

    const std::vector<std::string>& words() const noexcept { return words_; }
    const std::string& original() const noexcept { return original_; }
    bool empty() const noexcept { return words_.empty(); }

    /// Words joined by single spaces; the key used for exact title equality.
    std::string key() const { return text::join(words_, " "); }

    std::set<std::string> word_set() const { return {words_.begin(), words_.end()}; }

    friend bool operator==(const NormalizedName& a, const NormalizedName& b) { return a.words_ == b.words_; }

    static bool valid_token(std::string_view w) {
        if (w.empty()) return false;
        std::size_t pos = 0;
        while (pos < w.size()) {
            const auto cp = text::decode_utf8(w, pos);
            if (!cp || !text::is_alnum(*cp) || text::to_lower(*cp) != *cp) return false;
        }
        return true;
    }

private:
    std::vector<std::string> words_;
    std::string original_;
};

namespace detail {

inline bool is_word_separator(char32_t c) {
    switch (c) {
    case U' ': case U'\t': case U'\r': case U'\n': case U'\f': case U'\v':
    case U'-': case U'/': case 0xA0:
    case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2014: case 0x2015:
        return true;
    default:
        return false;
    }
}

}  // namespace detail

/// Normalizes a raw journal title into lowercase alphanumeric words.
/// Throws PreconditionError("unnormalizable title") when nothing survives.
inline NormalizedName normalize_title(std::string_view raw) {
    std::vector<std::string> words;
    std::string current;
    const auto flush = [&] {
        if (!current.empty()) words.push_back(std::move(current));
        current.clear();
    };

    std::size_t pos = 0;
    while (pos < raw.size()) {
        const std::size_t start = pos;
        const auto cp = text::decode_utf8(raw, pos);
        if (!cp) {  // stray byte: treat like any other punctuation
            pos = start + 1;
            continue;
        }
        if (*cp == U'&') {
            flush();
            words.emplace_back("and");
        } else if (detail::is_word_separator(*cp)) {
            flush();
        } else if (text::is_alnum(*cp)) {
            text::append_utf8(current, text::to_lower(*cp));
        }
    }
    flush();

    if (words.empty()) throw PreconditionError("unnormalizable title: '" + std::string(raw) + "'");
    return NormalizedName::from_tokens(std::move(words), std::string(raw));
}

/// Emulates Python's str.title() on normalized words: first character of
/// each word uppercased. Wrong for acronyms ("JAMA" comes out "Jama").
inline std::string render_title_case(const NormalizedName& name) {
    std::string out;
    for (const auto& w : name.words()) {
        if (!out.empty()) out += ' ';
        std::size_t pos = 0;
        const auto first = text::decode_utf8(w, pos);
        text::append_utf8(out, text::to_upper(*first));
        out.append(w, pos);
    }
    return out;
}

/// True when the shared distinct words cover strictly more than 75% of the
/// distinct words of both names.
inline bool word_overlap_match(const NormalizedName& a, const NormalizedName& b) {
    const auto sa = a.word_set();
    const auto sb = b.word_set();
    if (sa.empty() || sb.empty()) return false;
    std::size_t shared = 0;
    for (const auto& w : sa) shared += sb.count(w);
    // shared/|A| > 3/4  <=>  4*shared > 3*|A|, kept in integers so 0.75 is exact
    return 4 * shared > 3 * sa.size() && 4 * shared > 3 * sb.size();
}

}  // namespace biblio
