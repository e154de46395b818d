#pragma once

// Facet-panel markup of a portal results page.
//
// A facet is an unordered list identified by its id; each list item carries
// the facet value in a <span class="btnText"> and the number of matching
// documents in a sibling <span class="btnBadge">:
//
//   <ul id="cluster_SUBJAREA">
//     <li><span class="btnText">Social Sciences</span><span class="btnBadge">2192</span></li>
//   </ul>
//
// The reader is a forgiving tokenizer, not a DOM builder: unclosed <li>,
// missing </ul>, unquoted attributes, comments and script blocks are all
// tolerated.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "biblio/text.hpp"

namespace biblio::html {

inline constexpr std::string_view kSubjectAreaFacet = "cluster_SUBJAREA";
inline constexpr std::string_view kSourceTitleFacet = "cluster_EXACTSRCTITLE";

using FacetEntries = std::vector<std::pair<std::string, std::uint64_t>>;

inline std::string escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&#39;"; break;
        default: out += c;
        }
    }
    return out;
}

inline std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out += s[i++];
            continue;
        }
        const auto semi = s.find(';', i);
        if (semi == std::string_view::npos || semi - i > 10) {
            out += s[i++];
            continue;
        }
        const auto name = s.substr(i + 1, semi - i - 1);
        std::optional<char32_t> cp;
        if (name == "amp") cp = U'&';
        else if (name == "lt") cp = U'<';
        else if (name == "gt") cp = U'>';
        else if (name == "quot") cp = U'"';
        else if (name == "apos") cp = U'\'';
        else if (name == "nbsp") cp = U' ';
        else if (name.size() > 1 && name[0] == '#') {
            const bool hex = name[1] == 'x' || name[1] == 'X';
            const auto digits = name.substr(hex ? 2 : 1);
            std::uint32_t v = 0;
            const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v, hex ? 16 : 10);
            if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty() && v > 0 && v <= 0x10FFFF) {
                cp = v;
            }
        }
        if (!cp) {
            out += s[i++];
            continue;
        }
        text::append_utf8(out, *cp);
        i = semi + 1;
    }
    return out;
}

namespace detail {

struct Tag {
    std::string name;  // lowercase
    bool closing = false;
    std::vector<std::pair<std::string, std::string>> attributes;  // lowercase names, decoded values

    std::optional<std::string_view> attribute(std::string_view attr) const {
        for (const auto& [k, v] : attributes) {
            if (k == attr) return v;
        }
        return std::nullopt;
    }

    bool has_class(std::string_view cls) const {
        const auto value = attribute("class");
        if (!value) return false;
        for (const auto& c : text::split(*value, ' ')) {
            if (c == cls) return true;
        }
        return false;
    }
};

inline bool name_char(char c) { return text::ascii_alnum(c) || c == '-' || c == '_' || c == ':'; }

/// Parses the tag starting at html[pos] == '<'. On success pos is past '>'.
inline std::optional<Tag> read_tag(std::string_view html, std::size_t& pos) {
    std::size_t i = pos + 1;
    Tag tag;
    if (i < html.size() && html[i] == '/') {
        tag.closing = true;
        ++i;
    }
    if (i >= html.size() || !text::ascii_alnum(html[i])) return std::nullopt;
    while (i < html.size() && name_char(html[i])) tag.name += text::ascii_lower(html[i++]);

    while (i < html.size()) {
        while (i < html.size() && (text::kWhitespace.find(html[i]) != std::string_view::npos || html[i] == '/')) ++i;
        if (i >= html.size()) break;
        if (html[i] == '>') {
            pos = i + 1;
            return tag;
        }
        std::string attr;
        while (i < html.size() && html[i] != '=' && html[i] != '>' && html[i] != '/' &&
               text::kWhitespace.find(html[i]) == std::string_view::npos) {
            attr += text::ascii_lower(html[i++]);
        }
        while (i < html.size() && text::kWhitespace.find(html[i]) != std::string_view::npos) ++i;
        std::string value;
        if (i < html.size() && html[i] == '=') {
            ++i;
            while (i < html.size() && text::kWhitespace.find(html[i]) != std::string_view::npos) ++i;
            if (i < html.size() && (html[i] == '"' || html[i] == '\'')) {
                const char quote = html[i++];
                const auto end = html.find(quote, i);
                if (end == std::string_view::npos) return std::nullopt;
                value = std::string(html.substr(i, end - i));
                i = end + 1;
            } else {
                while (i < html.size() && html[i] != '>' && text::kWhitespace.find(html[i]) == std::string_view::npos) {
                    value += html[i++];
                }
            }
        }
        if (!attr.empty()) tag.attributes.emplace_back(std::move(attr), decode_entities(value));
    }
    return std::nullopt;  // unterminated tag
}

inline std::string collapse_whitespace(std::string_view s) {
    std::string out;
    bool pending_space = false;
    for (const char c : s) {
        if (text::kWhitespace.find(c) != std::string_view::npos) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out += ' ';
        pending_space = false;
        out += c;
    }
    return out;
}

inline std::optional<std::uint64_t> badge_count(std::string_view badge) {
    std::string digits;
    for (const char c : badge) {
        if (c >= '0' && c <= '9') digits += c;
    }
    if (digits.empty()) return std::nullopt;
    return text::parse_int<std::uint64_t>(digits);
}

}  // namespace detail

/// Extracts (value, count) pairs from every list whose id is `list_id`.
/// Values repeated across items are summed; order is first appearance.
/// A missing badge counts as 1. No matching list yields an empty result.
inline FacetEntries parse_facet_list(std::string_view html, std::string_view list_id) {
    FacetEntries entries;
    const auto add = [&](std::string name, std::uint64_t count) {
        for (auto& [n, c] : entries) {
            if (n == name) {
                c += count;
                return;
            }
        }
        entries.emplace_back(std::move(name), count);
    };

    enum class Capture { None, Text, Badge };
    Capture capture = Capture::None;
    int capture_depth = 0;  // spans nested inside the captured one
    int list_depth = 0;     // >0 while inside the target list
    bool in_item = false;
    std::string item_text, item_badge, buffer;
    bool have_text = false, have_badge = false;

    const auto end_capture = [&] {
        if (capture == Capture::Text) {
            item_text += buffer;
            have_text = true;
        } else if (capture == Capture::Badge) {
            item_badge += buffer;
            have_badge = true;
        }
        buffer.clear();
        capture = Capture::None;
        capture_depth = 0;
    };
    const auto flush_item = [&] {
        if (capture != Capture::None) end_capture();
        if (in_item && have_text) {
            auto name = detail::collapse_whitespace(decode_entities(item_text));
            if (!name.empty()) {
                const auto count = have_badge ? detail::badge_count(decode_entities(item_badge)) : std::nullopt;
                add(std::move(name), count.value_or(1));
            }
        }
        in_item = false;
        have_text = have_badge = false;
        item_text.clear();
        item_badge.clear();
    };

    std::size_t pos = 0;
    while (pos < html.size()) {
        const char c = html[pos];
        if (c != '<') {
            if (capture != Capture::None) buffer += c;
            ++pos;
            continue;
        }
        if (html.substr(pos, 4) == "<!--") {
            const auto end = html.find("-->", pos + 4);
            pos = end == std::string_view::npos ? html.size() : end + 3;
            continue;
        }
        if (html.substr(pos, 2) == "<!" || html.substr(pos, 2) == "<?") {
            const auto end = html.find('>', pos);
            pos = end == std::string_view::npos ? html.size() : end + 1;
            continue;
        }
        std::size_t next = pos;
        const auto tag = detail::read_tag(html, next);
        if (!tag) {
            if (capture != Capture::None) buffer += c;
            ++pos;
            continue;
        }
        pos = next;

        if (!tag->closing && (tag->name == "script" || tag->name == "style")) {
            const std::string close = "</" + tag->name;
            std::size_t i = pos;
            while (i < html.size()) {
                const auto found = html.find("</", i);
                if (found == std::string_view::npos) {
                    i = html.size();
                    break;
                }
                if (text::iequals(html.substr(found, close.size()), close)) {
                    i = found;
                    break;
                }
                i = found + 2;
            }
            pos = i;
            continue;
        }

        if (tag->name == "ul") {
            if (tag->closing) {
                if (list_depth > 0 && --list_depth == 0) flush_item();
            } else if (list_depth > 0) {
                ++list_depth;
            } else if (tag->attribute("id") == list_id) {
                list_depth = 1;
            }
            continue;
        }
        if (list_depth == 0) continue;

        if (tag->name == "li" && list_depth == 1) {
            flush_item();
            in_item = !tag->closing;
            continue;
        }
        if (tag->name == "span") {
            if (tag->closing) {
                if (capture != Capture::None) {
                    if (capture_depth == 0) end_capture();
                    else --capture_depth;
                }
            } else if (capture != Capture::None) {
                ++capture_depth;
            } else if (tag->has_class("btnText")) {
                if (have_text) flush_item();  // <li> omitted entirely
                in_item = true;
                capture = Capture::Text;
            } else if (tag->has_class("btnBadge")) {
                capture = Capture::Badge;
            }
        }
    }
    flush_item();
    return entries;
}

/// Renders one facet list in the portal's markup.
inline std::string render_facet_list(std::string_view list_id, const FacetEntries& entries) {
    std::string out = "<ul id=\"" + std::string(list_id) + "\" class=\"facetList\">\n";
    for (const auto& [name, count] : entries) {
        out += "  <li><span class=\"btnText\">" + escape(name) + "</span> <span class=\"btnBadge\">" +
               std::to_string(count) + "</span></li>\n";
    }
    out += "</ul>\n";
    return out;
}

}  // namespace biblio::html
