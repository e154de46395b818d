#pragma once

// Portal search URLs, relative to the portal base address.
//
//   exact:    results/results.uri?src=s&sot=a&s=EXACTSRCTITLE(energy+and+environmental+science)
//             +AND+PUBYEAR+>+2005&cluster=scoexactsrctitle,"Energy+And+Environmental+Science",t
//   relaxed:  same without the cluster term and with SRCTITLE(...)
//   cluster:  exact form, with the portal's own source title verbatim in the cluster term

#include <string>
#include <string_view>

#include "biblio/names.hpp"
#include "biblio/text.hpp"

namespace biblio::urls {

inline constexpr std::string_view kResultsPath = "results/results.uri?src=s&sot=a&s=";

namespace detail {

inline std::string plus_joined(const std::vector<std::string>& words) { return text::join(words, "+"); }

inline std::string year_clause(int year_floor) { return "+AND+PUBYEAR+>+" + std::to_string(year_floor); }

/// Spaces become '+'; characters that would end or corrupt the query are
/// percent-encoded. Everything else is passed through as the portal lists it.
inline std::string cluster_value(std::string_view title) {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    for (const char c : title) {
        const auto u = static_cast<unsigned char>(c);
        if (c == ' ') {
            out += '+';
        } else if (c == '&' || c == '+' || c == '#' || c == '%' || c == '"' || c == '?' || u < 0x20) {
            out += '%';
            out += kHex[u >> 4];
            out += kHex[u & 0xF];
        } else {
            out += c;
        }
    }
    return out;
}

}  // namespace detail

inline std::string exact_query_url(const NormalizedName& name, int year_floor) {
    return std::string(kResultsPath) + "EXACTSRCTITLE(" + detail::plus_joined(name.words()) + ")" +
           detail::year_clause(year_floor) + "&cluster=scoexactsrctitle,\"" +
           detail::cluster_value(render_title_case(name)) + "\",t";
}

inline std::string relaxed_query_url(const NormalizedName& name, int year_floor) {
    return std::string(kResultsPath) + "SRCTITLE(" + detail::plus_joined(name.words()) + ")" +
           detail::year_clause(year_floor);
}

inline std::string cluster_query_url(std::string_view verbatim_source_title, int year_floor) {
    const auto name = normalize_title(verbatim_source_title);
    return std::string(kResultsPath) + "EXACTSRCTITLE(" + detail::plus_joined(name.words()) + ")" +
           detail::year_clause(year_floor) + "&cluster=scoexactsrctitle,\"" +
           detail::cluster_value(verbatim_source_title) + "\",t";
}

}  // namespace biblio::urls
