#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "biblio/error.hpp"

namespace biblio {

inline constexpr const char* kSocialSciences = "Social Sciences";

/// One row of the impact-factor ranking.
struct JournalRecord {
    int rank = 0;       // 1 = highest JIF
    std::string title;  // as printed in the ranking
    double jif = 0.0;

    friend bool operator==(const JournalRecord&, const JournalRecord&) = default;
};

/// One indexed publication.
struct DocumentRecord {
    std::string source_title;
    int year = 0;
    std::vector<std::string> keywords;
    /// False when the portal exposes no keyword data for the record (a null
    /// keyword list in the fixture); keyword counts over such records are
    /// reported as "Null" rather than zero.
    bool keywords_available = true;
    std::vector<std::string> subject_areas;
    std::vector<std::string> authors;
    std::vector<std::string> countries;

    friend bool operator==(const DocumentRecord&, const DocumentRecord&) = default;
};

/// Inclusive publication-year range.
struct YearWindow {
    int first = 0;
    int last = 0;

    constexpr bool contains(int year) const noexcept { return year >= first && year <= last; }

    void validate() const {
        if (first > last) {
            throw PreconditionError("inverted year window " + std::to_string(first) + "-" +
                                    std::to_string(last));
        }
    }

    friend bool operator==(const YearWindow&, const YearWindow&) = default;
};

/// Subject-area name -> number of indexations.
using SubjectAreaHistogram = std::map<std::string, std::uint64_t>;

}  // namespace biblio
