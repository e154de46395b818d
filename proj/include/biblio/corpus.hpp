#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "biblio/model.hpp"
#include "biblio/names.hpp"

namespace biblio {

/// Immutable document collection indexed by normalized source title.
class Corpus {
public:
    Corpus() = default;

    explicit Corpus(std::vector<DocumentRecord> documents) : documents_(std::move(documents)) {
        keys_.reserve(documents_.size());
        for (std::size_t i = 0; i < documents_.size(); ++i) {
            std::string key;
            try {
                key = normalize_title(documents_[i].source_title).key();
            } catch (const PreconditionError&) {
                // unsearchable title; reachable only through cluster queries
            }
            keys_.push_back(key);
            by_title_[documents_[i].source_title].push_back(i);
            if (key.empty()) continue;
            auto [it, inserted] = by_key_.try_emplace(key);
            it->second.push_back(i);
            if (inserted) {
                for (const auto& w : text::split(key, ' ')) by_word_[w].push_back(key);
            }
        }
    }

    const std::vector<DocumentRecord>& documents() const noexcept { return documents_; }
    std::size_t size() const noexcept { return documents_.size(); }
    const DocumentRecord& operator[](std::size_t i) const { return documents_[i]; }

    /// Normalized title key of document i (empty if unnormalizable).
    const std::string& key(std::size_t i) const { return keys_[i]; }

    /// Documents whose normalized source title equals `name`, in corpus order.
    std::span<const std::size_t> by_name(const NormalizedName& name) const {
        const auto it = by_key_.find(name.key());
        return it == by_key_.end() ? std::span<const std::size_t>{} : std::span<const std::size_t>{it->second};
    }

    /// Documents whose source title is exactly `title`, in corpus order.
    std::span<const std::size_t> by_verbatim_title(const std::string& title) const {
        const auto it = by_title_.find(title);
        return it == by_title_.end() ? std::span<const std::size_t>{} : std::span<const std::size_t>{it->second};
    }

    /// Documents sharing at least one title word with `name`, in corpus order.
    std::vector<std::size_t> sharing_any_word(const NormalizedName& name) const {
        std::set<std::string> keys;
        for (const auto& w : name.words()) {
            if (const auto it = by_word_.find(w); it != by_word_.end()) keys.insert(it->second.begin(), it->second.end());
        }
        std::vector<std::size_t> out;
        for (const auto& k : keys) {
            const auto& idx = by_key_.at(k);
            out.insert(out.end(), idx.begin(), idx.end());
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::vector<DocumentRecord> documents_;
    std::vector<std::string> keys_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_key_;
    std::unordered_map<std::string, std::vector<std::string>> by_word_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_title_;
};

/// Documents belonging to a journal, matched on normalized title.
inline std::vector<const DocumentRecord*> journal_documents(const Corpus& corpus, std::string_view journal_title) {
    std::vector<const DocumentRecord*> out;
    for (const auto i : corpus.by_name(normalize_title(journal_title))) out.push_back(&corpus[i]);
    return out;
}

inline bool has_area(const DocumentRecord& doc, std::string_view area) {
    for (const auto& a : doc.subject_areas) {
        if (text::iequals(a, area)) return true;
    }
    return false;
}

inline bool has_keyword(const DocumentRecord& doc, std::string_view keyword) {
    for (const auto& k : doc.keywords) {
        if (text::iequals(k, keyword)) return true;
    }
    return false;
}

}  // namespace biblio
