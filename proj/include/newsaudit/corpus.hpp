#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "newsaudit/dates.hpp"

namespace newsaudit {

// One news item. label: 1 = reliable, 0 = unreliable.
struct Article {
    std::string id;
    std::string title;
    std::optional<std::string> body;
    std::string source;
    std::optional<Date> published_at;
    int label = 0;
    std::optional<std::vector<double>> embedding;

    bool operator==(const Article&) const = default;
};

// Immutable after construction; every operation returns a new corpus.
// Article order is ingestion order and is never reshuffled in place, so
// seeded operations are deterministic.
struct Corpus {
    std::vector<Article> articles;
    std::optional<size_t> embedding_dim;
    std::vector<std::string> provenance;

    size_t size() const { return articles.size(); }
    bool empty() const { return articles.empty(); }
};

using SiteLabelMap = std::map<std::string, int>;

// Borrowed view of a corpus subset, in corpus order.
using ArticleView = std::vector<const Article*>;

ArticleView view_of(const Corpus& corpus);
// Resolves ids against the corpus, preserving corpus order regardless of the
// order ids are given in. Throws DataError on unknown ids.
ArticleView view_of(const Corpus& corpus, const std::vector<std::string>& ids);

std::vector<int> labels_of(const ArticleView& view);
std::vector<std::string> sources_of(const ArticleView& view);

// Enforces all Article invariants plus corpus-wide embedding consistency
// (all or none, uniform dimension). Throws DataError on the first violation.
void validate_corpus(const Corpus& corpus);

std::map<int, size_t> label_histogram(const Corpus& corpus);

// Distinct sources in first-appearance order.
std::vector<std::string> distinct_sources(const Corpus& corpus);

bool site_labels_consistent(const Corpus& corpus);

// source -> shared label. Throws DataError when labels are not
// site-consistent.
std::map<std::string, int> site_labels(const Corpus& corpus);

// Relabels every article to labels[article.source]. Sources missing from the
// map are an error unless drop_uncovered is set, in which case their articles
// are removed and the drop is recorded in provenance.
Corpus apply_site_labels(const Corpus& corpus, const SiteLabelMap& labels,
                         bool drop_uncovered = false);

// Downsamples the majority class uniformly at random under the seed until the
// label histogram is exactly uniform. The minority class is kept in full and
// output preserves corpus order.
Corpus subsample_balanced(const Corpus& corpus, uint64_t seed);

}  // namespace newsaudit
