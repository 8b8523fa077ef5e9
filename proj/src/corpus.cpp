#include "newsaudit/corpus.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "newsaudit/errors.hpp"
#include "newsaudit/rng.hpp"

namespace newsaudit {

ArticleView view_of(const Corpus& corpus) {
    ArticleView view;
    view.reserve(corpus.articles.size());
    for (const Article& a : corpus.articles) view.push_back(&a);
    return view;
}

ArticleView view_of(const Corpus& corpus, const std::vector<std::string>& ids) {
    std::unordered_set<std::string> wanted(ids.begin(), ids.end());
    ArticleView view;
    view.reserve(wanted.size());
    for (const Article& a : corpus.articles) {
        if (wanted.erase(a.id) > 0) view.push_back(&a);
    }
    if (!wanted.empty()) {
        std::ostringstream oss;
        oss << "view_of: " << wanted.size() << " id(s) not found in corpus, e.g. '"
            << *wanted.begin() << "'";
        throw DataError(oss.str());
    }
    return view;
}

std::vector<int> labels_of(const ArticleView& view) {
    std::vector<int> labels;
    labels.reserve(view.size());
    for (const Article* a : view) labels.push_back(a->label);
    return labels;
}

std::vector<std::string> sources_of(const ArticleView& view) {
    std::vector<std::string> sources;
    sources.reserve(view.size());
    for (const Article* a : view) sources.push_back(a->source);
    return sources;
}

void validate_corpus(const Corpus& corpus) {
    std::unordered_set<std::string> seen_ids;
    seen_ids.reserve(corpus.articles.size());
    size_t with_embedding = 0;
    for (const Article& a : corpus.articles) {
        if (a.id.empty()) throw DataError("article with empty id");
        if (!seen_ids.insert(a.id).second) throw DataError("duplicate article id: " + a.id);
        if (a.title.empty()) throw DataError("article '" + a.id + "' has empty title");
        if (a.source.empty()) throw DataError("article '" + a.id + "' has empty source");
        if (a.label != 0 && a.label != 1)
            throw DataError("article '" + a.id + "' has non-binary label");
        if (a.embedding) {
            ++with_embedding;
            if (!corpus.embedding_dim)
                throw DataError("article '" + a.id + "' carries an embedding but the corpus declares no dimension");
            if (a.embedding->size() != *corpus.embedding_dim)
                throw DataError("article '" + a.id + "' embedding length mismatch");
        }
    }
    if (with_embedding != 0 && with_embedding != corpus.articles.size())
        throw DataError("corpus mixes articles with and without embeddings");
}

std::map<int, size_t> label_histogram(const Corpus& corpus) {
    std::map<int, size_t> hist;
    for (const Article& a : corpus.articles) ++hist[a.label];
    return hist;
}

std::vector<std::string> distinct_sources(const Corpus& corpus) {
    std::vector<std::string> sources;
    std::unordered_set<std::string> seen;
    for (const Article& a : corpus.articles) {
        if (seen.insert(a.source).second) sources.push_back(a.source);
    }
    return sources;
}

bool site_labels_consistent(const Corpus& corpus) {
    std::unordered_map<std::string, int> first;
    for (const Article& a : corpus.articles) {
        auto [it, inserted] = first.emplace(a.source, a.label);
        if (!inserted && it->second != a.label) return false;
    }
    return true;
}

std::map<std::string, int> site_labels(const Corpus& corpus) {
    std::map<std::string, int> labels;
    for (const Article& a : corpus.articles) {
        auto [it, inserted] = labels.emplace(a.source, a.label);
        if (!inserted && it->second != a.label)
            throw DataError("site '" + a.source + "' carries inconsistent article labels");
    }
    return labels;
}

Corpus apply_site_labels(const Corpus& corpus, const SiteLabelMap& labels, bool drop_uncovered) {
    std::set<std::string> uncovered;
    for (const Article& a : corpus.articles) {
        if (labels.find(a.source) == labels.end()) uncovered.insert(a.source);
    }
    if (!uncovered.empty() && !drop_uncovered) {
        std::ostringstream oss;
        oss << "apply_site_labels: uncovered sources:";
        for (const auto& s : uncovered) oss << " " << s;
        throw DataError(oss.str());
    }

    Corpus out;
    out.embedding_dim = corpus.embedding_dim;
    out.provenance = corpus.provenance;
    out.articles.reserve(corpus.articles.size());
    size_t dropped = 0;
    for (const Article& a : corpus.articles) {
        auto it = labels.find(a.source);
        if (it == labels.end()) {
            ++dropped;
            continue;
        }
        Article copy = a;
        copy.label = it->second;
        out.articles.push_back(std::move(copy));
    }
    std::ostringstream note;
    note << "applied site labels to " << out.articles.size() << " articles";
    if (dropped > 0)
        note << "; dropped " << dropped << " articles from " << uncovered.size()
             << " uncovered sources";
    out.provenance.push_back(note.str());
    return out;
}

Corpus subsample_balanced(const Corpus& corpus, uint64_t seed) {
    auto hist = label_histogram(corpus);
    if (hist.size() < 2)
        throw DataError("subsample_balanced: corpus must contain both labels");
    const size_t n0 = hist[0];
    const size_t n1 = hist[1];
    const size_t keep = std::min(n0, n1);
    const int majority = n1 > n0 ? 1 : 0;

    std::vector<bool> retain(corpus.articles.size(), true);
    if (n0 != n1) {
        std::vector<size_t> majority_indices;
        for (size_t i = 0; i < corpus.articles.size(); ++i) {
            if (corpus.articles[i].label == majority) majority_indices.push_back(i);
        }
        Rng rng(seed);
        rng.shuffle(majority_indices);
        for (size_t k = keep; k < majority_indices.size(); ++k)
            retain[majority_indices[k]] = false;
    }

    Corpus out;
    out.embedding_dim = corpus.embedding_dim;
    out.provenance = corpus.provenance;
    out.articles.reserve(2 * keep);
    for (size_t i = 0; i < corpus.articles.size(); ++i) {
        if (retain[i]) out.articles.push_back(corpus.articles[i]);
    }
    std::ostringstream note;
    note << "balanced subsample (seed=" << seed << "): kept " << keep << "+" << keep << " of "
         << n0 << "+" << n1 << " articles";
    out.provenance.push_back(note.str());
    return out;
}

}  // namespace newsaudit
