#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "newsaudit/corpus.hpp"

namespace newsaudit {

enum class CorpusFormat { jsonl, csv };

CorpusFormat parse_corpus_format(std::string_view name);
std::string format_name(CorpusFormat format);

// Accepted label spellings: 0/1 (numbers or digit strings),
// "reliable"/"unreliable", "real"/"fake", case-insensitive. Everything else
// marks the row malformed.
std::optional<int> normalize_label(std::string_view text);

// Loads and validates a corpus. Malformed rows are skipped and recorded (with
// line numbers) in provenance; more than 50% malformed rows or zero valid
// records is an error, as are duplicate ids. Unparseable dates do not
// invalidate a row; they are stored absent with a provenance note.
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format);

void save_corpus(const Corpus& corpus, const std::filesystem::path& path, CorpusFormat format);

// Embeddings sidecar: JSONL, one {"id": ..., "vec": [...]} per line. Strict:
// any malformed line, duplicate id, or dimension mismatch is an error.
std::unordered_map<std::string, std::vector<double>> load_embeddings(
    const std::filesystem::path& path);

// Joins embedding vectors onto articles by id. Articles without a vector are
// dropped when drop_missing is set, otherwise cause an error.
Corpus attach_embeddings(const Corpus& corpus,
                         const std::unordered_map<std::string, std::vector<double>>& vectors,
                         bool drop_missing = true);

// External model predictions: JSONL, one {"id": ..., "label": ...} per line,
// labels in any accepted spelling. Strict like load_embeddings.
std::unordered_map<std::string, int> load_predictions(const std::filesystem::path& path);

// Shortest round-trip decimal form (std::to_chars).
std::string format_double(double value);

}  // namespace newsaudit
