#include "newsaudit/corpus_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "newsaudit/errors.hpp"

namespace newsaudit {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

struct RowOutcome {
    std::optional<Article> article;
    std::string error;       // set when the row is malformed
    std::string date_note;   // set when a date was dropped
};

std::optional<int> label_from_json(const json& value) {
    if (value.is_number_integer() || value.is_number_unsigned()) {
        auto n = value.get<long long>();
        if (n == 0 || n == 1) return static_cast<int>(n);
        return std::nullopt;
    }
    if (value.is_string()) return normalize_label(value.get_ref<const std::string&>());
    return std::nullopt;
}

RowOutcome article_from_json(const json& row) {
    RowOutcome out;
    if (!row.is_object()) {
        out.error = "not a JSON object";
        return out;
    }
    Article a;
    auto required_string = [&](const char* key, std::string& dest) -> bool {
        auto it = row.find(key);
        if (it == row.end() || !it->is_string() || it->get_ref<const std::string&>().empty()) {
            out.error = std::string("missing or empty field '") + key + "'";
            return false;
        }
        dest = it->get<std::string>();
        return true;
    };
    if (!required_string("id", a.id)) return out;
    if (!required_string("title", a.title)) return out;
    if (!required_string("source", a.source)) return out;

    if (auto it = row.find("body"); it != row.end() && !it->is_null()) {
        if (!it->is_string()) {
            out.error = "field 'body' is not a string";
            return out;
        }
        a.body = it->get<std::string>();
    }
    if (auto it = row.find("label"); it != row.end()) {
        auto label = label_from_json(*it);
        if (!label) {
            out.error = "unrecognized label value";
            return out;
        }
        a.label = *label;
    } else {
        out.error = "missing or empty field 'label'";
        return out;
    }
    if (auto it = row.find("date"); it != row.end() && !it->is_null()) {
        std::optional<Date> date;
        if (it->is_string()) date = parse_date(it->get_ref<const std::string&>());
        if (date) {
            a.published_at = *date;
        } else {
            out.date_note = "unparseable date; stored as absent";
        }
    }
    if (auto it = row.find("vec"); it != row.end() && !it->is_null()) {
        if (!it->is_array() || it->empty()) {
            out.error = "field 'vec' is not a non-empty array";
            return out;
        }
        std::vector<double> vec;
        vec.reserve(it->size());
        for (const auto& v : *it) {
            if (!v.is_number()) {
                out.error = "field 'vec' contains a non-numeric entry";
                return out;
            }
            vec.push_back(v.get<double>());
        }
        a.embedding = std::move(vec);
    }
    out.article = std::move(a);
    return out;
}

// Line-based CSV with RFC-4180 quoting (embedded commas and doubled quotes;
// no embedded newlines).
std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool in_quotes = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (c == '"') {
            if (in_quotes && i + 1 < line.size() && line[i + 1] == '"') {
                current.push_back('"');
                ++i;
            } else {
                in_quotes = !in_quotes;
            }
        } else if (c == ',' && !in_quotes) {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::optional<std::vector<double>> parse_vec_field(const std::string& text) {
    std::vector<double> vec;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t next = text.find(';', pos);
        std::string part = text.substr(pos, next == std::string::npos ? next : next - pos);
        const char* begin = part.c_str();
        char* end = nullptr;
        double value = std::strtod(begin, &end);
        if (end == begin || *end != '\0') return std::nullopt;
        vec.push_back(value);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (vec.empty()) return std::nullopt;
    return vec;
}

RowOutcome article_from_csv(const std::vector<std::string>& fields,
                            const std::unordered_map<std::string, size_t>& columns) {
    RowOutcome out;
    auto cell = [&](const char* name) -> std::optional<std::string> {
        auto it = columns.find(name);
        if (it == columns.end() || it->second >= fields.size()) return std::nullopt;
        if (fields[it->second].empty()) return std::nullopt;
        return fields[it->second];
    };
    Article a;
    auto required = [&](const char* name, std::string& dest) -> bool {
        auto value = cell(name);
        if (!value) {
            out.error = std::string("missing or empty field '") + name + "'";
            return false;
        }
        dest = *value;
        return true;
    };
    if (!required("id", a.id)) return out;
    if (!required("title", a.title)) return out;
    if (!required("source", a.source)) return out;
    if (auto body = cell("body")) a.body = *body;
    auto label_text = cell("label");
    if (!label_text) {
        out.error = "missing or empty field 'label'";
        return out;
    }
    auto label = normalize_label(*label_text);
    if (!label) {
        out.error = "unrecognized label value";
        return out;
    }
    a.label = *label;
    if (auto date_text = cell("date")) {
        auto date = parse_date(*date_text);
        if (date) a.published_at = *date;
        else out.date_note = "unparseable date; stored as absent";
    }
    if (auto vec_text = cell("vec")) {
        auto vec = parse_vec_field(*vec_text);
        if (!vec) {
            out.error = "unparseable 'vec' field";
            return out;
        }
        a.embedding = std::move(vec);
    }
    out.article = std::move(a);
    return out;
}

constexpr size_t kMaxSkipNotes = 20;

Corpus assemble(std::vector<std::pair<size_t, RowOutcome>>&& rows, size_t total_rows,
                const std::filesystem::path& path, CorpusFormat format) {
    Corpus corpus;
    std::vector<std::string> skip_notes;
    std::vector<std::string> date_notes;
    size_t malformed = 0;
    std::unordered_set<std::string> seen_ids;
    for (auto& [line_no, row] : rows) {
        if (!row.article) {
            ++malformed;
            if (skip_notes.size() < kMaxSkipNotes) {
                std::ostringstream oss;
                oss << "skipped line " << line_no << ": " << row.error;
                skip_notes.push_back(oss.str());
            }
            continue;
        }
        if (!seen_ids.insert(row.article->id).second)
            throw DataError("duplicate article id: " + row.article->id);
        if (!row.date_note.empty() && date_notes.size() < kMaxSkipNotes) {
            std::ostringstream oss;
            oss << "line " << line_no << ": " << row.date_note;
            date_notes.push_back(oss.str());
        }
        corpus.articles.push_back(std::move(*row.article));
    }
    if (corpus.articles.empty()) throw DataError("no valid records in " + path.string());
    if (2 * malformed > total_rows) {
        std::ostringstream oss;
        oss << "more than 50% malformed rows (" << malformed << " of " << total_rows << ") in "
            << path.string() << "; wrong format?";
        throw DataError(oss.str());
    }
    for (const Article& a : corpus.articles) {
        if (a.embedding) {
            corpus.embedding_dim = a.embedding->size();
            break;
        }
    }
    std::ostringstream loaded;
    loaded << "loaded " << corpus.articles.size() << " of " << total_rows << " rows from "
           << path.string() << " (" << format_name(format) << ")";
    corpus.provenance.push_back(loaded.str());
    for (auto& note : skip_notes) corpus.provenance.push_back(std::move(note));
    if (malformed > kMaxSkipNotes) corpus.provenance.push_back("further skipped rows elided");
    for (auto& note : date_notes) corpus.provenance.push_back(std::move(note));
    validate_corpus(corpus);
    return corpus;
}

}  // namespace

CorpusFormat parse_corpus_format(std::string_view name) {
    std::string lower = ascii_lower(trim(name));
    if (lower == "jsonl") return CorpusFormat::jsonl;
    if (lower == "csv") return CorpusFormat::csv;
    throw std::invalid_argument("unknown corpus format: " + std::string(name));
}

std::string format_name(CorpusFormat format) {
    return format == CorpusFormat::jsonl ? "jsonl" : "csv";
}

std::optional<int> normalize_label(std::string_view text) {
    std::string lower = ascii_lower(trim(text));
    if (lower == "0" || lower == "unreliable" || lower == "fake") return 0;
    if (lower == "1" || lower == "reliable" || lower == "real") return 1;
    return std::nullopt;
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open corpus file: " + path.string());

    std::vector<std::pair<size_t, RowOutcome>> rows;
    size_t total_rows = 0;
    std::string line;
    size_t line_no = 0;

    if (format == CorpusFormat::jsonl) {
        while (std::getline(in, line)) {
            ++line_no;
            if (trim(line).empty()) continue;
            ++total_rows;
            RowOutcome row;
            json parsed = json::parse(line, nullptr, false);
            if (parsed.is_discarded()) row.error = "invalid JSON";
            else row = article_from_json(parsed);
            rows.emplace_back(line_no, std::move(row));
        }
    } else {
        if (!std::getline(in, line)) throw DataError("no valid records in " + path.string());
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::unordered_map<std::string, size_t> columns;
        auto header = split_csv_row(line);
        for (size_t i = 0; i < header.size(); ++i) columns[std::string(trim(header[i]))] = i;
        for (const char* required : {"id", "title", "source", "label"}) {
            if (columns.find(required) == columns.end())
                throw DataError(std::string("csv header missing required column '") + required +
                                "' in " + path.string());
        }
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (trim(line).empty()) continue;
            ++total_rows;
            rows.emplace_back(line_no, article_from_csv(split_csv_row(line), columns));
        }
    }
    return assemble(std::move(rows), total_rows, path, format);
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path, CorpusFormat format) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open output file: " + path.string());
    if (format == CorpusFormat::jsonl) {
        for (const Article& a : corpus.articles) {
            ordered_json row;
            row["id"] = a.id;
            row["title"] = a.title;
            if (a.body) row["body"] = *a.body;
            row["source"] = a.source;
            if (a.published_at) row["date"] = format_date(*a.published_at);
            row["label"] = a.label;
            if (a.embedding) row["vec"] = *a.embedding;
            out << row.dump() << "\n";
        }
    } else {
        out << "id,title,body,source,date,label,vec\n";
        for (const Article& a : corpus.articles) {
            std::string vec;
            if (a.embedding) {
                for (size_t i = 0; i < a.embedding->size(); ++i) {
                    if (i > 0) vec.push_back(';');
                    vec += format_double((*a.embedding)[i]);
                }
            }
            out << csv_escape(a.id) << ',' << csv_escape(a.title) << ','
                << csv_escape(a.body.value_or("")) << ',' << csv_escape(a.source) << ','
                << (a.published_at ? format_date(*a.published_at) : std::string()) << ','
                << a.label << ',' << csv_escape(vec) << "\n";
        }
    }
    if (!out) throw DataError("failed writing " + path.string());
}

std::unordered_map<std::string, std::vector<double>> load_embeddings(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open embeddings file: " + path.string());
    std::unordered_map<std::string, std::vector<double>> vectors;
    std::string line;
    size_t line_no = 0;
    std::optional<size_t> dim;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        json row = json::parse(line, nullptr, false);
        std::ostringstream where;
        where << path.string() << ":" << line_no;
        if (row.is_discarded() || !row.is_object())
            throw DataError("invalid JSON in embeddings file at " + where.str());
        if (!row.contains("id") || !row["id"].is_string())
            throw DataError("missing 'id' in embeddings file at " + where.str());
        if (!row.contains("vec") || !row["vec"].is_array() || row["vec"].empty())
            throw DataError("missing 'vec' in embeddings file at " + where.str());
        std::vector<double> vec;
        vec.reserve(row["vec"].size());
        for (const auto& v : row["vec"]) {
            if (!v.is_number())
                throw DataError("non-numeric 'vec' entry in embeddings file at " + where.str());
            vec.push_back(v.get<double>());
        }
        if (dim && vec.size() != *dim)
            throw DataError("inconsistent embedding dimension at " + where.str());
        dim = vec.size();
        auto [it, inserted] = vectors.emplace(row["id"].get<std::string>(), std::move(vec));
        if (!inserted) throw DataError("duplicate id in embeddings file at " + where.str());
    }
    if (vectors.empty()) throw DataError("no embeddings in " + path.string());
    return vectors;
}

Corpus attach_embeddings(const Corpus& corpus,
                         const std::unordered_map<std::string, std::vector<double>>& vectors,
                         bool drop_missing) {
    if (vectors.empty()) throw DataError("attach_embeddings: empty vector map");
    const size_t dim = vectors.begin()->second.size();
    Corpus out;
    out.provenance = corpus.provenance;
    out.embedding_dim = dim;
    size_t missing = 0;
    for (const Article& a : corpus.articles) {
        auto it = vectors.find(a.id);
        if (it == vectors.end()) {
            if (!drop_missing)
                throw DataError("attach_embeddings: no vector for article '" + a.id + "'");
            ++missing;
            continue;
        }
        if (it->second.size() != dim)
            throw DataError("attach_embeddings: dimension mismatch for article '" + a.id + "'");
        Article copy = a;
        copy.embedding = it->second;
        out.articles.push_back(std::move(copy));
    }
    if (out.articles.empty()) throw DataError("attach_embeddings: no embeddings matched corpus ids");
    std::ostringstream note;
    note << "attached " << dim << "-dim embeddings to " << out.articles.size() << " articles";
    if (missing > 0) note << "; dropped " << missing << " articles without vectors";
    out.provenance.push_back(note.str());
    return out;
}

std::unordered_map<std::string, int> load_predictions(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open predictions file: " + path.string());
    std::unordered_map<std::string, int> predictions;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        json row = json::parse(line, nullptr, false);
        std::ostringstream where;
        where << path.string() << ":" << line_no;
        if (row.is_discarded() || !row.is_object())
            throw DataError("invalid JSON in predictions file at " + where.str());
        if (!row.contains("id") || !row["id"].is_string())
            throw DataError("missing 'id' in predictions file at " + where.str());
        if (!row.contains("label"))
            throw DataError("missing 'label' in predictions file at " + where.str());
        auto label = label_from_json(row["label"]);
        if (!label) throw DataError("unrecognized label in predictions file at " + where.str());
        auto [it, inserted] = predictions.emplace(row["id"].get<std::string>(), *label);
        if (!inserted) throw DataError("duplicate id in predictions file at " + where.str());
    }
    if (predictions.empty()) throw DataError("no predictions in " + path.string());
    return predictions;
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

}  // namespace newsaudit
