#include "sentibench/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "sentibench/errors.hpp"

namespace sentibench {

const char* to_string(Polarity p) {
    return p == Polarity::Positive ? "pos" : "neg";
}

Polarity polarity_from_string(std::string_view s) {
    if (s == "pos") return Polarity::Positive;
    if (s == "neg") return Polarity::Negative;
    throw DataError("unknown polarity label: " + std::string(s));
}

int Dataset::count(Polarity label) const {
    return static_cast<int>(std::count_if(documents.begin(), documents.end(),
                                          [&](const Document& d) { return d.label == label; }));
}

namespace {

bool is_ascii_space(unsigned char c) { return std::isspace(c) != 0; }
bool is_ascii_punct(unsigned char c) { return c < 0x80 && std::ispunct(c) != 0; }

void emit_chunk(std::string_view chunk, std::vector<std::string>& out) {
    std::size_t begin = 0;
    std::size_t end = chunk.size();

    // leading punctuation, one token per character
    while (begin < end && is_ascii_punct(chunk[begin])) {
        out.emplace_back(1, chunk[begin]);
        ++begin;
    }
    // trailing punctuation, peeled from the end but emitted in order
    std::size_t core_end = end;
    while (core_end > begin && is_ascii_punct(chunk[core_end - 1])) --core_end;

    std::string_view core = chunk.substr(begin, core_end - begin);
    if (!core.empty()) {
        if (core.size() > 3 && core.ends_with("n't")) {
            out.emplace_back(core.substr(0, core.size() - 3));
            out.emplace_back("n't");
        } else {
            out.emplace_back(core);
        }
    }
    for (std::size_t i = core_end; i < end; ++i) out.emplace_back(1, chunk[i]);
}

// True iff bytes form valid UTF-8.
bool valid_utf8(std::string_view text) {
    std::size_t i = 0;
    const auto cont = [&](std::size_t j) {
        return j < text.size() && (static_cast<unsigned char>(text[j]) & 0xc0) == 0x80;
    };
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (c < 0x80) {
            ++i;
        } else if ((c & 0xe0) == 0xc0) {
            if (c < 0xc2 || !cont(i + 1)) return false;
            i += 2;
        } else if ((c & 0xf0) == 0xe0) {
            if (!cont(i + 1) || !cont(i + 2)) return false;
            unsigned char c1 = static_cast<unsigned char>(text[i + 1]);
            if (c == 0xe0 && c1 < 0xa0) return false;
            if (c == 0xed && c1 > 0x9f) return false; // surrogates
            i += 3;
        } else if ((c & 0xf8) == 0xf0) {
            if (c > 0xf4 || !cont(i + 1) || !cont(i + 2) || !cont(i + 3)) return false;
            unsigned char c1 = static_cast<unsigned char>(text[i + 1]);
            if (c == 0xf0 && c1 < 0x90) return false;
            if (c == 0xf4 && c1 > 0x8f) return false;
            i += 4;
        } else {
            return false;
        }
    }
    return true;
}

} // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string chunk;
    chunk.reserve(32);
    for (std::size_t i = 0; i <= text.size(); ++i) {
        char c = i < text.size() ? text[i] : ' ';
        if (is_ascii_space(static_cast<unsigned char>(c))) {
            if (!chunk.empty()) {
                emit_chunk(chunk, tokens);
                chunk.clear();
            }
        } else {
            unsigned char uc = static_cast<unsigned char>(c);
            chunk.push_back(uc < 0x80 ? static_cast<char>(std::tolower(uc)) : c);
        }
    }
    return tokens;
}

Dataset load_corpus(const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    Dataset dataset;
    int next_id = 0;
    // "neg" before "pos": ids are stable in (label-dir, sorted filename) order
    for (const auto& [dir_name, label] :
         {std::pair{std::string("neg"), Polarity::Negative},
          std::pair{std::string("pos"), Polarity::Positive}}) {
        fs::path dir = root / dir_name;
        if (!fs::is_directory(dir)) {
            throw CorpusError("corpus layout: missing subdirectory " + dir.string());
        }
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".txt") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end(),
                  [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
        for (const auto& file : files) {
            std::ifstream in(file, std::ios::binary);
            if (!in) throw CorpusError("cannot open " + file.string());
            std::ostringstream buffer;
            buffer << in.rdbuf();
            std::string text = buffer.str();
            if (!valid_utf8(text)) {
                throw CorpusError("not valid UTF-8: " + file.string());
            }
            Document doc;
            doc.id = next_id;
            doc.source_name = file.filename().string();
            doc.tokens = tokenize(text);
            doc.label = label;
            if (doc.tokens.empty()) {
                throw CorpusError("document tokenizes to nothing: " + file.string());
            }
            dataset.documents.push_back(std::move(doc));
            ++next_id;
        }
    }
    return dataset;
}

} // namespace sentibench
