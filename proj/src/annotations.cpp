#include "sentibench/annotations.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>

#include "sentibench/errors.hpp"

namespace sentibench {

const char* to_string(CoarseTag tag) {
    switch (tag) {
        case CoarseTag::Adj: return "ADJ";
        case CoarseTag::Noun: return "NOUN";
        case CoarseTag::Verb: return "VERB";
        case CoarseTag::Adv: return "ADV";
        case CoarseTag::Other: return "OTHER";
    }
    return "OTHER";
}

CoarseTag coarse_tag_from(std::string_view fine) {
    std::string tag(fine);
    std::transform(tag.begin(), tag.end(), tag.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (tag == "ADJ" || tag == "JJ" || tag == "JJR" || tag == "JJS") return CoarseTag::Adj;
    if (tag == "NOUN" || tag == "PROPN" || tag == "NN" || tag == "NNS" || tag == "NNP" ||
        tag == "NNPS")
        return CoarseTag::Noun;
    if (tag == "VERB" || tag == "AUX" || tag == "MD" || tag == "VB" || tag == "VBD" ||
        tag == "VBG" || tag == "VBN" || tag == "VBP" || tag == "VBZ")
        return CoarseTag::Verb;
    if (tag == "ADV" || tag == "RB" || tag == "RBR" || tag == "RBS") return CoarseTag::Adv;
    return CoarseTag::Other;
}

namespace {

struct RawToken {
    int id = 0;
    std::string form;
    std::string pos;
    int head = 0;
    std::string deprel;
};

[[noreturn]] void parse_fail(const std::filesystem::path& file, int line_no,
                             const std::string& what) {
    throw ParseError(file.string() + ":" + std::to_string(line_no) + ": " + what);
}

int parse_int(const std::string& field, const std::filesystem::path& file, int line_no,
              const char* name) {
    try {
        std::size_t used = 0;
        int value = std::stoi(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
        return value;
    } catch (const std::exception&) {
        parse_fail(file, line_no, std::string("bad ") + name + " field: '" + field + "'");
    }
}

// Heads must form a single tree: exactly one root and no cycles.
void validate_sentence(const std::vector<RawToken>& sentence,
                       const std::filesystem::path& file, int line_no) {
    const int n = static_cast<int>(sentence.size());
    int roots = 0;
    for (const RawToken& tok : sentence) {
        if (tok.head < 0 || tok.head > n) {
            parse_fail(file, line_no, "HEAD out of range: " + std::to_string(tok.head));
        }
        if (tok.head == 0) ++roots;
    }
    if (roots != 1) {
        throw ParseError(file.string() + ": sentence ending at line " + std::to_string(line_no) +
                         ": expected exactly one root, found " + std::to_string(roots));
    }
    // walk each token to the root; a repeat visit inside one walk is a cycle
    std::vector<int> visited(n + 1, -1);
    for (int start = 1; start <= n; ++start) {
        int node = start;
        while (node != 0) {
            if (visited[node] == start) {
                throw ParseError(file.string() + ": sentence ending at line " +
                                 std::to_string(line_no) + ": head cycle involving token " +
                                 std::to_string(node));
            }
            visited[node] = start;
            node = sentence[node - 1].head;
        }
    }
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

} // namespace

AnnotatedDocument load_annotations(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ParseError("cannot open annotation file: " + file.string());

    AnnotatedDocument doc;
    std::vector<RawToken> sentence;
    std::string line;
    int line_no = 0;

    auto flush_sentence = [&]() {
        if (sentence.empty()) return;
        validate_sentence(sentence, file, line_no);
        std::vector<TokenAnnotation> tokens;
        tokens.reserve(sentence.size());
        for (const RawToken& raw : sentence) {
            tokens.push_back({raw.form, coarse_tag_from(raw.pos), raw.head, raw.deprel});
        }
        doc.sentences.push_back(std::move(tokens));
        sentence.clear();
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            flush_sentence();
            continue;
        }
        std::vector<std::string> fields = split_tabs(line);
        if (fields.size() != 5) {
            parse_fail(file, line_no,
                       "expected 5 tab-separated fields, got " + std::to_string(fields.size()));
        }
        RawToken tok;
        tok.id = parse_int(fields[0], file, line_no, "ID");
        tok.form = fields[1];
        tok.pos = fields[2];
        tok.head = parse_int(fields[3], file, line_no, "HEAD");
        tok.deprel = fields[4];
        if (tok.form.empty()) parse_fail(file, line_no, "empty FORM field");
        if (tok.deprel.empty()) parse_fail(file, line_no, "empty DEPREL field");
        if (tok.id != static_cast<int>(sentence.size()) + 1) {
            parse_fail(file, line_no,
                       "ID " + std::to_string(tok.id) + " out of sequence (expected " +
                           std::to_string(sentence.size() + 1) + ")");
        }
        sentence.push_back(std::move(tok));
    }
    flush_sentence();
    return doc;
}

void write_annotations(const AnnotatedDocument& doc, std::ostream& out) {
    bool first = true;
    for (const auto& sentence : doc.sentences) {
        if (!first) out << '\n';
        first = false;
        for (std::size_t i = 0; i < sentence.size(); ++i) {
            const TokenAnnotation& tok = sentence[i];
            out << (i + 1) << '\t' << tok.form << '\t' << to_string(tok.pos) << '\t' << tok.head
                << '\t' << tok.deprel << '\n';
        }
    }
}

std::map<int, AnnotatedDocument> align(const Dataset& dataset,
                                       const std::filesystem::path& annotation_dir) {
    std::map<int, AnnotatedDocument> result;
    std::vector<std::string> missing;
    for (const Document& doc : dataset.documents) {
        std::string stem = std::filesystem::path(doc.source_name).stem().string();
        std::filesystem::path file = annotation_dir / (stem + ".dep");
        if (!std::filesystem::is_regular_file(file)) {
            missing.push_back(stem);
            continue;
        }
        AnnotatedDocument annotated = load_annotations(file);
        annotated.doc_id = doc.id;
        result.emplace(doc.id, std::move(annotated));
    }
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << "missing annotation files for " << missing.size() << " document(s):";
        std::size_t shown = std::min<std::size_t>(missing.size(), 10);
        for (std::size_t i = 0; i < shown; ++i) msg << ' ' << missing[i];
        if (missing.size() > shown) msg << " ...";
        throw AlignmentError(msg.str());
    }
    return result;
}

} // namespace sentibench
