#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sentibench/corpus.hpp"

namespace sentibench {

// Coarse tagset used everywhere downstream. Fine-grained tags from the
// annotation files are collapsed onto it by coarse_tag_from().
enum class CoarseTag { Adj, Noun, Verb, Adv, Other };

const char* to_string(CoarseTag tag);

// Mapping from common fine-grained tags:
//   PTB:  JJ,JJR,JJS -> Adj   NN,NNS,NNP,NNPS -> Noun
//         VB,VBD,VBG,VBN,VBP,VBZ,MD -> Verb   RB,RBR,RBS -> Adv
//   UD:   ADJ -> Adj   NOUN,PROPN -> Noun   VERB,AUX -> Verb   ADV -> Adv
// Anything else maps to Other. Matching is case-insensitive.
CoarseTag coarse_tag_from(std::string_view fine);

struct TokenAnnotation {
    std::string form;
    CoarseTag pos = CoarseTag::Other;
    int head = 0;        // 1-based index of the governor within the sentence; 0 = root
    std::string deprel;
};

struct AnnotatedDocument {
    int doc_id = -1;     // assigned by align(); -1 when loaded standalone
    std::vector<std::vector<TokenAnnotation>> sentences;
};

// Reads the tab-separated column format: ID FORM POS HEAD DEPREL, one
// token per line, 1-based ID within the sentence, blank line between
// sentences. Throws ParseError (with the line number) for malformed
// lines or out-of-range heads, and for sentences whose heads do not
// form a tree with exactly one root.
AnnotatedDocument load_annotations(const std::filesystem::path& file);

// Inverse of load_annotations, used for round-trips.
void write_annotations(const AnnotatedDocument& doc, std::ostream& out);

// One <stem>.dep file per corpus document, matched by filename stem.
// Throws AlignmentError listing every missing stem.
std::map<int, AnnotatedDocument> align(const Dataset& dataset,
                                       const std::filesystem::path& annotation_dir);

} // namespace sentibench
