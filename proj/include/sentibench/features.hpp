#pragma once

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "sentibench/annotations.hpp"
#include "sentibench/corpus.hpp"
#include "sentibench/lexicon.hpp"

namespace sentibench {

enum class FeatureFamily {
    Unigram,
    Bigram,
    Trigram,
    WordPos,
    WordAndWordPos,
    PosOnly,
    LexiconWords,
    DependencyPair,
};

const char* to_string(FeatureFamily f);

struct FeatureSpec {
    std::set<FeatureFamily> families;
    std::set<CoarseTag> pos_only_tags; // used when PosOnly is selected
    int max_features = 10000;

    bool needs_annotations() const;
    bool needs_lexicon() const;
};

// Parses the documented family names: unigram, bigram, trigram,
// word-pos, word-and-word-pos, pos-only:adj|noun|verb|adv,
// lexicon-words, dep-pair. Throws ConfigError on anything else.
FeatureSpec feature_spec_from_names(const std::vector<std::string>& names,
                                    int max_features = 10000);

class Vocabulary {
public:
    explicit Vocabulary(std::vector<std::string> features);
    Vocabulary() = default;

    std::size_t size() const { return features_.size(); }
    const std::vector<std::string>& features() const { return features_; }
    const std::string& feature_at(int index) const { return features_.at(index); }
    std::optional<int> lookup(const std::string& feature) const;

private:
    std::vector<std::string> features_;
    std::unordered_map<std::string, int> index_;
};

// Sparse binary presence vector: each listed index is "on".
struct FeatureVector {
    int doc_id = -1;
    std::vector<int> on_indices; // strictly increasing, unique
};

// Contiguous n-grams joined by "_"; n in {1,2,3}. A document shorter
// than n yields no features.
std::vector<std::string> extract_ngrams(const std::vector<std::string>& tokens, int n);

// "form+POS" per annotated token, e.g. "great+ADJ". Forms lowercased.
std::vector<std::string> extract_word_pos(const AnnotatedDocument& annotated);

// Bare form and "form+POS" per token, e.g. "great", "great+ADJ".
std::vector<std::string> extract_word_and_word_pos(const AnnotatedDocument& annotated);

// Bare forms of tokens whose coarse tag is in tags.
std::vector<std::string> extract_pos_filtered(const AnnotatedDocument& annotated,
                                              const std::set<CoarseTag>& tags);

// "form+deprel" per token (its own incoming label), e.g. "this+nsubj".
std::vector<std::string> extract_dependency_pairs(const AnnotatedDocument& annotated);

// All feature strings of one document for the selected families, in enum
// order. annotated may be null when no family requires it; LexiconWords
// contributes the document's unigrams (the lexicon side only widens the
// vocabulary). Throws ConfigError when a family needs annotations that
// were not supplied.
std::vector<std::string> document_features(const Document& doc,
                                           const AnnotatedDocument* annotated,
                                           const FeatureSpec& spec);

// Vocabulary selection from TRAINING documents only: features ranked by
// descending document frequency, ties broken by ascending lexicographic
// order, truncated to max_features. When LexiconWords is selected, all
// unique lexicon words are inserted first (in lexicon file order) and
// corpus features fill the remainder. Throws VocabularyError when the
// resulting pool is empty, ConfigError when LexiconWords is selected
// without a lexicon.
Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& train_doc_features,
                            const FeatureSpec& spec,
                            const Lexicon* lexicon = nullptr);

// Sorted unique indices of in-vocabulary features; out-of-vocabulary
// features are dropped.
FeatureVector vectorize(const std::vector<std::string>& doc_features,
                        const Vocabulary& vocab,
                        int doc_id = -1);

} // namespace sentibench
