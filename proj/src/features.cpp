#include "sentibench/features.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "sentibench/errors.hpp"

namespace sentibench {

const char* to_string(FeatureFamily f) {
    switch (f) {
        case FeatureFamily::Unigram: return "unigram";
        case FeatureFamily::Bigram: return "bigram";
        case FeatureFamily::Trigram: return "trigram";
        case FeatureFamily::WordPos: return "word-pos";
        case FeatureFamily::WordAndWordPos: return "word-and-word-pos";
        case FeatureFamily::PosOnly: return "pos-only";
        case FeatureFamily::LexiconWords: return "lexicon-words";
        case FeatureFamily::DependencyPair: return "dep-pair";
    }
    return "?";
}

FeatureSpec feature_spec_from_names(const std::vector<std::string>& names, int max_features) {
    FeatureSpec spec;
    spec.max_features = max_features;
    for (const std::string& name : names) {
        if (name == "unigram") {
            spec.families.insert(FeatureFamily::Unigram);
        } else if (name == "bigram") {
            spec.families.insert(FeatureFamily::Bigram);
        } else if (name == "trigram") {
            spec.families.insert(FeatureFamily::Trigram);
        } else if (name == "word-pos") {
            spec.families.insert(FeatureFamily::WordPos);
        } else if (name == "word-and-word-pos") {
            spec.families.insert(FeatureFamily::WordAndWordPos);
        } else if (name == "lexicon-words") {
            spec.families.insert(FeatureFamily::LexiconWords);
        } else if (name == "dep-pair") {
            spec.families.insert(FeatureFamily::DependencyPair);
        } else if (name.rfind("pos-only:", 0) == 0) {
            spec.families.insert(FeatureFamily::PosOnly);
            std::string tags = name.substr(9);
            std::size_t start = 0;
            while (start <= tags.size()) {
                std::size_t bar = tags.find('|', start);
                std::string tag = tags.substr(
                    start, bar == std::string::npos ? std::string::npos : bar - start);
                if (tag == "adj") {
                    spec.pos_only_tags.insert(CoarseTag::Adj);
                } else if (tag == "noun") {
                    spec.pos_only_tags.insert(CoarseTag::Noun);
                } else if (tag == "verb") {
                    spec.pos_only_tags.insert(CoarseTag::Verb);
                } else if (tag == "adv") {
                    spec.pos_only_tags.insert(CoarseTag::Adv);
                } else {
                    throw ConfigError("unknown pos-only tag '" + tag + "'");
                }
                if (bar == std::string::npos) break;
                start = bar + 1;
            }
        } else {
            throw ConfigError("unknown feature family '" + name + "'");
        }
    }
    if (spec.families.empty()) throw ConfigError("no feature families selected");
    return spec;
}

bool FeatureSpec::needs_annotations() const {
    return families.count(FeatureFamily::WordPos) || families.count(FeatureFamily::WordAndWordPos) ||
           families.count(FeatureFamily::PosOnly) || families.count(FeatureFamily::DependencyPair);
}

bool FeatureSpec::needs_lexicon() const { return families.count(FeatureFamily::LexiconWords) != 0; }

Vocabulary::Vocabulary(std::vector<std::string> features) : features_(std::move(features)) {
    index_.reserve(features_.size());
    for (int i = 0; i < static_cast<int>(features_.size()); ++i) index_.emplace(features_[i], i);
}

std::optional<int> Vocabulary::lookup(const std::string& feature) const {
    auto it = index_.find(feature);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> extract_ngrams(const std::vector<std::string>& tokens, int n) {
    if (n < 1 || n > 3) throw ConfigError("ngram order must be 1, 2 or 3");
    std::vector<std::string> features;
    if (static_cast<int>(tokens.size()) < n) return features;
    features.reserve(tokens.size() - n + 1);
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string feature = tokens[i];
        for (int j = 1; j < n; ++j) {
            feature += '_';
            feature += tokens[i + j];
        }
        features.push_back(std::move(feature));
    }
    return features;
}

namespace {

std::string lowercased(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return c < 0x80 ? static_cast<char>(std::tolower(c)) : c; });
    return out;
}

template <typename Fn>
void for_each_token(const AnnotatedDocument& annotated, Fn&& fn) {
    for (const auto& sentence : annotated.sentences) {
        for (const TokenAnnotation& tok : sentence) fn(tok);
    }
}

} // namespace

std::vector<std::string> extract_word_pos(const AnnotatedDocument& annotated) {
    std::vector<std::string> features;
    for_each_token(annotated, [&](const TokenAnnotation& tok) {
        features.push_back(lowercased(tok.form) + '+' + to_string(tok.pos));
    });
    return features;
}

std::vector<std::string> extract_word_and_word_pos(const AnnotatedDocument& annotated) {
    std::vector<std::string> features;
    for_each_token(annotated, [&](const TokenAnnotation& tok) {
        std::string form = lowercased(tok.form);
        features.push_back(form);
        features.push_back(form + '+' + to_string(tok.pos));
    });
    return features;
}

std::vector<std::string> extract_pos_filtered(const AnnotatedDocument& annotated,
                                              const std::set<CoarseTag>& tags) {
    std::vector<std::string> features;
    for_each_token(annotated, [&](const TokenAnnotation& tok) {
        if (tags.count(tok.pos)) features.push_back(lowercased(tok.form));
    });
    return features;
}

std::vector<std::string> extract_dependency_pairs(const AnnotatedDocument& annotated) {
    std::vector<std::string> features;
    for_each_token(annotated, [&](const TokenAnnotation& tok) {
        features.push_back(lowercased(tok.form) + '+' + tok.deprel);
    });
    return features;
}

std::vector<std::string> document_features(const Document& doc,
                                           const AnnotatedDocument* annotated,
                                           const FeatureSpec& spec) {
    if (spec.families.empty()) throw ConfigError("feature spec selects no families");
    if (spec.needs_annotations() && annotated == nullptr) {
        throw ConfigError("feature spec needs annotations, none supplied for document " +
                          std::to_string(doc.id));
    }
    std::vector<std::string> features;
    auto append = [&](std::vector<std::string> more) {
        features.insert(features.end(), std::make_move_iterator(more.begin()),
                        std::make_move_iterator(more.end()));
    };
    for (FeatureFamily family : spec.families) {
        switch (family) {
            case FeatureFamily::Unigram: append(extract_ngrams(doc.tokens, 1)); break;
            case FeatureFamily::Bigram: append(extract_ngrams(doc.tokens, 2)); break;
            case FeatureFamily::Trigram: append(extract_ngrams(doc.tokens, 3)); break;
            case FeatureFamily::WordPos: append(extract_word_pos(*annotated)); break;
            case FeatureFamily::WordAndWordPos:
                append(extract_word_and_word_pos(*annotated));
                break;
            case FeatureFamily::PosOnly:
                if (spec.pos_only_tags.empty()) {
                    throw ConfigError("pos-only family selected with an empty tag set");
                }
                append(extract_pos_filtered(*annotated, spec.pos_only_tags));
                break;
            case FeatureFamily::LexiconWords:
                // the lexicon only widens the vocabulary; the document side
                // is its plain unigrams
                if (!spec.families.count(FeatureFamily::Unigram)) {
                    append(extract_ngrams(doc.tokens, 1));
                }
                break;
            case FeatureFamily::DependencyPair: append(extract_dependency_pairs(*annotated)); break;
        }
    }
    return features;
}

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& train_doc_features,
                            const FeatureSpec& spec, const Lexicon* lexicon) {
    if (spec.max_features <= 0) throw ConfigError("max_features must be positive");
    if (spec.needs_lexicon() && lexicon == nullptr) {
        throw ConfigError("lexicon-words family selected but no lexicon supplied");
    }

    // document frequency over the training documents
    std::unordered_map<std::string, int> df;
    std::unordered_set<std::string> in_doc;
    for (const auto& doc_features : train_doc_features) {
        in_doc.clear();
        for (const std::string& f : doc_features) {
            if (in_doc.insert(f).second) ++df[f];
        }
    }

    std::vector<std::string> selected;
    std::unordered_set<std::string> taken;
    const std::size_t cap = static_cast<std::size_t>(spec.max_features);

    if (spec.needs_lexicon()) {
        for (const std::string& word : lexicon->unique_words()) {
            if (selected.size() >= cap) break;
            if (taken.insert(word).second) selected.push_back(word);
        }
    }

    std::vector<std::pair<const std::string*, int>> ranked;
    ranked.reserve(df.size());
    for (const auto& [feature, count] : df) {
        if (!taken.count(feature)) ranked.emplace_back(&feature, count);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return *a.first < *b.first;
    });
    for (const auto& [feature, count] : ranked) {
        if (selected.size() >= cap) break;
        selected.push_back(*feature);
    }

    if (selected.empty()) throw VocabularyError("empty feature pool");
    return Vocabulary(std::move(selected));
}

FeatureVector vectorize(const std::vector<std::string>& doc_features, const Vocabulary& vocab,
                        int doc_id) {
    FeatureVector vec;
    vec.doc_id = doc_id;
    vec.on_indices.reserve(doc_features.size());
    for (const std::string& feature : doc_features) {
        if (auto idx = vocab.lookup(feature)) vec.on_indices.push_back(*idx);
    }
    std::sort(vec.on_indices.begin(), vec.on_indices.end());
    vec.on_indices.erase(std::unique(vec.on_indices.begin(), vec.on_indices.end()),
                         vec.on_indices.end());
    return vec;
}

} // namespace sentibench
