#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sentibench/annotations.hpp"
#include "sentibench/corpus.hpp"

namespace sentibench {

enum class Strength { Weak, Strong };
enum class PosConstraint { Adj, Verb, Noun, Adv, AnyPos };

const char* to_string(Strength s);
const char* to_string(PosConstraint p);

struct LexiconEntry {
    Strength weight = Strength::Weak;
    std::string word;   // lowercase
    PosConstraint pos_constraint = PosConstraint::AnyPos;
    bool stemmed = false;
    Polarity polarity = Polarity::Negative;
};

class Lexicon {
public:
    explicit Lexicon(std::vector<LexiconEntry> entries, int skipped_records = 0);
    Lexicon() = default;

    const std::vector<LexiconEntry>& entries() const { return entries_; }
    std::size_t entry_count() const { return entries_.size(); }
    int skipped_records() const { return skipped_; }

    // Distinct entry words, in first-occurrence (file) order.
    const std::vector<std::string>& unique_words() const { return unique_words_; }
    std::size_t unique_word_count() const { return unique_words_.size(); }

    // Index of the first entry (in file order) matching the token, or -1.
    // Considers exact entries whose word equals the token and stemmed
    // entries whose word is a prefix of the token.
    int first_match(const std::string& token, std::optional<CoarseTag> pos) const;

private:
    std::vector<LexiconEntry> entries_;
    std::vector<std::string> unique_words_;
    int skipped_ = 0;
    std::unordered_map<std::string, std::vector<int>> exact_index_; // word -> entry ids
    std::unordered_map<std::string, std::vector<int>> stem_index_;  // stem -> entry ids
};

struct ScoreConfig {
    bool use_weights = false;
    int strong_points = 5;
    int weak_points = 1;
    std::optional<std::string> negation_token; // "n't" when negation is on
};

// Line-based records of space-separated key=value pairs:
//   type=(weaksubj|strongsubj) len=1 word1=<word>
//   pos1=(adj|adverb|verb|noun|anypos) stemmed1=(y|n)
//   priorpolarity=(positive|negative|...)
// Records with a priorpolarity other than positive/negative are skipped
// and counted. Missing required keys and unknown pos values raise
// ParseError with the line number. Duplicate (word, pos) entries are
// kept; lookups resolve to the first match in file order.
Lexicon parse_lexicon(const std::filesystem::path& path);

// token must be lowercase. pos passes when the entry takes any pos,
// when the token carries no tag, or when the tag maps to the constraint.
bool match(const LexiconEntry& entry, const std::string& token,
           std::optional<CoarseTag> pos = std::nullopt);

// Signed sum over tokens: a positive match adds points, a negative one
// subtracts. Unweighted scoring gives every match 1 point; weighted
// scoring gives strong_points / weak_points. Each occurrence of the
// negation token, when configured, subtracts strong_points and is not
// looked up in the lexicon. Tokens matched by several entries use the
// first matching entry in file order.
int score_document(const Document& doc, const Lexicon& lexicon, const ScoreConfig& cfg);

// Positive iff score > 0. A zero score is Negative (repo-wide tie policy).
Polarity classify_by_score(int score);

} // namespace sentibench
