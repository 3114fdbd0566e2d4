#include "sentibench/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "sentibench/errors.hpp"

namespace sentibench {

const char* to_string(Strength s) { return s == Strength::Strong ? "strongsubj" : "weaksubj"; }

const char* to_string(PosConstraint p) {
    switch (p) {
        case PosConstraint::Adj: return "adj";
        case PosConstraint::Verb: return "verb";
        case PosConstraint::Noun: return "noun";
        case PosConstraint::Adv: return "adverb";
        case PosConstraint::AnyPos: return "anypos";
    }
    return "anypos";
}

Lexicon::Lexicon(std::vector<LexiconEntry> entries, int skipped_records)
    : entries_(std::move(entries)), skipped_(skipped_records) {
    std::unordered_set<std::string> seen;
    for (int i = 0; i < static_cast<int>(entries_.size()); ++i) {
        const LexiconEntry& e = entries_[i];
        if (seen.insert(e.word).second) unique_words_.push_back(e.word);
        if (e.stemmed) {
            stem_index_[e.word].push_back(i);
        } else {
            exact_index_[e.word].push_back(i);
        }
    }
}

namespace {

bool pos_passes(PosConstraint constraint, std::optional<CoarseTag> pos) {
    if (constraint == PosConstraint::AnyPos || !pos.has_value()) return true;
    switch (*pos) {
        case CoarseTag::Adj: return constraint == PosConstraint::Adj;
        case CoarseTag::Verb: return constraint == PosConstraint::Verb;
        case CoarseTag::Noun: return constraint == PosConstraint::Noun;
        case CoarseTag::Adv: return constraint == PosConstraint::Adv;
        case CoarseTag::Other: return false;
    }
    return false;
}

} // namespace

int Lexicon::first_match(const std::string& token, std::optional<CoarseTag> pos) const {
    int best = -1;
    auto consider = [&](const std::vector<int>& ids) {
        for (int id : ids) {
            if (best != -1 && id >= best) break; // ids are stored ascending
            if (pos_passes(entries_[id].pos_constraint, pos)) {
                best = id;
                break;
            }
        }
    };
    if (auto it = exact_index_.find(token); it != exact_index_.end()) consider(it->second);
    // stemmed entries match any token they prefix, so probe every prefix
    for (std::size_t len = 1; len <= token.size(); ++len) {
        if (auto it = stem_index_.find(token.substr(0, len)); it != stem_index_.end()) {
            consider(it->second);
        }
    }
    return best;
}

bool match(const LexiconEntry& entry, const std::string& token, std::optional<CoarseTag> pos) {
    bool word_ok = entry.stemmed ? token.compare(0, entry.word.size(), entry.word) == 0
                                 : token == entry.word;
    return word_ok && pos_passes(entry.pos_constraint, pos);
}

namespace {

[[noreturn]] void lex_fail(const std::filesystem::path& path, int line_no,
                           const std::string& what) {
    throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + what);
}

} // namespace

Lexicon parse_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open lexicon file: " + path.string());

    std::vector<LexiconEntry> entries;
    int skipped = 0;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::map<std::string, std::string> fields;
        std::istringstream iss(line);
        std::string pair;
        while (iss >> pair) {
            std::size_t eq = pair.find('=');
            if (eq == std::string::npos || eq == 0) {
                lex_fail(path, line_no, "expected key=value, got '" + pair + "'");
            }
            fields[pair.substr(0, eq)] = pair.substr(eq + 1);
        }
        for (const char* key : {"type", "word1", "pos1", "stemmed1", "priorpolarity"}) {
            if (!fields.count(key)) {
                lex_fail(path, line_no, std::string("missing required key '") + key + "'");
            }
        }

        const std::string& prior = fields["priorpolarity"];
        if (prior != "positive" && prior != "negative") {
            ++skipped; // neutral / both / anything else carries no polarity
            continue;
        }

        LexiconEntry entry;
        const std::string& type = fields["type"];
        if (type == "strongsubj") {
            entry.weight = Strength::Strong;
        } else if (type == "weaksubj") {
            entry.weight = Strength::Weak;
        } else {
            lex_fail(path, line_no, "unknown type value '" + type + "'");
        }

        entry.word = fields["word1"];
        if (entry.word.empty()) lex_fail(path, line_no, "empty word1");
        std::transform(entry.word.begin(), entry.word.end(), entry.word.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

        const std::string& pos = fields["pos1"];
        if (pos == "adj") {
            entry.pos_constraint = PosConstraint::Adj;
        } else if (pos == "verb") {
            entry.pos_constraint = PosConstraint::Verb;
        } else if (pos == "noun") {
            entry.pos_constraint = PosConstraint::Noun;
        } else if (pos == "adverb") {
            entry.pos_constraint = PosConstraint::Adv;
        } else if (pos == "anypos") {
            entry.pos_constraint = PosConstraint::AnyPos;
        } else {
            lex_fail(path, line_no, "unknown pos value '" + pos + "'");
        }

        const std::string& stemmed = fields["stemmed1"];
        if (stemmed == "y") {
            entry.stemmed = true;
        } else if (stemmed == "n") {
            entry.stemmed = false;
        } else {
            lex_fail(path, line_no, "unknown stemmed1 value '" + stemmed + "'");
        }

        entry.polarity = prior == "positive" ? Polarity::Positive : Polarity::Negative;
        entries.push_back(std::move(entry));
    }
    return Lexicon(std::move(entries), skipped);
}

int score_document(const Document& doc, const Lexicon& lexicon, const ScoreConfig& cfg) {
    if (cfg.weak_points < 1 || cfg.strong_points < cfg.weak_points) {
        throw ConfigError("score config requires strong_points >= weak_points >= 1");
    }
    int score = 0;
    for (const std::string& token : doc.tokens) {
        if (cfg.negation_token && token == *cfg.negation_token) {
            score -= cfg.strong_points; // negation acts as a strong negative term
            continue;
        }
        int id = lexicon.first_match(token, std::nullopt);
        if (id < 0) continue;
        const LexiconEntry& entry = lexicon.entries()[id];
        int points = 1;
        if (cfg.use_weights) {
            points = entry.weight == Strength::Strong ? cfg.strong_points : cfg.weak_points;
        }
        score += entry.polarity == Polarity::Positive ? points : -points;
    }
    return score;
}

Polarity classify_by_score(int score) {
    return score > 0 ? Polarity::Positive : Polarity::Negative;
}

} // namespace sentibench
