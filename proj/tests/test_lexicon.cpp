#include <doctest.h>

#include "sentibench/errors.hpp"
#include "sentibench/lexicon.hpp"
#include "sentibench/rng.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace sentibench;
using sentibench::testing::TempDir;
using sentibench::testing::write_file;

namespace {

std::filesystem::path write_lexicon(const TempDir& dir, const std::string& content) {
    auto path = dir.path() / "lexicon.tff";
    write_file(path, content);
    return path;
}

LexiconEntry entry(Strength w, std::string word, Polarity polarity,
                   PosConstraint pos = PosConstraint::AnyPos, bool stemmed = false) {
    return LexiconEntry{w, std::move(word), pos, stemmed, polarity};
}

// random lexicon + document generator shared by the property tests
Lexicon random_lexicon(SplitMix64& rng, std::vector<std::string>* word_pool = nullptr) {
    static const std::vector<std::string> words = {"able", "abl",  "bright", "dark", "dank",
                                                   "evil", "fine", "glad",   "grim", "warm"};
    std::vector<LexiconEntry> entries;
    int count = 2 + static_cast<int>(rng.next_below(8));
    for (int i = 0; i < count; ++i) {
        LexiconEntry e;
        e.weight = rng.next_below(2) ? Strength::Strong : Strength::Weak;
        e.word = words[rng.next_below(words.size())];
        e.pos_constraint = PosConstraint::AnyPos;
        e.stemmed = rng.next_below(3) == 0;
        e.polarity = rng.next_below(2) ? Polarity::Positive : Polarity::Negative;
        entries.push_back(e);
    }
    if (word_pool) *word_pool = words;
    return Lexicon(std::move(entries));
}

} // namespace

TEST_SUITE("lexicon") {

TEST_CASE("parses the record format") {
    TempDir dir;
    auto path = write_lexicon(
        dir, "type=strongsubj len=1 word1=great pos1=adj stemmed1=n priorpolarity=positive\n");
    Lexicon lex = parse_lexicon(path);
    REQUIRE(lex.entry_count() == 1);
    const LexiconEntry& e = lex.entries()[0];
    CHECK(e.weight == Strength::Strong);
    CHECK(e.word == "great");
    CHECK(e.pos_constraint == PosConstraint::Adj);
    CHECK(e.stemmed == false);
    CHECK(e.polarity == Polarity::Positive);
    CHECK(lex.skipped_records() == 0);
}

TEST_CASE("empty file gives an empty lexicon") {
    TempDir dir;
    Lexicon lex = parse_lexicon(write_lexicon(dir, ""));
    CHECK(lex.entry_count() == 0);
    CHECK(lex.unique_word_count() == 0);
}

TEST_CASE("neutral records are skipped and counted") {
    TempDir dir;
    auto path = write_lexicon(
        dir,
        "type=weaksubj len=1 word1=ok pos1=anypos stemmed1=n priorpolarity=neutral\n"
        "type=weaksubj len=1 word1=nice pos1=adj stemmed1=n priorpolarity=positive\n"
        "type=weaksubj len=1 word1=both pos1=anypos stemmed1=n priorpolarity=both\n");
    Lexicon lex = parse_lexicon(path);
    CHECK(lex.entry_count() == 1);
    CHECK(lex.skipped_records() == 2);
}

TEST_CASE("adverb constraint and duplicate words are kept") {
    TempDir dir;
    auto path = write_lexicon(
        dir,
        "type=weaksubj len=1 word1=well pos1=adverb stemmed1=n priorpolarity=positive\n"
        "type=strongsubj len=1 word1=well pos1=noun stemmed1=n priorpolarity=positive\n");
    Lexicon lex = parse_lexicon(path);
    CHECK(lex.entry_count() == 2);
    CHECK(lex.unique_word_count() == 1);
    CHECK(lex.entries()[0].pos_constraint == PosConstraint::Adv);
}

TEST_CASE("parse errors: missing keys and unknown pos") {
    TempDir dir;
    CHECK_THROWS_WITH_AS(
        parse_lexicon(write_lexicon(
            dir, "type=weaksubj len=1 word1=x stemmed1=n priorpolarity=positive\n")),
        doctest::Contains(":1:"), ParseError);
    CHECK_THROWS_AS(parse_lexicon(write_lexicon(
                        dir,
                        "type=weaksubj len=1 word1=x pos1=blob stemmed1=n "
                        "priorpolarity=positive\n")),
                    ParseError);
    CHECK_THROWS_AS(parse_lexicon(dir.path() / "missing.tff"), ParseError);
}

TEST_CASE("match semantics") {
    CHECK(match(entry(Strength::Weak, "great", Polarity::Positive), "great"));
    CHECK_FALSE(match(entry(Strength::Weak, "great", Polarity::Positive), "greatly"));
    // stemmed entries are prefixes
    CHECK(match(entry(Strength::Weak, "abandon", Polarity::Negative, PosConstraint::AnyPos, true),
                "abandoned"));
    CHECK(match(entry(Strength::Weak, "abandon", Polarity::Negative, PosConstraint::AnyPos, true),
                "abandon"));
    CHECK_FALSE(match(
        entry(Strength::Weak, "abandon", Polarity::Negative, PosConstraint::AnyPos, true), "aban"));
    // pos constraints
    CHECK_FALSE(match(entry(Strength::Weak, "great", Polarity::Positive, PosConstraint::Adj),
                      "great", CoarseTag::Verb));
    CHECK(match(entry(Strength::Weak, "great", Polarity::Positive, PosConstraint::Adj), "great",
                CoarseTag::Adj));
    // missing pos passes any constraint
    CHECK(match(entry(Strength::Weak, "great", Polarity::Positive, PosConstraint::Adj), "great"));
}

TEST_CASE("scoring matches the worked examples") {
    Lexicon lex({entry(Strength::Strong, "great", Polarity::Positive)});
    ScoreConfig weighted;
    weighted.use_weights = true;

    CHECK(score_document(testing::make_doc(0, {"great"}), lex, weighted) == 5);
    CHECK(score_document(testing::make_doc(0, {}), lex, weighted) == 0);

    ScoreConfig with_negation = weighted;
    with_negation.negation_token = "n't";
    CHECK(score_document(testing::make_doc(0, {"great", "n't"}), lex, with_negation) == 0);

    ScoreConfig unweighted;
    CHECK(score_document(testing::make_doc(0, {"great"}), lex, unweighted) == 1);
}

TEST_CASE("first matching entry in file order wins") {
    Lexicon lex({entry(Strength::Weak, "fine", Polarity::Negative),
                 entry(Strength::Strong, "fine", Polarity::Positive)});
    ScoreConfig weighted;
    weighted.use_weights = true;
    CHECK(score_document(testing::make_doc(0, {"fine"}), lex, weighted) == -1);
}

TEST_CASE("stemmed entries apply in corpus scoring") {
    Lexicon lex({entry(Strength::Strong, "abandon", Polarity::Negative, PosConstraint::AnyPos,
                       true)});
    ScoreConfig weighted;
    weighted.use_weights = true;
    CHECK(score_document(testing::make_doc(0, {"abandoned", "abandonment"}), lex, weighted) == -10);
}

TEST_CASE("malformed point configuration is rejected") {
    Lexicon lex({entry(Strength::Strong, "great", Polarity::Positive)});
    ScoreConfig inverted;
    inverted.use_weights = true;
    inverted.strong_points = 1;
    inverted.weak_points = 5;
    CHECK_THROWS_AS(score_document(testing::make_doc(0, {"great"}), lex, inverted), ConfigError);
    ScoreConfig zero;
    zero.weak_points = 0;
    CHECK_THROWS_AS(score_document(testing::make_doc(0, {"great"}), lex, zero), ConfigError);
}

TEST_CASE("classify_by_score threshold and tie policy") {
    CHECK(classify_by_score(5) == Polarity::Positive);
    CHECK(classify_by_score(-1) == Polarity::Negative);
    CHECK(classify_by_score(0) == Polarity::Negative);
}

TEST_CASE("scoring agrees with the brute-force oracle on random inputs") {
    SplitMix64 rng(2024);
    for (int round = 0; round < 300; ++round) {
        std::vector<std::string> pool;
        Lexicon lex = random_lexicon(rng, &pool);
        std::vector<std::string> tokens;
        int len = static_cast<int>(rng.next_below(20));
        for (int i = 0; i < len; ++i) {
            if (rng.next_below(8) == 0) {
                tokens.push_back("n't");
            } else {
                std::string word = pool[rng.next_below(pool.size())];
                if (rng.next_below(4) == 0) word += "ed"; // exercise stemmed prefixes
                tokens.push_back(word);
            }
        }
        ScoreConfig cfg;
        cfg.use_weights = rng.next_below(2) != 0;
        if (rng.next_below(2)) cfg.negation_token = "n't";
        CHECK(score_document(testing::make_doc(0, tokens), lex, cfg) ==
              testing::brute_force_score(tokens, lex, cfg));
    }
}

TEST_CASE("appending a strong positive match never decreases the score") {
    SplitMix64 rng(99);
    for (int round = 0; round < 100; ++round) {
        Lexicon lex({entry(Strength::Strong, "stellar", Polarity::Positive)});
        std::vector<std::string> tokens;
        int len = static_cast<int>(rng.next_below(10));
        for (int i = 0; i < len; ++i) tokens.push_back(rng.next_below(2) ? "stellar" : "mud");
        ScoreConfig cfg;
        cfg.use_weights = rng.next_below(2) != 0;
        int before = score_document(testing::make_doc(0, tokens), lex, cfg);
        tokens.push_back("stellar");
        int after = score_document(testing::make_doc(0, tokens), lex, cfg);
        CHECK(after >= before);
    }
}

TEST_CASE("flipping every entry polarity negates every score") {
    SplitMix64 rng(512);
    for (int round = 0; round < 100; ++round) {
        std::vector<std::string> pool;
        Lexicon lex = random_lexicon(rng, &pool);
        std::vector<LexiconEntry> flipped = lex.entries();
        for (LexiconEntry& e : flipped) {
            e.polarity = e.polarity == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
        }
        Lexicon mirror(flipped);
        std::vector<std::string> tokens;
        int len = static_cast<int>(rng.next_below(15));
        for (int i = 0; i < len; ++i) tokens.push_back(pool[rng.next_below(pool.size())]);
        ScoreConfig cfg;
        cfg.use_weights = rng.next_below(2) != 0;
        // no negation: the negation term is not part of the entry list
        CHECK(score_document(testing::make_doc(0, tokens), lex, cfg) ==
              -score_document(testing::make_doc(0, tokens), mirror, cfg));
    }
}

TEST_CASE("unweighted equals weighted at strong = weak = 1") {
    SplitMix64 rng(77);
    for (int round = 0; round < 100; ++round) {
        std::vector<std::string> pool;
        Lexicon lex = random_lexicon(rng, &pool);
        std::vector<std::string> tokens;
        int len = static_cast<int>(rng.next_below(15));
        for (int i = 0; i < len; ++i) tokens.push_back(pool[rng.next_below(pool.size())]);
        ScoreConfig unweighted;
        ScoreConfig flat;
        flat.use_weights = true;
        flat.strong_points = 1;
        flat.weak_points = 1;
        CHECK(score_document(testing::make_doc(0, tokens), lex, unweighted) ==
              score_document(testing::make_doc(0, tokens), lex, flat));
    }
}

} // TEST_SUITE
