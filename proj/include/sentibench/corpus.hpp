#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace sentibench {

enum class Polarity { Negative = 0, Positive = 1 };

const char* to_string(Polarity p);
Polarity polarity_from_string(std::string_view s); // "pos" / "neg"

// One review. Tokens are lowercase, nonempty, whitespace-free.
struct Document {
    int id = -1;
    std::string source_name;
    std::vector<std::string> tokens;
    Polarity label = Polarity::Negative;
};

struct Dataset {
    std::vector<Document> documents;

    std::size_t size() const { return documents.size(); }
    int count(Polarity label) const;
};

// Tokenization rules, applied in this order:
//   1. lowercase ASCII letters (bytes >= 0x80 are left untouched);
//   2. split on ASCII whitespace;
//   3. peel leading and trailing punctuation characters off each chunk,
//      one character per token, preserving their original order;
//   4. a remaining chunk that ends in "n't" (and is longer than "n't"
//      itself) is split into the stem and the clitic "n't".
// The output is identical for identical input, and re-tokenizing the
// output joined by single spaces reproduces it.
std::vector<std::string> tokenize(std::string_view text);

// Loads <root>/neg/*.txt then <root>/pos/*.txt (sorted filenames within
// each directory) and assigns ids 0..n-1 in that order. Throws
// CorpusError when a polarity subdirectory is missing, when a file is
// not valid UTF-8, or when a file tokenizes to zero tokens.
Dataset load_corpus(const std::filesystem::path& root);

} // namespace sentibench
