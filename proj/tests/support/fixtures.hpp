#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "sentibench/corpus.hpp"
#include "sentibench/rng.hpp"

namespace sentibench::testing {

// Self-deleting scratch directory for filesystem-facing tests.
class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        auto stamp = std::to_string(::getpid()) + "-" + std::to_string(counter++);
        path_ = std::filesystem::temp_directory_path() / ("sentibench-test-" + stamp);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
}

// A corpus tree whose two classes use disjoint vocabulary, so any
// classifier should separate it perfectly.
inline std::filesystem::path make_separable_corpus(const TempDir& dir, int per_class) {
    const std::filesystem::path root = dir.path() / "corpus";
    for (int i = 0; i < per_class; ++i) {
        std::string id = std::to_string(i);
        write_file(root / "pos" / ("p" + id + ".txt"),
                   "good great wonderful film" + std::string(i % 2 ? " superb" : ""));
        write_file(root / "neg" / ("n" + id + ".txt"),
                   "bad awful terrible film" + std::string(i % 2 ? " dreadful" : ""));
    }
    return root;
}

inline Document make_doc(int id, std::vector<std::string> tokens,
                         Polarity label = Polarity::Negative) {
    Document doc;
    doc.id = id;
    doc.source_name = "doc" + std::to_string(id) + ".txt";
    doc.tokens = std::move(tokens);
    doc.label = label;
    return doc;
}

} // namespace sentibench::testing
