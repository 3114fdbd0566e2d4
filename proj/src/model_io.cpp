#include <cmath>
#include <fstream>
#include <sstream>

#include "sentibench/classifiers.hpp"
#include "sentibench/errors.hpp"

namespace sentibench {

// Format "sentibench-model v1": line-oriented text with hex-float
// numbers, so a save/load round-trip is bit-exact.
//
//   sentibench-model v1
//   kind nb|maxent|svm
//   vocab_size <D>
//   ... kind-specific sections ...

namespace {

constexpr const char* kMagic = "sentibench-model v1";

void write_doubles(std::ostream& out, const std::vector<double>& values) {
    out << values.size();
    out << std::hexfloat;
    for (double v : values) out << ' ' << v;
    out << std::defaultfloat << '\n';
}

std::vector<double> read_doubles(std::istream& in, const std::string& context) {
    std::size_t count = 0;
    if (!(in >> count)) throw ParseError("model file: bad count in " + context);
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::string token;
        if (!(in >> token)) throw ParseError("model file: truncated " + context);
        values[i] = std::strtod(token.c_str(), nullptr);
    }
    return values;
}

std::string expect_key(std::istream& in, const std::string& key) {
    std::string k, v;
    if (!(in >> k >> v) || k != key) throw ParseError("model file: expected '" + key + "' line");
    return v;
}

} // namespace

void save_model(const Model& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write model file: " + path.string());
    out << kMagic << '\n';
    if (const NBModel* nb = std::get_if<NBModel>(&model)) {
        out << "kind nb\n";
        out << "vocab_size " << nb->vocab_size << '\n';
        out << "log_prior ";
        write_doubles(out, {nb->log_prior[0], nb->log_prior[1]});
        for (int c = 0; c < 2; ++c) {
            out << "log_on ";
            write_doubles(out, nb->log_on[c]);
            out << "log_off ";
            write_doubles(out, nb->log_off[c]);
        }
    } else {
        const LinearModel& lin = std::get<LinearModel>(model);
        out << "kind " << (lin.kind == LinearKind::MaxEnt ? "maxent" : "svm") << '\n';
        out << "vocab_size " << lin.w.size() << '\n';
        out << "b " << std::hexfloat << lin.b << std::defaultfloat << '\n';
        out << "w ";
        write_doubles(out, lin.w);
    }
    if (!out) throw DataError("failed writing model file: " + path.string());
}

Model load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model file: " + path.string());
    std::string line;
    std::getline(in, line);
    if (line != kMagic) throw ParseError("model file: unknown header '" + line + "'");

    std::string kind = expect_key(in, "kind");
    int vocab_size = std::stoi(expect_key(in, "vocab_size"));
    if (kind == "nb") {
        NBModel nb;
        nb.vocab_size = vocab_size;
        std::string key;
        in >> key;
        if (key != "log_prior") throw ParseError("model file: expected log_prior");
        std::vector<double> priors = read_doubles(in, "log_prior");
        if (priors.size() != 2) throw ParseError("model file: log_prior needs 2 values");
        nb.log_prior = {priors[0], priors[1]};
        for (int c = 0; c < 2; ++c) {
            in >> key;
            if (key != "log_on") throw ParseError("model file: expected log_on");
            nb.log_on[c] = read_doubles(in, "log_on");
            in >> key;
            if (key != "log_off") throw ParseError("model file: expected log_off");
            nb.log_off[c] = read_doubles(in, "log_off");
            if (static_cast<int>(nb.log_on[c].size()) != vocab_size ||
                static_cast<int>(nb.log_off[c].size()) != vocab_size) {
                throw ParseError("model file: likelihood length != vocab_size");
            }
        }
        return nb;
    }
    if (kind == "maxent" || kind == "svm") {
        LinearModel lin;
        lin.kind = kind == "maxent" ? LinearKind::MaxEnt : LinearKind::Svm;
        std::string b_text = expect_key(in, "b");
        lin.b = std::strtod(b_text.c_str(), nullptr);
        std::string key;
        in >> key;
        if (key != "w") throw ParseError("model file: expected w");
        lin.w = read_doubles(in, "w");
        if (static_cast<int>(lin.w.size()) != vocab_size) {
            throw ParseError("model file: weight length != vocab_size");
        }
        return lin;
    }
    throw ParseError("model file: unknown kind '" + kind + "'");
}

} // namespace sentibench
