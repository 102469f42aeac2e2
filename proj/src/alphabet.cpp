#include "autostruct/alphabet.hpp"

#include <algorithm>

namespace autostruct {

static uint32_t pow_u32(uint32_t b, int e) {
    uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        r *= b;
        if (r > 0xffffffffULL) throw std::overflow_error("column space too large");
    }
    return static_cast<uint32_t>(r);
}

TrackedAlphabet::TrackedAlphabet(std::vector<std::string> symbols, int tracks)
    : symbols_(std::move(symbols)), tracks_(tracks) {
    if (symbols_.empty()) throw std::invalid_argument("alphabet needs at least one symbol");
    if (tracks_ < 1) throw std::invalid_argument("track count must be positive");
    for (size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].empty() || symbols_[i] == "_")
            throw std::invalid_argument("bad symbol name");
        for (size_t j = i + 1; j < symbols_.size(); ++j)
            if (symbols_[i] == symbols_[j]) throw std::invalid_argument("duplicate symbol");
    }
    radix_ = static_cast<uint32_t>(symbols_.size()) + 1;
    num_columns_ = pow_u32(radix_, tracks_) - 1; // all-pad column excluded
}

int TrackedAlphabet::symbol_index(const std::string& name) const {
    for (int i = 0; i < num_symbols(); ++i)
        if (symbols_[i] == name) return i;
    return -1;
}

uint32_t TrackedAlphabet::encode(const Column& col) const {
    if (static_cast<int>(col.size()) != tracks_) throw std::invalid_argument("column arity mismatch");
    uint32_t code = 0;
    bool all_pad = true;
    for (int t = 0; t < tracks_; ++t) {
        if (col[t] < 0 || col[t] > pad()) throw std::invalid_argument("letter out of range");
        if (col[t] != pad()) all_pad = false;
        code = code * radix_ + static_cast<uint32_t>(col[t]);
    }
    if (all_pad) throw std::invalid_argument("all-pad column");
    return code;
}

Column TrackedAlphabet::decode(uint32_t code) const {
    Column col(tracks_);
    for (int t = tracks_ - 1; t >= 0; --t) {
        col[t] = static_cast<int>(code % radix_);
        code /= radix_;
    }
    return col;
}

int TrackedAlphabet::letter(uint32_t code, int track) const {
    for (int t = tracks_ - 1; t > track; --t) code /= radix_;
    return static_cast<int>(code % radix_);
}

Word TrackedAlphabet::parse_word(const std::string& text) const {
    Word w;
    size_t pos = 0;
    while (pos < text.size()) {
        int best = -1;
        size_t best_len = 0;
        for (int i = 0; i < num_symbols(); ++i) {
            const std::string& s = symbols_[i];
            if (s.size() > best_len && text.compare(pos, s.size(), s) == 0) {
                best = i;
                best_len = s.size();
            }
        }
        if (best < 0) throw std::invalid_argument("cannot tokenize word: " + text);
        w.push_back(best);
        pos += best_len;
    }
    return w;
}

std::string TrackedAlphabet::format_word(const Word& w) const {
    std::string out;
    for (int s : w) out += symbols_.at(static_cast<size_t>(s));
    return out;
}

uint32_t TrackedAlphabet::parse_column(const std::string& text) const {
    Column col;
    size_t pos = 0;
    while (true) {
        size_t bar = text.find('|', pos);
        std::string tok = text.substr(pos, bar == std::string::npos ? bar : bar - pos);
        if (tok == "_") {
            col.push_back(pad());
        } else {
            int idx = symbol_index(tok);
            if (idx < 0) throw std::invalid_argument("unknown symbol in column: " + tok);
            col.push_back(idx);
        }
        if (bar == std::string::npos) break;
        pos = bar + 1;
    }
    return encode(col);
}

std::string TrackedAlphabet::format_column(uint32_t code) const {
    Column col = decode(code);
    std::string out;
    for (int t = 0; t < tracks_; ++t) {
        if (t) out += '|';
        out += col[t] == pad() ? "_" : symbols_[static_cast<size_t>(col[t])];
    }
    return out;
}

std::vector<uint32_t> convolve(const TrackedAlphabet& a, const std::vector<Word>& words) {
    if (static_cast<int>(words.size()) != a.tracks())
        throw std::invalid_argument("tuple arity does not match track count");
    size_t len = 0;
    for (const Word& w : words) len = std::max(len, w.size());
    std::vector<uint32_t> cols;
    cols.reserve(len);
    Column col(static_cast<size_t>(a.tracks()));
    for (size_t p = 0; p < len; ++p) {
        for (int t = 0; t < a.tracks(); ++t)
            col[static_cast<size_t>(t)] = p < words[static_cast<size_t>(t)].size()
                                              ? words[static_cast<size_t>(t)][p]
                                              : a.pad();
        cols.push_back(a.encode(col));
    }
    return cols;
}

std::vector<Word> deconvolve(const TrackedAlphabet& a, const std::vector<uint32_t>& cols) {
    std::vector<Word> words(static_cast<size_t>(a.tracks()));
    std::vector<bool> padded(static_cast<size_t>(a.tracks()), false);
    for (uint32_t code : cols) {
        Column col = a.decode(code);
        bool all_pad = true;
        for (int t = 0; t < a.tracks(); ++t) {
            if (col[static_cast<size_t>(t)] == a.pad()) {
                padded[static_cast<size_t>(t)] = true;
            } else {
                all_pad = false;
                if (padded[static_cast<size_t>(t)])
                    throw std::invalid_argument("non-contiguous padding");
                words[static_cast<size_t>(t)].push_back(col[static_cast<size_t>(t)]);
            }
        }
        if (all_pad) throw std::invalid_argument("all-pad column");
    }
    return words;
}

} // namespace autostruct
