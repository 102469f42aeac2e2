#ifndef AUTOSTRUCT_ALPHABET_HPP
#define AUTOSTRUCT_ALPHABET_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace autostruct {

// A word over a declared symbol set, stored as symbol indices.
using Word = std::vector<int>;

// A column of a k-track convolution, one letter code per track.
// Letter code i < num_symbols() names a base symbol; code == num_symbols()
// is the pad letter (printed "_").
using Column = std::vector<int>;

// Symbol set shared by all tracks of a synchronous automaton.
//
// Columns are packed into a single uint32 code, track 0 most significant,
// radix num_symbols()+1. Code order therefore equals lexicographic order
// on (track0, track1, ...) with base symbols in declaration order and the
// pad letter last; shortlex enumeration relies on this.
class TrackedAlphabet {
public:
    TrackedAlphabet() = default;
    TrackedAlphabet(std::vector<std::string> symbols, int tracks);

    int tracks() const { return tracks_; }
    int num_symbols() const { return static_cast<int>(symbols_.size()); }
    int pad() const { return num_symbols(); }
    // Count of valid columns: (num_symbols+1)^tracks minus the all-pad column.
    uint32_t num_columns() const { return num_columns_; }

    const std::string& symbol_name(int i) const { return symbols_[i]; }
    const std::vector<std::string>& symbols() const { return symbols_; }
    // -1 if the name is not declared.
    int symbol_index(const std::string& name) const;

    uint32_t encode(const Column& col) const;
    Column decode(uint32_t code) const;
    int letter(uint32_t code, int track) const;

    // Same symbols, different track count.
    TrackedAlphabet with_tracks(int tracks) const { return TrackedAlphabet(symbols_, tracks); }

    // Parses a concatenated word by greedy longest-match over declared
    // symbol names. Throws if some position matches no symbol.
    Word parse_word(const std::string& text) const;
    std::string format_word(const Word& w) const;

    // Column text form: track names joined by '|', '_' for pad.
    uint32_t parse_column(const std::string& text) const;
    std::string format_column(uint32_t code) const;

    bool operator==(const TrackedAlphabet& o) const {
        return tracks_ == o.tracks_ && symbols_ == o.symbols_;
    }
    bool same_symbols(const TrackedAlphabet& o) const { return symbols_ == o.symbols_; }

private:
    std::vector<std::string> symbols_;
    int tracks_ = 1;
    uint32_t radix_ = 1;
    uint32_t num_columns_ = 0;
};

// Column-wise merge of a word tuple; shorter words run out into pads.
// Result length = max |w_i|; the all-pad column never occurs.
std::vector<uint32_t> convolve(const TrackedAlphabet& a, const std::vector<Word>& words);

// Inverse of convolve. Throws std::invalid_argument if a track resumes
// after padding or an all-pad column occurs.
std::vector<Word> deconvolve(const TrackedAlphabet& a, const std::vector<uint32_t>& cols);

} // namespace autostruct

#endif
