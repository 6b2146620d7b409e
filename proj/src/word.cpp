#include "lcslab/word.hpp"

#include <sstream>
#include <stdexcept>

namespace lcslab {

Word sample_word(Symbol k, std::int64_t n, RngStream rng) {
    if (k < 1) throw std::invalid_argument("sample_word: alphabet size must be >= 1");
    if (n < 0) throw std::invalid_argument("sample_word: negative length");
    Word w;
    w.k = k;
    w.symbols.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        w.symbols.push_back(static_cast<Symbol>(rng.uniform_int(static_cast<std::uint32_t>(k))));
    return w;
}

std::string word_to_string(const Word& w, bool one_based) {
    const Symbol shift = one_based ? 1 : 0;
    const Symbol max_digit_alphabet = one_based ? 9 : 10;
    std::ostringstream out;
    if (w.k <= max_digit_alphabet) {
        for (Symbol s : w.symbols) out << static_cast<int>(s + shift);
    } else {
        out << '[';
        for (std::size_t i = 0; i < w.symbols.size(); ++i) {
            if (i) out << ',';
            out << static_cast<int>(w.symbols[i] + shift);
        }
        out << ']';
    }
    return out.str();
}

Word word_from_string(const std::string& text, Symbol k, bool one_based) {
    const Symbol shift = one_based ? 1 : 0;
    Word w;
    w.k = k;
    auto push = [&](long v) {
        const Symbol s = static_cast<Symbol>(v - shift);
        if (s < 0 || s >= k) throw std::invalid_argument("word_from_string: symbol out of range");
        w.symbols.push_back(s);
    };
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') throw std::invalid_argument("word_from_string: unterminated list");
        std::string body = text.substr(1, text.size() - 2);
        std::istringstream in(body);
        std::string item;
        while (std::getline(in, item, ',')) {
            if (item.empty()) throw std::invalid_argument("word_from_string: empty element");
            push(std::stol(item));
        }
    } else {
        for (char c : text) {
            if (c < '0' || c > '9') throw std::invalid_argument("word_from_string: not a digit");
            push(c - '0');
        }
    }
    return w;
}

}  // namespace lcslab
