#include "fillnorm/word.hpp"

#include <algorithm>

namespace fillnorm {

Word inverse_word(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse_letter(*it));
    return out;
}

bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

bool freely_reduced(const Word& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] == inverse_letter(w[i - 1])) return false;
    return true;
}

bool cyclically_reduced(const Word& w) {
    if (!freely_reduced(w)) return false;
    if (w.size() >= 2 && w.front() == inverse_letter(w.back())) return false;
    return true;
}

}  // namespace fillnorm
