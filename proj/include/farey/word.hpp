#pragma once

#include <string>
#include <vector>

#include "farey/continued_fraction.hpp"
#include "farey/error.hpp"
#include "farey/fraction.hpp"

namespace farey {

enum class Letter : char { L = 'L', R = 'R' };

/// Word over {L, R}; L picks the left half of the current Farey interval, R the right.
struct Word {
    std::vector<Letter> letters;

    std::size_t size() const noexcept { return letters.size(); }
    std::string to_string() const {
        std::string s;
        s.reserve(letters.size());
        for (Letter c : letters) s.push_back(static_cast<char>(c));
        return s;
    }
    /// Run lengths of maximal single-letter blocks.
    std::vector<Quotient> blocks() const {
        std::vector<Quotient> out;
        for (std::size_t i = 0; i < letters.size(); ++i) {
            if (i == 0 || letters[i] != letters[i - 1]) out.push_back(0);
            ++out.back();
        }
        return out;
    }
    friend bool operator==(const Word&, const Word&) = default;
};

/// Stern-Brocot node pair (left = a/b, right = c/d) allowing the 1/0 endpoint.
struct SternBrocotInterval {
    BigInt a = 0, b = 1;  // left
    BigInt c = 1, d = 0;  // right

    BigInt mediant_num() const { return a + c; }
    BigInt mediant_den() const { return b + d; }

    void step(Letter x) {
        if (x == Letter::L) {
            c += a;
            d += b;
        } else {
            a += c;
            b += d;
        }
    }
};

/// Applies `w` from the root interval (0/1, 1/0). The first L maps [0, inf] onto [0, 1].
inline SternBrocotInterval descend(const Word& w) {
    SternBrocotInterval iv;
    for (Letter x : w.letters) iv.step(x);
    return iv;
}

/// Full block word L^{a_1} R^{a_2} L^{a_3} ... of length a_1 + ... + a_n.
///
/// Read from the root (0/1, 1/0) it ends on an interval having p/q as an endpoint.
inline Word lr_word(const ContinuedFraction& cf) {
    Word w;
    Letter cur = Letter::L;
    for (Quotient a : cf.quotients()) {
        w.letters.insert(w.letters.end(), a, cur);
        cur = (cur == Letter::L) ? Letter::R : Letter::L;
    }
    return w;
}

/// Descent word: lr_word without its final letter, length a_1 + ... + a_n - 1.
/// Read from the root (0/1, 1/0) it ends on the interval whose mediant is p/q,
/// i.e. the step that first creates p/q as a breakpoint.
inline Word descent_word(const ContinuedFraction& cf) {
    Word w = lr_word(cf);
    w.letters.pop_back();
    return w;
}

}  // namespace farey
