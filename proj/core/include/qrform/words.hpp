#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qrform/qmatrix.hpp"
#include "qrform/rmatrix.hpp"
#include "qrform/scalar.hpp"

namespace qrform {

// One generator letter: u^i_j (s = 0) or S(u^i_j) (s = 1). Indices 1-based.
struct GenLetter {
    uint8_t i;
    uint8_t j;
    uint8_t s;
    auto operator<=>(const GenLetter&) const = default;
};

// A word in generator letters; the empty word is the unit 1.
class GenWord {
public:
    GenWord() = default;
    explicit GenWord(std::vector<GenLetter> letters) : letters_(std::move(letters)) {}
    static GenWord unit() { return GenWord(); }
    static GenWord gen(int i, int j, int s = 0) {
        return GenWord({GenLetter{static_cast<uint8_t>(i), static_cast<uint8_t>(j),
                                  static_cast<uint8_t>(s)}});
    }

    const std::vector<GenLetter>& letters() const { return letters_; }
    size_t degree() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    bool parity_free() const;

    GenWord operator*(const GenWord& o) const;  // concatenation
    auto operator<=>(const GenWord&) const = default;

    // Packed key for memo tables; requires degree <= 8 and indices <= 8.
    uint64_t key() const;

    std::string str() const;

private:
    std::vector<GenLetter> letters_;
};

// A formal linear combination of words; zero coefficients are never stored.
class WordCombo {
public:
    WordCombo() = default;
    explicit WordCombo(const GenWord& w, Scalar c = Scalar(1)) { add(w, c); }
    static WordCombo unit(Scalar c = Scalar(1)) { return WordCombo(GenWord::unit(), c); }

    void add(const GenWord& w, const Scalar& c);
    WordCombo operator+(const WordCombo& o) const;
    WordCombo operator-(const WordCombo& o) const;
    WordCombo operator*(const WordCombo& o) const;  // algebra product
    WordCombo scaled(const Scalar& s) const;
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const WordCombo& o) const { return terms_ == o.terms_; }
    size_t max_degree() const;

    const std::map<GenWord, Scalar>& terms() const { return terms_; }
    std::string str() const;

private:
    std::map<GenWord, Scalar> terms_;
};

// All coproduct splittings of w: Delta(u^i_j) = sum_k u^i_k ox u^k_j and
// Delta(S(u^i_j)) = sum_k S(u^k_j) ox S(u^i_k); multiplicative on words.
// N^degree pairs, enumerated in lexicographic order of the index tuple.
std::vector<std::pair<GenWord, GenWord>> coproduct_splittings(const GenWord& w, int N);

// epsilon(w): product of Kronecker deltas (s-parity irrelevant).
Scalar counit(const GenWord& w);
Scalar counit(const WordCombo& c);

// Functional matrices needed to resolve S^2 on parity-1 letters (late-bound;
// provided by the antipode-functional layer).
struct S2Data {
    QMatrix fbar;  // N x N, values of fbar_r on generators
    QMatrix f;     // N x N, values of f_r on generators
};

// Antipode on words: reverses and flips parity 0 -> 1. Letters already at
// parity 1 need S^2(u^i_j) = sum_{k,l} fbar(u^i_k) u^k_l f(u^l_j); pass the
// functional matrices for that, else an Error is thrown when one is hit.
WordCombo antipode_word(const GenWord& w, const S2Data* s2 = nullptr);

// Quantum determinant: sum over permutations with coefficients (-q)^inv.
WordCombo detq_combo(int N, const Scalar& q);

// Series antipode as a parity-0 combination (SL and O/Sp; GL has none
// without localization).
WordCombo antipode_poly(const RMatrixBundle& b, int i, int j);

// The relation ideal generators of degree <= 2: FRT relations
// Rhat u1 u2 - u1 u2 Rhat for all series, both metric families for O/Sp,
// det_q - 1 for SL (degree N).
std::vector<WordCombo> relation_generators(const RMatrixBundle& b);

// The filtered degree-<=D slice of the relation ideal: generators padded by
// letter products, echelonized over the parity-free word basis.
class RelationIdealSlice {
public:
    RelationIdealSlice(const RMatrixBundle& b, int degree_bound,
                       size_t max_words = 1u << 21);

    int degree_bound() const { return degree_bound_; }
    const SeriesSpec& spec() const { return spec_; }
    const std::vector<WordCombo>& basis() const { return basis_; }
    long rank() const { return echelon_.rank(); }

    // true iff x lies in the linear span of the slice (exact).
    bool member(const WordCombo& x) const;

    // Index of a parity-free word in the slice coordinate space.
    uint32_t word_index(const GenWord& w) const;
    SparseRow to_row(const WordCombo& x) const;

private:
    SeriesSpec spec_;
    int degree_bound_;
    int n_;
    std::vector<uint32_t> degree_offsets_;
    std::vector<WordCombo> basis_;
    Echelon echelon_;
};

}  // namespace qrform
