#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "qrform/rmatrix.hpp"
#include "qrform/words.hpp"

namespace qrform {

// A convolution-invertible functional on pairs of words of bicharacter type,
// represented by its four base matrices (values on u ox u, u ox S(u),
// S(u) ox u, S(u) ox S(u)) plus the recursive expansion engine.
//
// A forward engine expands by
//   r(c ox ab) = r(c1 ox b) r(c2 ox a)   and   r(ab ox c) = r(a ox c1) r(b ox c2);
// a reversed engine (used for convolution inverses) swaps the coproduct legs.
// Values are immutable; the memo cache admits concurrent readers and writers.
class Bicharacter {
public:
    // r_z with base z.R; validates the series z-constraint.
    static Bicharacter rform(const RMatrixBundle& b, const Scalar& z);
    // Central bicharacter c_zeta with base zeta.I; validates admissibility.
    static Bicharacter central(const SeriesSpec& spec, const Scalar& zeta);
    // Generic engine from a prescribed base B00: B10 and B01 are solved from
    // the left/right antipode axioms, B11 = B00. Throws on singular systems.
    static Bicharacter from_base(const SeriesSpec& spec, const QMatrix& B00,
                                 std::string tag);

    const SeriesSpec& spec() const { return spec_; }
    const std::string& tag() const { return tag_; }
    bool reversed() const { return reversed_; }
    const QMatrix& base(int p1, int p2) const { return base_[static_cast<size_t>(p1 * 2 + p2)]; }

    // Convolution inverse: co-opposite engine with inverted base matrices.
    Bicharacter convolution_inverse() const;
    // r21(a ox b) = r(b ox a): leg-swapped base matrices, opposite chirality.
    Bicharacter flip() const;
    // s = rbar_21, itself a universal r-form (forward engine).
    Bicharacter inverse_flip() const;

    Scalar evaluate(const GenWord& w1, const GenWord& w2) const;
    Scalar evaluate(const WordCombo& c1, const WordCombo& c2) const;

    void set_cache_cap(size_t cap) { cache_cap_ = cap; }
    size_t cache_size() const;

private:
    SeriesSpec spec_;
    std::string tag_;
    std::array<QMatrix, 4> base_;
    bool reversed_ = false;

    struct KeyHash {
        size_t operator()(const std::pair<uint64_t, uint64_t>& k) const {
            return std::hash<uint64_t>()(k.first * 0x9e3779b97f4a7c15ull ^ k.second);
        }
    };
    struct Cache {
        std::unordered_map<std::pair<uint64_t, uint64_t>, Scalar, KeyHash> memo;
        std::shared_mutex mu;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
    size_t cache_cap_ = size_t(1) << 22;

    Scalar eval_rec(const GenWord& w1, const GenWord& w2) const;
};

// Lazily evaluated convolution product of two functionals on A ox A:
// (b1 * b2)(w1 ox w2) = sum b1(w1' ox w2') b2(w1'' ox w2'').
class Convolution {
public:
    Convolution(Bicharacter b1, Bicharacter b2);
    Scalar evaluate(const GenWord& w1, const GenWord& w2) const;

private:
    Bicharacter b1_;
    Bicharacter b2_;
    int n_;
};

// Sparse tensor of values of b on all word pairs of a fixed parity pattern.
// Index slots (3 bits each, values 0..N-1) are ordered
// word1-letter0-upper, word1-letter0-lower, ..., then the word2 letters.
class PairTensor {
public:
    static PairTensor build(const Bicharacter& b, const std::vector<int>& pat1,
                            const std::vector<int>& pat2);

    const std::map<uint64_t, Scalar>& entries() const { return a_; }
    int d1() const { return d1_; }
    int d2() const { return d2_; }
    int slots() const { return 2 * (d1_ + d2_); }

    static uint64_t pack(const std::vector<int>& idx);
    static std::vector<int> unpack(uint64_t key, int slots);

    // Value at explicit words of the matching pattern (0-based indices).
    Scalar at(const GenWord& w1, const GenWord& w2) const;

private:
    int d1_ = 0, d2_ = 0, n_ = 0;
    std::map<uint64_t, Scalar> a_;
};

// Matrix of r-values on parity-free word pairs: rows (I,J) packed as
// I*N^d1 + J for u^I_J, columns likewise for the second word.
QMatrix pair_matrix(const Bicharacter& b, int d1, int d2);

struct CheckOutcome {
    bool pass = true;
    std::string witness;    // first counterexample, empty when pass
    long identities = 0;    // number of scalar identities covered
};

// (CQT.1) and (CQT.2) as exact scalar identities on all word triples with
// the constrained degrees <= D, (CQT.3) as ideal membership for word pairs of
// degree <= D-1 each, and well-definedness of b on the relation slice.
struct CqtReport {
    CheckOutcome cqt1, cqt2, cqt3, unitality, well_defined;
    bool pass() const {
        return cqt1.pass && cqt2.pass && cqt3.pass && unitality.pass && well_defined.pass;
    }
};

CqtReport check_cqt(const Bicharacter& b, const RelationIdealSlice& slice, int D);

// Centrality variant for c_zeta: (CB.1) expansions are shared with check_cqt;
// (CB.2) is checked as ideal membership of c(a ox b1) b2 - c(a ox b2) b1.
CheckOutcome check_central(const Bicharacter& b, const RelationIdealSlice& slice, int D);

// true iff rbar = r21 on all pairs of degree <= 2 (base-matrix comparison).
bool check_cotriangular(const Bicharacter& b);

}  // namespace qrform
