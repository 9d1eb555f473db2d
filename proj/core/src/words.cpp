#include "qrform/words.hpp"

#include <algorithm>
#include <sstream>

#include "qrform/errors.hpp"

namespace qrform {

bool GenWord::parity_free() const {
    return std::all_of(letters_.begin(), letters_.end(),
                       [](const GenLetter& l) { return l.s == 0; });
}

GenWord GenWord::operator*(const GenWord& o) const {
    std::vector<GenLetter> ls = letters_;
    ls.insert(ls.end(), o.letters_.begin(), o.letters_.end());
    return GenWord(std::move(ls));
}

uint64_t GenWord::key() const {
    if (letters_.size() > 8) throw ResourceBound("word too long for packed key");
    uint64_t k = letters_.size();
    for (const GenLetter& l : letters_) {
        if (l.i > 8 || l.j > 8) throw ResourceBound("index too large for packed key");
        k = (k << 7) | (static_cast<uint64_t>(l.i - 1) << 4) |
            (static_cast<uint64_t>(l.j - 1) << 1) | l.s;
    }
    return k;
}

std::string GenWord::str() const {
    if (letters_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const GenLetter& l : letters_) {
        if (!first) os << ".";
        if (l.s) os << "S(";
        os << "u" << int(l.i) << "_" << int(l.j);
        if (l.s) os << ")";
        first = false;
    }
    return os.str();
}

void WordCombo::add(const GenWord& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

WordCombo WordCombo::operator+(const WordCombo& o) const {
    WordCombo r = *this;
    for (const auto& [w, c] : o.terms_) r.add(w, c);
    return r;
}

WordCombo WordCombo::operator-(const WordCombo& o) const {
    WordCombo r = *this;
    for (const auto& [w, c] : o.terms_) r.add(w, -c);
    return r;
}

WordCombo WordCombo::operator*(const WordCombo& o) const {
    WordCombo r;
    for (const auto& [w1, c1] : terms_)
        for (const auto& [w2, c2] : o.terms_) r.add(w1 * w2, c1 * c2);
    return r;
}

WordCombo WordCombo::scaled(const Scalar& s) const {
    WordCombo r;
    if (s.is_zero()) return r;
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, c * s);
    return r;
}

size_t WordCombo::max_degree() const {
    size_t d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, w.degree());
    return d;
}

std::string WordCombo::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << " + ";
        os << "(" << c.str() << ")*" << w.str();
        first = false;
    }
    return os.str();
}

std::vector<std::pair<GenWord, GenWord>> coproduct_splittings(const GenWord& w, int N) {
    size_t d = w.degree();
    size_t count = 1;
    for (size_t k = 0; k < d; ++k) {
        count *= static_cast<size_t>(N);
        if (count > (1u << 24)) throw ResourceBound("too many coproduct splittings");
    }
    std::vector<std::pair<GenWord, GenWord>> out;
    out.reserve(count);
    std::vector<GenLetter> l1(d), l2(d);
    std::vector<int> ks(d, 1);
    while (true) {
        for (size_t p = 0; p < d; ++p) {
            const GenLetter& l = w.letters()[p];
            uint8_t k = static_cast<uint8_t>(ks[p]);
            if (l.s == 0) {
                l1[p] = GenLetter{l.i, k, 0};
                l2[p] = GenLetter{k, l.j, 0};
            } else {
                l1[p] = GenLetter{k, l.j, 1};
                l2[p] = GenLetter{l.i, k, 1};
            }
        }
        out.emplace_back(GenWord(l1), GenWord(l2));
        // advance mixed-radix counter
        size_t p = d;
        while (p > 0) {
            --p;
            if (ks[p] < N) {
                ++ks[p];
                break;
            }
            ks[p] = 1;
            if (p == 0) return out;
        }
        if (d == 0) return out;
    }
}

Scalar counit(const GenWord& w) {
    for (const GenLetter& l : w.letters())
        if (l.i != l.j) return Scalar();
    return Scalar(1);
}

Scalar counit(const WordCombo& c) {
    Scalar acc;
    for (const auto& [w, cf] : c.terms()) acc += cf * counit(w);
    return acc;
}

WordCombo antipode_word(const GenWord& w, const S2Data* s2) {
    WordCombo acc = WordCombo::unit();
    // S is an antihomomorphism: S(x1...xd) = S(xd)...S(x1)
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
        const GenLetter& l = *it;
        if (l.s == 0) {
            acc = acc * WordCombo(GenWord::gen(l.i, l.j, 1));
        } else {
            if (!s2)
                throw Error("S^2 requested before the functional matrices are available");
            int n = static_cast<int>(s2->f.rows());
            WordCombo s2w;
            for (int k = 1; k <= n; ++k) {
                for (int m = 1; m <= n; ++m) {
                    Scalar c = s2->fbar.get(l.i - 1, k - 1) * s2->f.get(m - 1, l.j - 1);
                    s2w.add(GenWord::gen(k, m, 0), c);
                }
            }
            acc = acc * s2w;
        }
    }
    return acc;
}

WordCombo detq_combo(int N, const Scalar& q) {
    if (N > 5) throw ResourceBound("det_q restricted to N <= 5");
    std::vector<int> perm(static_cast<size_t>(N));
    for (int i = 0; i < N; ++i) perm[static_cast<size_t>(i)] = i + 1;
    WordCombo out;
    do {
        int inv = 0;
        for (int a = 0; a < N; ++a)
            for (int b = a + 1; b < N; ++b)
                if (perm[static_cast<size_t>(a)] > perm[static_cast<size_t>(b)]) ++inv;
        GenWord w;
        for (int r = 1; r <= N; ++r) w = w * GenWord::gen(r, perm[static_cast<size_t>(r - 1)]);
        out.add(w, (-q).pow(inv));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

WordCombo antipode_poly(const RMatrixBundle& b, int i, int j) {
    const SeriesSpec& spec = b.spec;
    int N = spec.N();
    Scalar q = spec.q();
    if (spec.is_bcd()) {
        int ip = spec.prime(i), jp = spec.prime(j);
        Scalar c = spec.metric_c(jp) / spec.metric_c(ip);
        return WordCombo(GenWord::gen(jp, ip), c);
    }
    if (spec.series() == Series::SL && N == 2) {
        if (i == 1 && j == 1) return WordCombo(GenWord::gen(2, 2));
        if (i == 2 && j == 2) return WordCombo(GenWord::gen(1, 1));
        if (i == 1 && j == 2) return WordCombo(GenWord::gen(1, 2), -q.inv());
        return WordCombo(GenWord::gen(2, 1), -q);
    }
    if (spec.series() == Series::SL && N == 3) {
        // S(u^i_j) = (-q)^{i-j} * q-minor with row j and column i removed
        std::vector<int> rows, cols;
        for (int r = 1; r <= 3; ++r)
            if (r != j) rows.push_back(r);
        for (int c = 1; c <= 3; ++c)
            if (c != i) cols.push_back(c);
        WordCombo minor(GenWord::gen(rows[0], cols[0]) * GenWord::gen(rows[1], cols[1]));
        minor.add(GenWord::gen(rows[0], cols[1]) * GenWord::gen(rows[1], cols[0]), -q);
        return minor.scaled((-q).pow(i - j));
    }
    throw InadmissibleParam(
        "polynomial antipode available for SL(2), SL(3) and the O/Sp series only");
}

std::vector<WordCombo> relation_generators(const RMatrixBundle& b) {
    const SeriesSpec& spec = b.spec;
    int N = spec.N();
    std::vector<WordCombo> rels;
    // FRT: for each (i,n),(j,m): sum_{k,l} Rhat^{in}_{kl} u^k_j u^l_m
    //                            - u^i_k u^n_l Rhat^{kl}_{jm}
    for (int i = 1; i <= N; ++i)
        for (int n = 1; n <= N; ++n)
            for (int j = 1; j <= N; ++j)
                for (int m = 1; m <= N; ++m) {
                    WordCombo combo;
                    for (int k = 1; k <= N; ++k)
                        for (int l = 1; l <= N; ++l) {
                            const Scalar& a = b.Rhat.get(
                                static_cast<uint32_t>((i - 1) * N + (n - 1)),
                                static_cast<uint32_t>((k - 1) * N + (l - 1)));
                            if (!a.is_zero())
                                combo.add(GenWord::gen(k, j) * GenWord::gen(l, m), a);
                            const Scalar& c = b.Rhat.get(
                                static_cast<uint32_t>((k - 1) * N + (l - 1)),
                                static_cast<uint32_t>((j - 1) * N + (m - 1)));
                            if (!c.is_zero())
                                combo.add(GenWord::gen(i, k) * GenWord::gen(n, l), -c);
                        }
                    if (!combo.is_zero()) rels.push_back(std::move(combo));
                }
    if (spec.is_bcd()) {
        for (int i = 1; i <= N; ++i)
            for (int j = 1; j <= N; ++j) {
                WordCombo row, col;
                for (int k = 1; k <= N; ++k) {
                    Scalar c = spec.metric_c(k);
                    row.add(GenWord::gen(k, i) * GenWord::gen(spec.prime(k), j), c);
                    col.add(GenWord::gen(i, k) * GenWord::gen(j, spec.prime(k)), c);
                }
                if (j == spec.prime(i)) {
                    row.add(GenWord::unit(), -spec.metric_c(i));
                    col.add(GenWord::unit(), -spec.metric_c(i));
                }
                rels.push_back(std::move(row));
                rels.push_back(std::move(col));
            }
    }
    if (spec.series() == Series::SL) {
        WordCombo det = detq_combo(N, spec.q());
        det.add(GenWord::unit(), Scalar(-1));
        rels.push_back(std::move(det));
    }
    return rels;
}

RelationIdealSlice::RelationIdealSlice(const RMatrixBundle& b, int degree_bound,
                                       size_t max_words)
    : spec_(b.spec), degree_bound_(degree_bound), n_(b.spec.N()) {
    if (degree_bound < 1 || degree_bound > 3)
        throw ResourceBound("relation slice degree bound must be 1..3");
    uint64_t total = 0;
    uint64_t layer = 1;
    degree_offsets_.clear();
    for (int d = 0; d <= degree_bound; ++d) {
        degree_offsets_.push_back(static_cast<uint32_t>(total));
        total += layer;
        layer *= static_cast<uint64_t>(n_) * static_cast<uint64_t>(n_);
        if (total > max_words) throw ResourceBound("relation slice word space too large");
    }

    std::vector<WordCombo> gens = relation_generators(b);
    for (const WordCombo& g : gens) {
        if (static_cast<int>(g.max_degree()) <= degree_bound) basis_.push_back(g);
    }
    // pads: letter * rel and rel * letter while the degree fits
    std::vector<WordCombo> frontier = basis_;
    while (!frontier.empty()) {
        std::vector<WordCombo> next;
        for (const WordCombo& g : frontier) {
            if (static_cast<int>(g.max_degree()) + 1 > degree_bound) continue;
            for (int i = 1; i <= n_; ++i)
                for (int j = 1; j <= n_; ++j) {
                    WordCombo letter(GenWord::gen(i, j));
                    next.push_back(letter * g);
                    next.push_back(g * letter);
                }
        }
        basis_.insert(basis_.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    for (const WordCombo& g : basis_) echelon_.add_row(to_row(g));
}

uint32_t RelationIdealSlice::word_index(const GenWord& w) const {
    int d = static_cast<int>(w.degree());
    if (d > degree_bound_) throw ResourceBound("word exceeds the slice degree bound");
    uint32_t idx = 0;
    for (const GenLetter& l : w.letters()) {
        if (l.s != 0) throw Error("relation slice holds parity-free words only");
        idx = idx * static_cast<uint32_t>(n_ * n_) +
              static_cast<uint32_t>((l.i - 1) * n_ + (l.j - 1));
    }
    return degree_offsets_[static_cast<size_t>(d)] + idx;
}

SparseRow RelationIdealSlice::to_row(const WordCombo& x) const {
    SparseRow row;
    for (const auto& [w, c] : x.terms()) row.emplace(word_index(w), c);
    return row;
}

bool RelationIdealSlice::member(const WordCombo& x) const {
    if (x.is_zero()) return true;
    return echelon_.member(to_row(x));
}

}  // namespace qrform
