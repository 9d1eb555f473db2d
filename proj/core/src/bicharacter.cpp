#include "qrform/bicharacter.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "qrform/errors.hpp"

namespace qrform {

namespace {

QMatrix t2_inverse_t2(const QMatrix& m) {
    return inverse(m.partial_transpose_second()).partial_transpose_second();
}

QMatrix t1_inverse_t1(const QMatrix& m) {
    return inverse(m.partial_transpose_first()).partial_transpose_first();
}

QMatrix leg_swap(const QMatrix& m) { return m.flip_conjugate(); }

}  // namespace

Bicharacter Bicharacter::rform(const RMatrixBundle& b, const Scalar& z) {
    if (!b.spec.z_admissible(z))
        throw InadmissibleParam("z = " + z.str() + " violates " + b.spec.z_constraint_text() +
                                " for " + b.spec.name());
    Bicharacter r = from_base(b.spec, b.R.scaled(z), "r_z[z=" + z.str() + "]");
    return r;
}

Bicharacter Bicharacter::central(const SeriesSpec& spec, const Scalar& zeta) {
    if (!spec.zeta_admissible(zeta)) {
        std::string cons;
        switch (spec.series()) {
            case Series::GL: cons = "zeta != 0"; break;
            case Series::SL: cons = "zeta^" + std::to_string(spec.N()) + " = 1"; break;
            default: cons = "zeta^2 = 1";
        }
        throw InadmissibleParam("zeta = " + zeta.str() + " violates " + cons + " for " +
                                spec.name());
    }
    int N = spec.N();
    return from_base(spec, QMatrix::identity({N, N}).scaled(zeta),
                     "c_zeta[zeta=" + zeta.str() + "]");
}

Bicharacter Bicharacter::from_base(const SeriesSpec& spec, const QMatrix& B00,
                                   std::string tag) {
    Bicharacter b;
    b.spec_ = spec;
    b.tag_ = std::move(tag);
    QMatrix B10, B01;
    try {
        B10 = inverse(B00);            // left antipode axiom: B10.B00 = I
        B01 = t2_inverse_t2(B00);      // right antipode axiom, second-leg transposed
    } catch (const SingularMatrix& e) {
        throw InadmissibleParam("singular antipode-axiom system for '" + b.tag_ +
                                "' (rank " + std::to_string(e.rank_found) + ")");
    }
    // re-verify from the other side of each axiom
    QMatrix id = QMatrix::identity(B00.row_legs());
    if (!((B00 * B10) == id))
        throw ConstructionError("antipode axiom: right inverse mismatch");
    if (!((B01.partial_transpose_second() * B00.partial_transpose_second()) == id))
        throw ConstructionError("antipode axiom: left/right B01 derivations differ");
    b.base_[0] = B00;
    b.base_[1] = B01;
    b.base_[2] = B10;
    b.base_[3] = B00;  // r(S(a) ox S(b)) = r(a ox b)
    return b;
}

Bicharacter Bicharacter::convolution_inverse() const {
    Bicharacter r;
    r.spec_ = spec_;
    r.tag_ = "inv(" + tag_ + ")";
    r.reversed_ = !reversed_;
    r.base_[0] = inverse(base_[0]);
    r.base_[1] = t2_inverse_t2(base_[1]);
    r.base_[2] = t1_inverse_t1(base_[2]);
    r.base_[3] = inverse(base_[3]);
    return r;
}

Bicharacter Bicharacter::flip() const {
    Bicharacter r;
    r.spec_ = spec_;
    r.tag_ = "flip(" + tag_ + ")";
    r.reversed_ = !reversed_;
    r.base_[0] = leg_swap(base_[0]);
    r.base_[1] = leg_swap(base_[2]);
    r.base_[2] = leg_swap(base_[1]);
    r.base_[3] = leg_swap(base_[3]);
    return r;
}

Bicharacter Bicharacter::inverse_flip() const {
    Bicharacter s = convolution_inverse().flip();
    s.tag_ = "s(" + tag_ + ")";
    return s;
}

size_t Bicharacter::cache_size() const {
    std::shared_lock lk(cache_->mu);
    return cache_->memo.size();
}

Scalar Bicharacter::evaluate(const GenWord& w1, const GenWord& w2) const {
    return eval_rec(w1, w2);
}

Scalar Bicharacter::evaluate(const WordCombo& c1, const WordCombo& c2) const {
    Scalar acc;
    for (const auto& [w1, a1] : c1.terms())
        for (const auto& [w2, a2] : c2.terms()) acc += a1 * a2 * eval_rec(w1, w2);
    return acc;
}

Scalar Bicharacter::eval_rec(const GenWord& w1, const GenWord& w2) const {
    if (w1.empty()) return counit(w2);
    if (w2.empty()) return counit(w1);
    int N = spec_.N();
    if (w1.degree() == 1 && w2.degree() == 1) {
        const GenLetter& a = w1.letters()[0];
        const GenLetter& b = w2.letters()[0];
        const QMatrix& m = base(a.s, b.s);
        return m.get(static_cast<uint32_t>((a.i - 1) * N + (b.i - 1)),
                     static_cast<uint32_t>((a.j - 1) * N + (b.j - 1)));
    }
    std::pair<uint64_t, uint64_t> key{w1.key(), w2.key()};
    {
        std::shared_lock lk(cache_->mu);
        auto it = cache_->memo.find(key);
        if (it != cache_->memo.end()) return it->second;
    }
    Scalar acc;
    if (w2.degree() >= 2) {
        // split w2 = a.rest; forward: r(c ox a.rest) = r(c1 ox rest) r(c2 ox a)
        GenWord a(std::vector<GenLetter>{w2.letters()[0]});
        GenWord rest(std::vector<GenLetter>(w2.letters().begin() + 1, w2.letters().end()));
        for (const auto& [c1, c2] : coproduct_splittings(w1, N)) {
            Scalar lhs = reversed_ ? eval_rec(c2, rest) : eval_rec(c1, rest);
            if (lhs.is_zero()) continue;
            acc += lhs * (reversed_ ? eval_rec(c1, a) : eval_rec(c2, a));
        }
    } else {
        // w2 single letter, w1 longer: r(a.rest ox c) = r(a ox c1) r(rest ox c2)
        GenWord a(std::vector<GenLetter>{w1.letters()[0]});
        GenWord rest(std::vector<GenLetter>(w1.letters().begin() + 1, w1.letters().end()));
        for (const auto& [c1, c2] : coproduct_splittings(w2, N)) {
            Scalar lhs = reversed_ ? eval_rec(a, c2) : eval_rec(a, c1);
            if (lhs.is_zero()) continue;
            acc += lhs * (reversed_ ? eval_rec(rest, c1) : eval_rec(rest, c2));
        }
    }
    {
        std::unique_lock lk(cache_->mu);
        if (cache_->memo.size() < cache_cap_) cache_->memo.emplace(key, acc);
    }
    return acc;
}

// --- convolution ---

Convolution::Convolution(Bicharacter b1, Bicharacter b2)
    : b1_(std::move(b1)), b2_(std::move(b2)) {
    if (b1_.spec().name() != b2_.spec().name() || b1_.spec().t_exp() != b2_.spec().t_exp())
        throw ShapeMismatch("convolution: spec mismatch");
    n_ = b1_.spec().N();
}

Scalar Convolution::evaluate(const GenWord& w1, const GenWord& w2) const {
    Scalar acc;
    for (const auto& [a1, a2] : coproduct_splittings(w1, n_)) {
        for (const auto& [c1, c2] : coproduct_splittings(w2, n_)) {
            Scalar l = b1_.evaluate(a1, c1);
            if (l.is_zero()) continue;
            acc += l * b2_.evaluate(a2, c2);
        }
    }
    return acc;
}

// --- pair tensors ---

uint64_t PairTensor::pack(const std::vector<int>& idx) {
    uint64_t k = 0;
    for (size_t s = 0; s < idx.size(); ++s) k |= static_cast<uint64_t>(idx[s]) << (3 * s);
    return k;
}

std::vector<int> PairTensor::unpack(uint64_t key, int slots) {
    std::vector<int> idx(static_cast<size_t>(slots));
    for (int s = 0; s < slots; ++s) idx[static_cast<size_t>(s)] = static_cast<int>((key >> (3 * s)) & 7);
    return idx;
}

Scalar PairTensor::at(const GenWord& w1, const GenWord& w2) const {
    std::vector<int> idx;
    for (const GenLetter& l : w1.letters()) {
        idx.push_back(l.i - 1);
        idx.push_back(l.j - 1);
    }
    for (const GenLetter& l : w2.letters()) {
        idx.push_back(l.i - 1);
        idx.push_back(l.j - 1);
    }
    auto it = a_.find(pack(idx));
    return it == a_.end() ? Scalar::zero() : it->second;
}

PairTensor PairTensor::build(const Bicharacter& b, const std::vector<int>& pat1,
                             const std::vector<int>& pat2) {
    int N = b.spec().N();
    PairTensor t;
    t.d1_ = static_cast<int>(pat1.size());
    t.d2_ = static_cast<int>(pat2.size());
    t.n_ = N;
    int d1 = t.d1_, d2 = t.d2_;
    if (d1 + d2 > 10) throw ResourceBound("pair tensor pattern too large");

    if (d1 == 0 || d2 == 0) {
        // counit tensor on the nonempty side (both empty: single unit entry)
        int d = d1 + d2;
        std::vector<int> idx(static_cast<size_t>(2 * d), 0);
        std::function<void(int)> rec = [&](int p) {
            if (p == d) {
                t.a_.emplace(pack(idx), Scalar(1));
                return;
            }
            for (int v = 0; v < N; ++v) {
                idx[static_cast<size_t>(2 * p)] = v;
                idx[static_cast<size_t>(2 * p + 1)] = v;
                rec(p + 1);
            }
        };
        rec(0);
        return t;
    }

    if (d1 == 1 && d2 == 1) {
        const QMatrix& m = b.base(pat1[0], pat2[0]);
        for (const auto& [k, v] : m.entries()) {
            int i = static_cast<int>(k.first) / N, nn = static_cast<int>(k.first) % N;
            int j = static_cast<int>(k.second) / N, mm = static_cast<int>(k.second) % N;
            t.a_.emplace(pack({i, j, nn, mm}), v);
        }
        return t;
    }

    const bool rev = b.reversed();

    if (d2 >= 2) {
        // r(c ox a.rest) = r(c1 ox rest) r(c2 ox a); reversed swaps c1 <-> c2.
        std::vector<int> rest(pat2.begin() + 1, pat2.end());
        std::vector<int> first{pat2[0]};
        PairTensor TA = build(b, pat1, rest);    // carries c1 wiring (c2 if reversed)
        PairTensor TB = build(b, pat1, first);   // carries c2 wiring (c1 if reversed)
        // Join over the per-letter summed index k_t.
        // Wiring per word1 letter t, forward engine:
        //   parity 0: c1 slot = (u_t, k_t), c2 slot = (k_t, l_t)
        //   parity 1: c1 slot = (k_t, l_t), c2 slot = (u_t, k_t)
        // The tensor TA holds the c1 factor (c2 when reversed), TB the other.
        auto wiring = [&](bool is_c1, int parity) {
            // returns which of (slotA, slotB) is the summed k: 0 -> first slot
            bool c1_k_first = parity == 1;  // c1 = (k,l) for parity 1
            bool take_k_first = is_c1 ? c1_k_first : !c1_k_first;
            return take_k_first;
        };
        bool ta_is_c1 = !rev;
        std::map<uint64_t, std::vector<std::pair<uint64_t, const Scalar*>>> grouped;
        for (const auto& [key, v] : TA.entries()) {
            std::vector<int> ks(static_cast<size_t>(d1));
            std::vector<int> outs(static_cast<size_t>(d1));
            for (int tt = 0; tt < d1; ++tt) {
                int a0 = static_cast<int>((key >> (6 * tt)) & 7);
                int a1 = static_cast<int>((key >> (6 * tt + 3)) & 7);
                bool k_first = wiring(ta_is_c1, pat1[static_cast<size_t>(tt)]);
                ks[static_cast<size_t>(tt)] = k_first ? a0 : a1;
                outs[static_cast<size_t>(tt)] = k_first ? a1 : a0;
            }
            uint64_t krest = key >> (6 * d1);  // word2(rest) slots
            grouped[pack(ks)].push_back({(static_cast<uint64_t>(pack(outs))) |
                                             (krest << 32),
                                         &v});
        }
        for (const auto& [key, v] : TB.entries()) {
            std::vector<int> ks(static_cast<size_t>(d1));
            std::vector<int> outs(static_cast<size_t>(d1));
            for (int tt = 0; tt < d1; ++tt) {
                int a0 = static_cast<int>((key >> (6 * tt)) & 7);
                int a1 = static_cast<int>((key >> (6 * tt + 3)) & 7);
                bool k_first = wiring(!ta_is_c1, pat1[static_cast<size_t>(tt)]);
                ks[static_cast<size_t>(tt)] = k_first ? a0 : a1;
                outs[static_cast<size_t>(tt)] = k_first ? a1 : a0;
            }
            auto it = grouped.find(pack(ks));
            if (it == grouped.end()) continue;
            uint64_t kfirstslots = key >> (6 * d1);  // word2(first letter) slots
            for (const auto& [packed, va] : it->second) {
                uint64_t outsA = packed & 0xffffffffull;
                uint64_t krest = packed >> 32;
                // reassemble word1 slots: (u_t, l_t)
                std::vector<int> w1(static_cast<size_t>(2 * d1));
                for (int tt = 0; tt < d1; ++tt) {
                    int oA = static_cast<int>((outsA >> (3 * tt)) & 7);
                    int oB = static_cast<int>((outs[static_cast<size_t>(tt)]));
                    // which of A/B carries u_t: the factor whose k was the
                    // second slot has (u,k): its out is u.
                    bool a_k_first = wiring(ta_is_c1, pat1[static_cast<size_t>(tt)]);
                    int u = a_k_first ? oB : oA;  // if A had (k,l), B has (u,k)
                    int l = a_k_first ? oA : oB;
                    w1[static_cast<size_t>(2 * tt)] = u;
                    w1[static_cast<size_t>(2 * tt + 1)] = l;
                }
                uint64_t full = pack(w1) | (kfirstslots << (6 * d1)) |
                                (krest << (6 * d1 + 6));
                Scalar prod = (*va) * v;
                auto [jt, ins] = t.a_.try_emplace(full, prod);
                if (!ins) {
                    jt->second += prod;
                    if (jt->second.is_zero()) t.a_.erase(jt);
                }
            }
        }
        return t;
    }

    // d2 == 1, d1 >= 2: r(a.rest ox c) = r(a ox c1) r(rest ox c2); reversed swaps.
    std::vector<int> rest(pat1.begin() + 1, pat1.end());
    std::vector<int> first{pat1[0]};
    PairTensor TA = build(b, first, pat2);  // (a ox c1 leg)
    PairTensor TB = build(b, rest, pat2);   // (rest ox c2 leg)
    bool ta_is_c1 = !rev;
    int p2 = pat2[0];
    // c parity 0: c1 = (u, k), c2 = (k, l); parity 1: c1 = (k, l), c2 = (u, k).
    auto k_first_for = [&](bool is_c1) { return is_c1 ? (p2 == 1) : (p2 == 0); };
    std::map<uint64_t, std::vector<std::pair<uint64_t, const Scalar*>>> grouped;
    for (const auto& [key, v] : TA.entries()) {
        uint64_t w1slots = key & 0x3f;  // 2 slots of the single letter a
        int c0 = static_cast<int>((key >> 6) & 7);
        int c1s = static_cast<int>((key >> 9) & 7);
        bool kf = k_first_for(ta_is_c1);
        int k = kf ? c0 : c1s;
        int outp = kf ? c1s : c0;
        grouped[static_cast<uint64_t>(k)].push_back(
            {w1slots | (static_cast<uint64_t>(outp) << 6), &v});
    }
    for (const auto& [key, v] : TB.entries()) {
        uint64_t w1rest = key & ((1ull << (6 * (d1 - 1))) - 1);
        int c0 = static_cast<int>((key >> (6 * (d1 - 1))) & 7);
        int c1s = static_cast<int>((key >> (6 * (d1 - 1) + 3)) & 7);
        bool kf = k_first_for(!ta_is_c1);
        int k = kf ? c0 : c1s;
        int outp = kf ? c1s : c0;
        auto it = grouped.find(static_cast<uint64_t>(k));
        if (it == grouped.end()) continue;
        for (const auto& [packed, va] : it->second) {
            uint64_t w1a = packed & 0x3f;
            int outA = static_cast<int>(packed >> 6);
            // c slots (u, l): the c1-factor holds u when parity 0, l when parity 1
            int u, l;
            bool a_holds_c1 = ta_is_c1;
            int out_c1 = a_holds_c1 ? outA : outp;
            int out_c2 = a_holds_c1 ? outp : outA;
            if (p2 == 0) {
                u = out_c1;
                l = out_c2;
            } else {
                u = out_c2;
                l = out_c1;
            }
            uint64_t full = w1a | (w1rest << 6) |
                            (static_cast<uint64_t>(u) << (6 * d1)) |
                            (static_cast<uint64_t>(l) << (6 * d1 + 3));
            Scalar prod = (*va) * v;
            auto [jt, ins] = t.a_.try_emplace(full, prod);
            if (!ins) {
                jt->second += prod;
                if (jt->second.is_zero()) t.a_.erase(jt);
            }
        }
    }
    return t;
}

QMatrix pair_matrix(const Bicharacter& b, int d1, int d2) {
    int N = b.spec().N();
    PairTensor t = PairTensor::build(b, std::vector<int>(static_cast<size_t>(d1), 0),
                                     std::vector<int>(static_cast<size_t>(d2), 0));
    uint32_t nd1 = 1, nd2 = 1;
    for (int k = 0; k < d1; ++k) nd1 *= static_cast<uint32_t>(N);
    for (int k = 0; k < d2; ++k) nd2 *= static_cast<uint32_t>(N);
    QMatrix m({static_cast<int>(nd1), static_cast<int>(nd1)},
              {static_cast<int>(nd2), static_cast<int>(nd2)});
    for (const auto& [key, v] : t.entries()) {
        auto idx = PairTensor::unpack(key, 2 * (d1 + d2));
        uint32_t I = 0, J = 0, K = 0, L = 0;
        for (int p = 0; p < d1; ++p) {
            I = I * static_cast<uint32_t>(N) + static_cast<uint32_t>(idx[static_cast<size_t>(2 * p)]);
            J = J * static_cast<uint32_t>(N) + static_cast<uint32_t>(idx[static_cast<size_t>(2 * p + 1)]);
        }
        for (int p = 0; p < d2; ++p) {
            K = K * static_cast<uint32_t>(N) +
                static_cast<uint32_t>(idx[static_cast<size_t>(2 * (d1 + p))]);
            L = L * static_cast<uint32_t>(N) +
                static_cast<uint32_t>(idx[static_cast<size_t>(2 * (d1 + p) + 1)]);
        }
        m.set(I * nd1 + J, K * nd2 + L, v);
    }
    return m;
}

// --- CQT checks ---

namespace {

std::string word_pair_str(const GenWord& a, const GenWord& b) {
    return a.str() + " (x) " + b.str();
}

// all parity-free words of degree d (0-based letters) in index order
std::vector<GenWord> words_of_degree(int N, int d) {
    std::vector<GenWord> out;
    std::vector<GenLetter> ls(static_cast<size_t>(d));
    std::function<void(int)> rec = [&](int p) {
        if (p == d) {
            out.emplace_back(ls);
            return;
        }
        for (int i = 1; i <= N; ++i)
            for (int j = 1; j <= N; ++j) {
                ls[static_cast<size_t>(p)] =
                    GenLetter{static_cast<uint8_t>(i), static_cast<uint8_t>(j), 0};
                rec(p + 1);
            }
    };
    rec(0);
    return out;
}

// Tensorized (CQT.1) at fixed degrees: r(c ox ab) = r(c1 ox b) r(c2 ox a).
std::optional<std::string> cqt1_defect(const Bicharacter& b, int dc, int da, int db,
                                       const std::map<int, QMatrix>& pm_cache, int N,
                                       long& identities) {
    uint32_t ndc = 1, nda = 1, ndb = 1;
    for (int k = 0; k < dc; ++k) ndc *= static_cast<uint32_t>(N);
    for (int k = 0; k < da; ++k) nda *= static_cast<uint32_t>(N);
    for (int k = 0; k < db; ++k) ndb *= static_cast<uint32_t>(N);
    identities += static_cast<long>(ndc) * ndc * nda * nda * ndb * ndb;

    const QMatrix& lhsPM = pm_cache.at(dc * 10 + da + db);
    const QMatrix& pmB = pm_cache.at(dc * 10 + db);
    const QMatrix& pmA = pm_cache.at(dc * 10 + da);

    // RHS[(I,Kb,Lb),(J,Ka,La)] = sum_K pmB[(I,K),(Kb,Lb)] * pmA[(K,J),(Ka,La)]
    std::map<std::pair<uint64_t, uint64_t>, Scalar> rhs;
    std::map<uint32_t, std::vector<std::tuple<uint32_t, uint32_t, const Scalar*>>> byK;
    for (const auto& [k, v] : pmA.entries()) {
        uint32_t K = k.first / ndc, J = k.first % ndc;
        byK[K].push_back({J, k.second, &v});
    }
    for (const auto& [k, v] : pmB.entries()) {
        uint32_t I = k.first / ndc, K = k.first % ndc;
        auto it = byK.find(K);
        if (it == byK.end()) continue;
        uint64_t rowpart = static_cast<uint64_t>(I) * ndb * ndb + k.second;
        for (const auto& [J, colA, va] : it->second) {
            uint64_t colpart = static_cast<uint64_t>(J) * nda * nda + colA;
            auto key = std::make_pair(rowpart, colpart);
            Scalar prod = v * (*va);
            auto [jt, ins] = rhs.try_emplace(key, prod);
            if (!ins) {
                jt->second += prod;
                if (jt->second.is_zero()) rhs.erase(jt);
            }
        }
    }
    // LHS repacked the same way
    std::map<std::pair<uint64_t, uint64_t>, Scalar> lhs;
    for (const auto& [k, v] : lhsPM.entries()) {
        uint32_t I = k.first / ndc, J = k.first % ndc;
        uint32_t KK = k.second / (nda * ndb), LL = k.second % (nda * ndb);
        uint32_t Ka = KK / ndb, Kb = KK % ndb;
        uint32_t La = LL / ndb, Lb = LL % ndb;
        uint64_t rowpart = static_cast<uint64_t>(I) * ndb * ndb + (Kb * ndb + Lb);
        uint64_t colpart = static_cast<uint64_t>(J) * nda * nda + (Ka * nda + La);
        lhs.emplace(std::make_pair(rowpart, colpart), v);
    }
    if (lhs == rhs) return std::nullopt;
    // find first difference
    for (const auto& [k, v] : lhs) {
        auto it = rhs.find(k);
        if (it == rhs.end() || !(it->second == v))
            return "CQT.1 at degrees (c,a,b)=(" + std::to_string(dc) + "," + std::to_string(da) +
                   "," + std::to_string(db) + ")";
    }
    return "CQT.1 at degrees (c,a,b)=(" + std::to_string(dc) + "," + std::to_string(da) + "," +
           std::to_string(db) + ")";
}

// Tensorized (CQT.2): r(ab ox c) = r(a ox c1) r(b ox c2).
std::optional<std::string> cqt2_defect(const Bicharacter& b, int da, int db, int dc,
                                       const std::map<int, QMatrix>& pm_cache, int N,
                                       long& identities) {
    uint32_t ndc = 1, nda = 1, ndb = 1;
    for (int k = 0; k < dc; ++k) ndc *= static_cast<uint32_t>(N);
    for (int k = 0; k < da; ++k) nda *= static_cast<uint32_t>(N);
    for (int k = 0; k < db; ++k) ndb *= static_cast<uint32_t>(N);
    identities += static_cast<long>(ndc) * ndc * nda * nda * ndb * ndb;

    const QMatrix& lhsPM = pm_cache.at((da + db) * 10 + dc);
    const QMatrix& pmA = pm_cache.at(da * 10 + dc);
    const QMatrix& pmB = pm_cache.at(db * 10 + dc);

    // RHS[(Ia,Ja,K),(Ib,Jb,L)] = sum_M pmA[(Ia,Ja),(K,M)] * pmB[(Ib,Jb),(M,L)]
    std::map<std::pair<uint64_t, uint64_t>, Scalar> rhs;
    std::map<uint32_t, std::vector<std::tuple<uint32_t, uint32_t, const Scalar*>>> byM;
    for (const auto& [k, v] : pmB.entries()) {
        uint32_t M = k.second / ndc, L = k.second % ndc;
        byM[M].push_back({k.first, L, &v});
    }
    for (const auto& [k, v] : pmA.entries()) {
        uint32_t K = k.second / ndc, M = k.second % ndc;
        auto it = byM.find(M);
        if (it == byM.end()) continue;
        uint64_t rowpart = static_cast<uint64_t>(k.first) * ndc + K;
        for (const auto& [rowB, L, vb] : it->second) {
            uint64_t colpart = static_cast<uint64_t>(rowB) * ndc + L;
            auto key = std::make_pair(rowpart, colpart);
            Scalar prod = v * (*vb);
            auto [jt, ins] = rhs.try_emplace(key, prod);
            if (!ins) {
                jt->second += prod;
                if (jt->second.is_zero()) rhs.erase(jt);
            }
        }
    }
    std::map<std::pair<uint64_t, uint64_t>, Scalar> lhs;
    for (const auto& [k, v] : lhsPM.entries()) {
        uint32_t II = k.first / (nda * ndb), JJ = k.first % (nda * ndb);
        uint32_t Ia = II / ndb, Ib = II % ndb;
        uint32_t Ja = JJ / ndb, Jb = JJ % ndb;
        uint32_t K = k.second / ndc, L = k.second % ndc;
        uint64_t rowpart = (static_cast<uint64_t>(Ia) * nda + Ja) * ndc + K;
        uint64_t colpart = (static_cast<uint64_t>(Ib) * ndb + Jb) * ndc + L;
        lhs.emplace(std::make_pair(rowpart, colpart), v);
    }
    if (lhs == rhs) return std::nullopt;
    return "CQT.2 at degrees (a,b,c)=(" + std::to_string(da) + "," + std::to_string(db) + "," +
           std::to_string(dc) + ")";
}

}  // namespace

CqtReport check_cqt(const Bicharacter& b, const RelationIdealSlice& slice, int D) {
    if (D > slice.degree_bound()) throw ResourceBound("check_cqt: D exceeds the slice bound");
    CqtReport rep;
    int N = b.spec().N();

    // unitality: r(1 ox w) = eps(w) = r(w ox 1) at degree <= 2
    for (int d = 0; d <= std::min(D, 2); ++d) {
        for (const GenWord& w : words_of_degree(N, d)) {
            ++rep.unitality.identities;
            if (!(b.evaluate(GenWord::unit(), w) == counit(w)) ||
                !(b.evaluate(w, GenWord::unit()) == counit(w))) {
                rep.unitality.pass = false;
                if (rep.unitality.witness.empty()) rep.unitality.witness = w.str();
            }
        }
    }

    // pair matrices for all degree combinations needed
    std::map<int, QMatrix> pm;
    for (int d1 = 1; d1 <= D; ++d1)
        for (int d2 = 1; d2 <= D; ++d2)
            if (d1 + d2 <= 2 * D) pm.emplace(d1 * 10 + d2, pair_matrix(b, d1, d2));

    // CQT.1: c of degree 1..D, (a,b) with da+db <= D, da,db >= 1; degree-0
    // cases are the unitality loop above.
    for (int dc = 1; dc <= D; ++dc)
        for (int da = 1; da < D; ++da)
            for (int db = 1; da + db <= D; ++db) {
                auto w = cqt1_defect(b, dc, da, db, pm, N, rep.cqt1.identities);
                if (w) {
                    rep.cqt1.pass = false;
                    if (rep.cqt1.witness.empty()) rep.cqt1.witness = *w;
                }
            }
    for (int dc = 1; dc <= D; ++dc)
        for (int da = 1; da < D; ++da)
            for (int db = 1; da + db <= D; ++db) {
                auto w = cqt2_defect(b, da, db, dc, pm, N, rep.cqt2.identities);
                if (w) {
                    rep.cqt2.pass = false;
                    if (rep.cqt2.witness.empty()) rep.cqt2.witness = *w;
                }
            }

    // CQT.3: ideal membership of r(a1 ox b1) a2 b2 - r(a2 ox b2) b1 a1 for
    // word pairs of degree <= D-1 each.
    std::vector<GenWord> smalls;
    for (int d = 0; d <= D - 1; ++d) {
        auto ws = words_of_degree(N, d);
        smalls.insert(smalls.end(), ws.begin(), ws.end());
    }
    for (const GenWord& a : smalls) {
        for (const GenWord& bw : smalls) {
            WordCombo defect;
            for (const auto& [a1, a2] : coproduct_splittings(a, N)) {
                for (const auto& [b1, b2] : coproduct_splittings(bw, N)) {
                    Scalar l = b.evaluate(a1, b1);
                    if (!l.is_zero()) defect.add(a2 * b2, l);
                    Scalar r = b.evaluate(a2, b2);
                    if (!r.is_zero()) defect.add(b1 * a1, -r);
                }
            }
            ++rep.cqt3.identities;
            if (!slice.member(defect)) {
                rep.cqt3.pass = false;
                if (rep.cqt3.witness.empty()) rep.cqt3.witness = word_pair_str(a, bw);
            }
        }
    }

    // well-definedness: b vanishes against the relation slice basis on both
    // sides, paired with words of degree <= 2. Tensorized: the degree-d part
    // of each relation is a row over the (I,J)-word space, and pairing with
    // all degree-e probes is that row times the (d,e) pair matrix.
    {
        const auto& basis = slice.basis();
        int maxd = slice.degree_bound();
        std::vector<uint32_t> nd(static_cast<size_t>(maxd) + 1, 1);
        for (int d = 1; d <= maxd; ++d) nd[static_cast<size_t>(d)] = nd[static_cast<size_t>(d - 1)] * static_cast<uint32_t>(N);
        // rows of the degree-d parts
        std::map<int, QMatrix> relrows;
        for (int d = 0; d <= maxd; ++d)
            relrows.emplace(d, QMatrix::zero({static_cast<int>(basis.size())},
                                             {static_cast<int>(nd[static_cast<size_t>(d)] *
                                                               nd[static_cast<size_t>(d)])}));
        for (size_t rI = 0; rI < basis.size(); ++rI) {
            for (const auto& [w, c] : basis[rI].terms()) {
                int d = static_cast<int>(w.degree());
                uint32_t I = 0, J = 0;
                for (const GenLetter& l : w.letters()) {
                    I = I * static_cast<uint32_t>(N) + (l.i - 1);
                    J = J * static_cast<uint32_t>(N) + (l.j - 1);
                }
                relrows.at(d).add_to(static_cast<uint32_t>(rI),
                                     I * nd[static_cast<size_t>(d)] + J, c);
            }
        }
        for (int e = 0; e <= std::min(D, 2); ++e) {
            uint32_t ne = 1;
            for (int k = 0; k < e; ++k) ne *= static_cast<uint32_t>(N);
            // eps vector over probes of degree e as a 1 x (ne*ne) row
            QMatrix eps({1}, {static_cast<int>(ne * ne)});
            for (uint32_t i = 0; i < ne; ++i) eps.set(0, i * ne + i, Scalar(1));
            QMatrix left({static_cast<int>(basis.size())}, {static_cast<int>(ne * ne)});
            QMatrix right = left;
            for (int d = 0; d <= maxd; ++d) {
                if (relrows.at(d).is_zero()) continue;
                if (d == 0) {
                    // unit part pairs to eps(probe)
                    QMatrix unitcol = relrows.at(d);  // rows x 1
                    left = left + unitcol * eps;
                    right = right + unitcol * eps;
                } else {
                    QMatrix pmde = (e == 0) ? QMatrix() : pair_matrix(b, d, e);
                    if (e == 0) {
                        // probe = unit word: pairing is eps on the relation side
                        QMatrix epsd({static_cast<int>(nd[static_cast<size_t>(d)] *
                                                       nd[static_cast<size_t>(d)])},
                                     {1});
                        for (uint32_t i = 0; i < nd[static_cast<size_t>(d)]; ++i)
                            epsd.set(i * nd[static_cast<size_t>(d)] + i, 0, Scalar(1));
                        left = left + relrows.at(d) * epsd;
                        right = right + relrows.at(d) * epsd;
                    } else {
                        left = left + relrows.at(d) * pmde;
                        right = right + relrows.at(d) * pair_matrix(b, e, d).transpose();
                    }
                }
            }
            rep.well_defined.identities +=
                static_cast<long>(basis.size()) * static_cast<long>(ne) * ne * 2;
            if (!left.is_zero() || !right.is_zero()) {
                rep.well_defined.pass = false;
                if (rep.well_defined.witness.empty()) {
                    const auto& bad = left.is_zero() ? right : left;
                    rep.well_defined.witness =
                        "relation " + std::to_string(bad.entries().begin()->first.first) +
                        " paired with a degree-" + std::to_string(e) + " word";
                }
            }
        }
    }
    return rep;
}

CheckOutcome check_central(const Bicharacter& b, const RelationIdealSlice& slice, int D) {
    CheckOutcome out;
    int N = b.spec().N();
    std::vector<GenWord> smalls;
    for (int d = 0; d <= D - 1; ++d) {
        auto ws = words_of_degree(N, d);
        smalls.insert(smalls.end(), ws.begin(), ws.end());
    }
    // (CB.2): c(a ox b1) b2 - c(a ox b2) b1 and the mirrored family
    for (const GenWord& a : smalls) {
        for (const GenWord& bw : smalls) {
            WordCombo d1, d2;
            for (const auto& [b1, b2] : coproduct_splittings(bw, N)) {
                Scalar l = b.evaluate(a, b1);
                if (!l.is_zero()) d1.add(b2, l);
                Scalar r = b.evaluate(a, b2);
                if (!r.is_zero()) d1.add(b1, -r);
                Scalar l2 = b.evaluate(b1, a);
                if (!l2.is_zero()) d2.add(b2, l2);
                Scalar r2 = b.evaluate(b2, a);
                if (!r2.is_zero()) d2.add(b1, -r2);
            }
            ++out.identities;
            if (!slice.member(d1) || !slice.member(d2)) {
                out.pass = false;
                if (out.witness.empty()) out.witness = word_pair_str(a, bw);
            }
        }
    }
    return out;
}

bool check_cotriangular(const Bicharacter& b) {
    Bicharacter inv = b.convolution_inverse();
    Bicharacter flipped = b.flip();
    int N = b.spec().N();
    for (int d1 = 1; d1 <= 2; ++d1)
        for (int d2 = 1; d2 + d1 <= 4; ++d2) {
            PairTensor a = PairTensor::build(inv, std::vector<int>(static_cast<size_t>(d1), 0),
                                             std::vector<int>(static_cast<size_t>(d2), 0));
            PairTensor c = PairTensor::build(flipped, std::vector<int>(static_cast<size_t>(d1), 0),
                                             std::vector<int>(static_cast<size_t>(d2), 0));
            if (!(a.entries() == c.entries())) return false;
        }
    (void)N;
    return true;
}

}  // namespace qrform
