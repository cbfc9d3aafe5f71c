#include "sln/rep.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "sln/web.hpp"

namespace sln {

namespace {

bool subset_less(uint32_t x, uint32_t y) {
    // compare as increasing element lists
    while (x && y) {
        int a = std::countr_zero(x), b = std::countr_zero(y);
        if (a != b) return a < b;
        x &= x - 1;
        y &= y - 1;
    }
    return !x && y;
}

} // namespace

std::vector<uint32_t> subsets_of_mask(uint32_t mask, int k) {
    std::vector<uint32_t> out;
    std::vector<int> elems;
    for (uint32_t m = mask; m; m &= m - 1) elems.push_back(std::countr_zero(m));
    int sz = static_cast<int>(elems.size());
    if (k < 0 || k > sz) return out;
    std::vector<int> idx(k);
    for (int j = 0; j < k; ++j) idx[j] = j;
    while (true) {
        uint32_t s = 0;
        for (int j : idx) s |= 1u << elems[j];
        out.push_back(s);
        int j = k - 1;
        while (j >= 0 && idx[j] == sz - k + j) --j;
        if (j < 0) break;
        ++idx[j];
        for (int l = j + 1; l < k; ++l) idx[l] = idx[l - 1] + 1;
    }
    std::sort(out.begin(), out.end(), subset_less);
    return out;
}

std::vector<uint32_t> subsets_of_size(int n, int k) {
    return subsets_of_mask(n >= 32 ? ~0u : ((1u << n) - 1), k);
}

WeightBasis::WeightBasis(const GlWeight& w) : w_(w) {
    if (!w.admissible()) return;
    SubsetTuple cur(w.m());
    std::function<void(int)> rec = [&](int slot) {
        if (slot == w.m()) {
            index_.emplace(cur, static_cast<long>(states_.size()));
            states_.push_back(cur);
            return;
        }
        for (uint32_t s : subsets_of_size(w.n, w.a[slot])) {
            cur[slot] = s;
            rec(slot + 1);
        }
    };
    rec(0);
}

long WeightBasis::index_of(const SubsetTuple& s) const {
    auto it = index_.find(s);
    return it == index_.end() ? -1 : it->second;
}

RepMatrix RepMatrix::identity(size_t d) {
    RepMatrix m(d, d);
    for (size_t i = 0; i < d; ++i) m.add(i, i, LaurentPoly(1));
    return m;
}

LaurentPoly RepMatrix::at(size_t r, size_t c) const {
    auto it = e_.find({r, c});
    return it == e_.end() ? LaurentPoly() : it->second;
}

void RepMatrix::add(size_t r, size_t c, const LaurentPoly& v) {
    if (v.is_zero()) return;
    auto [it, fresh] = e_.emplace(std::make_pair(r, c), v);
    if (!fresh) {
        it->second += v;
        if (it->second.is_zero()) e_.erase(it);
    }
}

RepMatrix RepMatrix::operator*(const RepMatrix& o) const {
    if (cols_ != o.rows_) throw DomainError("matrix shape mismatch");
    RepMatrix r(rows_, o.cols_);
    std::map<size_t, std::vector<std::pair<size_t, const LaurentPoly*>>> by_row;
    for (auto& [rc, v] : o.e_) by_row[rc.first].emplace_back(rc.second, &v);
    for (auto& [rc, v] : e_) {
        auto it = by_row.find(rc.second);
        if (it == by_row.end()) continue;
        for (auto& [c, w] : it->second) r.add(rc.first, c, v * *w);
    }
    return r;
}

RepMatrix RepMatrix::operator+(const RepMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix shape mismatch");
    RepMatrix r = *this;
    for (auto& [rc, v] : o.e_) r.add(rc.first, rc.second, v);
    return r;
}

RepMatrix RepMatrix::operator-(const RepMatrix& o) const { return *this + o.scaled(LaurentPoly(-1)); }

RepMatrix RepMatrix::scaled(const LaurentPoly& c) const {
    RepMatrix r(rows_, cols_);
    for (auto& [rc, v] : e_) r.add(rc.first, rc.second, v * c);
    return r;
}

RepMatrix act_divided(RungKind side, int i, int k, const GlWeight& w) {
    if (i < 1 || i >= w.m()) throw DomainError("act_divided: index out of range");
    if (!w.admissible()) return RepMatrix();
    auto target = apply_rung(w, Rung(side, i, k));
    if (!target) return RepMatrix();
    WeightBasis src(w), dst(*target);
    RepMatrix m(dst.size(), src.size());
    int s = i - 1, t = i;
    for (size_t col = 0; col < src.size(); ++col) {
        const SubsetTuple& st = src.states()[col];
        uint32_t from = side == RungKind::E ? st[t] & ~st[s] : st[s] & ~st[t];
        for (uint32_t Z : subsets_of_mask(from, k)) {
            int e = 0;
            for (int j = 0; j < w.n; ++j) {
                uint32_t bit = 1u << j;
                if (Z & bit) continue;
                int kappa = ((st[s] & bit) ? 1 : 0) - ((st[t] & bit) ? 1 : 0);
                if (!kappa) continue;
                // number of z in Z below j (for E) or above j (for F)
                uint32_t below = Z & (bit - 1);
                uint32_t above = Z & ~(bit | (bit - 1));
                if (side == RungKind::E) e += kappa * std::popcount(below);
                else e -= kappa * std::popcount(above);
            }
            SubsetTuple out = st;
            if (side == RungKind::E) {
                out[t] &= ~Z;
                out[s] |= Z;
            } else {
                out[s] &= ~Z;
                out[t] |= Z;
            }
            m.add(static_cast<size_t>(dst.index_of(out)), col, LaurentPoly::q(e));
        }
    }
    return m;
}

const RepMatrix& act_divided_cached(RungKind side, int i, int k, const GlWeight& w) {
    using Key = std::tuple<int, int, int, GlWeight>;
    static std::map<Key, RepMatrix> cache;
    static std::shared_mutex mu;
    Key key{side == RungKind::E ? 0 : 1, i, k, w};
    {
        std::shared_lock lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    RepMatrix m = act_divided(side, i, k, w);
    std::unique_lock lk(mu);
    return cache.emplace(key, std::move(m)).first->second;
}

RepMatrix web_matrix(const LadderWeb& w) {
    WeightBasis dom(w.domain());
    RepMatrix acc = RepMatrix::identity(dom.size());
    if (w.zero()) return RepMatrix(WeightBasis(w.codomain()).size(), dom.size());
    GlWeight cur = w.domain();
    for (auto it = w.rungs().rbegin(); it != w.rungs().rend(); ++it) {
        acc = act_divided_cached(it->kind, it->i, it->k, cur) * acc;
        cur = *apply_rung(cur, *it);
    }
    return acc;
}

LaurentPoly eval_closed_web(const LadderWeb& w) {
    if (!w.domain().trivial() || !w.codomain().trivial())
        throw DomainError("eval_closed_web: endpoints must be trivial weights");
    if (w.zero()) return LaurentPoly();
    RepMatrix m = web_matrix(w);
    return m.at(0, 0);
}

} // namespace sln

namespace sln {

namespace {

// column vector as a RepMatrix with one column
RepMatrix apply_word(const std::vector<Rung>& app_order, GlWeight& w, RepMatrix v) {
    for (auto& r : app_order) {
        auto nx = apply_rung(w, r);
        if (!nx) return RepMatrix();
        v = act_divided_cached(r.kind, r.i, r.k, w) * v;
        w = *nx;
    }
    return v;
}

} // namespace

LaurentPoly decat_invariant(const TangleDiagram& d, int n) {
    CubeSkeleton cube = compile_tangle(d, n);
    GlWeight w = cube.bottom;
    RepMatrix v(1, 1);
    v.add(0, 0, LaurentPoly(1));
    for (auto& seg : cube.segments) {
        if (!seg.is_crossing) {
            v = apply_word(seg.rungs, w, v);
            if (v.empty()) return LaurentPoly();
            continue;
        }
        const CrossingComplex& c = cube.crossings[seg.crossing];
        RepMatrix acc;
        GlWeight out;
        for (auto& t : c.terms) {
            GlWeight ww = w;
            std::vector<Rung> app(t.rungs.rbegin(), t.rungs.rend());
            RepMatrix part = apply_word(app, ww, v);
            if (part.empty()) continue;
            LaurentPoly coeff = LaurentPoly::monomial(t.q, Scalar(t.h % 2 == 0 ? 1 : -1));
            part = part.scaled(coeff);
            acc = acc.empty() ? part : acc + part;
            out = ww;
        }
        if (acc.empty()) return LaurentPoly();
        v = acc;
        w = out;
    }
    LaurentPoly r = v.at(0, 0);
    auto [fq, fh] = cube.framing_correction();
    return r.shifted(fq) * LaurentPoly(fh % 2 == 0 ? 1 : -1);
}

} // namespace sln
