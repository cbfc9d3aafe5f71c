#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <set>
#include <thread>

#include "sln/homology.hpp"
#include "sln/rep.hpp"

namespace sln {

namespace {

using LocP = Localization<ModP>;
using LocQ = Localization<mpq_class>;

// ---------------------------------------------------------------- thin layout

struct ThinLayout {
    std::vector<Strand> thin;
    std::vector<std::pair<int, int>> blocks; // (start, thickness)
};

ThinLayout thin_layout(const std::vector<Rung>& word) {
    ThinLayout t;
    for (auto& r : word) {
        t.blocks.emplace_back(static_cast<int>(t.thin.size()), r.k);
        for (int j = 0; j < r.k; ++j) t.thin.push_back(Rung(r.kind, r.i, 1));
    }
    return t;
}

using Pairs = std::vector<std::pair<int, int>>;

struct Matching {
    Pairs pairs;
    int crossings = 0;
};

int count_crossings(const Pairs& p) {
    int c = 0;
    for (size_t a = 0; a < p.size(); ++a)
        for (size_t b = 0; b < p.size(); ++b)
            if (p[a].first < p[b].first && p[b].first < p[a].second && p[a].second < p[b].second) ++c;
    return c;
}

// perfect matchings of the letters at `pos` pairing E with F
std::vector<Matching> index_matchings(const std::vector<Strand>& thin, const std::vector<int>& pos, size_t cap) {
    std::vector<Matching> out;
    std::vector<char> used(pos.size(), 0);
    Pairs cur;
    std::function<void()> rec = [&]() {
        if (out.size() >= cap) return;
        size_t a = 0;
        while (a < pos.size() && used[a]) ++a;
        if (a == pos.size()) {
            out.push_back({cur, count_crossings(cur)});
            return;
        }
        used[a] = 1;
        for (size_t b = a + 1; b < pos.size(); ++b) {
            if (used[b] || thin[pos[b]].kind == thin[pos[a]].kind) continue;
            used[b] = 1;
            cur.emplace_back(pos[a], pos[b]);
            rec();
            cur.pop_back();
            used[b] = 0;
        }
        used[a] = 0;
    };
    rec();
    std::stable_sort(out.begin(), out.end(), [](const Matching& x, const Matching& y) { return x.crossings < y.crossings; });
    return out;
}

// cup diagram 1 -> W: thin cups placed outermost first (right ends moved into
// place by crossings), dots on left ends, then merges into thick letters
KLRWord build_cup(const GlWeight& w, const ThinLayout& t, Pairs pairs, const std::vector<int>& dots) {
    KLRWord d;
    d.weight = w;
    std::vector<int> order(pairs.size());
    for (size_t j = 0; j < order.size(); ++j) order[j] = static_cast<int>(j);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        int sx = pairs[x].second - pairs[x].first, sy = pairs[y].second - pairs[y].first;
        if (sx != sy) return sx > sy;
        return pairs[x].first < pairs[y].first;
    });
    std::vector<int> cur;
    for (int o : order) {
        auto [p, q] = pairs[o];
        int idx = static_cast<int>(std::lower_bound(cur.begin(), cur.end(), p) - cur.begin());
        const Strand& s = t.thin[p];
        d.slices.push_back(KLRSlice::cup(idx, s.kind == RungKind::F ? Orient::FE : Orient::EF, s.i, 1));
        cur.insert(cur.begin() + idx, {p, q});
        if (dots[o] > 0) d.slices.push_back(KLRSlice::dot(idx, dots[o]));
        int j = idx + 1;
        while (j + 1 < static_cast<int>(cur.size()) && cur[j + 1] < q) {
            d.slices.push_back(KLRSlice::crossing(j));
            std::swap(cur[j], cur[j + 1]);
            ++j;
        }
    }
    for (auto it = t.blocks.rbegin(); it != t.blocks.rend(); ++it)
        for (int j = 1; j < it->second; ++j) d.slices.push_back(KLRSlice::merge(it->first));
    return d;
}

// ---------------------------------------------------------------- ModP echelon

struct Echelon {
    std::vector<std::vector<ModP>> rows;
    std::vector<size_t> piv;

    bool add(std::vector<ModP> v) {
        for (size_t r = 0; r < rows.size(); ++r) {
            size_t p = piv[r];
            if (p >= v.size() || v[p].is_zero()) continue;
            ModP f = v[p] / rows[r][p];
            if (v.size() < rows[r].size()) v.resize(rows[r].size());
            for (size_t c = 0; c < rows[r].size(); ++c) v[c] -= f * rows[r][c];
        }
        for (size_t c = 0; c < v.size(); ++c)
            if (!v[c].is_zero()) {
                rows.push_back(std::move(v));
                piv.push_back(c);
                return true;
            }
        return false;
    }
};

// state ids shared by all vectors of one vertex; rows are padded as ids grow
struct StateIndex {
    std::unordered_map<std::vector<uint32_t>, size_t, StateHash> id;
    std::vector<ModP> dense(const StateVec<ModP>& v) {
        for (auto& [s, c] : v) id.emplace(s, id.size());
        std::vector<ModP> out(id.size());
        for (auto& [s, c] : v) out[id.at(s)] = c;
        return out;
    }
};

template <class T>
T dot(const StateVec<T>& a, const StateVec<T>& b) {
    T acc(0);
    const auto& small = a.size() < b.size() ? a : b;
    const auto& big = a.size() < b.size() ? b : a;
    for (auto& [s, c] : small) {
        auto it = big.find(s);
        if (it != big.end()) acc += c * it->second;
    }
    return acc;
}

// value of cap ∘ (vector): run the cap forward and sum
template <class T>
T apply_cap(const Localization<T>& loc, const KLRWord& cap, const StateVec<T>& v) {
    auto r = loc.run(cap, v);
    T acc(0);
    for (auto& [s, c] : r) acc += c;
    return acc;
}

std::vector<std::vector<mpq_class>> invert(std::vector<std::vector<mpq_class>> a) {
    size_t n = a.size();
    std::vector<std::vector<mpq_class>> inv(n, std::vector<mpq_class>(n));
    for (size_t j = 0; j < n; ++j) inv[j][j] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && sgn(a[p][c]) == 0) ++p;
        if (p == n) throw InvariantError("pairing matrix is singular");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        mpq_class f = a[c][c];
        for (size_t k = 0; k < n; ++k) {
            a[c][k] /= f;
            inv[c][k] /= f;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || sgn(a[r][c]) == 0) continue;
            mpq_class g = a[r][c];
            for (size_t k = 0; k < n; ++k) {
                a[r][k] -= g * a[c][k];
                inv[r][k] -= g * inv[c][k];
            }
        }
    }
    return inv;
}

} // namespace

// ---------------------------------------------------------------- mirror

KLRWord mirror(const KLRWord& d) {
    auto words = d.words();
    KLRWord m;
    m.weight = d.weight;
    m.coeff = d.coeff;
    m.domain = words.back();
    for (size_t j = d.slices.size(); j-- > 0;) {
        const KLRSlice& s = d.slices[j];
        const auto& below = words[j];
        switch (s.kind) {
        case SliceKind::Cup: m.slices.push_back(KLRSlice::cap(s.pos)); break;
        case SliceKind::Cap: {
            const Strand& a = below[s.pos];
            m.slices.push_back(KLRSlice::cup(s.pos, a.kind == RungKind::F ? Orient::FE : Orient::EF, a.i, a.k));
            break;
        }
        case SliceKind::Split: m.slices.push_back(KLRSlice::merge(s.pos)); break;
        case SliceKind::Merge: m.slices.push_back(KLRSlice::split(s.pos, below[s.pos].k)); break;
        default: m.slices.push_back(s); break;
        }
    }
    return m;
}

// ---------------------------------------------------------------- decompose

namespace {

// A candidate source offers (degree, builder) pairs in a fixed order until
// the callback asks it to stop; it returns whether it was stopped.
using Offer = std::function<bool(int, const std::function<KLRWord()>&)>;
using Source = std::function<bool(const Offer&)>;

// Enumerates thin matchings with dots, by 2*crossings + dots. `caps` offers
// the upside-down diagrams with their own degrees.
Source matching_source(const LadderWeb& w, const DecomposeOptions& opt, bool caps, long& seen) {
    return [&w, &opt, caps, &seen](const Offer& offer) {
        const int n = w.n();
        ThinLayout t = thin_layout(w.rungs());
        std::map<int, std::vector<int>> by_index;
        for (size_t p = 0; p < t.thin.size(); ++p) by_index[t.thin[p].i].push_back(static_cast<int>(p));
        std::vector<std::vector<Matching>> per_index;
        int max_cross = 0;
        for (auto& [i, pos] : by_index) {
            per_index.push_back(index_matchings(t.thin, pos, 4096));
            if (per_index.back().empty()) throw InvariantError("unbalanced closed web");
            max_cross += per_index.back().back().crossings;
        }
        const int npairs = static_cast<int>(t.thin.size() / 2);
        const int maxd = opt.max_dots >= 0 ? opt.max_dots : n - 1;
        int smax = 2 * max_cross + npairs * maxd;
        std::vector<size_t> choice(per_index.size());
        bool stop = false;
        for (int s = 0; s <= smax && !stop; ++s) {
            for (int c = 0; 2 * c <= s && !stop; ++c) {
                int D = s - 2 * c;
                if (D > npairs * maxd) continue;
                std::function<void(size_t, int)> pick = [&](size_t k, int left) {
                    if (stop) return;
                    if (k == per_index.size()) {
                        if (left != 0) return;
                        Pairs pairs;
                        for (size_t j = 0; j < k; ++j) {
                            auto& m = per_index[j][choice[j]].pairs;
                            pairs.insert(pairs.end(), m.begin(), m.end());
                        }
                        std::vector<int> dots(pairs.size(), 0);
                        KLRWord base = build_cup(w.domain(), t, pairs, dots);
                        if (base.is_zero_by_weights()) return;
                        int d0 = caps ? mirror(base).degree() : base.degree();
                        std::function<void(size_t, int)> dist = [&](size_t j, int rem) {
                            if (stop) return;
                            if (j == dots.size()) {
                                if (rem != 0) return;
                                if (++seen > opt.max_candidates) {
                                    stop = true;
                                    return;
                                }
                                auto make = [&] {
                                    KLRWord c = build_cup(w.domain(), t, pairs, dots);
                                    return caps ? mirror(c) : c;
                                };
                                if (offer(d0 + 2 * D, make)) stop = true;
                                return;
                            }
                            for (int x = std::min(rem, maxd); x >= 0; --x) {
                                dots[j] = x;
                                dist(j + 1, rem - x);
                                if (stop) return;
                            }
                            dots[j] = 0;
                        };
                        dist(0, D);
                        return;
                    }
                    for (size_t m = 0; m < per_index[k].size(); ++m) {
                        int cr = per_index[k][m].crossings;
                        if (cr > left) break;
                        choice[k] = m;
                        pick(k + 1, left - cr);
                        if (stop) return;
                    }
                };
                pick(0, c);
            }
        }
        return stop;
    };
}

// An adjacent pair X^{(a)} Y^{(b)} of one index and opposite kinds whose
// reordered terms Y^{(b-j)} X^{(a-j)} (j < min(a,b)) are all zero webs: the
// pair is then a direct sum of copies of the single rung left over, and the
// copies are reached by a cup of thickness min(a,b) with a Schur decoration.
struct Target {
    std::vector<Rung> reduced;
    std::vector<std::vector<KLRSlice>> lifts; // slices turning `reduced` into the web
};
using Rewrite = std::vector<Target>;

std::optional<Rewrite> find_removal_here(const LadderWeb& w) {
    const auto& word = w.rungs();
    const int n = w.n();
    auto weights = w.weights(); // domain first: weights[j] is below rung size-j
    const size_t sz = word.size();
    for (size_t p = 0; p + 1 < sz; ++p) {
        const Rung &X = word[p], &Y = word[p + 1];
        if (X.i != Y.i || X.kind == Y.kind) continue;
        const GlWeight& nu = weights[sz - p - 2];
        int a = X.k, b = Y.k, c = std::min(a, b);
        bool removable = true;
        for (int j = 0; j < c && removable; ++j) {
            auto mid = apply_rung(nu, Rung(X.kind, X.i, a - j));
            if (mid && apply_rung(*mid, Rung(Y.kind, Y.i, b - j))) removable = false;
        }
        if (!removable) continue;
        Target t;
        t.reduced = word;
        t.reduced.erase(t.reduced.begin() + p, t.reduced.begin() + p + 2);
        if (a > b) t.reduced.insert(t.reduced.begin() + p, Rung(X.kind, X.i, a - b));
        if (b > a) t.reduced.insert(t.reduced.begin() + p, Rung(Y.kind, Y.i, b - a));
        Orient o = X.kind == RungKind::F ? Orient::FE : Orient::EF;
        int P = static_cast<int>(p);
        for (auto& alpha : partitions_in_box(c, n)) {
            std::vector<KLRSlice> s;
            int leg = a > b ? P + 1 : P;
            s.push_back(KLRSlice::cup(leg, o, X.i, c));
            if (!alpha.empty()) s.push_back(KLRSlice::decorate(leg, alpha));
            if (a > b) s.push_back(KLRSlice::merge(P));
            if (b > a) s.push_back(KLRSlice::merge(P + 1));
            t.lifts.push_back(std::move(s));
        }
        return Rewrite{std::move(t)};
    }
    return std::nullopt;
}

// thin Serre triple X_i X_j X_i (one kind, |i-j| = 1) splits as
// X_i^{(2)} X_j plus X_j X_i^{(2)}
std::optional<Rewrite> find_serre_here(const LadderWeb& w) {
    const auto& word = w.rungs();
    for (size_t p = 0; p + 2 < word.size(); ++p) {
        const Rung &x = word[p], &y = word[p + 1], &z = word[p + 2];
        if (x.kind != y.kind || y.kind != z.kind || x.i != z.i) continue;
        if (std::abs(x.i - y.i) != 1 || x.k != 1 || y.k != 1 || z.k != 1) continue;
        int P = static_cast<int>(p);
        Rewrite rw;
        for (int side = 0; side < 2; ++side) {
            Target t;
            t.reduced = word;
            t.reduced.erase(t.reduced.begin() + p, t.reduced.begin() + p + 3);
            Rung thick(x.kind, x.i, 2);
            if (side == 0) {
                t.reduced.insert(t.reduced.begin() + p, {thick, y});
                t.lifts.push_back({KLRSlice::split(P, 1), KLRSlice::crossing(P + 1)});
            } else {
                t.reduced.insert(t.reduced.begin() + p, {y, thick});
                t.lifts.push_back({KLRSlice::split(P + 1, 1), KLRSlice::crossing(P)});
            }
            if (!LadderWeb(w.domain(), t.reduced).zero()) rw.push_back(std::move(t));
        }
        return rw;
    }
    return std::nullopt;
}

// a thin pair X_i Y_i of opposite kinds on the larger side of the
// commutation relation: the reordered pair plus copies of the bare web
std::optional<Rewrite> find_commute_here(const LadderWeb& w) {
    const auto& word = w.rungs();
    const LaurentPoly ev = eval_closed_web(w);
    for (size_t p = 0; p + 1 < word.size(); ++p) {
        const Rung &x = word[p], &y = word[p + 1];
        if (x.i != y.i || x.kind == y.kind || x.k != 1 || y.k != 1) continue;
        std::vector<Rung> swapped = word;
        std::swap(swapped[p], swapped[p + 1]);
        LadderWeb sw(w.domain(), swapped);
        LaurentPoly diff = ev;
        if (!sw.zero()) diff = diff - eval_closed_web(sw);
        bool bigger = !diff.is_zero();
        for (auto& [e, c] : diff.terms())
            if (sgn(c.value()) < 0) bigger = false;
        if (!bigger) continue;
        int P = static_cast<int>(p);
        Rewrite rw;
        if (!sw.zero()) rw.push_back(Target{swapped, {{KLRSlice::crossing(P)}}});
        Target bare;
        bare.reduced = word;
        bare.reduced.erase(bare.reduced.begin() + p, bare.reduced.begin() + p + 2);
        Orient o = x.kind == RungKind::F ? Orient::FE : Orient::EF;
        for (int j = 0; j < w.n(); ++j) {
            std::vector<KLRSlice> s{KLRSlice::cup(P, o, x.i, 1)};
            if (j) s.push_back(KLRSlice::dot(P, j));
            bare.lifts.push_back(std::move(s));
        }
        rw.push_back(std::move(bare));
        return rw;
    }
    return std::nullopt;
}

// swapping rungs that share no upright, or rungs of different kinds on
// different indices, is an isomorphism given by the crossing
bool iso_swap(const Rung& x, const Rung& y) {
    int d = x.i > y.i ? x.i - y.i : y.i - x.i;
    return d >= 2 || (d == 1 && x.kind != y.kind);
}

// breadth-first search over isomorphic reorderings for a word where `here`
// applies; the crossings leading back to the original word end every lift
std::optional<Rewrite> search_rewrite(const LadderWeb& w, std::optional<Rewrite> (*here)(const LadderWeb&),
                                      int max_depth) {
    if (auto r = here(w)) return r;
    struct Node {
        std::vector<Rung> word;
        std::vector<int> path; // swap positions from the original word
    };
    std::vector<Node> layer{{w.rungs(), {}}};
    std::set<std::vector<Rung>> seen{w.rungs()};
    for (int depth = 0; depth < max_depth && !layer.empty(); ++depth) {
        std::vector<Node> next;
        for (auto& nd : layer)
            for (size_t p = 0; p + 1 < nd.word.size(); ++p) {
                if (!iso_swap(nd.word[p], nd.word[p + 1])) continue;
                Node c{nd.word, nd.path};
                std::swap(c.word[p], c.word[p + 1]);
                c.path.push_back(static_cast<int>(p));
                if (!seen.insert(c.word).second) continue;
                LadderWeb cw(w.domain(), c.word);
                if (cw.zero()) continue;
                if (auto r = here(cw)) {
                    for (auto& t : *r)
                        for (auto& lift : t.lifts)
                            for (auto it = c.path.rbegin(); it != c.path.rend(); ++it)
                                lift.push_back(KLRSlice::crossing(*it));
                    return r;
                }
                next.push_back(std::move(c));
            }
        layer = std::move(next);
    }
    return std::nullopt;
}

std::optional<Rewrite> find_rewrite(const LadderWeb& w, int max_depth = 6) {
    if (auto r = search_rewrite(w, find_removal_here, max_depth)) return r;
    if (auto r = search_rewrite(w, find_serre_here, max_depth)) return r;
    return search_rewrite(w, find_commute_here, max_depth);
}

struct Memo {
    std::mutex mu;
    std::map<std::string, std::shared_ptr<const Decomposition>> map;
};

Decomposition decompose_rec(const LadderWeb& w, const DecomposeOptions& opt, Memo& memo);

// Picks a graded basis of inclusions from `cups` and dual projections from
// `caps`; throws InvariantError when the sources run dry.
void select_basis(const LadderWeb& w, const std::map<int, long>& need, const Source& cups, const Source& caps,
                  Decomposition& dec) {
    const int n = w.n();
    LocP locp(n);
    const GlWeight& bw = w.domain();

    // The localization is equivariant. Positive-degree endomorphisms of the
    // trivial object act by scalars there, so the span F_d of all cup vectors
    // of degree <= d has dimension Σ_{d' <= d} need[d'], and cups of degree d
    // independent modulo F_{d-2} give a basis of the degree-d inclusions.
    // Projections are then caps pairing nondegenerately with that basis.
    struct Block {
        std::vector<KLRWord> cups, caps;
        std::vector<StateVec<ModP>> vec;
        std::vector<std::vector<ModP>> rows; // rows[i][j] = <caps_i, cups_j>
        long rank = 0;
    };
    std::map<int, Block> blk;
    std::map<int, long> cum;
    {
        long acc = 0;
        for (auto& [d, k] : need) cum[d] = acc += k;
    }
    if (static_cast<long>(locp.states(bw, w.rungs()).size()) != cum.rbegin()->second)
        throw InvariantError("state count of " + w.str() + " differs from its evaluation at q=1");

    struct Found {
        int degree;
        KLRWord cup;
        StateVec<ModP> vec;
        std::vector<ModP> dense;
    };
    std::vector<Found> found;
    std::map<int, Echelon> filt; // filt[d]: span of found cups of degree <= d
    StateIndex sidx;
    auto filled = [&](int d) { return static_cast<long>(filt[d].rows.size()) == cum[d]; };
    for (auto& [d, k] : need) filt[d];
    long open = 0;
    for (auto& [d, k] : need)
        if (k > 0 && !filled(d)) ++open;
    Offer visit_cup = [&](int dcup, const std::function<KLRWord()>& make) {
        if (!need.count(dcup) || filled(dcup)) return false;
        KLRWord c = make();
        auto v = locp.run(c, locp.unit(bw));
        if (v.empty()) return false;
        auto dv = sidx.dense(v);
        Echelon probe = filt[dcup];
        if (!probe.add(dv)) return false;
        for (auto& [d, e] : filt) {
            if (d < dcup) continue;
            bool was = filled(d);
            e.add(dv);
            if (!was && filled(d)) --open;
        }
        found.push_back({dcup, std::move(c), std::move(v), std::move(dv)});
        return open == 0;
    };
    if (open > 0 && !cups(visit_cup)) {
        std::string msg = "no complete set of inclusions found for web " + w.str() + " (rank/needed per degree:";
        for (auto& [d, k] : need) msg += " " + std::to_string(d) + ":" + std::to_string(filt[d].rows.size()) + "/" + std::to_string(cum[d]);
        throw InvariantError(msg + ", candidates " + std::to_string(dec.candidates_seen) + ")");
    }
    {
        Echelon lower;
        for (auto& [d, k] : need) {
            Echelon cur = lower;
            for (auto& f : found)
                if (f.degree == d && cur.add(f.dense)) {
                    blk[d].cups.push_back(f.cup);
                    blk[d].vec.push_back(f.vec);
                }
            if (static_cast<long>(blk[d].cups.size()) != k)
                throw InvariantError("graded basis selection failed for web " + w.str() + " in degree " + std::to_string(d) + ": " +
                                     std::to_string(blk[d].cups.size()) + "/" + std::to_string(k));
            for (auto& f : found)
                if (f.degree == d) lower.add(f.dense);
        }
    }

    long missing = 0;
    for (auto& [d, k] : need) missing += k;
    Offer visit_cap = [&](int dcap, const std::function<KLRWord()>& make) {
        int d = -dcap;
        auto kit = need.find(d);
        if (kit == need.end() || blk[d].rank >= kit->second) return false;
        Block& b = blk[d];
        KLRWord k = make();
        std::vector<ModP> row;
        for (auto& v : b.vec) row.push_back(apply_cap(locp, k, v));
        b.rows.push_back(row);
        Echelon e;
        long r = 0;
        for (auto& x : b.rows) r += e.add(x);
        if (r > b.rank) {
            b.caps.push_back(std::move(k));
            missing -= r - b.rank;
            b.rank = r;
        } else {
            b.rows.pop_back();
        }
        return missing == 0;
    };
    if (missing > 0 && !caps(visit_cap)) {
        std::string msg = "no complete set of projections found for web " + w.str() + " (rank/needed per degree:";
        for (auto& [d, k] : need) msg += " " + std::to_string(d) + ":" + std::to_string(blk[d].rank) + "/" + std::to_string(k);
        throw InvariantError(msg + ", candidates " + std::to_string(dec.candidates_seen) + ")");
    }

    // exact duals on a nonsingular square minor of each pairing matrix
    LocQ locq(n);
    for (auto& [d, k] : need) {
        if (k == 0) continue;
        Block& b = blk[d];
        std::vector<size_t> I, J;
        {
            Echelon e;
            for (size_t i = 0; i < b.rows.size() && static_cast<long>(I.size()) < k; ++i)
                if (e.add(b.rows[i])) I.push_back(i);
            Echelon f;
            for (size_t j = 0; j < b.cups.size() && static_cast<long>(J.size()) < k; ++j) {
                std::vector<ModP> col;
                for (size_t i : I) col.push_back(b.rows[i][j]);
                if (f.add(col)) J.push_back(j);
            }
        }
        std::vector<StateVec<mpq_class>> v;
        for (size_t j : J) v.push_back(locq.run(b.cups[j], locq.unit(bw)));
        std::vector<std::vector<mpq_class>> M(k, std::vector<mpq_class>(k));
        for (long i = 0; i < k; ++i)
            for (long j = 0; j < k; ++j) M[i][j] = apply_cap(locq, b.caps[I[i]], v[j]);
        auto inv = invert(M);
        size_t cap0 = dec.caps.size();
        for (size_t i : I) dec.caps.push_back(b.caps[i]);
        for (long j = 0; j < k; ++j) {
            dec.inc.push_back(b.cups[J[j]]);
            dec.degree.push_back(d);
            std::vector<Scalar> row(cap0, Scalar(0));
            for (long i = 0; i < k; ++i) row.push_back(Scalar(inv[j][i]));
            dec.proj_coeff.push_back(std::move(row));
        }
    }
    for (auto& r : dec.proj_coeff) r.resize(dec.caps.size(), Scalar(0));
}

Decomposition decompose_rec(const LadderWeb& w, const DecomposeOptions& opt, Memo& memo) {
    if (w.zero() || !w.closed()) throw DomainError("decompose_web needs a nonzero closed web");
    const std::string key = w.str();
    {
        std::lock_guard lk(memo.mu);
        auto it = memo.map.find(key);
        if (it != memo.map.end()) return *it->second;
    }

    // target graded rank: coefficient of q^{-d} counts summands with inc of degree d
    std::map<int, long> need;
    const LaurentPoly ev = eval_closed_web(w);
    for (auto& [e, c] : ev.terms()) {
        if (c.value().get_den() != 1 || sgn(c.value()) < 0)
            throw InvariantError("web evaluation is not a graded dimension");
        need[-e] = c.value().get_num().get_si();
    }

    auto fresh = [&] {
        Decomposition d;
        d.web = w;
        return d;
    };
    Decomposition dec = fresh();
    bool done = false;
    if (w.rungs().empty()) {
        KLRWord id;
        id.weight = w.domain();
        dec.inc.push_back(id);
        dec.caps.push_back(id);
        dec.degree.push_back(0);
        dec.proj_coeff.push_back({Scalar(1)});
        done = true;
    }
    if (!done) {
        if (auto rw = find_rewrite(w)) {
            // lift the smaller webs' inclusions through the rewrite
            std::vector<KLRWord> lifted;
            long sub_seen = 0;
            for (auto& t : *rw) {
                Decomposition sub = decompose_rec(LadderWeb(w.domain(), t.reduced), opt, memo);
                sub_seen += sub.candidates_seen;
                for (auto& lift : t.lifts)
                    for (auto& c : sub.inc) {
                        KLRWord x = c;
                        x.slices.insert(x.slices.end(), lift.begin(), lift.end());
                        if (!x.is_zero_by_weights()) lifted.push_back(std::move(x));
                    }
            }
            dec.candidates_seen = sub_seen + static_cast<long>(lifted.size());
            Source cups = [&](const Offer& offer) {
                for (auto& x : lifted)
                    if (offer(x.degree(), [&] { return x; })) return true;
                return false;
            };
            long seen = 0;
            Source caps = [&](const Offer& offer) {
                for (auto& x : lifted) {
                    KLRWord m = mirror(x);
                    if (offer(m.degree(), [&] { return m; })) return true;
                }
                return matching_source(w, opt, true, seen)(offer);
            };
            try {
                select_basis(w, need, cups, caps, dec);
                dec.candidates_seen += seen;
                done = true;
            } catch (const InvariantError&) {
                dec = fresh();
            }
        }
    }
    if (!done) {
        long seen = 0;
        select_basis(w, need, matching_source(w, opt, false, seen), matching_source(w, opt, true, seen), dec);
        dec.candidates_seen += seen;
    }
    std::lock_guard lk(memo.mu);
    memo.map.emplace(key, std::make_shared<const Decomposition>(dec));
    return dec;
}

} // namespace

Decomposition decompose_web(const LadderWeb& w, const DecomposeOptions& opt) {
    Memo memo;
    return decompose_rec(w, opt, memo);
}

std::vector<std::vector<Scalar>> biorthogonality_matrix(const Decomposition& dec) {
    size_t m = dec.size();
    std::vector<std::vector<Scalar>> out(m, std::vector<Scalar>(m));
    for (size_t j = 0; j < m; ++j)
        for (size_t k = 0; k < m; ++k) {
            Scalar acc(0);
            for (size_t i = 0; i < dec.caps.size(); ++i) {
                if (dec.proj_coeff[j][i].is_zero()) continue;
                acc += dec.proj_coeff[j][i] * evaluate_closed(dec.inc[k].then(dec.caps[i]));
            }
            out[j][k] = acc;
        }
    return out;
}

// ---------------------------------------------------------------- complexes

WebComplex build_complex(const CubeSkeleton& cube) {
    WebComplex wc;
    wc.n = cube.n;
    auto [fq, fh] = cube.framing_correction();
    wc.q_correction = fq;
    wc.h_correction = fh;
    std::map<std::vector<int>, int> index;
    for (auto& v : cube.vertices()) {
        LadderWeb web = cube.vertex_web(v);
        if (web.zero()) continue;
        index[v] = static_cast<int>(wc.objects.size());
        wc.objects.push_back({web, cube.vertex_h(v), cube.vertex_q(v), v});
    }
    for (auto& obj : wc.objects) {
        const auto& v = obj.vertex;
        int hsum = 0;
        for (size_t c = 0; c < cube.crossings.size(); ++c) {
            const auto& cc = cube.crossings[c];
            int here = hsum;
            hsum += cc.terms[v[c]].h;
            std::vector<int> u = v;
            int s;
            if (cc.sign > 0) {
                if (v[c] + 1 >= static_cast<int>(cc.terms.size())) continue;
                u[c] = v[c] + 1;
                s = v[c];
            } else {
                if (v[c] == 0) continue;
                u[c] = v[c] - 1;
                s = u[c];
            }
            auto it = index.find(u);
            if (it == index.end()) continue;
            CrossingDifferential cd = crossing_differential(cc, s);
            int off = cube.crossing_offset(v, static_cast<int>(c));
            WebComplex::Edge e;
            e.from = index.at(v);
            e.to = it->second;
            e.sign = here % 2 ? -1 : 1;
            e.foam.weight = cube.bottom;
            e.foam.domain = obj.web.rungs();
            for (auto sl : cd.slices) {
                sl.pos += off;
                e.foam.slices.push_back(sl);
            }
            if (e.foam.codomain() != wc.objects[e.to].web.rungs())
                throw InvariantError("crossing differential does not reach the neighbouring vertex");
            wc.edges.push_back(std::move(e));
        }
    }
    return wc;
}

size_t ScalarComplex::total() const {
    size_t t = 0;
    for (auto& [h, g] : gens) t += g.size();
    return t;
}

const ScalarComplex::Matrix& ScalarComplex::diff(int h) const {
    static const Matrix empty;
    auto it = d.find(h);
    return it == d.end() ? empty : it->second;
}

ScalarComplex::Matrix& ScalarComplex::diff_mut(int h) {
    auto& m = d[h];
    size_t rows = gens.count(h + 1) ? gens.at(h + 1).size() : 0;
    size_t cols = gens.count(h) ? gens.at(h).size() : 0;
    if (m.size() != rows || (rows && m[0].size() != cols)) m.assign(rows, std::vector<Scalar>(cols));
    return m;
}

ScalarComplex scalarize(const WebComplex& wc, const ScalarizeOptions& opt) {
    const size_t N = wc.objects.size();
    std::vector<Decomposition> dec(N);
    {
        Memo memo;
        std::atomic<size_t> next{0};
        std::mutex err_mu;
        std::exception_ptr err;
        auto worker = [&]() {
            for (;;) {
                size_t o = next++;
                if (o >= N) return;
                try {
                    dec[o] = decompose_rec(wc.objects[o].web, opt.decompose, memo);
                } catch (...) {
                    std::lock_guard lk(err_mu);
                    if (!err) err = std::current_exception();
                }
            }
        };
        int jobs = std::max(1, opt.jobs);
        std::vector<std::thread> pool;
        for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
        if (err) std::rethrow_exception(err);
    }

    ScalarComplex sc;
    sc.integral = opt.integral;
    // generator ids
    std::vector<std::vector<std::pair<int, size_t>>> where(N); // (h, index in gens[h])
    for (size_t o = 0; o < N; ++o) {
        const auto& obj = wc.objects[o];
        int h = obj.h + wc.h_correction;
        for (size_t j = 0; j < dec[o].size(); ++j) {
            auto& g = sc.gens[h];
            where[o].emplace_back(h, g.size());
            g.push_back({h, obj.q + wc.q_correction + dec[o].shift(j), static_cast<int>(o), static_cast<int>(j)});
        }
    }
    for (auto& [h, g] : sc.gens) {
        if (sc.gens.count(h + 1)) sc.diff_mut(h);
    }

    LocQ loc(wc.n);
    std::vector<std::vector<StateVec<mpq_class>>> incv(N);
    std::mutex inc_mu;
    auto inc_vec = [&](size_t o) -> const std::vector<StateVec<mpq_class>>& {
        std::lock_guard lk(inc_mu);
        if (incv[o].empty() && dec[o].size()) {
            for (auto& c : dec[o].inc) incv[o].push_back(loc.run(c, loc.unit(c.weight)));
        }
        return incv[o];
    };

    std::atomic<size_t> next{0};
    std::mutex out_mu;
    std::exception_ptr err;
    auto edge_worker = [&]() {
        for (;;) {
            size_t ei = next++;
            if (ei >= wc.edges.size()) return;
            try {
                const auto& e = wc.edges[ei];
                const auto& A = dec[e.from];
                const auto& B = dec[e.to];
                if (A.size() == 0 || B.size() == 0) continue;
                int g = e.foam.degree();
                int dq = wc.objects[e.to].q - wc.objects[e.from].q;
                if (g != dq) throw InvariantError("edge degree " + std::to_string(g) + " differs from shift difference " + std::to_string(dq));
                const auto& vin = inc_vec(e.from);
                std::vector<std::tuple<size_t, size_t, Scalar>> entries;
                for (size_t j = 0; j < A.size(); ++j) {
                    bool any = false;
                    for (size_t jj = 0; jj < B.size() && !any; ++jj) any = B.degree[jj] == A.degree[j] + g;
                    if (!any) continue;
                    StateVec<mpq_class> dv = loc.run(e.foam, vin[j]);
                    std::vector<std::optional<mpq_class>> capval(B.caps.size());
                    for (size_t jj = 0; jj < B.size(); ++jj) {
                        if (B.degree[jj] != A.degree[j] + g) continue;
                        mpq_class acc = 0;
                        for (size_t i = 0; i < B.caps.size(); ++i) {
                            const Scalar& pc = B.proj_coeff[jj][i];
                            if (pc.is_zero()) continue;
                            if (!capval[i]) {
                                KLRWord closed = A.inc[j].then(e.foam).then(B.caps[i]);
                                uint64_t key = closed.hash();
                                std::optional<Scalar> hit = opt.cache ? opt.cache->find(key) : std::nullopt;
                                if (hit) capval[i] = hit->value();
                                else {
                                    capval[i] = apply_cap(loc, B.caps[i], dv);
                                    if (opt.cache) opt.cache->insert(key, Scalar(*capval[i]));
                                }
                            }
                            acc += pc.value() * *capval[i];
                        }
                        if (sgn(acc) == 0) continue;
                        if (e.sign < 0) acc = -acc;
                        if (opt.integral && acc.get_den() != 1)
                            throw InvariantError("non-integral differential entry " + acc.get_str() + " in integral mode");
                        entries.emplace_back(jj, j, Scalar(acc, opt.integral));
                    }
                }
                std::lock_guard lk(out_mu);
                auto [hf, cf] = where[e.from].empty() ? std::pair<int, size_t>{0, 0} : where[e.from][0];
                (void)cf;
                auto& M = sc.diff_mut(hf);
                for (auto& [jj, j, val] : entries) {
                    auto [hr, r] = where[e.to][jj];
                    auto [hc, c] = where[e.from][j];
                    (void)hr;
                    (void)hc;
                    M[r][c] += val;
                }
            } catch (...) {
                std::lock_guard lk(out_mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    {
        // exact inclusion vectors first, so workers share them read-only
        for (size_t o = 0; o < N; ++o) inc_vec(o);
        int jobs = std::max(1, opt.jobs);
        std::vector<std::thread> pool;
        for (int j = 1; j < jobs; ++j) pool.emplace_back(edge_worker);
        edge_worker();
        for (auto& th : pool) th.join();
        if (err) std::rethrow_exception(err);
    }
    if (opt.decompositions) *opt.decompositions = std::move(dec);
    return sc;
}

bool d_squared_zero(const ScalarComplex& c) {
    for (auto& [h, m1] : c.d) {
        auto it = c.d.find(h + 1);
        if (it == c.d.end() || m1.empty()) continue;
        const auto& m2 = it->second;
        size_t cols = m1[0].size();
        for (size_t r = 0; r < m2.size(); ++r)
            for (size_t k = 0; k < cols; ++k) {
                mpq_class acc = 0;
                for (size_t j = 0; j < m1.size(); ++j)
                    if (!m2[r][j].is_zero() && !m1[j][k].is_zero()) acc += m2[r][j].value() * m1[j][k].value();
                if (sgn(acc) != 0) return false;
            }
    }
    return true;
}

// ---------------------------------------------------------------- elimination

namespace {

// one q-degree slice of a complex with sparse rows
struct Block {
    std::map<int, std::vector<size_t>> gens;                          // h -> generator ids (into the parent's gens[h])
    std::map<int, std::vector<std::map<size_t, mpq_class>>> d;         // d[h][row] = {col -> value}
};

std::map<int, Block> split_by_q(const ScalarComplex& c) {
    std::map<int, Block> out;
    std::map<int, std::vector<std::pair<int, size_t>>> local; // h -> (q, local index) per generator
    for (auto& [h, gs] : c.gens)
        for (size_t j = 0; j < gs.size(); ++j) {
            auto& b = out[gs[j].q];
            local[h].emplace_back(gs[j].q, b.gens[h].size());
            b.gens[h].push_back(j);
        }
    for (auto& [q, b] : out)
        for (auto& [h, ids] : b.gens)
            if (b.gens.count(h + 1)) b.d[h].assign(b.gens[h + 1].size(), {});
    for (auto& [h, m] : c.d)
        for (size_t r = 0; r < m.size(); ++r)
            for (size_t k = 0; k < m[r].size(); ++k) {
                if (m[r][k].is_zero()) continue;
                auto [qr, lr] = local[h + 1][r];
                auto [qc, lc] = local[h][k];
                if (qr != qc) throw InvariantError("differential does not preserve the q-grading");
                out[qr].d[h][lr][lc] = m[r][k].value();
            }
    return out;
}

bool pivot_ok(const mpq_class& v, bool integral) {
    if (sgn(v) == 0) return false;
    return !integral || v == 1 || v == -1;
}

// cancels invertible entries inside one q-block
void eliminate_block(Block& b, bool integral, PivotOrder order) {
    for (;;) {
        bool found = false;
        int ph = 0;
        size_t pr = 0, pc = 0;
        std::vector<int> hs;
        for (auto& [h, m] : b.d) hs.push_back(h);
        if (order == PivotOrder::HighestFirst) std::reverse(hs.begin(), hs.end());
        for (int h : hs) {
            auto& m = b.d[h];
            if (order == PivotOrder::LowestFirst) {
                for (size_t r = 0; r < m.size() && !found; ++r)
                    for (auto& [c, v] : m[r])
                        if (pivot_ok(v, integral)) {
                            found = true;
                            ph = h, pr = r, pc = c;
                            break;
                        }
            } else {
                for (size_t r = m.size(); r-- > 0 && !found;)
                    for (auto it = m[r].rbegin(); it != m[r].rend(); ++it)
                        if (pivot_ok(it->second, integral)) {
                            found = true;
                            ph = h, pr = r, pc = it->first;
                            break;
                        }
            }
            if (found) break;
        }
        if (!found) return;
        auto& m = b.d[ph];
        mpq_class x = m[pr].at(pc);
        std::map<size_t, mpq_class> prow = m[pr];
        // d' = d - d[.,c] x^{-1} d[r,.]
        for (size_t r = 0; r < m.size(); ++r) {
            if (r == pr) continue;
            auto it = m[r].find(pc);
            if (it == m[r].end()) continue;
            mpq_class f = it->second / x;
            for (auto& [c, v] : prow) {
                auto& t = m[r][c];
                t -= f * v;
                if (sgn(t) == 0) m[r].erase(c);
            }
            m[r].erase(pc);
        }
        // drop row pr of d[ph], column pc everywhere in d[ph]
        m.erase(m.begin() + static_cast<long>(pr));
        auto shift_cols = [](std::vector<std::map<size_t, mpq_class>>& mm, size_t col) {
            for (auto& row : mm) {
                std::map<size_t, mpq_class> nr;
                for (auto& [c, v] : row)
                    if (c != col) nr.emplace(c > col ? c - 1 : c, v);
                row = std::move(nr);
            }
        };
        shift_cols(m, pc);
        // d[ph-1]: drop row pc; d[ph+1]: drop column pr
        if (b.d.count(ph - 1)) {
            auto& m0 = b.d[ph - 1];
            m0.erase(m0.begin() + static_cast<long>(pc));
        }
        if (b.d.count(ph + 1)) shift_cols(b.d[ph + 1], pr);
        b.gens[ph].erase(b.gens[ph].begin() + static_cast<long>(pc));
        b.gens[ph + 1].erase(b.gens[ph + 1].begin() + static_cast<long>(pr));
    }
}

ScalarComplex join_blocks(const ScalarComplex& orig, std::map<int, Block>& blocks) {
    ScalarComplex out;
    out.integral = orig.integral;
    std::map<int, std::map<std::pair<int, size_t>, size_t>> pos; // h -> (q, local) -> index
    for (auto& [q, b] : blocks)
        for (auto& [h, ids] : b.gens)
            for (size_t l = 0; l < ids.size(); ++l) {
                pos[h][{q, l}] = out.gens[h].size();
                out.gens[h].push_back(orig.gens.at(h)[ids[l]]);
            }
    for (auto& [h, g] : out.gens)
        if (out.gens.count(h + 1)) out.diff_mut(h);
    for (auto& [q, b] : blocks)
        for (auto& [h, m] : b.d)
            for (size_t r = 0; r < m.size(); ++r)
                for (auto& [c, v] : m[r])
                    out.diff_mut(h)[pos[h + 1][{q, r}]][pos[h][{q, c}]] = Scalar(v, orig.integral);
    return out;
}

// Smith normal form diagonal (nonzero invariant factors) of an integer matrix
std::vector<mpz_class> smith_diagonal(std::vector<std::vector<mpz_class>> a) {
    std::vector<mpz_class> diag;
    size_t R = a.size(), C = R ? a[0].size() : 0;
    size_t t = 0;
    while (t < R && t < C) {
        // smallest nonzero entry in the remaining submatrix
        size_t br = R, bc = C;
        for (size_t r = t; r < R; ++r)
            for (size_t c = t; c < C; ++c)
                if (sgn(a[r][c]) != 0 && (br == R || abs(a[r][c]) < abs(a[br][bc]))) br = r, bc = c;
        if (br == R) break;
        std::swap(a[t], a[br]);
        for (auto& row : a) std::swap(row[t], row[bc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t r = t + 1; r < R; ++r) {
                if (sgn(a[r][t]) == 0) continue;
                mpz_class f = a[r][t] / a[t][t];
                for (size_t c = t; c < C; ++c) a[r][c] -= f * a[t][c];
                if (sgn(a[r][t]) != 0) {
                    std::swap(a[t], a[r]);
                    clean = false;
                }
            }
            for (size_t c = t + 1; c < C; ++c) {
                if (sgn(a[t][c]) == 0) continue;
                mpz_class f = a[t][c] / a[t][t];
                for (size_t r = t; r < R; ++r) a[r][c] -= f * a[r][t];
                if (sgn(a[t][c]) != 0) {
                    for (auto& row : a) std::swap(row[t], row[c]);
                    clean = false;
                }
            }
            if (clean) {
                // divisibility of the rest
                for (size_t r = t + 1; r < R && clean; ++r)
                    for (size_t c = t + 1; c < C && clean; ++c)
                        if (a[r][c] % a[t][t] != 0) {
                            for (size_t k = t; k < C; ++k) a[t][k] += a[r][k];
                            clean = false;
                        }
            }
        }
        diag.push_back(abs(a[t][t]));
        ++t;
    }
    return diag;
}

long rank_q(const std::vector<std::map<size_t, mpq_class>>& m, size_t cols) {
    std::vector<std::vector<mpq_class>> a;
    for (auto& row : m) {
        std::vector<mpq_class> r(cols);
        for (auto& [c, v] : row) r[c] = v;
        a.push_back(std::move(r));
    }
    long rank = 0;
    size_t R = a.size();
    for (size_t c = 0; c < cols && static_cast<size_t>(rank) < R; ++c) {
        size_t p = static_cast<size_t>(rank);
        while (p < R && sgn(a[p][c]) == 0) ++p;
        if (p == R) continue;
        std::swap(a[p], a[rank]);
        for (size_t r = 0; r < R; ++r) {
            if (r == static_cast<size_t>(rank) || sgn(a[r][c]) == 0) continue;
            mpq_class f = a[r][c] / a[rank][c];
            for (size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

} // namespace

ScalarComplex gaussian_eliminate(ScalarComplex c, PivotOrder order) {
    auto blocks = split_by_q(c);
    for (auto& [q, b] : blocks) eliminate_block(b, c.integral, order);
    return join_blocks(c, blocks);
}

LaurentPoly HomologyTable::euler() const {
    LaurentPoly p;
    for (auto& e : entries) p += LaurentPoly::monomial(e.q, Scalar(e.h % 2 ? -e.rank : e.rank));
    return p;
}

HomologyTable homology(const ScalarComplex& c0) {
    ScalarComplex c = gaussian_eliminate(c0, PivotOrder::LowestFirst);
    auto blocks = split_by_q(c);
    std::vector<HomologyEntry> out;
    for (auto& [q, b] : blocks) {
        std::map<int, long> rank;
        std::map<int, std::vector<mpz_class>> tors;
        for (auto& [h, m] : b.d) {
            size_t cols = b.gens[h].size();
            if (!c.integral) {
                rank[h] = rank_q(m, cols);
            } else {
                std::vector<std::vector<mpz_class>> a(m.size(), std::vector<mpz_class>(cols));
                for (size_t r = 0; r < m.size(); ++r)
                    for (auto& [k, v] : m[r]) {
                        if (v.get_den() != 1) throw InvariantError("non-integral entry in integral homology");
                        a[r][k] = v.get_num();
                    }
                auto diag = smith_diagonal(std::move(a));
                rank[h] = static_cast<long>(diag.size());
                for (auto& x : diag)
                    if (x > 1) tors[h + 1].push_back(x);
            }
        }
        for (auto& [h, ids] : b.gens) {
            long r = static_cast<long>(ids.size()) - (rank.count(h) ? rank[h] : 0) - (rank.count(h - 1) ? rank[h - 1] : 0);
            std::vector<std::string> t;
            for (auto& x : tors[h]) t.push_back(x.get_str());
            if (r == 0 && t.empty()) continue;
            out.push_back({h, q, r, t});
        }
        for (auto& [h, t] : tors)
            if (!b.gens.count(h)) throw InvariantError("torsion without generators");
    }
    std::sort(out.begin(), out.end(), [](const HomologyEntry& x, const HomologyEntry& y) {
        return std::pair(x.h, x.q) < std::pair(y.h, y.q);
    });
    HomologyTable t;
    t.entries = std::move(out);
    return t;
}

} // namespace sln
