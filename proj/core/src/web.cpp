#include "sln/web.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace sln {

ParseError::ParseError(const std::string& msg, int line, int col)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
    std::string text;
    int line, col;
};

std::vector<std::vector<Token>> tokenize_lines(const std::string& text) {
    std::vector<std::vector<Token>> lines;
    int line = 1, col = 1;
    std::vector<Token> cur;
    std::string tok;
    int tl = 0, tc = 0;
    bool comment = false;
    auto flush_tok = [&] {
        if (!tok.empty()) cur.push_back({tok, tl, tc});
        tok.clear();
    };
    for (char ch : text) {
        if (ch == '\n') {
            flush_tok();
            lines.push_back(std::move(cur));
            cur.clear();
            comment = false;
            ++line;
            col = 1;
            continue;
        }
        if (!comment && ch == '#') {
            flush_tok();
            comment = true;
        }
        if (!comment) {
            if (ch == ' ' || ch == '\t' || ch == '\r') flush_tok();
            else {
                if (tok.empty()) {
                    tl = line;
                    tc = col;
                }
                tok += ch;
            }
        }
        ++col;
    }
    flush_tok();
    lines.push_back(std::move(cur));
    return lines;
}

long parse_int(const Token& t) {
    size_t used = 0;
    long v = 0;
    try {
        v = std::stol(t.text, &used);
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + t.text + "'", t.line, t.col);
    }
    if (used != t.text.size()) throw ParseError("expected an integer, got '" + t.text + "'", t.line, t.col);
    return v;
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// PD helpers
struct PDLeg {
    int t, k;
};

bool leg_incoming(const PDCrossing& x, int k) {
    if (k == 0) return true;
    if (k == 2) return false;
    return (k == 1) == x.over_forward;
}

struct PDIndex {
    std::map<int, std::vector<PDLeg>> legs_of_edge;
    std::map<int, int> component; // edge -> component
    int components = 0;
};

PDIndex index_pd(const std::vector<PDCrossing>& pd) {
    PDIndex ix;
    for (int t = 0; t < static_cast<int>(pd.size()); ++t)
        for (int k = 0; k < 4; ++k) ix.legs_of_edge[pd[t].legs[k]].push_back({t, k});
    for (auto& [e, legs] : ix.legs_of_edge) {
        if (legs.size() != 2) throw DomainError("edge " + std::to_string(e) + " must appear exactly twice");
        bool in0 = leg_incoming(pd[legs[0].t], legs[0].k), in1 = leg_incoming(pd[legs[1].t], legs[1].k);
        if (in0 == in1) throw DomainError("edge " + std::to_string(e) + " has inconsistent orientation");
    }
    // follow the strands: incoming leg k continues at leg k+2
    for (auto& [e, legs] : ix.legs_of_edge) {
        if (ix.component.count(e)) continue;
        int comp = ix.components++;
        int cur = e;
        while (!ix.component.count(cur)) {
            ix.component[cur] = comp;
            auto& ls = ix.legs_of_edge[cur];
            const PDLeg& head = leg_incoming(pd[ls[0].t], ls[0].k) ? ls[0] : ls[1];
            cur = pd[head.t].legs[(head.k + 2) % 4];
        }
    }
    return ix;
}

} // namespace

TangleDiagram TangleDiagram::braid_closure(int strands, std::vector<int> word, std::vector<int> colors) {
    if (strands < 1) throw DomainError("a braid needs at least one strand");
    for (int g : word)
        if (g == 0 || std::abs(g) >= strands) throw DomainError("braid generator out of range");
    TangleDiagram d;
    d.kind = DiagramKind::Braid;
    d.strands = strands;
    d.braid = std::move(word);
    d.colors = std::move(colors);
    d.framing.assign(d.components(), 0);
    return d;
}

TangleDiagram TangleDiagram::parse_braid(const std::string& text, std::vector<int> colors, int strands) {
    std::vector<int> word;
    int maxg = 0;
    for (auto& line : tokenize_lines(text))
        for (auto& t : line) {
            long g = parse_int(t);
            if (g == 0) throw ParseError("braid generators are nonzero", t.line, t.col);
            if (strands > 0 && std::abs(g) >= strands)
                throw ParseError("generator out of range for " + std::to_string(strands) + " strands", t.line, t.col);
            word.push_back(static_cast<int>(g));
            maxg = std::max(maxg, static_cast<int>(std::abs(g)));
        }
    if (strands <= 0) strands = maxg + 1;
    return braid_closure(strands, std::move(word), std::move(colors));
}

TangleDiagram TangleDiagram::parse_pd(const std::string& text, std::vector<int> colors) {
    TangleDiagram d;
    d.kind = DiagramKind::PD;
    std::vector<int> file_colors, file_framing;
    Token first{"", 1, 1};
    bool have_first = false;
    for (auto& line : tokenize_lines(text)) {
        if (line.empty()) continue;
        const Token& head = line[0];
        if (!have_first) {
            first = head;
            have_first = true;
        }
        if (head.text == "X") {
            if (line.size() != 6) {
                const Token& at = line.size() > 6 ? line[6] : line.back();
                int col = line.size() > 6 ? at.col : at.col + static_cast<int>(at.text.size());
                throw ParseError("a crossing line is 'X a b c d o'", at.line, col);
            }
            PDCrossing x;
            for (int k = 0; k < 4; ++k) {
                long v = parse_int(line[1 + k]);
                if (v <= 0) throw ParseError("edge labels are positive", line[1 + k].line, line[1 + k].col);
                x.legs[k] = static_cast<int>(v);
            }
            long o = parse_int(line[5]);
            if (o != 0 && o != 1) throw ParseError("orientation bit must be 0 or 1", line[5].line, line[5].col);
            x.over_forward = o == 1;
            d.pd.push_back(x);
        } else if (head.text == "colors" || head.text == "framing") {
            auto& dst = head.text == "colors" ? file_colors : file_framing;
            for (size_t j = 1; j < line.size(); ++j) dst.push_back(static_cast<int>(parse_int(line[j])));
        } else {
            throw ParseError("unknown directive '" + head.text + "'", head.line, head.col);
        }
    }
    if (d.pd.empty()) throw ParseError("no crossings", first.line, first.col);
    // count check per edge with a source position
    std::map<int, int> seen;
    for (auto& x : d.pd)
        for (int e : x.legs) ++seen[e];
    for (auto& [e, c] : seen)
        if (c != 2) throw ParseError("edge " + std::to_string(e) + " appears " + std::to_string(c) + " times", first.line, first.col);
    try {
        index_pd(d.pd);
    } catch (const DomainError& e) {
        throw ParseError(e.what(), first.line, first.col);
    }
    d.colors = colors.empty() ? file_colors : colors;
    d.framing = file_framing;
    int comps = d.components();
    if (d.framing.empty()) d.framing.assign(comps, 0);
    if (static_cast<int>(d.framing.size()) != comps)
        throw ParseError("framing list needs one entry per component", first.line, first.col);
    return d;
}

int TangleDiagram::components() const {
    if (kind == DiagramKind::PD) return index_pd(pd).components;
    auto c = component_of_strand();
    return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

int TangleDiagram::crossings() const {
    return kind == DiagramKind::PD ? static_cast<int>(pd.size()) : static_cast<int>(braid.size());
}

std::vector<int> TangleDiagram::component_of_strand() const {
    if (kind == DiagramKind::PD) {
        auto ix = index_pd(pd);
        int maxe = ix.legs_of_edge.rbegin()->first;
        std::vector<int> out(maxe + 1, -1);
        for (auto& [e, c] : ix.component) out[e] = c;
        return out;
    }
    // permutation of bottom positions
    std::vector<int> at(strands); // at[pos] = starting position of the strand now at pos
    std::iota(at.begin(), at.end(), 0);
    for (int g : braid) std::swap(at[std::abs(g) - 1], at[std::abs(g)]);
    std::vector<int> next(strands); // start position -> start position of the strand it closes into
    for (int pos = 0; pos < strands; ++pos) next[at[pos]] = pos;
    std::vector<int> comp(strands, -1);
    int c = 0;
    for (int s = 0; s < strands; ++s) {
        if (comp[s] >= 0) continue;
        for (int cur = s; comp[cur] < 0; cur = next[cur]) comp[cur] = c;
        ++c;
    }
    return comp;
}

std::vector<int> TangleDiagram::self_writhe() const {
    std::vector<int> w(components(), 0);
    if (kind == DiagramKind::PD) {
        auto ix = index_pd(pd);
        for (auto& x : pd)
            if (ix.component.at(x.legs[0]) == ix.component.at(x.legs[1])) w[ix.component.at(x.legs[0])] += x.sign();
        return w;
    }
    auto comp = component_of_strand();
    std::vector<int> at(strands);
    std::iota(at.begin(), at.end(), 0);
    for (int g : braid) {
        int p = std::abs(g) - 1;
        if (comp[at[p]] == comp[at[p + 1]]) w[comp[at[p]]] += g > 0 ? 1 : -1;
        std::swap(at[p], at[p + 1]);
    }
    return w;
}

std::vector<int> TangleDiagram::resolved_colors(int n) const {
    int comps = components();
    std::vector<int> c = colors;
    if (c.empty()) c.assign(comps, 1);
    else if (c.size() == 1) c.assign(comps, c[0]);
    if (static_cast<int>(c.size()) != comps)
        throw DomainError("expected " + std::to_string(comps) + " colors, got " + std::to_string(c.size()));
    for (int x : c)
        if (x < 1 || x > n - 1) throw DomainError("color " + std::to_string(x) + " outside 1.." + std::to_string(n - 1));
    return c;
}

std::string TangleDiagram::canonical() const {
    std::ostringstream os;
    if (kind == DiagramKind::Braid) {
        os << "braid " << strands << " :";
        for (int g : braid) os << " " << g;
    } else {
        os << "pd :";
        for (auto& x : pd) os << " X" << x.legs[0] << "," << x.legs[1] << "," << x.legs[2] << "," << x.legs[3] << "," << x.over_forward;
    }
    os << " colors";
    for (int c : colors) os << " " << c;
    os << " framing";
    for (int f : framing) os << " " << f;
    return os.str();
}

uint64_t TangleDiagram::hash() const { return fnv1a(canonical()); }

// ---------------------------------------------------------------- Morse

namespace {

void track_width(MorseDiagram& m) {
    int w = 0;
    m.max_width = 0;
    for (auto& e : m.events) {
        if (e.kind == MorseKind::Cup) w += 2;
        if (e.kind == MorseKind::Cap) w -= 2;
        m.max_width = std::max(m.max_width, w);
    }
}

MorseDiagram braid_morse(const TangleDiagram& d, const std::vector<int>& comp_colors) {
    MorseDiagram m;
    auto comp = d.component_of_strand();
    for (int j = 0; j < d.strands; ++j) m.events.push_back({MorseKind::Cup, j, 0, true, comp_colors[comp[j]]});
    for (int g : d.braid) m.events.push_back({MorseKind::Cross, std::abs(g) - 1, g > 0 ? 1 : -1, true, 0});
    for (int j = d.strands - 1; j >= 0; --j) m.events.push_back({MorseKind::Cap, j, 0, true, 0});
    track_width(m);
    return m;
}

// Crossing of two strands at pos, pos+1 whose bottom ends are oriented
// up/down; downward strands are turned with a cup/cap pair so that the
// crossing itself is between upward strands.
void emit_crossing(std::vector<MorseEvent>& ev, int p, bool lu, bool ru, int sign, int cl, int cr) {
    if (lu && ru) {
        ev.push_back({MorseKind::Cross, p, sign, true, 0});
    } else if (!lu && ru) {
        ev.push_back({MorseKind::Cup, p + 2, 0, true, cl});
        ev.push_back({MorseKind::Cross, p + 1, sign, true, 0});
        ev.push_back({MorseKind::Cap, p, 0, true, 0});
    } else if (lu && !ru) {
        ev.push_back({MorseKind::Cup, p, 0, false, cr});
        ev.push_back({MorseKind::Cross, p + 1, sign, true, 0});
        ev.push_back({MorseKind::Cap, p + 2, 0, true, 0});
    } else {
        ev.push_back({MorseKind::Cup, p + 2, 0, true, cl});
        ev.push_back({MorseKind::Cup, p + 3, 0, true, cr});
        ev.push_back({MorseKind::Cross, p + 2, sign, true, 0});
        ev.push_back({MorseKind::Cap, p + 1, 0, true, 0});
        ev.push_back({MorseKind::Cap, p, 0, true, 0});
    }
}

MorseDiagram pd_morse(const TangleDiagram& d, const std::vector<int>& comp_colors) {
    const auto& pd = d.pd;
    PDIndex ix = index_pd(pd);
    struct End {
        int edge;
        bool up;
    };
    std::vector<End> fr;
    std::vector<bool> placed(pd.size(), false);
    MorseDiagram m;
    auto color_of = [&](int e) { return comp_colors[ix.component.at(e)]; };
    auto incoming = [&](int t, int k) { return leg_incoming(pd[t], k); };
    size_t left = pd.size();
    while (true) {
        for (bool again = true; again;) {
            again = false;
            for (size_t p = 0; p + 1 < fr.size(); ++p)
                if (fr[p].edge == fr[p + 1].edge) {
                    m.events.push_back({MorseKind::Cap, static_cast<int>(p), 0, true, 0});
                    fr.erase(fr.begin() + p, fr.begin() + p + 2);
                    again = true;
                    break;
                }
        }
        if (left == 0) break;
        // best attachable crossing
        int best_t = -1, best_j = -1, best_s = 0, best_p = 0;
        for (int t = 0; t < static_cast<int>(pd.size()); ++t) {
            if (placed[t]) continue;
            int pos[4];
            int j = 0;
            for (int k = 0; k < 4; ++k) {
                pos[k] = -1;
                int e = pd[t].legs[k];
                int other = -1;
                for (auto& lg : ix.legs_of_edge[e])
                    if (!(lg.t == t && lg.k == k)) other = lg.t;
                if (other == t) continue; // kink edge
                for (size_t q = 0; q < fr.size(); ++q)
                    if (fr[q].edge == e) pos[k] = static_cast<int>(q);
                if (pos[k] >= 0) ++j;
            }
            if (j == 0) continue;
            for (int s = 0; s < 4; ++s) {
                if (pos[s] < 0) continue;
                bool ok = true;
                for (int r = 0; r < j && ok; ++r) ok = pos[(s + r) % 4] == pos[s] + r;
                if (ok && j > best_j) {
                    best_t = t;
                    best_j = j;
                    best_s = s;
                    best_p = pos[s];
                }
            }
        }
        if (best_t < 0) {
            if (!fr.empty()) throw DomainError("crossing list cannot be swept; is the diagram planar and connected?");
            for (int t = 0; t < static_cast<int>(pd.size()); ++t)
                if (!placed[t]) {
                    best_t = t;
                    break;
                }
            best_j = 0;
            best_p = 0;
            best_s = 0;
            while (pd[best_t].legs[best_s] == pd[best_t].legs[(best_s + 1) % 4]) ++best_s;
        }
        const int t = best_t, j = best_j, s = best_s, p = best_p;
        auto L = [&](int r) { return (s + r) % 4; };
        auto edge = [&](int r) { return pd[t].legs[L(r)]; };
        auto top = [&](int r) { return End{edge(r), !incoming(t, L(r))}; };
        const int sign = pd[t].sign();
        std::vector<End> repl;
        switch (j) {
        case 0: {
            m.events.push_back({MorseKind::Cup, p, 0, !incoming(t, L(0)), color_of(edge(0))});
            m.events.push_back({MorseKind::Cup, p + 2, 0, incoming(t, L(1)), color_of(edge(1))});
            emit_crossing(m.events, p + 1, incoming(t, L(0)), incoming(t, L(1)), sign, color_of(edge(0)), color_of(edge(1)));
            repl = {{edge(0), !incoming(t, L(0))}, top(3), top(2), {edge(1), !incoming(t, L(1))}};
            break;
        }
        case 1: {
            m.events.push_back({MorseKind::Cup, p + 1, 0, incoming(t, L(1)), color_of(edge(1))});
            emit_crossing(m.events, p, incoming(t, L(0)), incoming(t, L(1)), sign, color_of(edge(0)), color_of(edge(1)));
            repl = {top(3), top(2), {edge(1), !incoming(t, L(1))}};
            break;
        }
        case 2:
            emit_crossing(m.events, p, incoming(t, L(0)), incoming(t, L(1)), sign, color_of(edge(0)), color_of(edge(1)));
            repl = {top(3), top(2)};
            break;
        case 3:
            emit_crossing(m.events, p + 1, incoming(t, L(1)), incoming(t, L(2)), sign, color_of(edge(1)), color_of(edge(2)));
            m.events.push_back({MorseKind::Cap, p, 0, true, 0});
            repl = {top(3)};
            break;
        case 4:
            emit_crossing(m.events, p + 1, incoming(t, L(1)), incoming(t, L(2)), sign, color_of(edge(1)), color_of(edge(2)));
            m.events.push_back({MorseKind::Cap, p + 2, 0, true, 0});
            m.events.push_back({MorseKind::Cap, p, 0, true, 0});
            break;
        }
        for (int r = 0; r < j; ++r)
            if (fr[p + r].up != incoming(t, L(r))) throw DomainError("inconsistent orientation while sweeping");
        fr.erase(fr.begin() + p, fr.begin() + p + j);
        fr.insert(fr.begin() + p, repl.begin(), repl.end());
        placed[t] = true;
        --left;
    }
    if (!fr.empty()) throw DomainError("crossing list cannot be swept; open ends remain");
    track_width(m);
    return m;
}

} // namespace

MorseDiagram morse_presentation(const TangleDiagram& d, int n) {
    auto colors = d.resolved_colors(n);
    return d.kind == DiagramKind::Braid ? braid_morse(d, colors) : pd_morse(d, colors);
}

// ---------------------------------------------------------------- cube

CrossingDifferential crossing_differential(const CrossingComplex& c, int s) {
    if (s < 0 || s + 1 >= static_cast<int>(c.terms.size())) throw DomainError("crossing differential out of range");
    const bool pos = c.sign > 0;
    const bool fe = c.lambda() >= 0; // words F^{(λ+s)}E^{(s)}; mirror E^{(-λ+s)}F^{(s)}
    const int outer = fe ? c.lambda() + s : -c.lambda() + s; // thickness of the left letter at term s
    const int inner = s;
    const Orient o = fe ? Orient::FE : Orient::EF;
    CrossingDifferential d;
    d.from = pos ? s : s + 1;
    d.to = pos ? s + 1 : s;
    d.source = c.terms[d.from].rungs;
    if (pos) {
        int at = outer > 0 ? 1 : 0;
        d.slices.push_back(KLRSlice::cup(at, o, c.i, 1));
        if (outer > 0) {
            d.slices.push_back(KLRSlice::merge(0));
            if (inner > 0) d.slices.push_back(KLRSlice::merge(1));
        } else if (inner > 0) {
            d.slices.push_back(KLRSlice::merge(1));
        }
    } else {
        // source letters have thickness outer+1 and inner+1
        if (outer > 0) d.slices.push_back(KLRSlice::split(0, outer));
        int at = outer > 0 ? 1 : 0;
        if (inner > 0) d.slices.push_back(KLRSlice::split(at + 1, 1));
        d.slices.push_back(KLRSlice::cap(at));
    }
    return d;
}

std::vector<std::vector<int>> CubeSkeleton::vertices() const {
    std::vector<std::vector<int>> out{{}};
    for (auto& c : crossings) {
        std::vector<std::vector<int>> nx;
        for (auto& v : out)
            for (int s = 0; s < static_cast<int>(c.terms.size()); ++s) {
                nx.push_back(v);
                nx.back().push_back(s);
            }
        out = std::move(nx);
    }
    return out;
}

int CubeSkeleton::vertex_h(const std::vector<int>& v) const {
    int h = 0;
    for (size_t c = 0; c < crossings.size(); ++c) h += crossings[c].terms[v[c]].h;
    return h;
}

int CubeSkeleton::vertex_q(const std::vector<int>& v) const {
    int q = 0;
    for (size_t c = 0; c < crossings.size(); ++c) q += crossings[c].terms[v[c]].q;
    return q;
}

LadderWeb CubeSkeleton::vertex_web(const std::vector<int>& v) const {
    std::vector<Rung> word;
    for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
        if (it->is_crossing) {
            auto& r = crossings[it->crossing].terms[v[it->crossing]].rungs;
            word.insert(word.end(), r.begin(), r.end());
        } else {
            word.insert(word.end(), it->rungs.rbegin(), it->rungs.rend());
        }
    }
    return LadderWeb(bottom, word);
}

int CubeSkeleton::crossing_offset(const std::vector<int>& v, int c) const {
    int off = 0;
    for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
        if (it->is_crossing && it->crossing == c) return off;
        off += it->is_crossing ? static_cast<int>(crossings[it->crossing].terms[v[it->crossing]].rungs.size())
                               : static_cast<int>(it->rungs.size());
    }
    throw DomainError("no such crossing");
}

std::pair<int, int> CubeSkeleton::framing_correction() const {
    int q = 0, h = 0;
    for (size_t c = 0; c < colors.size(); ++c) {
        auto [fq, fh] = framing_normalization(colors[c], n, writhe[c] - framing[c]);
        q -= fq;
        h -= fh;
    }
    return {q, h};
}

std::pair<int, int> framing_normalization(int a, int n, int writhe) {
    return {-writhe * a * (n - a + 1), -writhe * a};
}

namespace {

CrossingComplex make_crossing(int i, int a, int b, int sign, int n) {
    CrossingComplex c;
    c.i = i;
    c.a = a;
    c.b = b;
    c.sign = sign;
    c.n = n;
    int lam = a - b, mn = std::min(a, b);
    for (int s = 0;; ++s) {
        std::vector<Rung> r;
        if (lam >= 0) {
            if (s > b || a + s > n) break;
            if (lam + s > 0) r.push_back(F(i, lam + s));
            if (s > 0) r.push_back(E(i, s));
        } else {
            if (s > a || b + s > n) break;
            if (-lam + s > 0) r.push_back(E(i, -lam + s));
            if (s > 0) r.push_back(F(i, s));
        }
        int g = sign > 0 ? s - mn : mn - s;
        c.terms.push_back({s, g, g, std::move(r)});
    }
    return c;
}

} // namespace

CubeSkeleton compile_tangle(const TangleDiagram& d, int n) {
    if (n < 2) throw DomainError("n must be at least 2");
    CubeSkeleton cube;
    cube.n = n;
    cube.colors = d.resolved_colors(n);
    cube.writhe = d.self_writhe();
    cube.framing = d.framing;
    if (cube.framing.empty()) cube.framing.assign(cube.colors.size(), 0);
    if (cube.framing.size() != cube.colors.size()) throw DomainError("framing list needs one entry per component");
    MorseDiagram md = morse_presentation(d, n);
    const int P = std::max(1, md.max_width / 2);
    cube.bottom.n = n;
    for (int j = 0; j < P; ++j) {
        cube.bottom.a.push_back(n);
        cube.bottom.a.push_back(0);
    }
    std::vector<int> lab; // strand labels, left to right
    CubeSegment cur;
    auto push = [&](RungKind k, int i, int t) {
        if (t > 0) cur.rungs.push_back(Rung(k, i, t));
    };
    for (auto& e : md.events) {
        int L = static_cast<int>(lab.size());
        switch (e.kind) {
        case MorseKind::Cup: {
            if (e.pos < 0 || e.pos > L) throw DomainError("cup position out of range");
            // bring the first free (n,0) pair from slots L, L+1 to slots pos, pos+1
            for (int j = L - 1; j >= e.pos; --j) {
                int a = lab[j];
                push(RungKind::E, j + 1, n - a);
                push(RungKind::F, j + 2, a);
            }
            int x = e.left_up ? e.color : n - e.color;
            push(RungKind::F, e.pos + 1, n - x);
            lab.insert(lab.begin() + e.pos, {x, n - x});
            break;
        }
        case MorseKind::Cap: {
            if (e.pos < 0 || e.pos + 1 >= L) throw DomainError("cap position out of range");
            int x = lab[e.pos], y = lab[e.pos + 1];
            if (x + y != n) throw DomainError("cap joins strands of different colors");
            push(RungKind::E, e.pos + 1, y);
            for (int j = e.pos; j + 2 < L; ++j) {
                int a = lab[j + 2];
                push(RungKind::E, j + 2, a);
                push(RungKind::F, j + 1, n - a);
            }
            lab.erase(lab.begin() + e.pos, lab.begin() + e.pos + 2);
            break;
        }
        case MorseKind::Cross: {
            if (e.pos < 0 || e.pos + 1 >= L) throw DomainError("crossing position out of range");
            cube.segments.push_back(std::move(cur));
            cur = CubeSegment();
            CubeSegment cs;
            cs.is_crossing = true;
            cs.crossing = static_cast<int>(cube.crossings.size());
            cube.crossings.push_back(make_crossing(e.pos + 1, lab[e.pos], lab[e.pos + 1], e.sign, n));
            cube.segments.push_back(std::move(cs));
            std::swap(lab[e.pos], lab[e.pos + 1]);
            break;
        }
        }
    }
    if (!lab.empty()) throw DomainError("diagram has open ends");
    cube.segments.push_back(std::move(cur));
    std::erase_if(cube.segments, [](const CubeSegment& s) { return !s.is_crossing && s.rungs.empty(); });
    return cube;
}

} // namespace sln
