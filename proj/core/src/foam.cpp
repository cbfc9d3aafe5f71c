#include <algorithm>
#include <sstream>

#include "sln/foam.hpp"

namespace sln {

// ---------------------------------------------------------------- moves

FoamMove FoamMove::zip(int pos) {
    FoamMove m;
    m.kind = FoamMoveKind::Zip;
    m.pos = pos;
    return m;
}

FoamMove FoamMove::unzip(int pos, int left) {
    FoamMove m;
    m.kind = FoamMoveKind::Unzip;
    m.pos = pos;
    m.a = left;
    return m;
}

FoamMove FoamMove::cup(int pos, Orient o, int i, int k) {
    FoamMove m;
    m.kind = o == Orient::FE ? FoamMoveKind::CupFE : FoamMoveKind::CupEF;
    m.pos = pos;
    m.i = i;
    m.k = k;
    return m;
}

FoamMove FoamMove::cap(int pos, Orient o) {
    FoamMove m;
    m.kind = o == Orient::FE ? FoamMoveKind::CapFE : FoamMoveKind::CapEF;
    m.pos = pos;
    return m;
}

FoamMove FoamMove::seam(int pos, bool split) {
    FoamMove m;
    m.kind = split ? FoamMoveKind::SeamSplit : FoamMoveKind::SeamMerge;
    m.pos = pos;
    return m;
}

FoamMove FoamMove::digon_cup(int pos, Orient o, int i, int a, int b) {
    FoamMove m;
    m.kind = FoamMoveKind::DigonCup;
    m.pos = pos;
    m.i = i;
    m.a = a;
    m.b = b;
    m.fe = o == Orient::FE;
    return m;
}

FoamMove FoamMove::digon_cap(int pos, Orient o) {
    FoamMove m;
    m.kind = FoamMoveKind::DigonCap;
    m.pos = pos;
    m.fe = o == Orient::FE;
    return m;
}

FoamMove FoamMove::decorate(int pos, Partition p) {
    FoamMove m;
    m.kind = FoamMoveKind::Decorate;
    m.pos = pos;
    m.decoration = std::move(p);
    return m;
}

FoamMove FoamMove::isotopy(int pos) {
    FoamMove m;
    m.kind = FoamMoveKind::Isotopy;
    m.pos = pos;
    return m;
}

namespace {

std::string join_parts(const Partition& p) {
    std::string s;
    for (int x : p.parts()) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s.empty() ? "0" : s;
}

} // namespace

std::string FoamMove::str() const {
    auto P = [](int x) { return " " + std::to_string(x); };
    switch (kind) {
    case FoamMoveKind::Zip: return "zip" + P(pos);
    case FoamMoveKind::Unzip: return "unzip" + P(pos) + P(a);
    case FoamMoveKind::CupFE: return "cup_fe" + P(pos) + P(i) + P(k);
    case FoamMoveKind::CupEF: return "cup_ef" + P(pos) + P(i) + P(k);
    case FoamMoveKind::CapFE: return "cap_fe" + P(pos);
    case FoamMoveKind::CapEF: return "cap_ef" + P(pos);
    case FoamMoveKind::SeamSplit: return "seam_split" + P(pos);
    case FoamMoveKind::SeamMerge: return "seam_merge" + P(pos);
    case FoamMoveKind::DigonCup: return std::string(fe ? "digon_cup_fe" : "digon_cup_ef") + P(pos) + P(i) + P(a) + P(b);
    case FoamMoveKind::DigonCap: return std::string(fe ? "digon_cap_fe" : "digon_cap_ef") + P(pos);
    case FoamMoveKind::Decorate: return "decorate" + P(pos) + " " + join_parts(decoration);
    case FoamMoveKind::Isotopy: return "isotopy" + P(pos);
    }
    return "";
}

// ---------------------------------------------------------------- replay

namespace {

// digon moves are composites; everything below works on primitive moves
std::vector<FoamMove> expand(const std::vector<FoamMove>& moves) {
    std::vector<FoamMove> out;
    for (auto& m : moves) {
        Orient o = m.fe ? Orient::FE : Orient::EF;
        if (m.kind == FoamMoveKind::DigonCup) {
            out.push_back(FoamMove::cup(m.pos, o, m.i, m.a + m.b));
            out.push_back(FoamMove::unzip(m.pos, m.a));
        } else if (m.kind == FoamMoveKind::DigonCap) {
            out.push_back(FoamMove::zip(m.pos));
            out.push_back(FoamMove::cap(m.pos, o));
        } else {
            out.push_back(m);
        }
    }
    return out;
}

// reg[p] = weight left of rung p; reg[size] = domain
std::vector<GlWeight> regions_of(const GlWeight& dom, const std::vector<Rung>& word) {
    std::vector<GlWeight> reg(word.size() + 1);
    reg[word.size()] = dom;
    for (size_t p = word.size(); p-- > 0;) {
        auto nx = apply_rung(reg[p + 1], word[p]);
        if (!nx) throw DomainError("foam passes through a zero web");
        reg[p] = *nx;
    }
    return reg;
}

void need(bool ok, const FoamMove& m, const char* what) {
    if (!ok) throw DomainError("foam move '" + m.str() + "': " + what);
}

std::vector<Rung> step(const GlWeight& dom, std::vector<Rung> w, const FoamMove& m) {
    int sz = static_cast<int>(w.size());
    auto pair_ok = [&] { return m.pos >= 0 && m.pos + 1 < sz; };
    switch (m.kind) {
    case FoamMoveKind::Zip: {
        need(pair_ok(), m, "position out of range");
        Rung x = w[m.pos], y = w[m.pos + 1];
        need(x.kind == y.kind && x.i == y.i, m, "rungs differ");
        w.erase(w.begin() + m.pos + 1);
        w[m.pos] = Rung(x.kind, x.i, x.k + y.k);
        break;
    }
    case FoamMoveKind::Unzip: {
        need(m.pos >= 0 && m.pos < sz, m, "position out of range");
        Rung x = w[m.pos];
        need(m.a > 0 && m.a < x.k, m, "split thickness out of range");
        w[m.pos] = Rung(x.kind, x.i, m.a);
        w.insert(w.begin() + m.pos + 1, Rung(x.kind, x.i, x.k - m.a));
        break;
    }
    case FoamMoveKind::CupFE:
    case FoamMoveKind::CupEF: {
        need(m.pos >= 0 && m.pos <= sz, m, "position out of range");
        need(m.i >= 1 && m.i < dom.m() && m.k >= 1, m, "bad index or thickness");
        bool fe = m.kind == FoamMoveKind::CupFE;
        Rung l(fe ? RungKind::F : RungKind::E, m.i, m.k), r(fe ? RungKind::E : RungKind::F, m.i, m.k);
        w.insert(w.begin() + m.pos, {l, r});
        break;
    }
    case FoamMoveKind::CapFE:
    case FoamMoveKind::CapEF: {
        need(pair_ok(), m, "position out of range");
        bool fe = m.kind == FoamMoveKind::CapFE;
        Rung x = w[m.pos], y = w[m.pos + 1];
        need(x.i == y.i && x.k == y.k && x.kind == (fe ? RungKind::F : RungKind::E) && y.kind != x.kind, m,
             "rungs do not form a cap");
        w.erase(w.begin() + m.pos, w.begin() + m.pos + 2);
        break;
    }
    case FoamMoveKind::SeamSplit:
    case FoamMoveKind::SeamMerge: {
        need(pair_ok(), m, "position out of range");
        int d = w[m.pos + 1].i - w[m.pos].i;
        need(d == (m.kind == FoamMoveKind::SeamSplit ? 1 : -1), m, "indices are not neighbours in the required order");
        std::swap(w[m.pos], w[m.pos + 1]);
        break;
    }
    case FoamMoveKind::Isotopy: {
        need(pair_ok(), m, "position out of range");
        int d = w[m.pos + 1].i - w[m.pos].i;
        need(d >= 2 || d <= -2, m, "rungs share an upright");
        std::swap(w[m.pos], w[m.pos + 1]);
        break;
    }
    case FoamMoveKind::Decorate:
        need(m.pos >= 0 && m.pos < sz, m, "position out of range");
        need(m.decoration.length() <= w[m.pos].k, m, "decoration has more rows than the facet thickness");
        break;
    case FoamMoveKind::DigonCup:
    case FoamMoveKind::DigonCap: throw std::logic_error("digon moves must be expanded");
    }
    regions_of(dom, w);
    return w;
}

} // namespace

std::vector<std::vector<Rung>> FoamWord::replay() const {
    if (source.zero()) throw DomainError("foam source is the zero web");
    std::vector<std::vector<Rung>> out{source.rungs()};
    for (auto& m : expand(moves)) out.push_back(step(source.domain(), out.back(), m));
    return out;
}

LadderWeb FoamWord::target() const { return LadderWeb(source.domain(), replay().back()); }

FoamWord FoamWord::then(const FoamWord& above) const {
    if (!(above.source == target())) throw DomainError("foam composition mismatch");
    FoamWord r = *this;
    r.moves.insert(r.moves.end(), above.moves.begin(), above.moves.end());
    r.coeff *= above.coeff;
    return r;
}

// ---------------------------------------------------------------- degree

int foam_degree(const FoamWord& f) {
    auto words = f.replay();
    auto moves = expand(f.moves);
    const GlWeight& dom = f.source.domain();
    int deg = 0;
    for (size_t t = 0; t < moves.size(); ++t) {
        const FoamMove& m = moves[t];
        const auto& w = words[t];
        auto reg = regions_of(dom, w);
        switch (m.kind) {
        case FoamMoveKind::Zip: deg -= w[m.pos].k * w[m.pos + 1].k; break;
        case FoamMoveKind::Unzip: deg -= m.a * (w[m.pos].k - m.a); break;
        case FoamMoveKind::CupFE:
        case FoamMoveKind::CupEF: {
            int lam = reg[m.pos].lambda(m.i);
            deg += m.kind == FoamMoveKind::CupFE ? m.k * (m.k + lam) : m.k * (m.k - lam);
            break;
        }
        case FoamMoveKind::CapFE:
        case FoamMoveKind::CapEF: {
            int k = w[m.pos].k, lam = reg[m.pos + 2].lambda(w[m.pos].i);
            deg += m.kind == FoamMoveKind::CapFE ? k * (k + lam) : k * (k - lam);
            break;
        }
        case FoamMoveKind::SeamSplit:
        case FoamMoveKind::SeamMerge:
            // neighbouring indices pair to -1 in the Cartan matrix
            if (w[m.pos].kind == w[m.pos + 1].kind) deg += w[m.pos].k * w[m.pos + 1].k;
            break;
        case FoamMoveKind::Decorate: deg += 2 * m.decoration.size(); break;
        default: break;
        }
    }
    return deg;
}

// ---------------------------------------------------------------- Euler

namespace {

// cell weights: facet label k, seam (k,l,k+l), singular vertex (k,l,m)
struct Gamma {
    int n;
    long f(long k) const { return k * (n - k); }
    long seam(long k, long l) const { return f(k + l) + k * l; }
    long sing(long k, long l, long m) const { return f(k + l + m) + k * l + k * m + l * m; }
};

// a vertical segment of one upright: labels bottom to top and the seams
// (rung attachments) between consecutive labels
struct Profile {
    std::vector<int> labels;
    std::vector<long> att; // γ of each attachment point
    std::vector<int> thick;
};

bool touches(const Rung& r, int j) { return r.i == j || r.i + 1 == j; }

Profile profile(const Gamma& g, const std::vector<Rung>& w, const std::vector<GlWeight>& reg, int pos, int count, int j) {
    Profile p;
    p.labels.push_back(reg[pos + count].a[j - 1]);
    for (int s = pos + count - 1; s >= pos; --s) {
        if (!touches(w[s], j)) continue;
        int lo = reg[s + 1].a[j - 1], hi = reg[s].a[j - 1];
        p.att.push_back(g.seam(std::min(lo, hi), w[s].k));
        p.thick.push_back(w[s].k);
        p.labels.push_back(hi);
    }
    return p;
}

long chi_segment(const Gamma& g, const Profile& p) {
    long c = g.f(p.labels.front()) + g.f(p.labels.back());
    for (long a : p.att) c += a;
    for (int x : p.labels) c -= g.f(x);
    return c;
}

// The sheet swept by one upright: a rectangle whose bottom and top are the
// profiles, sides are the labels below and above the band, and whose interior
// holds seams, singular vertices and regions.
struct Sheet {
    Profile bottom, top;
    std::vector<long> verts, seams;
    std::vector<int> faces;
};

long chi_sheet(const Gamma& g, const Sheet& s) {
    if (s.bottom.labels.front() != s.top.labels.front() || s.bottom.labels.back() != s.top.labels.back())
        throw std::logic_error("sheet sides do not match");
    long v = g.f(s.bottom.labels.front()) + g.f(s.bottom.labels.back()) + g.f(s.top.labels.front()) +
             g.f(s.top.labels.back());
    for (long a : s.bottom.att) v += a;
    for (long a : s.top.att) v += a;
    for (long a : s.verts) v += a;
    long e = g.f(s.bottom.labels.front()) + g.f(s.bottom.labels.back());
    for (int x : s.bottom.labels) e += g.f(x);
    for (int x : s.top.labels) e += g.f(x);
    for (long a : s.seams) e += a;
    long f = 0;
    for (int x : s.faces) f += g.f(x);
    return v - e + f;
}

// degree of one slab: -χ(local foam) + (χ(bottom piece) + χ(top piece)) / 2
int slab_degree(const Gamma& g, const std::vector<Rung>& w0, const std::vector<Rung>& w1, const GlWeight& dom,
                const FoamMove& m) {
    auto r0 = regions_of(dom, w0), r1 = regions_of(dom, w1);
    int c0 = 0, c1 = 0;
    switch (m.kind) {
    case FoamMoveKind::Zip: c0 = 2, c1 = 1; break;
    case FoamMoveKind::Unzip: c0 = 1, c1 = 2; break;
    case FoamMoveKind::CupFE:
    case FoamMoveKind::CupEF: c0 = 0, c1 = 2; break;
    case FoamMoveKind::CapFE:
    case FoamMoveKind::CapEF: c0 = 2, c1 = 0; break;
    case FoamMoveKind::Decorate: c0 = c1 = 1; break;
    default: c0 = c1 = 2; break;
    }
    std::vector<int> sheets;
    auto add_sheets = [&](const std::vector<Rung>& w, int c) {
        for (int s = m.pos; s < m.pos + c; ++s)
            for (int j : {w[s].i, w[s].i + 1})
                if (std::find(sheets.begin(), sheets.end(), j) == sheets.end()) sheets.push_back(j);
    };
    add_sheets(w0, c0);
    add_sheets(w1, c1);

    long chi_b0 = 0, chi_b1 = 0, chi_l = 0;
    for (int s = m.pos; s < m.pos + c0; ++s) chi_b0 -= g.f(w0[s].k);
    for (int s = m.pos; s < m.pos + c1; ++s) chi_b1 -= g.f(w1[s].k);

    for (int j : sheets) {
        Sheet sh;
        sh.bottom = profile(g, w0, r0, m.pos, c0, j);
        sh.top = profile(g, w1, r1, m.pos, c1, j);
        chi_b0 += chi_segment(g, sh.bottom);
        chi_b1 += chi_segment(g, sh.top);
        const auto &B = sh.bottom, &T = sh.top;
        size_t nb = B.att.size(), nt = T.att.size();
        if (nb == nt && (nb <= 1 || (m.kind != FoamMoveKind::SeamSplit && m.kind != FoamMoveKind::SeamMerge))) {
            // seams run straight through
            sh.seams = B.att;
            sh.faces = B.labels;
        } else if (nb == 0 || nt == 0) {
            // a cup or cap: one seam arc bounding a half-disc
            const Profile& P = nb ? B : T;
            sh.seams = {P.att[0]};
            sh.faces = {P.labels[0], P.labels[1]};
        } else if (nb == 2 && nt == 1) {
            // two seams meet in a singular vertex and leave as one
            int base = std::min(B.labels.front(), B.labels.back());
            sh.verts = {g.sing(base, B.thick[0], B.thick[1])};
            sh.seams = {B.att[0], B.att[1], T.att[0]};
            sh.faces = B.labels;
        } else if (nb == 1 && nt == 2) {
            int base = std::min(T.labels.front(), T.labels.back());
            sh.verts = {g.sing(base, T.thick[0], T.thick[1])};
            sh.seams = {T.att[0], T.att[1], B.att[0]};
            sh.faces = T.labels;
        } else if (nb == 2 && nt == 2) {
            // two seams from opposite sides cross in a singular vertex
            int base = std::min({B.labels[0], B.labels[1], B.labels[2], T.labels[1]});
            sh.verts = {g.sing(base, B.thick[0], B.thick[1])};
            sh.seams = {B.att[0], B.att[1], T.att[0], T.att[1]};
            sh.faces = {B.labels[0], B.labels[1], B.labels[2], T.labels[1]};
        } else {
            throw std::logic_error("unexpected sheet configuration");
        }
        chi_l += chi_sheet(g, sh);
    }

    // rung facets with their boundary rung edges and interior seams
    for (int s = m.pos; s < m.pos + c0; ++s) chi_l -= g.f(w0[s].k);
    for (int s = m.pos; s < m.pos + c1; ++s) chi_l -= g.f(w1[s].k);
    switch (m.kind) {
    case FoamMoveKind::Zip:
        chi_l -= g.seam(w0[m.pos].k, w0[m.pos + 1].k);
        chi_l += g.f(w0[m.pos].k) + g.f(w0[m.pos + 1].k) + g.f(w1[m.pos].k);
        break;
    case FoamMoveKind::Unzip:
        chi_l -= g.seam(w1[m.pos].k, w1[m.pos + 1].k);
        chi_l += g.f(w1[m.pos].k) + g.f(w1[m.pos + 1].k) + g.f(w0[m.pos].k);
        break;
    case FoamMoveKind::CupFE:
    case FoamMoveKind::CupEF: chi_l += g.f(w1[m.pos].k); break;
    case FoamMoveKind::CapFE:
    case FoamMoveKind::CapEF: chi_l += g.f(w0[m.pos].k); break;
    case FoamMoveKind::Decorate: chi_l += g.f(w0[m.pos].k); break;
    default: chi_l += g.f(w0[m.pos].k) + g.f(w0[m.pos + 1].k); break;
    }
    long twice = -2 * chi_l + chi_b0 + chi_b1;
    if (twice % 2) throw std::logic_error("odd weighted Euler characteristic");
    return static_cast<int>(twice / 2);
}

} // namespace

long web_euler(const LadderWeb& w) {
    if (w.zero()) throw DomainError("zero web");
    Gamma g{w.n()};
    auto reg = regions_of(w.domain(), w.rungs());
    int sz = static_cast<int>(w.rungs().size());
    long c = 0;
    for (int j = 1; j <= w.domain().m(); ++j) c += chi_segment(g, profile(g, w.rungs(), reg, 0, sz, j));
    for (auto& r : w.rungs()) c -= g.f(r.k);
    return c;
}

int weighted_euler_validate(const FoamWord& f, int max_moves) {
    auto moves = expand(f.moves);
    if (static_cast<int>(moves.size()) > max_moves)
        throw DomainError("foam has " + std::to_string(moves.size()) + " moves; the cell decomposition is capped at " +
                          std::to_string(max_moves));
    auto words = f.replay();
    Gamma g{f.source.n()};
    int deg = 0;
    for (size_t t = 0; t < moves.size(); ++t) {
        deg += slab_degree(g, words[t], words[t + 1], f.source.domain(), moves[t]);
        if (moves[t].kind == FoamMoveKind::Decorate) deg += 2 * moves[t].decoration.size();
    }
    return deg;
}

// ---------------------------------------------------------------- KLR

KLRWord foam_to_klr(const FoamWord& f) {
    auto words = f.replay();
    auto moves = expand(f.moves);
    KLRWord k;
    k.weight = f.source.domain();
    k.domain = f.source.rungs();
    k.coeff = f.coeff;
    auto sign = [](long e) { return e % 2 ? Scalar(-1) : Scalar(1); };
    for (size_t t = 0; t < moves.size(); ++t) {
        const FoamMove& m = moves[t];
        const auto& w = words[t];
        auto reg = regions_of(f.source.domain(), w);
        switch (m.kind) {
        case FoamMoveKind::Zip: k.slices.push_back(KLRSlice::merge(m.pos)); break;
        case FoamMoveKind::Unzip: k.slices.push_back(KLRSlice::split(m.pos, m.a)); break;
        case FoamMoveKind::CupFE: {
            long next = reg[m.pos].a[m.i];
            k.coeff *= sign(m.k * (m.k - 1) / 2 + m.k * (next + 1));
            k.slices.push_back(KLRSlice::cup(m.pos, Orient::FE, m.i, m.k));
            break;
        }
        case FoamMoveKind::CupEF: k.slices.push_back(KLRSlice::cup(m.pos, Orient::EF, m.i, m.k)); break;
        case FoamMoveKind::CapEF: {
            int kk = w[m.pos].k;
            long next = reg[m.pos + 2].a[w[m.pos].i];
            k.coeff *= sign(kk * (kk - 1) / 2 + kk * next);
            k.slices.push_back(KLRSlice::cap(m.pos));
            break;
        }
        case FoamMoveKind::CapFE: k.slices.push_back(KLRSlice::cap(m.pos)); break;
        case FoamMoveKind::SeamSplit:
        case FoamMoveKind::SeamMerge:
        case FoamMoveKind::Isotopy: k.slices.push_back(KLRSlice::crossing(m.pos)); break;
        case FoamMoveKind::Decorate: k.slices.push_back(KLRSlice::decorate(m.pos, m.decoration)); break;
        default: throw std::logic_error("unexpanded foam move");
        }
    }
    return k;
}

// ---------------------------------------------------------------- text

// web <n> <a_1,...,a_m> [rungs...]
// coeff <scalar>
// <move> <args...>        (one per line, '#' starts a comment)
std::string FoamWord::to_text() const {
    std::ostringstream o;
    o << "web " << source.n() << " ";
    const auto& a = source.domain().a;
    for (size_t i = 0; i < a.size(); ++i) o << (i ? "," : "") << a[i];
    for (auto& r : source.rungs()) o << " " << r.str();
    o << "\ncoeff " << coeff.str() << "\n";
    for (auto& m : moves) o << m.str() << "\n";
    return o.str();
}

namespace {

std::vector<int> parse_ints(const std::string& s, char sep) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(std::stoi(tok));
    return out;
}

Rung parse_rung(const std::string& t) {
    auto caret = t.find('^');
    if (t.size() < 2 || (t[0] != 'E' && t[0] != 'F')) throw DomainError("bad rung '" + t + "'");
    int i = std::stoi(t.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
    int k = caret == std::string::npos ? 1 : std::stoi(t.substr(caret + 1));
    return Rung(t[0] == 'E' ? RungKind::E : RungKind::F, i, k);
}

} // namespace

FoamWord FoamWord::from_text(const std::string& text) {
    FoamWord f;
    bool have_web = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op)) continue;
        try {
            std::vector<std::string> args;
            for (std::string a; ls >> a;) args.push_back(a);
            auto arg = [&](size_t i) {
                if (i >= args.size()) throw DomainError("missing argument");
                return std::stoi(args[i]);
            };
            if (op == "web") {
                if (args.size() < 2) throw DomainError("web needs n and a weight");
                GlWeight w{std::stoi(args[0]), parse_ints(args[1], ',')};
                std::vector<Rung> rungs;
                for (size_t i = 2; i < args.size(); ++i) rungs.push_back(parse_rung(args[i]));
                f.source = LadderWeb(w, rungs);
                have_web = true;
            } else if (op == "coeff") {
                if (args.size() != 1) throw DomainError("coeff takes one scalar");
                f.coeff = Scalar::parse(args[0]);
            } else if (op == "zip") {
                f.moves.push_back(FoamMove::zip(arg(0)));
            } else if (op == "unzip") {
                f.moves.push_back(FoamMove::unzip(arg(0), arg(1)));
            } else if (op == "cup_fe" || op == "cup_ef") {
                f.moves.push_back(FoamMove::cup(arg(0), op == "cup_fe" ? Orient::FE : Orient::EF, arg(1), arg(2)));
            } else if (op == "cap_fe" || op == "cap_ef") {
                f.moves.push_back(FoamMove::cap(arg(0), op == "cap_fe" ? Orient::FE : Orient::EF));
            } else if (op == "seam_split" || op == "seam_merge") {
                f.moves.push_back(FoamMove::seam(arg(0), op == "seam_split"));
            } else if (op == "digon_cup_fe" || op == "digon_cup_ef") {
                f.moves.push_back(
                    FoamMove::digon_cup(arg(0), op == "digon_cup_fe" ? Orient::FE : Orient::EF, arg(1), arg(2), arg(3)));
            } else if (op == "digon_cap_fe" || op == "digon_cap_ef") {
                f.moves.push_back(FoamMove::digon_cap(arg(0), op == "digon_cap_fe" ? Orient::FE : Orient::EF));
            } else if (op == "decorate") {
                if (args.size() != 2) throw DomainError("decorate takes a position and a partition");
                std::vector<int> parts = args[1] == "0" ? std::vector<int>{} : parse_ints(args[1], ',');
                f.moves.push_back(FoamMove::decorate(arg(0), Partition(parts)));
            } else if (op == "isotopy") {
                f.moves.push_back(FoamMove::isotopy(arg(0)));
            } else {
                throw DomainError("unknown foam move '" + op + "'");
            }
        } catch (const std::invalid_argument&) {
            throw DomainError("foam text line " + std::to_string(lineno) + ": malformed number");
        } catch (const DomainError& e) {
            throw DomainError("foam text line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!have_web) throw DomainError("foam text has no web line");
    f.replay();
    return f;
}

} // namespace sln
