#include "hbo/lax.hpp"

#include <algorithm>
#include <random>

#include "hbo/coloring.hpp"

namespace hbo {

namespace {

std::vector<Label> reversed(std::vector<Label> v)
{
    std::reverse(v.begin(), v.end());
    return v;
}

// Multi-indices of the hatted localized maps, the first state entry acting first.
std::vector<LaxToken> attach(const std::vector<Label>& state, const std::vector<Label>& ambient, char kind)
{
    std::vector<Label> s = ambient;
    std::vector<LaxToken> out;
    for (Label J : state) {
        OpToken h = OpToken::hat(kind, J, {});
        for (Label x : map_inputs(h)) {
            auto it = std::find(s.begin(), s.end(), x);
            if (it == s.end())
                throw SimulationError("localized map " + to_string(J) + " misses " + to_string(x));
            h.pos.push_back(int(it - s.begin()) + 1);
        }
        apply_token(s, h);
        out.push_back({J, h.pos});
    }
    return out;
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b)
{
    for (int x : a)
        if (std::find(b.begin(), b.end(), x) != b.end())
            return false;
    return true;
}

std::string transposition_tag(const std::vector<OpToken>& ps)
{
    std::string s;
    for (size_t i = ps.size(); i-- > 0;)
        s += (s.empty() ? "" : " ") + render_token(ps[i], 0);
    return s;
}

struct LaxSetup {
    int ground;
    char kind;
    std::vector<Label> ambient, alpha, omega;
    std::vector<Step> lex, rev;
};

LaxSide run_side(const LaxSetup& st, const std::vector<Step>& steps)
{
    LaxSide side;
    std::vector<Label> s = st.alpha;
    std::vector<OpToken> executed;
    auto cur = attach(s, st.ambient, st.kind);
    side.lines.push_back({"", cur});

    auto commutes = [&](const std::vector<OpToken>& ps, RewriteStep::Kind kind) {
        if (ps.empty())
            return;
        for (const OpToken& p : ps) {
            LaxToken& x = cur[p.a - 1];
            LaxToken& y = cur[p.a];
            if (dependent(x.J, y.J) || !disjoint(x.pos, y.pos))
                throw SimulationError("commute of " + to_string(x.J) + " and " + to_string(y.J) +
                                      " violates the exchange lemma");
            std::swap(x, y);
            side.steps.push_back({kind, size_t(p.a), p});
            executed.push_back(p);
        }
        if (attach(s, st.ambient, st.kind) != cur)
            throw SimulationError("multi-indices changed under commutation");
        side.lines.push_back({transposition_tag(ps), cur});
    };

    for (const Step& step : steps) {
        OpToken t = OpToken::map(step.kind, step.K, 0);
        auto in = map_inputs(t);
        std::vector<OpToken> ps;
        size_t start = gather_block(s, in, ps);
        commutes(ps, RewriteStep::Kind::commute);
        t.a = int(start) + 1;
        t.whole = in.size() == s.size();
        apply_token(s, t);
        executed.push_back(t);
        side.steps.push_back({RewriteStep::Kind::lax_substitute, start + 1, t});
        cur = attach(s, st.ambient, st.kind);
        side.lines.push_back({render_token(t, st.ground), cur});
    }
    std::vector<OpToken> ps;
    for (size_t i = 0; i < st.omega.size(); ++i) {
        auto it = std::find(s.begin() + i, s.end(), st.omega[i]);
        if (it == s.end())
            throw SimulationError("final word does not reach omega");
        for (size_t j = size_t(it - s.begin()); j > i; --j) {
            if (dependent(s[j - 1], s[j]))
                throw SimulationError("final normalization exchanges dependent labels");
            std::swap(s[j - 1], s[j]);
            ps.push_back(OpToken::transpose(int(j)));
        }
    }
    commutes(ps, RewriteStep::Kind::normalize);
    side.word = to_word(executed, st.alpha, st.omega);
    return side;
}

}  // namespace

LaxDerivation derive_consistency(int N, Family family)
{
    LaxSetup st;
    LaxDerivation d;
    d.family = family;
    d.N = N;
    if (family == Family::simplex) {
        if (N < 2 || N + 2 > max_ground)
            throw DomainError("simplex Lax derivation needs N >= 2");
        const int M = N + 2;
        st.ground = M;
        st.kind = 'R';
        st.ambient = reversed(enumerate_subsets(M, N - 1));
        st.alpha = enumerate_subsets(M, N);
        st.omega = reversed(st.alpha);
        for (Label K : enumerate_subsets(M, N + 1))
            st.lex.push_back({K, 'R'});
        st.rev.assign(st.lex.rbegin(), st.lex.rend());
    } else if (family == Family::polygon) {
        if (N < 3 || N + 1 > max_ground)
            throw DomainError("polygon Lax derivation needs N >= 3");
        const int M = N + 1;
        st.ground = M;
        st.kind = 'T';
        st.ambient = reversed(colored_subsequence(enumerate_subsets(M, N - 2), InvSet(M, N - 2), Color::Blue));
        st.alpha = polygon_source(M);
        st.omega = polygon_target(M);
        auto hp = half_packets(Label::range(M));
        for (Label K : hp.odd)
            st.lex.push_back({K, 'T'});
        for (auto it = hp.even.rbegin(); it != hp.even.rend(); ++it)
            st.rev.push_back({*it, 'T'});
    } else {
        throw DomainError("Lax derivations exist for the simplex and polygon families");
    }
    d.ground = st.ground;
    d.ambient = st.ambient;
    d.lex = run_side(st, st.lex);
    d.rev = run_side(st, st.rev);
    if (d.lex.lines.back().word != d.rev.lines.back().word)
        throw SimulationError("the two resolutions end in different localized words");
    d.equation.family = family;
    d.equation.N = N + 1;
    d.equation.lhs = d.lex.word;
    d.equation.rhs = d.rev.word;
    return d;
}

std::string render_lax_word(const std::vector<LaxToken>& w, int ground)
{
    bool compact = true;
    for (const auto& t : w)
        for (int p : t.pos)
            compact = compact && p < 10;
    std::string s;
    for (size_t i = w.size(); i-- > 0;) {
        s += (s.empty() ? "" : " ") + std::string("L̂_{") + hat_name(w[i].J, ground) + ",";
        for (size_t k = 0; k < w[i].pos.size(); ++k)
            s += (k && !compact ? "," : "") + std::to_string(w[i].pos[k]);
        s += "}";
    }
    return s;
}

std::string variant_name(MonoidVariant v)
{
    switch (v) {
    case MonoidVariant::full:
        return "full";
    case MonoidVariant::blue:
        return "blue";
    case MonoidVariant::red:
        return "red";
    case MonoidVariant::mixed:
        return "mixed";
    }
    return "?";
}

MonoidVariant parse_variant(const std::string& s)
{
    for (auto v : {MonoidVariant::full, MonoidVariant::blue, MonoidVariant::red, MonoidVariant::mixed})
        if (variant_name(v) == s)
            return v;
    throw DomainError("unknown variant: " + s);
}

namespace {

struct Halves {
    std::vector<Label> in;   // consumed, -> order
    std::vector<Label> out;  // produced, <- order
};

bool kind_allowed(MonoidVariant v, char kind)
{
    switch (v) {
    case MonoidVariant::full:
        return kind == 'R';
    case MonoidVariant::blue:
        return kind == 'T';
    case MonoidVariant::red:
        return kind == 'S';
    case MonoidVariant::mixed:
        return kind == 'T' || kind == 'S';
    }
    return false;
}

Halves halves(Label K, MonoidVariant v, char kind)
{
    auto h = half_packets(K);
    if (!kind_allowed(v, kind))
        throw DomainError(std::string("generator kind ") + kind + " does not belong to the " + variant_name(v) +
                          " variant");
    if (v == MonoidVariant::full)
        return {packet_vec(K), reversed(packet_vec(K))};
    // The mixed variant uses the same halves as blue T and red S; with the halves exchanged the
    // green word lacks the inputs of the first map.
    if (kind == 'T')
        return {h.odd, reversed(h.even)};
    return {h.even, reversed(h.odd)};
}

bool in_packet(Label J, Label K)
{
    return J.subset_of(K) && J.size() + 1 == K.size();
}

std::vector<Gen> chain(int N, MonoidVariant v, bool forward)
{
    Label all = Label::range(N);
    auto h = half_packets(all);
    std::vector<Gen> out;
    auto push = [&](const std::vector<Label>& ks, char kind) {
        for (Label K : ks)
            out.push_back({kind, true, K});
    };
    switch (v) {
    case MonoidVariant::full:
        push(forward ? packet_vec(all) : reversed(packet_vec(all)), 'R');
        break;
    case MonoidVariant::blue:
        push(forward ? h.odd : reversed(h.even), 'T');
        break;
    case MonoidVariant::red:
        push(forward ? h.even : reversed(h.odd), 'S');
        break;
    case MonoidVariant::mixed: {
        auto ks = forward ? packet_vec(all) : reversed(packet_vec(all));
        char first = (forward || N % 2 == 0) ? 'S' : 'T';
        for (size_t i = 0; i < ks.size(); ++i) {
            char other = first == 'S' ? 'T' : 'S';
            out.push_back({i % 2 == 0 ? first : other, true, ks[i]});
        }
        break;
    }
    }
    return out;
}

Color variant_color(MonoidVariant v)
{
    return v == MonoidVariant::blue ? Color::Blue : v == MonoidVariant::red ? Color::Red : Color::Green;
}

std::vector<Gen> l_word(const std::vector<Label>& labels)
{
    std::vector<Gen> w;
    for (Label J : labels)
        w.push_back({'L', false, J});
    return w;
}

void apply_step(std::vector<Gen>& w, const MonoidStep& s)
{
    size_t p = s.position - 1;
    if (s.position < 1 || p + s.before.size() > w.size() ||
        !std::equal(s.before.begin(), s.before.end(), w.begin() + p))
        throw DomainError("monoid step window does not match at position " + std::to_string(s.position));
    w.erase(w.begin() + p, w.begin() + p + s.before.size());
    w.insert(w.begin() + p, s.after.begin(), s.after.end());
}

MonoidTrace run_trace(int N, MonoidVariant v, bool forward)
{
    auto alpha = enumerate_subsets(N, N - 2);
    auto omega = reversed(alpha);
    if (v != MonoidVariant::full) {
        Color c = variant_color(v);
        alpha = colored_subsequence(alpha, InvSet(N, N - 2), c);
        omega = colored_subsequence(omega, full_inv_set(N, N - 2), c);
    }
    MonoidTrace tr;
    tr.N = N;
    tr.variant = v;
    tr.forward = forward;
    auto primed = chain(N, v, forward);
    tr.start = l_word(alpha);
    tr.start.insert(tr.start.end(), primed.begin(), primed.end());

    std::vector<Gen> w = tr.start;
    size_t nx = 0, nl = alpha.size();
    auto emit = [&](MonoidStep s) {
        apply_step(w, s);
        tr.steps.push_back(std::move(s));
    };
    auto commute_l = [&](const std::vector<OpToken>& ps) {
        for (const OpToken& p : ps) {
            size_t i = nx + size_t(p.a) - 1;
            emit({"A1", i + 1, {w[i], w[i + 1]}, {w[i + 1], w[i]}});
        }
    };
    // The green projection hides labels that constrain the gathering, so the mixed variant
    // follows the transpositions of the projected equation instead.
    std::vector<OpToken> guide;
    size_t gi = 0;
    if (v == MonoidVariant::mixed) {
        auto g = decompose_simplex(N).green;
        const OpWord& side = forward ? g.lhs : g.rhs;
        guide.assign(side.tokens.rbegin(), side.tokens.rend());
    }
    for (const Gen& g : primed) {
        Halves hv = halves(g.K, v, g.kind);
        std::vector<Label> labels;
        for (size_t i = nx; i < nx + nl; ++i)
            labels.push_back(w[i].K);
        std::vector<OpToken> ps;
        size_t start;
        if (v == MonoidVariant::mixed) {
            while (gi < guide.size() && !guide[gi].is_map())
                ps.push_back(guide[gi++]);
            if (gi == guide.size() || guide[gi].kind != g.kind || guide[gi].K != g.K)
                throw DomainError("green word does not follow the chain at " + render_gen(g, N));
            start = guide[gi].whole ? 0 : size_t(guide[gi].a - 1);
            ++gi;
        } else {
            try {
                start = gather_block(labels, hv.in, ps);
            } catch (const SimulationError& e) {
                throw DomainError("monoid rewriting stuck before " + render_gen(g, N) + ": " + e.what());
            }
        }
        commute_l(ps);
        size_t block_end = nx + start + hv.in.size();
        for (size_t i = nx + nl; i > block_end; --i)
            emit({"A2", i, {w[i - 1], w[i]}, {w[i], w[i - 1]}});
        std::vector<Gen> before, after;
        for (Label J : hv.in)
            before.push_back({'L', false, J});
        before.push_back(g);
        after.push_back({g.kind, false, g.K});
        for (Label J : hv.out)
            after.push_back({'L', false, J});
        emit({"A3", nx + start + 1, before, after});
        for (size_t i = nx + start; i > nx; --i)
            emit({"A2", i, {w[i - 1], w[i]}, {w[i], w[i - 1]}});
        ++nx;
        nl = nl + hv.out.size() - hv.in.size();
    }
    std::vector<Label> labels;
    for (size_t i = nx; i < nx + nl; ++i)
        labels.push_back(w[i].K);
    std::vector<OpToken> ps;
    for (size_t i = 0; i < omega.size(); ++i) {
        auto it = std::find(labels.begin() + i, labels.end(), omega[i]);
        if (it == labels.end() || labels.size() != omega.size())
            throw DomainError("monoid rewriting does not end in L_omega");
        for (size_t j = size_t(it - labels.begin()); j > i; --j) {
            std::swap(labels[j - 1], labels[j]);
            ps.push_back(OpToken::transpose(int(j)));
        }
    }
    commute_l(ps);
    tr.finish = w;
    std::vector<Gen> expect;
    for (const Gen& g : primed)
        expect.push_back({g.kind, false, g.K});
    auto lw = l_word(omega);
    expect.insert(expect.end(), lw.begin(), lw.end());
    if (w != expect)
        throw DomainError("monoid rewriting ended in an unexpected word");
    return tr;
}

}  // namespace

std::vector<MonoidTrace> monoid_check(int N, MonoidVariant v)
{
    if (N < 3 || N > max_ground)
        throw DomainError("monoid check needs N >= 3");
    return {run_trace(N, v, true), run_trace(N, v, false)};
}

bool verify_monoid_step(const MonoidStep& s, int N, MonoidVariant v)
{
    auto is_l = [&](const Gen& g) { return g.kind == 'L' && !g.primed && g.K.size() == N - 2; };
    auto is_x = [&](const Gen& g) { return kind_allowed(v, g.kind) && g.K.size() == N - 1; };
    if (s.rule == "A1") {
        return s.before.size() == 2 && s.after.size() == 2 && is_l(s.before[0]) && is_l(s.before[1]) &&
               s.after[0] == s.before[1] && s.after[1] == s.before[0] && !dependent(s.before[0].K, s.before[1].K);
    }
    if (s.rule == "A2") {
        if (s.before.size() != 2 || s.after.size() != 2 || s.after[0] != s.before[1] || s.after[1] != s.before[0])
            return false;
        const Gen& a = s.before[0];
        const Gen& b = s.before[1];
        if (is_l(a) && is_x(b))
            return !in_packet(a.K, b.K);
        if (is_x(a) && is_l(b))
            return !in_packet(b.K, a.K);
        return false;
    }
    if (s.rule == "A3") {
        if (s.before.empty() || s.after.empty())
            return false;
        const Gen& xp = s.before.back();
        const Gen& x = s.after.front();
        if (!is_x(xp) || !xp.primed || x.primed || x.kind != xp.kind || x.K != xp.K)
            return false;
        Halves hv = halves(xp.K, v, xp.kind);
        if (s.before.size() != hv.in.size() + 1 || s.after.size() != hv.out.size() + 1)
            return false;
        for (size_t i = 0; i < hv.in.size(); ++i)
            if (s.before[i] != Gen{'L', false, hv.in[i]})
                return false;
        for (size_t i = 0; i < hv.out.size(); ++i)
            if (s.after[i + 1] != Gen{'L', false, hv.out[i]})
                return false;
        return true;
    }
    return false;
}

bool replay(const MonoidTrace& t)
{
    std::vector<Gen> w = t.start;
    try {
        for (const auto& s : t.steps) {
            if (!verify_monoid_step(s, t.N, t.variant))
                return false;
            apply_step(w, s);
        }
    } catch (const DomainError&) {
        return false;
    }
    return w == t.finish;
}

std::string render_gen(const Gen& g, int N)
{
    std::string s(1, g.kind);
    if (g.primed)
        s += "'";
    if (g.kind == 'L')
        return s + "_{" + to_string(g.K) + "}";
    return s + "_{" + hat_name(g.K, N) + "}";
}

std::string render_gens(const std::vector<Gen>& w, int N)
{
    std::string s;
    for (const auto& g : w)
        s += (s.empty() ? "" : " ") + render_gen(g, N);
    return s;
}

static nlohmann::json side_json(const LaxSide& side, int ground)
{
    static const char* kinds[] = {"commute", "lax_substitute", "normalize"};
    nlohmann::json steps = nlohmann::json::array(), lines = nlohmann::json::array();
    for (const auto& s : side.steps)
        steps.push_back({{"rule", kinds[int(s.kind)]},
                         {"position", s.location},
                         {"token", render_token(s.emitted, ground)}});
    for (const auto& l : side.lines)
        lines.push_back({{"tag", l.tag}, {"word", render_lax_word(l.word, ground)}});
    return {{"steps", steps}, {"lines", lines}, {"word", render_word(side.word, ground)}};
}

nlohmann::json to_json(const LaxDerivation& d)
{
    return {{"family", family_name(d.family)},
            {"N", d.N},
            {"lex", side_json(d.lex, d.ground)},
            {"rev", side_json(d.rev, d.ground)},
            {"equation", render_equation(d.equation)}};
}

nlohmann::json to_json(const MonoidTrace& t)
{
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : t.steps)
        steps.push_back({{"rule", s.rule},
                         {"position", s.position},
                         {"before", render_gens(s.before, t.N)},
                         {"after", render_gens(s.after, t.N)}});
    return {{"N", t.N},
            {"variant", variant_name(t.variant)},
            {"chain", t.forward ? "forward" : "backward"},
            {"start", render_gens(t.start, t.N)},
            {"finish", render_gens(t.finish, t.N)},
            {"steps", steps}};
}

Nil3 nil_generator(int i)
{
    if (i < 1 || i > 3)
        throw DomainError("generator index must be 1, 2 or 3");
    Nil3 g;
    g.e[i - 1] = 1;
    return g;
}

// g_j^m g_i^n = g_i^n g_j^m [g_i,g_j]^(-mn) for i < j.
Nil3 nil_mul(const Nil3& x, const Nil3& y)
{
    const auto& [a, b, c, d, e, f] = x.e;
    const auto& [a2, b2, c2, d2, e2, f2] = y.e;
    return Nil3{{a + a2, b + b2, c + c2, d + d2 - b * a2, e + e2 - c * a2, f + f2 - c * b2}};
}

Nil3 nil_inv(const Nil3& x)
{
    const auto& [a, b, c, d, e, f] = x.e;
    // Solve x * y = 1 for y = (-a, -b, -c, d', e', f').
    return Nil3{{-a, -b, -c, -d - b * a, -e - c * a, -f - c * b}};
}

Nil3 nil_comm(const Nil3& x, const Nil3& y)
{
    return nil_mul(nil_mul(x, y), nil_mul(nil_inv(x), nil_inv(y)));
}

bool nil_is_identity(const Nil3& x)
{
    return x == Nil3{};
}

namespace {

using Mat3 = std::array<std::array<int64_t, 3>, 3>;

Mat3 heis(int64_t x, int64_t y, int64_t z)
{
    return {{{1, x, z}, {0, 1, y}, {0, 0, 1}}};
}

Mat3 mat_mul(const Mat3& p, const Mat3& q)
{
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                r[i][j] += p[i][k] * q[k][j];
    return r;
}

// Blocks for the pairs (1,2), (1,3), (2,3): the pair's generators map to the Heisenberg
// generators, the third generator to the identity.
std::array<Mat3, 3> embed(const Nil3& x)
{
    const auto& [a, b, c, d, e, f] = x.e;
    return {heis(a, b, a * b + d), heis(a, c, a * c + e), heis(b, c, b * c + f)};
}

}  // namespace

Nil3 nil_matrix_product(const Nil3& x, const Nil3& y)
{
    auto p = embed(x), q = embed(y);
    std::array<Mat3, 3> r;
    for (int i = 0; i < 3; ++i)
        r[i] = mat_mul(p[i], q[i]);
    int64_t a = r[0][0][1], b = r[0][1][2], c = r[1][1][2];
    return Nil3{{a, b, c, r[0][0][2] - a * b, r[1][0][2] - a * c, r[2][0][2] - b * c}};
}

NilpotentReport nilpotent_commutator_solution(uint64_t seed, int samples)
{
    NilpotentReport rep;
    Nil3 g[3] = {nil_generator(1), nil_generator(2), nil_generator(3)};
    auto R = [&](int i, int j) { return nil_comm(g[i - 1], g[j - 1]); };
    rep.commutators_central = true;
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k)
                rep.commutators_central = rep.commutators_central && nil_is_identity(nil_comm(R(i, j), g[k - 1]));
    Nil3 lhs = nil_mul(nil_mul(R(2, 3), R(1, 3)), R(1, 2));
    Nil3 rhs = nil_mul(nil_mul(R(1, 2), R(1, 3)), R(2, 3));
    rep.yang_baxter = lhs == rhs && !nil_is_identity(R(1, 2));
    auto abelianize = [](Nil3 x) {
        x.e[3] = x.e[4] = x.e[5] = 0;
        return x;
    };
    rep.abelian_trivial = true;
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j)
            rep.abelian_trivial = rep.abelian_trivial && nil_is_identity(abelianize(R(i, j)));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int64_t> dist(-9, 9);
    for (int s = 0; s < samples; ++s) {
        Nil3 x, y;
        for (auto& v : x.e)
            v = dist(rng);
        for (auto& v : y.e)
            v = dist(rng);
        ++rep.oracle_checks;
        rep.oracle_agree += nil_mul(x, y) == nil_matrix_product(x, y);
    }
    return rep;
}

}  // namespace hbo
