#include "hbo/word.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "hbo/coloring.hpp"

namespace hbo {

OpToken OpToken::transpose(int a)
{
    OpToken t;
    t.op = Op::P;
    t.a = a;
    return t;
}

OpToken OpToken::map(char kind, Label K, int a, bool whole)
{
    OpToken t;
    t.op = Op::Map;
    t.kind = kind;
    t.K = K;
    t.a = a;
    t.whole = whole;
    return t;
}

OpToken OpToken::hat(char kind, Label K, std::vector<int> pos)
{
    OpToken t;
    t.op = Op::Map;
    t.kind = kind;
    t.K = K;
    t.hatted = true;
    t.pos = std::move(pos);
    return t;
}

bool operator==(const OpToken& x, const OpToken& y)
{
    if (x.op != y.op)
        return false;
    if (x.op == OpToken::Op::P)
        return x.a == y.a;
    if (x.kind != y.kind || x.K != y.K || x.hatted != y.hatted)
        return false;
    if (x.hatted)
        return x.pos == y.pos;
    return x.a == y.a && x.whole == y.whole;
}

std::string family_name(Family f)
{
    switch (f) {
    case Family::simplex:
        return "simplex";
    case Family::polygon:
        return "polygon";
    case Family::dual_polygon:
        return "dual_polygon";
    case Family::mixed:
        return "mixed";
    }
    return "?";
}

Family parse_family(const std::string& s)
{
    if (s == "simplex")
        return Family::simplex;
    if (s == "polygon")
        return Family::polygon;
    if (s == "dual_polygon" || s == "dual")
        return Family::dual_polygon;
    if (s == "mixed")
        return Family::mixed;
    throw DomainError("unknown family: " + s);
}

static std::vector<Label> reversed(std::vector<Label> v)
{
    std::reverse(v.begin(), v.end());
    return v;
}

std::vector<Label> map_inputs(const OpToken& t)
{
    auto h = half_packets(t.K);
    std::vector<Label> in;
    switch (t.kind) {
    case 'R':
    case 'L':
        in = packet_vec(t.K);
        break;
    case 'T':
        in = h.odd;
        break;
    case 'S':
        in = h.even;
        break;
    default:
        throw DomainError(std::string("unknown map kind ") + t.kind);
    }
    return t.hatted ? reversed(in) : in;
}

std::vector<Label> map_outputs(const OpToken& t)
{
    auto h = half_packets(t.K);
    std::vector<Label> out;
    switch (t.kind) {
    case 'R':
    case 'L':
        out = reversed(packet_vec(t.K));
        break;
    case 'T':
        out = reversed(h.even);
        break;
    case 'S':
        out = reversed(h.odd);
        break;
    default:
        throw DomainError(std::string("unknown map kind ") + t.kind);
    }
    if (t.hatted) {
        size_t nin = map_inputs(t).size();
        if (out.size() + 1 == nin)
            out.insert(out.begin(), placeholder(t.K));
        else if (out.size() != nin)
            throw DomainError("hatted map needs as many outputs as inputs");
    }
    return out;
}

void apply_token(std::vector<Label>& state, const OpToken& t)
{
    if (t.op == OpToken::Op::P) {
        if (t.a < 1 || size_t(t.a) >= state.size())
            throw SimulationError("transposition P_" + std::to_string(t.a) + " out of range");
        std::swap(state[t.a - 1], state[t.a]);
        return;
    }
    auto in = map_inputs(t);
    auto out = map_outputs(t);
    if (t.hatted) {
        if (t.pos.size() != in.size())
            throw SimulationError("multi-index has the wrong length");
        for (size_t i = 0; i < in.size(); ++i) {
            int p = t.pos[i];
            if (p < 1 || size_t(p) > state.size() || state[p - 1] != in[i] || (i && t.pos[i - 1] >= p))
                throw SimulationError("hatted map expects " + to_string(in) + " at its multi-index");
        }
        for (size_t i = 0; i < in.size(); ++i)
            state[t.pos[i] - 1] = out[i];
        return;
    }
    size_t a = size_t(t.a - 1);
    if (t.a < 1 || a + in.size() > state.size() || !std::equal(in.begin(), in.end(), state.begin() + a))
        throw SimulationError("map expects " + to_string(in) + " at position " + std::to_string(t.a) +
                              " of " + to_string(state));
    state.erase(state.begin() + a, state.begin() + a + in.size());
    state.insert(state.begin() + a, out.begin(), out.end());
}

std::vector<Label> simulate_executed(const std::vector<OpToken>& executed, std::vector<Label> state)
{
    for (size_t i = 0; i < executed.size(); ++i) {
        try {
            apply_token(state, executed[i]);
        } catch (const SimulationError& e) {
            throw SimulationError("token " + std::to_string(i) + " (execution order): " + e.what());
        }
    }
    return state;
}

std::vector<Label> simulate(const OpWord& w, std::vector<Label> state)
{
    for (size_t i = w.tokens.size(); i-- > 0;) {
        try {
            apply_token(state, w.tokens[i]);
        } catch (const SimulationError& e) {
            throw SimulationError("token " + std::to_string(i) + ": " + e.what());
        }
    }
    return state;
}

Label alias_placeholder(Label J, int N)
{
    if (!is_placeholder(J))
        return J;
    Label missing = complement(J.without(0), N);
    if (missing.size() != 1)
        return J;
    int m = missing.min_element();
    if (m % 2 == 0)
        return placeholder(complement(Label::of({m - 1}), N));
    return J;
}

bool same_modulo_alias(const std::vector<Label>& a, const std::vector<Label>& b, int N)
{
    if (a.size() != b.size())
        return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (alias_placeholder(a[i], N) != alias_placeholder(b[i], N))
            return false;
    return true;
}

namespace {

int max_pos(const OpWord& w)
{
    int m = 0;
    for (const auto& t : w.tokens)
        for (int p : t.pos)
            m = std::max(m, p);
    return m;
}

std::string render_token(const OpToken& t, int ground, bool compact)
{
    if (t.op == OpToken::Op::P)
        return "P_" + std::to_string(t.a);
    std::string s(1, t.kind);
    if (t.hatted)
        s += "̂";
    s += "_{" + hat_name(t.K, ground);
    if (t.hatted) {
        s += ",";
        for (size_t i = 0; i < t.pos.size(); ++i)
            s += (i && !compact ? "," : "") + std::to_string(t.pos[i]);
    } else if (!t.whole) {
        s += "," + std::to_string(t.a);
    }
    return s + "}";
}

std::string render_word(const OpWord& w, int ground, bool compact)
{
    std::string s;
    for (size_t i = 0; i < w.tokens.size(); ++i)
        s += (i ? " " : "") + render_token(w.tokens[i], ground, compact);
    return s;
}

}  // namespace

std::string render_token(const OpToken& t, int ground)
{
    int m = 0;
    for (int p : t.pos)
        m = std::max(m, p);
    return render_token(t, ground, m < 10);
}

std::string render_word(const OpWord& w, int ground)
{
    return render_word(w, ground, max_pos(w) < 10);
}

std::string render_equation(const EquationPair& e)
{
    bool compact = std::max(max_pos(e.lhs), max_pos(e.rhs)) < 10;
    return render_word(e.lhs, e.ground(), compact) + " = " + render_word(e.rhs, e.ground(), compact);
}

namespace {

void checked_swap(std::vector<Label>& s, size_t a, std::vector<OpToken>& out)
{
    if (dependent(s[a], s[a + 1]))
        throw SimulationError("resolution would exchange dependent neighbours " + to_string(s[a]) + ", " +
                              to_string(s[a + 1]));
    std::swap(s[a], s[a + 1]);
    out.push_back(OpToken::transpose(int(a) + 1));
}

// Brings members to consecutive positions; returns the 0-based start of the block.
size_t gather(std::vector<Label>& s, const std::vector<Label>& members, std::vector<OpToken>& out)
{
    const size_t k = members.size();
    std::vector<size_t> pos(k);
    for (size_t i = 0; i < k; ++i) {
        auto it = std::find(s.begin(), s.end(), members[i]);
        if (it == s.end())
            throw SimulationError("pattern member " + to_string(members[i]) + " missing from " + to_string(s));
        pos[i] = size_t(it - s.begin());
        if (i && pos[i] < pos[i - 1])
            throw SimulationError("pattern " + to_string(members) + " is out of order in " + to_string(s));
    }
    const size_t p1 = pos.front(), pk = pos.back();
    std::vector<size_t> nonm;
    for (size_t q = p1; q <= pk; ++q)
        if (std::find(members.begin(), members.end(), s[q]) == members.end())
            nonm.push_back(q);
    auto valid = [&](size_t L) {
        for (size_t i = 0; i < nonm.size(); ++i) {
            size_t q = nonm[i];
            for (size_t p : pos) {
                bool crosses = i < L ? p < q : p > q;
                if (crosses && dependent(s[q], s[p]))
                    return false;
            }
        }
        return true;
    };
    size_t L = 0;
    while (L <= nonm.size() && !valid(L))
        ++L;
    if (L > nonm.size())
        throw SimulationError("cannot gather " + to_string(members) + " in " + to_string(s));
    const size_t t = p1 + L;
    std::vector<size_t> cur = pos;
    for (size_t i = k; i-- > 0;)
        while (cur[i] < t + i) {
            checked_swap(s, cur[i], out);
            ++cur[i];
        }
    for (size_t i = 0; i < k; ++i)
        while (cur[i] > t + i) {
            checked_swap(s, cur[i] - 1, out);
            --cur[i];
        }
    return t;
}

}  // namespace

size_t gather_block(std::vector<Label>& s, const std::vector<Label>& members, std::vector<OpToken>& out)
{
    return gather(s, members, out);
}

Resolution resolve_steps(const std::vector<Label>& source, const std::vector<Step>& steps,
                         const std::vector<Label>* target)
{
    Resolution r;
    std::vector<Label> s = source;
    for (const Step& st : steps) {
        OpToken t = OpToken::map(st.kind, st.K, 0);
        auto in = map_inputs(t);
        size_t start = gather(s, in, r.executed);
        t.a = int(start) + 1;
        t.whole = in.size() == s.size();
        apply_token(s, t);
        r.executed.push_back(t);
        r.after_step.push_back(s);
    }
    if (target) {
        if (target->size() != s.size())
            throw SimulationError("resolution target has the wrong length");
        for (size_t i = 0; i < target->size(); ++i) {
            auto it = std::find(s.begin() + i, s.end(), (*target)[i]);
            if (it == s.end())
                throw SimulationError("target label " + to_string((*target)[i]) + " not reachable");
            for (size_t j = size_t(it - s.begin()); j > i; --j)
                checked_swap(s, j - 1, r.executed);
        }
    }
    r.final_state = s;
    return r;
}

OpWord to_word(const std::vector<OpToken>& executed, const std::vector<Label>& source,
               const std::vector<Label>& target)
{
    OpWord w;
    w.tokens.assign(executed.rbegin(), executed.rend());
    w.source = source;
    w.target = target;
    return w;
}

OpWord resolve_chain(const PosetGraph& P, const std::vector<Label>& chain, Family family,
                     const std::vector<Label>* target)
{
    InvSet inv = P.nodes[P.bottom];
    std::vector<Step> steps;
    std::vector<Label> source;
    std::vector<Label> tgt;
    if (family == Family::simplex) {
        source = witness(inv).entries;
        for (Label K : chain)
            steps.push_back({K, 'R'});
        tgt = target ? *target : witness(P.nodes[P.top]).entries;
    } else if (family == Family::polygon) {
        source = colored_subsequence(witness(inv).entries, inv, Color::Blue);
        for (Label K : chain) {
            if (!(K.size() >= P.N) && !edge_is_blue(inv, K)) {
                inv.insert(K);
                continue;
            }
            steps.push_back({K, 'T'});
            inv.insert(K);
        }
        const InvSet& top = P.nodes[P.top];
        tgt = target ? *target : colored_subsequence(witness(top).entries, top, Color::Blue);
    } else {
        throw DomainError("resolve_chain supports the simplex and polygon families");
    }
    auto r = resolve_steps(source, steps, &tgt);
    return to_word(r.executed, source, tgt);
}

std::vector<Label> polygon_source(int N)
{
    InvSet none(N, N - 2);
    return colored_subsequence(enumerate_subsets(N, N - 2), none, Color::Blue);
}

std::vector<Label> polygon_target(int N)
{
    InvSet all = full_inv_set(N, N - 2);
    return colored_subsequence(reversed(enumerate_subsets(N, N - 2)), all, Color::Blue);
}

namespace {

OpWord project_word(const std::vector<OpToken>& executed, const std::vector<Label>& alpha, int N, Color c,
                    std::vector<OpToken>& out_exec)
{
    std::vector<Label> s = alpha;
    InvSet inv(N, N - 2);
    auto sub = [&]() { return colored_subsequence(s, inv, c); };
    auto source = sub();
    for (const OpToken& t : executed) {
        if (!t.is_map()) {
            Label x = s[t.a - 1], y = s[t.a];
            if (color_of(x, inv) == c && color_of(y, inv) == c) {
                auto v = sub();
                size_t i = size_t(std::find(v.begin(), v.end(), x) - v.begin());
                out_exec.push_back(OpToken::transpose(int(i) + 1));
            }
            std::swap(s[t.a - 1], s[t.a]);
            continue;
        }
        auto h = half_packets(t.K);
        for (auto [kind, ins] : {std::pair{'T', h.odd}, std::pair{'S', h.even}}) {
            if (ins.empty() || color_of(ins.front(), inv) != c)
                continue;
            for (Label x : ins)
                if (color_of(x, inv) != c)
                    throw SimulationError("half packet of " + to_string(t.K) + " has mixed colors");
            auto v = sub();
            size_t i = size_t(std::find(v.begin(), v.end(), ins.front()) - v.begin());
            out_exec.push_back(OpToken::map(kind, t.K, int(i) + 1, ins.size() == v.size()));
        }
        apply_token(s, t);
        inv.insert(t.K);
    }
    OpWord w = to_word(out_exec, source, sub());
    if (simulate(w, w.source) != w.target)
        throw SimulationError("projected word does not reach its target");
    return w;
}

}  // namespace

Decomposition decompose_simplex(int N)
{
    if (N < 3 || N > max_ground)
        throw DomainError("decomposition needs N >= 3");
    auto alpha = enumerate_subsets(N, N - 2);
    auto omega = reversed(alpha);
    std::vector<Step> lex;
    for (Label K : enumerate_subsets(N, N - 1))
        lex.push_back({K, 'R'});
    std::vector<Step> rev(lex.rbegin(), lex.rend());
    auto left = resolve_steps(alpha, lex, &omega).executed;
    auto right = resolve_steps(alpha, rev, &omega).executed;
    Decomposition d;
    std::pair<EquationPair*, Color> parts[] = {
        {&d.blue, Color::Blue}, {&d.red, Color::Red}, {&d.green, Color::Green}};
    Family fams[] = {Family::polygon, Family::dual_polygon, Family::mixed};
    for (int i = 0; i < 3; ++i) {
        EquationPair& e = *parts[i].first;
        e.family = fams[i];
        e.N = N;
        std::vector<OpToken> l, r;
        e.lhs = project_word(left, alpha, N, parts[i].second, l);
        e.rhs = project_word(right, alpha, N, parts[i].second, r);
    }
    return d;
}

EquationPair generate_equation(int N, Family family)
{
    EquationPair e;
    e.family = family;
    e.N = N;
    if (family == Family::simplex) {
        if (N < 1 || N + 1 > max_ground)
            throw DomainError("simplex equation needs N >= 1");
        int M = N + 1;
        auto alpha = enumerate_subsets(M, N - 1);
        auto omega = reversed(alpha);
        auto Ks = enumerate_subsets(M, N);
        std::vector<Step> lex, rev;
        for (Label K : Ks)
            lex.push_back({K, 'R'});
        rev.assign(lex.rbegin(), lex.rend());
        e.lhs = to_word(resolve_steps(alpha, lex, &omega).executed, alpha, omega);
        e.rhs = to_word(resolve_steps(alpha, rev, &omega).executed, alpha, omega);
        return e;
    }
    if (family == Family::polygon) {
        if (N < 2 || N > max_ground)
            throw DomainError("polygon equation needs N >= 2");
        auto src = polygon_source(N);
        auto tgt = polygon_target(N);
        auto hp = half_packets(Label::range(N));
        std::vector<Step> co, ce;
        for (Label K : hp.odd)
            co.push_back({K, 'T'});
        for (auto it = hp.even.rbegin(); it != hp.even.rend(); ++it)
            ce.push_back({*it, 'T'});
        e.lhs = to_word(resolve_steps(src, co, &tgt).executed, src, tgt);
        e.rhs = to_word(resolve_steps(src, ce, &tgt).executed, src, tgt);
        return e;
    }
    auto d = decompose_simplex(N);
    return family == Family::dual_polygon ? d.red : d.green;
}

std::vector<Label> hatted_ambient(const EquationPair& e)
{
    if (e.family == Family::simplex)
        return e.lhs.target;
    if (e.family == Family::polygon)
        return reversed(e.lhs.source);
    throw DomainError("hatted forms are defined for the simplex and polygon families");
}

EquationPair collapse_hatted(const EquationPair& e)
{
    if (e.hatted)
        return e;
    auto ambient = hatted_ambient(e);
    EquationPair h;
    h.family = e.family;
    h.N = e.N;
    h.hatted = true;
    std::vector<Label> finals[2];
    int side = 0;
    for (const OpWord* w : {&e.lhs, &e.rhs}) {
        std::vector<Label> s = ambient;
        std::vector<OpToken> executed;
        for (size_t i = w->tokens.size(); i-- > 0;) {
            const OpToken& t = w->tokens[i];
            if (!t.is_map())
                continue;
            OpToken ht = OpToken::hat(t.kind, t.K, {});
            for (Label x : map_inputs(ht)) {
                auto it = std::find(s.begin(), s.end(), x);
                if (it == s.end())
                    throw SimulationError("hatted collapse: " + to_string(x) + " missing from ambient");
                ht.pos.push_back(int(it - s.begin()) + 1);
            }
            apply_token(s, ht);
            executed.push_back(ht);
        }
        finals[side] = s;
        (side == 0 ? h.lhs : h.rhs) = to_word(executed, ambient, s);
        ++side;
    }
    if (!same_modulo_alias(finals[0], finals[1], e.ground()))
        throw SimulationError("hatted sides end in different states");
    return h;
}

int position_formula(int n, int k, int j)
{
    if (k <= j)
        return (2 * n - k) * (k - 1) / 2 + j;
    return position_formula(n, j, k - 1);
}

PositionFormulaReport position_formula_check(int N)
{
    PositionFormulaReport rep;
    rep.N = N;
    auto h = collapse_hatted(generate_equation(N, Family::simplex));
    rep.traced.assign(N + 1, {});
    for (const auto& t : h.lhs.tokens) {
        int k = complement(t.K, N + 1).min_element();
        rep.traced[k - 1] = t.pos;
    }
    for (int n = 0; n <= 4 * N + 4; ++n) {
        bool ok = true;
        for (int k = 1; k <= N + 1 && ok; ++k)
            for (int j = 1; j <= int(rep.traced[k - 1].size()) && ok; ++j)
                ok = position_formula(n, k, j) == rep.traced[k - 1][j - 1];
        if (ok)
            rep.exact_n.push_back(n);
    }
    return rep;
}

int TermTable::source(size_t slot, Label l)
{
    auto [it, fresh] = ids_.emplace(std::vector<int64_t>{0, int64_t(slot), int64_t(l.bits)}, next_);
    if (fresh)
        ++next_;
    return it->second;
}

int TermTable::output(int event_term, int k)
{
    auto [it, fresh] = ids_.emplace(std::vector<int64_t>{1, event_term, k}, next_);
    if (fresh)
        ++next_;
    return it->second;
}

int TermTable::event(char kind, Label K, bool hatted, const std::vector<int>& inputs)
{
    std::vector<int64_t> key{2, kind, int64_t(K.bits), hatted};
    key.insert(key.end(), inputs.begin(), inputs.end());
    auto [it, fresh] = ids_.emplace(std::move(key), next_);
    if (fresh)
        ++next_;
    return it->second;
}

TraceGraph trace_graph(const OpWord& w, TermTable& terms)
{
    TraceGraph g;
    std::vector<Label> labels = w.source;
    std::vector<int> vals;
    for (size_t i = 0; i < labels.size(); ++i)
        vals.push_back(terms.source(i, labels[i]));
    std::unordered_map<int, size_t> producer;
    for (size_t i = w.tokens.size(); i-- > 0;) {
        const OpToken& t = w.tokens[i];
        if (!t.is_map()) {
            apply_token(labels, t);
            std::swap(vals[t.a - 1], vals[t.a]);
            continue;
        }
        size_t nin = map_inputs(t).size();
        size_t nout = map_outputs(t).size();
        std::vector<int> in;
        if (t.hatted)
            for (int p : t.pos)
                in.push_back(vals.at(p - 1));
        else
            in.assign(vals.begin() + (t.a - 1), vals.begin() + (t.a - 1) + nin);
        apply_token(labels, t);
        int ev = terms.event(t.kind, t.K, t.hatted, in);
        size_t idx = g.events.size();
        g.events.push_back({t.kind, t.K, t.hatted, in});
        for (int x : in) {
            auto it = producer.find(x);
            if (it != producer.end())
                g.edges.push_back({it->second, idx});
        }
        std::vector<int> out;
        for (size_t k = 0; k < nout; ++k) {
            out.push_back(terms.output(ev, int(k)));
            producer[out.back()] = idx;
        }
        if (t.hatted) {
            for (size_t k = 0; k < nout; ++k)
                vals[t.pos[k] - 1] = out[k];
        } else {
            vals.erase(vals.begin() + (t.a - 1), vals.begin() + (t.a - 1) + nin);
            vals.insert(vals.begin() + (t.a - 1), out.begin(), out.end());
        }
    }
    g.outputs = vals;
    g.final_labels = labels;
    return g;
}

bool trace_equivalent(const OpWord& a, const OpWord& b)
{
    if (a.source != b.source)
        return false;
    TermTable terms;
    auto ga = trace_graph(a, terms);
    auto gb = trace_graph(b, terms);
    return ga.outputs == gb.outputs && ga.final_labels == gb.final_labels;
}

OpToken parse_token(std::string_view text, int ground)
{
    auto bad = [&]() { return DomainError("bad token: " + std::string(text)); };
    if (text.empty())
        throw bad();
    bool hatted = text.front() == '^';
    if (hatted)
        text.remove_prefix(1);
    if (text.empty())
        throw bad();
    char kind = text.front();
    text.remove_prefix(1);
    try {
        if (kind == 'P' && !hatted)
            return OpToken::transpose(std::stoi(std::string(text)));
        if (std::string_view("RTSL").find(kind) == std::string_view::npos)
            throw bad();
        size_t at = text.find('@');
        int c = std::stoi(std::string(text.substr(0, at)));
        if (c < 1 || c > ground)
            throw bad();
        Label K = complement(Label::of({c}), ground);
        if (at == std::string_view::npos) {
            if (hatted)
                throw bad();
            return OpToken::map(kind, K, 1, true);
        }
        std::string rest(text.substr(at + 1));
        if (!hatted)
            return OpToken::map(kind, K, std::stoi(rest));
        std::vector<int> pos;
        size_t i = 0;
        while (i <= rest.size()) {
            size_t j = rest.find(',', i);
            if (j == std::string::npos)
                j = rest.size();
            pos.push_back(std::stoi(rest.substr(i, j - i)));
            i = j + 1;
        }
        return OpToken::hat(kind, K, std::move(pos));
    } catch (const std::logic_error&) {
        throw bad();
    }
}

std::vector<OpToken> parse_tokens(std::string_view text, int ground)
{
    std::vector<OpToken> out;
    size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && text[i] == ' ')
            ++i;
        size_t j = text.find(' ', i);
        if (j == std::string_view::npos)
            j = text.size();
        if (j > i)
            out.push_back(parse_token(text.substr(i, j - i), ground));
        i = j;
    }
    return out;
}

}  // namespace hbo
