#include "hbo/coloring.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace hbo {

char color_char(Color c)
{
    return c == Color::Blue ? 'b' : c == Color::Red ? 'r' : 'g';
}

std::string color_name(Color c)
{
    return c == Color::Blue ? "blue" : c == Color::Red ? "red" : "green";
}

Color parse_color(const std::string& s)
{
    if (s == "blue" || s == "b")
        return Color::Blue;
    if (s == "red" || s == "r")
        return Color::Red;
    if (s == "green" || s == "g")
        return Color::Green;
    throw DomainError("unknown color: " + s);
}

static bool in_list(const std::vector<Label>& v, Label x)
{
    return std::find(v.begin(), v.end(), x) != v.end();
}

Color color_of(Label J, const InvSet& inv)
{
    int N = inv.N();
    bool blue = true, red = true;
    for (Label K : envelope(J, N)) {
        auto h = half_packets(K);
        bool o = in_list(h.odd, J);
        if (inv.contains(K)) {
            blue = blue && !o;
            red = red && o;
        } else {
            blue = blue && o;
            red = red && !o;
        }
    }
    if (blue)
        return Color::Blue;
    if (red)
        return Color::Red;
    return Color::Green;
}

static bool edge_test(const InvSet& inv, Label K, bool blue)
{
    int N = inv.N();
    if (K.size() >= N)
        return true;
    InvSet next = inv;
    next.insert(K);
    for (Label L : envelope(K, N)) {
        auto h = half_packets(L);
        bool o = in_list(h.odd, K);
        bool fwd = beginning_segment(inv, L, true) && beginning_segment(next, L, true);
        bool bwd = beginning_segment(inv, L, false) && beginning_segment(next, L, false);
        bool ok = blue ? ((fwd && o) || (bwd && !o)) : ((fwd && !o) || (bwd && o));
        if (!ok)
            return false;
    }
    return true;
}

bool edge_is_blue(const InvSet& inv, Label K)
{
    return edge_test(inv, K, true);
}

bool edge_is_red(const InvSet& inv, Label K)
{
    return edge_test(inv, K, false);
}

Color inversion_color(const InvSet& inv, Label K)
{
    if (edge_is_blue(inv, K))
        return Color::Blue;
    if (edge_is_red(inv, K))
        return Color::Red;
    return Color::Green;
}

std::vector<Label> colored_subsequence(const std::vector<Label>& seq, const InvSet& inv, Color c)
{
    std::vector<Label> out;
    for (Label J : seq)
        if (color_of(J, inv) == c)
            out.push_back(J);
    return out;
}

std::string kind_name(InversionKind k)
{
    return k == InversionKind::full ? "full" : k == InversionKind::half_blue ? "half_blue" : "half_red";
}

std::vector<Label> half_packet_inversion(const std::vector<Label>& seq, Label K, InversionKind kind, int a)
{
    auto h = half_packets(K);
    std::vector<Label> in, out;
    switch (kind) {
    case InversionKind::full:
        in = packet_vec(K);
        out.assign(in.rbegin(), in.rend());
        break;
    case InversionKind::half_blue:
        in = h.odd;
        out.assign(h.even.rbegin(), h.even.rend());
        break;
    case InversionKind::half_red:
        in = h.even;
        out.assign(h.odd.rbegin(), h.odd.rend());
        break;
    }
    if (a < 1 || size_t(a - 1) + in.size() > seq.size() ||
        !std::equal(in.begin(), in.end(), seq.begin() + (a - 1)))
        throw DomainError("half_packet_inversion: pattern " + to_string(in) + " not at position " +
                          std::to_string(a) + " of " + to_string(seq));
    std::vector<Label> r(seq.begin(), seq.begin() + (a - 1));
    r.insert(r.end(), out.begin(), out.end());
    r.insert(r.end(), seq.begin() + (a - 1) + in.size(), seq.end());
    return r;
}

std::vector<Label> trace_normal_form(const std::vector<Label>& seq)
{
    const size_t m = seq.size();
    std::vector<int> indeg(m, 0);
    std::vector<std::vector<size_t>> succ(m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (seq[i].size() == seq[j].size() && dependent(seq[i], seq[j])) {
                succ[i].push_back(j);
                ++indeg[j];
            }
    std::vector<char> done(m, 0);
    std::vector<Label> out;
    out.reserve(m);
    for (size_t step = 0; step < m; ++step) {
        size_t best = m;
        for (size_t i = 0; i < m; ++i)
            if (!done[i] && indeg[i] == 0 && (best == m || lex_less(seq[i], seq[best])))
                best = i;
        done[best] = 1;
        out.push_back(seq[best]);
        for (size_t j : succ[best])
            --indeg[j];
    }
    return out;
}

std::vector<Label> colored_key(const InvSet& inv, Color c)
{
    return trace_normal_form(colored_subsequence(witness(inv).entries, inv, c));
}

TamariPoset quotient(const PosetGraph& P, Color c)
{
    TamariPoset T;
    T.N = P.N;
    T.n = P.n;
    T.color = c;
    std::vector<size_t> node_of(P.nodes.size());
    bool all_empty = true;
    for (size_t i = 0; i < P.nodes.size(); ++i) {
        auto key = colored_key(P.nodes[i], c);
        all_empty = all_empty && key.empty();
        auto [it, fresh] = T.index.emplace(key, T.nodes.size());
        if (fresh)
            T.nodes.push_back(key);
        node_of[i] = it->second;
    }
    if (all_empty) {
        return TamariPoset{P.N, P.n, c, {}, {}, {}, 0, 0};
    }
    std::map<std::pair<size_t, size_t>, size_t> merged;
    for (const auto& e : P.edges) {
        size_t a = node_of[e.src], b = node_of[e.dst];
        if (a == b)
            continue;
        InversionKind kind = InversionKind::full;
        if (c == Color::Blue)
            kind = InversionKind::half_blue;
        else if (c == Color::Red)
            kind = InversionKind::half_red;
        else {
            Color ec = inversion_color(P.nodes[e.src], e.label);
            kind = ec == Color::Blue ? InversionKind::half_red
                   : ec == Color::Red ? InversionKind::half_blue
                                      : InversionKind::full;
        }
        auto [it, fresh] = merged.emplace(std::make_pair(a, b), T.edges.size());
        if (fresh)
            T.edges.push_back({a, b, {e.label}, kind});
        else
            T.edges[it->second].labels.push_back(e.label);
    }
    T.bottom = node_of[P.bottom];
    T.top = node_of[P.top];
    return T;
}

TamariPoset enumerate_T(int N, int n, Color c, uint64_t cap)
{
    return quotient(enumerate_B(N, n, cap), c);
}

std::vector<Label> project_tamari(const std::vector<Label>& node, int N, int k)
{
    if (k != 1 && k != N)
        throw DomainError("project_tamari: k must be 1 or N; other choices cannot be brought into natural "
                          "correspondence with a colored suborder");
    std::vector<Label> out;
    for (Label J : node) {
        if (!J.contains(k))
            continue;
        Label r;
        for (int x : J.elements())
            if (x != k)
                r = r.with(x < k ? x : x - 1);
        out.push_back(r);
    }
    return trace_normal_form(out);
}

Color projected_color(Color c, int N, int k)
{
    if (k == 1 || c == Color::Green)
        return c;
    if (k == N)
        return c == Color::Blue ? Color::Red : Color::Blue;
    throw DomainError("projected_color: k must be 1 or N");
}

bool reachable(const TamariPoset& T, size_t from, size_t to)
{
    std::vector<char> seen(T.nodes.size(), 0);
    std::vector<std::vector<size_t>> adj(T.nodes.size());
    for (const auto& e : T.edges)
        adj[e.src].push_back(e.dst);
    std::deque<size_t> q{from};
    seen[from] = 1;
    while (!q.empty()) {
        size_t u = q.front();
        q.pop_front();
        if (u == to)
            return true;
        for (size_t v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                q.push_back(v);
            }
    }
    return false;
}

PropositionReport check_color_propositions(const PosetGraph& P)
{
    PropositionReport rep;
    rep.N = P.N;
    rep.n = P.n;
    auto vertices = enumerate_subsets(P.N, P.n);
    std::vector<std::vector<Color>> colors(P.nodes.size());
    for (size_t i = 0; i < P.nodes.size(); ++i)
        for (Label J : vertices)
            colors[i].push_back(color_of(J, P.nodes[i]));
    auto col = [&](size_t node, Label J) {
        return colors[node][size_t(std::find(vertices.begin(), vertices.end(), J) - vertices.begin())];
    };
    bool top_level = P.n + 1 == P.N;

    // Every class reachable from each node, including the node itself.
    std::vector<std::vector<char>> below(P.nodes.size());
    for (size_t s = 0; s < P.nodes.size(); ++s) {
        auto& seen = below[s];
        seen.assign(P.nodes.size(), 0);
        std::vector<size_t> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            size_t u = stack.back();
            stack.pop_back();
            for (size_t e : P.out[u])
                if (!seen[P.edges[e].dst]) {
                    seen[P.edges[e].dst] = 1;
                    stack.push_back(P.edges[e].dst);
                }
        }
    }

    for (const auto& e : P.edges) {
        ++rep.edges;
        Color ec = inversion_color(P.nodes[e.src], e.label);
        auto h = half_packets(e.label);
        auto fail = [&] { ++rep.violations_25; };
        if (!top_level) {
            if (ec == Color::Green) {
                for (Label J : packet_vec(e.label))
                    if (col(e.src, J) != Color::Green || col(e.dst, J) != Color::Green)
                        fail();
            } else {
                // Blue: P_o blue before, P_e blue after. Red: P_e red before, P_o red after.
                const auto& first = ec == Color::Blue ? h.odd : h.even;
                const auto& second = ec == Color::Blue ? h.even : h.odd;
                for (Label J : first)
                    if (col(e.src, J) != ec || col(e.dst, J) != Color::Green)
                        fail();
                for (Label J : second)
                    if (col(e.dst, J) != ec || col(e.src, J) != Color::Green)
                        fail();
            }
        }
        if (ec == Color::Green)
            continue;
        for (Label J : packet_vec(e.label)) {
            if (col(e.src, J) != ec)
                continue;
            for (size_t t = 0; t < P.nodes.size(); ++t)
                if (below[e.dst][t]) {
                    ++rep.later_checked;
                    if (col(t, J) == ec)
                        ++rep.violations_26;
                }
        }
    }
    for (Label J : vertices) {
        Color a = col(P.bottom, J), w = col(P.top, J);
        Color expect = a == Color::Blue ? Color::Red : a == Color::Red ? Color::Blue : Color::Green;
        if (w != expect)
            ++rep.violations_27;
    }
    return rep;
}

std::vector<ColoredChain> colored_chains(const PosetGraph& P, Color c, uint64_t cap)
{
    std::vector<ColoredChain> out;
    std::set<std::string> seen;
    for (const auto& chain : maximal_chains(P, cap)) {
        ColoredChain cc;
        cc.color = c;
        InvSet inv = P.nodes[P.bottom];
        cc.start = colored_key(inv, c);
        auto cur = cc.start;
        for (Label K : chain) {
            Color ec = inversion_color(inv, K);
            if (c == Color::Green && ec != Color::Green)
                ec = ec == Color::Blue ? Color::Red : Color::Blue;
            inv.insert(K);
            auto next = colored_key(inv, c);
            if (next != cur)
                cc.steps.push_back({K, ec, next});
            cur = std::move(next);
        }
        if (seen.insert(render_colored_chain(cc)).second)
            out.push_back(std::move(cc));
    }
    return out;
}

std::string render_colored_chain(const ColoredChain& ch)
{
    std::string s = to_string(ch.start);
    for (const auto& st : ch.steps)
        s += " -" + to_string(st.K) + color_char(st.edge) + "-> " + to_string(st.state);
    return s;
}

}  // namespace hbo
