#include "hbo/bruhat.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <queue>
#include <set>

namespace hbo {

LinearOrder lex_order(int N, int n)
{
    return LinearOrder{N, n, enumerate_subsets(N, n)};
}

LinearOrder reverse_lex_order(int N, int n)
{
    auto o = lex_order(N, n);
    std::reverse(o.entries.begin(), o.entries.end());
    return o;
}

namespace {

std::shared_ptr<const SubsetIndex> shared_index(int N, int m)
{
    static std::map<std::pair<int, int>, std::shared_ptr<const SubsetIndex>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> g(mu);
    auto& slot = cache[{N, m}];
    if (!slot)
        slot = std::make_shared<const SubsetIndex>(N, m);
    return slot;
}

}  // namespace

InvSet::InvSet(std::shared_ptr<const SubsetIndex> idx) : idx_(std::move(idx))
{
    words_.assign((idx_->count() + 63) / 64, 0);
}

InvSet::InvSet(int N, int n) : InvSet(shared_index(N, n + 1))
{
    if (n < 0 || n >= N + 1)
        throw DomainError("InvSet needs 0 <= n <= N");
}

bool InvSet::contains(Label K) const
{
    if (K.size() != idx_->m())
        return false;
    size_t r = idx_->rank(K);
    return (words_[r / 64] >> (r % 64)) & 1u;
}

void InvSet::insert(Label K)
{
    size_t r = idx_->rank(K);
    words_[r / 64] |= uint64_t{1} << (r % 64);
}

void InvSet::erase(Label K)
{
    size_t r = idx_->rank(K);
    words_[r / 64] &= ~(uint64_t{1} << (r % 64));
}

size_t InvSet::size() const
{
    size_t s = 0;
    for (auto w : words_)
        s += std::popcount(w);
    return s;
}

std::vector<Label> InvSet::members() const
{
    std::vector<Label> out;
    for (size_t r = 0; r < idx_->count(); ++r)
        if ((words_[r / 64] >> (r % 64)) & 1u)
            out.push_back(idx_->unrank(r));
    std::sort(out.begin(), out.end(), LexLess{});
    return out;
}

size_t InvSet::hash() const
{
    size_t h = 1469598103934665603ull;
    for (auto w : words_)
        h = (h ^ w) * 1099511628211ull;
    return h;
}

InvSet full_inv_set(int N, int n)
{
    InvSet s(N, n);
    if (n + 1 <= N)
        for (Label K : enumerate_subsets(N, n + 1))
            s.insert(K);
    return s;
}

static void check_order(const LinearOrder& rho)
{
    if (rho.n < 0 || rho.n > rho.N || rho.N > max_ground)
        throw DomainError("linear order with bad (N,n)");
    if (rho.entries.size() != binomial(rho.N, rho.n))
        throw DomainError("linear order has the wrong length");
    std::set<uint64_t> seen;
    for (Label J : rho.entries) {
        if (J.size() != rho.n || !J.subset_of(Label::range(rho.N)) || !seen.insert(J.bits).second)
            throw DomainError("linear order entry malformed: " + to_string(J));
    }
}

// +1 for ->P(K), -1 for <-P(K), 0 for neither (1 when the packet has one member).
static int packet_direction(const std::unordered_map<uint64_t, size_t>& pos, Label K)
{
    auto p = packet_vec(K);
    bool fwd = true, bwd = true;
    for (size_t i = 0; i + 1 < p.size(); ++i) {
        size_t a = pos.at(p[i].bits), b = pos.at(p[i + 1].bits);
        if (a > b)
            fwd = false;
        else
            bwd = false;
    }
    if (fwd)
        return 1;
    if (bwd)
        return -1;
    return 0;
}

static std::unordered_map<uint64_t, size_t> position_map(const LinearOrder& rho)
{
    std::unordered_map<uint64_t, size_t> pos;
    for (size_t i = 0; i < rho.entries.size(); ++i)
        pos[rho.entries[i].bits] = i;
    return pos;
}

bool is_admissible(const LinearOrder& rho)
{
    check_order(rho);
    if (rho.n == rho.N)
        return true;
    auto pos = position_map(rho);
    for (Label K : enumerate_subsets(rho.N, rho.n + 1))
        if (packet_direction(pos, K) == 0)
            return false;
    return true;
}

InvSet inversion_set(const LinearOrder& rho)
{
    check_order(rho);
    InvSet s(rho.N, rho.n);
    if (rho.n == rho.N)
        return s;
    auto pos = position_map(rho);
    for (Label K : enumerate_subsets(rho.N, rho.n + 1)) {
        int d = packet_direction(pos, K);
        if (d == 0)
            throw DomainError("order is not admissible at packet " + to_string(K));
        // one-member packets (n = 0) count as lex ordered
        if (d < 0 && rho.n > 0)
            s.insert(K);
    }
    return s;
}

uint64_t for_each_A(int N, int n, const std::function<void(const std::vector<Label>&)>& visit, uint64_t cap)
{
    if (n < 0 || n > N || N > max_ground)
        throw DomainError("enumerate_A needs 0 <= n <= N");
    auto labels = enumerate_subsets(N, n);
    const size_t total = labels.size();
    SubsetIndex pidx(N, n + 1 <= N ? n + 1 : N);
    // for each label: (parent rank, position of the label inside ->P(parent))
    std::vector<std::vector<std::pair<size_t, int>>> memb(total);
    for (size_t i = 0; i < total; ++i) {
        if (n == N)
            break;
        for (Label K : envelope(labels[i], N)) {
            auto p = packet_vec(K);
            int at = int(std::find(p.begin(), p.end(), labels[i]) - p.begin());
            memb[i].push_back({pidx.rank(K), at});
        }
    }
    std::vector<int> placed(pidx.count(), 0), dir(pidx.count(), 0);
    std::vector<char> used(total, 0);
    std::vector<Label> cur;
    cur.reserve(total);
    uint64_t count = 0;
    const int psize = n + 1;

    std::function<void()> rec = [&]() {
        if (cur.size() == total) {
            if (++count > cap)
                throw ResourceError("enumerate_A exceeded the configured cap");
            visit(cur);
            return;
        }
        for (size_t i = 0; i < total; ++i) {
            if (used[i])
                continue;
            bool ok = true;
            for (auto [r, at] : memb[i]) {
                int c = placed[r];
                bool f = (dir[r] >= 0) && at == c;
                bool b = (dir[r] <= 0) && at == psize - 1 - c;
                if (!f && !b) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                continue;
            std::vector<int> saved;
            saved.reserve(memb[i].size());
            for (auto [r, at] : memb[i]) {
                saved.push_back(dir[r]);
                int c = placed[r];
                if (dir[r] == 0 && psize > 1) {
                    if (at == c && at != psize - 1 - c)
                        dir[r] = 1;
                    else if (at != c && at == psize - 1 - c)
                        dir[r] = -1;
                }
                ++placed[r];
            }
            used[i] = 1;
            cur.push_back(labels[i]);
            rec();
            cur.pop_back();
            used[i] = 0;
            for (size_t j = 0; j < memb[i].size(); ++j) {
                auto r = memb[i][j].first;
                --placed[r];
                dir[r] = saved[j];
            }
        }
    };
    rec();
    return count;
}

std::vector<LinearOrder> enumerate_A(int N, int n, uint64_t cap)
{
    std::vector<LinearOrder> out;
    for_each_A(
        N, n, [&](const std::vector<Label>& e) { out.push_back(LinearOrder{N, n, e}); }, cap);
    return out;
}

bool beginning_segment(const InvSet& U, Label L, bool forward)
{
    auto p = packet_vec(L);
    if (!forward)
        std::reverse(p.begin(), p.end());
    size_t k = 0;
    while (k < p.size() && U.contains(p[k]))
        ++k;
    for (size_t i = k; i < p.size(); ++i)
        if (U.contains(p[i]))
            return false;
    return true;
}

bool consistent_at(const InvSet& U, Label L)
{
    return beginning_segment(U, L, true) || beginning_segment(U, L, false);
}

bool is_consistent(const InvSet& U)
{
    int m = U.n() + 1;
    if (m + 1 > U.N())
        return true;
    for (Label L : enumerate_subsets(U.N(), m + 1))
        if (!consistent_at(U, L))
            return false;
    return true;
}

bool consistent_set_check(const std::vector<Label>& U, int N)
{
    if (U.empty())
        return true;
    int m = U.front().size();
    for (Label K : U)
        if (K.size() != m)
            throw DomainError("consistent_set_check: mixed cardinalities");
    if (m < 1 || m > N)
        throw DomainError("consistent_set_check: bad cardinality");
    InvSet s(N, m - 1);
    for (Label K : U)
        s.insert(K);
    return is_consistent(s);
}

LinearOrder witness(const InvSet& inv)
{
    int N = inv.N(), n = inv.n();
    auto labels = enumerate_subsets(N, n);
    std::unordered_map<uint64_t, size_t> id;
    for (size_t i = 0; i < labels.size(); ++i)
        id[labels[i].bits] = i;
    std::vector<std::vector<size_t>> succ(labels.size());
    std::vector<int> indeg(labels.size(), 0);
    if (n < N) {
        for (Label K : enumerate_subsets(N, n + 1)) {
            auto p = packet_vec(K);
            if (inv.contains(K))
                std::reverse(p.begin(), p.end());
            for (size_t i = 0; i + 1 < p.size(); ++i) {
                succ[id[p[i].bits]].push_back(id[p[i + 1].bits]);
                ++indeg[id[p[i + 1].bits]];
            }
        }
    }
    // labels are already in lex order, so index order is lex order
    std::priority_queue<size_t, std::vector<size_t>, std::greater<size_t>> ready;
    for (size_t i = 0; i < labels.size(); ++i)
        if (!indeg[i])
            ready.push(i);
    LinearOrder o{N, n, {}};
    while (!ready.empty()) {
        size_t i = ready.top();
        ready.pop();
        o.entries.push_back(labels[i]);
        for (size_t j : succ[i])
            if (--indeg[j] == 0)
                ready.push(j);
    }
    if (o.entries.size() != labels.size())
        throw DomainError("inversion set is not consistent (cyclic packet constraints)");
    return o;
}

size_t PosetGraph::find(const InvSet& s) const
{
    auto it = index.find(s);
    if (it == index.end())
        throw DomainError("class not in poset");
    return it->second;
}

PosetGraph enumerate_B(int N, int n, uint64_t cap)
{
    if (n < 0 || n > N || N > max_ground)
        throw DomainError("enumerate_B needs 0 <= n <= N");
    PosetGraph P;
    P.N = N;
    P.n = n;
    InvSet start(N, n);
    std::vector<Label> Ks = n < N ? enumerate_subsets(N, n + 1) : std::vector<Label>{};
    P.nodes.push_back(start);
    P.index.emplace(start, 0);
    P.out.emplace_back();
    std::deque<size_t> q{0};
    while (!q.empty()) {
        size_t u = q.front();
        q.pop_front();
        for (Label K : Ks) {
            if (P.nodes[u].contains(K))
                continue;
            InvSet next = P.nodes[u];
            next.insert(K);
            bool ok = true;
            if (n + 2 <= N)
                for (Label L : envelope(K, N))
                    if (!consistent_at(next, L)) {
                        ok = false;
                        break;
                    }
            if (!ok)
                continue;
            auto [it, fresh] = P.index.emplace(next, P.nodes.size());
            if (fresh) {
                if (P.nodes.size() >= cap)
                    throw ResourceError("enumerate_B exceeded the node cap");
                P.nodes.push_back(next);
                P.out.emplace_back();
                q.push_back(it->second);
            }
            P.out[u].push_back(P.edges.size());
            P.edges.push_back({u, it->second, K});
        }
    }
    P.bottom = 0;
    P.top = P.find(full_inv_set(N, n));
    return P;
}

std::vector<std::vector<Label>> maximal_chains(const PosetGraph& P, uint64_t cap)
{
    std::vector<std::vector<Label>> out;
    std::vector<Label> cur;
    std::function<void(size_t)> rec = [&](size_t u) {
        if (u == P.top) {
            if (out.size() >= cap)
                throw ResourceError("maximal_chains exceeded the cap");
            out.push_back(cur);
            return;
        }
        for (size_t e : P.out[u]) {
            cur.push_back(P.edges[e].label);
            rec(P.edges[e].dst);
            cur.pop_back();
        }
    };
    rec(P.bottom);
    return out;
}

uint64_t count_maximal_chains(const PosetGraph& P)
{
    // nodes are discovered in BFS order by rank, so a reverse sweep sees successors first
    std::vector<uint64_t> ways(P.nodes.size(), 0);
    std::vector<size_t> order(P.nodes.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return P.nodes[a].size() > P.nodes[b].size(); });
    for (size_t u : order) {
        if (u == P.top) {
            ways[u] = 1;
            continue;
        }
        for (size_t e : P.out[u])
            ways[u] += ways[P.edges[e].dst];
    }
    return ways[P.bottom];
}

LinearOrder project_order(const LinearOrder& rho, int k)
{
    if (k < 1 || k > rho.N || rho.n < 1)
        throw DomainError("project: k must lie in [N] and n >= 1");
    LinearOrder o{rho.N - 1, rho.n - 1, {}};
    for (Label J : rho.entries) {
        if (!J.contains(k))
            continue;
        Label r;
        for (int x : J.elements())
            if (x != k)
                r = r.with(x < k ? x : x - 1);
        o.entries.push_back(r);
    }
    return o;
}

BruhatClass project_class(const BruhatClass& c, int k)
{
    return BruhatClass{inversion_set(project_order(c.witness(), k))};
}

}  // namespace hbo
