#include "hbo/realization.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

namespace hbo {

uint64_t MapTable::rows() const
{
    uint64_t r = 1;
    for (uint32_t s : in_sizes)
        r *= s;
    return r;
}

uint64_t MapTable::encode(const uint32_t* in) const
{
    uint64_t x = 0;
    for (size_t i = 0; i < in_sizes.size(); ++i)
        x = x * in_sizes[i] + in[i];
    return x;
}

void MapTable::apply(const uint32_t* in, uint32_t* out) const
{
    const size_t m = out_sizes.size();
    const uint32_t* row = flat.data() + encode(in) * m;
    std::copy(row, row + m, out);
}

MapTable MapTable::from_function(std::vector<uint32_t> in_sizes, std::vector<uint32_t> out_sizes,
                                 const std::function<std::vector<uint32_t>(const std::vector<uint32_t>&)>& f)
{
    MapTable t{std::move(in_sizes), std::move(out_sizes), {}};
    const uint64_t rows = t.rows();
    t.flat.reserve(rows * t.out_sizes.size());
    std::vector<uint32_t> in(t.in_sizes.size(), 0);
    for (uint64_t r = 0; r < rows; ++r) {
        auto out = f(in);
        if (out.size() != t.out_sizes.size())
            throw DomainError("table function returned the wrong arity");
        for (size_t i = 0; i < out.size(); ++i) {
            if (out[i] >= t.out_sizes[i])
                throw DomainError("table function left its carrier");
            t.flat.push_back(out[i]);
        }
        for (size_t i = in.size(); i-- > 0;) {
            if (++in[i] < t.in_sizes[i])
                break;
            in[i] = 0;
        }
    }
    return t;
}

MapTable MapTable::identity(std::vector<uint32_t> sizes)
{
    auto out = sizes;
    return from_function(std::move(sizes), std::move(out), [](const std::vector<uint32_t>& v) { return v; });
}

std::string map_id(char kind, Label K, bool hatted)
{
    return std::string(1, kind) + (hatted ? "^" : "") + to_string(K);
}

std::string map_id(const OpToken& t)
{
    return map_id(t.kind, t.K, t.hatted);
}

uint32_t FiniteRealization::carrier(Label J) const
{
    auto it = carriers.find(J);
    return it != carriers.end() ? it->second : default_size;
}

const MapTable& FiniteRealization::table(const OpToken& t) const
{
    auto it = tables.find(map_id(t));
    if (it == tables.end())
        throw DomainError("realization has no table for " + map_id(t));
    return it->second;
}

nlohmann::json to_json(const FiniteRealization& r)
{
    nlohmann::json j;
    j["default"] = r.default_size;
    j["carriers"] = nlohmann::json::object();
    for (auto& [l, s] : r.carriers)
        j["carriers"][to_string(l)] = s;
    j["tables"] = nlohmann::json::object();
    for (auto& [id, t] : r.tables)
        j["tables"][id] = {{"arityIn", t.in_sizes.size()},
                           {"arityOut", t.out_sizes.size()},
                           {"inSizes", t.in_sizes},
                           {"outSizes", t.out_sizes},
                           {"flatTable", t.flat}};
    return j;
}

FiniteRealization realization_from_json(const nlohmann::json& j)
{
    FiniteRealization r;
    r.default_size = j.value("default", 1u);
    if (j.contains("carriers"))
        for (auto& [k, v] : j["carriers"].items())
            r.carriers[parse_label(k)] = v.get<uint32_t>();
    if (!j.contains("tables"))
        throw DomainError("realization JSON needs a tables object");
    for (auto& [id, v] : j["tables"].items()) {
        MapTable t;
        size_t ai = v.at("arityIn").get<size_t>(), ao = v.at("arityOut").get<size_t>();
        t.in_sizes = v.value("inSizes", std::vector<uint32_t>(ai, r.default_size));
        t.out_sizes = v.value("outSizes", std::vector<uint32_t>(ao, r.default_size));
        t.flat = v.at("flatTable").get<std::vector<uint32_t>>();
        if (t.in_sizes.size() != ai || t.out_sizes.size() != ao)
            throw DomainError("table " + id + ": sizes disagree with the arities");
        if (t.flat.size() != t.rows() * ao)
            throw DomainError("table " + id + ": flatTable has " + std::to_string(t.flat.size()) +
                              " entries, expected " + std::to_string(t.rows() * ao));
        for (size_t i = 0; i < t.flat.size(); ++i)
            if (t.flat[i] >= t.out_sizes[i % ao])
                throw DomainError("table " + id + ": entry out of range");
        r.tables[id] = std::move(t);
    }
    return r;
}

static std::string compact_tokens(const OpWord& w, int ground)
{
    std::string s;
    for (const auto& t : w.tokens) {
        if (!s.empty())
            s += ' ';
        if (!t.is_map()) {
            s += "P" + std::to_string(t.a);
            continue;
        }
        s += (t.hatted ? "^" : "") + std::string(1, t.kind) +
             std::to_string(complement(t.K, ground).min_element());
        if (t.hatted) {
            s += "@";
            for (size_t i = 0; i < t.pos.size(); ++i)
                s += (i ? "," : "") + std::to_string(t.pos[i]);
        } else if (!t.whole) {
            s += "@" + std::to_string(t.a);
        }
    }
    return s;
}

nlohmann::json to_json(const EquationPair& e)
{
    return {{"family", family_name(e.family)},
            {"N", e.N},
            {"hatted", e.hatted},
            {"lhs", compact_tokens(e.lhs, e.ground())},
            {"rhs", compact_tokens(e.rhs, e.ground())},
            {"text", render_equation(e)}};
}

EquationPair equation_from_json(const nlohmann::json& j)
{
    Family f = parse_family(j.at("family").get<std::string>());
    int N = j.at("N").get<int>();
    bool hatted = j.value("hatted", false);
    EquationPair e = generate_equation(N, f);
    if (hatted)
        e = collapse_hatted(e);
    if (j.contains("lhs") || j.contains("rhs")) {
        e.lhs.tokens = parse_tokens(j.at("lhs").get<std::string>(), e.ground());
        e.rhs.tokens = parse_tokens(j.at("rhs").get<std::string>(), e.ground());
        e.lhs.target = simulate(e.lhs, e.lhs.source);
        e.rhs.target = simulate(e.rhs, e.rhs.source);
    }
    return e;
}

namespace {

// A word compiled against its label simulation: only value moves remain.
struct Instr {
    const MapTable* table = nullptr;  // null: transposition at a
    int a = 0;
    size_t nin = 0;
    size_t nout = 0;
    std::vector<int> pos;  // hatted slots
};

struct Program {
    std::vector<Instr> code;
    std::vector<Label> final_labels;
};

Program compile(const OpWord& w, const FiniteRealization& r)
{
    Program p;
    std::vector<Label> s = w.source;
    for (size_t i = w.tokens.size(); i-- > 0;) {
        const OpToken& t = w.tokens[i];
        Instr ins;
        ins.a = t.a;
        if (t.is_map()) {
            ins.table = &r.table(t);
            ins.nin = map_inputs(t).size();
            ins.nout = map_outputs(t).size();
            if (t.hatted)
                ins.pos = t.pos;
        }
        apply_token(s, t);
        p.code.push_back(std::move(ins));
    }
    p.final_labels = s;
    return p;
}

void run(const Program& p, std::vector<uint32_t>& v)
{
    uint32_t in[64], out[64];
    for (const Instr& ins : p.code) {
        if (!ins.table) {
            std::swap(v[ins.a - 1], v[ins.a]);
            continue;
        }
        if (!ins.pos.empty()) {
            for (size_t i = 0; i < ins.nin; ++i)
                in[i] = v[ins.pos[i] - 1];
            ins.table->apply(in, out);
            for (size_t i = 0; i < ins.nout; ++i)
                v[ins.pos[i] - 1] = out[i];
            continue;
        }
        auto first = v.begin() + (ins.a - 1);
        std::copy(first, first + ins.nin, in);
        ins.table->apply(in, out);
        if (ins.nin == ins.nout) {
            std::copy(out, out + ins.nout, first);
        } else {
            v.erase(first, first + ins.nin);
            v.insert(v.begin() + (ins.a - 1), out, out + ins.nout);
        }
    }
}

}  // namespace

void check_signature(const EquationPair& e, const FiniteRealization& r)
{
    for (const OpWord* w : {&e.lhs, &e.rhs})
        for (const OpToken& t : w->tokens) {
            if (!t.is_map())
                continue;
            const MapTable& tab = r.table(t);
            auto in = map_inputs(t), out = map_outputs(t);
            if (in.size() > 64 || out.size() > 64)
                throw DomainError("map arity above 64");
            std::vector<uint32_t> want_in, want_out;
            for (Label l : in)
                want_in.push_back(r.carrier(l));
            for (Label l : out)
                want_out.push_back(r.carrier(l));
            if (tab.in_sizes != want_in || tab.out_sizes != want_out)
                throw DomainError("table " + map_id(t) + " does not match the carriers of its signature");
        }
}

std::vector<uint32_t> evaluate(const OpWord& w, const FiniteRealization& r, std::vector<uint32_t> values)
{
    if (values.size() != w.source.size())
        throw DomainError("value tuple does not match the source sequence");
    Program p = compile(w, r);
    run(p, values);
    return values;
}

std::string equation_id(const EquationPair& e)
{
    return family_name(e.family) + "-" + std::to_string(e.N) + (e.hatted ? "-hatted" : "");
}

VerificationReport verify(const EquationPair& e, const FiniteRealization& r, const VerifyOptions& opt)
{
    auto t0 = std::chrono::steady_clock::now();
    check_signature(e, r);
    if (e.lhs.source != e.rhs.source)
        throw DomainError("the two sides start from different sequences");
    Program pl = compile(e.lhs, r), pr = compile(e.rhs, r);
    if (!same_modulo_alias(pl.final_labels, pr.final_labels, e.ground()))
        throw DomainError("the two sides end in different sequences");

    std::vector<uint32_t> radix;
    uint64_t total = 1;
    bool overflow = false;
    for (Label l : e.lhs.source) {
        radix.push_back(r.carrier(l));
        if (total > opt.max_evals)
            overflow = true;
        else
            total *= radix.back();
    }
    VerificationReport rep;
    rep.equation = equation_id(e);
    const bool exhaustive = !overflow && total <= opt.max_evals;
    if (!exhaustive && opt.sample == 0)
        throw ResourceError("verification needs more than " + std::to_string(opt.max_evals) +
                            " evaluations; use sampling");
    rep.exhaustive = exhaustive;
    const uint64_t count = exhaustive ? total : opt.sample;

    auto tuple_at = [&](uint64_t idx, std::mt19937_64* rng) {
        std::vector<uint32_t> v(radix.size());
        if (rng) {
            for (size_t i = 0; i < v.size(); ++i)
                v[i] = uint32_t((*rng)() % radix[i]);
        } else {
            for (size_t i = v.size(); i-- > 0;) {
                v[i] = uint32_t(idx % radix[i]);
                idx /= radix[i];
            }
        }
        return v;
    };

    std::atomic<uint64_t> first_bad{UINT64_MAX};
    std::mutex mu;
    std::optional<Counterexample> found;
    unsigned nt = std::max(1u, std::min<unsigned>(opt.threads, unsigned(std::max<uint64_t>(1, count / 4096))));
    auto work = [&](unsigned tid) {
        uint64_t lo = count * tid / nt, hi = count * (tid + 1) / nt;
        std::mt19937_64 rng(opt.seed + tid);
        for (uint64_t i = lo; i < hi; ++i) {
            if (i > first_bad.load(std::memory_order_relaxed))
                return;
            auto in = tuple_at(i, exhaustive ? nullptr : &rng);
            auto a = in, b = in;
            run(pl, a);
            run(pr, b);
            if (a != b) {
                std::lock_guard lk(mu);
                if (i < first_bad) {
                    first_bad = i;
                    found = Counterexample{in, a, b};
                }
                return;
            }
        }
    };
    if (nt == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nt; ++t)
            pool.emplace_back(work, t);
        for (auto& th : pool)
            th.join();
    }
    rep.counterexample = found;
    rep.total = found ? first_bad.load() + 1 : count;
    rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

FiniteGroup cyclic_group(uint32_t n)
{
    FiniteGroup g{n, std::vector<uint32_t>(n * n)};
    for (uint32_t a = 0; a < n; ++a)
        for (uint32_t b = 0; b < n; ++b)
            g.mul[a * n + b] = (a + b) % n;
    return g;
}

FiniteGroup symmetric_group3()
{
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p{0, 1, 2};
    do
        perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    FiniteGroup g{6, std::vector<uint32_t>(36)};
    for (uint32_t a = 0; a < 6; ++a)
        for (uint32_t b = 0; b < 6; ++b) {
            std::array<int, 3> c;
            for (int i = 0; i < 3; ++i)
                c[i] = perms[a][perms[b][i]];
            g.mul[a * 6 + b] = uint32_t(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    return g;
}

FiniteRealization uniform_realization(
    const EquationPair& e, uint32_t size,
    const std::function<std::vector<uint32_t>(const std::vector<uint32_t>&, size_t n_out)>& f)
{
    FiniteRealization r;
    r.default_size = size;
    for (const OpWord* w : {&e.lhs, &e.rhs})
        for (const OpToken& t : w->tokens) {
            if (!t.is_map() || r.tables.count(map_id(t)))
                continue;
            size_t nin = map_inputs(t).size(), nout = map_outputs(t).size();
            r.tables[map_id(t)] = MapTable::from_function(
                std::vector<uint32_t>(nin, size), std::vector<uint32_t>(nout, size),
                [&](const std::vector<uint32_t>& v) { return f(v, nout); });
        }
    return r;
}

FiniteRealization group_realization(const EquationPair& e, const FiniteGroup& g)
{
    return uniform_realization(e, g.n, [&](const std::vector<uint32_t>& v, size_t nout) {
        if (v.size() != 2 || nout != 2)
            throw DomainError("group realization needs binary maps");
        return std::vector<uint32_t>{v[0], g(v[0], v[1])};
    });
}

FiniteRealization transposition_realization(const EquationPair& e, uint32_t size)
{
    return uniform_realization(e, size, [](const std::vector<uint32_t>& v, size_t nout) {
        if (v.size() != nout)
            throw DomainError("transposition realization needs maps with as many outputs as inputs");
        return std::vector<uint32_t>(v.rbegin(), v.rend());
    });
}

FiniteRealization trivial_realization(const EquationPair& e)
{
    return uniform_realization(e, 1,
                               [](const std::vector<uint32_t>&, size_t nout) { return std::vector<uint32_t>(nout, 0); });
}

static std::string tuple_string(const std::vector<uint32_t>& v)
{
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

FiniteRealization lift_simplex_solution(const FiniteRealization& r, int N, const std::vector<MapTable>& f,
                                        const MapTable& top)
{
    if (N < 1 || N + 2 > max_ground)
        throw DomainError("lift needs 1 <= N");
    if (f.size() != size_t(N + 1))
        throw DomainError("lift needs N+1 endofunctions");
    for (const auto& fj : f)
        if (fj.in_sizes.size() != 1 || fj.out_sizes != fj.in_sizes)
            throw DomainError("lift: every f_j must be an endofunction of one carrier");
    const int M = N + 2;
    FiniteRealization out;
    out.default_size = r.default_size;
    for (Label L : enumerate_subsets(M, N)) {
        if (L.contains(M)) {
            out.carriers[L] = r.carrier(L.without(M));
        } else {
            int j = complement(L, M).without(M).min_element();
            out.carriers[L] = f[j - 1].in_sizes[0];
        }
    }
    auto f_of = [&](Label l) { return complement(l, M).without(M).min_element(); };

    // The map indexed by N+2 acts on the pairs {i, N+2}.
    Label Ktop = Label::range(N + 1);
    auto top_in = map_inputs(OpToken::hat('R', Ktop, {}));
    std::vector<uint32_t> sizes;
    for (Label l : top_in)
        sizes.push_back(out.carriers.at(l));
    if (top.in_sizes != sizes || top.out_sizes != sizes)
        throw DomainError("lift: the new map does not match the carriers of its slots");
    std::vector<uint32_t> u(sizes.size(), 0), fu(sizes.size()), a(sizes.size()), b(sizes.size());
    for (uint64_t row = 0; row < top.rows(); ++row) {
        for (size_t i = 0; i < u.size(); ++i)
            f[f_of(top_in[i]) - 1].apply(&u[i], &fu[i]);
        top.apply(fu.data(), a.data());
        top.apply(u.data(), b.data());
        for (size_t i = 0; i < u.size(); ++i)
            f[f_of(top_in[i]) - 1].apply(&b[i], &b[i]);
        if (a != b)
            throw PreconditionError("lift: f does not commute with the new map at " + tuple_string(u) + ": " +
                                    tuple_string(a) + " vs " + tuple_string(b));
        for (size_t i = u.size(); i-- > 0;) {
            if (++u[i] < sizes[i])
                break;
            u[i] = 0;
        }
    }
    out.tables[map_id('R', Ktop, true)] = top;

    for (int j = 1; j <= N + 1; ++j) {
        Label K = complement(Label::of({j}), M);
        auto in = map_inputs(OpToken::hat('R', K, {}));
        auto old_in = map_inputs(OpToken::hat('R', K.without(M), {}));
        const MapTable& old = r.tables.at(map_id('R', K.without(M), true));
        size_t fslot = in.size();
        std::vector<Label> rest;
        for (size_t i = 0; i < in.size(); ++i) {
            if (in[i].contains(M))
                rest.push_back(in[i].without(M));
            else
                fslot = i;
        }
        if (rest != old_in || fslot == in.size())
            throw DomainError("lift: unexpected slot layout");
        std::vector<uint32_t> isz;
        for (Label l : in)
            isz.push_back(out.carriers.at(l));
        const MapTable& fj = f[j - 1];
        out.tables[map_id('R', K, true)] = MapTable::from_function(isz, isz, [&](const std::vector<uint32_t>& v) {
            std::vector<uint32_t> x, y(old.out_sizes.size()), res(v.size());
            for (size_t i = 0; i < v.size(); ++i)
                if (i != fslot)
                    x.push_back(v[i]);
            old.apply(x.data(), y.data());
            for (size_t i = 0, k = 0; i < v.size(); ++i) {
                if (i == fslot)
                    fj.apply(&v[i], &res[i]);
                else
                    res[i] = y[k++];
            }
            return res;
        });
    }
    return out;
}

static void require_polygon_solution(const FiniteRealization& r, int N)
{
    if (!r.carriers.empty())
        throw DomainError("polygon reductions need uniform carriers");
    auto e = collapse_hatted(generate_equation(N, Family::polygon));
    auto rep = verify(e, r);
    if (!rep.holds())
        throw PreconditionError("input does not satisfy the " + std::to_string(N) + "-gon equation at " +
                                tuple_string(rep.counterexample->input));
}

FiniteRealization reduce_polygon_even_to_odd(const FiniteRealization& r, int N)
{
    if (N < 4 || N % 2)
        throw DomainError("even-to-odd reduction needs an even N >= 4");
    require_polygon_solution(r, N);
    FiniteRealization out;
    out.default_size = r.default_size;
    const int M = N + 1;
    for (int k = 1; k <= M; ++k) {
        Label K = complement(Label::of({k}), M);
        if (k == 1) {
            size_t n = map_inputs(OpToken::hat('T', K, {})).size();
            out.tables[map_id('T', K, true)] = MapTable::identity(std::vector<uint32_t>(n, r.default_size));
        } else {
            out.tables[map_id('T', K, true)] = r.tables.at(map_id('T', complement(Label::of({k - 1}), N), true));
        }
    }
    return out;
}

FiniteRealization reduce_polygon_odd_to_even(const FiniteRealization& r, int N)
{
    if (N < 3 || N % 2 == 0)
        throw DomainError("odd-to-even reduction needs an odd N >= 3");
    require_polygon_solution(r, N);
    FiniteRealization out;
    out.default_size = r.default_size;
    const int M = N + 1;
    for (int j = 1; j <= M; ++j) {
        Label K = complement(Label::of({j}), M);
        size_t n = map_inputs(OpToken::hat('T', K, {})).size();
        std::vector<uint32_t> sz(n, r.default_size);
        if (j == 1) {
            out.tables[map_id('T', K, true)] = MapTable::identity(sz);
            continue;
        }
        const MapTable& old = r.tables.at(map_id('T', complement(Label::of({j - 1}), N), true));
        out.tables[map_id('T', K, true)] = MapTable::from_function(sz, sz, [&](const std::vector<uint32_t>& v) {
            std::vector<uint32_t> res(v.size());
            res[0] = v[0];
            old.apply(v.data() + 1, res.data() + 1);
            return res;
        });
    }
    return out;
}

FiniteRealization compose_three_color(const FiniteRealization& ts, int N)
{
    if (N < 3 || N > max_ground)
        throw DomainError("three-color composition needs N >= 3");
    FiniteRealization out;
    out.default_size = ts.default_size;
    out.carriers = ts.carriers;
    for (Label K : enumerate_subsets(N, N - 1)) {
        auto in = packet_vec(K);
        std::vector<Label> outl(in.rbegin(), in.rend());
        auto h = half_packets(K);
        const MapTable& T = ts.table(OpToken::map('T', K, 1));
        const MapTable& S = ts.table(OpToken::map('S', K, 1));
        if (T.in_sizes.size() != h.odd.size() || T.out_sizes.size() != h.even.size() ||
            S.in_sizes.size() != h.even.size() || S.out_sizes.size() != h.odd.size())
            throw DomainError("three-color composition: arity mismatch at " + to_string(K));
        std::vector<uint32_t> isz, osz;
        for (Label l : in)
            isz.push_back(ts.carrier(l));
        for (Label l : outl)
            osz.push_back(ts.carrier(l));
        std::vector<char> out_is_even;
        for (Label l : outl)
            out_is_even.push_back(std::find(h.even.begin(), h.even.end(), l) != h.even.end());
        out.tables[map_id('R', K, false)] = MapTable::from_function(isz, osz, [&](const std::vector<uint32_t>& v) {
            std::vector<uint32_t> to, se;
            for (size_t i = 0; i < v.size(); ++i)
                (i % 2 == 0 ? to : se).push_back(v[i]);
            std::vector<uint32_t> tout(T.out_sizes.size()), sout(S.out_sizes.size()), res;
            T.apply(to.data(), tout.data());
            S.apply(se.data(), sout.data());
            size_t ti = 0, si = 0;
            for (char ev : out_is_even)
                res.push_back(ev ? tout[ti++] : sout[si++]);
            return res;
        });
    }
    return out;
}

std::vector<TripleSearchEntry> search_triple_n3()
{
    const int N = 3;
    auto d = decompose_simplex(N);
    auto poly = generate_equation(N, Family::polygon);
    auto yb = generate_equation(N - 1, Family::simplex);
    auto Ks = enumerate_subsets(N, N - 1);
    std::vector<TripleSearchEntry> out;
    for (uint32_t code = 0; code < (1u << 12); ++code) {
        FiniteRealization ts;
        ts.default_size = 2;
        uint32_t c = code;
        for (char kind : {'T', 'S'})
            for (Label K : Ks) {
                MapTable t{{2}, {2}, {c & 1u, (c >> 1) & 1u}};
                c >>= 2;
                ts.tables[map_id(kind, K, false)] = t;
            }
        TripleSearchEntry e{ts, verify(poly, ts).holds(), verify(d.red, ts).holds(), verify(d.green, ts).holds(),
                            verify(yb, compose_three_color(ts, N)).holds()};
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace hbo
