#include "hbo/combinatorics.hpp"

#include <algorithm>

namespace hbo {

Label Label::of(std::initializer_list<int> elems)
{
    Label l;
    for (int k : elems) {
        if (k < 0 || k > max_ground)
            throw DomainError("label element out of range");
        l = l.with(k);
    }
    return l;
}

Label Label::range(int N)
{
    if (N < 0 || N > max_ground)
        throw DomainError("ground set size out of range");
    return Label(((uint64_t{1} << N) - 1) << 1);
}

std::vector<int> Label::elements() const
{
    std::vector<int> out;
    for (uint64_t b = bits; b; b &= b - 1)
        out.push_back(std::countr_zero(b));
    return out;
}

bool lex_less(Label a, Label b)
{
    uint64_t x = a.bits ^ b.bits;
    if (!x)
        return false;
    uint64_t low = x & (~x + 1);
    uint64_t above = ~((low << 1) - 1);
    // the side holding the first differing element is smaller unless the other one has ended
    if (a.bits & low)
        return (b.bits & above) != 0;
    return (a.bits & above) == 0;
}

std::vector<Label> packet_vec(Label K)
{
    if (K.empty())
        throw DomainError("packet of the empty set");
    auto el = K.elements();
    std::vector<Label> out;
    out.reserve(el.size());
    for (auto it = el.rbegin(); it != el.rend(); ++it)
        out.push_back(K.without(*it));
    return out;
}

HalfPackets half_packets(Label K)
{
    HalfPackets h;
    auto p = packet_vec(K);
    for (size_t i = 0; i < p.size(); ++i)
        (i % 2 == 0 ? h.odd : h.even).push_back(p[i]);
    return h;
}

std::vector<Label> envelope(Label J, int N)
{
    if (J.size() > N - 1)
        throw DomainError("envelope needs |J| <= N-1");
    std::vector<Label> out;
    for (int k = 1; k <= N; ++k)
        if (!J.contains(k))
            out.push_back(J.with(k));
    std::sort(out.begin(), out.end(), LexLess{});
    return out;
}

std::vector<Label> enumerate_subsets(int N, int n)
{
    if (n < 0 || N < 0 || n > N || N > max_ground)
        throw DomainError("enumerate_subsets needs 0 <= n <= N <= 32");
    std::vector<Label> out;
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i)
        c[i] = i + 1;
    while (true) {
        Label l;
        for (int x : c)
            l = l.with(x);
        out.push_back(l);
        int i = n - 1;
        while (i >= 0 && c[i] == N - n + i + 1)
            --i;
        if (i < 0)
            break;
        ++c[i];
        for (int j = i + 1; j < n; ++j)
            c[j] = c[j - 1] + 1;
    }
    return out;
}

bool dependent(Label a, Label b)
{
    return a != b && (a | b).size() == a.size() + 1;
}

Label complement(Label J, int N)
{
    return Label(Label::range(N).bits & ~J.bits);
}

uint64_t binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    uint64_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * uint64_t(n - k + i) / uint64_t(i);
    return r;
}

static std::string join_elements(const std::vector<int>& el)
{
    bool wide = std::any_of(el.begin(), el.end(), [](int x) { return x > 9; });
    std::string s;
    if (wide) {
        s = "{";
        for (size_t i = 0; i < el.size(); ++i)
            s += (i ? "," : "") + std::to_string(el[i]);
        s += "}";
    } else {
        for (int x : el)
            s += std::to_string(x);
    }
    return s;
}

std::string to_string(Label J)
{
    if (J.empty())
        return "{}";
    return join_elements(J.elements());
}

std::string to_hat_string(Label J, int N)
{
    std::string s = is_placeholder(J) ? "0^" : "^";
    return s + join_elements(complement(J.without(0), N).elements());
}

std::string hat_name(Label K, int N)
{
    std::string s = is_placeholder(K) ? "0" : "";
    auto el = complement(K.without(0), N).elements();
    if (el.size() == 1)
        return s + std::to_string(el[0]) + "̂";
    return s + join_elements(el) + "̂";
}

Label parse_label(std::string_view s)
{
    Label l;
    if (s == "{}" || s.empty())
        return l;
    if (s.front() == '{') {
        if (s.back() != '}')
            throw DomainError("bad label: " + std::string(s));
        std::string body(s.substr(1, s.size() - 2));
        size_t i = 0;
        while (i < body.size()) {
            size_t j = body.find(',', i);
            if (j == std::string::npos)
                j = body.size();
            int k = std::stoi(body.substr(i, j - i));
            l = l.with(k);
            i = j + 1;
        }
        return l;
    }
    for (char c : s) {
        if (c < '0' || c > '9')
            throw DomainError("bad label: " + std::string(s));
        l = l.with(c - '0');
    }
    return l;
}

std::string to_string(const std::vector<Label>& seq)
{
    std::string s = "(";
    for (size_t i = 0; i < seq.size(); ++i)
        s += (i ? "," : "") + to_string(seq[i]);
    return s + ")";
}

SubsetIndex::SubsetIndex(int N, int m) : N_(N), m_(m)
{
    by_rank_ = enumerate_subsets(N, m);
    std::sort(by_rank_.begin(), by_rank_.end(), [this](Label a, Label b) { return rank(a) < rank(b); });
}

size_t SubsetIndex::rank(Label S) const
{
    size_t r = 0;
    int i = 1;
    for (uint64_t b = S.bits; b; b &= b - 1, ++i)
        r += binomial(std::countr_zero(b) - 1, i);
    return r;
}

}  // namespace hbo
