#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "hbo/bruhat.hpp"

using namespace hbo;

static LinearOrder order(int N, int n, std::initializer_list<const char*> xs)
{
    LinearOrder r{N, n, {}};
    for (auto x : xs)
        r.entries.push_back(parse_label(x));
    return r;
}

TEST_CASE("admissibility of single orders")
{
    auto rho = order(4, 2, {"12", "34", "14", "13", "24", "23"});
    REQUIRE(is_admissible(rho));
    CHECK(inversion_set(rho).members() == std::vector<Label>{parse_label("134"), parse_label("234")});
    CHECK_FALSE(is_admissible(order(4, 2, {"12", "23", "13", "14", "24", "34"})));
    CHECK_THROWS_AS(inversion_set(order(4, 2, {"12", "23", "13", "14", "24", "34"})), DomainError);
    CHECK(is_admissible(lex_order(5, 2)));
    CHECK(is_admissible(reverse_lex_order(5, 2)));
    CHECK(inversion_set(lex_order(5, 2)).size() == 0);
    CHECK(inversion_set(reverse_lex_order(5, 2)) == full_inv_set(5, 2));
}

TEST_CASE("enumerate_A agrees with brute force over permutations")
{
    for (auto [N, n] : {std::pair{3, 1}, std::pair{4, 1}, std::pair{4, 2}}) {
        auto subs = enumerate_subsets(N, n);
        std::vector<size_t> p(subs.size());
        std::iota(p.begin(), p.end(), 0);
        uint64_t brute = 0;
        do {
            LinearOrder r{N, n, {}};
            for (size_t i : p)
                r.entries.push_back(subs[i]);
            brute += is_admissible(r);
        } while (std::next_permutation(p.begin(), p.end()));
        CHECK(enumerate_A(N, n).size() == brute);
    }
    CHECK(enumerate_A(4, 2).size() == 16);
    CHECK(enumerate_A(3, 1).size() == 6);
    CHECK_THROWS_AS(enumerate_A(5, 1, 10), ResourceError);
}

TEST_CASE("consistent sets")
{
    CHECK(consistent_set_check({parse_label("134"), parse_label("234")}, 4));
    CHECK_FALSE(consistent_set_check({parse_label("124")}, 4));
    CHECK(consistent_set_check({}, 4));
}

TEST_CASE("inversion sets are exactly the consistent sets")
{
    for (auto [N, n] : {std::pair{4, 1}, std::pair{5, 2}, std::pair{5, 3}}) {
        std::set<std::vector<Label>> inv;
        for_each_A(N, n, [&](const std::vector<Label>& e) {
            inv.insert(inversion_set(LinearOrder{N, n, e}).members());
        });
        auto K = enumerate_subsets(N, n + 1);
        std::set<std::vector<Label>> cons;
        for (uint64_t m = 0; m < (uint64_t{1} << K.size()); ++m) {
            std::vector<Label> U;
            for (size_t i = 0; i < K.size(); ++i)
                if (m >> i & 1)
                    U.push_back(K[i]);
            if (consistent_set_check(U, N))
                cons.insert(U);
        }
        CHECK(inv == cons);
    }
}

TEST_CASE("higher Bruhat posets")
{
    auto B30 = enumerate_B(3, 0);
    CHECK(B30.nodes.size() == 8);
    CHECK(B30.edges.size() == 12);
    CHECK(count_maximal_chains(B30) == 6);

    auto B31 = enumerate_B(3, 1);
    CHECK(B31.nodes.size() == 6);
    CHECK(count_maximal_chains(B31) == 2);

    auto B42 = enumerate_B(4, 2);
    auto chains = maximal_chains(B42);
    REQUIRE(chains.size() == 2);
    std::set<std::vector<Label>> got(chains.begin(), chains.end());
    auto L = [](std::initializer_list<const char*> xs) {
        std::vector<Label> v;
        for (auto x : xs)
            v.push_back(parse_label(x));
        return v;
    };
    CHECK(got == std::set<std::vector<Label>>{L({"123", "124", "134", "234"}), L({"234", "134", "124", "123"})});

    for (int N = 2; N <= 6; ++N)
        CHECK(count_maximal_chains(enumerate_B(N, N - 1)) == 1);
    CHECK(enumerate_B(4, 1).nodes.size() == 24);
    CHECK(B42.nodes.size() == 8);
    CHECK(count_maximal_chains(enumerate_B(4, 1)) == 16);
    CHECK(enumerate_B(5, 1).nodes.size() == 120);
}

TEST_CASE("witness reproduces the class")
{
    auto P = enumerate_B(5, 2);
    for (const auto& s : P.nodes) {
        auto w = witness(s);
        CHECK(is_admissible(w));
        CHECK(inversion_set(w) == s);
    }
}

TEST_CASE("projection of orders")
{
    auto rho = lex_order(5, 2);
    auto p5 = project_order(rho, 5);
    CHECK(p5.N == 4);
    CHECK(p5.entries == lex_order(4, 1).entries);
    LinearOrder alpha{4, 2, {}};
    for (auto x : {"12", "13", "23", "14", "24", "34"})
        alpha.entries.push_back(parse_label(x));
    CHECK(inversion_set(project_order(lex_order(5, 3), 5)) == inversion_set(alpha));
    CHECK(is_admissible(project_order(reverse_lex_order(6, 3), 1)));
}

TEST_CASE("class projection is monotone")
{
    auto P = enumerate_B(5, 3);
    for (const auto& e : P.edges) {
        if (!e.label.contains(5))
            continue;
        auto a = project_class(BruhatClass{P.nodes[e.src]}, 5).inv;
        auto b = project_class(BruhatClass{P.nodes[e.dst]}, 5).inv;
        CHECK_FALSE(a.contains(e.label.without(5)));
        a.insert(e.label.without(5));
        CHECK(a == b);
    }
    auto top = project_class(BruhatClass{P.nodes[P.top]}, 5).inv;
    CHECK(top == full_inv_set(4, 2));
}
