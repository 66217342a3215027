#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <unordered_map>
#include <vector>

#include "hbo/combinatorics.hpp"

namespace hbo {

constexpr uint64_t default_max_nodes = 10'000'000;

struct LinearOrder {
    int N = 0;
    int n = 0;
    std::vector<Label> entries;
};

LinearOrder lex_order(int N, int n);
LinearOrder reverse_lex_order(int N, int n);

// A set of (n+1)-subsets of [N], stored as a bitset over colex ranks.
class InvSet {
public:
    InvSet() = default;
    InvSet(std::shared_ptr<const SubsetIndex> idx);
    InvSet(int N, int n);

    int N() const { return idx_->N(); }
    int n() const { return idx_->m() - 1; }
    const std::shared_ptr<const SubsetIndex>& index() const { return idx_; }

    bool contains(Label K) const;
    void insert(Label K);
    void erase(Label K);
    size_t size() const;
    std::vector<Label> members() const;  // lex order

    friend bool operator==(const InvSet& a, const InvSet& b) { return a.words_ == b.words_; }
    size_t hash() const;

private:
    std::shared_ptr<const SubsetIndex> idx_;
    std::vector<uint64_t> words_;
};

struct InvSetHash {
    size_t operator()(const InvSet& s) const { return s.hash(); }
};

InvSet full_inv_set(int N, int n);

bool is_admissible(const LinearOrder& rho);
// Throws DomainError when rho is not admissible.
InvSet inversion_set(const LinearOrder& rho);

// Backtracking enumeration; throws ResourceError once more than cap orders are produced.
std::vector<LinearOrder> enumerate_A(int N, int n, uint64_t cap = default_max_nodes);
uint64_t for_each_A(int N, int n, const std::function<void(const std::vector<Label>&)>& visit,
                    uint64_t cap = default_max_nodes);

bool consistent_set_check(const std::vector<Label>& U, int N);
// U ∩ P(L) is a beginning segment of ->P(L) or <-P(L).
bool consistent_at(const InvSet& U, Label L);
bool is_consistent(const InvSet& U);

// U ∩ P(L) is a beginning segment of ->P(L) (forward) or of <-P(L).
bool beginning_segment(const InvSet& U, Label L, bool forward);

// Lexicographically least admissible order with the given inversion set.
LinearOrder witness(const InvSet& inv);

struct BruhatClass {
    InvSet inv;
    LinearOrder witness() const { return hbo::witness(inv); }
};

struct PosetEdge {
    size_t src;
    size_t dst;
    Label label;
};

struct PosetGraph {
    int N = 0;
    int n = 0;
    std::vector<InvSet> nodes;
    std::vector<PosetEdge> edges;
    std::vector<std::vector<size_t>> out;  // edge indices per node
    std::unordered_map<InvSet, size_t, InvSetHash> index;
    size_t bottom = 0;
    size_t top = 0;

    size_t find(const InvSet& s) const;
};

PosetGraph enumerate_B(int N, int n, uint64_t cap = default_max_nodes);

std::vector<std::vector<Label>> maximal_chains(const PosetGraph& P, uint64_t cap = default_max_nodes);
uint64_t count_maximal_chains(const PosetGraph& P);

BruhatClass project_class(const BruhatClass& c, int k);
LinearOrder project_order(const LinearOrder& rho, int k);

}  // namespace hbo
