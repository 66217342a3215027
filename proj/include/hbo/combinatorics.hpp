#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hbo {

constexpr int max_ground = 32;

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A finite subset of {0,1,...,32}. Element 0 only occurs in placeholder labels.
struct Label {
    uint64_t bits = 0;

    constexpr Label() = default;
    constexpr explicit Label(uint64_t b) : bits(b) {}

    static Label of(std::initializer_list<int> elems);
    static Label range(int N);  // {1,...,N}

    int size() const { return std::popcount(bits); }
    bool empty() const { return bits == 0; }
    bool contains(int k) const { return (bits >> k) & 1u; }
    bool subset_of(Label o) const { return (bits & ~o.bits) == 0; }
    int min_element() const { return std::countr_zero(bits); }
    int max_element() const { return 63 - std::countl_zero(bits); }
    std::vector<int> elements() const;

    Label with(int k) const { return Label(bits | (uint64_t{1} << k)); }
    Label without(int k) const { return Label(bits & ~(uint64_t{1} << k)); }
    Label operator|(Label o) const { return Label(bits | o.bits); }
    Label operator&(Label o) const { return Label(bits & o.bits); }

    friend bool operator==(Label a, Label b) { return a.bits == b.bits; }
    friend bool operator!=(Label a, Label b) { return a.bits != b.bits; }
    // Storage order for containers; not the lex order.
    friend bool operator<(Label a, Label b) { return a.bits < b.bits; }
};

// Lexicographic order on the sorted element sequences.
bool lex_less(Label a, Label b);

struct LexLess {
    bool operator()(Label a, Label b) const { return lex_less(a, b); }
};

struct LabelHash {
    size_t operator()(Label l) const { return std::hash<uint64_t>{}(l.bits); }
};

// ->P(K): K minus its largest element first.
std::vector<Label> packet_vec(Label K);

struct HalfPackets {
    std::vector<Label> odd;   // P_o(K) in ->P order
    std::vector<Label> even;  // P_e(K) in ->P order
};
HalfPackets half_packets(Label K);

std::vector<Label> envelope(Label J, int N);
std::vector<Label> enumerate_subsets(int N, int n);

// Equal-size labels whose union has one more element share an envelope member.
bool dependent(Label a, Label b);

Label complement(Label J, int N);
uint64_t binomial(int n, int k);

// Placeholder label 0K used by hatted even polygon maps.
inline Label placeholder(Label K) { return K.with(0); }
inline bool is_placeholder(Label J) { return J.contains(0); }

// "124"; "{1,10,11}" when an element has two digits; "{}" for the empty set.
std::string to_string(Label J);
// "^35": the elements missing from [N].
std::string to_hat_string(Label J, int N);
// Hatted complement with a combining circumflex, e.g. "1̂" or "12̂".
std::string hat_name(Label K, int N);
Label parse_label(std::string_view s);

std::string to_string(const std::vector<Label>& seq);

// Colex rank of m-subsets of [N].
class SubsetIndex {
public:
    SubsetIndex() = default;
    SubsetIndex(int N, int m);
    int N() const { return N_; }
    int m() const { return m_; }
    size_t count() const { return by_rank_.size(); }
    size_t rank(Label S) const;
    Label unrank(size_t r) const { return by_rank_[r]; }

private:
    int N_ = 0;
    int m_ = 0;
    std::vector<Label> by_rank_;
};

}  // namespace hbo
