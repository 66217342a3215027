#pragma once

#include <map>
#include <string>
#include <vector>

#include "hbo/bruhat.hpp"

namespace hbo {

enum class Color { Blue, Red, Green };

char color_char(Color c);  // 'b', 'r', 'g'
std::string color_name(Color c);
Color parse_color(const std::string& s);

Color color_of(Label J, const InvSet& inv);

// Color of the edge [rho] -K-> [I_K rho]. At n = N-1 (empty envelope) the
// edge acts as both the blue and the red half-packet inversion; Blue is returned.
Color inversion_color(const InvSet& inv, Label K);
bool edge_is_blue(const InvSet& inv, Label K);
bool edge_is_red(const InvSet& inv, Label K);

std::vector<Label> colored_subsequence(const std::vector<Label>& seq, const InvSet& inv, Color c);

enum class InversionKind { full, half_blue, half_red };
std::string kind_name(InversionKind k);

// Replace the pattern starting at 1-based position a by its image.
std::vector<Label> half_packet_inversion(const std::vector<Label>& seq, Label K, InversionKind kind, int a);

// Lexicographically least sequence reachable by exchanging neighbouring independent labels.
std::vector<Label> trace_normal_form(const std::vector<Label>& seq);

struct TamariEdge {
    size_t src;
    size_t dst;
    std::vector<Label> labels;
    InversionKind kind;
};

struct TamariPoset {
    int N = 0;
    int n = 0;
    Color color = Color::Blue;
    std::vector<std::vector<Label>> nodes;
    std::vector<TamariEdge> edges;
    std::map<std::vector<Label>, size_t> index;
    size_t bottom = 0;
    size_t top = 0;
};

// Key of a Bruhat class in the color-c quotient.
std::vector<Label> colored_key(const InvSet& inv, Color c);

TamariPoset quotient(const PosetGraph& P, Color c);
TamariPoset enumerate_T(int N, int n, Color c, uint64_t cap = default_max_nodes);

// Projection of a colored class of ground size N to ground size N-1, k in {1, N}.
std::vector<Label> project_tamari(const std::vector<Label>& node, int N, int k);
Color projected_color(Color c, int N, int k);

bool reachable(const TamariPoset& T, size_t from, size_t to);

struct PropositionReport {
    int N = 0;
    int n = 0;
    uint64_t edges = 0;
    uint64_t later_checked = 0;
    uint64_t violations_25 = 0;  // colors of P(K) before and after a colored inversion
    uint64_t violations_26 = 0;  // a consumed blue (red) element turns blue (red) again
    uint64_t violations_27 = 0;  // alpha and omega colors
    bool ok() const { return violations_25 + violations_26 + violations_27 == 0; }
};
// The packet-color statements are skipped at n = N-1, where every element has a single
// envelope member and consumed elements change color directly.
PropositionReport check_color_propositions(const PosetGraph& P);

struct ColoredStep {
    Label K;
    Color edge;  // kind of the half-packet inversion on the subsequence; swapped for green chains
    std::vector<Label> state;
};

// The color-c part of a maximal chain of B(N,n); inversions that leave it unchanged are dropped.
struct ColoredChain {
    Color color = Color::Blue;
    std::vector<Label> start;
    std::vector<ColoredStep> steps;
};

// Distinct colored chains in the order of maximal_chains.
std::vector<ColoredChain> colored_chains(const PosetGraph& P, Color c, uint64_t cap = default_max_nodes);
// "(12,23,34) -123b-> (13,34) -134b-> (14)"; states in trace normal form.
std::string render_colored_chain(const ColoredChain& ch);

}  // namespace hbo
