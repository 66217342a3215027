#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hbo/bruhat.hpp"

namespace hbo {

struct SimulationError : DomainError {
    using DomainError::DomainError;
};

struct OpToken {
    enum class Op { P, Map };
    Op op = Op::P;
    int a = 0;            // transposition position, or start of a plain map block (1-based)
    char kind = 'R';      // R, T, S or L
    Label K;
    bool hatted = false;
    std::vector<int> pos; // multi-index of a hatted map (1-based slots)
    bool whole = false;   // plain block covered the whole state; printed without position

    static OpToken transpose(int a);
    static OpToken map(char kind, Label K, int a, bool whole = false);
    static OpToken hat(char kind, Label K, std::vector<int> pos);

    bool is_map() const { return op == Op::Map; }
    friend bool operator==(const OpToken& x, const OpToken& y);
};

// Tokens are stored as printed and executed right to left.
struct OpWord {
    std::vector<OpToken> tokens;
    std::vector<Label> source;
    std::vector<Label> target;
};

enum class Family { simplex, polygon, dual_polygon, mixed };
std::string family_name(Family f);
Family parse_family(const std::string& s);

struct EquationPair {
    Family family = Family::simplex;
    int N = 0;       // simplex index, or polygon index
    bool hatted = false;
    OpWord lhs;
    OpWord rhs;

    int ground() const { return family == Family::simplex ? N + 1 : N; }
};

// Labels consumed and produced by a map token.
std::vector<Label> map_inputs(const OpToken& t);
std::vector<Label> map_outputs(const OpToken& t);

// One token applied to a state (labels only).
void apply_token(std::vector<Label>& state, const OpToken& t);
std::vector<Label> simulate(const OpWord& w, std::vector<Label> state);
// Execution order (first applied first).
std::vector<Label> simulate_executed(const std::vector<OpToken>& executed, std::vector<Label> state);

// Label equality with placeholder aliasing 0(2l) = 0(2l-1).
Label alias_placeholder(Label J, int N);
bool same_modulo_alias(const std::vector<Label>& a, const std::vector<Label>& b, int N);

std::string render_token(const OpToken& t, int ground);
std::string render_word(const OpWord& w, int ground);
std::string render_equation(const EquationPair& e);

struct Step {
    Label K;
    char kind;  // R, T or S
};

struct Resolution {
    std::vector<OpToken> executed;                 // in execution order
    std::vector<std::vector<Label>> after_step;    // state after each Apply
    std::vector<Label> final_state;
};

// Brings the members (in their current relative order) to consecutive positions by
// exchanging independent neighbours; returns the 0-based start of the block.
size_t gather_block(std::vector<Label>& s, const std::vector<Label>& members, std::vector<OpToken>& out);

// Canonical resolution: gather each step's pattern with the fewest left-goers, apply, then
// normalize to target by bubbling target entries leftwards.
Resolution resolve_steps(const std::vector<Label>& source, const std::vector<Step>& steps,
                         const std::vector<Label>* target);

// A maximal chain of B(N,n) (simplex family, full inversions) or of the blue
// quotient (polygon family, half-packet inversions). Target defaults to the class witness.
OpWord resolve_chain(const PosetGraph& P, const std::vector<Label>& chain, Family family,
                     const std::vector<Label>* target = nullptr);

// Executed tokens to a printed word.
OpWord to_word(const std::vector<OpToken>& executed, const std::vector<Label>& source,
               const std::vector<Label>& target);

std::vector<Label> polygon_source(int N);  // blue elements of alpha in T(N,N-2)
std::vector<Label> polygon_target(int N);  // blue elements of omega

// simplex: N-simplex equation on B(N+1,N-1). polygon: N-gon equation on T(N,N-2).
// dual_polygon and mixed: the red and green parts of the projected (N-1)-simplex equation.
EquationPair generate_equation(int N, Family family);

// Projection of the (N-1)-simplex equation on B(N,N-2) onto its blue, red and green labels.
// Each map R_K splits into T_K on the P_o(K) inputs and S_K on the P_e(K) inputs.
struct Decomposition {
    EquationPair blue;
    EquationPair red;
    EquationPair green;
};
Decomposition decompose_simplex(int N);

// Transposition-free form over hatted maps with multi-indices into a fixed ambient sequence.
EquationPair collapse_hatted(const EquationPair& e);
std::vector<Label> hatted_ambient(const EquationPair& e);

struct PositionFormulaReport {
    int N = 0;
    std::vector<std::vector<int>> traced;   // A_k for k = 1..N+1
    std::vector<int> exact_n;               // parameter values reproducing every traced entry
};
PositionFormulaReport position_formula_check(int N);
int position_formula(int n, int k, int j);

// Dependency trace: each Apply is an event; slots carry symbolic values.
struct TraceEvent {
    char kind;
    Label K;
    bool hatted;
    std::vector<int> inputs;  // term ids
};

struct TraceGraph {
    std::vector<TraceEvent> events;
    std::vector<std::pair<size_t, size_t>> edges;  // event u feeds event v
    std::vector<int> outputs;                      // final term ids by slot
    std::vector<Label> final_labels;
};

class TermTable {
public:
    int source(size_t slot, Label l);
    int output(int event_term, int k);
    int event(char kind, Label K, bool hatted, const std::vector<int>& inputs);

private:
    std::map<std::vector<int64_t>, int> ids_;
    int next_ = 0;
};

TraceGraph trace_graph(const OpWord& w, TermTable& terms);
// Equal under the commutation relations: identical symbolic outputs and final labels.
bool trace_equivalent(const OpWord& a, const OpWord& b);

// Compact token syntax: "P3", "T1@2" (map on [ground] minus 1 at position 2), "T2" (whole state),
// "^R1@1,2,3" (hatted map with its multi-index). Tokens are separated by spaces.
OpToken parse_token(std::string_view text, int ground);
std::vector<OpToken> parse_tokens(std::string_view text, int ground);

}  // namespace hbo
