#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hbo/word.hpp"

namespace hbo {

// Hatted localized map with its multi-index into the ambient sequence.
struct LaxToken {
    Label J;
    std::vector<int> pos;
    friend bool operator==(const LaxToken& a, const LaxToken& b) { return a.J == b.J && a.pos == b.pos; }
};

struct RewriteStep {
    enum class Kind { commute, lax_substitute, normalize };
    Kind kind;
    size_t location;  // 1-based position in the state sequence
    OpToken emitted;
};

// A word snapshot together with the tokens that led to it ("P_4 P_5 P_6 P_3" or "R_{5̂,1}").
struct LaxLine {
    std::string tag;
    std::vector<LaxToken> word;  // state order: the first entry acts first
};

struct LaxSide {
    std::vector<RewriteStep> steps;
    std::vector<LaxLine> lines;
    OpWord word;
};

struct LaxDerivation {
    Family family = Family::simplex;
    int N = 0;  // level of the Lax system; the derived equation has level N+1
    int ground = 0;
    std::vector<Label> ambient;
    LaxSide lex;  // C_lex, resp. C_o
    LaxSide rev;  // C_rev, resp. C_e
    EquationPair equation;
};

// simplex: the (N+1)-simplex equation from the hatted N-simplex Lax system.
// polygon: the (N+1)-gon equation from the hatted N-gon Lax system.
LaxDerivation derive_consistency(int N, Family family);

nlohmann::json to_json(const LaxDerivation& d);

// Printed order, e.g. "L̂_{12̂,123} L̂_{13̂,145}".
std::string render_lax_word(const std::vector<LaxToken>& w, int ground);

// Free monoid on L_J, X_K, X'_K with X in {R, T, S}.
enum class MonoidVariant { full, blue, red, mixed };
std::string variant_name(MonoidVariant v);
MonoidVariant parse_variant(const std::string& s);

struct Gen {
    char kind;  // L, R, T or S
    bool primed = false;
    Label K;
    friend bool operator==(const Gen& a, const Gen& b)
    {
        return a.kind == b.kind && a.primed == b.primed && a.K == b.K;
    }
};

struct MonoidStep {
    std::string rule;  // "A1", "A2" or "A3"
    size_t position;   // 1-based start of the window
    std::vector<Gen> before;
    std::vector<Gen> after;
};

struct MonoidTrace {
    int N = 0;
    MonoidVariant variant = MonoidVariant::full;
    bool forward = true;
    std::vector<Gen> start;
    std::vector<Gen> finish;
    std::vector<MonoidStep> steps;
};

// Rewrites L_alpha X'_chain into X_chain L_omega for both chains.
std::vector<MonoidTrace> monoid_check(int N, MonoidVariant v);
// One relation instance, checked without reference to the trace.
bool verify_monoid_step(const MonoidStep& s, int N, MonoidVariant v);
// Re-applies every step to the start word and compares the result with finish.
bool replay(const MonoidTrace& t);

std::string render_gen(const Gen& g, int N);
std::string render_gens(const std::vector<Gen>& w, int N);
nlohmann::json to_json(const MonoidTrace& t);

// Free nilpotent group of class 2 on g1, g2, g3 in the normal form
// g1^a g2^b g3^c [g1,g2]^d [g1,g3]^e [g2,g3]^f, with [x,y] = x y x^-1 y^-1.
struct Nil3 {
    std::array<int64_t, 6> e{};
    friend bool operator==(const Nil3& x, const Nil3& y) { return x.e == y.e; }
};
Nil3 nil_generator(int i);
Nil3 nil_mul(const Nil3& x, const Nil3& y);
Nil3 nil_inv(const Nil3& x);
Nil3 nil_comm(const Nil3& x, const Nil3& y);
bool nil_is_identity(const Nil3& x);
// Product computed in three Heisenberg blocks of 3x3 unitriangular integer matrices.
Nil3 nil_matrix_product(const Nil3& x, const Nil3& y);

struct NilpotentReport {
    bool commutators_central = false;  // [[g_i,g_j],g_k] = e
    bool yang_baxter = false;          // R23 R13 R12 = R12 R13 R23
    bool abelian_trivial = false;      // all R_ij = e in the abelianization
    int oracle_checks = 0;
    int oracle_agree = 0;
    bool ok() const
    {
        return commutators_central && yang_baxter && abelian_trivial && oracle_agree == oracle_checks;
    }
};
NilpotentReport nilpotent_commutator_solution(uint64_t seed = 1, int samples = 100);

}  // namespace hbo
