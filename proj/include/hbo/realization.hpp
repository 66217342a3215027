#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hbo/word.hpp"

namespace hbo {

constexpr uint64_t default_max_evals = 100'000'000;

struct PreconditionError : DomainError {
    using DomainError::DomainError;
};

// Dense table of a map between products of finite carriers. Rows are indexed by the
// mixed-radix encoding of the input tuple, first input most significant.
struct MapTable {
    std::vector<uint32_t> in_sizes;
    std::vector<uint32_t> out_sizes;
    std::vector<uint32_t> flat;  // rows() * out_sizes.size() entries

    uint64_t rows() const;
    uint64_t encode(const uint32_t* in) const;
    void apply(const uint32_t* in, uint32_t* out) const;

    static MapTable from_function(std::vector<uint32_t> in_sizes, std::vector<uint32_t> out_sizes,
                                  const std::function<std::vector<uint32_t>(const std::vector<uint32_t>&)>& f);
    static MapTable identity(std::vector<uint32_t> sizes);
};

// "T1345" for a plain map, "T^1345" for a hatted one.
std::string map_id(char kind, Label K, bool hatted);
std::string map_id(const OpToken& t);

struct FiniteRealization {
    uint32_t default_size = 1;
    std::map<Label, uint32_t> carriers;
    std::map<std::string, MapTable> tables;

    uint32_t carrier(Label J) const;
    const MapTable& table(const OpToken& t) const;
};

nlohmann::json to_json(const FiniteRealization& r);
FiniteRealization realization_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EquationPair& e);
// Accepts {family, N, hatted} and optional explicit "lhs"/"rhs" token strings.
EquationPair equation_from_json(const nlohmann::json& j);

// Checks every map of e against the realization's carriers.
void check_signature(const EquationPair& e, const FiniteRealization& r);

// Runs the printed word right to left on a value tuple over w.source.
std::vector<uint32_t> evaluate(const OpWord& w, const FiniteRealization& r, std::vector<uint32_t> values);

struct VerifyOptions {
    uint64_t max_evals = default_max_evals;
    uint64_t sample = 0;  // > 0: check that many random tuples when the cap is exceeded
    uint64_t seed = 1;
    unsigned threads = 1;
};

struct Counterexample {
    std::vector<uint32_t> input;
    std::vector<uint32_t> lhs;
    std::vector<uint32_t> rhs;
};

struct VerificationReport {
    std::string equation;
    uint64_t total = 0;
    bool exhaustive = true;
    std::optional<Counterexample> counterexample;
    double runtime_ms = 0;

    bool holds() const { return !counterexample; }
};

std::string equation_id(const EquationPair& e);

VerificationReport verify(const EquationPair& e, const FiniteRealization& r, const VerifyOptions& opt = {});

// Finite groups given by multiplication tables on 0..n-1, with 0 the identity.
struct FiniteGroup {
    uint32_t n = 1;
    std::vector<uint32_t> mul;
    uint32_t operator()(uint32_t a, uint32_t b) const { return mul[a * n + b]; }
};
FiniteGroup cyclic_group(uint32_t n);
FiniteGroup symmetric_group3();

// Every map of e gets the same rule applied to its input tuple.
FiniteRealization uniform_realization(
    const EquationPair& e, uint32_t size,
    const std::function<std::vector<uint32_t>(const std::vector<uint32_t>&, size_t n_out)>& f);

// Binary maps (x, y) -> (x, x y).
FiniteRealization group_realization(const EquationPair& e, const FiniteGroup& g);
// Each map reverses its input tuple.
FiniteRealization transposition_realization(const EquationPair& e, uint32_t size);
// One-element carriers.
FiniteRealization trivial_realization(const EquationPair& e);

// Hatted N-simplex realization and endofunctions f_1..f_{N+1} together with a table for the
// hatted map indexed by N+2 to a hatted (N+1)-simplex realization. The f_j act on the carrier of
// the pair {j, N+2}; they must commute with the new map (checked exhaustively).
FiniteRealization lift_simplex_solution(const FiniteRealization& r, int N, const std::vector<MapTable>& f,
                                        const MapTable& top);

// Hatted polygon realizations with uniform carriers. Both reject inputs that do not verify.
FiniteRealization reduce_polygon_even_to_odd(const FiniteRealization& r, int N);
FiniteRealization reduce_polygon_odd_to_even(const FiniteRealization& r, int N);

// R_K from T_K (on the P_o inputs) and S_K (on the P_e inputs) for the plain (N-1)-simplex
// equation on B(N, N-2).
FiniteRealization compose_three_color(const FiniteRealization& ts, int N);

// All plain T/S assignments on size-2 carriers for N = 3, with the verdicts on the trigon,
// the dual trigon, the mixed equation and the composed Yang-Baxter equation.
struct TripleSearchEntry {
    FiniteRealization ts;
    bool polygon, dual, mixed, simplex;
};
std::vector<TripleSearchEntry> search_triple_n3();

}  // namespace hbo
