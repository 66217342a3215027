#include "hbo/export.hpp"

namespace hbo {

static std::string edge_name(Label K, int N)
{
    return K.size() + 1 == N ? hat_name(K, N) : to_string(K);
}

static std::vector<std::string> label_strings(const std::vector<Label>& v)
{
    std::vector<std::string> out;
    for (Label J : v)
        out.push_back(to_string(J));
    return out;
}

nlohmann::json to_json(const PosetGraph& P)
{
    nlohmann::json j{{"N", P.N}, {"n", P.n}, {"bottom", P.bottom}, {"top", P.top}};
    j["nodes"] = nlohmann::json::array();
    for (const auto& s : P.nodes)
        j["nodes"].push_back({{"inv", label_strings(s.members())}});
    j["edges"] = nlohmann::json::array();
    for (const auto& e : P.edges)
        j["edges"].push_back({{"src", e.src}, {"dst", e.dst}, {"label", to_string(e.label)}});
    return j;
}

std::string to_dot(const PosetGraph& P)
{
    std::string s = "digraph B_" + std::to_string(P.N) + "_" + std::to_string(P.n) + " {\n";
    for (size_t i = 0; i < P.nodes.size(); ++i)
        s += "  n" + std::to_string(i) + " [label=\"" + to_string(P.nodes[i].members()) + "\"];\n";
    for (const auto& e : P.edges)
        s += "  n" + std::to_string(e.src) + " -> n" + std::to_string(e.dst) + " [label=\"" +
             edge_name(e.label, P.N) + "\"];\n";
    return s + "}\n";
}

nlohmann::json to_json(const TamariPoset& T)
{
    nlohmann::json j{{"N", T.N}, {"n", T.n}, {"color", color_name(T.color)}, {"bottom", T.bottom}, {"top", T.top}};
    j["nodes"] = nlohmann::json::array();
    for (const auto& s : T.nodes)
        j["nodes"].push_back({{"seq", label_strings(s)}});
    j["edges"] = nlohmann::json::array();
    for (const auto& e : T.edges)
        j["edges"].push_back(
            {{"src", e.src}, {"dst", e.dst}, {"labels", label_strings(e.labels)}, {"kind", kind_name(e.kind)}});
    return j;
}

std::string to_dot(const TamariPoset& T)
{
    std::string s = "digraph " + color_name(T.color) + "_" + std::to_string(T.N) + "_" + std::to_string(T.n) + " {\n";
    for (size_t i = 0; i < T.nodes.size(); ++i)
        s += "  n" + std::to_string(i) + " [label=\"" + to_string(T.nodes[i]) + "\"];\n";
    for (const auto& e : T.edges) {
        std::string lab;
        for (Label K : e.labels)
            lab += (lab.empty() ? "" : ",") + edge_name(K, T.N);
        s += "  n" + std::to_string(e.src) + " -> n" + std::to_string(e.dst) + " [label=\"" + lab + "\"];\n";
    }
    return s + "}\n";
}

}  // namespace hbo
