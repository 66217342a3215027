#pragma once

#include <string>

#include <json.hpp>

#include "hbo/coloring.hpp"

namespace hbo {

// {N, n, bottom, top, nodes:[{inv:[…]}], edges:[{src, dst, label}]}
nlohmann::json to_json(const PosetGraph& P);
// Edge labels in hatted notation when |K| = N-1, plain otherwise.
std::string to_dot(const PosetGraph& P);

nlohmann::json to_json(const TamariPoset& T);
std::string to_dot(const TamariPoset& T);

}  // namespace hbo
