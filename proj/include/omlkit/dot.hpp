#pragma once

#include <string>

#include "omlkit/greechie.hpp"
#include "omlkit/vectors.hpp"

namespace omlkit {

/// Graphviz text: atoms as nodes, each block drawn as a colored chain of
/// edges through its atoms. Output depends only on the input.
std::string export_dot(const GreechieDiagram& d);
std::string export_dot(const ContextHypergraph& g);

}  // namespace omlkit
