#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kgraph/builders.hpp"
#include "kgraph/core.hpp"

namespace kgraph {

/// "id", "cyclic", "random:<seed>", or explicit tables "1-2=2,3,4,1;1-3=..." with 1-based images.
ThetaFamily parse_theta(const std::string& text, const std::vector<int>& sizes);

/// Built-in source or DSL file:
///   acyclic-square | example-3-2
///   cycle <n> <k>
///   single-vertex <n1,n2,...> [theta]
///   product <F<n>|C<n>>...
///   <name of a canned example>
///   <path to a spec file>
/// Throws ParseError (line 0) on malformed built-in arguments.
KGraph resolve_graph(const std::vector<std::string>& args);

/// Canned examples by name, in a fixed order.
std::vector<std::pair<std::string, KGraph>> canned_examples();

}  // namespace kgraph
