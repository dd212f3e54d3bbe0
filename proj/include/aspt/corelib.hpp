#pragma once

#include "aspt/templates.hpp"

namespace aspt {

/// Full source of the built-in template library, in the directive
/// serialization format. The same text is installed as share/corelib.lp.
std::string corelib_source();

/// Registry preloaded with the built-in templates: @d/tc, @d/tcc, @d/tcg,
/// @d/symmetric closure, @d/reachable nodes, @d/connected graph, exact copies
/// for arities 0..8, and @dumbo/ long-name counterparts. Exact copies beyond
/// arity 8 are synthesized on demand. Loading consumes no UUID draws.
TemplateRegistry builtin_registry(UuidSource& uuids);

/// The two-statement exact-copy template for the given arity:
/// output(X1,...,Xn) :- input(X1,...,Xn). plus the closure constraint.
Template exact_copy(int arity, UuidSource& uuids);

}  // namespace aspt
