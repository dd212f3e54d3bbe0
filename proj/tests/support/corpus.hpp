#pragma once

// Program texts shared across the test suites.

namespace aspt::testing {

// two-choice program with a fail-pattern constraint; three stable models
inline constexpr const char* kChoiceProgram = R"(
a(X) :- e(X), not b(X).      e(1).  e(2).
b(X) :- e(X), not a(X).      fail :- a(1), b(2), not fail.
)";

// small program with forced and free propositional atoms
inline constexpr const char* kForcedAtomsProgram = R"(
:- a(X).  b(1).  g :- b(X), not a(X).  :- not d.  e :- not f. f :- not e.
)";

inline constexpr const char* kUnstableRule = "__fail :- foo, not __fail.";

// transitive closure templates plus facts; the reach(foo,bar) fact clashes
// with the closure guarantee
inline constexpr const char* kClosureGuaranteeProgram = R"(
__template__("@d/tc").
    c(X,Y) :- r(X,Y).    c(X,Z) :- c(X,Y), r(Y,Z).
__end__.

__template__("@d/tcg").
    __apply_template__("@d/tc", (c, __c)).
    c(X,Y) :- __c(X,Y).     :- c(X,Y), not __c(X,Y).
__end__.

link(a,b). link(a,c). __apply_template__("@d/tcg", (r, link), (c,reach)).
reach(foo,bar).
)";

inline constexpr const char* kSpanningTreeNaive = R"(
link(X,Y) :- link(Y,X).

{tree(X,Y) : link(X,Y), X < Y} = C-1 :- C = #count {X : node(X)}.
tree(X,Y) :- tree(Y,X).
reach(X) :- X = #min {Y : node(Y)}.
reach(Y) :- reach(X), tree(X,Y).
:- node(X), not reach(X).
)";

inline constexpr const char* kImpactNaive = R"(
{out(X,Y) : tree(X,Y)} = 1.
in(X,Y) :- tree(X,Y), not out(X,Y).
in(X,Y) :- in(Y,X).
reach(X) :- X = #min {Y : node(Y)}.
reach(Y) :- reach(X), in(X,Y).
impact(X,Y,|C|) :- out(X,Y), C = #sum{1,Z : reach(Z); -1,Z : node(Z), not reach(Z)}.
)";

// spanning tree built from the core templates; redeclares some of them
inline constexpr const char* kSpanningTreeTemplates = R"(
__template__("@d/symmetric closure").
    c(X,Y) :- r(X,Y).    c(X,Y) :- r(Y,X).
__end__.

__template__("@d/reachable nodes").
    reach(X) :- start(X).    reach(Y) :- reach(X), link(X,Y).
__end__.

__template__("@d/connected graph").
    __start(X) :- X = #min{Y : node(Y)}.
    __apply_template__("@d/reachable nodes", (start, __start), (reach, __reach)).
    :- node(X), not __reach(X).
__end__.


__apply_template__("@d/symmetric closure", (r, link), (c, link)).

__template__("spanning tree").
    {tree(X,Y) : link(X,Y), X < Y} = C-1 :- C = #count{X : node(X)}.
    __apply_template__("@d/symmetric closure", (r, tree), (c, __tree)).
    __apply_template__("@d/connected graph", (node, node), (link, __tree)).
__end__.

__apply_template__("spanning tree").
)";

// impact measurement written with core templates and local predicates
inline constexpr const char* kImpactTemplates = R"(
__apply_template__("@d/symmetric closure", (r, tree), (c, tree)).

{__out(X,Y) : tree(X,Y)} = 1.
__in(X,Y) :- tree(X,Y), not __out(X,Y).
__apply_template__("@d/symmetric closure", (r, __in), (c, __in)).

__start(X) :- X = #min{Y : node(Y)}.
__apply_template__("@d/reachable nodes", (start,__start), (link, __in), (reach,__reach)).
impact(X,Y,|C|) :- __out(X,Y), C = #sum{1,Z : __reach(Z); -1,Z : node(Z), not __reach(Z)}.
)";

}  // namespace aspt::testing
