"""Simple iterations: membership, the semantic order, materialized posets,
generic sequences and induced filters.

The shipped three-point fixture has one coordinate of each kind: a Cohen
model used outright (B), a small three-ordinal poset whose name is
constant (C), and an eventually-different coordinate whose subposet name
follows the first Cohen bit (R).
"""

from finforce import const_name, realize_filter
from finforce.fixtures import i1

fx = i1()
it = fx.iteration
full = it.template.all_points()

# Conditions are finite partial maps; C-entries are literal ordinals.
p = fx.cond({"b": 2})
print("is {b=2} a member over {a,b}?", it.member_pstar(frozenset({"a", "b"}), p))
print("is {b=1} a member over {b} alone?", it.member_pstar(frozenset({"b"}), fx.cond({"b": 1})))

# The order is decided semantically, stage by stage.
a = frozenset({"a"})
q = fx.cond({"a": const_name((0, 1))})
r = fx.cond({"a": const_name((0,))})
print("{a=01} <= {a=0}:", it.order_leq(a, q, r))
print("{a=0} <= {a=01}:", it.order_leq(a, r, q))

# Materializing a stage: the full poset with its order matrix.
poset = it.build_poset(full)
print("P* over the whole template:", len(poset), "conditions, top =", poset.top)

# Generic sequences assign one value per coordinate, built stage by stage:
# a Cohen real at a, a characteristic function on three ordinals at b, and
# a generic value of the branch-selected subposet at c.
gens = it.enumerate_generics(full)
print("admissible generic sequences:", len(gens))
z = gens[0]
print("one of them:", z)

# Each sequence induces a filter: a condition enters when every interpreted
# entry enters its coordinate filter.  The result is audited to be the
# up-set of a minimal condition, i.e. a fully generic filter.
g = realize_filter(it, z)
print("induced filter size:", len(g))
print("{b=2} in it?", fx.cond({"b": 2}) in g, "| {b=1} in it?", fx.cond({"b": 1}) in g)

# The dense subcollection: widened conditions may carry ordinal-valued
# names at C coordinates, and always extend to literal-ordinal members.
ok, witness = it.check_density_pstar(frozenset({"a", "b"}))
print("P* dense in the widened poset over {a,b}:", ok)
