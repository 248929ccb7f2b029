"""Indexed templates: validation, traces, depth, restriction.

A template is a finite linear order where every point carries a family of
subsets of its past.  Everything else in the package recurses along the
well-founded rank this structure induces.
"""

from finforce import (
    LinearOrder,
    depth,
    full_powerset_template,
    restrict_template,
    trace_family,
    validate_template,
)

# The finite-support-iteration template on three points: every point sees
# every subset of its past.
t = full_powerset_template(("0", "1", "2"))
print("points:", t.points)
print("family at 2:", sorted(sorted(b) for b in t.families["2"]))

# Traces restrict a family to an ambient subset.
print("trace of I_2 on {0,2}:", sorted(sorted(b) for b in trace_family(t, "2", {"0", "2"})))

# The depth rank grounds every recursion: predecessors of a set are its
# past-below-the-maximum, the trace members, and the trace members with the
# maximum re-attached.
for a in (frozenset(), frozenset({"2"}), frozenset({"0", "1", "2"})):
    print(f"depth({sorted(a)}) =", depth(t, a))

# Restriction produces the template a sub-iteration lives on.
r = restrict_template(t, {"0", "1"})
print("restricted points:", r.points)

# Validation returns every violated axiom with a witness instead of a
# template.  Here the family at 2 is not closed under unions.
order = LinearOrder(("0", "1", "2"))
bad = validate_template(order, {
    "0": [[]],
    "1": [[], ["0"]],
    "2": [[], ["0"], ["1"]],
})
for violation in bad:
    print("violation:", violation)
