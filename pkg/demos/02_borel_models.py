"""Borel-poset models at desk scale: executable membership relations,
declared generic filters, and why declaring them matters.

A model pairs a finite poset with a finite space of generic values and a
relation E such that filter membership is characterized by E applied to
the realized value.  The validator proves the declared filters behave
generically; the eventually-different model shows how truncation breaks
the naive recipe.
"""

from finforce import (
    check_nice_subposet,
    cohen,
    ed,
    ed_naive,
    validate_borel_model,
)

# Cohen forcing truncated to stems of length two over two letters.
c = cohen(2, 2)
print("cohen conditions:", len(c.poset.elements), "generic values:", len(c.generic_space))
print("cohen validates:", validate_borel_model(c) == [])

# The eventually-different model: conditions are (stem, finite set of
# functions to avoid), with the verbatim order and closed relation E.
e = ed(2, 2)
print("ed conditions:", len(e.poset.elements))
print("ed validates:", validate_borel_model(e) == [])

# Its minimal elements include premature stems paired with the full
# function set: truncation leaves them nowhere to grow.
print("ed minimal elements:", [m for m in e.poset.minimal_elements()][:3], "...")

# Taking the up-sets of *all* minimal elements as the generic filters is
# sound for honest finite posets, but fails here: the E-characterization
# breaks on the premature-stem filters.
naive = ed_naive(2, 2)
violations = validate_borel_model(naive)
print("naive ed violations:", len(violations))
print("first witness:", violations[0])

# Nice subposets keep the characterization on a restricted generic space.
cohen_like = [p for p in e.poset.elements if not p[1]]
print("cohen-like subposet nice:", check_nice_subposet(e, cohen_like, e.generic_space) == [])
print("top-only subposet nice:", check_nice_subposet(e, [e.poset.top], e.generic_space) == [])
