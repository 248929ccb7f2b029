"""Histories, tuple spaces, and the synthesis of membership codes and name
evaluation functions.

The history of a condition lists the coordinates it depends on; its tuple
space is the finite product of generic-value spaces over that history.
The synthesizer turns every condition into a boolean code over its tuple
space, and every name into an evaluation function, both checked elsewhere
against brute-force filter semantics.
"""

from finforce import (
    eval_code,
    eval_fcode_detailed,
    fold_true,
    history_of_condition,
    history_of_name,
    print_code,
    print_fcode,
    restrict_tuple,
    synth_E,
    synth_F,
    tuple_space,
)
from finforce.fixtures import i1

fx = i1()
it = fx.iteration
full = it.template.all_points()

# Histories: the C-coordinate entry contributes its ordinal to the W-set
# but never its own history; table entries pull in their base coordinates.
p = fx.cond({"b": 2})
h = history_of_condition(it, full, p)
print("history of {b=2}:", h)

t1 = fx.c_tables[0]
pc = fx.cond({"c": t1})
print("history of {c=t1}:", history_of_condition(it, full, pc))

# Tuple spaces split a history into model-valued components and
# characteristic-function components restricted to the W-sets.
space = tuple_space(it, h)
print("tuple space of {b=2}:", space, "with", space.size(), "points")

# Membership codes: a bit read at a C coordinate, an E-atom applying the
# model relation to an inner evaluation table at B and R coordinates.
code = fold_true(synth_E(it, full, p))
print("code for {b=2}:", print_code(code))
code_c = fold_true(synth_E(it, full, pc))
print("code for {c=t1}:", print_code(code_c))

# Name evaluation functions: per coordinate, the antichain's member codes
# with their decided values.
name = fx.registered_names()["n1"]
fcode = synth_F(it, full, name)
print("evaluation function of n1:", print_fcode(fcode)[:80], "...")

# Evaluating along an admissible generic sequence.
z = it.enumerate_generics(full)[0]
point = restrict_tuple(z, tuple_space(it, history_of_name(it, full, name)))
values, inside = eval_fcode_detailed(fcode, point)
print("n1 evaluated at", z.value("a"), "->", values, "| inside domain:", inside)
