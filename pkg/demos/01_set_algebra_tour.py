"""
Tour of the exact integer-language algebra
==========================================

Every language in this project is an eventually periodic set of integers:
outside a finite window it repeats residue classes on both tails.  That
keeps every question we care about (membership, Boolean combinations,
emptiness, finiteness, subset) exactly decidable.
"""

from limitgames import (
    PeriodicSet,
    all_integers,
    even_nonnegatives,
    format_set,
    negative_integers,
    odd_positives,
    parse,
    q_set,
    universe_elem,
    y_set,
)

# The fixed universe enumeration zigzags through the integers.
print("universe order:", [universe_elem(i) for i in range(1, 10)])

# Named building blocks.
O = odd_positives()        # 1, 3, 5, ...
E = even_nonnegatives()    # 0, 2, 4, ...
I = all_integers()
N = negative_integers()

# Two parameterized families: Y(-a) pads E with the block {-a..0}, and
# Q(-b) glues every integer below -b onto the positive odds.
print("Y(-2) members near zero:", [x for x in range(-4, 5) if x in y_set(2)])
print("Q(-1) members near zero:", [x for x in range(-4, 5) if x in q_set(1)])

# Boolean operations stay inside the algebra and results are canonical, so
# equality is plain ==.  The set difference below is the safe language of
# the built-in identification scenarios.
assert I - (N | E) == O
assert I - y_set(0) == q_set(1)
print("I \\ (N | E) equals the positive odds:", I - (N | E) == O)

# Cardinality is classified exactly: empty, finite with a count, infinite.
print("cardinality of E \\ I:", (E - I).cardinality().kind)
print("cardinality of Y(-3) \\ E:", (y_set(3) - E).cardinality())
print("cardinality of O \\ E:", (O - E).cardinality().kind)

# Any set can be described in (and printed back to) a small grammar.
s = parse("(Y(-3) | Q(-2)) & I \\ Fin{0, 1}")
print("parsed set prints canonically as:", format_set(s))
assert parse(format_set(s)) == s

# Prefixes restrict a language to the first m universe elements; learners
# compare candidate languages through these finite windows.
print("prefix of Q(-1) at m=12:", q_set(1).prefix(12))

# Rays and finite sets give ad-hoc languages beyond the named ones.
every_third_below_five = PeriodicSet.ray(5, -3)
print("descending ray members:", [x for x in range(-10, 7) if x in every_third_below_five])
