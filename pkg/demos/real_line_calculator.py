"""A tour of the interval-open calculator on the rational line."""

from fractions import Fraction

from pointfree import filters, rline

P = rline.parse

u = P("(0,1)u(1,2)")
print("u =", u, " punctured at", [str(p) for p in rline.io_successor_points(u)])
print("fill(u) =", rline.io_fill(u))
print("u* =", rline.io_pseudocomplement(u))
print("(0,2) -> (0,1) =", rline.io_heyting(P("(0,2)"), P("(0,1)")))
print("(0,1) << (-1,2):", rline.io_completely_below(P("(0,1)"), P("(-1,2)")))
print("(0,1) << (0,2): ", rline.io_completely_below(P("(0,1)"), P("(0,2)")))

print("\nrays in the pointless fragment")
for p, q in [(0, 0), (0, 1), (1, 0), (Fraction(1, 2), Fraction(1, 2))]:
    r = rline.prop16_check(p, q)
    print(f"  p={p} q={q}: join is ⊤ {r.join_is_top}, meet is ⊥ {r.meet_is_bottom}")

print("\nthe point filter at 0 answers regularity challenges")
y = filters.point_filter(0)
for text in ["(-inf,0)u(2,inf)", "(-inf,-1)u(1/3,inf)", "(5,6)"]:
    V = P(text)
    b = y.regular_witness(V)
    print(f"  V = {V}: member {b}, whose pseudocomplement {rline.io_pseudocomplement(b)} escapes V")
