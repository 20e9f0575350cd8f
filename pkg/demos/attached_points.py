"""Attach three points to the pointless line and look at the result."""

from fractions import Fraction

from pointfree import attach as lw

spec = lw.AttachmentSpec([0, 1, Fraction(5, 2)])
print(spec)
print("maximal elements:")
for m in lw.lw_max(spec):
    print("  ", lw.element_to_json(spec, m))

a = lw.parse_element(spec, "{0,1}:(-1,2)")
b = lw.parse_element(spec, "{1}:(1/2,3)")
print("a ∧ b =", lw.element_to_json(spec, lw.lw_meet(spec, a, b)))
print("a ∨ b =", lw.element_to_json(spec, lw.lw_join(spec, [a, b])))
print("π-image of b:", lw.element_to_json(spec, lw.lw_pi_project(spec, b)))

target, k = lw.kx_quotient(spec, [0, Fraction(5, 2)])
print("restricted to X = {0, 5/2}:", lw.element_to_json(target, k(a)))

rep = lw.lemma32_partial_check(spec, 0, n=6)
print("partial joins around 0 gain flags", sorted(str(w) for w in rep.flags_final),
      "and stay below ⊤:", rep.strictly_below_top)
