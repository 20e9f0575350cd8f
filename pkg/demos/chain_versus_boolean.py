"""Where complete regularity matters: the three-element chain against B2.

Finite completely regular frames are Boolean, so C3 is the smallest frame
on which the lemmas that lean on that hypothesis can be watched failing.
"""

from pointfree.frame import boolean, chain
from pointfree.nucleus import pi_nucleus, sigma_nucleus
from pointfree.order import center, completely_below, is_completely_regular, maxima
from pointfree.reflection import em_factorize, SourceOfHoms


def show(name, f):
    s, p = sigma_nucleus(f), pi_nucleus(f)
    print(f"{name}: {f.size} elements, maxima {[f.labels[m] for m in maxima(f)]}")
    print(f"  completely regular: {is_completely_regular(f)}   center: {[f.labels[c] for c in center(f)]}")
    cb = completely_below(f).pairs
    print("  strict ≪ pairs:", [(f.labels[a], f.labels[b]) for a in f for b in f if cb[a, b] and a != b])
    for a in f:
        lhs = f.meet[s(a), p(a)]
        mark = "" if lhs == a else "   <- σ∧π misses a"
        print(f"  a={f.labels[a]:6} σ(a)={f.labels[s(a)]:6} π(a)={f.labels[p(a)]:6}{mark}")
    fac = em_factorize(SourceOfHoms(f, []))
    print(f"  empty source: quotient has {fac.e.target.size} element(s), in M: {fac.hat_in_M}")
    print()


show("B2", boolean(2))
show("C3", chain(3))
