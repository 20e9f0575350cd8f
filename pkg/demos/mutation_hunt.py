"""Corrupt the inputs of each suite until it notices."""

from pointfree.suites import mutation_probe, suite_names

for name in suite_names():
    base, bad = mutation_probe(name)
    if bad is None:
        print(f"{name:14} baseline {'pass' if base.passed else 'FAIL'}, no mutation caught")
        continue
    first = next(r for r in bad.results if not r.passed)
    print(f"{name:14} caught by {bad.mutation:18} at {first.tag}: {str(first.witness)[:60]}")
