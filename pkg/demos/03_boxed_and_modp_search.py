"""
Exhaustive idempotent searches
==============================

Two complete search modes: integer coefficients confined to a box, and
all of Z/p.  Reports say exactly what scope was covered; absence of a
finding is never promoted to a theorem.
"""

import json

from quandlekit import (
    MagmaTable,
    conjecture_scan,
    core_quandle,
    dihedral_quandle,
    enumerate_boxed_Z,
    enumerate_mod_p,
    trivial_quandle,
)

# The order-3 table keeps only its basis idempotents inside the box
# |c| <= 3.  The report records the scope and the candidate count.
r3 = dihedral_quandle(3)
small = enumerate_boxed_Z(r3, 3)
print("order 3, box 3:", [str(u) for u in small.idempotents])
print("candidates:", small.candidates_tested, "| exhaustive:", small.exhaustive)
print("flags:", small.flags)

# The order-6 table is different: the same box finds a large family on
# top of the basis.
r6 = core_quandle([6])
boxed = enumerate_boxed_Z(r6, 2)
nontrivial = [u for u in boxed.idempotents if len(u.coeffs) > 1]
print("\norder 6, box 2: found", len(boxed.idempotents), "of which", len(nontrivial), "are not basis elements")
print("a sample:", [str(u) for u in nontrivial[:3]])

# Mod-p enumeration is complete with no box at all.  Primes dividing the
# order behave differently from primes that do not.
for p in (3, 5):
    rep = enumerate_mod_p(dihedral_quandle(5), p)
    extra = [u for u in rep.idempotents if len(u.coeffs) > 1]
    print(f"\norder 5 mod {p}: {len(rep.idempotents)} idempotents, {len(extra)} beyond the basis")
    for u in extra:
        print("   ", u)

# Any square table can be searched in magma mode, axioms or not.
rows = [[1, 0], [0, 1]]
mag = MagmaTable(rows, name="swap")
rep = enumerate_mod_p(mag, 2)
print("\nswap table mod 2 finds:", [str(u) for u in rep.idempotents], "| flags:", rep.flags)

# The scan wraps all of this per quandle and reports statuses honestly:
# hypotheses that fail are skipped, counterexamples are listed, and
# nothing outside the searched scope is claimed.
catalog = [("three", r3.table), ("five", dihedral_quandle(5).table), ("flat", trivial_quandle(3).table)]
scan = conjecture_scan(catalog, bound=2, moduli=(5,))
for item in scan["items"]:
    print("\nscan:", item["quandle"], "->", item["status"])
    for cex in item.get("counterexamples") or []:
        print("    counterexample:", json.dumps(cex))
print("\nscan flags:", scan["flags"])
