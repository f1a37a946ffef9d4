"""
Building and validating finite quandles
=======================================

Every table-backed constructor in one place: dihedral, core, conj,
products, unions, twisted unions, and cyclic extensions, plus the
structural reports (properties, orbits, trivial subquandles).
"""

from quandlekit import (
    CocycleData,
    cocycle_extension,
    conj_quandle,
    core_quandle,
    dihedral_quandle,
    inner_orbits,
    make,
    product_quandle,
    properties,
    trivial_quandle,
    trivial_subquandles,
    twisted_union_quandle,
    union_quandle,
    validate_table,
)

# A quandle is just a validated multiplication table.  Row x, column y
# holds x*y; validation checks the three axioms and reports the first
# violation in a fixed order (columns, diagonal, distributivity).
r5 = dihedral_quandle(5)
print("dihedral of order 5:")
for row in r5.table:
    print("   ", row)
print("valid table:", validate_table(r5.table) == r5.table)

# The same tables come out of `make`, which is what the command line uses.
assert make("dihedral", 5).table == r5.table

# core quandles over cyclic groups: i*j = 2j - i componentwise.  Over a
# single odd factor this is the dihedral table again.
assert core_quandle([5]).table == r5.table
print("\ncore over Z2 x Z2 is trivial:", core_quandle([2, 2]).table == trivial_quandle(4).table)

# conj quandles act by conjugation inside a finite group, here S3 given
# by its multiplication table (row-times-column, identity first).
s3 = [
    [0, 1, 2, 3, 4, 5],
    [1, 0, 4, 5, 2, 3],
    [2, 3, 0, 1, 5, 4],
    [3, 2, 5, 4, 0, 1],
    [4, 5, 1, 0, 3, 2],
    [5, 4, 3, 2, 1, 0],
]
c = conj_quandle(s3)
print("\nconj(S3) properties:")
for key, value in sorted(properties(c).to_json().items()):
    print(f"    {key}: {value}")

# products pair the carriers coordinatewise; unions glue blocks that act
# trivially on themselves and project onto each other across blocks.
p = product_quandle(dihedral_quandle(3), trivial_quandle(2))
u = union_quandle([trivial_quandle(2), dihedral_quandle(3)])
print("\nproduct order:", p.order, "| union order:", u.order)
print("union orbits:", inner_orbits(u))

# a twisted union composes the cross-block projections with chosen
# permutations of each part; both parts must be trivial quandles.
tw = twisted_union_quandle(trivial_quandle(2), trivial_quandle(3), [1, 0], [1, 2, 0])
print("\ntwisted union table:")
for row in tw.table:
    print("   ", row)

# cyclic extensions stack |A| copies of a base quandle using a normalized
# 2-cocycle; the zero cocycle gives the plain product with a cyclic group.
alpha = [[0] * 3 for _ in range(3)]
data = CocycleData.from_parts(dihedral_quandle(3), 3, alpha)
ext = cocycle_extension(data)
print("\nzero-cocycle extension of order:", ext.order)

# trivial subquandles are where the interesting ring elements live later;
# the order-6 core table has exactly three, all pairs.
q = core_quandle([6])
print("core([6]) trivial pairs:", trivial_subquandles(q, 2))
