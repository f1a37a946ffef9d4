"""
Exact arithmetic in quandle rings
=================================

Ring elements are finitely supported coefficient vectors over the
quandle's basis; the product extends e_x e_y = e_{x*y} bilinearly and
is usually neither associative nor right distributive over itself.
"""

import pathlib
from fractions import Fraction

from quandlekit import (
    QQ,
    ZZ,
    IntegersMod,
    RingElement,
    augmentation,
    basis,
    core_quandle,
    is_idempotent,
    is_ring_endomorphism,
    load_quandle,
    mul,
    orbit_sum,
    right_mult_matrix,
    scalar_mul,
    zero,
)

q = core_quandle([6])

# Elements print with the basis spelled out; arithmetic never rounds.
u = RingElement(ZZ, [(0, 2), (3, -1)])
print("u =", u)
print("u + u =", u + u)
print("3u =", scalar_mul(3, u))
print("augmentation of u:", augmentation(u))

# The basis elements are idempotent by the quandle diagonal; sums are not.
e0, e1 = basis(ZZ, 0), basis(ZZ, 1)
print("\ne0 idempotent:", is_idempotent(e0, q))
print("e0 + e1 squared:", mul(e0 + e1, e0 + e1, q))

# u above is idempotent even though it is supported on two basis points:
# both points sit in one fiber of the order-3 quotient and the masses
# add to 1.
print("u squared:", mul(u, u, q), "| idempotent:", is_idempotent(u, q))

# The product is not right distributive inside the ring.  Take w with
# two-point support and compare (uv)w against (uw)(vw).
a, b = basis(QQ, 0), basis(QQ, 3)
w = RingElement(QQ, [(4, 2), (5, -1)])
lhs = mul(mul(a, b, q), w, q)
rhs = mul(mul(a, w, q), mul(b, w, q), q)
print("\n(uv)w =", lhs)
print("(uw)(vw) =", rhs)
print("right distributive here:", lhs == rhs)

# Over the rationals, averaging a trivial pair can produce a projector
# that kills another pair difference outright.  That needs a table whose
# paired points share right translations, like the order-6 fixture with
# trivial pairs {0,1}, {2,3}, {4,5}.
fixtures = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
q6 = load_quandle(str(fixtures / "pairs6.json"))
h = RingElement(QQ, [(0, Fraction(1, 2)), (1, Fraction(1, 2))])
d = RingElement(QQ, [(2, 1), (3, -1)])
print("\n(e2 - e3) * h =", mul(d, h, q6), "== 0:", mul(d, h, q6) == zero(QQ))

# Fiber differences are two-sided annihilators: the whole matrix is zero,
# so every ring element right-multiplies them to nothing.
ann = RingElement(ZZ, [(0, 1), (3, -1)])
m = right_mult_matrix(ann, q)
print("right-mult matrix of e0 - e3 is zero:", all(v == 0 for row in m.entries for v in row))

# Orbit sums collapse under right translation, which makes them handy
# building blocks: translating by e_y fixes the sum exactly.
s = orbit_sum(1, 0, q)
print("\norbit sum [e1]_0 =", s, "| fixed by e0:", mul(s, basis(ZZ, 0), q) == s)

# Right multiplication by an idempotent of a medial quandle respects the
# whole ring structure.
print("right-mult by u is a ring endomorphism:", is_ring_endomorphism(u, q))

# Modular coefficients use the same element type with a tagged ring.
z5 = IntegersMod(5)
v = RingElement(z5, [(0, 2), (1, 2), (2, 2), (3, 2), (4, 2), (5, 2)])
print("\nmod-5 element:", v, "| augmentation:", augmentation(v))
