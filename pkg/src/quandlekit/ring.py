"""Exact linear algebra over quandle rings.

Elements are finitely supported maps from basis keys to scalars; scalars
are Python ints (integers, integers mod m) or Fractions (rationals).
There is no floating point anywhere in this module.  Multiplication is
bilinear over a carrier object exposing op(x, y); the carrier need not
satisfy the quandle axioms, which lets the same arithmetic run over raw
magma tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CarrierMismatchError,
    CompositeModulusError,
    InvalidParamsError,
    RingMismatchError,
)
from .core import FiniteQuandle, MagmaTable, perm_order


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class CoeffRing:
    """Z, Z mod m, or Q.  Composite moduli are rejected unless forced."""

    kind: str  # "Z" | "Zmod" | "Q"
    modulus: int = 0
    forced: bool = False

    def __post_init__(self):
        if self.kind not in ("Z", "Zmod", "Q"):
            raise InvalidParamsError(f"unknown coefficient ring kind {self.kind!r}")
        if self.kind == "Zmod":
            if self.modulus < 2:
                raise InvalidParamsError("modulus must be >= 2")
            if not _is_prime(self.modulus) and not self.forced:
                raise CompositeModulusError(self.modulus)

    @property
    def tag(self) -> str:
        return f"Zmod:{self.modulus}" if self.kind == "Zmod" else self.kind

    @property
    def is_domain(self) -> bool:
        return self.kind != "Zmod" or _is_prime(self.modulus)

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind == "Zmod" else 0

    def coerce(self, value):
        if self.kind == "Q":
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise InvalidParamsError(f"{value} is not integral")
            value = value.numerator
        if isinstance(value, str):
            value = int(value)
        if not isinstance(value, int):
            raise InvalidParamsError(f"cannot coerce {value!r} into {self.tag}")
        return value % self.modulus if self.kind == "Zmod" else value

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def add(self, a, b):
        c = a + b
        return c % self.modulus if self.kind == "Zmod" else c

    def mul(self, a, b):
        c = a * b
        return c % self.modulus if self.kind == "Zmod" else c

    def neg(self, a):
        return (-a) % self.modulus if self.kind == "Zmod" else -a

    def invertible(self, n) -> bool:
        """Whether the image of the integer n is a unit."""
        if self.kind == "Z":
            return n in (1, -1)
        if self.kind == "Q":
            return n != 0
        return math.gcd(int(n), self.modulus) == 1

    def scalar_str(self, a) -> str:
        return str(a)

    def scalar_parse(self, s: str):
        if self.kind == "Q":
            return Fraction(s)
        return self.coerce(int(s))


ZZ = CoeffRing("Z")
QQ = CoeffRing("Q")


def IntegersMod(m: int, force: bool = False) -> CoeffRing:
    return CoeffRing("Zmod", modulus=int(m), forced=force)


def _key_order(key):
    return key if isinstance(key, int) else key.sort_key()


class RingElement:
    """Immutable finitely supported coefficient vector over basis keys.

    Keys are either quandle indices (ints) or free-quandle elements; an
    element never stores a zero coefficient and keeps its support sorted.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: CoeffRing, coeffs):
        acc: dict = {}
        for key, value in (coeffs.items() if isinstance(coeffs, dict) else coeffs):
            c = ring.coerce(value)
            if key in acc:
                c = ring.add(acc[key], c)
            acc[key] = c
        pruned = [(k, c) for k, c in acc.items() if c != 0]
        pruned.sort(key=lambda kc: _key_order(kc[0]))
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", tuple(pruned))

    def __setattr__(self, *_):
        raise AttributeError("RingElement is immutable")

    @property
    def support(self) -> tuple:
        return tuple(k for k, _ in self.coeffs)

    def coeff(self, key):
        for k, c in self.coeffs:
            if k == key:
                return c
        return self.ring.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, RingElement)
            and self.ring == other.ring
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __add__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring.tag} vs {other.ring.tag}")
        return RingElement(self.ring, list(self.coeffs) + list(other.coeffs))

    def __neg__(self):
        return RingElement(self.ring, [(k, self.ring.neg(c)) for k, c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self + (-other)

    def scale(self, scalar):
        c = self.ring.coerce(scalar)
        return RingElement(self.ring, [(k, self.ring.mul(c, v)) for k, v in self.coeffs])

    def sort_key(self):
        keys = tuple(_key_order(k) for k, _ in self.coeffs)
        return (len(self.coeffs), keys, tuple(c for _, c in self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in self.coeffs:
            label = f"e[{k}]"
            parts.append(f"{c}*{label}" if c != 1 else label)
        return " + ".join(parts).replace("+ -", "- ")


def basis(ring: CoeffRing, key) -> RingElement:
    return RingElement(ring, [(key, ring.one)])


def zero(ring: CoeffRing) -> RingElement:
    return RingElement(ring, [])


def add(u: RingElement, v: RingElement) -> RingElement:
    return u + v


def scalar_mul(c, u: RingElement) -> RingElement:
    return u.scale(c)


def mul(u: RingElement, v: RingElement, carrier) -> RingElement:
    """Bilinear product: e_x e_y = e_{x*y} extended over both supports."""
    if u.ring != v.ring:
        raise RingMismatchError(f"{u.ring.tag} vs {v.ring.tag}")
    contains = getattr(carrier, "contains_key", None)
    if contains is not None:
        for k in list(u.support) + list(v.support):
            if not contains(k):
                raise CarrierMismatchError(f"basis key {k!r} is not in the carrier")
    ring = u.ring
    acc: dict = {}
    for x, a in u.coeffs:
        for y, b in v.coeffs:
            key = carrier.op(x, y)
            c = ring.mul(a, b)
            if key in acc:
                acc[key] = ring.add(acc[key], c)
            else:
                acc[key] = c
    return RingElement(ring, acc)


def augmentation(u: RingElement):
    """Coefficient sum; a ring map onto the coefficients for any carrier."""
    total = u.ring.zero
    for _, c in u.coeffs:
        total = u.ring.add(total, c)
    return total


def is_idempotent(u: RingElement, carrier) -> bool:
    return not u.is_zero() and mul(u, u, carrier) == u


def orbit_sum(x: int, y: int, q: FiniteQuandle, ring: CoeffRing = ZZ) -> RingElement:
    """Sum of n_y repeated images of e_x under right multiplication by y.

    The sum always has n_y terms (n_y = order of S_y), so when the orbit
    of x is shorter the coefficients pile up.
    """
    if not (0 <= x < q.order and 0 <= y < q.order):
        raise InvalidParamsError("orbit_sum indices out of range")
    s_y = q.right_mults[y]
    n_y = perm_order(s_y)
    acc: dict[int, object] = {}
    point = x
    for _ in range(n_y):
        acc[point] = ring.add(acc.get(point, ring.zero), ring.one)
        point = s_y[point]
    return RingElement(ring, acc)


# ---------------------------------------------------------------------------
# matrices


class SquareMatrix:
    """Dense exact square matrix over a coefficient ring."""

    __slots__ = ("ring", "entries")

    def __init__(self, ring: CoeffRing, entries):
        rows = tuple(tuple(ring.coerce(v) for v in row) for row in entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvalidParamsError("matrix is not square")
        self.ring = ring
        self.entries = rows

    @property
    def size(self) -> int:
        return len(self.entries)

    def apply(self, vec) -> tuple:
        n = self.size
        if len(vec) != n:
            raise InvalidParamsError("vector length mismatch")
        out = []
        for i in range(n):
            total = self.ring.zero
            for j in range(n):
                total = self.ring.add(total, self.ring.mul(self.entries[i][j], vec[j]))
            out.append(total)
        return tuple(out)

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def __eq__(self, other):
        return (
            isinstance(other, SquareMatrix)
            and self.ring == other.ring
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.ring, self.entries))

    def to_json(self) -> dict:
        return {
            "ring": self.ring.tag,
            "entries": [[self.ring.scalar_str(v) for v in row] for row in self.entries],
        }


def right_mult_matrix(u: RingElement, q: FiniteQuandle | MagmaTable) -> SquareMatrix:
    """Matrix of w -> w*u on the basis: column k holds e_k * u."""
    n = q.order
    ring = u.ring
    cols = []
    for k in range(n):
        col = [ring.zero] * n
        for y, c in u.coeffs:
            if not isinstance(y, int) or not 0 <= y < n:
                raise CarrierMismatchError(f"basis key {y!r} is not in the carrier")
            z = q.table[k][y]
            col[z] = ring.add(col[z], c)
        cols.append(col)
    return SquareMatrix(ring, [[cols[k][z] for k in range(n)] for z in range(n)])


def is_ring_endomorphism(u: RingElement, q: FiniteQuandle) -> bool:
    """Whether w -> w*u preserves products, checked on all basis pairs."""
    n = q.order
    ring = u.ring
    image = [mul(basis(ring, k), u, q) for k in range(n)]
    for k in range(n):
        for l in range(n):
            if image[q.table[k][l]] != mul(image[k], image[l], q):
                return False
    return True


def _row_to_integers(row) -> list[int]:
    denom = 1
    for v in row:
        if isinstance(v, Fraction):
            denom = denom * v.denominator // math.gcd(denom, v.denominator)
    return [int(v * denom) if isinstance(v, Fraction) else v * denom for v in row]


def _kernel_mod_p(entries, p: int):
    """One nonzero kernel vector of the matrix over Z_p, or None."""
    n = len(entries)
    a = [[v % p for v in row] for row in entries]
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(n):
        pr = next((i for i in range(r, n) if a[i][col] % p != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = pow(a[r][col], p - 2, p)
        a[r] = [(v * inv) % p for v in a[r]]
        for i in range(n):
            if i != r and a[i][col] % p:
                f = a[i][col]
                a[i] = [(a[i][j] - f * a[r][j]) % p for j in range(n)]
        pivots.append((r, col))
        r += 1
        if r == n:
            break
    pivot_cols = {c for _, c in pivots}
    free = next((c for c in range(n) if c not in pivot_cols), None)
    if free is None:
        return None
    vec = [0] * n
    vec[free] = 1
    for row, col in pivots:
        vec[col] = (-a[row][free]) % p
    return tuple(vec)


def _kernel_exact(entries):
    """One kernel vector over Z or Q via fraction-free elimination.

    Rows are scaled to integers (kernel unchanged), reduced Bareiss-style
    so intermediate values stay integral, and a kernel vector is back
    substituted then scaled primitive.
    """
    n = len(entries)
    a = [_row_to_integers(row) for row in entries]
    pivots: list[tuple[int, int]] = []
    r = 0
    prev = 1
    for col in range(n):
        pr = next((i for i in range(r, n) if a[i][col] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        for i in range(r + 1, n):
            for j in range(n):
                if j == col:
                    continue
                a[i][j] = (a[r][col] * a[i][j] - a[i][col] * a[r][j]) // prev
            a[i][col] = 0
        prev = a[r][col]
        pivots.append((r, col))
        r += 1
        if r == n:
            break
    pivot_cols = {c for _, c in pivots}
    free = next((c for c in range(n) if c not in pivot_cols), None)
    if free is None:
        return None
    x = [Fraction(0)] * n
    x[free] = Fraction(1)
    for row, col in reversed(pivots):
        total = Fraction(0)
        for j in range(n):
            if j != col and a[row][j] != 0:
                total += a[row][j] * x[j]
        x[col] = -total / a[row][col]
    denom = 1
    for v in x:
        denom = denom * v.denominator // math.gcd(denom, v.denominator)
    ints = [int(v * denom) for v in x]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    ints = [v // g for v in ints]
    first = next(v for v in ints if v != 0)
    if first < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def kernel_vector(m: SquareMatrix):
    """A nonzero vector in the kernel, exact, or None if the kernel is 0."""
    if m.ring.kind == "Zmod":
        if not m.ring.is_domain:
            raise InvalidParamsError("kernel over a non-domain modulus is not supported")
        return _kernel_mod_p(m.entries, m.ring.modulus)
    vec = _kernel_exact(m.entries)
    if vec is None:
        return None
    if m.ring.kind == "Q":
        return tuple(Fraction(v) for v in vec)
    return vec


def has_nontrivial_right_annihilator(v: RingElement, q: FiniteQuandle | MagmaTable):
    """Decide whether some nonzero w satisfies w*v = 0; return (answer, witness).

    Over the integers the witness is scaled to a primitive integer vector.
    The witness is re-verified by an actual product before returning.
    """
    m = right_mult_matrix(v, q)
    vec = kernel_vector(m)
    if vec is None:
        return False, None
    witness = RingElement(v.ring, [(k, c) for k, c in enumerate(vec) if c != 0])
    assert mul(witness, v, q).is_zero()
    return True, witness


# ---------------------------------------------------------------------------
# serialization


def key_to_json(key):
    return key if isinstance(key, int) else str(key)


def element_to_json(u: RingElement) -> dict:
    return {
        "ring": u.ring.tag,
        "coeffs": [[key_to_json(k), u.ring.scalar_str(c)] for k, c in u.coeffs],
    }


def ring_from_tag(tag: str, force: bool = False) -> CoeffRing:
    if tag == "Z":
        return ZZ
    if tag == "Q":
        return QQ
    if tag.startswith("Zmod:"):
        return IntegersMod(int(tag.split(":", 1)[1]), force=force)
    raise InvalidParamsError(f"unknown ring tag {tag!r}")


def element_from_json(doc: dict, key_parser=None, force: bool = False) -> RingElement:
    ring = ring_from_tag(doc["ring"], force=force)
    pairs = []
    for key, coeff in doc["coeffs"]:
        if key_parser is not None:
            key = key_parser(key)
        elif not isinstance(key, int):
            raise InvalidParamsError(f"expected integer basis key, got {key!r}")
        pairs.append((key, ring.scalar_parse(str(coeff))))
    return RingElement(ring, pairs)
