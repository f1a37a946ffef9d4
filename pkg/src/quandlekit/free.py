"""Normal forms for free quandles on finitely many generators.

An element is a conjugate u x_b u^{-1} of a generator inside the free
group, stored as the pair (base b, conjugator u) with u a reduced word
that does not end in a power of x_b.  That representation is unique, so
equality, hashing and ordering are all syntactic.

Words are tuples of syllables (generator, nonzero exponent) with
adjacent generators distinct.  The quandle operation conjugates:
a * b = b^ a b^{-1} where b^ is the full word of b, and the inverse
operation conjugates the other way.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from functools import reduce as _fold

from .errors import BudgetExceededError, IndexOutOfRangeError, InvalidParamsError
from .reports import IdempotentReport
from .ring import ZZ, RingElement

Word = tuple[tuple[int, int], ...]


def reduce_word(syllables) -> Word:
    """Merge adjacent same-generator syllables and drop zero exponents."""
    stack: list[tuple[int, int]] = []
    for g, e in syllables:
        g, e = int(g), int(e)
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            merged = stack[-1][1] + e
            stack.pop()
            if merged:
                stack.append((g, merged))
        else:
            stack.append((g, e))
    return tuple(stack)


def word_mul(a: Word, b: Word) -> Word:
    return reduce_word(tuple(a) + tuple(b))


def word_inv(a: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(a))


def letter_count(a: Word) -> int:
    return sum(abs(e) for _, e in a)


def letters(a: Word) -> tuple[tuple[int, int], ...]:
    """Flatten syllables into single letters (generator, +1 or -1)."""
    out = []
    for g, e in a:
        sign = 1 if e > 0 else -1
        out.extend((g, sign) for _ in range(abs(e)))
    return tuple(out)


class FreeQuandleElement:
    """Conjugate of a generator, in canonical (base, conjugator) form."""

    __slots__ = ("base", "conjugator")

    def __init__(self, base: int, conjugator=()):
        conj = reduce_word(conjugator)
        # a trailing power of the base commutes past it and cancels
        if conj and conj[-1][0] == base:
            conj = conj[:-1]
        object.__setattr__(self, "base", int(base))
        object.__setattr__(self, "conjugator", conj)

    def __setattr__(self, *_):
        raise AttributeError("FreeQuandleElement is immutable")

    def full_word(self) -> Word:
        return self.conjugator + ((self.base, 1),) + word_inv(self.conjugator)

    def __eq__(self, other):
        return (
            isinstance(other, FreeQuandleElement)
            and self.base == other.base
            and self.conjugator == other.conjugator
        )

    def __hash__(self):
        return hash((self.base, self.conjugator))

    def sort_key(self):
        return (length(self), self.base, letters(self.conjugator))

    def to_expr(self) -> "LeftAssocExpr":
        return LeftAssocExpr(self.base, tuple(reversed(letters(self.conjugator))))

    def __str__(self):
        return render_expr(self.to_expr())

    def __repr__(self):
        return f"<{self}>"


def generator(i: int) -> FreeQuandleElement:
    return FreeQuandleElement(i)


def length(elem: FreeQuandleElement) -> int:
    """1 plus the letter count of the canonical conjugator."""
    return 1 + letter_count(elem.conjugator)


def fq_op(a: FreeQuandleElement, b: FreeQuandleElement, sign: int = 1) -> FreeQuandleElement:
    """a * b (sign +1) or a *^{-1} b (sign -1): conjugation by b's word."""
    if sign not in (1, -1):
        raise InvalidParamsError("sign must be +1 or -1")
    w = b.full_word()
    if sign < 0:
        w = word_inv(w)
    return FreeQuandleElement(a.base, word_mul(w, a.conjugator))


def products_stay_long(words, rank: int) -> bool:
    """True when no product of the given words collapses to a generator.

    Checks every w_k * w_l for k != l and every w_k * x over the
    generators x: all must have length at least 2.  A bare generator in
    the list fails through w * w with itself as x.
    """
    words = list(words)
    gens = [generator(i) for i in range(rank)]
    for k, a in enumerate(words):
        for l, b in enumerate(words):
            if k != l and length(fq_op(a, b)) < 2:
                return False
        for x in gens:
            if length(fq_op(a, x)) < 2:
                return False
    return True


class FreeQuandle:
    """Carrier object for ring arithmetic over a free quandle basis."""

    def __init__(self, rank: int):
        if rank < 1:
            raise InvalidParamsError("rank must be >= 1")
        self.rank = rank
        self._memo: dict = {}

    def contains_key(self, key) -> bool:
        return (
            isinstance(key, FreeQuandleElement)
            and 0 <= key.base < self.rank
            and all(0 <= g < self.rank for g, _ in key.conjugator)
        )

    def op(self, a: FreeQuandleElement, b: FreeQuandleElement) -> FreeQuandleElement:
        got = self._memo.get((a, b))
        if got is None:
            got = fq_op(a, b)
            self._memo[(a, b)] = got
        return got


# ---------------------------------------------------------------------------
# left-associated expressions


@dataclass(frozen=True)
class LeftAssocExpr:
    """head *^{s_1} g_1 *^{s_2} g_2 ... applied left to right."""

    head: int
    tail: tuple[tuple[int, int], ...]


def canonicalize_expr(expr: LeftAssocExpr) -> LeftAssocExpr:
    """Cancel adjacent inverse pairs, then strip leading self-actions.

    Both rewrites preserve the value: acting by y then by y the other way
    is the identity, and any generator acting on itself fixes it.  The
    result has head distinct from the first tail letter and equal
    adjacent tail generators carrying equal signs.
    """
    stack: list[tuple[int, int]] = []
    for g, s in expr.tail:
        if stack and stack[-1][0] == g and stack[-1][1] == -s:
            stack.pop()
        else:
            stack.append((g, s))
    while stack and stack[0][0] == expr.head:
        stack.pop(0)
    return LeftAssocExpr(expr.head, tuple(stack))


def render_expr(expr: LeftAssocExpr) -> str:
    parts = [f"g{expr.head}"]
    for g, s in expr.tail:
        parts.append(f"g{g}" + ("^-1" if s < 0 else ""))
    return "*".join(parts)


def parse_expr(text: str) -> LeftAssocExpr:
    items = text.strip().split("*")
    if not items or not items[0]:
        raise InvalidParamsError(f"cannot parse expression {text!r}")

    def gen_of(tok: str) -> tuple[int, int]:
        sign = 1
        if tok.endswith("^-1"):
            sign = -1
            tok = tok[:-3]
        if not tok.startswith("g") or not tok[1:].isdigit():
            raise InvalidParamsError(f"bad generator token {tok!r}")
        return int(tok[1:]), sign

    head, head_sign = gen_of(items[0])
    if head_sign != 1:
        raise InvalidParamsError("expression head cannot carry an inverse")
    return LeftAssocExpr(head, tuple(gen_of(tok) for tok in items[1:]))


def eval_expr(expr: LeftAssocExpr, rank: int) -> FreeQuandleElement:
    """Fold the expression through fq_op, checking generator indices."""
    if not 0 <= expr.head < rank:
        raise IndexOutOfRangeError(f"generator g{expr.head} outside rank {rank}")
    for g, _ in expr.tail:
        if not 0 <= g < rank:
            raise IndexOutOfRangeError(f"generator g{g} outside rank {rank}")
    return _fold(lambda acc, gs: fq_op(acc, generator(gs[0]), gs[1]), expr.tail, generator(expr.head))


def parse_element(text: str, rank: int) -> FreeQuandleElement:
    return eval_expr(parse_expr(text), rank)


def left_assoc_product(expr_a: LeftAssocExpr, expr_b: LeftAssocExpr, mu0: int = 1) -> LeftAssocExpr:
    """Left-associated form of (value of A) *^{mu0} (value of B).

    The second factor's action unwraps into the tail: undo B's tail
    right to left, act by B's head, then redo the tail.  The output is
    recanonicalized, and its value is checked against the direct product.
    """
    if mu0 not in (1, -1):
        raise InvalidParamsError("mu0 must be +1 or -1")
    tail = list(expr_a.tail)
    tail.extend((g, -s) for g, s in reversed(expr_b.tail))
    tail.append((expr_b.head, mu0))
    tail.extend(expr_b.tail)
    out = canonicalize_expr(LeftAssocExpr(expr_a.head, tuple(tail)))
    rank = 1 + max(
        [expr_a.head, expr_b.head]
        + [g for g, _ in expr_a.tail]
        + [g for g, _ in expr_b.tail]
    )
    assert eval_expr(out, rank) == fq_op(eval_expr(expr_a, rank), eval_expr(expr_b, rank), mu0)
    return out


# ---------------------------------------------------------------------------
# enumeration and bounded idempotent search


def enumerate_elements(rank: int, max_len: int) -> list[FreeQuandleElement]:
    """All elements of length <= max_len, sorted by (length, base, word)."""
    if rank < 1 or max_len < 1:
        raise InvalidParamsError("rank and max_len must be >= 1")
    sequences: list[list[tuple[int, int]]] = [[]]
    frontier: list[list[tuple[int, int]]] = [[]]
    for _ in range(max_len - 1):
        nxt = []
        for seq in frontier:
            for g in range(rank):
                for s in (1, -1):
                    if seq and seq[-1] == (g, -s):
                        continue
                    nxt.append(seq + [(g, s)])
        sequences.extend(nxt)
        frontier = nxt
    out = []
    for base in range(rank):
        for seq in sequences:
            if seq and seq[-1][0] == base:
                continue
            out.append(FreeQuandleElement(base, tuple(seq)))
    out.sort(key=lambda e: e.sort_key())
    return out


def fq_idempotent_search(
    rank: int,
    max_len: int,
    max_support: int,
    bound: int,
    budget: int = 10**8,
) -> IdempotentReport:
    """Exhaustive idempotent search over a bounded window of Z[free quandle].

    Candidates are supported on at most max_support elements of length
    <= max_len with nonzero coefficients in [-bound, bound].  Products of
    candidates may leave the window; the arithmetic is exact over the
    infinite basis, only the support of candidates is restricted.
    Candidates whose coefficient sum is not 0 or 1 cannot square to
    themselves over the integers and are skipped.
    """
    if max_support < 1 or bound < 1:
        raise InvalidParamsError("max_support and bound must be >= 1")
    start = time.monotonic()
    universe = enumerate_elements(rank, max_len)
    u_count = len(universe)
    total = 0
    for k in range(1, min(max_support, u_count) + 1):
        total += math.comb(u_count, k) * (2 * bound) ** k
    if total > budget:
        raise BudgetExceededError(total, budget)
    carrier = FreeQuandle(rank)
    nonzero = [c for c in range(-bound, bound + 1) if c != 0]
    found: list[RingElement] = []
    tested = 0
    for k in range(1, min(max_support, u_count) + 1):
        for subset in itertools.combinations(range(u_count), k):
            elems = [universe[i] for i in subset]
            prods = [[carrier.op(a, b) for b in elems] for a in elems]
            for coeffs in itertools.product(nonzero, repeat=k):
                tested += 1
                if sum(coeffs) not in (0, 1):
                    continue
                square: dict = {}
                for i in range(k):
                    ci = coeffs[i]
                    row = prods[i]
                    for j in range(k):
                        key = row[j]
                        square[key] = square.get(key, 0) + ci * coeffs[j]
                if {e: c for e, c in zip(elems, coeffs)} == {
                    e: c for e, c in square.items() if c
                }:
                    found.append(RingElement(ZZ, list(zip(elems, coeffs))))
    elapsed = int((time.monotonic() - start) * 1000)
    spec = {
        "ring": "Z",
        "rank": rank,
        "max_len": max_len,
        "max_support": max_support,
        "box_bound": bound,
    }
    flags = [
        f"complete for supports inside the {u_count} elements of length <= {max_len}",
        f"coefficients limited to |c| <= {bound}",
    ]
    return IdempotentReport(
        quandle=f"free({rank})",
        order=None,
        spec=spec,
        idempotents=found,
        exhaustive=True,
        flags=flags,
        candidates_tested=tested,
        elapsed_ms=elapsed,
    )
