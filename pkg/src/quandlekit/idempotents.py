"""Idempotent searches, covering-derived families, and cross-checks.

Enumerations are exhaustive for a declared scope: a prime modulus, or an
integer coefficient box.  Over an integral domain the coefficient sum of
an idempotent is 0 or 1, so the space is swept in augmentation strata;
a non-domain modulus (forced) widens to all strata on request and the
report says the claim is weaker.

Family constructors build idempotents from structure (coverings, even
dihedral tables, unions) and every construction is re-checked by exact
multiplication before it is returned.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

from . import _search_kernel
from .core import (
    Covering,
    FiniteQuandle,
    MagmaTable,
    core_quandle,
    dihedral_quandle,
    perm_order,
    properties,
    union_quandle,
    twisted_union_quandle,
)
from .errors import (
    BudgetExceededError,
    ConstraintViolatedError,
    HypothesisFailedError,
    InvalidParamsError,
    NotIdempotentInputError,
    NotNilpotentError,
    QuandleKitError,
    RingMismatchError,
)
from .reports import IdempotentReport
from .ring import (
    CoeffRing,
    IntegersMod,
    RingElement,
    ZZ,
    augmentation,
    basis,
    element_to_json,
    is_idempotent,
    mul,
    orbit_sum,
    right_mult_matrix,
    ring_from_tag,
    zero,
)


@dataclass(frozen=True)
class SearchSpec:
    """Scope of an enumeration: ring, coefficient box, support cap, strata."""

    ring: CoeffRing
    box_bound: int | None = None
    max_support: int | None = None  # None = unrestricted
    augmentation: tuple[int, ...] | None = (0, 1)  # None = all strata

    def to_json(self) -> dict:
        return {
            "ring": self.ring.tag,
            "box_bound": self.box_bound,
            "max_support": "all" if self.max_support is None else self.max_support,
            "augmentation": "any" if self.augmentation is None else list(self.augmentation),
        }


def _chunk_ranges(space: int, jobs: int) -> list[tuple[int, int]]:
    if space <= 0:
        return []
    pieces = 1 if space < 8192 else max(1, min(jobs, space))
    step = (space + pieces - 1) // pieces
    return [(s, min(space, s + step)) for s in range(0, space, step)]


def _run_tasks(tasks, jobs: int):
    if jobs <= 1 or len(tasks) <= 1:
        return [_search_kernel.evaluate_chunk(t) for t in tasks]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_search_kernel.evaluate_chunk, tasks))


def _enumerate_table(
    carrier: FiniteQuandle | MagmaTable,
    spec: SearchSpec,
    mode: str,
    param: int,
    budget: int,
    jobs: int,
) -> IdempotentReport:
    start = time.monotonic()
    n = carrier.order
    stratified = spec.augmentation is not None
    space = _search_kernel.space_size(n, mode, param, stratified)
    total = space * (len(spec.augmentation) if stratified else 1)
    if total > budget:
        raise BudgetExceededError(total, budget)
    max_support = n if spec.max_support is None else min(spec.max_support, n)
    strata = sorted(spec.augmentation) if stratified else [None]
    tasks = [
        (carrier.table, n, mode, param, s, a, b, max_support)
        for s in strata
        for (a, b) in _chunk_ranges(space, jobs)
    ]
    seen: set[tuple[int, ...]] = set()
    found: list[RingElement] = []
    tested = 0
    for hits, count in _run_tasks(tasks, jobs):
        tested += count
        for vec in hits:
            if vec in seen:
                continue
            seen.add(vec)
            u = RingElement(spec.ring, list(enumerate(vec)))
            # exact re-verification of every kernel hit
            assert is_idempotent(u, carrier), f"kernel hit fails exact recheck: {vec}"
            if spec.ring.is_domain:
                assert augmentation(u) in (spec.ring.zero, spec.ring.one)
            found.append(u)
    flags = []
    exhaustive = True
    if not carrier.is_quandle:
        flags.append("not a quandle")
    if mode == "zbox":
        flags.append(f"complete within |coefficient| <= {param}; nothing claimed outside the box")
    if spec.ring.invertible(n):
        flags.append("|X| invertible in k")
    if spec.ring.kind == "Zmod" and spec.ring.modulus == 2:
        flags.append("two-element coefficient ring")
    if not spec.ring.is_domain:
        flags.append("non-domain coefficients")
        if stratified:
            flags.append("augmentation strata assume a domain; rerun with augmentation=any for completeness")
            exhaustive = False
    if max_support < n:
        flags.append(f"support limited to <= {max_support} basis elements")
    elapsed = int((time.monotonic() - start) * 1000)
    return IdempotentReport(
        quandle=carrier.name or f"order-{n}",
        order=n,
        spec=spec.to_json(),
        idempotents=sorted(found, key=lambda u: u.sort_key()),
        exhaustive=exhaustive,
        flags=flags,
        candidates_tested=tested,
        elapsed_ms=elapsed,
    )


def enumerate_mod_p(
    carrier: FiniteQuandle | MagmaTable,
    p: int,
    max_support: int | None = None,
    augmentation_filter: tuple[int, ...] | None = (0, 1),
    budget: int = 10**8,
    jobs: int = 1,
    force: bool = False,
) -> IdempotentReport:
    """Every idempotent of the mod-p quandle ring, stratified by coefficient sum."""
    ring = IntegersMod(p, force=force)
    spec = SearchSpec(ring, None, max_support, augmentation_filter)
    return _enumerate_table(carrier, spec, "zp", p, budget, jobs)


def enumerate_boxed_Z(
    carrier: FiniteQuandle | MagmaTable,
    bound: int,
    max_support: int | None = None,
    augmentation_filter: tuple[int, ...] | None = (0, 1),
    budget: int = 10**8,
    jobs: int = 1,
) -> IdempotentReport:
    """Every integer idempotent with all coefficients in [-bound, bound]."""
    if bound < 1:
        raise InvalidParamsError("bound must be >= 1")
    spec = SearchSpec(ZZ, bound, max_support, augmentation_filter)
    return _enumerate_table(carrier, spec, "zbox", bound, budget, jobs)


# ---------------------------------------------------------------------------
# covering families


@dataclass(frozen=True)
class CoveringFamilyParams:
    """Structure data for one covering-derived idempotent.

    unit_coeffs assigns coefficients summing to 1 inside the fiber over
    unit_fiber; base_point is a member of that support whose right
    multiplication drives the orbit sums; zero_sum_coeffs assigns, per
    codomain index, fiber coefficients summing to 0.
    """

    ring: CoeffRing
    unit_fiber: int
    base_point: int
    unit_coeffs: tuple[tuple[int, object], ...]
    zero_sum_coeffs: tuple[tuple[int, tuple[tuple[int, object], ...]], ...]

    def to_json(self) -> dict:
        return {
            "ring": self.ring.tag,
            "unit_fiber": self.unit_fiber,
            "base_point": self.base_point,
            "unit_coeffs": [[x, self.ring.scalar_str(c)] for x, c in self.unit_coeffs],
            "zero_sum_coeffs": [
                [y, [[x, self.ring.scalar_str(c)] for x, c in pairs]]
                for y, pairs in self.zero_sum_coeffs
            ],
        }


def covering_family_params(
    covering: Covering,
    ring: CoeffRing,
    unit_fiber: int,
    unit_coeffs: dict,
    base_point: int,
    zero_sum_coeffs: dict | None = None,
) -> CoveringFamilyParams:
    """Validate and freeze family parameters against the covering."""
    fibers = covering.fibers
    if unit_fiber not in fibers:
        raise ConstraintViolatedError(f"{unit_fiber} is not a codomain index")
    unit_pairs = tuple(sorted((int(x), ring.coerce(c)) for x, c in unit_coeffs.items()))
    if not unit_pairs:
        raise ConstraintViolatedError("unit part must be nonempty")
    for x, _ in unit_pairs:
        if x not in fibers[unit_fiber]:
            raise ConstraintViolatedError(f"{x} is not in the fiber over {unit_fiber}")
    total = ring.zero
    for _, c in unit_pairs:
        total = ring.add(total, c)
    if total != ring.one:
        raise ConstraintViolatedError(f"unit coefficients sum to {total}, need 1")
    if base_point not in {x for x, _ in unit_pairs}:
        raise ConstraintViolatedError(f"base point {base_point} is outside the unit support")
    frozen = []
    for y, coeffs in sorted((zero_sum_coeffs or {}).items()):
        if y not in fibers:
            raise ConstraintViolatedError(f"{y} is not a codomain index")
        pairs = tuple(sorted((int(x), ring.coerce(c)) for x, c in coeffs.items()))
        for x, _ in pairs:
            if x not in fibers[y]:
                raise ConstraintViolatedError(f"{x} is not in the fiber over {y}")
        s = ring.zero
        for _, c in pairs:
            s = ring.add(s, c)
        if s != ring.zero:
            raise ConstraintViolatedError(f"coefficients over {y} sum to {s}, need 0")
        if pairs:
            frozen.append((int(y), pairs))
    return CoveringFamilyParams(ring, int(unit_fiber), int(base_point), unit_pairs, tuple(frozen))


def family_params_from_json(covering: Covering, doc: dict) -> CoveringFamilyParams:
    ring = ring_from_tag(doc["ring"])
    unit = {int(x): ring.scalar_parse(str(c)) for x, c in doc["unit_coeffs"]}
    zs = {
        int(y): {int(x): ring.scalar_parse(str(c)) for x, c in pairs}
        for y, pairs in doc.get("zero_sum_coeffs", [])
    }
    return covering_family_params(
        covering, ring, int(doc["unit_fiber"]), unit, int(doc["base_point"]), zs
    )


def _assemble_family_element(covering: Covering, params: CoveringFamilyParams) -> RingElement:
    domain = covering.hom.domain
    ring = params.ring
    u = RingElement(ring, list(params.unit_coeffs))
    for _, pairs in params.zero_sum_coeffs:
        for x, a in pairs:
            u = u + orbit_sum(x, params.base_point, domain, ring).scale(a)
    return u


def covering_idempotent(covering: Covering, params: CoveringFamilyParams) -> RingElement:
    """Assemble the family element; the result is checked idempotent."""
    u = _assemble_family_element(covering, params)
    assert is_idempotent(u, covering.hom.domain), "family element failed the idempotency check"
    return u


@dataclass
class FamilyVerifyReport:
    verified: bool
    structures: int
    cases: int
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "verified": self.verified,
            "structures": self.structures,
            "cases": self.cases,
            "failures": self.failures,
            "notes": list(self.notes),
        }


def covering_family_verify(
    covering: Covering,
    ring: CoeffRing = ZZ,
    grid: tuple[int, ...] = (-1, 0, 1),
    max_j: int = 2,
    budget: int = 10**6,
) -> FamilyVerifyReport:
    """Sweep the family's structural choices and certify idempotency on a grid.

    Structural choices: every subset J of the codomain with |J| <= max_j,
    every unit fiber, every base point, full fibers throughout.  Free
    coefficients run over the grid; the last coefficient of each group is
    determined by its sum constraint.  The idempotency defect has degree
    at most 2 in each free coefficient, so vanishing on three points per
    coefficient certifies every scalar value from an infinite domain.
    """
    if not isinstance(covering, Covering):
        raise TypeError("covering_family_verify needs a Covering, not a bare hom")
    fibers = covering.fibers
    codomain = sorted(fibers)
    # count the sweep before running it
    structures = 0
    cases = 0
    for size in range(0, max_j + 1):
        for j_set in itertools.combinations(codomain, size):
            free = sum(len(fibers[y]) - 1 for y in j_set)
            for y0 in codomain:
                k0 = len(fibers[y0])
                structures += k0
                cases += k0 * len(grid) ** (free + k0 - 1)
    if cases > budget:
        raise BudgetExceededError(cases, budget)
    report = FamilyVerifyReport(True, structures, 0)
    for size in range(0, max_j + 1):
        for j_set in itertools.combinations(codomain, size):
            for y0 in codomain:
                fiber0 = fibers[y0]
                for x0 in fiber0:
                    free_slots = [(y, x) for y in j_set for x in fibers[y][:-1]]
                    unit_slots = list(fiber0[:-1])
                    width = len(free_slots) + len(unit_slots)
                    for point in itertools.product(grid, repeat=width):
                        zs: dict[int, dict[int, object]] = {}
                        for (y, x), c in zip(free_slots, point):
                            zs.setdefault(y, {})[x] = c
                        for y in j_set:
                            rest = -sum(zs.get(y, {}).values())
                            zs.setdefault(y, {})[fibers[y][-1]] = rest
                        unit = dict(zip(unit_slots, point[len(free_slots):]))
                        unit[fiber0[-1]] = 1 - sum(unit.values())
                        params = covering_family_params(covering, ring, y0, unit, x0, zs)
                        u = _assemble_family_element(covering, params)
                        report.cases += 1
                        if not u.is_zero() and mul(u, u, covering.hom.domain) != u:
                            report.verified = False
                            report.failures.append(params.to_json())
    report.notes.append(
        "grid {-1,0,1} per free coefficient certifies all coefficient values: "
        "the idempotency defect is polynomial of degree <= 2 in each free coefficient"
    )
    return report


@dataclass
class ClassifyResult:
    in_family: bool
    params: CoveringFamilyParams | None = None
    reason: str | None = None
    flags: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "in_family": self.in_family,
            "params": self.params.to_json() if self.params else None,
            "reason": self.reason,
            "flags": list(self.flags),
        }


def covering_classify(u: RingElement, covering: Covering) -> ClassifyResult:
    """Decompose an idempotent into unit part plus orbit sums, if possible.

    Splits u as v + w with w the fiber part over the unique unit-mass
    codomain index, then reconstructs v as a combination of orbit sums of
    the base point's right multiplication.  Works extensionally: only the
    element's own fiber sums and orbit structure matter, not a particular
    choice of representatives.
    """
    domain = covering.hom.domain
    ring = u.ring
    flags = ["codomain ring attested to have only trivial idempotents"]
    if not is_idempotent(u, domain):
        raise NotIdempotentInputError("element is not idempotent (its square differs)")
    images = covering.hom.images
    fiber_sum: dict[int, object] = {y: ring.zero for y in covering.fibers}
    for x, c in u.coeffs:
        fiber_sum[images[x]] = ring.add(fiber_sum[images[x]], c)
    units = [y for y, s in fiber_sum.items() if s == ring.one]
    rest = [y for y, s in fiber_sum.items() if s not in (ring.zero, ring.one)]
    if len(units) != 1 or rest:
        return ClassifyResult(False, reason="fiber sums are not a single unit mass", flags=flags)
    y0 = units[0]
    fiber0 = set(covering.fibers[y0])
    w = RingElement(ring, [(x, c) for x, c in u.coeffs if x in fiber0])
    v = u - w
    x0 = min(w.support)
    if v.is_zero():
        params = covering_family_params(
            covering, ring, y0, dict(w.coeffs), x0, {}
        )
        return ClassifyResult(True, params=params, flags=flags)
    if mul(v, w, domain) != v:
        return ClassifyResult(
            False, reason="orbit part is not stabilized by the unit part", flags=flags
        )
    sigma = domain.right_mults[x0]
    n_sigma = perm_order(sigma)
    # sigma-orbits of the domain, keyed by least element
    seen = [False] * domain.order
    orbits = []
    for s in range(domain.order):
        if seen[s]:
            continue
        orbit = []
        t = s
        while not seen[t]:
            seen[t] = True
            orbit.append(t)
            t = sigma[t]
        orbits.append(orbit)
    coeff = dict(v.coeffs)
    collected = []  # (orbit, multiplier)
    for orbit in orbits:
        values = {coeff.get(t, ring.zero) for t in orbit}
        if len(values) > 1:
            return ClassifyResult(
                False, reason="coefficients are not constant on a right-multiplication orbit", flags=flags
            )
        c = values.pop()
        if c == ring.zero:
            continue
        q = n_sigma // len(orbit)
        m = _solve_scale(ring, q, c)
        if m is None:
            return ClassifyResult(
                False,
                reason="orbit multiplicity does not divide the orbit coefficient",
                flags=flags,
            )
        collected.append((orbit, m))
    # induced permutation on the codomain and its orbits
    sigma_bar = {y: images[sigma[covering.fibers[y][0]]] for y in covering.fibers}
    fiber_class: dict[int, int] = {}
    for y in covering.fibers:
        if y in fiber_class:
            continue
        cycle = [y]
        t = sigma_bar[y]
        while t != y:
            cycle.append(t)
            t = sigma_bar[t]
        least = min(cycle)
        for z in cycle:
            fiber_class[z] = least
    groups: dict[int, dict[int, object]] = {}
    for orbit, m in collected:
        y_star = fiber_class[images[orbit[0]]]
        rep = min(t for t in orbit if images[t] == y_star)
        groups.setdefault(y_star, {})[rep] = m
    for y_star, reps in groups.items():
        total = ring.zero
        for m in reps.values():
            total = ring.add(total, m)
        if total != ring.zero:
            return ClassifyResult(
                False, reason="orbit multipliers do not cancel over a fiber class", flags=flags
            )
    params = covering_family_params(covering, ring, y0, dict(w.coeffs), x0, groups)
    assert _assemble_family_element(covering, params) == u, "classification failed to round-trip"
    return ClassifyResult(True, params=params, flags=flags)


def _solve_scale(ring: CoeffRing, q: int, c):
    """Solve m * q = c in the ring, or None."""
    if ring.kind == "Z":
        return c // q if c % q == 0 else None
    if ring.kind == "Q":
        return c / q
    qm = q % ring.modulus
    if qm == 0:
        return None
    return (c * pow(qm, -1, ring.modulus)) % ring.modulus


# ---------------------------------------------------------------------------
# even dihedral family


def dihedral_even_family(n: int, j: int, beta, alphas, ring: CoeffRing = ZZ) -> RingElement:
    """Idempotent of the order-2n dihedral table built from its mod-n covering.

    n must be odd, j picks the unit fiber {j, n+j}, beta splits the unit
    mass over it, and alphas (one per index 0..(n-1)/2) weight the
    reflection-orbit differences.  Indices are mod 2n.
    """
    if n < 1 or n % 2 == 0:
        raise InvalidParamsError("n must be odd")
    if not 0 <= j < n:
        raise InvalidParamsError(f"j must be in [0, {n})")
    m = (n - 1) // 2
    alphas = list(alphas)
    if len(alphas) != m + 1:
        raise InvalidParamsError(f"need {m + 1} alpha values, got {len(alphas)}")
    beta = ring.coerce(beta)
    order = 2 * n
    pairs = [(j, beta), (n + j, ring.add(ring.one, ring.neg(beta)))]
    for i, a in enumerate(alphas):
        a = ring.coerce(a)
        pairs.append((i % order, a))
        pairs.append(((n + i) % order, ring.neg(a)))
        pairs.append(((2 * j - i) % order, a))
        pairs.append(((n + 2 * j - i) % order, ring.neg(a)))
    u = RingElement(ring, pairs)
    assert is_idempotent(u, dihedral_quandle(order)), "family element failed the idempotency check"
    return u


# ---------------------------------------------------------------------------
# unions


def _block_offsets(parts) -> list[int]:
    offsets = []
    total = 0
    for p in parts:
        offsets.append(total)
        total += p.order
    return offsets


def _lift(u: RingElement, offset: int) -> RingElement:
    return RingElement(u.ring, [(k + offset, c) for k, c in u.coeffs])


def union_idempotents(
    parts,
    kind: str,
    weights=None,
    elements=None,
    unit_index: int | None = None,
    ring: CoeffRing = ZZ,
) -> RingElement:
    """Build an idempotent of the disjoint-union ring from per-part data.

    kind "weighted_idempotents": elements are per-part idempotents with
    coefficient sum 1; weights sum to 1; result is the weighted sum.
    kind "nilpotent_perturbation": the element at unit_index is an
    idempotent with coefficient sum 1, every other element squares to
    zero; result is the plain sum.
    kind "component_mass": weights only; sum of weight * block size must
    be 1; result spreads each weight uniformly over its block.
    """
    parts = list(parts)
    union_q = union_quandle(parts)
    offsets = _block_offsets(parts)
    if kind == "weighted_idempotents":
        if elements is None or weights is None or len(elements) != len(parts) or len(weights) != len(parts):
            raise InvalidParamsError("need one element and one weight per part")
        total = ring.zero
        out = zero(ring)
        for part, off, u, wgt in zip(parts, offsets, elements, weights):
            if not is_idempotent(u, part):
                raise NotIdempotentInputError(f"part element over block at {off} is not idempotent")
            if augmentation(u) != ring.one:
                raise ConstraintViolatedError("part idempotents must have coefficient sum 1")
            wgt = ring.coerce(wgt)
            total = ring.add(total, wgt)
            out = out + _lift(u, off).scale(wgt)
        if total != ring.one:
            raise ConstraintViolatedError(f"weights sum to {total}, need 1")
    elif kind == "nilpotent_perturbation":
        if elements is None or unit_index is None or len(elements) != len(parts):
            raise InvalidParamsError("need one element per part and a unit index")
        out = zero(ring)
        for i, (part, off, u) in enumerate(zip(parts, offsets, elements)):
            if i == unit_index:
                if not is_idempotent(u, part):
                    raise NotIdempotentInputError("unit part element is not idempotent")
                if augmentation(u) != ring.one:
                    raise ConstraintViolatedError("unit part must have coefficient sum 1")
            elif not u.is_zero() and not mul(u, u, part).is_zero():
                raise NotNilpotentError(f"part element over block at {off} does not square to zero")
            out = out + _lift(u, off)
    elif kind == "component_mass":
        if weights is None or len(weights) != len(parts):
            raise InvalidParamsError("need one weight per part")
        mass = ring.zero
        out = zero(ring)
        for part, off, wgt in zip(parts, offsets, weights):
            wgt = ring.coerce(wgt)
            mass = ring.add(mass, ring.mul(wgt, ring.coerce(part.order)))
            out = out + RingElement(ring, [(off + x, wgt) for x in range(part.order)])
        if mass != ring.one:
            raise ConstraintViolatedError(f"total weighted mass is {mass}, need 1")
    else:
        raise InvalidParamsError(f"unknown union family kind {kind!r}")
    assert is_idempotent(out, union_q), "union element failed the idempotency check"
    return out


def _union_membership(u: RingElement, parts, offsets) -> str | None:
    """Which union family clause explains u, or None."""
    ring = u.ring
    blocks = []
    for part, off in zip(parts, offsets):
        blocks.append(
            RingElement(ring, [(k - off, c) for k, c in u.coeffs if off <= k < off + part.order])
        )
    # weighted idempotents: each nonzero block is a scalar times a sum-1 idempotent
    def clause_weighted() -> bool:
        for part, v in zip(parts, blocks):
            if v.is_zero():
                continue
            a = augmentation(v)
            if a == ring.zero:
                return False
            if ring.kind == "Z":
                if any(c % a for _, c in v.coeffs):
                    return False
                cand = RingElement(ring, [(k, c // a) for k, c in v.coeffs])
            elif ring.kind == "Q":
                cand = v.scale(1 / a)
            else:
                if not ring.invertible(a):
                    return False
                cand = v.scale(pow(a, -1, ring.modulus))
            if not is_idempotent(cand, part):
                return False
        return True

    def clause_nilpotent() -> bool:
        unit = None
        for i, (part, v) in enumerate(zip(parts, blocks)):
            if v.is_zero():
                continue
            if augmentation(v) == ring.one and is_idempotent(v, part):
                if unit is None:
                    unit = i
                    continue
            if not mul(v, v, part).is_zero():
                return False
        return unit is not None

    def clause_mass() -> bool:
        for part, v in zip(parts, blocks):
            if v.is_zero():
                continue
            if len(v.coeffs) != part.order:
                return False
            if len({c for _, c in v.coeffs}) != 1:
                return False
        return True

    if clause_weighted():
        return "weighted_idempotents"
    if clause_nilpotent():
        return "nilpotent_perturbation"
    if clause_mass():
        return "component_mass"
    return None


def union_cross_check(
    parts,
    modulus: int | None = None,
    bound: int | None = None,
    max_support: int | None = None,
    budget: int = 10**8,
    jobs: int = 1,
) -> dict:
    """Enumerate union idempotents and explain each by a family clause.

    Extras are reported as observed gaps, not failures: the clauses are
    generators, not a claimed classification.
    """
    parts = list(parts)
    union_q = union_quandle(parts)
    offsets = _block_offsets(parts)
    if modulus is not None:
        report = enumerate_mod_p(union_q, modulus, max_support, budget=budget, jobs=jobs)
    elif bound is not None:
        report = enumerate_boxed_Z(union_q, bound, max_support, budget=budget, jobs=jobs)
    else:
        raise InvalidParamsError("need a modulus or a box bound")
    counts = {"weighted_idempotents": 0, "nilpotent_perturbation": 0, "component_mass": 0}
    gaps = []
    for u in report.sorted_idempotents():
        clause = _union_membership(u, parts, offsets)
        if clause is None:
            gaps.append(u)
        else:
            counts[clause] += 1
    return {
        "quandle": union_q.name,
        "spec": report.spec,
        "total": len(report.idempotents),
        "explained": counts,
        "observed_gaps": [element_to_json(u) for u in gaps],
        "flags": report.flags + ["gaps are observations within the search scope"],
    }


# ---------------------------------------------------------------------------
# twisted unions


def _cycle_count(perm) -> int:
    seen = [False] * len(perm)
    cycles = 0
    for s in range(len(perm)):
        if seen[s]:
            continue
        cycles += 1
        t = s
        while not seen[t]:
            seen[t] = True
            t = perm[t]
    return cycles


def twisted_union_classify(
    x: FiniteQuandle,
    y: FiniteQuandle,
    f,
    g,
    modulus: int | None = None,
    bound: int | None = None,
    budget: int = 10**8,
    jobs: int = 1,
) -> dict:
    """Three-part description of the twisted union's idempotents, cross-checked.

    Needs both parts trivial, both twists single cycles, and the
    coefficient characteristic coprime to both block sizes; otherwise
    the hypotheses fail.  The cross-check builds every family member in
    the enumeration scope and demands exact set equality.
    """
    q = twisted_union_quandle(x, y, f, g)  # validates triviality and the permutations
    nx, ny = x.order, y.order
    if _cycle_count(tuple(int(v) for v in f)) != 1:
        raise HypothesisFailedError("f must be a single cycle on the first block")
    if _cycle_count(tuple(int(v) for v in g)) != 1:
        raise HypothesisFailedError("g must be a single cycle on the second block")
    if modulus is not None:
        ring = IntegersMod(modulus)
        if math.gcd(modulus, nx) != 1 or math.gcd(modulus, ny) != 1:
            raise HypothesisFailedError(
                "characteristic must be coprime to both block sizes"
            )
        if modulus ** max(nx, ny) > budget:
            raise BudgetExceededError(modulus ** max(nx, ny), budget)
        report = enumerate_mod_p(q, modulus, budget=budget, jobs=jobs)
        scope_x = [
            vec
            for vec in itertools.product(range(modulus), repeat=nx)
            if sum(vec) % modulus == 1
        ]
        scope_y = [
            vec
            for vec in itertools.product(range(modulus), repeat=ny)
            if sum(vec) % modulus == 1
        ]
        mixed = []
        inv_ny = pow(ny, -1, modulus)
        for a in range(modulus):
            b = ((1 - a * nx) * inv_ny) % modulus
            mixed.append((a, b))
    elif bound is not None:
        ring = ZZ
        if (2 * bound + 1) ** max(nx, ny) > budget:
            raise BudgetExceededError((2 * bound + 1) ** max(nx, ny), budget)
        report = enumerate_boxed_Z(q, bound, budget=budget, jobs=jobs)
        rng = range(-bound, bound + 1)
        scope_x = [vec for vec in itertools.product(rng, repeat=nx) if sum(vec) == 1]
        scope_y = [vec for vec in itertools.product(rng, repeat=ny) if sum(vec) == 1]
        mixed = []
        for a in rng:
            num = 1 - a * nx
            if num % ny == 0 and abs(num // ny) <= bound:
                mixed.append((a, num // ny))
    else:
        raise InvalidParamsError("need a modulus or a box bound")
    expected: set[RingElement] = set()
    for vec in scope_x:
        expected.add(RingElement(ring, list(enumerate(vec))))
    for vec in scope_y:
        expected.add(RingElement(ring, [(nx + i, c) for i, c in enumerate(vec)]))
    for a, b in mixed:
        expected.add(
            RingElement(ring, [(i, a) for i in range(nx)] + [(nx + i, b) for i in range(ny)])
        )
    got = set(report.idempotents)
    missing = sorted(expected - got, key=lambda u: u.sort_key())
    extra = sorted(got - expected, key=lambda u: u.sort_key())
    classification = {
        "first_block": {
            "indices": list(range(nx)),
            "family": "every element supported on the block with coefficient sum 1",
        },
        "second_block": {
            "indices": list(range(nx, nx + ny)),
            "family": "every element supported on the block with coefficient sum 1",
        },
        "mixed": {
            "family": "alpha spread over the first block plus beta over the second, "
            f"with alpha*{nx} + beta*{ny} = 1",
        },
    }
    return {
        "quandle": q.name,
        "spec": report.spec,
        "classification": classification,
        "cross_check": not missing and not extra,
        "enumerated": len(got),
        "expected_in_scope": len(expected),
        "missing": [element_to_json(u) for u in missing],
        "extra": [element_to_json(u) for u in extra],
        "flags": report.flags,
    }


# ---------------------------------------------------------------------------
# structure checks on idempotent sets


@dataclass
class IdempotentSetReport:
    passed: bool
    size: int
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"passed": self.passed, "size": self.size, "failures": self.failures}


def idempotent_quandle_check(sample, q: FiniteQuandle) -> IdempotentSetReport:
    """Check a set of idempotents under the ring product: closure into
    idempotents, self-distributivity on all triples, and that right
    multiplication by each member equals right multiplication by some
    basis element.  All failures are reported, not just the first.
    """
    sample = list(sample)
    if not sample:
        raise InvalidParamsError("sample is empty")
    ring = sample[0].ring
    for i, u in enumerate(sample):
        if u.ring != ring:
            raise RingMismatchError(f"sample element {i} uses {u.ring.tag}, expected {ring.tag}")
        if not is_idempotent(u, q):
            raise NotIdempotentInputError(f"sample element {i} is not idempotent")
    k = len(sample)
    prod = [[mul(a, b, q) for b in sample] for a in sample]
    failures = []
    for i in range(k):
        for j in range(k):
            if not is_idempotent(prod[i][j], q):
                failures.append({"check": "closure", "indices": [i, j]})
    for i in range(k):
        for j in range(k):
            for l in range(k):
                if mul(prod[i][j], sample[l], q) != mul(prod[i][l], prod[j][l], q):
                    failures.append({"check": "self_distributivity", "indices": [i, j, l]})
    basis_matrices = [right_mult_matrix(basis(ring, t), q) for t in range(q.order)]
    for i, u in enumerate(sample):
        m = right_mult_matrix(u, q)
        if m not in basis_matrices:
            failures.append({"check": "right_mult_is_basis_action", "indices": [i]})
    return IdempotentSetReport(not failures, k, failures)


def right_zero_divisor_from_fiber(covering: Covering, y: int, alphas, ring: CoeffRing = ZZ) -> dict:
    """Zero-sum coefficients over one fiber kill every right product.

    Returns the element and the result of the full matrix check that
    w * element = 0 for every w.
    """
    fiber = covering.fiber(y)
    alphas = [ring.coerce(a) for a in alphas]
    if len(alphas) < 2 or len(alphas) > len(fiber):
        raise InvalidParamsError(
            f"need between 2 and {len(fiber)} coefficients for the fiber over {y}"
        )
    total = ring.zero
    for a in alphas:
        total = ring.add(total, a)
    if total != ring.zero:
        raise ConstraintViolatedError(f"coefficients sum to {total}, need 0")
    v = RingElement(ring, list(zip(fiber, alphas)))
    if v.is_zero():
        raise ConstraintViolatedError("coefficients are all zero")
    matrix = right_mult_matrix(v, covering.hom.domain)
    return {"element": v, "verified": matrix.is_zero()}


def core_three_support_check(factors, bound: int, budget: int = 10**8) -> dict:
    """Exhaust small-support idempotents of a reflection table over an
    abelian group with orders coprime to 2 and 3; only basis elements are
    expected.  Supports run up to 3 distinct keys, nonzero coefficients
    in [-bound, bound]."""
    factors = [int(a) for a in factors]
    order = math.prod(factors)
    if math.gcd(order, 6) != 1:
        raise HypothesisFailedError("group order must be coprime to 2 and 3")
    q = core_quandle(factors)
    n = q.order
    total = sum(math.comb(n, k) * (2 * bound) ** k for k in (1, 2, 3))
    if total > budget:
        raise BudgetExceededError(total, budget)
    nonzero = [c for c in range(-bound, bound + 1) if c != 0]
    tested = 0
    trivial = 0
    nontrivial = []
    for k in (1, 2, 3):
        if k > n:
            break
        for subset in itertools.combinations(range(n), k):
            for coeffs in itertools.product(nonzero, repeat=k):
                tested += 1
                u = RingElement(ZZ, list(zip(subset, coeffs)))
                if is_idempotent(u, q):
                    if len(u.coeffs) == 1 and u.coeffs[0][1] == 1:
                        trivial += 1
                    else:
                        nontrivial.append(u)
    return {
        "quandle": q.name,
        "box_bound": bound,
        "max_support": 3,
        "candidates_tested": tested,
        "trivial_found": trivial,
        "nontrivial": [element_to_json(u) for u in nontrivial],
    }


def conjecture_scan(
    items,
    bound: int | None = None,
    moduli=(),
    max_support: int | None = None,
    budget: int = 10**8,
    jobs: int = 1,
) -> dict:
    """Scan a catalog for counterexamples to only-trivial-idempotent behavior.

    Items are (name, table) pairs.  Tables failing validation are
    reported as such; quandles that are not semi-latin are skipped (the
    claim under test is about semi-latin tables); for the rest, boxed
    and mod-p enumerations run and any non-basis idempotent is reported
    as a counterexample.  Absence of counterexamples is always scoped to
    the search window: nothing here is a proof.
    """
    results = []
    for name, table in items:
        entry: dict = {"quandle": name}
        try:
            q = FiniteQuandle(table)
            q.name = name
        except QuandleKitError as err:
            entry["status"] = "not_a_quandle"
            entry["error"] = err.payload()
            results.append(entry)
            continue
        props = properties(q)
        entry["semi_latin"] = props.semi_latin
        entry["latin"] = props.latin
        if not props.semi_latin:
            entry["status"] = "skipped_not_semi_latin"
            results.append(entry)
            continue
        counterexamples = []
        searches = []
        try:
            if bound is not None:
                report = enumerate_boxed_Z(q, bound, max_support, budget=budget, jobs=jobs)
                searches.append(report.spec)
                counterexamples.extend(_non_basis(report))
            for p in moduli:
                report = enumerate_mod_p(q, p, max_support, budget=budget, jobs=jobs)
                searches.append(report.spec)
                counterexamples.extend(_non_basis(report))
        except BudgetExceededError as err:
            entry["status"] = "budget_exceeded"
            entry["error"] = err.payload()
            results.append(entry)
            continue
        entry["searches"] = searches
        if counterexamples:
            entry["status"] = "counterexample_found"
            entry["counterexamples"] = [element_to_json(u) for u in counterexamples]
        else:
            entry["status"] = "no_counterexample_in_scope"
        results.append(entry)
    return {
        "items": results,
        "flags": ["results are limited to the searched scope; absence is not a proof"],
    }


def _non_basis(report: IdempotentReport) -> list[RingElement]:
    out = []
    for u in report.sorted_idempotents():
        if len(u.coeffs) == 1 and u.coeffs[0][1] == u.ring.one:
            continue
        out.append(u)
    return out
