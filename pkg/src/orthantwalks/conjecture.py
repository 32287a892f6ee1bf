"""Finite verification of the walk-count linear system behind the kernel-uniqueness conjecture.

For a step set S, consider unknowns mu_s and require, for every endpoint
(i_1, ..., i_d) in the orthant and every 1 <= n <= n_cap,

    sum_s mu_s * w_{i - s}(n - 1) = 0,

where w are the unweighted confined walk counts from the origin.  The
conjecture asserts the system forces mu = 0; this module assembles the
equations exactly, computes the rational null space by fraction-free
elimination over big integers, and reports the minimal length N_S at which
the null space first becomes trivial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .counting import DEFAULT_GUARD, WalkTable, count_walks
from .stepset import StepSet


@dataclass(frozen=True)
class ConjectureReport:
    """Null-space summary of the assembled system up to a length cap."""

    model: StepSet
    n_cap: int
    basis: tuple[tuple[Fraction, ...], ...]
    refutation_length: Optional[int]

    @property
    def verified(self) -> bool:
        return not self.basis

    @property
    def nullity(self) -> int:
        return len(self.basis)


def _count_table(model: StepSet, n_cap: int, guard: int) -> WalkTable:
    origin = (0,) * model.dimension
    return count_walks(model.unweighted(), origin, max(n_cap - 1, 0),
                       mode="exact", guard=guard)


def _rows_for_length(model: StepSet, table: WalkTable, n: int) -> list[list[int]]:
    """Equation rows at length n: coefficient of mu_s at endpoint i is w_{i-s}(n-1).

    Only orthant endpoints where some coefficient is nonzero produce a row,
    matching the finite restriction of the infinite system.
    """
    layer = table.layer(n - 1)
    endpoints = set()
    for point in layer:
        for s in model.steps:
            target = tuple(p + c for p, c in zip(point, s))
            if min(target) >= 0:
                endpoints.add(target)
    rows = []
    for endpoint in sorted(endpoints):
        row = []
        for s in model.steps:
            source = tuple(p - c for p, c in zip(endpoint, s))
            row.append(int(layer.get(source, 0)) if min(source) >= 0 else 0)
        if any(row):
            rows.append(row)
    return rows


def _bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free (Bareiss) forward elimination; returns echelon rows and pivot columns.

    Every interior division is exact by Sylvester's identity, so the echelon
    entries stay integers of moderate size instead of exploding rationals.
    """
    mat = [row[:] for row in rows]
    m = len(mat)
    cols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    rank = 0
    prev = 1
    for c in range(cols):
        pivot = next((r for r in range(rank, m) if mat[r][c] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        p = mat[rank][c]
        for r in range(rank + 1, m):
            factor = mat[r][c]
            for cc in range(cols):
                if cc == c:
                    continue
                mat[r][cc] = (p * mat[r][cc] - factor * mat[rank][cc]) // prev
            mat[r][c] = 0
        prev = p
        pivots.append(c)
        rank += 1
        if rank == m:
            break
    return mat[:rank], pivots


def _null_space(rows: list[list[int]], width: int) -> list[tuple[Fraction, ...]]:
    """Exact rational null-space basis, one primitive integer vector per free column."""
    if not rows:
        return [tuple(Fraction(int(k == f)) for k in range(width)) for f in range(width)]
    echelon, pivots = _bareiss_echelon(rows)
    basis = []
    for f in (c for c in range(width) if c not in pivots):
        vec = [Fraction(0)] * width
        vec[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            acc = sum(Fraction(echelon[r][cc]) * vec[cc] for cc in range(c + 1, width))
            vec[c] = -acc / echelon[r][c]
        denom = 1
        for q in vec:
            denom = denom * q.denominator // gcd(denom, q.denominator)
        ints = [int(q * denom) for q in vec]
        common = 0
        for x in ints:
            common = gcd(common, abs(x))
        basis.append(tuple(Fraction(x // common) for x in ints))
    return basis


def conjecture2_nullspace(model: StepSet, n_cap: int,
                          guard: int = DEFAULT_GUARD) -> ConjectureReport:
    """Assemble the system for lengths up to n_cap and return its exact null space."""
    if n_cap < 1:
        raise ValueError("n_cap must be at least 1")
    table = _count_table(model, n_cap, guard)
    rows: list[list[int]] = []
    for n in range(1, n_cap + 1):
        rows.extend(_rows_for_length(model, table, n))
    basis = _null_space(rows, model.size)
    return ConjectureReport(model=model, n_cap=n_cap, basis=tuple(basis),
                            refutation_length=n_cap if not basis else None)


def minimal_refutation_length(model: StepSet, cap: int,
                              guard: int = DEFAULT_GUARD) -> Optional[int]:
    """Least n <= cap whose system has a trivial null space, or None.

    Monotone: the system only gains equations as n grows, so once the null
    space is trivial it stays trivial.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    table = _count_table(model, cap, guard)
    rows: list[list[int]] = []
    for n in range(1, cap + 1):
        rows.extend(_rows_for_length(model, table, n))
        if not _null_space(rows, model.size):
            return n
    return None


def residuals(model: StepSet, vector: tuple[Fraction, ...], n_cap: int,
              guard: int = DEFAULT_GUARD) -> list[Fraction]:
    """Substitute a candidate mu into every assembled equation (soundness check)."""
    table = _count_table(model, n_cap, guard)
    rows: list[list[int]] = []
    for n in range(1, n_cap + 1):
        rows.extend(_rows_for_length(model, table, n))
    return [sum(Fraction(c) * q for c, q in zip(row, vector)) for row in rows]
