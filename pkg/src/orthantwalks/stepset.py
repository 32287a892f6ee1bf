"""Step sets of weighted lattice walks and their elementary quantities.

A model is a finite list of distinct integer step vectors in Z^d, each with a
strictly positive exact-rational weight.  Everything downstream (counting
tables, centrality algebra, classification) consumes the immutable StepSet
defined here.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence, Union

Rational = Union[int, Fraction]
Vector = tuple[int, ...]

BUILTIN_MODELS: dict[str, tuple[Vector, ...]] = {
    "gb": ((1, 0), (-1, 0), (-1, 1), (1, -1)),
    "tandem": ((1, 0), (-1, 1), (0, -1)),
    "gessel": ((-1, 0), (1, 0), (1, 1), (-1, -1)),
    "simple": ((1, 0), (-1, 0), (0, 1), (0, -1)),
}


class StepSetError(ValueError):
    """Invalid step-set description or weighting."""


def as_fraction(value) -> Fraction:
    """Parse an exact rational from int, Fraction, or a 'p/q' / integer string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise StepSetError(f"not an exact rational: {value!r}") from exc
    if isinstance(value, float):
        raise StepSetError(
            f"weights must be exact rationals, got float {value!r}; pass a 'p/q' string"
        )
    raise StepSetError(f"cannot interpret {value!r} as a rational")


@dataclass(frozen=True)
class StepSet:
    """An ordered weighted step set; the order indexes the rows of the step matrix."""

    dimension: int
    steps: tuple[Vector, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if self.dimension < 1:
            raise StepSetError("dimension must be a positive integer")
        if not self.steps:
            raise StepSetError("empty step set")
        if len(self.steps) != len(self.weights):
            raise StepSetError("weights and steps must have equal length")
        seen = set()
        for s in self.steps:
            if len(s) != self.dimension:
                raise StepSetError(f"step {s} has dimension {len(s)}, expected {self.dimension}")
            if not all(isinstance(c, int) for c in s):
                raise StepSetError(f"step {s} has non-integer coordinates")
            if s in seen:
                raise StepSetError(f"duplicate step {s}")
            seen.add(s)
        for s, w in zip(self.steps, self.weights):
            if not isinstance(w, Fraction):
                raise StepSetError(f"weight of step {s} is not an exact rational")
            if w <= 0:
                raise StepSetError(f"weight of step {s} must be strictly positive, got {w}")

    @property
    def size(self) -> int:
        return len(self.steps)

    def weight_map(self) -> dict[Vector, Fraction]:
        return dict(zip(self.steps, self.weights))

    def with_weights(self, weights: Sequence[Rational]) -> "StepSet":
        return StepSet(self.dimension, self.steps,
                       tuple(as_fraction(w) for w in weights))

    def unweighted(self) -> "StepSet":
        return self.with_weights([1] * self.size)

    def reordered(self, order: Sequence[int]) -> "StepSet":
        if sorted(order) != list(range(self.size)):
            raise StepSetError("order must be a permutation of the step indices")
        return StepSet(self.dimension,
                       tuple(self.steps[k] for k in order),
                       tuple(self.weights[k] for k in order))

    def scaled(self, factor: Rational) -> "StepSet":
        f = as_fraction(factor)
        return self.with_weights([w * f for w in self.weights])


def make_stepset(steps: Iterable[Sequence[int]], weights: Iterable[Rational],
                 dimension: Optional[int] = None) -> StepSet:
    step_tuples = tuple(tuple(int(c) for c in s) for s in steps)
    if dimension is None:
        if not step_tuples:
            raise StepSetError("empty step set")
        dimension = len(step_tuples[0])
    return StepSet(dimension, step_tuples, tuple(as_fraction(w) for w in weights))


def central_weights(steps: Iterable[Sequence[int]],
                    alphas: Sequence[Rational],
                    beta: Rational = 1) -> list[Fraction]:
    """Weights beta * prod_k alpha_k**s_k, the generic product-form weighting."""
    alphas = [as_fraction(x) for x in alphas]
    beta = as_fraction(beta)
    if any(x <= 0 for x in alphas) or beta <= 0:
        raise StepSetError("central weighting parameters must be positive")
    out = []
    for s in steps:
        w = beta
        for x, c in zip(alphas, s):
            w *= x ** c
        out.append(w)
    return out


def builtin_model(name: str, a: Rational = 1, b: Rational = 1) -> StepSet:
    """One of the named two-parameter families (gb, tandem, gessel, simple).

    Every family carries the product weighting a**s1 * b**s2; for the GB steps
    this is exactly (1,0) -> a, (-1,0) -> 1/a, (-1,1) -> b/a, (1,-1) -> a/b.
    """
    key = name.lower()
    if key not in BUILTIN_MODELS:
        raise StepSetError(f"unknown built-in model {name!r}; "
                           f"choose from {sorted(BUILTIN_MODELS)}")
    steps = BUILTIN_MODELS[key]
    a, b = as_fraction(a), as_fraction(b)
    if a <= 0 or b <= 0:
        raise StepSetError("model parameters a, b must be positive rationals")
    return make_stepset(steps, central_weights(steps, (a, b)))


def stepset_from_json(data: Union[str, Mapping]) -> StepSet:
    """Build a StepSet from the JSON schema {"dimension": d, "steps": [{"v": [...], "w": "p/q"}]}."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise StepSetError(f"malformed step-set JSON: {exc}") from exc
    if not isinstance(data, Mapping):
        raise StepSetError("step-set JSON must be an object")
    try:
        dimension = int(data["dimension"])
        entries = data["steps"]
    except (KeyError, TypeError, ValueError) as exc:
        raise StepSetError(f"step-set JSON missing required fields: {exc}") from exc
    steps, weights = [], []
    for entry in entries:
        try:
            steps.append(entry["v"])
            weights.append(entry.get("w", 1))
        except (KeyError, TypeError) as exc:
            raise StepSetError(f"bad step entry {entry!r}") from exc
    return make_stepset(steps, weights, dimension)


def parse_stepset(text: str) -> StepSet:
    """Parse either the JSON schema or a built-in spelled like "gb --a 1/2 --b 3"."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return stepset_from_json(stripped)
    tokens = stripped.split()
    if not tokens:
        raise StepSetError("empty step-set description")
    name, params = tokens[0], {"a": Fraction(1), "b": Fraction(1)}
    rest = tokens[1:]
    if len(rest) % 2 != 0:
        raise StepSetError(f"dangling option in {text!r}")
    for flag, value in zip(rest[::2], rest[1::2]):
        if not flag.startswith("--") or flag[2:] not in params:
            raise StepSetError(f"unknown option {flag!r} in step-set description")
        params[flag[2:]] = as_fraction(value)
    return builtin_model(name, params["a"], params["b"])


def drift(model: StepSet) -> tuple[Fraction, ...]:
    """The weighted vector sum of the steps, component-exact."""
    total = [Fraction(0)] * model.dimension
    for s, w in zip(model.steps, model.weights):
        for k, c in enumerate(s):
            total[k] += w * c
    return tuple(total)


def inventory_eval(model: StepSet, point: Sequence) -> Union[Fraction, float]:
    """Evaluate sum_s w_s * prod_k x_k**s_k at a strictly positive point.

    Exact when every coordinate is a Fraction/int; float otherwise.
    """
    if len(point) != model.dimension:
        raise StepSetError("point dimension mismatch")
    exact = True
    for x in point:
        if isinstance(x, float):
            exact = False
        elif not isinstance(x, (int, Fraction)):
            raise StepSetError(f"cannot evaluate at coordinate {x!r}")
        if x <= 0:
            raise StepSetError("inventory is evaluated at strictly positive coordinates")
    # int ** negative would fall back to float; Fractions keep it exact
    coords = [Fraction(x) if exact else float(x) for x in point]
    total = Fraction(0) if exact else 0.0
    for s, w in zip(model.steps, model.weights):
        term = w if exact else float(w)
        for x, c in zip(coords, s):
            term = term * x ** c
        total += term
    return total


def _primitive(v: Vector) -> Vector:
    g = 0
    for c in v:
        g = math.gcd(g, abs(c))
    return tuple(c // g for c in v)


def _half_plane_gap(directions: list[Vector]) -> bool:
    """True iff some closed half-plane through the origin contains every direction.

    Sorts the distinct primitive directions counterclockwise with exact integer
    comparisons and looks for a cyclic angular gap of at least pi.
    """
    ordered = sorted(set(directions), key=_ccw_sort_key)
    m = len(ordered)
    if m == 1:
        return True
    for k in range(m):
        u = ordered[k]
        v = ordered[(k + 1) % m]
        cross = u[0] * v[1] - u[1] * v[0]
        dot = u[0] * v[0] + u[1] * v[1]
        # gap from u counterclockwise to v: > pi iff cross < 0, = pi iff opposite
        if cross < 0 or (cross == 0 and dot < 0):
            return True
    return False


def _ccw_sort_key(v: Vector):
    # exact counterclockwise order from the positive x-axis: split into half
    # turns, order the axis vector of each half first, then by -x/y which is
    # increasing in the angle on both halves
    x, y = v
    half = 0 if (y > 0 or (y == 0 and x > 0)) else 1
    if y == 0:
        return (half, 0)
    return (half, 1, Fraction(-x, y))


def is_singular(model: StepSet) -> bool:
    """True iff some nonzero u has u . s >= 0 for every step (steps fit a half-space)."""
    nonzero = [_primitive(s) for s in model.steps if any(s)]
    if not nonzero:
        return True
    d = model.dimension
    if d == 1:
        signs = {1 if v[0] > 0 else -1 for v in nonzero}
        return len(signs) < 2
    if d == 2:
        return _half_plane_gap(nonzero)
    return _dual_cone_nontrivial(nonzero, d)


def _rank(rows: list[list[Fraction]]) -> int:
    mat = [row[:] for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for c in range(cols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][c] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = mat[rank][c]
        for r in range(len(mat)):
            if r != rank and mat[r][c] != 0:
                factor = mat[r][c] / inv
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def _null_direction(vectors: list[Vector], d: int) -> Optional[list[Fraction]]:
    """A nonzero rational vector orthogonal to all given vectors, if one exists."""
    rows = [[Fraction(c) for c in v] for v in vectors]
    mat = [row[:] for row in rows]
    pivots: list[int] = []
    rank = 0
    for c in range(d):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][c] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = mat[rank][c]
        for r in range(len(mat)):
            if r != rank and mat[r][c] != 0:
                factor = mat[r][c] / inv
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[rank])]
        pivots.append(c)
        rank += 1
        if rank == d:
            return None
    free = next(c for c in range(d) if c not in pivots)
    u = [Fraction(0)] * d
    u[free] = Fraction(1)
    for r, c in reversed(list(enumerate(pivots))):
        u[c] = -sum(mat[r][cc] * u[cc] for cc in range(c + 1, d)) / mat[r][c]
    return u


def _dual_cone_nontrivial(steps: list[Vector], d: int) -> bool:
    """Exact test for a nonzero u with u . s >= 0 for all s, in dimension >= 3.

    If the steps do not span R^d any orthogonal direction works.  Otherwise the
    dual cone is pointed and is nontrivial iff it has an extreme ray, which lies
    on d-1 linearly independent active constraints; enumerating those rays is
    exact and cheap at the sizes handled here.
    """
    if _rank([[Fraction(c) for c in s] for s in steps]) < d:
        return True
    for subset in combinations(range(len(steps)), d - 1):
        chosen = [steps[k] for k in subset]
        if _rank([[Fraction(c) for c in v] for v in chosen]) != d - 1:
            continue
        u = _null_direction(chosen, d)
        if u is None:
            continue
        for cand in (u, [-x for x in u]):
            if all(sum(cx * sx for cx, sx in zip(cand, s)) >= 0 for s in steps):
                return True
    return False
