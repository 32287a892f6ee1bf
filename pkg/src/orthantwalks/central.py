"""The product-form (central) weighting algebra of a step set.

A weighting is central when every walk with the same length, start and end
carries the same weight; equivalently the weights have the product form
a_s = beta * prod_k alpha_k**s_k.  All decisions here run in exponent space
over the rationals, never through real logarithms, so centrality checks and
the alpha/beta decomposition are bit-exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from .stepset import StepSet, StepSetError, Vector, is_singular


class SingularModelError(ValueError):
    """Operation requires a non-singular step set."""


class NotCentralError(ValueError):
    """Operation requires a central weighting; carries the violated path pair."""

    def __init__(self, message: str, witness: Optional["PathPair"] = None):
        super().__init__(message)
        self.witness = witness


def step_matrix(model: StepSet) -> tuple[tuple[int, ...], ...]:
    """One row (s_1, ..., s_d, 1) per step, in the step-list order."""
    return tuple(tuple(s) + (1,) for s in model.steps)


def _rank_of(rows: Sequence[Sequence[int]]) -> int:
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for c in range(cols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][c] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for r in range(rank + 1, len(mat)):
            if mat[r][c] != 0:
                factor = mat[r][c] / mat[rank][c]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def rank_full(model: StepSet) -> tuple[int, bool]:
    """Exact rank of the step matrix; full iff it equals dimension + 1."""
    rank = _rank_of(step_matrix(model))
    return rank, rank == model.dimension + 1


def _independent_rows(rows: Sequence[Sequence[int]], want: int) -> Optional[list[int]]:
    """Indices of the lexicographically-first `want` linearly independent rows."""
    chosen: list[int] = []
    for k in range(len(rows)):
        if _rank_of([rows[i] for i in chosen] + [rows[k]]) == len(chosen) + 1:
            chosen.append(k)
            if len(chosen) == want:
                return chosen
    return None


def _solve_square(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(matrix)
    aug = [row[:] + [r] for row, r in zip(matrix, rhs)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if pivot is None:
            raise ValueError("singular linear system")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        inv = aug[c][c]
        aug[c] = [x / inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                factor = aug[r][c]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[c])]
    return [aug[r][n] for r in range(n)]


@dataclass(frozen=True)
class PathPair:
    """Two equal-length, equal-endpoint paths witnessing one weight relation.

    `left` contains the target step with multiplicity >= 1 plus steps of the
    base subset T; `right` uses steps of T only.  Multiplicity maps are keyed
    by step index.
    """

    step_index: int
    left: tuple[tuple[int, int], ...]
    right: tuple[tuple[int, int], ...]
    steps: tuple[Vector, ...]

    @property
    def length(self) -> int:
        return sum(m for _, m in self.left)

    @property
    def endpoint(self) -> Vector:
        d = len(self.steps[0])
        total = [0] * d
        for idx, mult in self.left:
            for k in range(d):
                total[k] += mult * self.steps[idx][k]
        return tuple(total)

    def describe(self) -> str:
        def side(items):
            return " * ".join(f"a{self.steps[idx]}^{m}" if m > 1 else f"a{self.steps[idx]}"
                              for idx, m in items)
        return f"{side(self.left)} = {side(self.right)}"


def find_path_pairs(model: StepSet, base: Optional[Sequence[int]] = None
                    ) -> tuple[tuple[int, ...], list[PathPair]]:
    """A base subset T of d+1 steps and one path pair per remaining step.

    T defaults to the lexicographically-first d+1 steps with independent step
    matrix rows; a different independent subset may be passed explicitly.  The
    relation for each leftover step comes from solving its row against the T
    rows, clearing denominators by their lcm, and splitting terms by sign.
    """
    if is_singular(model):
        raise SingularModelError("path pairs require a non-singular step set")
    rows = step_matrix(model)
    want = model.dimension + 1
    if base is None:
        chosen = _independent_rows(rows, want)
        if chosen is None:
            raise SingularModelError(
                "step matrix is rank deficient; the model is singular")
    else:
        chosen = list(base)
        if len(chosen) != want or _rank_of([rows[i] for i in chosen]) != want:
            raise ValueError(f"base {base} is not an independent subset of size {want}")
    columns = [[Fraction(rows[i][r]) for i in chosen] for r in range(want)]
    pairs = []
    for s_idx in range(model.size):
        if s_idx in chosen:
            continue
        coeffs = _solve_square(columns, [Fraction(x) for x in rows[s_idx]])
        denom = lcm(*[c.denominator for c in coeffs])
        target_mult = denom
        left = {s_idx: target_mult}
        right: dict[int, int] = {}
        for t_idx, c in zip(chosen, coeffs):
            m = int(c * denom)
            if m > 0:
                right[t_idx] = m
            elif m < 0:
                left[t_idx] = -m
        # the last matrix column forces sum(coeffs) = 1, so `right` is nonempty
        common = gcd(*left.values(), *right.values())
        left = {k: v // common for k, v in left.items()}
        right = {k: v // common for k, v in right.items()}
        pairs.append(PathPair(
            step_index=s_idx,
            left=tuple(sorted(left.items())),
            right=tuple(sorted(right.items())),
            steps=model.steps,
        ))
    return tuple(chosen), pairs


def _product(weights: Sequence[Fraction], multiset: tuple[tuple[int, int], ...]) -> Fraction:
    out = Fraction(1)
    for idx, mult in multiset:
        out *= weights[idx] ** mult
    return out


def pair_holds(model: StepSet, pair: PathPair) -> bool:
    """Exact test of prod_{left} a_r = prod_{right} a_r for one path pair."""
    return _product(model.weights, pair.left) == _product(model.weights, pair.right)


def is_central(model: StepSet) -> tuple[bool, Optional[PathPair]]:
    """Whether the weighting is central; on failure also the first violated pair."""
    _, pairs = find_path_pairs(model)
    for pair in pairs:
        if not pair_holds(model, pair):
            return False, pair
    return True, None


def are_equivalent(model: StepSet, other: StepSet) -> bool:
    """Whether two weightings of the same steps give every confined walk the same law."""
    if model.steps != other.steps:
        raise StepSetError("equivalence requires identical step lists")
    ratio = model.with_weights([w / v for w, v in zip(model.weights, other.weights)])
    central, _ = is_central(ratio)
    return central


@dataclass(frozen=True)
class Monomial:
    """A product prod_s a_s**q_s of rational powers of the input weights."""

    exponents: tuple[Fraction, ...]

    def value(self, weights: Sequence[Fraction]) -> float:
        out = 1.0
        for w, q in zip(weights, self.exponents):
            if q:
                out *= float(w) ** float(q)
        return out

    def exact_value(self, weights: Sequence[Fraction]) -> Optional[Fraction]:
        """The exact rational value, or None when the value is irrational.

        The monomial raised to the lcm D of the exponent denominators is an
        exact rational; the value is rational iff that power is a perfect
        D-th power.
        """
        denom = lcm(*[q.denominator for q in self.exponents])
        power = Fraction(1)
        for w, q in zip(weights, self.exponents):
            k = int(q * denom)
            if k:
                power *= w ** k
        return _rational_root(power, denom)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, k: int) -> "Monomial":
        return Monomial(tuple(q * k for q in self.exponents))


def _integer_root(n: int, r: int) -> Optional[int]:
    """The exact integer r-th root of n, or None; pure integer Newton, safe for big n."""
    if n < 0:
        return None
    if n in (0, 1) or r == 1:
        return n
    x = 1 << ((n.bit_length() - 1) // r + 1)
    while True:
        y = ((r - 1) * x + n // x ** (r - 1)) // r
        if y >= x:
            break
        x = y
    return x if x ** r == n else None


def _rational_root(w: Fraction, r: int) -> Optional[Fraction]:
    if r == 1:
        return w
    num = _integer_root(w.numerator, r)
    den = _integer_root(w.denominator, r)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def monomial_equals(weights: Sequence[Fraction], exponents: Sequence[Fraction],
                    target: Fraction) -> bool:
    """Exact test of prod_s a_s**e_s == target via integerized exponents."""
    denom = lcm(*[e.denominator for e in exponents]) if exponents else 1
    lhs = Fraction(1)
    for w, e in zip(weights, exponents):
        k = int(e * denom)
        if k:
            lhs *= w ** k
    return lhs == target ** denom


@dataclass(frozen=True)
class CentralDecomposition:
    """Exact alpha/beta decomposition of a central weighting.

    Each entry is a monomial in the input weights with rational exponents; the
    round-trip invariant beta * prod_k alpha_k**s_k == a_s holds exactly for
    every step and is verified at construction time.
    """

    model: StepSet
    alpha: tuple[Monomial, ...]
    beta: Monomial

    def alpha_values(self) -> tuple[float, ...]:
        return tuple(m.value(self.model.weights) for m in self.alpha)

    def beta_value(self) -> float:
        return self.beta.value(self.model.weights)

    def alpha_exact(self) -> tuple[Optional[Fraction], ...]:
        return tuple(m.exact_value(self.model.weights) for m in self.alpha)

    def beta_exact(self) -> Optional[Fraction]:
        return self.beta.exact_value(self.model.weights)

    def step_exponents(self, step: Vector) -> tuple[Fraction, ...]:
        """Exponent vector of beta * prod_k alpha_k**step_k as a weight monomial."""
        mono = self.beta
        for k, c in enumerate(step):
            if c:
                mono = mono * (self.alpha[k] ** c)
        return mono.exponents

    def verify(self) -> bool:
        weights = self.model.weights
        for s, w in zip(self.model.steps, weights):
            if not monomial_equals(weights, self.step_exponents(s), w):
                return False
        return True


def solve_central(model: StepSet, base: Optional[Sequence[int]] = None
                  ) -> CentralDecomposition:
    """Solve a_s = beta * prod_k alpha_k**s_k for alpha and beta, exactly.

    The exponent system log(a) = M_S (log alpha, log beta) is solved on a
    chosen independent row subset (default: the lexicographically-first one);
    exponent vectors live over the rationals so the result is exact even when
    the alpha_k themselves are irrational.
    """
    central, witness = is_central(model)
    if not central:
        raise NotCentralError(
            f"weighting is not central; violated relation {witness.describe()}",
            witness)
    rows = step_matrix(model)
    want = model.dimension + 1
    if base is None:
        chosen = _independent_rows(rows, want)
        if chosen is None:
            raise SingularModelError("step matrix is rank deficient")
    else:
        chosen = list(base)
        if len(chosen) != want or _rank_of([rows[i] for i in chosen]) != want:
            raise ValueError(f"base {base} is not an independent subset of size {want}")
    # Invert the square subsystem: column r of the inverse gives the exponent
    # vector expressing the r-th unknown through the chosen weights.
    square = [[Fraction(x) for x in rows[i]] for i in chosen]
    inverse = _invert(square)
    monomials = []
    for r in range(want):
        exps = [Fraction(0)] * model.size
        for col, i in enumerate(chosen):
            exps[i] = inverse[r][col]
        monomials.append(Monomial(tuple(exps)))
    dec = CentralDecomposition(model=model, alpha=tuple(monomials[:-1]), beta=monomials[-1])
    if not dec.verify():
        raise NotCentralError("weighting failed the exact round-trip check")
    return dec


def _invert(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(matrix)
    aug = [row[:] + [Fraction(int(r == c)) for c in range(n)]
           for r, row in enumerate(matrix)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        inv = aug[c][c]
        aug[c] = [x / inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                factor = aug[r][c]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def central_check(model: StepSet) -> dict:
    """Summary used by the command line: centrality flag plus the witness relation."""
    if is_singular(model):
        raise SingularModelError("centrality is only defined for non-singular models")
    central, witness = is_central(model)
    out = {"central": central}
    if witness is not None:
        out["violated_relation"] = witness.describe()
        out["violating_step"] = list(model.steps[witness.step_index])
    return out
