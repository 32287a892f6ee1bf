"""Model-agnostic universality classification for two-dimensional models.

The classifier locates the interior critical point of the inventory
S(x, y) = sum_s w_s x^{s1} y^{s2}, minimizes S over the dual-cone image
Q = {x >= 1, y >= 1}, and reads the class off the position of the minimizer
and the gradient signs there.  After the substitution (x, y) = (e^u, e^v) the
inventory is strictly convex and coercive for non-singular models, so plain
Newton iterations with a halving line search are deterministic and certified
by their gradient residuals.

Equality decisions (is the minimizer on a boundary, is a gradient zero) use
absolute tolerance 1e-8 on the log-scale variables; quantities falling in the
ambiguous band [1e-8, 1e-6] are reported, not silently resolved.  Corner
gradient signs reduce to the drift vector and are decided in exact rational
arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .stepset import StepSet, drift, is_singular

EQ_TOL = 1e-8
AMBIG_TOL = 1e-6
GRAD_TOL = 1e-12
KKT_TOL = 1e-10

FAMILIES = ("balanced", "axial", "free", "transitional", "directed", "reluctant")


class ClassifyError(RuntimeError):
    """Classification failed (singular model, divergence, or degenerate data)."""


class AmbiguousClassError(ClassifyError):
    """A decision quantity fell inside the ambiguity band; carries the report."""

    def __init__(self, message: str, classification: "Classification"):
        super().__init__(message)
        self.classification = classification


def _check_2d(model: StepSet) -> None:
    if model.dimension != 2:
        raise ClassifyError("classification is implemented for d = 2 models")
    if is_singular(model):
        raise ClassifyError("classification requires a non-singular model")


def _log_inventory(model: StepSet):
    """L(u) = S(e^u, e^v) with gradient and Hessian, as numpy callables."""
    steps = np.array(model.steps, dtype=float)
    weights = np.array([float(w) for w in model.weights])

    def value(u: np.ndarray) -> float:
        return float(np.dot(weights, np.exp(steps @ u)))

    def grad(u: np.ndarray) -> np.ndarray:
        e = weights * np.exp(steps @ u)
        return steps.T @ e

    def hess(u: np.ndarray) -> np.ndarray:
        e = weights * np.exp(steps @ u)
        return (steps * e[:, None]).T @ steps

    return value, grad, hess


def _newton(value, grad, hess, u0: np.ndarray, max_iter: int = 200) -> np.ndarray:
    """Damped Newton for the strictly convex coercive L; certified by residual."""
    u = np.asarray(u0, dtype=float)
    for _ in range(max_iter):
        g = grad(u)
        if np.linalg.norm(g) <= GRAD_TOL * max(value(u), 1e-300):
            return u
        h = hess(u)
        try:
            step = np.linalg.solve(h, -g)
        except np.linalg.LinAlgError as exc:
            raise ClassifyError(f"singular Hessian at {u}") from exc
        base = value(u)
        t = 1.0
        for _ in range(60):
            candidate = u + t * step
            if value(candidate) <= base + 1e-12 * abs(base):
                break
            t *= 0.5
        u = u + t * step
    g = grad(u)
    if np.linalg.norm(g) <= GRAD_TOL * max(value(u), 1e-300):
        return u
    raise ClassifyError(f"Newton iteration failed to converge (residual {np.linalg.norm(g)})")


def interior_critical_point(model: StepSet) -> tuple[float, float]:
    """The unique positive critical point (x_s, y_s) of the inventory."""
    _check_2d(model)
    value, grad, hess = _log_inventory(model)
    u = _newton(value, grad, hess, np.zeros(2))
    return math.exp(u[0]), math.exp(u[1])


def _inventory_derivatives(model: StepSet, x: float, y: float):
    sxx = sxy = syy = 0.0
    for (s1, s2), w in zip(model.steps, model.weights):
        term = float(w) * x ** s1 * y ** s2
        sxx += term * s1 * (s1 - 1) / (x * x)
        syy += term * s2 * (s2 - 1) / (y * y)
        sxy += term * s1 * s2 / (x * y)
    return sxx, sxy, syy


def covariance_factor(model: StepSet) -> float:
    """c = S_xy / sqrt(S_xx S_yy) at the interior critical point."""
    x, y = interior_critical_point(model)
    sxx, sxy, syy = _inventory_derivatives(model, x, y)
    if sxx <= 0 or syy <= 0:
        raise ClassifyError("degenerate Hessian at the critical point")
    return sxy / math.sqrt(sxx * syy)


def p1_exponent(model: StepSet) -> float:
    """p1 = pi / arccos(-c); the class exponents are simple expressions in p1."""
    c = covariance_factor(model)
    if not -1.0 < c < 1.0:
        raise ClassifyError(f"covariance factor {c} outside (-1, 1)")
    return math.pi / math.acos(-c)


def _edge_minimizer(model: StepSet, axis: int) -> float:
    """Minimize S along x=1 (axis=1 frees y) or y=1 (axis=0 frees x); returns log coord."""
    steps = np.array(model.steps, dtype=float)[:, axis]
    weights = np.array([float(w) for w in model.weights])

    def value(t): return float(np.dot(weights, np.exp(steps * t)))
    def grad(t): return float(np.dot(weights * np.exp(steps * t), steps))
    def hess(t): return float(np.dot(weights * np.exp(steps * t), steps * steps))

    t = 0.0
    for _ in range(200):
        g = grad(t)
        if abs(g) <= GRAD_TOL * max(value(t), 1e-300):
            return t
        step = -g / hess(t)
        base = value(t)
        scale = 1.0
        for _ in range(60):
            if value(t + scale * step) <= base + 1e-12 * abs(base):
                break
            scale *= 0.5
        t += scale * step
    if abs(grad(t)) <= GRAD_TOL * max(value(t), 1e-300):
        return t
    raise ClassifyError("1-d minimization failed to converge")


def boundary_minimizers(model: StepSet) -> tuple[float, float]:
    """(x1, y1): the unconstrained minimizers of S(x, 1) over x and S(1, y) over y."""
    _check_2d(model)
    return math.exp(_edge_minimizer(model, 0)), math.exp(_edge_minimizer(model, 1))


def minimize_on_Q(model: StepSet) -> tuple[float, float, float]:
    """The unique minimizer of the inventory on Q = {x >= 1, y >= 1} and its value.

    Active-set resolution on the convex log-substituted problem: the corner is
    tested with exact drift signs, the interior with the critical point, and
    the edges with their one-dimensional minimizers.
    """
    _check_2d(model)
    value, grad, hess = _log_inventory(model)
    dx, dy = drift(model)
    if dx >= 0 and dy >= 0:
        return 1.0, 1.0, float(sum(model.weights))
    u = _newton(value, grad, hess, np.zeros(2))
    us, vs = float(u[0]), float(u[1])
    if us >= -EQ_TOL and vs >= -EQ_TOL:
        us, vs = max(us, 0.0), max(vs, 0.0)
        return math.exp(us), math.exp(vs), value(np.array([us, vs]))
    candidates = []
    if dy < 0:
        v1 = _edge_minimizer(model, 1)
        if v1 >= -EQ_TOL:
            point = np.array([0.0, max(v1, 0.0)])
            if grad(point)[0] >= -KKT_TOL * value(point):
                candidates.append(point)
    if dx < 0:
        u1 = _edge_minimizer(model, 0)
        if u1 >= -EQ_TOL:
            point = np.array([max(u1, 0.0), 0.0])
            if grad(point)[1] >= -KKT_TOL * value(point):
                candidates.append(point)
    if not candidates:
        raise ClassifyError("no KKT point found on the boundary of Q")
    best = min(candidates, key=value)
    return math.exp(best[0]), math.exp(best[1]), value(best)


@dataclass(frozen=True)
class Classification:
    """Outcome of the convex-minimization classification of a weighted model."""

    family: str
    rho: float
    alpha: float
    critical_point: tuple[float, float]
    minimizer: tuple[float, float]
    boundary: tuple[float, float]
    covariance: float
    p1: float
    drift: tuple[Fraction, Fraction]
    rho_exact: Optional[Fraction] = None
    alpha_exact: Optional[Fraction] = None
    ambiguities: tuple[str, ...] = ()


def classify(model: StepSet, *, on_ambiguity: str = "raise") -> Classification:
    """Assign the universality class from the Q-minimizer and gradient signs.

    The grid: minimizer at the corner / on one edge / interior, crossed with
    the number of vanishing gradient components there.  rho is S at the
    minimizer; alpha is p1/2 (balanced), p1/2 + 1 (transitional), p1 + 1
    (reluctant), 1/2 (axial), 3/2 (directed), 0 (free).

    on_ambiguity: "raise" raises AmbiguousClassError when a decision quantity
    falls in the ambiguity band; "report" returns the classification with the
    band hits listed in `ambiguities`.
    """
    if on_ambiguity not in ("raise", "report"):
        raise ValueError("on_ambiguity must be 'raise' or 'report'")
    _check_2d(model)
    value, grad, hess = _log_inventory(model)
    dx, dy = drift(model)
    xs, ys = interior_critical_point(model)
    us, vs = math.log(xs), math.log(ys)
    x1, y1 = boundary_minimizers(model)
    c = covariance_factor(model)
    p1 = p1_exponent(model)
    ambiguities: list[str] = []

    def band(name: str, quantity: float) -> None:
        if EQ_TOL <= abs(quantity) <= AMBIG_TOL:
            ambiguities.append(f"{name} = {quantity:.3e} lies in the ambiguity band")

    weight_sum = sum(model.weights)
    if dx >= 0 and dy >= 0:
        # corner cell; gradient signs at (1,1) are the exact drift components
        zeros = (dx == 0) + (dy == 0)
        family = ("free", "axial", "balanced")[zeros]
        alpha = {"free": 0.0, "axial": 0.5, "balanced": p1 / 2.0}[family]
        alpha_exact = {"free": Fraction(0), "axial": Fraction(1, 2), "balanced": None}[family]
        result = Classification(
            family=family, rho=float(weight_sum), alpha=alpha,
            critical_point=(xs, ys), minimizer=(1.0, 1.0), boundary=(x1, y1),
            covariance=c, p1=p1, drift=(dx, dy),
            rho_exact=weight_sum, alpha_exact=alpha_exact,
            ambiguities=tuple(ambiguities))
    else:
        band("log x_s", us)
        band("log y_s", vs)
        if us >= -EQ_TOL and vs >= -EQ_TOL:
            interior = us > EQ_TOL and vs > EQ_TOL
            family = "reluctant" if interior else "transitional"
            alpha = p1 + 1.0 if interior else p1 / 2.0 + 1.0
            rho = value(np.array([max(us, 0.0), max(vs, 0.0)]))
            minimizer = (math.exp(max(us, 0.0)), math.exp(max(vs, 0.0)))
        else:
            family = "directed"
            alpha = 1.5
            mx, my, rho = minimize_on_Q(model)
            minimizer = (mx, my)
            band("off-edge gradient", _directed_offgrad(model, grad, value, minimizer))
        result = Classification(
            family=family, rho=rho, alpha=alpha,
            critical_point=(xs, ys), minimizer=minimizer, boundary=(x1, y1),
            covariance=c, p1=p1, drift=(dx, dy),
            alpha_exact=Fraction(3, 2) if family == "directed" else None,
            ambiguities=tuple(ambiguities))
    if result.ambiguities and on_ambiguity == "raise":
        raise AmbiguousClassError("; ".join(result.ambiguities), result)
    return result


def _directed_offgrad(model: StepSet, grad, value, minimizer) -> float:
    # relative size of the gradient component pointing out of the active edge
    u = np.array([math.log(minimizer[0]), math.log(minimizer[1])])
    g = grad(u)
    v = value(u)
    active = 0 if minimizer[0] <= 1.0 + EQ_TOL else 1
    return float(g[active]) / v


def drift_diagram(model_factory, a_values: Sequence[Fraction],
                  b_values: Sequence[Fraction]) -> list[dict]:
    """Classify a grid of weightings; rows carry (a, b, drift, class) for plotting.

    model_factory(a, b) must return the weighted StepSet.  Ambiguous cells are
    labeled "ambiguous" rather than guessed.
    """
    rows = []
    for a in a_values:
        for b in b_values:
            model = model_factory(a, b)
            dx, dy = drift(model)
            try:
                family = classify(model).family
            except AmbiguousClassError:
                family = "ambiguous"
            rows.append({"a": a, "b": b, "dx": dx, "dy": dy, "class": family})
    return rows
