"""Classification, the base, the fundamental relation and reduction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from gmpy2 import mpq

from .core import AffineWitness, BidiagonalPair, ParameterArray, affine
from .errors import (
    DiameterTooSmall,
    FitFailure,
    InconsistentRatios,
    InvariantViolation,
    LengthMismatch,
    NoSquareRoot,
)
from .field import FieldContext
from .linalg import Matrix, vandermonde_interpolate

__all__ = [
    "CLASSIFICATION_CLAUSES",
    "ClassificationVerdict",
    "classify_check",
    "base",
    "FundamentalRelation",
    "fundamental_relation",
    "relation_residual",
    "relation_polynomials",
    "EigenvalueForm",
    "eigenvalue_form",
    "ReducedForm",
    "reduced_variant",
    "is_reduced",
    "reduce",
    "choose_q",
]

CLASSIFICATION_CLAUSES = ("thm-class.i", "thm-class.ii", "thm-class.iii", "thm-class.iv", "thm-class.v")


# -- classification ----------------------------------------------------------


def _common_ratio(theta, theta_star):
    """The common successive-difference ratio of both sequences, or None.

    Returns (ratio or None, message). Needs at least three terms.
    """
    # plain integers would divide to floats
    theta = [mpq(t) if isinstance(t, int) else t for t in theta]
    theta_star = [mpq(t) if isinstance(t, int) else t for t in theta_star]
    d = len(theta) - 1
    ratios = []
    for i in range(1, d):
        den = theta[i] - theta[i - 1]
        den_s = theta_star[i + 1] - theta_star[i]
        if not den or not den_s:
            return None, f"ratio at index {i} has a zero denominator"
        ratios.append((theta[i + 1] - theta[i]) / den)
        ratios.append((theta_star[i] - theta_star[i - 1]) / den_s)
    first = ratios[0]
    if any(r != first for r in ratios[1:]):
        return None, "successive-difference ratios are not all equal"
    return first, ""


@dataclass
class ClassificationVerdict:
    clauses: dict
    messages: dict = field(default_factory=dict)
    b: object = None

    @property
    def passed(self) -> bool:
        return all(self.clauses.values())

    @property
    def failed(self) -> list:
        return [k for k, ok in self.clauses.items() if not ok]

    def to_dict(self, ctx: FieldContext) -> dict:
        return {
            "passed": self.passed,
            "clauses": dict(self.clauses),
            "messages": dict(self.messages),
            "b": None if self.b is None else ctx.format(self.b),
        }


def classify_check(params: ParameterArray) -> ClassificationVerdict:
    """Evaluate the five clauses of the classification independently.

    Clauses that are vacuous for small diameters pass. The verdict passes
    exactly when some bidiagonal pair has this parameter array.
    """
    theta, theta_s, rho = params.theta, params.theta_star, params.rho
    if not (len(theta) == len(theta_s) == len(rho)) or not theta:
        raise LengthMismatch("theta, theta_star and rho must have the same positive length")
    d = len(theta) - 1
    clauses, messages = {}, {}

    ok = len(set(theta)) == d + 1 and len(set(theta_s)) == d + 1
    clauses["thm-class.i"] = ok
    if not ok:
        messages["thm-class.i"] = "eigenvalues or dual eigenvalues repeat"

    b = None
    if d <= 1:
        clauses["thm-class.ii"] = True
        b = 1
    else:
        b, msg = _common_ratio(theta, theta_s)
        clauses["thm-class.ii"] = b is not None
        if msg:
            messages["thm-class.ii"] = msg

    ints = [isinstance(r, int) and not isinstance(r, bool) for r in rho]
    ok = all(ints) and all(r > 0 for r in rho)
    clauses["thm-class.iii"] = ok
    if not ok:
        messages["thm-class.iii"] = "shape entries must be positive integers"

    try:
        ok = all(rho[i] == rho[d - i] for i in range(d + 1))
    except TypeError:
        ok = False
    clauses["thm-class.iv"] = ok
    if not ok:
        messages["thm-class.iv"] = "shape is not symmetric"

    try:
        ok = all(rho[i] <= rho[i + 1] for i in range((d + 1) // 2))
    except TypeError:
        ok = False
    clauses["thm-class.v"] = ok
    if not ok:
        messages["thm-class.v"] = "shape does not increase up to the middle"

    if b is not None and isinstance(b, int):
        b = theta[0] - theta[0] + 1 if theta else b
    return ClassificationVerdict(clauses, messages, b)


# -- base and fundamental relation -------------------------------------------


def base(pair: BidiagonalPair):
    """The base b of a verified pair (1 by convention when d <= 1)."""
    if pair.d <= 1:
        return pair.ctx.one
    b, msg = _common_ratio(pair.theta, pair.theta_star)
    if b is None:
        raise InconsistentRatios(msg)
    return b


@dataclass(frozen=True)
class FundamentalRelation:
    """Scalars with A A* - b A* A - alpha A - alpha* A* - gamma I = 0."""

    b: object
    alpha: object
    alpha_star: object
    gamma: object

    def to_dict(self, ctx: FieldContext) -> dict:
        return {k: ctx.format(getattr(self, k)) for k in ("b", "alpha", "alpha_star", "gamma")}


def relation_residual(pair: BidiagonalPair, rel: FundamentalRelation) -> Matrix:
    A, As = pair.A, pair.Astar
    out = A @ As - (As @ A) * rel.b - A * rel.alpha - As * rel.alpha_star
    return out.shift(-rel.gamma)


def fundamental_relation(pair: BidiagonalPair) -> FundamentalRelation:
    """The scalars b, alpha, alpha*, gamma of the pair.

    For d >= 1 they come from the closed forms at index 0; for d = 0 the
    choice b = 1, alpha = alpha* = 0 is fixed, which forces gamma = 0.
    The matrix identity is asserted.
    """
    ctx = pair.ctx
    th, ts = pair.theta, pair.theta_star
    b = base(pair)
    if pair.d == 0:
        alpha = alpha_s = ctx.zero
        gamma = (th[0] - b * th[0] - alpha_s) * ts[0] - alpha * th[0]
    else:
        alpha_s = th[1] - b * th[0]
        alpha = ts[0] - b * ts[1]
        gamma = b * th[0] * ts[1] - th[1] * ts[0]
    rel = FundamentalRelation(b, alpha, alpha_s, gamma)
    if not relation_residual(pair, rel).is_zero():
        raise InvariantViolation("fundamental relation residual is nonzero")
    return rel


def relation_polynomials(pair: BidiagonalPair):
    """The polynomials g, h with A A* - g(A*) A - h(A*) = 0 (needs d >= 2)."""
    if pair.d < 2:
        raise DiameterTooSmall("relation polynomials need diameter at least 2")
    ctx = pair.ctx
    th, ts = pair.theta, pair.theta_star
    d = pair.d
    g = vandermonde_interpolate([ts[i + 1] for i in range(d)], [ts[i] for i in range(d)], ctx)
    h = vandermonde_interpolate(list(ts), [th[i] * (ts[i] - g(ts[i])) for i in range(d + 1)], ctx)
    A, As = pair.A, pair.Astar
    residual = A @ As - g(As) @ A - h(As)
    if not residual.is_zero():
        raise InvariantViolation("relation polynomial identity fails")
    if g.degree != 1:
        raise InvariantViolation(f"g has degree {g.degree}, expected 1")
    return g, h


# -- eigenvalue forms and reduction -------------------------------------------


BASE_ONE = "BASE_ONE"
BASE_Q = "BASE_Q"


@dataclass(frozen=True)
class EigenvalueForm:
    """theta_i = b1 + 2 b2 i, theta*_i = c1 - 2 c2 i (BASE_ONE), or
    theta_i = b1 + b2 q^(-2i), theta*_i = c1 + c2 q^(2i) (BASE_Q)."""

    variant: str
    b1: object
    b2: object
    c1: object
    c2: object
    q: object = None

    def theta(self, i: int):
        if self.variant == BASE_ONE:
            return self.b1 + 2 * self.b2 * i
        return self.b1 + self.b2 * self.q ** (-2 * i)

    def theta_star(self, i: int):
        if self.variant == BASE_ONE:
            return self.c1 - 2 * self.c2 * i
        return self.c1 + self.c2 * self.q ** (2 * i)

    def to_dict(self, ctx: FieldContext) -> dict:
        out = {"variant": self.variant}
        for k in ("b1", "b2", "c1", "c2"):
            out[k] = ctx.format(getattr(self, k))
        if self.q is not None:
            out["q"] = ctx.format(self.q)
        return out


def choose_q(b, ctx: FieldContext, q=None):
    """A q with q^-2 = b.

    An explicit ``q`` (or the context's numeric q) is used when it fits;
    otherwise the root with positive leading coefficient is taken.
    """
    target = 1 / ctx(b)
    for cand in (q, ctx.numeric_q if ctx.is_rational else None):
        if cand is not None:
            cand = ctx(cand)
            if cand * cand == target:
                return cand
    root = ctx.sqrt(target)
    if root is None:
        hint = " (try the field Qq)" if ctx.is_rational else ""
        raise NoSquareRoot(f"1/b = {ctx.format(target)} has no square root in {ctx}{hint}")
    return root


def eigenvalue_form(params: ParameterArray, b, ctx: FieldContext, q=None) -> EigenvalueForm:
    """Closed-form coefficients fitting every theta_i and theta*_i."""
    th = [ctx(t) for t in params.theta]
    ts = [ctx(t) for t in params.theta_star]
    d = len(th) - 1
    b = ctx(b)
    if b == 1:
        if d == 0:
            form = EigenvalueForm(BASE_ONE, th[0], ctx.one, ts[0], ctx.one)
        else:
            form = EigenvalueForm(BASE_ONE, th[0], (th[1] - th[0]) / 2, ts[0], (ts[0] - ts[1]) / 2)
    else:
        qq = choose_q(b, ctx, q)
        if d == 0:
            raise FitFailure("a base other than 1 needs diameter at least 1")
        b2 = (th[1] - th[0]) / (qq ** -2 - 1)
        c2 = (ts[1] - ts[0]) / (qq ** 2 - 1)
        form = EigenvalueForm(BASE_Q, th[0] - b2, b2, ts[0] - c2, c2, qq)
    if not form.b2 or not form.c2:
        raise FitFailure("leading coefficients vanish")
    for i in range(d + 1):
        if form.theta(i) != th[i] or form.theta_star(i) != ts[i]:
            raise FitFailure(f"closed form does not fit index {i}")
    return form


@dataclass(frozen=True)
class ReducedForm:
    variant: str  # "sl2" or "uq"
    q: object = None


def reduced_variant(pair: BidiagonalPair, q=None) -> Optional[ReducedForm]:
    """Which reduced pattern the eigenvalue sequences follow, if any.

    For d <= 1 the q pattern is only recognised for the context's q (or an
    explicit ``q``) up to sign, since there the base is 1 by convention.
    """
    ctx = pair.ctx
    d = pair.d
    th, ts = pair.theta, pair.theta_star
    if all(th[i] == 2 * i - d and ts[i] == d - 2 * i for i in range(d + 1)):
        return ReducedForm("sl2")
    cands = []
    if d >= 2:
        b = base(pair)
        if b != 1:
            root = ctx.sqrt(1 / b)
            if root is not None:
                cands = [root, -root]
    else:
        for c in (q, ctx.q if ctx.has_q else None):
            if c is not None:
                c = ctx(c)
                cands += [c, -c]
    for c in cands:
        if all(th[i] == c ** (d - 2 * i) and ts[i] == c ** (2 * i - d) for i in range(d + 1)):
            return ReducedForm("uq", c)
    return None


def is_reduced(pair: BidiagonalPair, q=None) -> bool:
    return reduced_variant(pair, q) is not None


def reduce(pair: BidiagonalPair, q=None):
    """An affinely equivalent reduced pair and the witness mapping it back."""
    ctx = pair.ctx
    if is_reduced(pair, q):
        return pair, AffineWitness.identity(ctx)
    d = pair.d
    b = base(pair)
    form = eigenvalue_form(pair.params, b, ctx, q)
    if form.variant == BASE_ONE:
        witness = AffineWitness(form.b2, form.b1 + form.b2 * d, form.c2, form.c1 - form.c2 * d)
    else:
        qd = form.q ** d
        witness = AffineWitness(form.b2 / qd, form.b1, form.c2 * qd, form.c1)
    reduced = affine(pair, witness.inverse())
    back = affine(reduced, witness)
    if not back.same_matrices(pair):
        raise InvariantViolation("affine witness does not reproduce the input pair")
    if not is_reduced(reduced, form.q):
        raise InvariantViolation("reduction did not produce a reduced pair")
    return reduced, witness
