"""Floating bodies: what survives after shaving an eps-fraction in every direction.

For a measure f, a bounded body K, and a direction v, the minimal v-halfspace
is {x : <v, x> <= c} with the smallest c that still keeps f(K cut to it) at or
above a target.  The floating body intersects K with these cuts at target
(1 - eps) f(K) over a chosen direction set; since the true object quantifies
over all directions, the computed body is an outer approximation.

Continuous measures use exact rational bisection on c; the returned offset is
the certified upper end of the final bracket, so the defining inequality holds
exactly (and lands on the true cut whenever that cut is dyadic in the bracket).
Discrete measures use an exact order statistic of the point projections and
demand strict projection order: a tie anywhere means the direction must be
re-picked (see generic_direction / perturbed_directions).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .geometry import (
    ConvexBody,
    GeometryError,
    Halfspace,
    body_contains_body,
    clip,
    dot,
    intersect,
    primitive_vector,
    rot90,
    support,
)
from .measures import (
    DEFAULT_TOL,
    Measure,
    MeasureError,
    MeasureValue,
    evaluate,
    lattice_points,
    one_minus_ratio,
)

MAX_BISECT = 512


# -- direction sets ----------------------------------------------------------


@dataclass(frozen=True)
class DirectionSet:
    """Primitive integer directions with no two positively parallel."""

    directions: tuple
    scheme: str = "custom"

    def __post_init__(self):
        dirs = []
        seen = set()
        for v in self.directions:
            d = primitive_vector(v)
            if d not in seen:
                seen.add(d)
                dirs.append(d)
        if not dirs:
            raise GeometryError("a direction set cannot be empty")
        object.__setattr__(self, "directions", tuple(dirs))

    def __iter__(self):
        return iter(self.directions)

    def __len__(self):
        return len(self.directions)

    @staticmethod
    def axis(dim: int = 2) -> "DirectionSet":
        out = []
        for i in range(dim):
            e = tuple(1 if j == i else 0 for j in range(dim))
            out.append(e)
            out.append(tuple(-c for c in e))
        return DirectionSet(tuple(out), "axis")

    @staticmethod
    def axis_diag(dim: int = 2) -> "DirectionSet":
        out = list(DirectionSet.axis(dim).directions)
        for signs in itertools.product((1, -1), repeat=dim):
            out.append(signs)
        return DirectionSet(tuple(out), "axis-diag")

    @staticmethod
    def farey(n: int) -> "DirectionSet":
        """All primitive 2D integer directions with coordinates in [-n, n]."""
        if n < 1:
            raise GeometryError("farey direction order must be >= 1")
        seen = set()
        for a in range(-n, n + 1):
            for b in range(-n, n + 1):
                if a == 0 and b == 0:
                    continue
                seen.add(primitive_vector((a, b)))
        return DirectionSet(tuple(sorted(seen)), f"farey({n})")

    @staticmethod
    def custom(vectors) -> "DirectionSet":
        return DirectionSet(tuple(vectors), "custom")


def named_directions(name: str, dim: int = 2) -> DirectionSet:
    """Resolve 'axis', 'axis-diag', or 'farey:N'."""
    if name == "axis":
        return DirectionSet.axis(dim)
    if name == "axis-diag":
        return DirectionSet.axis_diag(dim)
    if name.startswith("farey:"):
        if dim != 2:
            raise GeometryError("farey directions are 2D")
        return DirectionSet.farey(int(name.split(":", 1)[1]))
    raise GeometryError(f"unknown direction set {name!r}")


def _as_direction_set(D) -> DirectionSet:
    return D if isinstance(D, DirectionSet) else DirectionSet.custom(D)


# -- minimal cuts ------------------------------------------------------------


def minimal_v_halfspace(
    K: ConvexBody,
    v,
    m: Measure,
    target,
    *,
    tol: Fraction = DEFAULT_TOL,
) -> Halfspace:
    """Smallest-offset halfspace <v, x> <= c keeping evaluate(m, K cut) >= target."""
    v = primitive_vector(v)
    target = Fraction(target)
    if target <= 0:
        raise MeasureError("the cut target must be positive")
    if K.is_empty:
        raise MeasureError("cannot cut the empty body")
    if not K.bounded:
        raise MeasureError("minimal cuts need a bounded body")
    if m.kind == "nonempty":
        raise MeasureError("minimal cuts need a nonconstant measure")

    if m.kind == "lattice":
        pts = lattice_points(K, m)
        n = len(pts)
        if n == 0:
            raise MeasureError("floating cuts need positive measure")
        keep = math.ceil(target)
        if keep > n:
            raise MeasureError(f"target {target} exceeds the available count {n}")
        proj = sorted(dot(v, p) for p in pts)
        if len(set(proj)) != n:
            raise MeasureError(
                f"direction {v} is not generic for the point set (re-pick required)"
            )
        return Halfspace.make(v, proj[keep - 1])

    total = evaluate(m, K)
    if total.hi <= 0:
        raise MeasureError("floating cuts need positive measure")
    if total.ge(target) is not True:
        raise MeasureError(f"body measure {total} is below the target {target}")

    lo = -support(K, tuple(-c for c in v))
    hi = support(K, v)

    def certified_ge(c) -> bool:
        cut = clip(K, Halfspace.make(v, c))
        msr = m
        for _ in range(12):
            got = evaluate(msr, cut).ge(target)
            if got is not None:
                return got
            msr = msr.with_tol(msr.tol / 2**8)
        raise MeasureError("cut measure cannot be separated from the target")

    if certified_ge(lo):
        return Halfspace.make(v, lo)
    a, b = lo, hi
    if not certified_ge(b):
        raise MeasureError("the whole body does not reach the target")
    span = hi - lo
    steps = 0
    while b - a > tol * span:
        steps += 1
        if steps > MAX_BISECT:
            break
        mid = (a + b) / 2
        if certified_ge(mid):
            b = mid
        else:
            a = mid
    return Halfspace.make(v, b)


# -- floating bodies ---------------------------------------------------------


@dataclass(frozen=True)
class FloatingBodyResult:
    body: ConvexBody
    delta: MeasureValue  # measured 1 - f(body)/f(K)
    cuts: tuple  # (direction, halfspace) pairs in direction-set order


def floating_body(
    K: ConvexBody,
    m: Measure,
    eps,
    D,
    *,
    tol: Fraction = DEFAULT_TOL,
) -> FloatingBodyResult:
    """Intersect per-direction minimal cuts at target (1 - eps) f(K)."""
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise MeasureError("eps must lie strictly between 0 and 1")
    dirs = _as_direction_set(D)
    total = evaluate(m, K)
    if total.is_infinite or total.hi <= 0:
        raise MeasureError("floating bodies need finite positive measure")
    target = (1 - eps) * total.hi
    cuts = tuple(
        (v, minimal_v_halfspace(K, v, m, target, tol=tol)) for v in dirs
    )
    inner = K
    for _, h in cuts:
        inner = clip(inner, h)
    part = evaluate(m, inner)
    delta = one_minus_ratio(part, total)
    return FloatingBodyResult(body=inner, delta=delta, cuts=cuts)


def check_separation(K: ConvexBody, m: Measure, eps, D, A: ConvexBody, *,
                     max_refine: int = 12) -> bool:
    """Whether f(A cut K) >= (1 - eps) f(K) implies the floating body sits in A.

    Vacuously true when the hypothesis fails; an interval that cannot be
    separated from the threshold after refinement is treated as satisfying the
    hypothesis, which only makes the check stricter.
    """
    eps = Fraction(eps)
    total = evaluate(m, K)
    if total.is_infinite:
        raise MeasureError("separation checks need finite measure")
    bar = (1 - eps) * total.hi
    piece = intersect([A, K])
    msr = m
    hyp = None
    for _ in range(max_refine):
        hyp = evaluate(msr, piece).ge(bar)
        if hyp is not None:
            break
        msr = msr.with_tol(msr.tol / 2**8)
    if hyp is False:
        return True
    fb = floating_body(K, m, eps, D)
    return body_contains_body(A, fb.body)


# -- generic directions ------------------------------------------------------


def generic_direction(base, points, *, max_doublings: int = 512):
    """A primitive direction near base whose projections separate all points.

    Tries base * 2^k + rot90(base) with growing k; each candidate is verified
    exactly, so the result is certified generic for the given points.
    """
    base = primitive_vector(base)
    if len(base) != 2:
        raise GeometryError("generic directions are 2D")
    pts = [tuple(Fraction(c) for c in p) for p in points]
    side = rot90(base)
    for k in range(max_doublings):
        cand = primitive_vector(tuple((b << k) + s for b, s in zip(base, side)))
        vals = [dot(cand, p) for p in pts]
        if len(set(vals)) == len(vals):
            return cand
    raise GeometryError("no generic perturbation found (points may coincide)")


def perturbed_directions(D, points) -> DirectionSet:
    """Replace every direction that ties on the point projections with a
    certified-generic perturbation of itself."""
    pts = [tuple(Fraction(c) for c in p) for p in points]
    out = []
    for v in _as_direction_set(D):
        vals = [dot(v, p) for p in pts]
        if len(set(vals)) == len(vals):
            out.append(v)
        else:
            out.append(generic_direction(v, pts))
    return DirectionSet.custom(out)
