"""Gorenstein decision for K[I_{n,d,t}].

Two routes are kept deliberately independent:

* :func:`decide_algorithmic` works on the generator polytope ``P``. It finds
  the smallest dilation ``delta`` whose relative interior holds a lattice
  point. Several such points rule Gorenstein out; a single point ``alpha``
  leads to ``Q = delta P - alpha``, and the algebra is Gorenstein exactly when
  the polar dual of ``Q`` is integral.
* :func:`decide_closed_form` evaluates the classification by membership of
  ``n`` in a short list depending on ``d`` and ``t``.
"""

from __future__ import annotations

import enum
import logging
from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .latgeom import IntPoint, find_delta
from .polykern import VPolytope, dilate, dual, is_integral
from .tspread import (
    InvalidSpreadParams,
    SpreadParams,
    UnsupportedSpreadError,
    build_polytope,
    embed,
    generate,
    krull_dimension,
    reduce,
)

log = logging.getLogger(__name__)

__all__ = [
    "Branch",
    "GorensteinReport",
    "InvalidSpreadParams",
    "SweepFailure",
    "UnsupportedSpreadError",
    "a_invariant",
    "cross_check",
    "decide_algorithmic",
    "decide_closed_form",
    "default_delta_max",
    "expected_delta",
    "run_sweep",
    "sweep_params",
]


class Branch(str, enum.Enum):
    POLYNOMIAL_RING = "POLYNOMIAL_RING"
    GEOMETRIC = "GEOMETRIC"


@dataclass(frozen=True)
class GorensteinReport:
    """Audit trail of one decision.

    ``interior_points`` and ``unique_alpha`` are in the R^{n-1} of the input
    parameters; ``dual_vertices`` are in lattice-chart coordinates of the
    reduced polytope, where the integrality test is meaningful.
    """

    input: SpreadParams
    reduced: SpreadParams
    dimension: int
    branch: Branch
    delta: int | None
    interior_points: tuple[IntPoint, ...]
    unique_alpha: IntPoint | None
    dual_vertices: VPolytope | None
    dual_integral: bool | None
    gorenstein_algorithmic: bool
    gorenstein_closed_form: bool
    agree: bool
    a_invariant: int | None


def default_delta_max(p: SpreadParams) -> int:
    return p.t + p.d + 2


def decide_closed_form(p: SpreadParams) -> bool:
    n, d, t = p.n, p.d, p.t
    if d == 1:
        return True
    if t == 1:
        return d == n or d == n - 1 or (d < n - 1 and n == 2 * d)
    q = reduce(p)
    return q.n in {(d - 1) * q.t + 1, (d - 1) * q.t + 2, d * q.t, d * q.t + 1, d * q.t + d}


def decide_algorithmic(p: SpreadParams, delta_max: int | None = None) -> GorensteinReport:
    q = reduce(p)
    dim = krull_dimension(p)
    closed = decide_closed_form(p)

    def report(**kw) -> GorensteinReport:
        alg = kw["gorenstein_algorithmic"]
        return GorensteinReport(
            input=p, reduced=q, dimension=dim, gorenstein_closed_form=closed, agree=alg == closed, **kw
        )

    # polynomial rings with more than one generator still go through the
    # geometry, which then has to confirm the verdict on its own
    if p.d == 1 or len(generate(q)) == 1:
        return report(
            branch=Branch.POLYNOMIAL_RING,
            delta=None,
            interior_points=(),
            unique_alpha=None,
            dual_vertices=None,
            dual_integral=None,
            gorenstein_algorithmic=True,
            a_invariant=None,
        )

    poly = build_polytope(q)
    res = find_delta(poly, delta_max or default_delta_max(p))
    delta = res.delta
    points = tuple(embed(p, x, delta) for x in res.interior_points)
    common = {"branch": Branch.GEOMETRIC, "delta": delta, "interior_points": points, "a_invariant": -delta}
    if len(res.interior_points) > 1:
        return report(
            unique_alpha=None, dual_vertices=None, dual_integral=None, gorenstein_algorithmic=False, **common
        )

    (alpha,) = res.interior_points
    chart = res.chart.shifted(alpha)
    # in chart coordinates Q is full-dimensional with alpha at the origin
    q_chart = chart.pull(dilate(poly, delta))
    duals = dual(q_chart)
    integral = is_integral(duals)
    return report(
        unique_alpha=points[0],
        dual_vertices=duals,
        dual_integral=integral,
        gorenstein_algorithmic=integral,
        **common,
    )


def a_invariant(p: SpreadParams, delta_max: int | None = None) -> int:
    q = reduce(p)
    if q.n < 2:
        raise ValueError(f"{p} has a zero-dimensional generator polytope")
    return -find_delta(build_polytope(q), delta_max or default_delta_max(p)).delta


def expected_delta(p: SpreadParams) -> int | None:
    """Minimal dilation predicted from ``k = n - dt`` for reduced ``p`` with ``t, d >= 2``."""
    n, d, t = p.n, p.d, p.t
    if d < 2 or t < 2 or n < d * t:
        return None
    k = n - d * t
    if k == 0:
        return t + d - 1
    if k < d:
        return t + d
    return t + 1


# -- sweeps --------------------------------------------------------------------


@dataclass(frozen=True)
class SweepFailure:
    params: SpreadParams
    error: str


def sweep_params(
    n_max: int, d_max: int, t_max: int, *, n_min: int = 1, d_min: int = 1, t_min: int = 1
) -> list[SpreadParams]:
    """Valid parameter triples in range, sorted by ``(d, t, n)``."""
    out = []
    for d in range(max(d_min, 1), d_max + 1):
        for t in range(max(t_min, 1), t_max + 1):
            for n in range(max(n_min, t * (d - 1) + 1), n_max + 1):
                out.append(SpreadParams(n, d, t))
    return out


def _decide_one(args: tuple[SpreadParams, int | None]) -> GorensteinReport | SweepFailure:
    p, delta_max = args
    try:
        return decide_algorithmic(p, delta_max)
    except Exception as exc:  # noqa: BLE001  collected per tuple, never fatal to the sweep
        return SweepFailure(p, f"{type(exc).__name__}: {exc}")


def _map(params: list[SpreadParams], delta_max: int | None, workers: int | None) -> Iterator:
    jobs = [(p, delta_max) for p in params]
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(_decide_one, jobs)
    else:
        yield from map(_decide_one, jobs)


def run_sweep(
    params: list[SpreadParams], delta_max: int | None = None, workers: int | None = None
) -> tuple[list[GorensteinReport], list[SweepFailure]]:
    """Decide every tuple; results come back in input order whatever the worker count."""
    reports, failures = [], []
    for r in _map(params, delta_max, workers):
        (failures if isinstance(r, SweepFailure) else reports).append(r)
    for f in failures:
        log.warning("sweep failure at %s: %s", f.params, f.error)
    return reports, failures


def cross_check(
    n_max: int, d_max: int, t_max: int, delta_max: int | None = None, workers: int | None = None
) -> list[GorensteinReport]:
    """Reports whose two verdicts disagree over the given range."""
    reports, _ = run_sweep(sweep_params(n_max, d_max, t_max), delta_max, workers)
    return [r for r in reports if not r.agree]
