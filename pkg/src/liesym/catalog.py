"""Executable catalog of second-order ODE pairs with known point symmetries.

Each entry packages a family of autonomous systems y'' = F(y, z),
z'' = G(y, z) together with the generators it is expected to admit beyond
the universal x-translation.  Entries carry a parameter schema (defaults,
admissibility constraints), can draw random admissible parameter sets, and
can verify themselves numerically: every expected generator's prolongation
residual must vanish, in the relative sense of
:func:`liesym.expr.zero_report_at`, on a sampled slice of phase space.

Entries come in three groups:

* ``T1.*`` — families admitting a five-dimensional symmetry group: two
  x-profile generators selected by the sign parameter ``kappa`` plus one
  linear action on (y, z) (diagonal, rotation, or shear).
* ``T2.*`` — families admitting exactly one extension of the kernel, one
  per optimal-system class of the eight-dimensional algebra.
* ``T3.*`` — families admitting exactly two extensions (a defining
  generator and one more).

One entry (``T2.3``) is flagged ``quarantined``: as encoded here its second
component fails verification (the sign of G is inconsistent with the listed
generator); it is kept, and reported, but excluded from any pass gate.
``T3.S5a`` is admissible only on the gamma = 1/2 subfamily, so its gamma is
pinned there.  Quarantine status travels with the verification report.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .expr import (
    Expr,
    SamplingDomain,
    atan,
    atan2,
    const,
    cos,
    exp,
    fold_constants,
    free_symbols,
    parse,
    sample,
    sin,
    sqrt,
    substitute,
    sym,
    zero_report_at,
)
from .odesys import OdeSystem, ReducibilityHint, reducibility_hint
from .symmetry import (
    LinearGenerator,
    basis_generator,
    determining_generator,
    residual_expressions,
)

__all__ = [
    "ParamSpec", "CatalogEntry", "GeneratorCheck", "EntryReport", "ENTRIES",
    "entry_ids", "get_entry", "list_entries", "instantiate", "draw_params",
    "verify_entry", "xi_family", "general_solution_system",
]

_EPS = 1e-6  # margin below which a constrained parameter counts as violating

# ---------------------------------------------------------------------------
# Schema types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParamSpec:
    """One named parameter of a catalog entry.

    ``derived`` parameters are computed from the free ones and cannot be
    set directly; they are listed so the schema shows the full picture.
    """

    name: str
    default: float
    constraint: str = ""
    derived: bool = False


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    """A family of systems plus the generators it is expected to admit."""

    id: str
    description: str
    params: tuple[ParamSpec, ...]
    quarantined: bool = False
    notes: str = ""
    l8_family: Optional[int] = None
    _build: Callable[[dict], OdeSystem] = field(default=None, repr=False)
    _generators: Callable[[dict], list] = field(default=None, repr=False)
    _validate: Callable[[dict], Optional[str]] = field(default=None, repr=False)
    _draw: Callable[[np.random.Generator], dict] = field(default=None, repr=False)
    _domain: Callable[[dict, int, int], SamplingDomain] = field(default=None, repr=False)
    _points: Callable[[dict, int, int], dict] = field(default=None, repr=False)

    def defaults(self) -> dict[str, float]:
        return {s.name: s.default for s in self.params if not s.derived}

    def resolve(self, params: Mapping[str, float] | None = None) -> dict[str, float]:
        """Merge ``params`` over the defaults and check admissibility."""
        p = self.defaults()
        for k, v in (params or {}).items():
            if k not in p:
                if any(s.name == k and s.derived for s in self.params):
                    raise ValueError(
                        f"{self.id}: parameter {k!r} is derived from the others "
                        "and cannot be set directly")
                raise ValueError(
                    f"{self.id}: unknown parameter {k!r} (expected one of {sorted(p)})")
            p[k] = float(v)
        if self._validate is not None:
            msg = self._validate(p)
            if msg:
                raise ValueError(f"{self.id}: {msg}")
        return p

    def build(self, params: Mapping[str, float] | None = None) -> OdeSystem:
        return self._build(self.resolve(params))

    def labeled_generators(self, params: Mapping[str, float] | None = None) -> list:
        """``[(label, generator), ...]`` expected beyond the x-translation."""
        return list(self._generators(self.resolve(params)))

    def draw(self, rng: np.random.Generator) -> dict[str, float]:
        """A random admissible parameter set (validated before returning)."""
        return self.resolve(self._draw(rng) if self._draw else {})

    def sample_points(self, params: Mapping[str, float],
                      n: int = 200, seed: int = 0) -> dict[str, np.ndarray]:
        """Phase-space sample columns for (x, y, z, yp, zp).

        Entries whose coordinate slice is easiest to describe parametrically
        draw (u, v) boxes and push them through the defining relations; the
        rest sample a plain box, possibly shifted per entry.
        """
        if self._points is not None:
            return self._points(params, n, seed)
        dom = self._domain(params, n, seed) if self._domain else _box(n, seed)
        return sample(dom)


@dataclass(frozen=True)
class GeneratorCheck:
    """Verdict for one expected generator: worst residual over the sample."""

    label: str
    ok: bool
    component: int
    max_ratio: float
    witness: dict[str, float]
    value: float


@dataclass(frozen=True)
class EntryReport:
    """Verification outcome for one catalog entry at one parameter set."""

    entry_id: str
    params: dict[str, float]
    quarantined: bool
    passed: bool
    checks: tuple[GeneratorCheck, ...]

    def worst(self) -> float:
        return max(c.max_ratio for c in self.checks)


# ---------------------------------------------------------------------------
# Shared numeric helpers
# ---------------------------------------------------------------------------

_VEL_BOX = {"yp": (-1.5, 1.5), "zp": (-1.5, 1.5)}


def _box(n: int, seed: int,
         y: tuple[float, float] = (0.2, 3.0),
         z: tuple[float, float] = (0.2, 3.0)) -> SamplingDomain:
    intervals = {"x": (0.2, 3.0), "y": y, "z": z}
    intervals.update(_VEL_BOX)
    return SamplingDomain(intervals=intervals, n=n, seed=seed)


def _sys(F: Expr, G: Expr) -> OdeSystem:
    return OdeSystem(fold_constants(F), fold_constants(G))


def _lg(c1=0.0, c2=0.0, c3=0.0, c4=0.0, c5=0.0, c6=0.0, c7=0.0, c8=0.0):
    """Linear generator from the 8 coefficients (see ``to_coefficients``)."""
    return LinearGenerator.from_coefficients(
        tuple(float(v) for v in (c1, c2, c3, c4, c5, c6, c7, c8)))


def _pm(rng: np.random.Generator, lo: float = 0.3, hi: float = 1.3) -> float:
    """A random magnitude in [lo, hi] with a random sign."""
    return float((1.0 if rng.uniform() < 0.5 else -1.0) * rng.uniform(lo, hi))


def _nonzero(p: dict, *names: str) -> Optional[str]:
    for nm in names:
        if abs(p[nm]) < 1e-12:
            return f"{nm} must be nonzero"
    return None


def _pushed_points(push: Callable) -> Callable[[dict, int, int], dict]:
    """Point sampler that draws a (u, v) box and pushes it to (y, z)."""
    def points(p: dict, n: int, seed: int) -> dict[str, np.ndarray]:
        rng = np.random.default_rng(seed)
        u = rng.uniform(-1.2, 1.2, n)
        v = rng.uniform(0.2, 2.0, n)
        yv, zv = push(p, u, v)
        return {
            "x": rng.uniform(0.2, 3.0, n),
            "y": yv,
            "z": zv,
            "yp": rng.uniform(-1.5, 1.5, n),
            "zp": rng.uniform(-1.5, 1.5, n),
        }
    return points


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

ENTRIES: dict[str, CatalogEntry] = {}


def _register(entry: CatalogEntry) -> None:
    if entry.id in ENTRIES:
        raise ValueError(f"duplicate catalog id {entry.id!r}")
    ENTRIES[entry.id] = entry


def entry_ids() -> list[str]:
    return list(ENTRIES)


def get_entry(entry_id: str) -> CatalogEntry:
    try:
        return ENTRIES[entry_id]
    except KeyError:
        raise ValueError(
            f"unknown catalog entry {entry_id!r}; known ids: {', '.join(ENTRIES)}") from None


def list_entries() -> list[dict]:
    """Schema view of the catalog, one dict per entry (JSON-friendly)."""
    out = []
    for e in ENTRIES.values():
        out.append({
            "id": e.id,
            "description": e.description,
            "quarantined": e.quarantined,
            "params": [
                {"name": s.name, "default": s.default,
                 "constraint": s.constraint, "derived": s.derived}
                for s in e.params
            ],
            **({"notes": e.notes} if e.notes else {}),
        })
    return out


def instantiate(entry_id: str, params: Mapping[str, float] | None = None):
    """(system, generators) for an entry; generators are fully expanded."""
    e = get_entry(entry_id)
    p = e.resolve(params)
    gens = []
    for _, g in e._generators(p):
        gens.append(g.expand() if isinstance(g, LinearGenerator) else g)
    return e._build(p), gens


def draw_params(entry_id: str, rng=None) -> dict[str, float]:
    """A random admissible parameter set for an entry.

    ``rng`` may be a seed or a ``numpy.random.Generator``.
    """
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    return get_entry(entry_id).draw(rng)


def verify_entry(entry_id: str, params: Mapping[str, float] | None = None,
                 tol: float = 1e-8, n: int = 200, seed: int = 0) -> EntryReport:
    """Check that the expected generators are admitted at this parameter set.

    The report lists one verdict per generator (the x-translation kernel
    first); ``passed`` requires every verdict to hold.  A quarantined entry
    still produces its (failing) report — the flag rides along so callers
    can separate "broken input" from "broken entry".
    """
    e = get_entry(entry_id)
    p = e.resolve(params)
    system = e._build(p)
    pts = e.sample_points(p, n=n, seed=seed)
    checks = []
    for label, gen in [("kernel", basis_generator(1))] + list(e._generators(p)):
        r1, r2 = residual_expressions(system, gen)
        rep1 = zero_report_at(r1, pts, tol)
        rep2 = zero_report_at(r2, pts, tol)
        worse, comp = (rep1, 1) if rep1.max_ratio >= rep2.max_ratio else (rep2, 2)
        checks.append(GeneratorCheck(
            label=label, ok=bool(rep1.ok and rep2.ok), component=comp,
            max_ratio=worse.max_ratio, witness=worse.witness, value=worse.value))
    return EntryReport(
        entry_id=e.id, params=p, quarantined=e.quarantined,
        passed=all(c.ok for c in checks), checks=tuple(checks))


# ---------------------------------------------------------------------------
# Group T1: families with a five-dimensional symmetry group
# ---------------------------------------------------------------------------
#
# Every T1 system has the shape F = kappa*y + P(y, z), G = kappa*z + Q(y, z)
# with kappa in {0, -1, 1}.  The x-profile pair it admits solves
# xi''' = 4*kappa*xi' (see xi_family); the third generator is a linear
# action on (y, z) that fixes the family.


def _t1_profiles(kappa: float) -> list:
    if kappa == 0.0:
        return [("dilation", determining_generator("x")),
                ("projective", determining_generator("x^2/2"))]
    if kappa == -1.0:
        return [("cos-profile", determining_generator("cos(2*x)/2")),
                ("sin-profile", determining_generator("sin(2*x)/2"))]
    return [("growth-profile", determining_generator("exp(2*x)/2")),
            ("decay-profile", determining_generator("exp(-2*x)/2"))]


def _t1_validate(p: dict, extra=None) -> Optional[str]:
    if p["kappa"] not in (0.0, -1.0, 1.0):
        return "kappa must be one of 0, -1, 1"
    bad = _nonzero(p, "f0", "f1")
    if bad:
        return bad
    return extra(p) if extra else None


def _t1_draw(rng: np.random.Generator) -> dict[str, float]:
    return {"f0": _pm(rng), "f1": _pm(rng),
            "kappa": float(rng.choice([0.0, -1.0, 1.0]))}


def _t1j1_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    m = -4.0 / (p["gamma"] - 1.0)
    core = (z / y) ** m
    F = p["kappa"] * y + p["f0"] * y * z ** (-4.0) * core
    G = p["kappa"] * z + p["f1"] * z ** (-3.0) * core
    return _sys(F, G)


def _t1j1_gens(p: dict) -> list:
    return _t1_profiles(p["kappa"]) + [("diag-action", _lg(c5=p["gamma"], c6=1.0))]


_register(CatalogEntry(
    id="T1.J1",
    description=("diagonal action: F = kappa*y + f0*y*z^-4*(z/y)^m, "
                 "G = kappa*z + f1*z^-3*(z/y)^m with m = -4/(gamma-1)"),
    params=(
        ParamSpec("gamma", 3.0, "away from 0 and 1"),
        ParamSpec("f0", 1.0, "nonzero"),
        ParamSpec("f1", 1.0, "nonzero"),
        ParamSpec("kappa", 0.0, "one of 0, -1, 1"),
    ),
    _build=_t1j1_build,
    _generators=_t1j1_gens,
    _validate=lambda p: _t1_validate(p, lambda q: (
        "gamma must stay away from 0 and 1"
        if min(abs(q["gamma"]), abs(q["gamma"] - 1.0)) < _EPS else None)),
    _draw=lambda rng: {**_t1_draw(rng), "gamma": float(rng.uniform(1.5, 3.5))},
))


def _t1j2_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    tau = exp(4.0 * p["alpha"] * atan2(z, y)) * (y * y + z * z) ** (-2.0)
    F = p["kappa"] * y + (p["f0"] * y - p["f1"] * z) * tau
    G = p["kappa"] * z + (p["f0"] * z + p["f1"] * y) * tau
    return _sys(F, G)


def _t1j2_gens(p: dict) -> list:
    a = p["alpha"]
    return _t1_profiles(p["kappa"]) + [
        ("rotation-action", _lg(c5=a, c6=a, c7=-1.0, c8=1.0))]


_register(CatalogEntry(
    id="T1.J2",
    description=("rotation action: F = kappa*y + (f0*y - f1*z)*tau, "
                 "G = kappa*z + (f0*z + f1*y)*tau with "
                 "tau = exp(4*alpha*atan2(z,y))*(y^2+z^2)^-2"),
    params=(
        ParamSpec("alpha", 2.0, "different from 1"),
        ParamSpec("f0", 1.0, "nonzero"),
        ParamSpec("f1", 1.0, "nonzero"),
        ParamSpec("kappa", 0.0, "one of 0, -1, 1"),
    ),
    _build=_t1j2_build,
    _generators=_t1j2_gens,
    _validate=lambda p: _t1_validate(p, lambda q: (
        "alpha must differ from 1" if abs(q["alpha"] - 1.0) < _EPS else None)),
    _draw=lambda rng: {**_t1_draw(rng), "alpha": _pm(rng, 0.3, 0.9)},
))


def _t1j3_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    core = exp(y / z)
    F = p["kappa"] * y + core * z ** (-4.0) * (p["f0"] * y + p["f1"] * z)
    G = p["kappa"] * z + p["f0"] * z ** (-3.0) * core
    return _sys(F, G)


def _t1j3_gens(p: dict) -> list:
    return _t1_profiles(p["kappa"]) + [("shear-action", _lg(c5=1.0, c6=1.0, c7=4.0))]


_register(CatalogEntry(
    id="T1.J3",
    description=("shear action: F = kappa*y + exp(y/z)*z^-4*(f0*y + f1*z), "
                 "G = kappa*z + f0*z^-3*exp(y/z)"),
    params=(
        ParamSpec("f0", 1.0, "nonzero"),
        ParamSpec("f1", 1.0, "nonzero"),
        ParamSpec("kappa", 0.0, "one of 0, -1, 1"),
    ),
    _build=_t1j3_build,
    _generators=_t1j3_gens,
    _validate=_t1_validate,
    _draw=_t1_draw,
))


# ---------------------------------------------------------------------------
# Group T2: one extension of the kernel, one entry per optimal-system class
# ---------------------------------------------------------------------------
#
# The free profiles f and g are truncated Laurent polynomials
#   c_m2*u^-2 + c_m1*u^-1 + c_p1*u + c_p2*u^2
# in the row's invariant variable.  A degenerate profile pair (constant, or
# mutually proportional) would drop the family into a simpler class, so it
# is rejected at validation time.

_LAURENT_F = (
    ParamSpec("fm2", 0.4, "f-profile coefficient of u^-2"),
    ParamSpec("fm1", -0.6, "f-profile coefficient of u^-1"),
    ParamSpec("fp1", 0.8, "f-profile coefficient of u"),
    ParamSpec("fp2", 0.3, "f-profile coefficient of u^2"),
)
_LAURENT_G = (
    ParamSpec("gm2", -0.5, "g-profile coefficient of u^-2"),
    ParamSpec("gm1", 0.7, "g-profile coefficient of u^-1"),
    ParamSpec("gp1", -0.4, "g-profile coefficient of u"),
    ParamSpec("gp2", 0.6, "g-profile coefficient of u^2"),
)

_PROFILE_DOM = SamplingDomain(intervals={"u": (0.3, 2.5)}, n=64, seed=7)


def _laurent(p: dict, prefix: str, u: Expr) -> Expr:
    return (p[prefix + "m2"] * u ** (-2.0) + p[prefix + "m1"] * u ** (-1.0)
            + p[prefix + "p1"] * u + p[prefix + "p2"] * u ** 2.0)


def _laurent_draw(rng: np.random.Generator) -> dict[str, float]:
    return {nm: _pm(rng) for nm in
            ("fm2", "fm1", "fp1", "fp2", "gm2", "gm1", "gp1", "gp2")}


def _laurent_check(p: dict) -> Optional[str]:
    u = sym("u")
    f = fold_constants(_laurent(p, "f", u))
    g = fold_constants(_laurent(p, "g", u))
    hint = reducibility_hint(f, g, _PROFILE_DOM)
    if hint is not ReducibilityHint.NoHint:
        return (f"profile pair is degenerate ({hint.value}); "
                "pick genuinely independent nonzero profiles")
    return None


def _t2_validate(extra=None):
    def check(p: dict) -> Optional[str]:
        msg = _laurent_check(p)
        if msg:
            return msg
        return extra(p) if extra else None
    return check


def _chi(alpha: float) -> tuple[float, float]:
    d = alpha * alpha + 1.0
    return alpha / d, 1.0 / d


def _theta_pair(p: dict, u: Expr, v: Expr) -> tuple[Expr, Expr]:
    fv = _laurent(p, "f", v)
    gv = _laurent(p, "g", v)
    return cos(u) * fv + sin(u) * gv, sin(u) * fv - cos(u) * gv


def _t2_1_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    u = y ** p["alpha"] / z
    F = _laurent(p, "f", u) * y ** (1.0 - 2.0 * p["gamma"])
    G = _laurent(p, "g", u) * y ** (p["alpha"] - 2.0 * p["gamma"])
    return _sys(F, G)


_register(CatalogEntry(
    id="T2.1",
    description=("F = f(u)*y^(1-2*gamma), G = g(u)*y^(alpha-2*gamma) "
                 "with u = y^alpha/z"),
    params=(ParamSpec("gamma", 1.0), ParamSpec("alpha", 0.5, "in [-1, 1]"))
           + _LAURENT_F + _LAURENT_G,
    l8_family=1,
    _build=_t2_1_build,
    _generators=lambda p: [("extension", _lg(c2=p["gamma"], c5=1.0, c6=p["alpha"]))],
    _validate=_t2_validate(lambda p: (
        "alpha must lie in [-1, 1]" if abs(p["alpha"]) > 1.0 else None)),
    _draw=lambda rng: {**_laurent_draw(rng), "gamma": _pm(rng),
                       "alpha": float(rng.uniform(-0.9, 0.9))},
))


def _t2_2_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    u = y * exp(-z)
    F = _laurent(p, "f", u) * y ** (1.0 - 2.0 * p["gamma"])
    G = _laurent(p, "g", u) * y ** (-2.0 * p["gamma"])
    return _sys(F, G)


_register(CatalogEntry(
    id="T2.2",
    description="F = f(u)*y^(1-2*gamma), G = g(u)*y^(-2*gamma) with u = y*exp(-z)",
    params=(ParamSpec("gamma", 1.0),) + _LAURENT_F + _LAURENT_G,
    l8_family=2,
    _build=_t2_2_build,
    _generators=lambda p: [("extension", _lg(c2=p["gamma"], c4=1.0, c5=1.0))],
    _validate=_t2_validate(),
    _draw=lambda rng: {**_laurent_draw(rng), "gamma": _pm(rng)},
))


def _t2_3_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    u = atan2(z, y)
    v = sqrt(y * y + z * z)
    th1, th2 = _theta_pair(p, u, v)
    damp = exp(-2.0 * p["gamma"] * u)
    return _sys(damp * th1, -(damp * th2))


_register(CatalogEntry(
    id="T2.3",
    description=("polar pair F = exp(-2*gamma*u)*theta1, G = -exp(-2*gamma*u)*theta2 "
                 "with y = v*cos(u), z = v*sin(u)"),
    params=(ParamSpec("gamma", 1.0),) + _LAURENT_F + _LAURENT_G,
    quarantined=True,
    notes=("fails verification as encoded: the listed generator sends the first "
           "residual to -2*G, so the sign of the second component is inconsistent "
           "with the first; kept for completeness with the failure reported"),
    l8_family=3,
    _build=_t2_3_build,
    _generators=lambda p: [("extension", _lg(c2=p["gamma"], c7=-1.0, c8=1.0))],
    _validate=_t2_validate(),
    _draw=lambda rng: {**_laurent_draw(rng), "gamma": _pm(rng)},
    _points=_pushed_points(lambda p, u, v: (v * np.cos(u), v * np.sin(u))),
))


def _t2_456_build(p: dict, s: int) -> OdeSystem:
    y, z = sym("y"), sym("z")
    a, g = p["alpha"], p["gamma"]
    c1, c2 = _chi(a) if s else (0.0, 0.0)
    Y = y - s * c1
    Z = z + s * c2
    u = atan2(Z, Y)
    v = exp(-a * u) * sqrt(Y * Y + Z * Z)
    th1, th2 = _theta_pair(p, u, v)
    ebase = exp((a - 2.0 * g) * u)
    return _sys(ebase * th1, ebase * th2)


def _t2_456_push(s: int):
    def push(p: dict, u: np.ndarray, v: np.ndarray):
        a = p["alpha"]
        c1, c2 = _chi(a) if s else (0.0, 0.0)
        r = v * np.exp(a * u)
        return r * np.cos(u) + s * c1, r * np.sin(u) - s * c2
    return push


def _t2_456_gens(s: int):
    def gens(p: dict) -> list:
        a = p["alpha"]
        return [("extension",
                 _lg(c2=p["gamma"], c3=-float(s), c5=a, c6=a, c7=-1.0, c8=1.0))]
    return gens


for _num, _s, _shift_text in ((4, 1, "center shifted by (+chi1, -chi2)"),
                              (5, -1, "center shifted by (-chi1, +chi2)"),
                              (6, 0, "center at the origin")):
    _register(CatalogEntry(
        id=f"T2.{_num}",
        description=("spiral pair F = exp((alpha-2*gamma)*u)*theta1, "
                     "G = exp((alpha-2*gamma)*u)*theta2, " + _shift_text),
        params=(ParamSpec("gamma", 1.0), ParamSpec("alpha", 0.8, "positive"))
               + _LAURENT_F + _LAURENT_G,
        l8_family=4,
        _build=(lambda s: lambda p: _t2_456_build(p, s))(_s),
        _generators=_t2_456_gens(_s),
        _validate=_t2_validate(lambda p: (
            "alpha must be positive" if p["alpha"] < _EPS else None)),
        _draw=lambda rng: {**_laurent_draw(rng), "gamma": _pm(rng),
                           "alpha": float(rng.uniform(0.3, 1.3))},
        _points=_pushed_points(_t2_456_push(_s)),
    ))


def _t2_7_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    u = y / z
    damp = exp(-2.0 * p["gamma"] * u)
    gz = _laurent(p, "g", z)
    F = (gz * u + _laurent(p, "f", z)) * damp
    return _sys(F, gz * damp)


_register(CatalogEntry(
    id="T2.7",
    description=("F = (g(z)*u + f(z))*exp(-2*gamma*u), G = g(z)*exp(-2*gamma*u) "
                 "with u = y/z"),
    params=(ParamSpec("gamma", 1.0),) + _LAURENT_F + _LAURENT_G,
    l8_family=5,
    _build=_t2_7_build,
    _generators=lambda p: [("extension", _lg(c2=p["gamma"], c7=1.0))],
    _validate=_t2_validate(),
    _draw=lambda rng: {**_laurent_draw(rng), "gamma": _pm(rng)},
    _domain=lambda p, n, seed: _box(n, seed, y=(0.2, 1.5), z=(0.5, 3.0)),
))


def _t2_8_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    u = z * z - 2.0 * y
    damp = exp(-2.0 * p["gamma"] * z)
    gu = _laurent(p, "g", u)
    return _sys((gu * z + _laurent(p, "f", u)) * damp, gu * damp)


_register(CatalogEntry(
    id="T2.8",
    description=("F = (g(u)*z + f(u))*exp(-2*gamma*z), G = g(u)*exp(-2*gamma*z) "
                 "with u = z^2 - 2*y"),
    params=(ParamSpec("gamma", 1.0),) + _LAURENT_F + _LAURENT_G,
    l8_family=5,
    _build=_t2_8_build,
    _generators=lambda p: [("extension", _lg(c2=p["gamma"], c4=1.0, c7=1.0))],
    _validate=_t2_validate(),
    _draw=lambda rng: {**_laurent_draw(rng), "gamma": _pm(rng)},
    _domain=lambda p, n, seed: _box(n, seed, y=(0.2, 1.0), z=(1.8, 3.0)),
))


def _t2_9_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    w = y / z
    u = z * exp(-w)
    damp = exp((1.0 - 2.0 * p["gamma"]) * w)
    gu = _laurent(p, "g", u)
    return _sys((w * gu + _laurent(p, "f", u)) * damp, gu * damp)


_register(CatalogEntry(
    id="T2.9",
    description=("F = ((y/z)*g(u) + f(u))*exp((1-2*gamma)*y/z), "
                 "G = g(u)*exp((1-2*gamma)*y/z) with u = z*exp(-y/z)"),
    params=(ParamSpec("gamma", 1.0),) + _LAURENT_F + _LAURENT_G,
    l8_family=6,
    _build=_t2_9_build,
    _generators=lambda p: [("extension", _lg(c2=p["gamma"], c5=1.0, c6=1.0, c7=1.0))],
    _validate=_t2_validate(),
    _draw=lambda rng: {**_laurent_draw(rng), "gamma": _pm(rng)},
    _domain=lambda p, n, seed: _box(n, seed, y=(0.2, 1.0), z=(1.0, 3.0)),
))


def _t2_10_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    damp = exp(-2.0 * p["gamma"] * y)
    return _sys(_laurent(p, "f", z) * damp, _laurent(p, "g", z) * damp)


_register(CatalogEntry(
    id="T2.10",
    description="F = f(z)*exp(-2*gamma*y), G = g(z)*exp(-2*gamma*y)",
    params=(ParamSpec("gamma", 1.0),) + _LAURENT_F + _LAURENT_G,
    l8_family=7,
    _build=_t2_10_build,
    _generators=lambda p: [("extension", _lg(c2=p["gamma"], c3=1.0))],
    _validate=_t2_validate(),
    _draw=lambda rng: {**_laurent_draw(rng), "gamma": _pm(rng)},
))


# ---------------------------------------------------------------------------
# Group T3: two extensions of the kernel (defining generator + one more)
# ---------------------------------------------------------------------------


def _t3(entry_id, description, params, build, gens, validate=None, draw=None,
        domain=None, quarantined=False, notes=""):
    _register(CatalogEntry(
        id=entry_id, description=description, params=params,
        quarantined=quarantined, notes=notes,
        _build=build, _generators=gens, _validate=validate, _draw=draw,
        _domain=domain))


def _s1a_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    gt = -2.0 * p["gamma"]
    F = p["f0"] * z ** p["beta"] * y ** (1.0 + gt)
    G = p["g0"] * z ** (p["beta"] + 1.0) * y ** gt
    return _sys(F, G)


_t3(
    "T3.S1a",
    "F = f0*z^beta*y^(1+gt), G = g0*z^(beta+1)*y^gt with gt = -2*gamma",
    (ParamSpec("gamma", 0.7, "nonzero"), ParamSpec("beta", 0.8, "nonzero"),
     ParamSpec("f0", 1.0, "nonzero"), ParamSpec("g0", 1.0, "nonzero")),
    _s1a_build,
    lambda p: [("defining", _lg(c2=p["gamma"], c5=1.0)),
               ("extension", _lg(c5=p["beta"], c6=2.0 * p["gamma"]))],
    validate=lambda p: (_nonzero(p, "f0", "g0")
                        or ("gamma must be nonzero" if abs(p["gamma"]) < _EPS else None)
                        or ("beta must be nonzero" if abs(p["beta"]) < _EPS else None)),
    draw=lambda rng: {"gamma": _pm(rng), "beta": _pm(rng),
                      "f0": _pm(rng), "g0": _pm(rng)},
)


def _s1b_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    gt = -2.0 * p["gamma"]
    core = exp(p["kappa"] * z)
    return _sys(p["f0"] * y ** (1.0 + gt) * core, p["g0"] * y ** gt * core)


_t3(
    "T3.S1b",
    "F = f0*y^(1+gt)*exp(kappa*z), G = g0*y^gt*exp(kappa*z) with gt = -2*gamma",
    (ParamSpec("gamma", 0.7, "nonzero"), ParamSpec("kappa", 0.8, "nonzero"),
     ParamSpec("f0", 1.0, "nonzero"), ParamSpec("g0", 1.0, "nonzero")),
    _s1b_build,
    lambda p: [("defining", _lg(c2=p["gamma"], c5=1.0)),
               ("extension", _lg(c4=2.0 * p["gamma"], c5=p["kappa"]))],
    validate=lambda p: (_nonzero(p, "f0", "g0")
                        or ("gamma must be nonzero" if abs(p["gamma"]) < _EPS else None)
                        or ("kappa must be nonzero" if abs(p["kappa"]) < _EPS else None)),
    draw=lambda rng: {"gamma": _pm(rng), "kappa": _pm(rng),
                      "f0": _pm(rng), "g0": _pm(rng)},
)


def _s1c_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    gt = (1.0 - 4.0 * p["gamma"]) / 2.0
    S = y - z * z
    F = (p["f0"] * sqrt(S) + 2.0 * p["g0"] * z) * S ** gt
    return _sys(F, p["g0"] * S ** gt)


_t3(
    "T3.S1c",
    ("F = (f0*sqrt(y-z^2) + 2*g0*z)*(y-z^2)^gt, G = g0*(y-z^2)^gt "
     "with gt = (1-4*gamma)/2; sampled on y > z^2"),
    (ParamSpec("gamma", 0.9, "away from 1/4"),
     ParamSpec("f0", 1.0, "nonzero"), ParamSpec("g0", 1.0, "nonzero")),
    _s1c_build,
    lambda p: [("defining", _lg(c2=p["gamma"], c5=1.0, c6=0.5)),
               ("extension", _lg(c4=1.0, c7=2.0))],
    validate=lambda p: (_nonzero(p, "f0", "g0")
                        or ("gamma must stay away from 1/4"
                            if abs(p["gamma"] - 0.25) < _EPS else None)),
    draw=lambda rng: {"gamma": _draw_away(rng, (0.25,), 0.15),
                      "f0": _pm(rng), "g0": _pm(rng)},
    domain=lambda p, n, seed: _box(n, seed, y=(1.1, 3.0), z=(0.2, 0.9)),
)


def _s1d_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    gt = (p["kappa"] + 1.0 - 4.0 * p["gamma"]) / 2.0
    F = p["f0"] * z ** (-(p["kappa"] + 1.0)) * y ** (gt + 1.0)
    G = p["g0"] * z ** (-p["kappa"]) * y ** gt
    return _sys(F, G)


def _s1d_check(p: dict) -> Optional[str]:
    bad = _nonzero(p, "f0", "g0")
    if bad:
        return bad
    if abs(p["kappa"] + 1.0) < _EPS:
        return "kappa must differ from -1"
    if abs(p["kappa"] + 1.0 - 4.0 * p["gamma"]) < 2.0 * _EPS:
        return "kappa + 1 - 4*gamma must be nonzero"
    return None


def _s1d_draw(rng: np.random.Generator) -> dict[str, float]:
    while True:
        kappa = float(rng.uniform(0.3, 1.3))
        gamma = _pm(rng)
        if abs(kappa + 1.0 - 4.0 * gamma) >= 0.2:
            return {"kappa": kappa, "gamma": gamma,
                    "f0": _pm(rng), "g0": _pm(rng)}


_t3(
    "T3.S1d",
    ("F = f0*z^-(kappa+1)*y^(gt+1), G = g0*z^-kappa*y^gt "
     "with gt = (kappa+1-4*gamma)/2"),
    (ParamSpec("gamma", 0.9), ParamSpec("kappa", 0.8, "away from -1"),
     ParamSpec("f0", 1.0, "nonzero"), ParamSpec("g0", 1.0, "nonzero")),
    _s1d_build,
    lambda p: [("defining", _lg(c2=p["gamma"], c5=1.0, c6=0.5)),
               ("extension", _lg(c2=p["kappa"] + 1.0, c6=2.0))],
    validate=_s1d_check,
    draw=_s1d_draw,
)


def _s1e_kappa(p: dict, branch: int) -> float:
    if branch == 3:
        return p["lam"] * p["lam"] / 4.0
    return p["kappa"]


def _s1e_build(branch: int):
    def build(p: dict) -> OdeSystem:
        y, z = sym("y"), sym("z")
        a, g, mu, lam = p["alpha"], p["gamma"], p["mu"], p["lam"]
        kap = _s1e_kappa(p, branch)
        Q = z * z + lam * y * z + kap * y * y
        if branch == 1:
            pe = math.sqrt(4.0 * kap - lam * lam)
            psi = exp(((2.0 * lam * g - 4.0 * mu) / pe)
                      * atan((lam * z + 2.0 * kap * y) / (pe * z)))
        elif branch == 2:
            pe = math.sqrt(lam * lam - 4.0 * kap)
            base = ((2.0 * kap * y + (lam + pe) * z)
                    / (2.0 * kap * y + (lam - pe) * z))
            psi = base ** ((2.0 * mu - lam * g) / pe)
        else:
            psi = exp(-4.0 * (mu * y + g * z) / (lam * y + 2.0 * z))
        core = Q ** (-g) * psi
        F = p["f0"] * (z - a * y) * core
        G = -p["f0"] * (kap * y + (lam + a) * z) * core
        return _sys(F, G)
    return build


def _s1e_gens(branch: int):
    def gens(p: dict) -> list:
        g, mu = p["gamma"], p["mu"]
        kap = _s1e_kappa(p, branch)
        return [("defining", _lg(c2=g, c5=1.0, c6=1.0)),
                ("extension", _lg(c5=p["lam"] * g - mu, c6=-mu,
                                  c7=g, c8=-kap * g))]
    return gens


def _s1e_check(branch: int):
    def check(p: dict) -> Optional[str]:
        bad = _nonzero(p, "f0")
        if bad:
            return bad
        if abs(p["alpha"]) < _EPS:
            return "alpha must be nonzero"
        lam = p["lam"]
        if branch == 1:
            if 4.0 * p["kappa"] - lam * lam < 0.01:
                return "needs 4*kappa - lam^2 > 0 (complex-root quadratic)"
        elif branch == 2:
            if lam < _EPS or p["kappa"] < _EPS:
                return "needs lam > 0 and kappa > 0 so the quadratic stays positive"
            if lam * lam - 4.0 * p["kappa"] < 0.01:
                return "needs lam^2 - 4*kappa > 0 (real-root quadratic)"
        else:
            if lam < _EPS:
                return "needs lam > 0 so lam*y + 2*z stays positive"
        return None
    return check


def _s1e_draw(branch: int):
    def draw(rng: np.random.Generator) -> dict[str, float]:
        common = {"gamma": _pm(rng), "alpha": _pm(rng),
                  "mu": float(rng.uniform(-1.0, 1.0)), "f0": _pm(rng)}
        if branch == 1:
            lam = _pm(rng)
            pe = float(rng.uniform(1.5, 2.5))
            return {**common, "lam": lam, "kappa": (lam * lam + pe * pe) / 4.0}
        if branch == 2:
            lam = float(rng.uniform(2.0, 3.0))
            t = float(rng.uniform(0.4, 0.8))
            return {**common, "lam": lam, "kappa": lam * lam * (1.0 - t * t) / 4.0}
        return {**common, "lam": float(rng.uniform(0.5, 1.5))}
    return draw


_S1E_COMMON = (
    "F = f0*(z - alpha*y)*Q^-gamma*psi, "
    "G = -f0*(kappa*y + (lam+alpha)*z)*Q^-gamma*psi "
    "with Q = z^2 + lam*y*z + kappa*y^2")

for _branch, _psi_text, _extra in (
        (1, "psi = exp(((2*lam*gamma-4*mu)/p)*atan((lam*z+2*kappa*y)/(p*z))), "
            "p^2 = 4*kappa - lam^2", (ParamSpec("lam", 1.0),
                                      ParamSpec("kappa", 1.25, "4*kappa > lam^2"))),
        (2, "psi = ((2*kappa*y+(lam+p)*z)/(2*kappa*y+(lam-p)*z))^((2*mu-lam*gamma)/p), "
            "p^2 = lam^2 - 4*kappa", (ParamSpec("lam", 3.0, "positive"),
                                      ParamSpec("kappa", 1.0, "positive, lam^2 > 4*kappa"))),
        (3, "psi = exp(-4*(mu*y+gamma*z)/(lam*y+2*z)), kappa = lam^2/4",
            (ParamSpec("lam", 2.0, "positive"),
             ParamSpec("kappa", 1.0, "lam^2/4", derived=True)))):
    _t3(
        f"T3.S1e{_branch}",
        _S1E_COMMON + "; " + _psi_text,
        (ParamSpec("gamma", 0.6), ParamSpec("alpha", 0.7, "nonzero"),
         ParamSpec("mu", 0.4), ParamSpec("f0", 1.0, "nonzero")) + _extra,
        _s1e_build(_branch),
        _s1e_gens(_branch),
        validate=_s1e_check(_branch),
        draw=_s1e_draw(_branch),
    )


def _s1f_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    w = y / (y + z)
    damp = y ** (1.0 - 2.0 * p["gamma"])
    F = p["f0"] * w ** p["kappa"] * damp
    G = (const(p["g0"]) - p["f0"] * w) * w ** (p["kappa"] - 1.0) * damp
    return _sys(F, G)


_t3(
    "T3.S1f",
    ("F = f0*w^kappa*y^(1-2*gamma), G = (g0 - f0*w)*w^(kappa-1)*y^(1-2*gamma) "
     "with w = y/(y+z)"),
    (ParamSpec("gamma", 0.7, "nonzero"), ParamSpec("kappa", 0.8, "nonzero"),
     ParamSpec("f0", 1.0, "nonzero"), ParamSpec("g0", 1.0, "nonzero")),
    _s1f_build,
    lambda p: [("defining", _lg(c2=p["gamma"], c5=1.0, c6=1.0)),
               ("extension", _lg(c2=p["kappa"], c6=2.0, c8=2.0))],
    validate=lambda p: (_nonzero(p, "f0", "g0")
                        or ("gamma must be nonzero" if abs(p["gamma"]) < _EPS else None)
                        or ("kappa must be nonzero" if abs(p["kappa"]) < _EPS else None)),
    draw=lambda rng: {"gamma": _pm(rng), "kappa": _pm(rng),
                      "f0": _pm(rng), "g0": _pm(rng)},
)


def _s1g_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    gt = p["alpha"] * p["kappa"] - 2.0 * p["gamma"]
    F = p["f0"] * z ** (-p["kappa"]) * y ** (gt + 1.0)
    G = p["g0"] * z ** (1.0 - p["kappa"]) * y ** gt
    return _sys(F, G)


_t3(
    "T3.S1g",
    ("F = f0*z^-kappa*y^(gt+1), G = g0*z^(1-kappa)*y^gt "
     "with gt = alpha*kappa - 2*gamma"),
    (ParamSpec("gamma", 0.7), ParamSpec("alpha", -0.7, "not in {0, 1/2, 1}"),
     ParamSpec("kappa", 0.8, "nonzero"),
     ParamSpec("f0", 1.0, "nonzero"), ParamSpec("g0", 1.0, "nonzero")),
    _s1g_build,
    lambda p: [("defining", _lg(c2=p["gamma"], c5=1.0, c6=p["alpha"])),
               ("extension", _lg(c2=p["kappa"], c6=2.0))],
    validate=lambda p: (_nonzero(p, "f0", "g0")
                        or ("kappa must be nonzero" if abs(p["kappa"]) < _EPS else None)
                        or ("alpha must avoid 0, 1/2 and 1"
                            if min(abs(p["alpha"]), abs(p["alpha"] - 0.5),
                                   abs(p["alpha"] - 1.0)) < _EPS else None)),
    draw=lambda rng: {"gamma": _pm(rng), "alpha": float(rng.uniform(-1.3, -0.3)),
                      "kappa": _pm(rng), "f0": _pm(rng), "g0": _pm(rng)},
)


def _s2_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    core = exp(-p["alpha"] * z)
    F = p["f0"] * y ** (p["kappa"] + 1.0) * core
    G = p["g0"] * y ** p["kappa"] * core
    return _sys(F, G)


_t3(
    "T3.S2",
    ("F = f0*y^(kappa+1)*exp(-alpha*z), G = g0*y^kappa*exp(-alpha*z); "
     "the defining generator uses gamma = (alpha-kappa)/2"),
    (ParamSpec("alpha", 0.9, "nonzero"), ParamSpec("kappa", 0.7, "nonzero"),
     ParamSpec("f0", 1.0, "nonzero"), ParamSpec("g0", 1.0, "nonzero"),
     ParamSpec("gamma", 0.1, "(alpha-kappa)/2", derived=True)),
    _s2_build,
    lambda p: [("defining", _lg(c2=(p["alpha"] - p["kappa"]) / 2.0, c4=1.0, c5=1.0)),
               ("extension", _lg(c4=p["kappa"], c5=p["alpha"]))],
    validate=lambda p: (_nonzero(p, "f0", "g0")
                        or ("alpha and kappa must both be nonzero"
                            if min(abs(p["alpha"]), abs(p["kappa"])) < _EPS else None)),
    draw=lambda rng: {"alpha": _pm(rng), "kappa": _pm(rng),
                      "f0": _pm(rng), "g0": _pm(rng)},
)


def _polar_pair(p: dict, u: Expr, vpow: Expr) -> tuple[Expr, Expr]:
    F = (p["f0"] * cos(u) + p["g0"] * sin(u)) * vpow
    G = (p["f0"] * sin(u) - p["g0"] * cos(u)) * vpow
    return F, G


def _s3a_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    u = atan2(z, y)
    vpow = (y * y + z * z) ** (p["kappa"] / 2.0)
    return _sys(*_polar_pair(p, u, vpow))


_t3(
    "T3.S3a",
    ("F = (f0*cos(u)+g0*sin(u))*v^kappa, G = (f0*sin(u)-g0*cos(u))*v^kappa "
     "with u = atan2(z,y), v = sqrt(y^2+z^2)"),
    (ParamSpec("kappa", 0.8),
     ParamSpec("f0", 1.0, "nonzero"), ParamSpec("g0", 1.0, "nonzero")),
    _s3a_build,
    lambda p: [("defining", _lg(c7=-1.0, c8=1.0)),
               ("extension", _lg(c2=(1.0 - p["kappa"]) / 2.0, c5=1.0, c6=1.0))],
    validate=lambda p: _nonzero(p, "f0", "g0"),
    draw=lambda rng: {"kappa": _pm(rng), "f0": _pm(rng), "g0": _pm(rng)},
)


def _s3b_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    gt = -2.0 * p["gamma"]
    u = atan2(z, y)
    vpow = (y * y + z * z) ** ((-gt * p["kappa"] - 3.0) / 2.0)
    F, G = _polar_pair(p, u, vpow)
    damp = exp(gt * u)
    return _sys(damp * F, damp * G)


_t3(
    "T3.S3b",
    ("F = exp(gt*u)*(f0*cos(u)+g0*sin(u))*v^(-gt*kappa-3), G likewise with "
     "(f0*sin(u)-g0*cos(u)); u = atan2(z,y), v = sqrt(y^2+z^2), gt = -2*gamma"),
    (ParamSpec("gamma", 0.7, "nonzero"), ParamSpec("kappa", 0.8),
     ParamSpec("f0", 1.0, "nonzero"), ParamSpec("g0", 1.0, "nonzero")),
    _s3b_build,
    lambda p: [("defining", _lg(c2=p["gamma"], c7=-1.0, c8=1.0)),
               ("extension", _lg(c2=2.0, c5=1.0, c6=1.0,
                                 c7=-p["kappa"], c8=p["kappa"]))],
    validate=lambda p: (_nonzero(p, "f0", "g0")
                        or ("gamma must be nonzero" if abs(p["gamma"]) < _EPS else None)),
    draw=lambda rng: {"gamma": _pm(rng), "kappa": _pm(rng),
                      "f0": _pm(rng), "g0": _pm(rng)},
)


def _s4_build(s: int):
    def build(p: dict) -> OdeSystem:
        y, z = sym("y"), sym("z")
        a, g = p["alpha"], p["gamma"]
        c1, c2 = _chi(a) if s else (0.0, 0.0)
        Y = y - s * c1
        Z = z + s * c2
        u = atan2(Z, Y)
        v = exp(-a * u) * sqrt(Y * Y + Z * Z)
        damp = exp((a - 2.0 * g) * u)
        F, G = _polar_pair(p, u, v ** p["kappa"])
        return _sys(damp * F, damp * G)
    return build


def _s4_gens(s: int):
    def gens(p: dict) -> list:
        a = p["alpha"]
        c1, c2 = _chi(a) if s else (0.0, 0.0)
        return [("defining", _lg(c2=p["gamma"], c3=-float(s),
                                 c5=a, c6=a, c7=-1.0, c8=1.0)),
                ("extension", _lg(c2=(1.0 - p["kappa"]) / 2.0,
                                  c3=-s * c1, c4=s * c2, c5=1.0, c6=1.0))]
    return gens


def _s4_domain(s: int):
    def domain(p: dict, n: int, seed: int) -> SamplingDomain:
        if s != 1:
            return _box(n, seed)
        c1, _ = _chi(p["alpha"])
        return _box(n, seed, y=(0.2 + c1, 3.0 + c1))
    return domain


for _branch, _s, _shift_text in ((("a", 1, "center shifted by (+chi1, -chi2)")),
                                 (("b", -1, "center shifted by (-chi1, +chi2)")),
                                 (("c", 0, "center at the origin"))):
    _t3(
        f"T3.S4{_branch}",
        ("spiral pair F = exp((alpha-2*gamma)*u)*(f0*cos(u)+g0*sin(u))*v^kappa, "
         "G likewise with (f0*sin(u)-g0*cos(u)); " + _shift_text),
        (ParamSpec("gamma", 0.6), ParamSpec("alpha", 0.8, "positive"),
         ParamSpec("kappa", 0.7),
         ParamSpec("f0", 1.0, "nonzero"), ParamSpec("g0", 1.0, "nonzero")),
        _s4_build(_s),
        _s4_gens(_s),
        validate=lambda p: (_nonzero(p, "f0", "g0")
                            or ("alpha must be positive" if p["alpha"] < _EPS else None)),
        draw=lambda rng: {"gamma": _pm(rng), "alpha": float(rng.uniform(0.3, 1.3)),
                          "kappa": _pm(rng), "f0": _pm(rng), "g0": _pm(rng)},
        domain=_s4_domain(_s),
    )


def _s5a_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    gt = 2.0 * p["gamma"]
    core = exp(-y / z)
    F = p["g0"] * z ** (p["beta"] - 1.0) * core * (y + p["kappa"] * gt * z)
    G = p["g0"] * z ** p["beta"] * core
    return _sys(F, G)


_t3(
    "T3.S5a",
    ("F = g0*z^(beta-1)*exp(-y/z)*(y + kappa*gt*z), G = g0*z^beta*exp(-y/z) "
     "with gt = 2*gamma"),
    (ParamSpec("gamma", 0.5, "fixed at 1/2 (see notes)"),
     ParamSpec("beta", 0.8), ParamSpec("kappa", 1.0),
     ParamSpec("g0", 1.0, "nonzero")),
    _s5a_build,
    lambda p: [("defining", _lg(c2=p["gamma"], c7=1.0)),
               ("extension", _lg(c5=1.0, c6=2.0 * p["gamma"],
                                 c7=p["beta"] - 1.0))],
    validate=lambda p: (_nonzero(p, "g0")
                        or ("admitted only on the gamma = 1/2 subfamily; "
                            "leave gamma at its default"
                            if abs(p["gamma"] - 0.5) > 1e-9 else None)),
    draw=lambda rng: {"beta": _pm(rng), "kappa": _pm(rng), "g0": _pm(rng)},
    notes=("valid on a parameter subfamily: the listed generator pair is "
           "admitted only at gamma = 1/2 (for any beta and kappa), so gamma "
           "is pinned there"),
)


def _s5b_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    u = z * z - 2.0 * y
    core = exp(p["beta"] * u - 2.0 * p["gamma"] * z)
    return _sys((p["g0"] * z + p["f0"]) * core, p["g0"] * core)


_t3(
    "T3.S5b",
    ("F = (g0*z + f0)*exp(beta*u - 2*gamma*z), G = g0*exp(beta*u - 2*gamma*z) "
     "with u = z^2 - 2*y"),
    (ParamSpec("gamma", 0.7), ParamSpec("beta", 0.8, "nonzero"),
     ParamSpec("f0", 1.0, "nonzero"), ParamSpec("g0", 1.0, "nonzero")),
    _s5b_build,
    lambda p: [("defining", _lg(c2=p["gamma"], c4=1.0, c7=1.0)),
               ("extension", _lg(c2=p["beta"], c3=1.0))],
    validate=lambda p: (_nonzero(p, "f0", "g0")
                        or ("beta must be nonzero" if abs(p["beta"]) < _EPS else None)),
    draw=lambda rng: {"gamma": _pm(rng), "beta": _pm(rng),
                      "f0": _pm(rng), "g0": _pm(rng)},
)


def _s5c_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    S = p["beta"] + z * z - 2.0 * y
    F = (p["g0"] * z + p["f0"] * sqrt(S)) * S ** p["kappa"]
    return _sys(F, p["g0"] * S ** p["kappa"])


_t3(
    "T3.S5c",
    ("F = (g0*z + f0*sqrt(S))*S^kappa, G = g0*S^kappa with "
     "S = beta + z^2 - 2*y; sampled where S > 0"),
    (ParamSpec("kappa", 0.8, "nonzero"), ParamSpec("beta", 0.5, "> -0.9"),
     ParamSpec("f0", 1.0, "nonzero"), ParamSpec("g0", 1.0, "nonzero")),
    _s5c_build,
    lambda p: [("defining", _lg(c4=1.0, c7=1.0)),
               ("extension", _lg(c2=1.0 - 2.0 * p["kappa"], c3=-2.0 * p["beta"],
                                 c5=4.0, c6=2.0))],
    validate=lambda p: (_nonzero(p, "f0", "g0")
                        or ("kappa must be nonzero" if abs(p["kappa"]) < _EPS else None)
                        or ("beta must exceed -0.9 so S stays positive on the "
                            "sample box" if p["beta"] < -0.9 else None)),
    draw=lambda rng: {"kappa": _pm(rng), "beta": float(rng.uniform(0.3, 1.3)),
                      "f0": _pm(rng), "g0": _pm(rng)},
    domain=lambda p, n, seed: _box(n, seed, y=(0.2, 1.0), z=(1.8, 3.0)),
)


def _s6_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    gt = 2.0 * p["gamma"] + p["kappa"] - 1.0
    core = exp(-gt * (y / z))
    F = (p["g0"] * y + p["f0"] * z) * z ** (p["kappa"] - 1.0) * core
    return _sys(F, p["g0"] * z ** p["kappa"] * core)


def _s6_draw(rng: np.random.Generator) -> dict[str, float]:
    while True:
        gamma, kappa = _pm(rng), _pm(rng)
        if abs(2.0 * gamma + kappa - 1.0) >= 0.2:
            return {"gamma": gamma, "kappa": kappa,
                    "f0": _pm(rng), "g0": _pm(rng)}


_t3(
    "T3.S6",
    ("F = (g0*y + f0*z)*z^(kappa-1)*exp(-gt*y/z), G = g0*z^kappa*exp(-gt*y/z) "
     "with gt = 2*gamma + kappa - 1"),
    (ParamSpec("gamma", 0.7), ParamSpec("kappa", 0.8),
     ParamSpec("f0", 1.0, "nonzero"), ParamSpec("g0", 1.0, "nonzero")),
    _s6_build,
    lambda p: [("defining", _lg(c2=p["gamma"], c5=1.0, c6=1.0, c7=1.0)),
               ("extension", _lg(c2=p["kappa"] - 1.0, c5=-2.0, c6=-2.0))],
    validate=lambda p: (_nonzero(p, "f0", "g0")
                        or ("2*gamma + kappa - 1 must be nonzero"
                            if abs(2.0 * p["gamma"] + p["kappa"] - 1.0) < _EPS
                            else None)),
    draw=_s6_draw,
)


def _s7a_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    gt = 2.0 * p["gamma"]
    f0 = p["g0"] / gt
    core = exp(p["kappa"] * z - gt * y)
    F = f0 * z ** (p["beta"] - 1.0) * core * (p["kappa"] * z + gt * p["phi1"])
    G = p["g0"] * z ** p["beta"] * core
    return _sys(F, G)


_t3(
    "T3.S7a",
    ("F = f0*z^(beta-1)*exp(kappa*z - gt*y)*(kappa*z + gt*phi1), "
     "G = g0*z^beta*exp(kappa*z - gt*y) with gt = 2*gamma and f0 = g0/gt"),
    (ParamSpec("gamma", 0.7, "nonzero"), ParamSpec("beta", 0.8),
     ParamSpec("kappa", 0.6), ParamSpec("phi1", 0.5),
     ParamSpec("g0", 1.0, "nonzero"),
     ParamSpec("f0", 1.0 / 1.4, "g0/(2*gamma)", derived=True)),
    _s7a_build,
    lambda p: [("defining", _lg(c2=p["gamma"], c3=1.0)),
               ("extension", _lg(c3=p["beta"] - 1.0, c6=2.0 * p["gamma"],
                                 c7=p["kappa"]))],
    validate=lambda p: (_nonzero(p, "g0")
                        or ("gamma must be nonzero" if abs(p["gamma"]) < _EPS else None)),
    draw=lambda rng: {"gamma": _pm(rng), "beta": _pm(rng), "kappa": _pm(rng),
                      "phi1": float(rng.uniform(-1.0, 1.0)), "g0": _pm(rng)},
)


def _s7b_build(p: dict) -> OdeSystem:
    y, z = sym("y"), sym("z")
    gt = 2.0 * p["gamma"]
    kap = gt * p["phi0"] / 2.0
    core = exp(p["beta"] * z + kap * z * z - gt * y)
    return _sys(p["g0"] * core * (p["phi0"] * z + p["phi1"]), p["g0"] * core)


_t3(
    "T3.S7b",
    ("F = g0*exp(beta*z + kappa*z^2 - gt*y)*(phi0*z + phi1), "
     "G = g0*exp(beta*z + kappa*z^2 - gt*y) with gt = 2*gamma and "
     "kappa = gt*phi0/2"),
    (ParamSpec("gamma", 0.7, "nonzero"), ParamSpec("beta", 0.8),
     ParamSpec("phi0", 0.9, "nonzero"), ParamSpec("phi1", 0.5),
     ParamSpec("g0", 1.0, "nonzero"),
     ParamSpec("kappa", 0.63, "gamma*phi0", derived=True)),
    _s7b_build,
    lambda p: [("defining", _lg(c2=p["gamma"], c3=1.0)),
               ("extension", _lg(c3=p["beta"], c4=2.0 * p["gamma"],
                                 c7=2.0 * p["gamma"] * p["phi0"]))],
    validate=lambda p: (_nonzero(p, "g0")
                        or ("gamma must be nonzero" if abs(p["gamma"]) < _EPS else None)
                        or ("phi0 must be nonzero" if abs(p["phi0"]) < _EPS else None)),
    draw=lambda rng: {"gamma": _pm(rng), "beta": _pm(rng), "phi0": _pm(rng),
                      "phi1": float(rng.uniform(-1.0, 1.0)), "g0": _pm(rng)},
)


def _draw_away(rng: np.random.Generator, avoid: tuple[float, ...],
               margin: float, lo: float = 0.3, hi: float = 1.3) -> float:
    """A signed draw keeping at least ``margin`` from every value in ``avoid``."""
    while True:
        v = _pm(rng, lo, hi)
        if all(abs(v - a) >= margin for a in avoid):
            return v


# ---------------------------------------------------------------------------
# x-profile families and the reduced general solution
# ---------------------------------------------------------------------------


def xi_family(a: float) -> tuple[Expr, Expr, Expr]:
    """Basis of solutions of the x-profile equation xi''' = a * xi'.

    a = 0 gives polynomials {1, x, x^2}; a = -p^2 the trigonometric family
    {1, cos(p*x), sin(p*x)}; a = p^2 the exponential family
    {1, exp(p*x), exp(-p*x)}.  The a = -4 and a = 4 profiles are the ones
    the ``T1.*`` entries admit at kappa = -1 and kappa = +1.
    """
    x = sym("x")
    if a == 0.0:
        return (const(1.0), x, x * x)
    p = math.sqrt(abs(a))
    if a < 0.0:
        return (const(1.0), cos(p * x), sin(p * x))
    return (const(1.0), exp(p * x), exp(-p * x))


def general_solution_system(a: float, b: float, c: float, f, g) -> OdeSystem:
    """The family solving the reduced symmetry conditions for a pure
    x-quadratic profile:

        F = b/3 + a*y/4 + y^-3 * f(z/y)
        G = c/3 + a*z/4 + z^-3 * g(z/y)

    so that 3F + y*F_y + z*F_z = a*y + b and 3G + y*G_y + z*G_z = a*z + c
    identically.  ``f`` and ``g`` are one-variable profiles in the symbol
    ``u`` (strings are parsed); a degenerate pair — either profile constant,
    or one a constant multiple of the other — is rejected because it drops
    the system into a simpler class.
    """
    fe = f if isinstance(f, Expr) else parse(str(f))
    ge = g if isinstance(g, Expr) else parse(str(g))
    for nm, e in (("f", fe), ("g", ge)):
        extra = free_symbols(e) - {"u"}
        if extra:
            raise ValueError(
                f"profile {nm} may only use the symbol 'u'; found {sorted(extra)}")
    hint = reducibility_hint(fe, ge, _PROFILE_DOM)
    if hint is not ReducibilityHint.NoHint:
        raise ValueError(f"degenerate profile pair: {hint.value}")
    y, z = sym("y"), sym("z")
    v = z / y
    F = const(b / 3.0) + (a / 4.0) * y + y ** (-3.0) * substitute(fe, {"u": v})
    G = const(c / 3.0) + (a / 4.0) * z + z ** (-3.0) * substitute(ge, {"u": v})
    return _sys(F, G)
