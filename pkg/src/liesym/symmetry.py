"""Point-symmetry machinery for pairs of second-order ODEs.

A point-symmetry candidate for the system y'' = F(x, y, z), z'' = G(x, y, z)
is a vector field

    X = xi(x) d/dx + eta1(x, y, z) d/dy + eta2(x, y, z) d/dz.

This module computes the second prolongation of such a field on solutions
(replacing y'' by F and z'' by G), the resulting pair of symmetry-defect
residuals, and two specialized residual forms for the affine family

    X = 2*(k1 + k2*x) d/dx + (A [y z]^T + zeta(x)) . (d/dy, d/dz)

which is the shape every admitted symmetry of this ODE class takes.  On top
of the residuals sit the sampling-based verdict (`admits`), the covariance
action of linear changes of the dependent variables (`transform_generator`),
and the vector-field commutator (`commutator_vf`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .expr import (Expr, SamplingDomain, ZeroReport, const, differentiate,
                   evaluate, fold_constants, free_symbols, parse, sym,
                   to_string, zero_report)
from .odesys import Mat2, OdeSystem

__all__ = [
    "Generator", "LinearGenerator", "Verdict", "basis_generator",
    "determining_generator", "residual_expressions", "prolong2_residual",
    "determining_residual", "autonomous_residual", "admits",
    "default_domain", "transform_generator", "commutator_vf",
    "generator_from_json", "generator_to_json",
]


def _coerce(v, what: str) -> Expr:
    if isinstance(v, Expr):
        return v
    if isinstance(v, str):
        return parse(v)
    if isinstance(v, (int, float)):
        return const(v)
    raise TypeError(f"{what} must be an Expr, a string, or a number; "
                    f"got {type(v).__name__}")


def _check_free(e: Expr, what: str, allowed: frozenset[str]):
    extra = free_symbols(e) - allowed
    if extra:
        raise ValueError(
            f"{what} may depend on {sorted(allowed)} only; found {sorted(extra)} "
            "(bind parameters to numbers before building a generator)")


@dataclass(frozen=True)
class Generator:
    """A point vector field xi*d/dx + eta1*d/dy + eta2*d/dz.

    ``xi`` may depend on x alone; ``eta1`` and ``eta2`` on (x, y, z).  First
    derivatives never enter point-symmetry coefficients, so yp/zp are
    rejected.  All parameters must already be numbers: coefficients are
    concrete functions, not templates.
    """

    xi: Expr
    eta1: Expr
    eta2: Expr

    def __post_init__(self):
        object.__setattr__(self, "xi", _coerce(self.xi, "xi"))
        object.__setattr__(self, "eta1", _coerce(self.eta1, "eta1"))
        object.__setattr__(self, "eta2", _coerce(self.eta2, "eta2"))
        _check_free(self.xi, "xi", frozenset({"x"}))
        _check_free(self.eta1, "eta1", frozenset({"x", "y", "z"}))
        _check_free(self.eta2, "eta2", frozenset({"x", "y", "z"}))

    def __add__(self, other: "Generator") -> "Generator":
        other = _as_generator(other)
        return Generator(fold_constants(self.xi + other.xi),
                         fold_constants(self.eta1 + other.eta1),
                         fold_constants(self.eta2 + other.eta2))

    def __mul__(self, s: float) -> "Generator":
        s = float(s)
        return Generator(fold_constants(s * self.xi),
                         fold_constants(s * self.eta1),
                         fold_constants(s * self.eta2))

    __rmul__ = __mul__

    def __neg__(self) -> "Generator":
        return self * -1.0

    def __sub__(self, other: "Generator") -> "Generator":
        return self + (-_as_generator(other))

    def __str__(self):
        return (f"{to_string(self.xi)} d/dx + {to_string(self.eta1)} d/dy "
                f"+ {to_string(self.eta2)} d/dz")


@dataclass(frozen=True)
class LinearGenerator:
    """The affine family 2*(k1 + k2*x) d/dx + (A [y z]^T + zeta) . (d/dy, d/dz).

    ``zeta`` is a pair of functions of x (constants allowed).  The factor 2 in
    front of the d/dx part is bookkeeping: with it, a constant-zeta member
    lines up with the eight-dimensional symmetry algebra of the free system
    via ``to_coefficients`` (c1 = 2*k1, c2 = 2*k2), and under ``expand`` the
    translation X1 = d/dx is exactly k1 = 1/2.
    """

    k1: float
    k2: float
    A: Mat2
    zeta: tuple[Expr, Expr] = (0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "k1", float(self.k1))
        object.__setattr__(self, "k2", float(self.k2))
        A = self.A if isinstance(self.A, Mat2) else Mat2.from_rows(self.A)
        object.__setattr__(self, "A", A)
        z1, z2 = self.zeta
        z1 = _coerce(z1, "zeta[0]")
        z2 = _coerce(z2, "zeta[1]")
        _check_free(z1, "zeta[0]", frozenset({"x"}))
        _check_free(z2, "zeta[1]", frozenset({"x"}))
        object.__setattr__(self, "zeta", (z1, z2))

    def expand(self) -> Generator:
        """The same field written out as a plain :class:`Generator`."""
        x, y, z = sym("x"), sym("y"), sym("z")
        xi = 2.0 * (self.k1 + self.k2 * x)
        eta1 = self.A.a11 * y + self.A.a12 * z + self.zeta[0]
        eta2 = self.A.a21 * y + self.A.a22 * z + self.zeta[1]
        return Generator(fold_constants(xi), fold_constants(eta1),
                         fold_constants(eta2))

    def to_coefficients(self) -> tuple[float, ...]:
        """Coordinates (c1..c8) in the basis of the eight-dimensional algebra.

        The basis order is: d/dx, x d/dx, d/dy, d/dz, y d/dy, z d/dz,
        z d/dy, y d/dz — so c1 = 2*k1, c2 = 2*k2, (c3, c4) = zeta,
        c5 = a11, c6 = a22, c7 = a12, c8 = a21.  Only constant zeta lies in
        the algebra; anything else raises ValueError.
        """
        consts = []
        for i in range(2):
            zi = fold_constants(self.zeta[i])
            if free_symbols(zi):
                raise ValueError(
                    "zeta is not constant; this field has no coordinate "
                    "vector in the eight-dimensional algebra")
            consts.append(evaluate(zi, {}))
        return (2.0 * self.k1, 2.0 * self.k2, consts[0], consts[1],
                self.A.a11, self.A.a22, self.A.a12, self.A.a21)

    @staticmethod
    def from_coefficients(c: Sequence[float]) -> "LinearGenerator":
        """Inverse of :meth:`to_coefficients`."""
        c = [float(v) for v in c]
        if len(c) != 8:
            raise ValueError(f"expected 8 coefficients, got {len(c)}")
        return LinearGenerator(c[0] / 2.0, c[1] / 2.0,
                               Mat2(c[4], c[6], c[7], c[5]), (c[2], c[3]))


def _as_generator(g) -> Generator:
    if isinstance(g, LinearGenerator):
        return g.expand()
    if isinstance(g, Generator):
        return g
    raise TypeError(f"expected a Generator or LinearGenerator, got {type(g).__name__}")


def basis_generator(i: int) -> Generator:
    """Basis element i (1..8) of the symmetry algebra as a vector field."""
    if not 1 <= i <= 8:
        raise ValueError(f"basis index must be 1..8, got {i}")
    c = [0.0] * 8
    c[i - 1] = 1.0
    return LinearGenerator.from_coefficients(c).expand()


def determining_generator(xi, A: Mat2 | None = None,
                          zeta=(0.0, 0.0)) -> Generator:
    """Build the admissible-shape field 2*xi d/dx + ((A + xi' I) [y z]^T + zeta) . grad.

    This is the change of bookkeeping between the determining data
    (xi(x), constant matrix A, zeta(x)) and the vector field itself: the
    d/dx part is doubled and the dependent part picks up xi' on the
    diagonal.  With A = 0 it produces the x-dependent scaling fields of the
    algebra extensions (e.g. xi = cos(2x)/2 gives
    cos(2x) d/dx - sin(2x) (y d/dy + z d/dz)).
    """
    xi = _coerce(xi, "xi")
    _check_free(xi, "xi", frozenset({"x"}))
    A = Mat2.zero() if A is None else (A if isinstance(A, Mat2) else Mat2.from_rows(A))
    z1 = _coerce(zeta[0], "zeta[0]")
    z2 = _coerce(zeta[1], "zeta[1]")
    xp = differentiate(xi, "x")
    y, z = sym("y"), sym("z")
    eta1 = (A.a11 + xp) * y + A.a12 * z + z1
    eta2 = A.a21 * y + (A.a22 + xp) * z + z2
    return Generator(fold_constants(2.0 * xi), fold_constants(eta1),
                     fold_constants(eta2))


# ---------------------------------------------------------------------------
# Prolongation and residuals
# ---------------------------------------------------------------------------

def _total_derivative(e: Expr, F: Expr, G: Expr) -> Expr:
    """Total x-derivative along solutions: d/dx + yp d/dy + zp d/dz with the
    second derivatives already replaced by the right-hand sides."""
    out = (differentiate(e, "x") + sym("yp") * differentiate(e, "y")
           + sym("zp") * differentiate(e, "z"))
    free = free_symbols(e)
    if "yp" in free:
        out = out + F * differentiate(e, "yp")
    if "zp" in free:
        out = out + G * differentiate(e, "zp")
    return out


def residual_expressions(sys: OdeSystem, g) -> tuple[Expr, Expr]:
    """Symbolic symmetry defects (r1, r2) of ``g`` on ``sys``.

    r_i = eta_i'' - X(rhs_i) where eta_i'' is the second prolonged
    coefficient evaluated on solutions.  Both are expressions in
    (x, y, z, yp, zp); they vanish identically iff the field is a point
    symmetry of the system.
    """
    F, G = sys.resolved()
    gen = _as_generator(g)

    def D(e: Expr) -> Expr:
        return _total_derivative(e, F, G)

    dxi = fold_constants(D(gen.xi))  # xi depends on x alone: plain xi'
    out = []
    for eta, vel, rhs in ((gen.eta1, "yp", F), (gen.eta2, "zp", G)):
        e1 = fold_constants(D(eta) - sym(vel) * dxi)
        e2 = D(e1) - rhs * dxi
        act = (gen.xi * differentiate(rhs, "x")
               + gen.eta1 * differentiate(rhs, "y")
               + gen.eta2 * differentiate(rhs, "z"))
        out.append(fold_constants(e2 - act))
    return out[0], out[1]


def _point5(point) -> dict[str, float]:
    vals = [float(v) for v in point]
    if len(vals) != 5:
        raise ValueError(f"expected a 5-point (x, y, z, yp, zp), got {len(vals)} values")
    return dict(zip(("x", "y", "z", "yp", "zp"), vals))


def _point3(point) -> dict[str, float]:
    vals = [float(v) for v in point]
    if len(vals) == 5:
        vals = vals[:3]
    if len(vals) != 3:
        raise ValueError(f"expected a 3-point (x, y, z), got {len(vals)} values")
    return dict(zip(("x", "y", "z"), vals))


def prolong2_residual(sys: OdeSystem, g, point) -> tuple[float, float]:
    """Both symmetry defects of ``g`` on ``sys`` at (x, y, z, yp, zp)."""
    r1, r2 = residual_expressions(sys, g)
    b = _point5(point)
    return evaluate(r1, b), evaluate(r2, b)


def _determining_expressions(sys: OdeSystem, xi: Expr, A: Mat2,
                             zeta: tuple[Expr, Expr]) -> tuple[Expr, Expr]:
    F, G = sys.resolved()
    y, z = sym("y"), sym("z")
    xi1 = fold_constants(differentiate(xi, "x"))
    xi3 = fold_constants(differentiate(differentiate(xi1, "x"), "x"))
    ddz = [fold_constants(differentiate(differentiate(zc, "x"), "x"))
           for zc in zeta]
    w1 = (A.a11 + xi1) * y + A.a12 * z + zeta[0]
    w2 = A.a21 * y + (A.a22 + xi1) * z + zeta[1]
    out = []
    for rhs, Arow, target, dz in ((F, (A.a11, A.a12), y, ddz[0]),
                                  (G, (A.a21, A.a22), z, ddz[1])):
        r = (2.0 * xi * differentiate(rhs, "x") + 3.0 * xi1 * rhs
             + w1 * differentiate(rhs, "y") + w2 * differentiate(rhs, "z")
             - (Arow[0] * F + Arow[1] * G) - xi3 * target - dz)
        out.append(fold_constants(r))
    return out[0], out[1]


def determining_residual(sys: OdeSystem, xi, A: Mat2, zeta, point) -> tuple[float, float]:
    """Defect of the determining equations for data (xi(x), A, zeta(x)).

    The admissible shape of a symmetry of this ODE class reduces the full
    prolongation condition to a velocity-free pair of equations in
    (x, y, z); this evaluates that pair at ``point`` = (x, y, z).  The data
    here is the determining triple itself — A is the constant matrix before
    the xi'-diagonal shift that appears in the expanded field (see
    :func:`determining_generator`).  For every such triple the full defect
    of the expanded field equals minus this value.
    """
    xi = _coerce(xi, "xi")
    _check_free(xi, "xi", frozenset({"x"}))
    A = A if isinstance(A, Mat2) else Mat2.from_rows(A)
    zeta = (_coerce(zeta[0], "zeta[0]"), _coerce(zeta[1], "zeta[1]"))
    _check_free(zeta[0], "zeta[0]", frozenset({"x"}))
    _check_free(zeta[1], "zeta[1]", frozenset({"x"}))
    r1, r2 = _determining_expressions(sys, xi, A, zeta)
    b = _point3(point)
    return evaluate(r1, b), evaluate(r2, b)


def autonomous_residual(sys: OdeSystem, k2: float, A: Mat2, k, point) -> tuple[float, float]:
    """Symmetry defect of a constant-coefficient affine field on an
    autonomous system.

    ``A`` and ``k`` are the matrix and constant shift of the expanded field
    (eta = A [y z]^T + k) and 2*k2*x is the x-proportional part of its
    d/dx coefficient, as in :class:`LinearGenerator`.  The defect is
    independent of x and of the velocities, so ``point`` may be (x, y, z)
    or a full 5-point; only (y, z) matter.  Equals
    ``prolong2_residual(sys, LinearGenerator(k1, k2, A, k), ...)`` exactly,
    for every k1 and any velocities.
    """
    if not sys.is_autonomous:
        raise ValueError("the reduced residual applies to autonomous systems "
                         "only; this system depends on x")
    A = A if isinstance(A, Mat2) else Mat2.from_rows(A)
    s1, s2 = (float(k[0]), float(k[1]))
    b = _point3(point)
    F, G = sys.resolved()
    Fy = differentiate(F, "y")
    Fz = differentiate(F, "z")
    Gy = differentiate(G, "y")
    Gz = differentiate(G, "z")
    fv, gv = evaluate(F, b), evaluate(G, b)
    w1 = A.a11 * b["y"] + A.a12 * b["z"] + s1
    w2 = A.a21 * b["y"] + A.a22 * b["z"] + s2
    k2 = float(k2)
    r1 = -(4.0 * k2 * fv + w1 * evaluate(Fy, b) + w2 * evaluate(Fz, b)
           - (A.a11 * fv + A.a12 * gv))
    r2 = -(4.0 * k2 * gv + w1 * evaluate(Gy, b) + w2 * evaluate(Gz, b)
           - (A.a21 * fv + A.a22 * gv))
    return r1, r2


# ---------------------------------------------------------------------------
# Sampling verdicts
# ---------------------------------------------------------------------------

_FIVE = ("x", "y", "z", "yp", "zp")


def default_domain(n: int = 200, seed: int = 0) -> SamplingDomain:
    """The default admissibility test bed: positive-quadrant positions with
    modest velocities."""
    return SamplingDomain(
        intervals={"x": (0.2, 3.0), "y": (0.2, 3.0), "z": (0.2, 3.0),
                   "yp": (-1.5, 1.5), "zp": (-1.5, 1.5)},
        n=n, seed=seed)


@dataclass(frozen=True)
class Verdict:
    """Outcome of an admissibility check.

    ``max_ratio`` is the worst relative residual over the sample,
    ``component`` names which of the two defects attained it (1 or 2),
    ``witness`` is the sample point where it happened and ``value`` the raw
    residual there.  These diagnostics are filled in for admitted verdicts
    too.
    """

    admitted: bool
    max_ratio: float
    component: int
    witness: dict[str, float]
    value: float


def admits(sys: OdeSystem, g, dom: SamplingDomain | None = None,
           tol: float = 1e-9) -> Verdict:
    """Does ``sys`` admit the point field ``g``?

    Both symmetry defects are put through the relative zero test of
    :func:`liesym.expr.zero_report` over ``dom`` (default:
    :func:`default_domain`); the field is admitted iff both pass at ``tol``.
    """
    if dom is None:
        dom = default_domain()
    missing = set(_FIVE) - set(dom.names())
    if missing:
        raise ValueError(f"domain must bound all of {_FIVE}; missing {sorted(missing)}")
    r1, r2 = residual_expressions(sys, g)
    rep1 = zero_report(r1, dom, tol)
    rep2 = zero_report(r2, dom, tol)
    worst, comp = ((rep1, 1) if rep1.max_ratio >= rep2.max_ratio else (rep2, 2))
    return Verdict(admitted=bool(rep1.ok and rep2.ok),
                   max_ratio=worst.max_ratio, component=comp,
                   witness=worst.witness, value=worst.value)


# ---------------------------------------------------------------------------
# Covariance and commutators
# ---------------------------------------------------------------------------

def transform_generator(g: LinearGenerator, P: Mat2) -> LinearGenerator:
    """Push an affine field through the change of variables [y z] -> P [y z].

    The x-part is untouched; the dependent part transforms by conjugation:
    A -> P A P^-1 and zeta -> P zeta.  Raises ValueError for singular P.
    If the system is transformed compatibly (see
    :func:`liesym.odesys.linear_change`), admitted fields stay admitted.
    """
    if not isinstance(g, LinearGenerator):
        raise TypeError("transform_generator acts on LinearGenerator fields; "
                        "expand() others and transform coordinatewise")
    P = P if isinstance(P, Mat2) else Mat2.from_rows(P)
    Pinv = P.inv()  # raises for singular P
    A = P @ g.A @ Pinv
    z1, z2 = P.apply_vec(g.zeta[0], g.zeta[1])
    return LinearGenerator(g.k1, g.k2, A,
                           (fold_constants(z1), fold_constants(z2)))


def _apply_field(gen: Generator, f: Expr) -> Expr:
    return (gen.xi * differentiate(f, "x") + gen.eta1 * differentiate(f, "y")
            + gen.eta2 * differentiate(f, "z"))


def commutator_vf(g1, g2) -> Generator:
    """Lie bracket [g1, g2] computed by vector-field differentiation.

    Coefficientwise: the new xi is g1(xi2) - g2(xi1), and likewise for eta1
    and eta2.  The result of bracketing two admissible fields is again a
    Generator (the xi part stays a function of x alone because both xi's
    are).
    """
    a = _as_generator(g1)
    b = _as_generator(g2)
    return Generator(fold_constants(_apply_field(a, b.xi) - _apply_field(b, a.xi)),
                     fold_constants(_apply_field(a, b.eta1) - _apply_field(b, a.eta1)),
                     fold_constants(_apply_field(a, b.eta2) - _apply_field(b, a.eta2)))


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def generator_from_json(obj: Mapping) -> Generator | LinearGenerator:
    """Parse the file format for generators.

    Two shapes are accepted::

        {"xi": "sin(x)", "eta1": "x*y", "eta2": "0"}
        {"linear": {"k1": 0, "k2": 0.5, "A": [[1, 0], [0, 0.5]], "zeta": [0, 0]}}

    Coefficient values may be numbers or expression strings.
    """
    if not isinstance(obj, Mapping):
        raise ValueError("generator JSON must be an object")
    if "linear" in obj:
        spec = obj["linear"]
        if not isinstance(spec, Mapping):
            raise ValueError("'linear' must be an object")
        unknown = set(spec) - {"k1", "k2", "A", "zeta"}
        if unknown:
            raise ValueError(f"unknown keys in 'linear': {sorted(unknown)}")
        if "A" not in spec:
            raise ValueError("'linear' requires the matrix 'A'")
        zeta = spec.get("zeta", (0.0, 0.0))
        if len(zeta) != 2:
            raise ValueError("'zeta' must have exactly two entries")
        return LinearGenerator(spec.get("k1", 0.0), spec.get("k2", 0.0),
                               Mat2.from_rows(spec["A"]), tuple(zeta))
    missing = {"xi", "eta1", "eta2"} - set(obj)
    if missing:
        raise ValueError(f"generator JSON missing keys {sorted(missing)}")
    unknown = set(obj) - {"xi", "eta1", "eta2"}
    if unknown:
        raise ValueError(f"unknown keys in generator JSON: {sorted(unknown)}")
    return Generator(obj["xi"], obj["eta1"], obj["eta2"])


def generator_to_json(g) -> dict:
    """Serialize a generator to the file format (expressions as strings)."""
    if isinstance(g, LinearGenerator):
        return {"linear": {"k1": g.k1, "k2": g.k2, "A": g.A.rows(),
                           "zeta": [to_string(g.zeta[0]), to_string(g.zeta[1])]}}
    g = _as_generator(g)
    return {"xi": to_string(g.xi), "eta1": to_string(g.eta1),
            "eta2": to_string(g.eta2)}
