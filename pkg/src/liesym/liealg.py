"""The eight-dimensional symmetry algebra: brackets, automorphisms, and
optimal-system normalizers.

Basis (coefficient order c1..c8):

    X1 = d/dx            X2 = x d/dx
    X3 = d/dy            X4 = d/dz
    X5 = y d/dy          X6 = z d/dz
    X7 = z d/dy          X8 = y d/dz

The nonzero brackets among basis elements are tabulated once; everything
else follows by antisymmetry and bilinearity.  The inner automorphisms are
shipped in closed form and double-checked against the exponential of the
adjoint maps (with a fixed orientation table).  The normalizers conjugate an
element onto the published representative of its class inside the relevant
subalgebra — the scaling part X5..X8 ("L4"), the scalings plus translations
X3..X8 ("L6"), or everything except the unreachable d/dx direction ("L8") —
and return the move word so the reduction can be replayed and audited.

A handy mental model for the X5..X8 block: arrange it as the matrix
M = [[c5, c7], [c8, c6]] acting on (y, z).  The shear automorphisms conjugate
M by elementary unipotent matrices, the scalings by diagonal ones, and the
swap involution by the permutation matrix, so normalizing M is literally a
real 2x2 normal-form computation — which is why the classifier from the
jordan module routes the branches here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .jordan import classify2x2
from .odesys import Mat2

__all__ = [
    "AlgebraElement", "OptimalRep", "DIM", "STRUCTURE_CONSTANTS",
    "ADJOINT_SIGNS", "bracket", "automorphism", "involution", "adjoint_exp",
    "apply_word", "canonical_vector", "rep_violations",
    "normalize_L4", "normalize_L6", "normalize_L8",
]

DIM = 8

# Nonzero brackets [Xi, Xj] for i < j, as {k: coefficient}.
_BRACKETS: dict[tuple[int, int], dict[int, float]] = {
    (1, 2): {1: 1.0},
    (3, 5): {3: 1.0},
    (3, 8): {4: 1.0},
    (4, 6): {4: 1.0},
    (4, 7): {3: 1.0},
    (5, 7): {7: -1.0},
    (5, 8): {8: 1.0},
    (6, 7): {7: 1.0},
    (6, 8): {8: -1.0},
    (7, 8): {5: -1.0, 6: 1.0},
}


def _build_structure() -> np.ndarray:
    C = np.zeros((DIM, DIM, DIM))
    for (i, j), comps in _BRACKETS.items():
        for k, v in comps.items():
            C[i - 1, j - 1, k - 1] = v
            C[j - 1, i - 1, k - 1] = -v
    return C


#: C[i, j, k] = coefficient of X_{k+1} in [X_{i+1}, X_{j+1}]
STRUCTURE_CONSTANTS = _build_structure()
STRUCTURE_CONSTANTS.setflags(write=False)

#: Orientation of the closed-form automorphism curves relative to the
#: adjoint flows: automorphism(i, a, e) == adjoint_exp(i, sign * a, e) with
#: sign = ADJOINT_SIGNS[i-1].  Resolved empirically against the closed-form
#: maps and frozen; it comes out -1 uniformly.
ADJOINT_SIGNS = (-1.0,) * DIM


@dataclass(frozen=True)
class AlgebraElement:
    """An element sum(c_i X_i), stored as the 8 coefficients."""

    c: tuple[float, ...]

    def __post_init__(self):
        if len(self.c) != DIM:
            raise ValueError(f"need {DIM} coefficients, got {len(self.c)}")
        object.__setattr__(self, "c", tuple(float(v) for v in self.c))

    @staticmethod
    def zero() -> "AlgebraElement":
        return AlgebraElement((0.0,) * DIM)

    @staticmethod
    def basis(i: int) -> "AlgebraElement":
        if not 1 <= i <= DIM:
            raise ValueError(f"basis index {i} out of range 1..{DIM}")
        c = [0.0] * DIM
        c[i - 1] = 1.0
        return AlgebraElement(tuple(c))

    @staticmethod
    def from_coeffs(vals: Iterable[float]) -> "AlgebraElement":
        return AlgebraElement(tuple(float(v) for v in vals))

    @staticmethod
    def from_string(text: str) -> "AlgebraElement":
        parts = text.split(",")
        if len(parts) != DIM:
            raise ValueError(f"expected {DIM} comma-separated numbers, got {len(parts)}")
        try:
            return AlgebraElement(tuple(float(p) for p in parts))
        except ValueError as exc:
            raise ValueError(f"bad coefficient list {text!r}: {exc}") from None

    def to_string(self) -> str:
        def fmt(v: float) -> str:
            if v == int(v) and abs(v) <= 1e15:
                return str(int(v))
            return repr(v)
        return ",".join(fmt(v) for v in self.c)

    def as_array(self) -> np.ndarray:
        return np.array(self.c, dtype=float)

    def norm(self) -> float:
        return max(abs(v) for v in self.c)

    def allclose(self, other: "AlgebraElement", tol: float = 1e-9) -> bool:
        return bool(np.allclose(self.as_array(), other.as_array(),
                                rtol=tol, atol=tol))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(tuple(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(tuple(a - b for a, b in zip(self.c, other.c)))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(tuple(-a for a in self.c))

    def __mul__(self, s: float) -> "AlgebraElement":
        return AlgebraElement(tuple(a * s for a in self.c))

    __rmul__ = __mul__


def bracket(e1: AlgebraElement, e2: AlgebraElement) -> AlgebraElement:
    """[e1, e2] via the structure constants (bilinear extension)."""
    out = np.einsum("i,j,ijk->k", e1.as_array(), e2.as_array(),
                    STRUCTURE_CONSTANTS)
    return AlgebraElement.from_coeffs(out)


# ---------------------------------------------------------------------------
# Automorphisms and involutions (closed form)
# ---------------------------------------------------------------------------

def automorphism(i: int, a: float, e: AlgebraElement) -> AlgebraElement:
    """The i-th one-parameter family of inner automorphisms, in closed form
    on coordinates.  Composition with the adjoint flows: see ADJOINT_SIGNS."""
    c1, c2, c3, c4, c5, c6, c7, c8 = e.c
    ea = None
    if i == 1:
        c1 = c1 - a * c2
    elif i == 2:
        ea = math.exp(a)
        c1 = ea * c1
    elif i == 3:
        c3 = c3 - a * c5
        c4 = c4 - a * c8
    elif i == 4:
        c3 = c3 - a * c7
        c4 = c4 - a * c6
    elif i == 5:
        ea = math.exp(a)
        c3 = ea * c3
        c7 = ea * c7
        c8 = c8 / ea
    elif i == 6:
        ea = math.exp(a)
        c4 = ea * c4
        c7 = c7 / ea
        c8 = ea * c8
    elif i == 7:
        c3, c5, c6, c7 = (c3 + a * c4,
                          c5 + a * c8,
                          c6 - a * c8,
                          c7 - a * a * c8 + a * c6 - a * c5)
    elif i == 8:
        c4, c5, c6, c8 = (c4 + a * c3,
                          c5 - a * c7,
                          c6 + a * c7,
                          c8 - a * a * c7 - a * c6 + a * c5)
    else:
        raise ValueError(f"automorphism index {i} out of range 1..8")
    return AlgebraElement((c1, c2, c3, c4, c5, c6, c7, c8))


def involution(k: int, e: AlgebraElement) -> AlgebraElement:
    """Discrete symmetries: k=1 flips the sign of z, k=2 of y, k=3 of x,
    k=4 swaps y and z."""
    c1, c2, c3, c4, c5, c6, c7, c8 = e.c
    if k == 1:
        return AlgebraElement((c1, c2, c3, -c4, c5, c6, -c7, -c8))
    if k == 2:
        return AlgebraElement((c1, c2, -c3, c4, c5, c6, -c7, -c8))
    if k == 3:
        return AlgebraElement((-c1, c2, c3, c4, c5, c6, c7, c8))
    if k == 4:
        return AlgebraElement((c1, c2, c4, c3, c6, c5, c8, c7))
    raise ValueError(f"involution index {k} out of range 1..4")


# ---------------------------------------------------------------------------
# Adjoint flows
# ---------------------------------------------------------------------------

def _ad_matrix(i: int) -> np.ndarray:
    # (M_i)_{kj} = coefficient of X_k in [X_i, X_j]
    return STRUCTURE_CONSTANTS[i - 1].T.copy()


_AD_MATRICES = [_ad_matrix(i) for i in range(1, DIM + 1)]


def _expm(M: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling-and-squaring over a Taylor series."""
    norm = float(np.max(np.sum(np.abs(M), axis=1)))
    s = 0
    while norm > 0.5:
        norm /= 2.0
        s += 1
    A = M / (2.0 ** s)
    out = np.eye(M.shape[0])
    term = np.eye(M.shape[0])
    for k in range(1, 30):
        term = term @ A / k
        out = out + term
        if float(np.max(np.abs(term))) < 1e-20:
            break
    for _ in range(s):
        out = out @ out
    return out


def adjoint_exp(i: int, t: float, e: AlgebraElement) -> AlgebraElement:
    """exp(t * ad_{X_i}) applied to e."""
    if not 1 <= i <= DIM:
        raise ValueError(f"basis index {i} out of range 1..{DIM}")
    out = _expm(t * _AD_MATRICES[i - 1]) @ e.as_array()
    return AlgebraElement.from_coeffs(out)


# ---------------------------------------------------------------------------
# Optimal-system representatives
# ---------------------------------------------------------------------------

#: A move is ("A", i, a) for automorphism(i, a, ·) or ("E", k) for
#: involution(k, ·); words apply left to right.
Move = tuple


@dataclass(frozen=True)
class OptimalRep:
    """Result of normalizing an element onto its class representative.

    ``apply_word(word, input)`` equals ``scale * canonical_vector(self)``
    up to floating error.  ``kernel_c1`` = 1 flags the conjugation-invariant
    d/dx summand of mixed elements in the full algebra (it rides along with
    the representative, scaled like everything else).
    """

    algebra: str
    family: int | str
    params: Mapping[str, float] = field(default_factory=dict)
    word: tuple = ()
    scale: float = 1.0
    kernel_c1: float = 0.0


def apply_word(word: Sequence[Move], e: AlgebraElement) -> AlgebraElement:
    for move in word:
        if move[0] == "A":
            e = automorphism(move[1], move[2], e)
        elif move[0] == "E":
            e = involution(move[1], e)
        else:
            raise ValueError(f"bad move {move!r}")
    return e


def canonical_vector(rep: OptimalRep) -> AlgebraElement:
    """The representative element (unit scale) described by ``rep``."""
    p = dict(rep.params)
    c = [0.0] * DIM

    def l6_fill(family: int):
        if family == 1:
            c[4] = 1.0
            c[5] = p["alpha"]
        elif family == 2:
            c[3] = 1.0
            c[4] = 1.0
        elif family == 3:
            c[6] = -1.0
            c[7] = 1.0
        elif family == 4:
            c[2] = p.get("beta", 0.0)
            c[4] = p["alpha"]
            c[5] = p["alpha"]
            c[6] = -1.0
            c[7] = 1.0
        elif family == 5:
            c[3] = p["beta"]
            c[6] = 1.0
        elif family == 6:
            c[4] = 1.0
            c[5] = 1.0
            c[6] = 1.0
        elif family == 7:
            c[2] = 1.0
        elif family == 8:
            pass
        else:
            raise ValueError(f"unknown family {family}")

    if rep.algebra == "L4":
        if rep.family == 1:
            c[4] = 1.0
            c[5] = p["alpha"]
        elif rep.family == 2:
            c[4] = p["alpha"]
            c[5] = p["alpha"]
            c[6] = -1.0
            c[7] = 1.0
        elif rep.family == 3:
            c[4] = p["beta"]
            c[5] = p["beta"]
            c[6] = 1.0
        elif rep.family == 4:
            pass
        else:
            raise ValueError(f"unknown L4 family {rep.family}")
    elif rep.algebra == "L6":
        l6_fill(rep.family)
    elif rep.algebra == "L8":
        if rep.family == "kernel":
            pass
        elif rep.family == 8:
            c[1] = 1.0
        elif rep.family == 0:
            pass
        else:
            c[1] = p.get("gamma", 0.0)
            l6_fill(rep.family)
        c[0] = rep.kernel_c1
    else:
        raise ValueError(f"unknown algebra {rep.algebra}")
    if rep.algebra == "L8" and rep.family == "kernel":
        c[0] = 1.0
    return AlgebraElement(tuple(c))


def rep_violations(rep: OptimalRep) -> list[str]:
    """Check the representative's parameters against the published ranges."""
    out = []
    p = dict(rep.params)

    def l6_check(family):
        if family == 1 and not -1.0 <= p.get("alpha", 0.0) <= 1.0:
            out.append("family 1 needs alpha in [-1, 1]")
        if family == 4:
            if not p.get("alpha", 0.0) > 0.0:
                out.append("family 4 needs alpha > 0")
            if p.get("beta", 0.0) not in (-1.0, 0.0, 1.0):
                out.append("family 4 needs beta in {-1, 0, 1}")
        if family == 5 and p.get("beta") not in (0.0, 1.0):
            out.append("family 5 needs beta in {0, 1}")

    if rep.algebra == "L4":
        if rep.family == 1 and not -1.0 <= p.get("alpha", 0.0) <= 1.0:
            out.append("family 1 needs alpha in [-1, 1]")
        if rep.family == 2 and not p.get("alpha", 0.0) >= 0.0:
            out.append("family 2 needs alpha >= 0")
        if rep.family == 3 and p.get("beta") not in (0.0, 1.0):
            out.append("family 3 needs beta in {0, 1}")
        if rep.family not in (1, 2, 3, 4):
            out.append(f"unknown family {rep.family}")
    elif rep.algebra == "L6":
        if rep.family not in range(1, 9):
            out.append(f"unknown family {rep.family}")
        else:
            l6_check(rep.family)
    elif rep.algebra == "L8":
        if rep.family == "kernel" or rep.family in (0, 8):
            pass
        elif rep.family in range(1, 8):
            l6_check(rep.family)
        else:
            out.append(f"unknown family {rep.family}")
        if rep.kernel_c1 not in (0.0, 1.0):
            out.append("kernel_c1 must be 0 or 1")
    else:
        out.append(f"unknown algebra {rep.algebra}")
    return out


# ---------------------------------------------------------------------------
# Normalizers
# ---------------------------------------------------------------------------

def _scaling_matrix(e: AlgebraElement) -> Mat2:
    c = e.c
    return Mat2(c[4], c[6], c[7], c[5])


class _Reducer:
    """Accumulates a word while keeping the current element in sync, so the
    replay identity holds by construction."""

    def __init__(self, e: AlgebraElement):
        self.cur = e
        self.word: list[Move] = []

    def A(self, i: int, a: float):
        if a != 0.0:
            self.word.append(("A", i, float(a)))
            self.cur = automorphism(i, a, self.cur)

    def E(self, k: int):
        self.word.append(("E", k))
        self.cur = involution(k, self.cur)

    def c(self, i: int) -> float:
        return self.cur.c[i - 1]


def _smaller_root(a: float, b: float, c: float) -> float:
    """The smaller-magnitude real root of a x^2 + b x + c = 0 (a may be 0),
    via the cancellation-safe split."""
    if a == 0.0:
        return -c / b
    disc = b * b - 4.0 * a * c
    disc = max(disc, 0.0)
    r = math.sqrt(disc)
    q = -0.5 * (b + math.copysign(r, b))
    # Roots are q/a and c/q; q has the larger magnitude numerator.
    if q == 0.0:
        return 0.0
    r1 = q / a
    r2 = c / q
    return r2 if abs(r2) <= abs(r1) else r1


def _reduce_scaling_part(red: _Reducer, tol: float) -> tuple:
    """Bring the X5..X8 block of red.cur to its representative shape.

    Returns (family, params, scale) in L4 numbering; moves are appended to
    the reducer (and act on the translation slots too, which is exactly what
    the larger normalizers need).
    """
    M = _scaling_matrix(red.cur)
    normM = float(np.max(np.abs(M.to_array())))
    if normM <= tol:
        return (4, {}, 1.0)
    kind = classify2x2(M).kind

    if kind == "J1":
        # Shear away c8 (smaller root keeps the word tame), then c7, then
        # order the diagonal by magnitude.  A couple of cleanup sweeps
        # re-kill the rounding residue of one shear before the next one can
        # amplify it, which matters when the eigenvalue gap is small.
        tiny = 1e-15 * (1.0 + normM)
        for _ in range(3):
            c5, c6, c7, c8 = red.c(5), red.c(6), red.c(7), red.c(8)
            if c8 != 0.0:
                red.A(8, _smaller_root(c7, -(c5 - c6), -c8))
            c5, c6, c7 = red.c(5), red.c(6), red.c(7)
            if c7 != 0.0 and c5 != c6:
                red.A(7, c7 / (c5 - c6))
            if abs(red.c(7)) <= tiny and abs(red.c(8)) <= tiny:
                break
        if abs(red.c(5)) < abs(red.c(6)):
            red.E(4)
        scale = red.c(5)
        alpha = red.c(6) / scale
        return (1, {"alpha": alpha}, scale)

    if kind == "J2":
        c5, c6, c8 = red.c(5), red.c(6), red.c(8)
        if c5 != c6:
            red.A(7, (c6 - c5) / (2.0 * c8))
        p, q = red.c(7), red.c(8)
        t = 0.5 * math.log(abs(q / p))
        red.A(5, t)
        scale = -red.c(7)
        alpha = (red.c(5) + red.c(6)) / (2.0 * scale)
        if alpha < 0.0:
            if abs(alpha) > 1e-13:
                red.E(1)
                scale = -scale
                alpha = -alpha
            else:
                alpha = abs(alpha)
        return (2, {"alpha": alpha}, scale)

    # J3: triangularize with equal diagonal, then match the off-diagonal
    # entry to the eigenvalue (or leave it as the pure shear when the
    # eigenvalue is zero).
    c5, c6, c7, c8 = red.c(5), red.c(6), red.c(7), red.c(8)
    if c8 != 0.0:
        if c7 != 0.0:
            red.A(8, (c5 - c6) / (2.0 * c7))
        else:
            red.E(4)
    m = 0.5 * (red.c(5) + red.c(6))
    tshear = red.c(7)
    if abs(m) <= tol:
        return (3, {"beta": 0.0}, tshear)
    if m / tshear < 0.0:
        red.E(1)
        tshear = -tshear
    red.A(5, math.log(m / tshear))
    scale = m
    return (3, {"beta": 1.0}, scale)


def _kill_translations(red: _Reducer):
    """Solve M (a3, a4) = (c3, c4) and shear the translation slots away;
    assumes the current M is invertible.  One step of iterative refinement
    keeps the residual at rounding level even for unlucky conditioning."""
    M = _scaling_matrix(red.cur).to_array()
    t = np.array([red.c(3), red.c(4)])
    a = np.linalg.solve(M, t)
    a = a + np.linalg.solve(M, t - M @ a)
    red.A(3, float(a[0]))
    red.A(4, float(a[1]))


def _check_support(e: AlgebraElement, zero_idx: Iterable[int], what: str, tol: float):
    bad = [i for i in zero_idx if abs(e.c[i - 1]) > tol]
    if bad:
        raise ValueError(
            f"{what} expects zero coefficients at {sorted(bad)} "
            f"(support restricted to the subalgebra)")


def normalize_L4(e: AlgebraElement, tol: float = 1e-12) -> OptimalRep:
    """Representative of span(e) inside the scaling subalgebra X5..X8.

    Families: 1 diagonal (X5 + alpha X6, -1 <= alpha <= 1), 2 rotation-like
    (alpha(X5+X6) + X8 - X7, alpha >= 0), 3 shear (beta(X5+X6) + X7, beta in
    {0,1}), 4 zero.
    """
    atol = tol * (1.0 + e.norm())
    _check_support(e, (1, 2, 3, 4), "normalize_L4", atol)
    red = _Reducer(e)
    family, params, scale = _reduce_scaling_part(red, atol)
    return OptimalRep(algebra="L4", family=family, params=params,
                      word=tuple(red.word), scale=scale)


def _l6_families(red: _Reducer, atol: float) -> tuple:
    """Shared by the L6/L8 normalizers: reduce scalings, then translations.
    Returns (family, params, scale) in L6 numbering."""
    fam4, params, scale = _reduce_scaling_part(red, atol)

    if fam4 == 4:
        # Pure translations.
        if abs(red.c(3)) <= atol and abs(red.c(4)) <= atol:
            return (8, {}, 1.0)
        if abs(red.c(3)) > atol:
            if red.c(4) != 0.0:
                red.A(8, -red.c(4) / red.c(3))
        else:
            red.E(4)
        return (7, {}, red.c(3))

    if fam4 == 1:
        alpha = params["alpha"]
        if abs(alpha) > 1e-13:
            _kill_translations(red)
            return (1, params, scale)
        # alpha == 0: the z-scaling slot is empty, so only c3 can be killed
        # by shears; a leftover c4 rescales onto X4 + X5.
        if red.c(3) != 0.0:
            red.A(3, red.c(3) / red.c(5))
        c4 = red.c(4)
        if abs(c4) <= atol:
            return (1, {"alpha": 0.0}, scale)
        if c4 / scale < 0.0:
            red.E(1)
            c4 = -c4
        red.A(6, math.log(scale / c4))
        return (2, {}, scale)

    if fam4 == 2:
        _kill_translations(red)
        alpha = params["alpha"]
        if alpha <= 1e-13:
            return (3, {}, scale)
        return (4, {"alpha": alpha, "beta": 0.0}, scale)

    # fam4 == 3
    if params["beta"] == 1.0:
        _kill_translations(red)
        return (6, {}, scale)
    # beta == 0: M is the pure shear; c3 dies through c7, c4 is stuck.
    if red.c(3) != 0.0:
        red.A(4, red.c(3) / red.c(7))
    c4 = red.c(4)
    if abs(c4) <= atol:
        return (5, {"beta": 0.0}, scale)
    if red.c(7) / c4 < 0.0:
        red.E(2)
    t = 0.5 * math.log(red.c(7) / red.c(4))
    red.A(6, t)
    return (5, {"beta": 1.0}, red.c(4))


def normalize_L6(e: AlgebraElement, tol: float = 1e-12) -> OptimalRep:
    """Representative of span(e) inside the scalings-plus-translations
    subalgebra X3..X8.

    Families: 1 X5 + alpha X6; 2 X4 + X5; 3 X8 - X7; 4 beta X3 +
    alpha(X5+X6) + X8 - X7 (alpha > 0); 5 beta X4 + X7; 6 X5 + X6 + X7;
    7 X3; 8 zero.  The translation shears can always reach beta = 0 in
    family 4, so that is what comes out.
    """
    atol = tol * (1.0 + e.norm())
    _check_support(e, (1, 2), "normalize_L6", atol)
    red = _Reducer(e)
    family, params, scale = _l6_families(red, atol)
    return OptimalRep(algebra="L6", family=family, params=params,
                      word=tuple(red.word), scale=scale)


def normalize_L8(e: AlgebraElement, tol: float = 1e-12) -> OptimalRep:
    """Representative of span(e) in the full coefficient space.

    With c2 != 0 the c1 slot is removable and the rest reduces as in the
    six-dimensional case, decorated by gamma = c2 / scale on x d/dx
    (families 1..7), or is x d/dx itself (family 8).  With c2 = 0 the c1
    slot is conjugation-invariant: a pure d/dx element reports the family
    "kernel", a mixed element keeps its reduced representative plus the
    flag kernel_c1 = 1.  The zero element reports family 0.
    """
    atol = tol * (1.0 + e.norm())
    red = _Reducer(e)
    c1, c2 = red.c(1), red.c(2)

    if abs(c2) > atol:
        if c1 != 0.0:
            red.A(1, c1 / c2)
        family, params, scale = _l6_families(red, atol)
        if family == 8:
            # Nothing outside the x-direction: the element is c2 * X2.
            return OptimalRep(algebra="L8", family=8, params={},
                              word=tuple(red.word), scale=c2)
        params = dict(params)
        params["gamma"] = c2 / scale
        return OptimalRep(algebra="L8", family=family, params=params,
                          word=tuple(red.word), scale=scale)

    rest = any(abs(v) > atol for v in e.c[2:])
    if abs(c1) <= atol:
        if not rest:
            return OptimalRep(algebra="L8", family=0, params={}, word=(), scale=1.0)
        family, params, scale = _l6_families(red, atol)
        if family == 8:
            return OptimalRep(algebra="L8", family=0, params={},
                              word=tuple(red.word), scale=1.0)
        params = dict(params)
        params["gamma"] = 0.0
        return OptimalRep(algebra="L8", family=family, params=params,
                          word=tuple(red.word), scale=scale)

    if not rest:
        if c1 < 0.0:
            red.E(3)
        return OptimalRep(algebra="L8", family="kernel", params={},
                          word=tuple(red.word), scale=abs(c1))

    # Mixed: reduce the removable part, then scale the stuck c1 onto the
    # representative's overall scale.
    family, params, scale = _l6_families(red, atol)
    if red.c(1) / scale < 0.0:
        red.E(3)
    red.A(2, math.log(scale / red.c(1)))
    params = dict(params)
    params["gamma"] = 0.0
    return OptimalRep(algebra="L8", family=family, params=params,
                      word=tuple(red.word), scale=scale, kernel_c1=1.0)
