"""Real Jordan classification of 2x2 matrices, with explicit conjugators.

Every real 2x2 matrix is similar over the reals to exactly one of three
shapes: diagonal, rotation-like (complex eigenvalue pair), or a single
defective block.  The classifier returns the shape, its parameters, and the
change-of-basis matrix P with

    P A P^{-1} = scale * J

where J is the *exact* template shape and ``scale`` absorbs the one degree
of freedom the templates cannot: a complex pair m ± i b is similar to the
rotation-like template only after pulling out the factor b (so the template
parameter is m/b and scale = b).  For the other two shapes scale is 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .odesys import Mat2

__all__ = ["Jordan2Result", "classify2x2", "kind_to_L4_rep"]


@dataclass(frozen=True)
class Jordan2Result:
    """Shape kind ("J1" diagonal, "J2" rotation-like, "J3" defective block),
    template parameters, conjugator P, and the scale with
    P A P^{-1} = scale * J."""

    kind: str
    params: Mapping[str, float]
    P: Mat2
    scale: float
    J: Mat2

    def reconstruction_error(self, A: Mat2) -> float:
        """max-norm of P A P^{-1} - scale * J (diagnostic)."""
        got = (self.P @ A @ self.P.inv()).to_array()
        want = self.scale * self.J.to_array()
        return float(np.max(np.abs(got - want)))


def _unit(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    # Deterministic sign: the largest-magnitude component is positive.
    i = int(np.argmax(np.abs(v)))
    if v[i] < 0:
        v = -v
    return v


def _eigvec(a: np.ndarray, lam: float) -> np.ndarray:
    """A kernel vector of (A - lam I), choosing the better-conditioned of the
    two closed-form candidates."""
    c1 = np.array([a[0, 1], lam - a[0, 0]])
    c2 = np.array([lam - a[1, 1], a[1, 0]])
    v = c1 if np.linalg.norm(c1) >= np.linalg.norm(c2) else c2
    return _unit(v)


def classify2x2(A: Mat2, tol_defect: float | None = None) -> Jordan2Result:
    """Classify ``A`` into its real 2x2 normal form.

    ``tol_defect`` is the eigenvalue-gap tolerance: a gap at or below
    2*tol_defect is treated as a repeated eigenvalue, and within that branch
    an off-diagonal remainder above the tolerance makes the matrix
    defective.  Defaults to 1e-6 * (1 + max|entry|): eigenvalues of a
    defective matrix move like the square root of a perturbation, so data
    that went through a few arithmetic steps needs a gap tolerance near
    sqrt(machine epsilon), not near machine epsilon.

    Deterministic conventions: an exactly diagonal input keeps its entry
    order with P = I; otherwise the diagonal shape lists the larger
    eigenvalue first.  Inputs already in a template shape get P = I.
    """
    a = A.to_array()
    norm = float(np.max(np.abs(a)))
    if tol_defect is None:
        tol_defect = 1e-6 * (1.0 + norm)
    tr = A.trace
    det = A.det
    disc = tr * tr - 4.0 * det
    m = tr / 2.0

    if abs(disc) <= (2.0 * tol_defect) ** 2:
        # Repeated eigenvalue m.  Scalar matrix -> diagonal; else defective.
        n = a - m * np.eye(2)
        if np.max(np.abs(n)) <= tol_defect:
            return Jordan2Result("J1", {"a11": m, "a22": m}, Mat2.identity(),
                                 1.0, Mat2.diag(m, m))
        # Basis (N w, w) with the better of the two coordinate vectors for w;
        # N^2 = (disc/4) I ~ 0, so A(Nw) = m(Nw) up to the tolerance.
        cols = [n @ np.array([1.0, 0.0]), n @ np.array([0.0, 1.0])]
        w_i = 0 if np.linalg.norm(cols[0]) >= np.linalg.norm(cols[1]) else 1
        w = np.eye(2)[w_i]
        v = cols[w_i]
        S = np.column_stack([v, w])
        P = Mat2.from_array(np.linalg.inv(S))
        return Jordan2Result("J3", {"a11": m}, P, 1.0,
                             Mat2(m, 1.0, 0.0, m))

    if disc < 0.0:
        # Complex pair m ± i b.
        b = math.sqrt(-disc) / 2.0
        n = a - m * np.eye(2)
        vr = np.array([1.0, 0.0])
        vi = -(n @ vr) / b
        S = np.column_stack([vr, vi])
        P = Mat2.from_array(np.linalg.inv(S))
        a11 = m / b
        return Jordan2Result("J2", {"a11": a11}, P, b,
                             Mat2(a11, 1.0, -1.0, a11))

    # Distinct real eigenvalues.
    if A.a12 == 0.0 and A.a21 == 0.0:
        return Jordan2Result("J1", {"a11": A.a11, "a22": A.a22},
                             Mat2.identity(), 1.0, Mat2.diag(A.a11, A.a22))
    r = math.sqrt(disc)
    lam1 = (tr + r) / 2.0
    lam2 = (tr - r) / 2.0
    v1 = _eigvec(a, lam1)
    v2 = _eigvec(a, lam2)
    S = np.column_stack([v1, v2])
    P = Mat2.from_array(np.linalg.inv(S))
    return Jordan2Result("J1", {"a11": lam1, "a22": lam2}, P, 1.0,
                         Mat2.diag(lam1, lam2))


def kind_to_L4_rep(r: Jordan2Result, tol: float = 1e-12):
    """Map a classified shape to its scaling-subalgebra representative.

    The four families: diagonal with eigenvalue ratio alpha in [-1, 1];
    rotation-like with alpha >= 0; defective with beta in {0, 1}; and the
    zero matrix.  The returned representative carries the overall scale; the
    sign/swap bookkeeping needed to *reach* it is the normalizer's job (the
    word here is empty).
    """
    from .liealg import OptimalRep  # deferred: liealg depends on this module

    if r.kind == "J1":
        l1, l2 = r.params["a11"], r.params["a22"]
        big, small = (l1, l2) if abs(l1) >= abs(l2) else (l2, l1)
        if abs(big) <= tol:
            return OptimalRep(algebra="L4", family=4, params={}, word=(), scale=1.0)
        return OptimalRep(algebra="L4", family=1,
                          params={"alpha": small / big}, word=(), scale=big)
    if r.kind == "J2":
        return OptimalRep(algebra="L4", family=2,
                          params={"alpha": abs(r.params["a11"])}, word=(),
                          scale=r.scale)
    m = r.params["a11"]
    if abs(m) <= tol * (1.0 + abs(m)):
        return OptimalRep(algebra="L4", family=3, params={"beta": 0.0},
                          word=(), scale=1.0)
    return OptimalRep(algebra="L4", family=3, params={"beta": 1.0},
                      word=(), scale=m)
