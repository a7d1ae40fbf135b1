"""Canonical forms of nonzero 2x2 matrices under congruence with scaling.

Every nonzero 2x2 matrix M over an algebraically closed field of
characteristic zero is equivalent, under M -> alpha * P^T M P with P
invertible and alpha nonzero, to exactly one of

    X2      [[1, 0], [0, 0]]
    YX      [[0, 0], [1, 0]]
    JORDAN  [[0, -1], [1, 1]]
    Q(q)    [[0, -1], [q, 0]]   q nonzero, Q(q) and Q(1/q) identified

The decision uses the split M = A + S into antisymmetric and symmetric
parts: both symmetry types are preserved by congruence, and when A is
nonzero the ratio kappa = det(S) / pf(A)^2 is a full invariant of the
scaled congruence class.  canon2 returns the label together with an
explicit change of basis and scale, verified before returning.

Block constructors for the classical congruence canonical forms in any
dimension (Jordan, staircase, and paired types) are provided as literal
matrix builders; no canonicalization is attempted above dimension two.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .matrix import DegreeError, Mat2
from .scalar import Scalar, as_scalar, sqrt_extend

HALF = Fraction(1, 2)


@dataclass(frozen=True, eq=False)
class Canon2Label:
    """Congruence class of a nonzero 2x2 matrix, with parameter for Q."""

    tag: str  # one of X2, YX, JORDAN, Q
    q: Optional[Scalar] = None

    def __post_init__(self):
        if self.tag not in ("X2", "YX", "JORDAN", "Q"):
            raise ValueError(f"unknown tag {self.tag!r}")
        if (self.tag == "Q") != (self.q is not None):
            raise ValueError("parameter q is present exactly for tag Q")
        if self.q is not None:
            object.__setattr__(self, "q", as_scalar(self.q))
            if self.q.is_zero():
                raise ValueError("q must be nonzero")

    def matrix(self) -> Mat2:
        return canonical_mat2(self)

    def __eq__(self, other):
        if not isinstance(other, Canon2Label):
            return NotImplemented
        if self.tag != other.tag:
            return False
        if self.tag != "Q":
            return True
        return self.q == other.q

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def __str__(self):
        if self.tag == "Q":
            return f"Q({self.q})"
        return self.tag


def canonical_mat2(label: Canon2Label) -> Mat2:
    if label.tag == "X2":
        return Mat2(1, 0, 0, 0)
    if label.tag == "YX":
        return Mat2(0, 0, 1, 0)
    if label.tag == "JORDAN":
        return Mat2(0, -1, 1, 1)
    return Mat2(0, -1, label.q, 0)


def kappa(m: Mat2) -> Scalar:
    """det(symmetric part) / pfaffian^2; needs a nonzero antisymmetric part."""
    p = m.pfaffian()
    if p.is_zero():
        raise DegreeError("kappa needs a nonzero antisymmetric part")
    return m.symmetric_part().det() / (p * p)


def _canonical_q_from_kappa(k: Scalar) -> Tuple[Scalar, Scalar]:
    """(q, sigma) with q the chosen root of (k+1)t^2 + 2(k-1)t + (k+1) = 0.

    sigma is the canonical square root of -k, and q = (1+sigma)/(1-sigma).
    This picks the root with |q| >= 1, breaking the |q| = 1 tie towards
    nonnegative imaginary part: |1+s|^2 - |1-s|^2 = 4 Re(s) >= 0 for the
    canonical branch, with equality only when s is positive imaginary.
    """
    sigma = sqrt_extend(-k)
    q = (1 + sigma) / (1 - sigma)
    return q, sigma


def _rank1_symmetric_factor(s: Mat2) -> Tuple[Scalar, Tuple[Scalar, Scalar]]:
    """Write a nonzero singular symmetric s as lam * v v^T."""
    if not s.a.is_zero():
        return s.a, (Scalar.one(), s.b / s.a)
    if not s.d.is_zero():
        return s.d, (s.b / s.d, Scalar.one())
    # a = d = 0 and singular symmetric forces b = 0, i.e. s = 0
    raise DegreeError("matrix is zero")


def _isotropic_pair(s: Mat2, tau: Scalar):
    """Independent isotropic vectors of an invertible symmetric s.

    tau is a fixed square root of -det(s); using it keeps the whole witness
    inside one field extension.  Returns (u, v, w) with w = u^T s v.
    """
    a, b = s.a, s.b
    if not a.is_zero():
        u = ((-b + tau) / a, Scalar.one())
        v = ((-b - tau) / a, Scalar.one())
    else:
        # det s = -b^2 nonzero, so b is nonzero
        u = (Scalar.one(), Scalar.zero())
        v = (-s.d / (2 * b), Scalar.one())
    w = (
        u[0] * (s.a * v[0] + s.b * v[1])
        + u[1] * (s.c * v[0] + s.d * v[1])
    )
    return u, v, w


def _columns(u, v) -> Mat2:
    return Mat2(u[0], v[0], u[1], v[1])


def _verify(m: Mat2, label: Canon2Label, p: Mat2, alpha: Scalar) -> None:
    got = (p.transpose() * m * p) * alpha
    if got != canonical_mat2(label):
        raise AssertionError(
            f"witness check failed: alpha P^T M P = {got!r} != {label}"
        )
    if p.det().is_zero():
        raise AssertionError("witness linear part is singular")


def literal_label(m: Mat2) -> Optional[Canon2Label]:
    """Label if m is literally one of the canonical matrices."""
    if m == Mat2(1, 0, 0, 0):
        return Canon2Label("X2")
    if m == Mat2(0, 0, 1, 0):
        return Canon2Label("YX")
    if m == Mat2(0, -1, 1, 1):
        return Canon2Label("JORDAN")
    if m.a.is_zero() and m.d.is_zero() and (m.b + 1).is_zero():
        q = m.c
        if q.is_zero():
            return None
        if q == 1 or q == -1:
            return Canon2Label("Q", q)
        k = kappa(m)
        if not (k + 1).is_zero():
            canonical_q, _ = _canonical_q_from_kappa(k)
            if q == canonical_q:
                return Canon2Label("Q", q)
    return None


def canon2(m: Mat2) -> Tuple[Canon2Label, Mat2, Scalar]:
    """Label a nonzero 2x2 matrix and witness it: alpha * P^T m P = label matrix."""
    if m.is_zero():
        raise DegreeError("cannot canonicalize the zero matrix")

    lit = literal_label(m)
    if lit is not None:
        return lit, Mat2.identity(), Scalar.one()

    s = m.symmetric_part()
    p = m.pfaffian()

    if p.is_zero():
        dets = s.det()
        if dets.is_zero():
            label = Canon2Label("X2")
            if not s.a.is_zero():
                pw = Mat2(1, -s.b / s.a, 0, 1)
                alpha = s.a.inverse()
            else:
                pw = Mat2(0, 1, 1, 0)
                alpha = s.d.inverse()
            _verify(m, label, pw, alpha)
            return label, pw, alpha
        label = Canon2Label("Q", as_scalar(-1))
        tau = sqrt_extend(-dets)
        u, v, w = _isotropic_pair(s, tau)
        pw = _columns(u, v)
        alpha = -w.inverse()
        _verify(m, label, pw, alpha)
        return label, pw, alpha

    if s.is_zero():
        label = Canon2Label("Q", Scalar.one())
        pw = Mat2.identity()
        alpha = p.inverse()
        _verify(m, label, pw, alpha)
        return label, pw, alpha

    k = s.det() / (p * p)

    if k.is_zero():
        # symmetric part has rank one: the Jordan-type class
        label = Canon2Label("JORDAN")
        lam, v = _rank1_symmetric_factor(s)
        t = -p / lam
        c1 = (-v[1], v[0])
        if not v[0].is_zero():
            c2 = (t / v[0], Scalar.zero())
        else:
            c2 = (Scalar.zero(), t / v[1])
        pw = _columns(c1, c2)
        alpha = lam / (p * p)
        _verify(m, label, pw, alpha)
        return label, pw, alpha

    if (k + 1).is_zero():
        # det m = det s + p^2 = 0: rank one, but not symmetric
        label = Canon2Label("YX")
        if not (m.a.is_zero() and m.b.is_zero()):
            wvec = (m.a, m.b)
            uvec = (
                Scalar.one(),
                (m.c / m.a) if not m.a.is_zero() else (m.d / m.b),
            )
        else:
            wvec = (m.c, m.d)
            uvec = (Scalar.zero(), Scalar.one())
        c1 = (-uvec[1], uvec[0])
        c2 = (-wvec[1], wvec[0])
        delta = c2[0] * uvec[0] + c2[1] * uvec[1]
        pw = _columns(c1, c2)
        alpha = -(delta * delta).inverse()
        _verify(m, label, pw, alpha)
        return label, pw, alpha

    q, sigma = _canonical_q_from_kappa(k)
    label = Canon2Label("Q", q)
    tau = sigma * p  # a square root of -det(s), coherent with sigma
    u, v, w = _isotropic_pair(s, tau)
    d = u[0] * v[1] - u[1] * v[0]
    if d * p / w != sigma.inverse():
        u, v = v, u
        d, w = -d, w
    pw = _columns(u, v)
    alpha = (q - 1) / (2 * w)
    _verify(m, label, pw, alpha)
    return label, pw, alpha


def stab_membership(label: Canon2Label, p: Mat2) -> bool:
    """Whether P^T L P = L exactly for the label's literal matrix L."""
    if p.det().is_zero():
        raise ValueError("stabilizer members must be invertible")
    lmat = canonical_mat2(label)
    return p.transpose() * lmat * p == lmat


# --- block constructors for the classical congruence forms ----------------

MatrixRows = Tuple[Tuple[Scalar, ...], ...]


@dataclass(frozen=True)
class HSBlock:
    kind: str  # J, Gamma, or H
    size: int
    parameter: Optional[Scalar]
    rows: MatrixRows


def _jordan_rows(lam: Scalar, n: int) -> MatrixRows:
    return tuple(
        tuple(
            lam if i == j else Scalar.one() if j == i + 1 else Scalar.zero()
            for j in range(n)
        )
        for i in range(n)
    )


def hs_block(kind: str, size: int, parameter=None) -> HSBlock:
    """Literal canonical block: J(lambda, n), Gamma(n), or H(mu, 2n).

    Gamma(n) has entries g[i][n+1-i] = g[i][n+2-i] = (-1)^(n-i) in 1-based
    indexing (out-of-range slots dropped); H(mu, 2n) is [[0, I], [J(mu), 0]]
    and needs mu nonzero and different from (-1)^(n+1).
    """
    if size < 1:
        raise ValueError("block size must be at least 1")
    if kind == "J":
        lam = as_scalar(0 if parameter is None else parameter)
        return HSBlock("J", size, lam, _jordan_rows(lam, size))
    if kind == "Gamma":
        if parameter is not None:
            raise ValueError("Gamma blocks take no parameter")
        n = size
        rows = [[Scalar.zero()] * n for _ in range(n)]
        for i in range(1, n + 1):
            sign = as_scalar((-1) ** (n - i))
            for j in (n + 1 - i, n + 2 - i):
                if 1 <= j <= n:
                    rows[i - 1][j - 1] = sign
        return HSBlock("Gamma", n, None, tuple(tuple(r) for r in rows))
    if kind == "H":
        if size % 2 != 0:
            raise ValueError("H blocks have even size")
        n = size // 2
        if parameter is None:
            raise ValueError("H blocks need the parameter mu")
        mu = as_scalar(parameter)
        if mu.is_zero() or mu == (-1) ** (n + 1):
            raise ValueError("invalid H-block parameter")
        jr = _jordan_rows(mu, n)
        rows = []
        for i in range(n):
            rows.append(
                tuple(Scalar.zero() for _ in range(n))
                + tuple(
                    Scalar.one() if j == i else Scalar.zero() for j in range(n)
                )
            )
        for i in range(n):
            rows.append(jr[i] + tuple(Scalar.zero() for _ in range(n)))
        return HSBlock("H", size, mu, tuple(rows))
    raise ValueError(f"unknown block kind {kind!r}")
