"""Nilpotent Lie algebras in exponential coordinates.

A connected simply connected nilpotent group is identified with its Lie
algebra through the exponential chart, so a group point is stored as the
coordinate vector of its logarithm and the group law is the (polynomial)
Baker-Campbell-Hausdorff product

    X * Y = X + Y + [X,Y]/2 + ([X,[X,Y]] + [Y,[Y,X]])/12 + ...

which terminates at the nilpotency step.  The BCH coefficients are generated
once, with exact rational arithmetic, from Dynkin's expansion of
log(exp X exp Y) and cached per truncation depth; depth 6 is the supported
maximum.  Haar measure is Lebesgue measure in these coordinates with
normalization constant 1.

All operations broadcast over leading axes: a "vector" is any ndarray whose
last axis has length ``dim``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

MAX_BCH_DEPTH = 6


class AlgebraError(ValueError):
    """Invalid structure data or unsupported operation for an algebra."""


# ---------------------------------------------------------------------------
# BCH series from Dynkin's expansion
# ---------------------------------------------------------------------------

def _dynkin_blocks(total, k):
    """All k-tuples of (p_i, q_i) with p_i+q_i >= 1 summing to `total`."""
    if k == 0:
        if total == 0:
            yield ()
        return
    for m in range(1, total - k + 2):
        for p in range(m + 1):
            head = (p, m - p)
            for rest in _dynkin_blocks(total - m, k - 1):
                yield (head,) + rest


@lru_cache(maxsize=None)
def bch_terms(max_depth: int = MAX_BCH_DEPTH) -> tuple[tuple[float, tuple[int, ...]], ...]:
    """BCH series as (coefficient, word) pairs up to the given bracket depth.

    Words are tuples over {0, 1} (0 stands for X, 1 for Y) to be read as
    right-nested brackets [w0,[w1,[...,[w_{m-2},w_{m-1}]...]]]; a length-1
    word is the letter itself.  Coefficients come from

        log(e^X e^Y) = sum_k (-1)^(k-1)/k  sum  [X^p1 Y^q1 ... X^pk Y^qk]
                                               / ((sum_i p_i+q_i) prod_i p_i! q_i!)

    accumulated exactly with Fractions; words whose two final letters agree
    are dropped (their bracket vanishes identically).
    """
    if max_depth > MAX_BCH_DEPTH:
        raise AlgebraError(f"BCH series is shipped through depth {MAX_BCH_DEPTH}")
    acc: dict[tuple[int, ...], Fraction] = {}
    for degree in range(1, max_depth + 1):
        for k in range(1, degree + 1):
            outer = Fraction((-1) ** (k - 1), k)
            for blocks in _dynkin_blocks(degree, k):
                denom = degree
                word: tuple[int, ...] = ()
                for p, q in blocks:
                    denom *= math.factorial(p) * math.factorial(q)
                    word += (0,) * p + (1,) * q
                if len(word) >= 2 and word[-1] == word[-2]:
                    continue
                acc[word] = acc.get(word, Fraction(0)) + outer / denom
    return tuple((float(v), w) for w, v in sorted(acc.items(), key=lambda t: (len(t[0]), t[0]))
                 if v != 0)


# ---------------------------------------------------------------------------
# The algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LieAlgebra:
    """Finite-dimensional real nilpotent Lie algebra.

    Attributes
    ----------
    dim : dimension n.
    c : (n, n, n) array of structure constants, [e_i, e_j] = sum_k c[i,j,k] e_k.
    step : nilpotency step (depth at which the lower central series dies).
    name : optional preset label.
    """

    dim: int
    c: np.ndarray = field(repr=False)
    step: int
    name: str = ""

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float)
        if c.shape != (self.dim, self.dim, self.dim):
            raise AlgebraError(f"structure constants must have shape {(self.dim,) * 3}")
        object.__setattr__(self, "c", c)
        c.setflags(write=False)

    def __hash__(self):
        return hash((self.dim, self.step, self.name, self.c.tobytes()))

    def __eq__(self, other):
        return (isinstance(other, LieAlgebra) and self.dim == other.dim
                and self.step == other.step and np.array_equal(self.c, other.c))

    # -- bracket and adjoint ------------------------------------------------

    def check_dim(self, *vecs):
        for v in vecs:
            if np.shape(v)[-1] != self.dim:
                raise AlgebraError(f"vector has dimension {np.shape(v)[-1]}, expected {self.dim}")

    def bracket(self, X, Y) -> np.ndarray:
        """[X, Y], broadcasting over leading axes."""
        self.check_dim(X, Y)
        X, Y = np.broadcast_arrays(np.asarray(X, float), np.asarray(Y, float))
        return np.einsum("...i,...j,ijk->...k", X, Y, self.c)

    def ad(self, X) -> np.ndarray:
        """Matrix of ad_X(Z) = [X, Z]; nilpotent of index <= step."""
        self.check_dim(X)
        return np.einsum("i,ijk->kj", np.asarray(X, float), self.c)

    # -- group structure in the chart ----------------------------------------

    def bch(self, X, Y) -> np.ndarray:
        """BCH product X * Y = log(exp X exp Y); exact for step <= 6."""
        if self.step > MAX_BCH_DEPTH:
            raise AlgebraError(
                f"nilpotency step {self.step} exceeds the supported BCH depth {MAX_BCH_DEPTH}")
        self.check_dim(X, Y)
        X, Y = np.broadcast_arrays(np.asarray(X, float), np.asarray(Y, float))
        letters = (X, Y)
        out = np.zeros(np.broadcast_shapes(X.shape, Y.shape))
        for coeff, word in bch_terms(MAX_BCH_DEPTH):
            if len(word) > self.step:
                continue
            v = letters[word[-1]]
            for letter in word[-2::-1]:
                v = self.bracket(letters[letter], v)
            out = out + coeff * v
        return out

    def mul(self, x, y) -> np.ndarray:
        """Group product in exponential coordinates (alias of bch)."""
        return self.bch(x, y)

    def inv(self, x) -> np.ndarray:
        """Group inverse; in the chart this is coordinate negation."""
        self.check_dim(x)
        return -np.asarray(x, float)

    # -- dual pairing and coadjoint action ------------------------------------

    def pairing(self, X, xi) -> np.ndarray:
        """<X | xi> = xi(X), the duality pairing in dual bases."""
        self.check_dim(X, xi)
        return np.einsum("...i,...i->...", np.asarray(X, float), np.asarray(xi, float))

    def coadjoint(self, x, zeta) -> np.ndarray:
        """Infinitesimal coadjoint action gamma_x(zeta) = zeta o ad_{-log x}."""
        self.check_dim(x, zeta)
        return np.einsum("kj,...k->...j", self.ad(-np.asarray(x, float)),
                         np.asarray(zeta, float))

    def dlambda_left(self, Z, zeta, x, h: float | None = None) -> float:
        """Left derivative of lambda_zeta at x along Z.

        lambda_zeta(y) = <log y | zeta>.  For step <= 2 the closed form

            <Z | zeta + gamma_x(zeta)/2 + gamma_x^2(zeta)/12>

        is exact; for higher steps the displayed terms are not the whole
        series, so a central finite difference of t -> lambda_zeta(exp(tZ) x)
        is used instead (pass ``h`` to force it at any step).
        """
        self.check_dim(Z, zeta, x)
        Z = np.asarray(Z, float)
        zeta = np.asarray(zeta, float)
        x = np.asarray(x, float)
        if h is None:
            if self.step > 2:
                raise AlgebraError(
                    "closed form is exact only for step <= 2; pass a finite-difference step h")
            g1 = self.coadjoint(x, zeta)
            g2 = self.coadjoint(x, g1)
            return float(self.pairing(Z, zeta + g1 / 2.0 + g2 / 12.0))
        if h <= 0:
            raise AlgebraError("finite-difference step h must be positive")
        lam_p = self.pairing(self.bch(h * Z, x), zeta)
        lam_m = self.pairing(self.bch(-h * Z, x), zeta)
        return float((lam_p - lam_m) / (2.0 * h))


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

@dataclass
class AlgebraReport:
    antisymmetry_residual: float
    jacobi_residual: float
    certified_step: int
    declared_step: int
    passed: bool

    def summary(self) -> dict:
        return {
            "antisymmetry_residual": self.antisymmetry_residual,
            "jacobi_residual": self.jacobi_residual,
            "certified_step": self.certified_step,
            "declared_step": self.declared_step,
            "passed": self.passed,
        }


def validate_algebra(alg: LieAlgebra, tol: float = 1e-12) -> AlgebraReport:
    """Check antisymmetry, the Jacobi identity and the nilpotency step.

    The step is certified by computing the lower central series: g_1 = g,
    g_{k+1} = [g, g_k], as spans of bracket images; the certified step is the
    last k with g_k != 0.
    """
    c = alg.c
    anti = float(np.max(np.abs(c + np.transpose(c, (1, 0, 2))))) if alg.dim else 0.0
    # Jacobi: [e_i,[e_j,e_l]] + [e_j,[e_l,e_i]] + [e_l,[e_i,e_j]] = 0
    t = np.einsum("jlm,imk->ijlk", c, c)
    jac = t + np.transpose(t, (1, 2, 0, 3)) + np.transpose(t, (2, 0, 1, 3))
    jacobi = float(np.max(np.abs(jac))) if alg.dim else 0.0

    basis = np.eye(alg.dim)
    layer = basis
    certified = 0
    for depth in range(1, alg.dim + 2):
        if layer.shape[0] == 0 or np.linalg.matrix_rank(layer, tol=1e-10) == 0:
            break
        certified = depth
        brackets = np.einsum("ai,bj,ijk->abk", basis, layer, c).reshape(-1, alg.dim)
        sv = np.linalg.svd(brackets, compute_uv=False) if brackets.size else np.zeros(0)
        rank = int(np.sum(sv > 1e-10))
        if rank == 0:
            layer = np.zeros((0, alg.dim))
        else:
            _, _, vh = np.linalg.svd(brackets)
            layer = vh[:rank]
    passed = anti <= tol and jacobi <= tol and certified == alg.step
    return AlgebraReport(anti, jacobi, certified, alg.step, passed)


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

def abelian(n: int) -> LieAlgebra:
    """R^n with the zero bracket (step 1)."""
    if n < 1:
        raise AlgebraError("dimension must be positive")
    return LieAlgebra(n, np.zeros((n, n, n)), 1, name=f"abelian:{n}")


def heisenberg() -> LieAlgebra:
    """The 3-dimensional Heisenberg algebra, [e1, e2] = e3 (step 2)."""
    c = np.zeros((3, 3, 3))
    c[0, 1, 2] = 1.0
    c[1, 0, 2] = -1.0
    return LieAlgebra(3, c, 2, name="heisenberg:1")


def engel() -> LieAlgebra:
    """The 4-dimensional Engel algebra, [e1,e2] = e3, [e1,e3] = e4 (step 3)."""
    c = np.zeros((4, 4, 4))
    c[0, 1, 2] = 1.0
    c[1, 0, 2] = -1.0
    c[0, 2, 3] = 1.0
    c[2, 0, 3] = -1.0
    return LieAlgebra(4, c, 3, name="engel")


_PRESETS = {"heisenberg:1": heisenberg, "engel": engel}


def preset(name: str) -> LieAlgebra:
    """Look up a named algebra: "abelian:n", "heisenberg:1" or "engel"."""
    if name.startswith("abelian:"):
        return abelian(int(name.split(":", 1)[1]))
    try:
        return _PRESETS[name]()
    except KeyError:
        raise AlgebraError(f"unknown algebra preset {name!r}") from None
