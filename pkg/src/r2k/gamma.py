"""The grading group Gamma = Z^r and its embedding into F.

Group elements are plain integer tuples. The scalar a group element stands for
in structure constants is obtained through a :class:`GammaEmbedding`; group
equality (Kronecker deltas, index arithmetic) never goes through scalars.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import RankMismatch
from .field import ONE, ZERO, Scalar, as_scalar, solve_linear
from .report import CheckReport


def _check_rank(r, *elems):
    for e in elems:
        if len(e) != r:
            raise RankMismatch(f"index {e} has rank {len(e)}, expected {r}")


def gamma_combine(coeffs, elems):
    """Z-linear combination sum(k * m) of equal-rank tuples."""
    if len(coeffs) != len(elems):
        raise RankMismatch("coefficient and element counts differ")
    if not elems:
        raise ValueError("empty combination")
    r = len(elems[0])
    _check_rank(r, *elems)
    return tuple(sum(k * m[i] for k, m in zip(coeffs, elems)) for i in range(r))


def gadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def gsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def gneg(a):
    return tuple(-x for x in a)


def gscale(k, a):
    return tuple(k * x for x in a)


def is_zero(a):
    return not any(a)


def window_indices(r, n):
    """All m in Z^r with |m_i| <= n, in lexicographic order."""
    return list(itertools.product(range(-n, n + 1), repeat=r))


def unit_vectors(r):
    return [tuple(int(i == j) for j in range(r)) for i in range(r)]


def index_text(m):
    if len(m) == 1:
        return str(m[0])
    return "(" + ",".join(str(x) for x in m) + ")"


@dataclass(frozen=True)
class GammaEmbedding:
    """Additive map iota: Z^r -> F given by generator images."""

    generators: tuple

    def __post_init__(self):
        gens = tuple(as_scalar(g) for g in self.generators)
        if not gens:
            raise ValueError("rank must be at least 1")
        if any(not g for g in gens):
            raise ValueError("embedding generators must be nonzero")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def rational(cls, g=1):
        return cls((as_scalar(g),))

    @classmethod
    def generic(cls, r):
        return cls(tuple(Scalar.var(k) for k in range(1, r + 1)))

    @property
    def rank(self):
        return len(self.generators)

    @property
    def mode(self):
        if all(g.is_rational() for g in self.generators):
            return "rational"
        return "generic"

    def __call__(self, m):
        return embed(self, m)

    def describe(self):
        return [str(g) for g in self.generators]


def embed(emb, m):
    """iota(m) = sum m_i g_i."""
    _check_rank(emb.rank, m)
    out = ZERO
    for k, g in zip(m, emb.generators):
        if k:
            out = out + g * k
    return out


def injectivity_audit(emb, n):
    """Check iota(m) != 0 for every nonzero m with |m_i| <= 2n.

    Boxes are scanned by increasing sup-norm, so the witness is a shortest
    kernel element, reported with its first nonzero coordinate positive.
    """
    if n < 1:
        raise ValueError("window radius must be at least 1")
    rep = CheckReport(meta={"rank": emb.rank, "generators": emb.describe(), "window": n})
    box = sorted(window_indices(emb.rank, 2 * n), key=lambda m: (max(map(abs, m)), m))
    for m in box:
        if is_zero(m):
            continue
        v = embed(emb, m)
        rep.check("gamma.injective", bool(v), lambda: {
            "inputs": [index_text(m if next(k for k in m if k) > 0 else gneg(m))],
            "lhs": str(v), "rhs": "0"})
    return rep


@dataclass(frozen=True)
class AdditiveHom:
    """phi in Hom(Z^r, F), phi(m) = sum m_i phi_i."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(as_scalar(v) for v in self.values))

    @property
    def rank(self):
        return len(self.values)

    def __call__(self, m):
        return hom_eval_add(self, m)

    def __add__(self, other):
        return AdditiveHom(tuple(a + b for a, b in zip(self.values, other.values)))

    @classmethod
    def zero(cls, r):
        return cls((ZERO,) * r)


def hom_eval_add(phi, m):
    _check_rank(phi.rank, m)
    out = ZERO
    for k, v in zip(m, phi.values):
        if k:
            out = out + v * k
    return out


@dataclass(frozen=True)
class MultiplicativeHom:
    """f in Hom(Z^r, F*), f(m) = prod f_i^{m_i}."""

    values: tuple

    def __post_init__(self):
        vals = tuple(as_scalar(v) for v in self.values)
        if any(not v for v in vals):
            raise ValueError("multiplicative hom values must be nonzero")
        object.__setattr__(self, "values", vals)

    @property
    def rank(self):
        return len(self.values)

    def __call__(self, m):
        return hom_eval_mul(self, m)

    def power(self, k):
        """The pointwise power m -> f(m)^k."""
        return MultiplicativeHom(tuple(v ** k for v in self.values))

    def is_trivial(self):
        return all(v == ONE for v in self.values)

    @classmethod
    def one(cls, r):
        return cls((ONE,) * r)


def hom_eval_mul(f, m):
    _check_rank(f.rank, m)
    out = ONE
    for k, v in zip(m, f.values):
        if k:
            out = out * v ** k
    return out


def proportionality_constant(phi, emb):
    """k with phi = k * iota, or None when phi is not a multiple of iota."""
    _check_rank(emb.rank, phi.values)
    sol = solve_linear([[g] for g in emb.generators], list(phi.values))
    return None if sol is None else sol[0]
