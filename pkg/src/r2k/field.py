"""Exact arithmetic in F = Q(u1, u2, ...).

A polynomial is a dict mapping an exponent tuple to a nonzero ``mpq``
coefficient. Exponent tuples have trailing zeros stripped, so the constant
monomial is ``()`` and ``u2`` is ``(0, 1)``; this lets scalars built over
different numbers of indeterminates interoperate without a declared rank.

A :class:`Scalar` is a reduced fraction ``num/den``. Canonical form: numerator
and denominator coprime in Q[u], denominator monic under graded-lex order with
u1 > u2 > ...; a denominator equal to 1 is stored as ``None``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from gmpy2 import gcd, lcm, mpq, mpz

from .errors import DenominatorVanishes, DivisionByZero, ZeroDenominator

_ONE = mpq(1)
_MPQ = type(_ONE)


# -- polynomial primitives (dict-of-monomials) --------------------------------

def _strip(e):
    n = len(e)
    while n and e[n - 1] == 0:
        n -= 1
    return e if n == len(e) else e[:n]


def _madd(e, f):
    if len(e) < len(f):
        e, f = f, e
    if not f:
        return e
    out = list(e)
    for i, v in enumerate(f):
        out[i] += v
    return tuple(out)


def _msub(e, f):
    """e - f, or None if f does not divide e."""
    if len(f) > len(e):
        return None
    out = list(e)
    for i, v in enumerate(f):
        out[i] -= v
        if out[i] < 0:
            return None
    return _strip(tuple(out))


def _key(e):
    # graded-lex; stripped tuples compare like zero-padded ones
    return (sum(e), e)


def poly_lead(p):
    """Leading (monomial, coefficient) under graded-lex order."""
    e = max(p, key=_key)
    return e, p[e]


def poly_add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = dict(p)
    for e, c in q.items():
        v = out.get(e)
        if v is None:
            out[e] = c
        else:
            v = v + c
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def poly_neg(p):
    return {e: -c for e, c in p.items()}


def poly_sub(p, q):
    return poly_add(p, poly_neg(q))


def poly_scale(p, c):
    if not c:
        return {}
    return {e: v * c for e, v in p.items()}


def poly_mul(p, q):
    if len(p) == 1 and () in p:
        return poly_scale(q, p[()])
    if len(q) == 1 and () in q:
        return poly_scale(p, q[()])
    out = {}
    for e, a in p.items():
        for f, b in q.items():
            m = _madd(e, f)
            v = out.get(m)
            out[m] = a * b if v is None else v + a * b
    return {e: c for e, c in out.items() if c}


def poly_pow(p, n):
    out = {(): _ONE}
    for _ in range(n):
        out = poly_mul(out, p)
    return out


def poly_divexact(p, q):
    """Quotient p/q; raises ArithmeticError when q does not divide p."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    if len(q) == 1:
        (f, b), = q.items()
        out = {}
        for e, a in p.items():
            m = _msub(e, f)
            if m is None:
                raise ArithmeticError("inexact polynomial division")
            out[m] = a / b
        return out
    lf, lb = poly_lead(q)
    r = dict(p)
    out = {}
    while r:
        le, la = poly_lead(r)
        m = _msub(le, lf)
        if m is None:
            raise ArithmeticError("inexact polynomial division")
        c = la / lb
        out[m] = c
        r = poly_add(r, {_madd(e, m): -c * v for e, v in q.items()})
    return out


def poly_nvars(p):
    return max((len(e) for e in p), default=0)


def poly_is_constant(p):
    return not p or (len(p) == 1 and () in p)


def poly_monic(p):
    _, c = poly_lead(p)
    return p if c == 1 else poly_scale(p, 1 / c)


# -- gcd over Q[u1..un]: recursive primitive PRS ------------------------------

def _to_univariate(p, v):
    """Split p by the degree of variable index v (0-based, the last variable)."""
    out = {}
    for e, c in p.items():
        d = e[v] if len(e) > v else 0
        rest = _strip(e[:v])
        out.setdefault(d, {})[rest] = c
    return out


def _from_univariate(u, v):
    out = {}
    for d, coeff in u.items():
        for e, c in coeff.items():
            if d:
                e = e + (0,) * (v - len(e)) + (d,)
            out[e] = c
    return out


def _u_deg(u):
    return max(u)


def _u_content(u):
    g = {}
    for coeff in u.values():
        g = poly_gcd(g, coeff)
        if poly_is_constant(g):
            return {(): _ONE}
    return g


def _u_divcoeff(u, c):
    return {d: poly_divexact(k, c) for d, k in u.items()}


def _u_prem(a, b):
    db = _u_deg(b)
    lb = b[db]
    r = dict(a)
    while r and _u_deg(r) >= db:
        dr = _u_deg(r)
        lr = r[dr]
        shift = dr - db
        nxt = {d: poly_mul(k, lb) for d, k in r.items()}
        for d, k in b.items():
            t = poly_mul(k, lr)
            cur = nxt.get(d + shift)
            nxt[d + shift] = poly_neg(t) if cur is None else poly_sub(cur, t)
        r = {d: k for d, k in nxt.items() if k}
    return r


def _u_primitive(u):
    c = _u_content(u)
    if not poly_is_constant(c):
        u = _u_divcoeff(u, c)
    # also strip the rational content, or remainder coefficients grow without bound
    num, den = mpz(0), mpz(1)
    for k in u.values():
        for v in k.values():
            num = gcd(num, v.numerator)
            den = lcm(den, v.denominator)
    f = mpq(den, num)
    if f == 1:
        return u
    return {d: poly_scale(k, f) for d, k in u.items()}


def poly_gcd(p, q):
    """Monic greatest common divisor in Q[u1..un] (gcd(0, 0) = 0)."""
    if not p:
        return poly_monic(q) if q else {}
    if not q:
        return poly_monic(p)
    n = max(poly_nvars(p), poly_nvars(q))
    if n == 0:
        return {(): _ONE}
    if len(p) == 1 and len(q) == 1:
        (e,), (f,) = p, q
        m = tuple(min(a, b) for a, b in zip(e, f))
        return {_strip(m): _ONE}
    v = n - 1
    a, b = _to_univariate(p, v), _to_univariate(q, v)
    cont = poly_gcd(_u_content(a), _u_content(b))
    a, b = _u_primitive(a), _u_primitive(b)
    if _u_deg(a) < _u_deg(b):
        a, b = b, a
    while b and _u_deg(b) > 0:
        r = _u_prem(a, b)
        a, b = b, (_u_primitive(r) if r else r)
    if b:
        # nonzero constant-in-v remainder: primitive parts are coprime in v
        g = {(): _ONE}
    else:
        g = _from_univariate(_u_primitive(a), v)
    return poly_monic(poly_mul(g, cont))


# -- Scalar --------------------------------------------------------------------

def _coerce_coeff(c):
    if type(c) is _MPQ:
        return c
    if isinstance(c, (int, Fraction)):
        return mpq(c.numerator, c.denominator) if isinstance(c, Fraction) else mpq(c)
    if isinstance(c, Rational):
        return mpq(c.numerator, c.denominator)
    raise TypeError(f"not an exact rational: {c!r}")


class Scalar:
    """Canonical element of Q(u1, u2, ...). Immutable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _canonical=False):
        if _canonical:
            self.num = num
            self.den = den
            self._hash = None
            return
        if not isinstance(num, dict):
            num = _const_poly(num)
        if den is not None and not isinstance(den, dict):
            den = _const_poly(den)
        self.num, self.den = _normalize(num, den)
        self._hash = None

    # constructors
    @classmethod
    def var(cls, k):
        """The indeterminate u_k (1-based)."""
        if k < 1:
            raise ValueError("indeterminates are numbered from 1")
        return cls({(0,) * (k - 1) + (1,): _ONE}, _canonical=True)

    @classmethod
    def parse(cls, text):
        from .parse import parse_scalar
        return parse_scalar(text)

    # structure
    @property
    def numerator(self):
        return self.num

    @property
    def denominator(self):
        return self.den if self.den is not None else {(): _ONE}

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_rational(self):
        return self.den is None and poly_is_constant(self.num)

    def as_fraction(self):
        """Exact value as a Fraction; only for scalars with no indeterminates."""
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational constant")
        c = self.num.get((), 0)
        return Fraction(int(mpq(c).numerator), int(mpq(c).denominator))

    def nvars(self):
        return max(poly_nvars(self.num), poly_nvars(self.denominator))

    # arithmetic
    def __add__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        if self.den is None and other.den is None:
            return Scalar(poly_add(self.num, other.num), _canonical=True)
        if not self.num:
            return other
        if not other.num:
            return self
        d1, d2 = self.denominator, other.denominator
        if self.den is not None and self.den == other.den:
            return Scalar(poly_add(self.num, other.num), self.den)
        return Scalar(poly_add(poly_mul(self.num, d2), poly_mul(other.num, d1)),
                      poly_mul(d1, d2))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(poly_neg(self.num), self.den, _canonical=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return ZERO
        if self.den is None and other.den is None:
            return Scalar(poly_mul(self.num, other.num), _canonical=True)
        if other.is_rational():
            return Scalar(poly_scale(self.num, other.num[()]), self.den, _canonical=True)
        if self.is_rational():
            return Scalar(poly_scale(other.num, self.num[()]), other.den, _canonical=True)
        return Scalar(poly_mul(self.num, other.num),
                      poly_mul(self.denominator, other.denominator))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return Scalar(self.denominator, self.num)

    def __truediv__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise DivisionByZero(f"division of {self} by zero")
        if other.is_rational():
            return Scalar(poly_scale(self.num, 1 / other.num[()]), self.den, _canonical=True)
        return Scalar(poly_mul(self.num, other.denominator),
                      poly_mul(self.denominator, other.num))

    def __rtruediv__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if self.den is None:
            return Scalar(poly_pow(self.num, n), _canonical=True)
        return Scalar(poly_pow(self.num, n), poly_pow(self.den, n), _canonical=True)

    # comparison
    def __eq__(self, other):
        if not isinstance(other, Scalar):
            other = _as_scalar(other)
            if other is NotImplemented:
                return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        h = self._hash
        if h is None:
            if self.is_rational():
                h = hash(self.num.get((), 0))
            else:
                h = hash((frozenset(self.num.items()),
                          None if self.den is None else frozenset(self.den.items())))
            self._hash = h
        return h

    def sign_hint(self):
        """Sign of the leading numerator coefficient (0 for zero)."""
        if not self.num:
            return 0
        return 1 if poly_lead(self.num)[1] > 0 else -1

    def eval(self, assignment):
        return scalar_eval(self, assignment)

    def __str__(self):
        return scalar_text(self)

    def __repr__(self):
        return f"Scalar({scalar_text(self)!r})"

    def __reduce__(self):
        return (_rebuild, (_freeze(self.num), None if self.den is None else _freeze(self.den)))


def _freeze(p):
    return tuple((e, (int(c.numerator), int(c.denominator))) for e, c in p.items())


def _rebuild(num, den):
    def thaw(t):
        return {e: mpq(n, d) for e, (n, d) in t}
    return Scalar(thaw(num), None if den is None else thaw(den), _canonical=True)


def _const_poly(c):
    c = _coerce_coeff(c)
    return {(): c} if c else {}


def _as_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)) or type(x) is _MPQ:
        return Scalar(_const_poly(x), _canonical=True)
    if isinstance(x, Rational):
        return Scalar(_const_poly(x), _canonical=True)
    return NotImplemented


def as_scalar(x):
    """Coerce int/Fraction/str/Scalar to Scalar."""
    if isinstance(x, str):
        return Scalar.parse(x)
    s = _as_scalar(x)
    if s is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a scalar")
    return s


def scalar_normalize(num, den):
    """Canonical Scalar from a raw (numerator, denominator) polynomial pair."""
    return Scalar(num, den)


def _normalize(num, den):
    num = {_strip(tuple(e)): _coerce_coeff(c) for e, c in num.items() if c}
    if den is None:
        return num, None
    den = {_strip(tuple(e)): _coerce_coeff(c) for e, c in den.items() if c}
    if not den:
        raise ZeroDenominator("zero denominator")
    if not num:
        return {}, None
    if not poly_is_constant(den):
        g = poly_gcd(num, den)
        if not poly_is_constant(g):
            num = poly_divexact(num, g)
            den = poly_divexact(den, g)
    _, lc = poly_lead(den)
    if lc != 1:
        inv = 1 / lc
        num = poly_scale(num, inv)
        den = poly_scale(den, inv)
    if len(den) == 1 and () in den:
        den = None
    return num, den


def scalar_arith(op, x, y):
    x, y = as_scalar(x), as_scalar(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def _poly_eval(p, values):
    total = mpq(0)
    for e, c in p.items():
        t = c
        for i, k in enumerate(e):
            if k:
                try:
                    t = t * values[i] ** k
                except IndexError:
                    raise ValueError(f"no value assigned to u{i + 1}") from None
        total += t
    return total


def scalar_eval(x, assignment):
    """Evaluate at rational values for u1, u2, ...

    ``assignment`` is a sequence (position i gives u_{i+1}) or a mapping from
    1-based variable number to value.
    """
    x = as_scalar(x)
    if isinstance(assignment, dict):
        n = x.nvars()
        missing = [k for k in range(1, n + 1) if k not in assignment]
        if missing:
            raise ValueError(f"no value assigned to u{missing[0]}")
        values = [_coerce_coeff(assignment[k]) for k in range(1, n + 1)]
    else:
        values = [_coerce_coeff(v) for v in assignment]
    d = _poly_eval(x.denominator, values)
    if not d:
        raise DenominatorVanishes(f"denominator of {x} vanishes at {tuple(values)}")
    v = _poly_eval(x.num, values) / d
    return Fraction(int(v.numerator), int(v.denominator))


# -- canonical text --------------------------------------------------------------

def _coeff_text(c):
    c = mpq(c)
    if c.denominator == 1:
        return str(int(c.numerator))
    return f"{int(c.numerator)}/{int(c.denominator)}"


def _mono_text(e):
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"u{i + 1}")
        elif k:
            parts.append(f"u{i + 1}^{k}")
    return "*".join(parts)


def poly_text(p):
    if not p:
        return "0"
    out = []
    for e in sorted(p, key=_key, reverse=True):
        c = p[e]
        neg = c < 0
        a = -c if neg else c
        m = _mono_text(e)
        if not m:
            body = _coeff_text(a)
        elif a == 1:
            body = m
        else:
            body = f"{_coeff_text(a)}*{m}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def scalar_text(x):
    x = as_scalar(x)
    if x.den is None:
        return poly_text(x.num)
    return f"({poly_text(x.num)})/({poly_text(x.den)})"


def scalar_parse(text):
    return Scalar.parse(text)


def is_monomial(x):
    """True when x is c*u^e with den 1 (renders without a + or -inside)."""
    return x.den is None and len(x.num) == 1


# -- exact linear solving over F ----------------------------------------------------

def solve_linear(rows, rhs):
    """Solve rows @ x = rhs exactly over F by Gauss-Jordan elimination.

    Returns one solution (free unknowns set to 0) as a tuple of Scalars, or
    None when the system is inconsistent.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    aug = [[as_scalar(v) for v in row] + [as_scalar(b)] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(n):
        p = next((i for i in range(r, m) if aug[i][col]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = aug[r][col].inverse()
        aug[r] = [v * inv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n]:
            return None
    x = [ZERO] * n
    for i, col in enumerate(pivots):
        x[col] = aug[i][n]
    return tuple(x)


ZERO = Scalar({}, _canonical=True)
ONE = Scalar({(): _ONE}, _canonical=True)
