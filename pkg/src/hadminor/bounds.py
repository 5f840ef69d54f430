"""Exact arithmetic in Q(sqrt 2) and the logarithmic bound function.

With ``TAU = 2*sqrt(2)/(sqrt(2) - 1) = 4 + 2*sqrt(2)``,

    f(x) = max(ceil(log_TAU(TAU * x / (4*sqrt(2)))), 0),   f(0) = 0,

and the minor-size divisor is ``r(alpha) = 2*alpha - f(2*sqrt(2)*alpha)``.
Ceilings of logarithms are taken from a float estimate, and resolved exactly
in Q(sqrt 2) whenever the estimate lies within 1e-9 of an integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Integral, Rational

import numpy as np

from .errors import DomainError, ParameterError

_BOUNDARY_TOL = 1e-9


class Surd:
    """``a + b*sqrt(2)`` with rational ``a`` and ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def coerce(cls, x) -> Surd:
        if isinstance(x, Surd):
            return x
        if isinstance(x, Integral):
            return cls(int(x), 0)
        if isinstance(x, Rational):
            return cls(x, 0)
        if isinstance(x, float):
            return cls(Fraction(x), 0)
        raise TypeError(f"cannot interpret {x!r} as an element of Q(sqrt 2)")

    def __add__(self, o):
        o = Surd.coerce(o)
        return Surd(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-Surd.coerce(o))

    def __rsub__(self, o):
        return Surd.coerce(o) - self

    def __mul__(self, o):
        o = Surd.coerce(o)
        return Surd(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = Surd.coerce(o)
        norm = o.a * o.a - 2 * o.b * o.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        conj = Surd(o.a / norm, -o.b / norm)
        return self * conj

    def __rtruediv__(self, o):
        return Surd.coerce(o) / self

    def __pow__(self, e: int):
        if e < 0:
            return Surd(1) / (self ** (-e))
        out = Surd(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def sign(self) -> int:
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sa == 0 or sa == sb:
            return sb if sa == 0 else sa
        if sb == 0:
            return sa
        # opposite signs: compare a^2 with 2 b^2
        d = a * a - 2 * b * b
        return sa if d > 0 else (-sa if d < 0 else 0)

    def _cmp(self, o) -> int:
        return (self - Surd.coerce(o)).sign()

    def __eq__(self, o):
        try:
            return self._cmp(o) == 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __lt__(self, o):
        return self._cmp(o) < 0

    def __le__(self, o):
        return self._cmp(o) <= 0

    def __gt__(self, o):
        return self._cmp(o) > 0

    def __ge__(self, o):
        return self._cmp(o) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(2)

    def floor(self) -> int:
        m = math.floor(float(self))
        while Surd(m) > self:
            m -= 1
        while Surd(m + 1) <= self:
            m += 1
        return m

    def ceil(self) -> int:
        return -((-self).floor())

    def __repr__(self):
        return f"Surd({self.a}, {self.b})"


SQRT2 = Surd(0, 1)
TAU = 2 * SQRT2 / (SQRT2 - 1)  # 4 + 2*sqrt(2)
TAU_FLOAT = float(TAU)


def _as_surd(x) -> Surd:
    return Surd.coerce(x)


def ceil_log(y, base) -> int:
    """Exact ``ceil(log_base(y))`` for ``y > 0`` and ``base > 1`` in Q(sqrt 2)."""
    y = _as_surd(y)
    base = _as_surd(base)
    if y <= 0:
        raise DomainError("logarithm of a non-positive number")
    est = math.log(float(y)) / math.log(float(base))
    nearest = round(est)
    if abs(est - nearest) > _BOUNDARY_TOL:
        return math.ceil(est)
    # resolve ceil exactly: smallest m with base**m >= y
    m = nearest
    while base**m < y:
        m += 1
    while base ** (m - 1) >= y:
        m -= 1
    return m


def f_eval(x, tau=TAU) -> int:
    """The integer-valued bound function on ``{0} U [1, inf)``."""
    x = _as_surd(x)
    tau = _as_surd(tau)
    if x == 0:
        return 0
    if x < 1:
        raise DomainError(f"f is defined only at 0 and on [1, inf); got {float(x)}")
    y = tau * x / (4 * SQRT2)
    return max(ceil_log(y, tau), 0)


def bound_r(alpha: int) -> int:
    """``2*alpha - ceil(log_TAU(TAU*alpha/2))``: divisor of the minor-size bound."""
    if alpha < 1:
        raise ParameterError(f"alpha must be at least 1, got {alpha}")
    return 2 * alpha - ceil_log(TAU * Fraction(alpha, 2), TAU)


def log_guarantee(n: int, alpha: int) -> int:
    return -(-n // bound_r(alpha))


def dm2_guarantee(n: int, alpha: int) -> int:
    """Minor size promised by the 2*alpha - 2 construction."""
    if alpha == 1:
        return n
    if alpha == 2:
        return -(-n // 3)
    return -(-n // (2 * alpha - 2))


def alpha5_guarantee(n: int) -> int:
    return -(-5 * n // 38)


# ---------------------------------------------------------------------------
# property checker

@dataclass
class PropertyResult:
    name: str
    ok: bool
    checked: int
    counterexample: tuple | None = None


@dataclass
class PropertyReport:
    tau: Surd
    results: list[PropertyResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failed(self) -> list[str]:
        return [r.name for r in self.results if not r.ok]

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            tail = "" if r.ok else f"  first counterexample: {r.counterexample}"
            out.append(f"{r.name}: {'pass' if r.ok else 'FAIL'} ({r.checked} cases){tail}")
        return out


def _real_grid(x_max: int) -> list[Fraction]:
    """Rationals >= 1 used for the real-argument properties."""
    pts = {Fraction(1) + Fraction(j, 8) for j in range(0, 8 * 12)}
    pts |= {Fraction(k) for k in range(1, x_max + 1)}
    pts |= {Fraction(k) + Fraction(1, 2) for k in range(1, min(x_max, 100))}
    return sorted(pts)


def _surd_grid(x_max: int) -> list[Surd]:
    """Irrational sample points ``k*sqrt(2)`` and ``k*tau``-adjacent values."""
    pts = [Surd(0, k) for k in range(1, min(x_max, 200) + 1)]
    pts += [Surd(1) + Surd(0, Fraction(k, 4)) for k in range(1, 40)]
    return pts


def check_f_properties(x_max: int, tau=TAU) -> PropertyReport:
    """Check properties P1..P11 of ``f`` for arguments up to ``x_max``.

    Integer quantifiers range over every admissible value ``<= x_max``; real
    quantifiers range over a rational/irrational sample grid.
    """
    if x_max < 2:
        raise ParameterError("x_max must be at least 2")
    tau = _as_surd(tau)
    f = lambda v: f_eval(v, tau)  # noqa: E731
    report = PropertyReport(tau)
    add = report.results.append
    ints = np.arange(0, x_max + 1)

    # P1
    add(PropertyResult("P1", f(0) == 0, 1, None if f(0) == 0 else (0,)))
    # P2
    v = f(4 * SQRT2)
    add(PropertyResult("P2", v <= 1, 1, None if v <= 1 else (float(4 * SQRT2), v)))

    reals = _real_grid(x_max) + _surd_grid(x_max)
    # P3: f(tau x) <= 1 + f(x)
    bad = next((x for x in reals if f(tau * x) > 1 + f(x)), None)
    add(PropertyResult("P3", bad is None, len(reals), None if bad is None else (float(bad),)))

    # P4: f(2 sqrt2 x + 2 sqrt2 y) <= f(x) + f(y); integers then a real sample
    f_int = np.array([f(k) for k in ints])
    f_pair_sum = np.array([f(2 * SQRT2 * s) if s else 0 for s in range(2 * x_max + 1)])
    xs = ints[1:]
    lhs = f_pair_sum[xs[:, None] + xs[None, :]]
    rhs = f_int[xs][:, None] + f_int[xs][None, :]
    ok4 = lhs <= rhs
    ce = None
    if not ok4.all():
        i, j = np.argwhere(~ok4)[0]
        ce = (int(xs[i]), int(xs[j]))
    sample = reals[:: max(1, len(reals) // 60)]
    checked4 = ok4.size
    if ce is None:
        fs = {id(x): f(x) for x in sample}
        for x in sample:
            for y in sample:
                checked4 += 1
                if f(2 * SQRT2 * (x + y)) > fs[id(x)] + fs[id(y)]:
                    ce = (float(x), float(y))
                    break
            if ce:
                break
    add(PropertyResult("P4", ce is None, checked4, ce))

    # P5: 0 <= x <= y integers: f(y) <= f(x) + y - x
    diff = f_int[None, :] - f_int[:, None] - (ints[None, :] - ints[:, None])
    mask = ints[:, None] <= ints[None, :]
    ok5 = ~mask | (diff <= 0)
    ce = None
    if not ok5.all():
        i, j = np.argwhere(~ok5)[0]
        ce = (int(ints[i]), int(ints[j]))
    add(PropertyResult("P5", ce is None, int(mask.sum()), ce))

    # P6: 1 <= x <= y integers, r >= 1 real: f(ry) <= f(rx) + y - x
    rs = [Surd(1), Surd(Fraction(5, 4)), Surd(Fraction(3, 2)), SQRT2, Surd(2), 2 * SQRT2,
          Surd(Fraction(7, 2)), 4 * SQRT2, tau, Surd(Fraction(31, 3))]
    ce = None
    checked6 = 0
    for r in rs:
        fr = np.array([f(r * k) for k in xs])
        d = fr[None, :] - fr[:, None] - (xs[None, :] - xs[:, None])
        m = xs[:, None] <= xs[None, :]
        ok = ~m | (d <= 0)
        checked6 += int(m.sum())
        if not ok.all():
            i, j = np.argwhere(~ok)[0]
            ce = (float(r), int(xs[i]), int(xs[j]))
            break
    add(PropertyResult("P6", ce is None, checked6, ce))

    # P7: non-decreasing on the real grid, and subadditive on pairs
    grid = sorted(reals, key=float)
    vals = [f(x) for x in grid]
    ce = next(((float(grid[i]), float(grid[i + 1])) for i in range(len(grid) - 1)
               if vals[i] > vals[i + 1]), None)
    checked7 = len(grid)
    if ce is None:
        sub = grid[:: max(1, len(grid) // 60)]
        fv = [f(x) for x in sub]
        for i, x in enumerate(sub):
            for j, y in enumerate(sub):
                checked7 += 1
                if f(x + y) > fv[i] + fv[j]:
                    ce = (float(x), float(y))
                    break
            if ce:
                break
    add(PropertyResult("P7", ce is None, checked7, ce))

    # P8: x >= 1 integer: ceil(sqrt2 (x-1)) >= tau/(tau - sqrt2) x  or  f(2 sqrt2 x) <= f(tau)
    ratio = tau / (tau - SQRT2)
    f_tau = f(tau)
    ce = None
    for x in range(1, x_max + 1):
        if Surd((SQRT2 * (x - 1)).ceil()) >= ratio * x:
            continue
        if f_pair_sum[x] <= f_tau:
            continue
        ce = (x,)
        break
    add(PropertyResult("P8", ce is None, x_max, ce))

    # P9: x >= 2 integer: f(2 sqrt2 x) <= 1 + f(x - ceil((x+1)/2))
    ce = next(((x,) for x in range(2, x_max + 1)
               if f_pair_sum[x] > 1 + f_int[x - (x + 2) // 2]), None)
    add(PropertyResult("P9", ce is None, x_max - 1, ce))

    # P10: x >= 2 integer: sqrt2 x <= tau ceil((x-1)/2)
    ce = next(((x,) for x in range(2, x_max + 1) if SQRT2 * x > tau * (x // 2)), None)
    add(PropertyResult("P10", ce is None, x_max - 1, ce))

    # P11: x >= 2 integer: f(sqrt2 x) <= 2 ceil((x-1)/2)
    ce = next(((x,) for x in range(2, x_max + 1) if f(SQRT2 * x) > 2 * (x // 2)), None)
    add(PropertyResult("P11", ce is None, x_max - 1, ce))
    return report
