"""Smooth compactly supported profiles with exact derivatives of any order.

Derivatives are propagated with truncated Taylor arithmetic ("jets"), so the
``e^{-1/t}`` glue functions can be differentiated without numeric stencils.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Below this distance to the support edge every derivative of the glue
# function is smaller than exp(-600) and is returned as exactly 0.
_EDGE = 1.0 / 600.0


class _Jet:
    """Truncated Taylor series ``sum_j c[j] h^j`` with array-valued coefficients."""

    __slots__ = ("c",)

    def __init__(self, c):
        self.c = c

    @classmethod
    def variable(cls, x, order):
        c = np.zeros((order + 1,) + np.shape(x))
        c[0] = x
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    def __add__(self, other):
        if isinstance(other, _Jet):
            return _Jet(self.c + other.c)
        c = self.c.copy()
        c[0] = c[0] + other
        return _Jet(c)

    __radd__ = __add__

    def __neg__(self):
        return _Jet(-self.c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, _Jet):
            return _Jet(self.c * other)
        K = self.c.shape[0]
        out = np.zeros_like(self.c)
        for n in range(K):
            for j in range(n + 1):
                out[n] += self.c[j] * other.c[n - j]
        return _Jet(out)

    __rmul__ = __mul__

    def reciprocal(self):
        a = self.c
        r = np.zeros_like(a)
        r[0] = 1.0 / a[0]
        for n in range(1, a.shape[0]):
            acc = np.zeros_like(a[0])
            for j in range(1, n + 1):
                acc += a[j] * r[n - j]
            r[n] = -acc * r[0]
        return _Jet(r)

    def exp(self):
        a = self.c
        e = np.zeros_like(a)
        e[0] = np.exp(a[0])
        for n in range(1, a.shape[0]):
            acc = np.zeros_like(a[0])
            for j in range(1, n + 1):
                acc += j * a[j] * e[n - j]
            e[n] = acc / n
        return _Jet(e)

    def derivative(self, order):
        return self.c[order] * math.factorial(order)


def smoothstep(u, order: int = 0) -> np.ndarray:
    """C^oo step ``S(u) = psi(u) / (psi(u) + psi(1-u))``, ``psi(t) = exp(-1/t)``.

    ``S = 0`` for ``u <= 0`` and ``S = 1`` for ``u >= 1``.  Returns the
    ``order``-th derivative.
    """
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    if order == 0:
        out[u >= 1 - _EDGE] = 1.0
    mid = (u > _EDGE) & (u < 1 - _EDGE)
    if np.any(mid):
        um = u[mid]
        x = _Jet.variable(um, order)
        # S = 1 / (1 + exp(1/u - 1/(1-u)))
        z = x.reciprocal() - (1 - x).reciprocal()
        out[mid] = (1 + z.exp()).reciprocal().derivative(order)
    return out


def mollifier(u, order: int = 0) -> np.ndarray:
    """Standard bump ``exp(1 - 1/(1 - u^2))`` on ``(-1, 1)``, equal to 1 at 0."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    mid = np.abs(u) < 1 - _EDGE
    if np.any(mid):
        x = _Jet.variable(u[mid], order)
        w = (1 - x * x).reciprocal()
        out[mid] = (1 - w).exp().derivative(order)
    return out


@dataclass(frozen=True)
class Plateau:
    """Equals 1 on ``[lo + ramp, hi - ramp]``, supported in ``[lo, hi]``.

    Ramps are rescaled smoothsteps, so every derivative is bounded by a
    constant depending only on ``ramp``.
    """

    lo: float
    hi: float
    ramp: float = 1.0

    def __post_init__(self):
        if not self.hi - self.lo >= 2 * self.ramp > 0:
            raise ValueError("plateau needs hi - lo >= 2*ramp > 0")

    @property
    def support(self) -> tuple[float, float]:
        return (self.lo, self.hi)

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return (self.lo, self.lo + self.ramp, self.hi - self.ramp, self.hi)

    def __call__(self, t, order: int = 0):
        t = np.asarray(t, dtype=float)
        r = self.ramp
        up = smoothstep((t - self.lo) / r, order) / r**order
        down = smoothstep((self.hi - t) / r, order) * ((-1) ** order / r**order)
        if order == 0:
            return up * down
        # on any point at most one ramp is active; elsewhere derivatives vanish
        left = t < 0.5 * (self.lo + self.hi)
        return np.where(left, up, down)


@dataclass(frozen=True)
class Bump:
    """Mollifier bump centred at ``center`` with support ``center +- halfwidth``."""

    center: float = 0.0
    halfwidth: float = 1.0

    @property
    def support(self) -> tuple[float, float]:
        return (self.center - self.halfwidth, self.center + self.halfwidth)

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return (*self.support, self.center)

    def __call__(self, x, order: int = 0):
        x = np.asarray(x, dtype=float)
        h = self.halfwidth
        return mollifier((x - self.center) / h, order) / h**order


@dataclass(frozen=True)
class TensorProfile:
    """Product ``b(x) = prod_i f_i(x_i)`` of one-dimensional profiles."""

    factors: tuple

    @classmethod
    def bump(cls, N: int, halfwidth: float = 1.0) -> "TensorProfile":
        return cls(tuple(Bump(0.0, halfwidth) for _ in range(N)))

    @property
    def dim(self) -> int:
        return len(self.factors)

    @property
    def box(self) -> tuple[tuple[float, float], ...]:
        return tuple(f.support for f in self.factors)

    def __call__(self, xs, orders=None):
        """Evaluate the mixed partial ``d^orders b`` at coordinates ``xs``."""
        orders = orders or (0,) * self.dim
        val = 1.0
        for f, x, o in zip(self.factors, xs, orders):
            val = val * f(x, o)
        return val

    def laplacian(self, xs):
        """Euclidean ``-sum_i d_i^2 b``."""
        total = 0.0
        for i in range(self.dim):
            orders = tuple(2 if j == i else 0 for j in range(self.dim))
            total = total - self(xs, orders)
        return total
