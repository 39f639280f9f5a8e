"""Exterior calculus for template forms on the upper half-space model of H^{N+1}.

Coordinates are ``(y, x_1, ..., x_N)`` with ``y > 0`` and metric
``g = y^{-2}(dy^2 + dx^2)``.  Coordinate index 0 stands for ``y`` and
``1..N`` for the ``x_i``.

A :class:`TemplateForm` is a finite sum ``sum const * m(y, x) * e_K`` where
``e_K`` is a coordinate basis form ``dy ^ dx^I`` or ``dx^J`` and ``m`` is a
:class:`Monomial`

    m = y^mu (log y)^j e^{kappa y} c^{(a)}(log y) (d^beta b)(x) e^{i xi.x}.

This family is closed under ``d``, ``delta`` and the Laplacian, and every
derivative is exact.  Pointwise, ``|dy ^ dx^I| = |dx^J| = y^k`` and distinct
basis forms are orthogonal.
"""

from __future__ import annotations

import math
import warnings
from collections import defaultdict
from dataclasses import dataclass, field, replace

import numpy as np

from .profiles import Plateau, TensorProfile
from .regions import RegionSpec


class GridCoverageWarning(UserWarning):
    """The quadrature box cuts off a non-negligible part of the integrand."""


# ---------------------------------------------------------------------------
# basis forms


@dataclass(frozen=True, order=True)
class BasisForm:
    """Coordinate basis form; ``indices`` is strictly increasing, 0 means ``dy``."""

    indices: tuple

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if any(b <= a for a, b in zip(idx, idx[1:])) or any(i < 0 for i in idx):
            raise ValueError(f"basis indices must be strictly increasing and >= 0: {idx}")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def A(cls, I=()) -> "BasisForm":
        """``dy ^ dx^I``."""
        return cls((0,) + tuple(I))

    @classmethod
    def B(cls, J=()) -> "BasisForm":
        """``dx^J``."""
        if 0 in tuple(J):
            raise ValueError("x-indices start at 1")
        return cls(tuple(J))

    @property
    def kind(self) -> str:
        return "A" if self.indices[:1] == (0,) else "B"

    @property
    def multi_index(self) -> tuple:
        return self.indices[1:] if self.kind == "A" else self.indices

    @property
    def degree(self) -> int:
        return len(self.indices)

    def __str__(self):
        if not self.indices:
            return "1"
        return "^".join("dy" if i == 0 else f"dx{i}" for i in self.indices)


def wedge_index(a: int, K: tuple):
    """``dx^a ^ dx^K`` as ``(sign, sorted indices)``, or ``None`` if it vanishes."""
    if a in K:
        return None
    pos = sum(1 for i in K if i < a)
    return (-1) ** pos, tuple(sorted(K + (a,)))


def contract_index(a: int, K: tuple):
    """``iota(d_a) dx^K`` as ``(sign, indices)``, or ``None`` if ``a`` is absent."""
    if a not in K:
        return None
    pos = K.index(a)
    return (-1) ** pos, K[:pos] + K[pos + 1 :]


# ---------------------------------------------------------------------------
# coefficient algebra


@dataclass(frozen=True)
class Monomial:
    """``y^mu (log y)^logpow e^{kappa y} c^{(c_order)}(log y) d^{b_orders} b(x) e^{i xi.x}``."""

    mu: complex = 0j
    logpow: int = 0
    kappa: complex = 0j
    c: Plateau | None = None
    c_order: int = 0
    b: TensorProfile | None = None
    b_orders: tuple = ()
    xi: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "mu", complex(self.mu))
        object.__setattr__(self, "kappa", complex(self.kappa))
        object.__setattr__(self, "xi", tuple(float(v) for v in self.xi))
        if self.b is not None and not self.b_orders:
            object.__setattr__(self, "b_orders", (0,) * self.b.dim)
        object.__setattr__(self, "b_orders", tuple(int(o) for o in self.b_orders))
        if self.logpow < 0 or self.c_order < 0:
            raise ValueError("powers and derivative orders must be nonnegative")

    def shift(self, s) -> "Monomial":
        """Multiply by ``y^s``."""
        return replace(self, mu=self.mu + s)

    @property
    def is_pure_power(self) -> bool:
        return (
            self.logpow == 0
            and self.kappa == 0
            and self.c is None
            and self.b is None
            and not any(self.xi)
        )

    @property
    def t_support(self):
        """Support in ``t = log y`` (``None`` if not compact)."""
        return None if self.c is None else self.c.support

    def d_y(self) -> list:
        """``d/dy`` as a list of ``(factor, Monomial)``."""
        out = []
        if self.mu != 0:
            out.append((self.mu, self.shift(-1)))
        if self.logpow:
            out.append((self.logpow, replace(self.shift(-1), logpow=self.logpow - 1)))
        if self.kappa != 0:
            out.append((self.kappa, self))
        if self.c is not None:
            out.append((1.0, replace(self.shift(-1), c_order=self.c_order + 1)))
        return out

    def d_x(self, i: int) -> list:
        """``d/dx_i`` for ``i`` in ``1..N``."""
        out = []
        if self.b is not None:
            orders = list(self.b_orders)
            orders[i - 1] += 1
            out.append((1.0, replace(self, b_orders=tuple(orders))))
        if len(self.xi) >= i and self.xi[i - 1] != 0:
            out.append((1j * self.xi[i - 1], self))
        return out

    def partial(self, a: int) -> list:
        return self.d_y() if a == 0 else self.d_x(a)

    def t_part(self, t, extra: float = 0.0):
        """Factor depending on ``t = log y``, times ``y^extra``."""
        t = np.asarray(t, dtype=float)
        expo = (self.mu + extra) * t
        if self.kappa != 0:
            expo = expo + self.kappa * np.exp(t)
        val = np.exp(expo)
        if self.logpow:
            val = val * t**self.logpow
        if self.c is not None:
            val = val * self.c(t, self.c_order)
        return val

    def x_part(self, xs):
        """Factor depending on ``x``; ``xs`` is a sequence of coordinate arrays."""
        val = np.ones(np.broadcast(*xs).shape if len(xs) else (), dtype=complex)
        if self.b is not None:
            val = val * self.b(xs, self.b_orders)
        if any(self.xi):
            phase = sum(f * x for f, x in zip(self.xi, xs) if f)
            val = val * np.exp(1j * phase)
        return val

    def __call__(self, y, xs):
        y = np.asarray(y, dtype=float)
        return self.t_part(np.log(y)) * self.x_part(xs)

    def describe(self) -> dict:
        out = {"mu": [self.mu.real, self.mu.imag]}
        if self.logpow:
            out["logpow"] = self.logpow
        if self.kappa:
            out["kappa"] = [self.kappa.real, self.kappa.imag]
        if self.c is not None:
            out["c"] = {"plateau": [self.c.lo, self.c.hi, self.c.ramp], "order": self.c_order}
        if self.b is not None:
            out["b"] = {
                "bumps": [[f.center, f.halfwidth] for f in self.b.factors],
                "orders": list(self.b_orders),
            }
        if any(self.xi):
            out["xi"] = list(self.xi)
        return out


def _accumulate(target: dict, key, value):
    target[key] = target.get(key, 0) + value


# ---------------------------------------------------------------------------
# forms


@dataclass(frozen=True)
class TemplateForm:
    """Homogeneous k-form on H^{N+1}, immutable."""

    N: int
    degree: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (basis, mono), const in self.terms.items():
            if basis.degree != self.degree:
                raise ValueError(f"term {basis} has degree {basis.degree}, expected {self.degree}")
            if basis.indices and basis.indices[-1] > self.N:
                raise ValueError(f"basis {basis} exceeds ambient dimension N={self.N}")
            if const != 0:
                clean[(basis, mono)] = complex(const)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def single(cls, N: int, basis: BasisForm, mono: Monomial | None = None, const=1.0):
        return cls(N, basis.degree, {(basis, mono or Monomial()): const})

    @classmethod
    def zero(cls, N: int, degree: int):
        return cls(N, degree, {})

    def __iter__(self):
        for (basis, mono), const in self.terms.items():
            yield basis, mono, const

    def __len__(self):
        return len(self.terms)

    def _check(self, other):
        if not isinstance(other, TemplateForm):
            return NotImplemented
        if (other.N, other.degree) != (self.N, self.degree):
            raise ValueError("forms must share ambient dimension and degree")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for key, const in other.terms.items():
            _accumulate(terms, key, const)
        return TemplateForm(self.N, self.degree, terms)

    def __mul__(self, scalar):
        if isinstance(scalar, TemplateForm):
            return NotImplemented
        return TemplateForm(self.N, self.degree, {k: v * scalar for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    @property
    def bases(self) -> list:
        return sorted({basis for basis, _, _ in self})

    def evaluate(self, y, xs) -> dict:
        """Coordinate coefficients ``{basis: array}`` at points ``(y, xs)``."""
        out = {}
        for basis, mono, const in self:
            val = const * mono(y, xs)
            out[basis] = out.get(basis, 0) + val
        return out

    def pointwise_norm(self, y, xs):
        """Riemannian norm ``|omega|`` at the given points."""
        y = np.asarray(y, dtype=float)
        sq = 0.0
        for basis, val in self.evaluate(y, xs).items():
            sq = sq + np.abs(val * y**basis.degree) ** 2
        return np.sqrt(sq) * np.ones(np.broadcast(y, *xs).shape)

    def max_abs_coefficient(self, y, xs) -> float:
        vals = self.evaluate(y, xs)
        if not vals:
            return 0.0
        return float(max(np.max(np.abs(v)) for v in vals.values()))

    def describe(self) -> dict:
        return {
            "N": self.N,
            "degree": self.degree,
            "terms": [
                {"basis": list(b.indices), "const": [c.real, c.imag], **m.describe()}
                for (b, m), c in sorted(self.terms.items(), key=lambda kv: str(kv[0][0]))
            ],
        }


# ---------------------------------------------------------------------------
# Levi-Civita connection on basis forms


def covariant_derivative(basis: BasisForm, direction: int, N: int) -> TemplateForm:
    """``D_{d_direction}`` of a basis form (``direction`` 0 = ``d/dy``).

    ``D_y e = (k/y) e`` for either kind; ``D_{x_i}(dy ^ dx^I) = -(1/y) dx^i ^ dx^I``
    and ``D_{x_i}(dx^J) = -(1/y) iota(d_{x_i})(dy ^ dx^J)``.
    """
    k = basis.degree
    inv_y = Monomial(mu=-1)
    if not 0 <= direction <= N:
        raise ValueError(f"direction {direction} out of range for N={N}")
    if direction == 0:
        return TemplateForm.single(N, basis, inv_y, k) if k else TemplateForm.zero(N, k)
    i = direction
    if basis.kind == "A":
        res = wedge_index(i, basis.multi_index)
        if res is None:
            return TemplateForm.zero(N, k)
        sign, K = res
        return TemplateForm.single(N, BasisForm(K), inv_y, -sign)
    res = contract_index(i, (0,) + basis.indices)
    if res is None:
        return TemplateForm.zero(N, k)
    sign, K = res
    return TemplateForm.single(N, BasisForm(K), inv_y, -sign)


# ---------------------------------------------------------------------------
# d, delta, Laplacian


def exterior_derivative(form: TemplateForm) -> TemplateForm:
    """Coordinate exterior derivative ``d``."""
    N = form.N
    terms = {}
    for basis, mono, const in form:
        for a in range(N + 1):
            res = wedge_index(a, basis.indices)
            if res is None:
                continue
            sign, K = res
            for fac, m2 in mono.partial(a):
                _accumulate(terms, (BasisForm(K), m2), sign * fac * const)
    return TemplateForm(N, form.degree + 1, terms)


def codifferential(form: TemplateForm) -> TemplateForm:
    """Codifferential ``delta`` for the hyperbolic metric.

    Uses the conformal-change identity for ``g = y^{-2} g_0`` on k-forms in
    dimension ``n = N+1``: ``delta = y^2 delta_0 + (n - 2k) y iota(d_y)``,
    with the Euclidean ``delta_0(f dx^K) = -sum_a d_a f iota(d_a) dx^K``.
    """
    N, k = form.N, form.degree
    if k == 0:
        raise ValueError("the codifferential of a 0-form vanishes identically")
    n = N + 1
    terms = {}
    for basis, mono, const in form:
        for a in basis.indices:
            sign, K = contract_index(a, basis.indices)
            for fac, m2 in mono.partial(a):
                _accumulate(terms, (BasisForm(K), m2.shift(2)), -sign * fac * const)
        if basis.kind == "A" and n != 2 * k:
            _accumulate(terms, (BasisForm(basis.indices[1:]), mono.shift(1)), (n - 2 * k) * const)
    return TemplateForm(N, k - 1, terms)


def function_laplacian(mono: Monomial, N: int) -> list:
    """Hyperbolic Laplacian of a scalar monomial as ``[(factor, Monomial)]``.

    ``Delta f = -y^2 f_yy + (N-1) y f_y - y^2 sum_i f_{x_i x_i}``.
    """
    out = defaultdict(complex)
    for f1, m1 in mono.d_y():
        out[m1.shift(1)] += (N - 1) * f1
        for f2, m2 in m1.d_y():
            out[m2.shift(2)] += -f1 * f2
    for i in range(1, N + 1):
        for f1, m1 in mono.d_x(i):
            for f2, m2 in m1.d_x(i):
                out[m2.shift(2)] += -f1 * f2
    return [(v, m) for m, v in out.items() if v != 0]


def base_eigenvalue(basis: BasisForm, mu: complex, N: int) -> complex:
    """Eigenvalue of the formal eigenform ``y^mu * basis``.

    ``-(mu+1)(mu-N-1+2k)`` for ``dy ^ dx^I`` and ``-mu(mu-N+2k)`` for ``dx^J``.
    """
    k = basis.degree
    if basis.kind == "A":
        return -(mu + 1) * (mu - N - 1 + 2 * k)
    return -mu * (mu - N + 2 * k)


def laplacian(form: TemplateForm, method: str = "product", split_power: bool = True) -> TemplateForm:
    """Hodge Laplacian ``d delta + delta d`` of a template form.

    ``method='product'`` writes each term as ``f * (y^mu basis)`` and applies
    ``Delta(f eta) = f Delta eta - 2 nabla_{grad f} eta + (Delta f) eta`` with
    the closed-form base eigenvalues.  With ``split_power=False`` the whole
    coefficient goes into ``f`` and the base is ``y^0 basis``.
    ``method='hodge'`` composes :func:`exterior_derivative` and
    :func:`codifferential` directly.
    """
    if method == "hodge":
        out = TemplateForm.zero(form.N, form.degree)
        if form.degree < form.N + 1:
            out = out + codifferential(exterior_derivative(form))
        if form.degree > 0:
            out = out + exterior_derivative(codifferential(form))
        return out
    if method != "product":
        raise ValueError(f"unknown method {method!r}")

    N, k = form.N, form.degree
    terms = {}
    for basis, mono, const in form:
        mu = mono.mu if split_power else 0j
        f = mono.shift(-mu)
        # f * Delta(y^mu e)
        _accumulate(terms, (basis, mono), const * base_eigenvalue(basis, mu, N))
        # (Delta f) y^mu e
        for fac, m in function_laplacian(f, N):
            _accumulate(terms, (basis, m.shift(mu)), const * fac)
        # -2 nabla_{grad f}(y^mu e), grad f = y^2 (f_y d_y + sum f_{x_i} d_{x_i})
        for fac, m in f.d_y():
            _accumulate(terms, (basis, m.shift(mu + 1)), -2 * const * fac * (mu + k))
        for i in range(1, N + 1):
            dfi = f.d_x(i)
            if not dfi:
                continue
            for cbasis, cmono, cconst in covariant_derivative(basis, i, N):
                for fac, m in dfi:
                    key = (cbasis, m.shift(2 + mu + cmono.mu))
                    _accumulate(terms, key, -2 * const * fac * cconst)
    return TemplateForm(N, k, terms)


def formal_eigenvalue(form: TemplateForm, method: str = "product", tol: float = 1e-10) -> complex:
    """``lambda`` with ``Delta form = lambda form``, fitted at fixed sample points.

    Collocation instead of matching terms keeps the result independent of
    round-off in the monomial exponents.  Raises ``ValueError`` when the
    relative residual exceeds ``tol``.
    """
    if not len(form):
        raise ValueError("the zero form has no eigenvalue")
    rng = np.random.default_rng(0)
    y = np.exp(rng.uniform(-1.0, 1.0, 16))
    xs = [rng.uniform(-0.5, 0.5, 16) for _ in range(form.N)]
    f = form.evaluate(y, xs)
    g = laplacian(form, method=method).evaluate(y, xs)
    keys = sorted(set(f) | set(g))
    fv = np.concatenate([np.broadcast_to(f.get(b, 0j), y.shape) for b in keys])
    gv = np.concatenate([np.broadcast_to(g.get(b, 0j), y.shape) for b in keys])
    norm = float(np.linalg.norm(fv))
    if norm == 0:
        raise ValueError("form vanishes at the sample points")
    lam = complex(np.vdot(fv, gv) / norm**2)
    if np.linalg.norm(gv - lam * fv) > tol * max(1.0, abs(lam)) * norm:
        raise ValueError("form is not a formal eigenform")
    return lam


# ---------------------------------------------------------------------------
# quadrature


@dataclass(frozen=True)
class QuadratureGrid:
    """Tensor quadrature in ``t = log y`` and ``x``.

    The ``t`` range is cut at the breakpoints of the coefficient profiles and
    each gap is filled with cells growing geometrically away from its ends
    (first width ``min_cell``, ratio ``growth``).  Each ``x`` axis of the box
    ``[-x_half_width, x_half_width]`` is graded the same way from both ends,
    starting at ``x_min_cell * x_half_width``.  Every cell carries a
    Gauss-Legendre rule of ``order`` nodes.
    """

    log_y_min: float
    log_y_max: float
    x_half_width: float = 1.0
    x_min_cell: float = 0.05
    x_growth: float = 2.0
    order: int = 8
    min_cell: float = 0.0625
    growth: float = 1.5

    def __post_init__(self):
        if not self.log_y_max > self.log_y_min:
            raise ValueError("empty y range")
        if self.x_half_width <= 0 or not 0 < self.x_min_cell <= 1 or self.order < 1:
            raise ValueError("invalid x grid")

    @classmethod
    def covering(cls, form: TemplateForm, margin: float = 0.5, **kw) -> "QuadratureGrid":
        """Grid containing the supports of every profile of ``form``."""
        lo, hi, half = math.inf, -math.inf, 0.0
        for _, mono, _ in form:
            sup = mono.t_support
            if sup is None:
                raise ValueError("form has a coefficient that is not compactly supported in log y")
            lo, hi = min(lo, sup[0]), max(hi, sup[1])
            if mono.b is None:
                raise ValueError("form has a coefficient that is not compactly supported in x")
            half = max(half, max(max(abs(a), abs(b)) for a, b in mono.b.box))
        if not math.isfinite(lo):
            raise ValueError("cannot build a grid for the zero form")
        kw.setdefault("x_half_width", half)
        return cls(lo - margin, hi + margin, **kw)

    def t_nodes(self, breakpoints=()):
        pts = sorted({self.log_y_min, self.log_y_max} | {b for b in breakpoints if self.log_y_min < b < self.log_y_max})
        edges = []
        for a, b in zip(pts, pts[1:]):
            edges.extend(_graded_edges(a, b, self.min_cell, self.growth)[:-1])
        edges.append(pts[-1])
        return _gauss_composite(np.asarray(edges), self.order)

    def x_nodes(self):
        L = self.x_half_width
        edges = _graded_edges(-L, L, self.x_min_cell * L, self.x_growth)
        return _gauss_composite(np.asarray(edges), self.order)


def _graded_edges(a: float, b: float, h0: float, growth: float) -> list:
    mid = 0.5 * (a + b)
    left = [a]
    w = h0
    while left[-1] + w < mid:
        left.append(left[-1] + w)
        w *= growth
    right = [b - (e - a) for e in reversed(left)]
    return left + right if left[-1] < right[0] else left[:-1] + right


def _gauss_composite(edges, order):
    g, w = np.polynomial.legendre.leggauss(order)
    a, b = edges[:-1, None], edges[1:, None]
    nodes = 0.5 * (b - a) * g[None, :] + 0.5 * (a + b)
    weights = 0.5 * (b - a) * w[None, :]
    return nodes.ravel(), weights.ravel()


def _breakpoints(forms) -> set:
    pts = set()
    for form in forms:
        for _, mono, _ in form:
            if mono.c is not None:
                pts.update(mono.c.breakpoints)
    return pts


def _x_factors(form: TemplateForm, xs_flat) -> dict:
    """Per basis: the monomials, their constants and stacked ``x`` factors."""
    by_basis = defaultdict(list)
    for basis, mono, const in form:
        by_basis[basis].append((mono, const))
    return {
        basis: (items, np.stack([mono.x_part(xs_flat) for mono, _ in items], axis=0))
        for basis, items in by_basis.items()
    }


def _component_blocks(factors: dict, t, extra: float) -> dict:
    """``{basis: array(len(t), n_x)}`` of coefficients scaled by ``y^(k+extra)``."""
    blocks = {}
    for basis, (items, X) in factors.items():
        T = np.stack([const * mono.t_part(t, basis.degree + extra) for mono, const in items], axis=1)
        blocks[basis] = T @ X
    return blocks


def _x_tensor(grid: QuadratureGrid, N: int):
    xn, xw = grid.x_nodes()
    mesh = np.meshgrid(*([xn] * N), indexing="ij")
    wmesh = np.meshgrid(*([xw] * N), indexing="ij")
    xs_flat = [m.ravel() for m in mesh]
    w = np.prod([m.ravel() for m in wmesh], axis=0)
    return xs_flat, w, len(xn)


def lp_norm(form: TemplateForm, p: float, grid: QuadratureGrid, cover_tol: float = 1e-8, chunk: int = 16) -> float:
    """``(int |form|^p dv)^(1/p)`` with ``dv = y^{-N-1} dy dx``.

    Integrates in ``t = log y`` so that ``|form|^p dv = |form y^{-N/p}|^p dt dx``.
    ``p = inf`` gives the maximum of ``|form|`` over the grid nodes.  Warns
    with :class:`GridCoverageWarning` when the integrand on the outer grid
    nodes exceeds ``cover_tol`` times its maximum.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if not len(form):
        return 0.0
    N = form.N
    inf = math.isinf(p)
    extra = 0.0 if inf else -N / p
    tn, tw = grid.t_nodes(_breakpoints([form]))
    xs_flat, xw, nx = _x_tensor(grid, N)

    factors = _x_factors(form, xs_flat)
    total, peak, edge = 0.0, 0.0, 0.0
    x_edge = _x_edge_mask(nx, N)
    for start in range(0, len(tn), chunk):
        t = tn[start : start + chunk]
        sq = sum(np.abs(v) ** 2 for v in _component_blocks(factors, t, extra).values())
        mag = np.sqrt(sq)
        if inf:
            total = max(total, float(mag.max()))
            continue
        integrand = mag**p
        total += float(tw[start : start + chunk] @ integrand @ xw)
        peak = max(peak, float(integrand.max()))
        edge = max(edge, float(integrand[:, x_edge].max()) if x_edge.any() else 0.0)
        if start == 0:
            edge = max(edge, float(integrand[0].max()))
        if start + chunk >= len(tn):
            edge = max(edge, float(integrand[-1].max()))
    if inf:
        return total
    if peak > 0 and edge > cover_tol * peak:
        warnings.warn(
            f"integrand on the grid boundary is {edge / peak:.2e} of its maximum",
            GridCoverageWarning,
            stacklevel=2,
        )
    return total ** (1.0 / p)


def _x_edge_mask(nx: int, N: int):
    idx = np.indices((nx,) * N).reshape(N, -1)
    return np.any((idx == 0) | (idx == nx - 1), axis=0)


def inner_product(alpha: TemplateForm, beta: TemplateForm, grid: QuadratureGrid, chunk: int = 16) -> complex:
    """``int <alpha, conj(beta)> dv`` for forms of equal degree."""
    if (alpha.N, alpha.degree) != (beta.N, beta.degree):
        raise ValueError("forms must share ambient dimension and degree")
    N = alpha.N
    tn, tw = grid.t_nodes(_breakpoints([alpha, beta]))
    xs_flat, xw, _ = _x_tensor(grid, N)
    # y^{2k} from the basis norms and y^{-N-1} y from the measure
    extra = -(N / 2)
    fa, fb = _x_factors(alpha, xs_flat), _x_factors(beta, xs_flat)
    total = 0j
    for start in range(0, len(tn), chunk):
        t = tn[start : start + chunk]
        A = _component_blocks(fa, t, extra)
        B = _component_blocks(fb, t, extra)
        s = sum(A[b] * np.conj(B[b]) for b in A.keys() & B.keys())
        if isinstance(s, np.ndarray):
            total += tw[start : start + chunk] @ s @ xw
    return complex(total)


def y_integral(form: TemplateForm, p: float, xs, y_max: float = np.inf) -> float:
    """``int_0^y_max |form(y, xs)|^p y^{-N-1} dy`` at a fixed ``x``."""
    from scipy.integrate import quad

    N = form.N

    def integrand(t):
        y = math.exp(t)
        val = form.pointwise_norm(np.array([y]), [np.array([x]) for x in xs])[0]
        return val**p * y ** (-N)

    t_hi = math.log(y_max) if math.isfinite(y_max) else 60.0
    val, _ = quad(integrand, -60.0, t_hi, limit=400)
    return val


# ---------------------------------------------------------------------------
# approximate eigenforms and the harmonic middle-degree form


def weyl_exponent(spec: RegionSpec, s: float) -> complex:
    """``mu = N/p - k + i s`` of the approximate eigenforms."""
    return spec.N / spec.p - spec.k + 1j * s


def weyl_eigenvalue(spec: RegionSpec, s: float) -> complex:
    """``lambda = -mu (mu + 2k - N)``; equals ``boundary_point(spec, s)``."""
    mu = weyl_exponent(spec, s)
    return -mu * (mu + 2 * spec.k - spec.N)


def weyl_form(n: int, spec: RegionSpec, s: float, b: TensorProfile | None = None, J=None) -> TemplateForm:
    """Approximate eigenform ``c_n(log y) b(x) y^{N/p - k + is} dx^J``.

    ``c_n`` is a plateau supported in ``[-n^{3p}, log n]`` that equals 1 on
    ``[-n^{3p} + 1, log n - 1]``; ``b`` defaults to a tensor bump on
    ``[-1, 1]^N``.
    """
    N, k, p = spec.N, spec.k, spec.p
    if int(n) != n or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n}")
    if p > 2:
        raise ValueError("approximate eigenforms are built for 1 <= p <= 2")
    if 2 * k > N + 1 or k > N:
        raise ValueError(f"degree {k} above the middle; use the dual degree {N + 1 - k}")
    J = tuple(range(1, k + 1)) if J is None else tuple(J)
    if len(J) != k:
        raise ValueError("multi-index length must equal the degree")
    c_n = Plateau(-float(n) ** (3 * p), math.log(n), 1.0)
    b = b or TensorProfile.bump(N)
    mono = Monomial(mu=weyl_exponent(spec, s), c=c_n, b=b)
    return TemplateForm.single(N, BasisForm.B(J), mono)


def weyl_residual(n: int, spec: RegionSpec, s: float, **kw) -> TemplateForm:
    omega = weyl_form(n, spec, s, **kw)
    return laplacian(omega) - weyl_eigenvalue(spec, s) * omega


def weyl_quotient(n: int, spec: RegionSpec, s: float, grid: QuadratureGrid | None = None, **kw) -> float:
    """``||Delta omega_n - lambda omega_n||_p / ||omega_n||_p``."""
    omega = weyl_form(n, spec, s, **kw)
    resid = laplacian(omega) - weyl_eigenvalue(spec, s) * omega
    grid = grid or QuadratureGrid.covering(omega)
    return lp_norm(resid, spec.p, grid) / lp_norm(omega, spec.p, grid)


def middle_harmonic(nu: float, j: int, I, N: int) -> TemplateForm:
    """``e^{-sqrt(nu) y} e^{i sqrt(nu) x_j} (dx^j ^ dx^I + i dy ^ dx^I)``, degree (N+1)/2."""
    if N % 2 != 1:
        raise ValueError("middle-degree harmonic forms need N odd")
    if nu <= 0:
        raise ValueError("nu must be positive")
    I = tuple(sorted(I))
    if len(I) != (N - 1) // 2:
        raise ValueError(f"|I| must be {(N - 1) // 2}")
    if not 1 <= j <= N or any(not 1 <= i <= N for i in I):
        raise ValueError("indices out of range")
    res = wedge_index(j, I)
    if res is None:
        raise ValueError(f"dx^{j} already occurs in dx^I")
    sign, JI = res
    r = math.sqrt(nu)
    xi = tuple(r if i == j else 0.0 for i in range(1, N + 1))
    mono = Monomial(kappa=-r, xi=xi)
    terms = {(BasisForm.B(JI), mono): sign, (BasisForm.A(I), mono): 1j}
    return TemplateForm(N, (N + 1) // 2, terms)
