"""Truncated weight modules: Verma modules and the intermediate series.

A module only knows a finite window of weight spaces. Any action whose
target weight lies outside that window raises :class:`BoundaryError`
instead of returning zero, because a silent zero would manufacture fake
kernel vectors.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from . import lie, linalg
from .cartan import rational_roots
from .errors import BoundaryError
from .lie import C, LieElement
from .pbw import HW, UEAElement, eval_cartan_tail, normal_form

__all__ = [
    "WeightVector",
    "Eq10Pair",
    "TruncatedWeightModule",
    "VermaModule",
    "IntermediateSeriesModule",
    "verma",
    "intermediate_series",
    "partitions",
    "action_defects",
    "DEFAULT_DEPTH",
    "DEFAULT_WINDOW",
]

DEFAULT_DEPTH = 8
DEFAULT_WINDOW = (-10, 10)


@functools.lru_cache(maxsize=None)
def partitions(n: int, largest: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Partitions of ``n`` with parts weakly decreasing, reverse-lex order."""
    if largest is None:
        largest = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        out.extend((first,) + rest for rest in partitions(n - first, first))
    return tuple(out)


class WeightVector:
    """A vector in a single weight space, by coordinates on basis labels."""

    __slots__ = ("weight", "_coords")

    def __init__(self, weight, coords: Mapping | None = None):
        self.weight = Fraction(weight)
        self._coords = {k: Fraction(q) for k, q in (coords or {}).items() if q}

    @property
    def coords(self) -> dict:
        return dict(self._coords)

    def is_zero(self) -> bool:
        return not self._coords

    def _check(self, other):
        if other.weight != self.weight:
            raise ValueError(f"cannot combine weights {self.weight} and {other.weight}")

    def __add__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        self._check(other)
        out = dict(self._coords)
        for k, q in other._coords.items():
            out[k] = out.get(k, 0) + q
        return WeightVector(self.weight, out)

    def __neg__(self):
        return WeightVector(self.weight, {k: -q for k, q in self._coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, q):
        if isinstance(q, (int, Fraction)):
            return WeightVector(self.weight, {k: v * q for k, v in self._coords.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        return self.weight == other.weight and self._coords == other._coords

    def __hash__(self):
        return hash((self.weight, frozenset(self._coords.items())))

    def __repr__(self):
        return f"WeightVector({self.weight}, {dict(sorted(self._coords.items()))})"


@dataclass(frozen=True)
class Eq10Pair:
    """Vectors with ``e1 x = 0``, ``e-1 y = 0``, ``x = e-2 y``, ``e2 x = tau y``."""

    x: WeightVector
    y: WeightVector
    tau: Fraction

    def holds_in(self, module: "TruncatedWeightModule") -> bool:
        return (
            module.act(1, self.x).is_zero()
            and module.act(-1, self.y).is_zero()
            and module.act(-2, self.y) == self.x
            and module.act(2, self.x) == self.tau * self.y
        )


def _index(g) -> int:
    if g is C:
        return 0
    if isinstance(g, LieElement):
        raise TypeError("use act_lie for Lie algebra elements")
    return int(g)


class TruncatedWeightModule:
    """Shared machinery; subclasses supply weight spaces and basis actions."""

    family = "abstract"
    chi = Fraction(0)

    def space(self, weight) -> tuple:
        """Basis labels of the weight space; BoundaryError outside the window."""
        raise NotImplementedError

    def window_weights(self) -> list[Fraction]:
        raise NotImplementedError

    def _act_basis(self, j: int, label) -> dict:
        raise NotImplementedError

    # -- queries -----------------------------------------------------------

    def weight_dims(self) -> dict[Fraction, int]:
        return {w: len(self.space(w)) for w in self.window_weights()}

    def support(self) -> set[Fraction]:
        return {w for w, d in self.weight_dims().items() if d}

    def basis(self, weight) -> list[WeightVector]:
        weight = Fraction(weight)
        return [WeightVector(weight, {lab: 1}) for lab in self.space(weight)]

    def vector(self, weight, coords: Mapping) -> WeightVector:
        weight = Fraction(weight)
        labels = set(self.space(weight))
        unknown = [k for k in coords if k not in labels]
        if unknown:
            raise ValueError(f"labels {unknown} are not in the weight space at {weight}")
        return WeightVector(weight, coords)

    def _labels_of(self, v: WeightVector) -> tuple:
        labels = self.space(v.weight)
        if any(k not in labels for k in v._coords):
            raise ValueError(f"vector does not belong to the weight space at {v.weight}")
        return labels

    def act(self, g, v: WeightVector) -> WeightVector:
        """Image of ``v`` under ``e(g)`` (an integer) or ``c`` (:data:`C`)."""
        self._labels_of(v)
        if g is C:
            return v * self.chi
        j = _index(g)
        if j == 0:
            return v * v.weight
        target = v.weight + j
        self.space(target)
        out: dict = {}
        for lab, q in v._coords.items():
            for t, r in self._act_basis(j, lab).items():
                out[t] = out.get(t, 0) + q * r
        return WeightVector(target, out)

    def act_lie(self, x: LieElement, v: WeightVector) -> WeightVector:
        degrees = {0 if g is C else g for g in x.terms}
        if len(degrees) > 1:
            raise ValueError("act_lie needs a homogeneous Lie element")
        target = v.weight + (degrees.pop() if degrees else 0)
        out = WeightVector(target)
        for g, q in x.terms.items():
            out = out + q * self.act(g, v)
        return out

    def act_element(self, u: UEAElement, v: WeightVector) -> WeightVector:
        """Apply each monomial of ``u`` factor by factor, right to left."""
        degrees = {m.degree for m in u.terms}
        if len(degrees) > 1:
            raise ValueError("act_element needs a homogeneous element; split with degree_components")
        out = WeightVector(v.weight + (degrees.pop() if degrees else 0))
        for m, q in u.terms.items():
            w = v * (self.chi ** m.central)
            for i in reversed(m.letters()):
                w = self.act(i, w)
            out = out + q * w
        return out

    def action_matrix(self, g, weight) -> list[list[Fraction]]:
        """Matrix of ``e(g)`` from the space at ``weight`` to its image space."""
        weight = Fraction(weight)
        src = self.space(weight)
        j = _index(g)
        tgt = self.space(weight + j)
        pos = {lab: r for r, lab in enumerate(tgt)}
        mat = [[Fraction(0)] * len(src) for _ in tgt]
        for col, lab in enumerate(src):
            img = self.act(g, WeightVector(weight, {lab: 1}))
            for t, q in img._coords.items():
                mat[pos[t]][col] = q
        return mat

    def kernel(self, weight, probes: Iterable) -> list[WeightVector]:
        """Basis of the joint kernel of the probe generators at ``weight``."""
        weight = Fraction(weight)
        src = self.space(weight)
        rows = []
        for g in probes:
            rows.extend(self.action_matrix(g, weight))
        if not src:
            return []
        return [
            WeightVector(weight, dict(zip(src, vec)))
            for vec in linalg.nullspace(rows, len(src))
        ]

    def hw_detector(self, v: WeightVector) -> bool:
        return self.act(1, v).is_zero() and self.act(2, v).is_zero()

    def lw_detector(self, v: WeightVector) -> bool:
        return self.act(-1, v).is_zero() and self.act(-2, v).is_zero()

    def eq10_pair_search(self, mu) -> list[Eq10Pair]:
        """All rays ``y`` at weight ``mu + 1`` completing an :class:`Eq10Pair`.

        Conditions: ``e(-1) y = 0``, ``e(1) e(-2) y = 0`` and
        ``e(2) e(-2) y = tau y`` with ``tau != 0``. Candidate ``tau`` are the
        rational eigenvalues of ``e(2) e(-2)`` on the weight space; each
        returned ``y`` is a basis vector of the solution space for its ``tau``.
        """
        mu = Fraction(mu)
        wy, wx = mu + 1, mu - 1
        lower = self.action_matrix(-1, wy)
        down2 = self.action_matrix(-2, wy)
        up1 = self.action_matrix(1, wx)
        up2 = self.action_matrix(2, wx)
        ys = self.space(wy)
        n = len(ys)
        if not n or not self.space(wx):
            return []
        killed = linalg.matmul(up1, down2)
        loop = linalg.matmul(up2, down2)
        pairs = []
        for tau in sorted(rational_roots(linalg.charpoly(loop))):
            if tau == 0:
                continue
            shifted = [[loop[i][k] - (tau if i == k else 0) for k in range(n)] for i in range(n)]
            for vec in linalg.nullspace(lower + killed + shifted, n):
                y = WeightVector(wy, dict(zip(ys, vec)))
                pairs.append(Eq10Pair(self.act(-2, y), y, tau))
        return pairs


class VermaModule(TruncatedWeightModule):
    """Verma module truncated at ``depth`` levels below the highest weight.

    The basis at level ``n`` is ``e(-l1) ... e(-lk) v`` for the partitions
    ``l1 >= ... >= lk`` of ``n``; labels are the partitions themselves.
    """

    family = "verma"

    def __init__(self, h, chi, depth: int = DEFAULT_DEPTH):
        if depth < 0:
            raise ValueError("depth must be nonnegative")
        self.h = Fraction(h)
        self.chi = Fraction(chi)
        self.depth = int(depth)
        self._cache: dict = {}

    def __repr__(self):
        return f"verma(h={self.h}, chi={self.chi}, depth={self.depth})"

    def highest_weight_vector(self) -> WeightVector:
        return WeightVector(self.h, {(): 1})

    def window_weights(self):
        return [self.h - n for n in range(self.depth + 1)]

    def space(self, weight):
        n = self.h - Fraction(weight)
        if n.denominator != 1 or n < 0:
            return ()
        if n > self.depth:
            raise BoundaryError(f"weight {weight} is {n} levels deep; window depth is {self.depth}")
        return partitions(int(n))

    def _act_basis(self, j, label):
        key = (lie.revision(), j, label)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        u = normal_form((j,) + tuple(-p for p in label), HW)
        # positive generators at the right end kill the highest weight vector
        kept = UEAElement(
            {m: q for m, q in u.terms.items() if all(i <= 0 for i in m.indices())}, HW
        )
        out = {}
        for m, q in eval_cartan_tail(kept, self.h, self.chi).terms.items():
            lab = tuple(-i for i in m.letters())
            out[lab] = out.get(lab, 0) + q
        out = {k: q for k, q in out.items() if q}
        self._cache[key] = out
        return out


class IntermediateSeriesModule(TruncatedWeightModule):
    """Basis ``v_k`` at weight ``a + k`` with ``e(n) v_k = (a + k + n b) v_{k+n}``; ``c`` acts by 0."""

    family = "intermediate"

    def __init__(self, a, b, k_min: int = DEFAULT_WINDOW[0], k_max: int = DEFAULT_WINDOW[1]):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.k_min = int(k_min)
        self.k_max = int(k_max)
        self.chi = Fraction(0)

    def __repr__(self):
        return f"intermediate_series(a={self.a}, b={self.b}, k_min={self.k_min}, k_max={self.k_max})"

    def basis_vector(self, k: int) -> WeightVector:
        return WeightVector(self.a + k, {k: 1})

    def window_weights(self):
        return [self.a + k for k in range(self.k_min, self.k_max + 1)]

    def space(self, weight):
        k = Fraction(weight) - self.a
        if k.denominator != 1:
            return ()
        k = int(k)
        if not self.k_min <= k <= self.k_max:
            raise BoundaryError(f"v_{k} is outside the window [{self.k_min}, {self.k_max}]")
        return (k,)

    def _act_basis(self, j, k):
        return {k + j: self.a + k + j * self.b}


def verma(h, chi, depth: int = DEFAULT_DEPTH) -> VermaModule:
    return VermaModule(h, chi, depth)


def intermediate_series(a, b, k_min: int = DEFAULT_WINDOW[0], k_max: int = DEFAULT_WINDOW[1]) -> IntermediateSeriesModule:
    return IntermediateSeriesModule(a, b, k_min, k_max)


def action_defects(
    module: TruncatedWeightModule, indices: Sequence[int] = range(-2, 3)
) -> tuple[int, list[tuple[int, int, WeightVector]]]:
    """Check ``[x, y] v = x(y v) - y(x v)`` on every in-window basis vector.

    Returns the number of checked cases and the failing ``(x, y, v)``.
    Cases where some intermediate image leaves the window are skipped.
    """
    checked, bad = 0, []
    for w in module.window_weights():
        for v in module.basis(w):
            for x in indices:
                for y in indices:
                    try:
                        lhs = WeightVector(v.weight + x + y)
                        for g, q in lie.bracket_gen(x, y).terms.items():
                            lhs = lhs + q * module.act(g, v)
                        rhs = module.act(x, module.act(y, v)) - module.act(y, module.act(x, v))
                    except BoundaryError:
                        continue
                    checked += 1
                    if lhs != rhs:
                        bad.append((x, y, v))
    return checked, bad


def iter_basis(module: TruncatedWeightModule) -> Iterator[WeightVector]:
    for w in module.window_weights():
        yield from module.basis(w)
