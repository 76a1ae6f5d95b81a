"""Finite probability spaces, random variables, and exact quantile machinery."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

__all__ = [
    "FiniteSpace",
    "RandVar",
    "SortedProfile",
    "SpaceMismatchError",
    "expectation",
    "upper_quantile",
    "essential_infimum",
    "same_distribution",
]

#: Largest tolerated deviation of the raw probability sum from 1.
PROB_SUM_TOL = 1e-12


class SpaceMismatchError(ValueError):
    """Raised when two random variables do not share a probability space."""


@dataclass(frozen=True, eq=False)
class FiniteSpace:
    """Atoms with strictly positive probabilities summing to one.

    The raw probabilities must sum to 1 within ``PROB_SUM_TOL``; they are then
    divided by their exact floating-point sum so that cumulative sums
    downstream terminate at exactly 1.  Null atoms are rejected at
    construction: with every atom carrying positive mass, "holds almost
    surely" coincides with "holds at every atom" throughout the package.
    Atom identity is positional; labels, if any, are a reporting concern of
    the scenario layer.
    """

    probs: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.probs, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("probs must be a nonempty one-dimensional sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("probs must be finite")
        if np.any(arr <= 0.0):
            raise ValueError("every atom probability must be strictly positive")
        total = math.fsum(arr.tolist())
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise ValueError(
                f"probabilities sum to {total!r}, expected 1 within {PROB_SUM_TOL}"
            )
        arr /= total
        arr.setflags(write=False)
        object.__setattr__(self, "probs", arr)

    @property
    def n_atoms(self) -> int:
        return int(self.probs.size)

    def compatible(self, other: "FiniteSpace") -> bool:
        """True when the two spaces are interchangeable (identical atoms)."""
        if self is other:
            return True
        return self.n_atoms == other.n_atoms and bool(np.all(self.probs == other.probs))

    def event_prob(self, atoms: Iterable[int]) -> float:
        """Probability of the event consisting of the given atom indices."""
        idx = sorted({int(i) for i in atoms})
        return math.fsum(float(self.probs[i]) for i in idx)


@dataclass(frozen=True, eq=False)
class SortedProfile:
    """Distinct values in ascending order with exact cumulative probabilities.

    ``cum[k]`` is the correctly rounded probability of the first ``k + 1``
    distinct values (computed with :func:`math.fsum`, hence independent of
    atom order), and ``cum[-1]`` equals 1 exactly.  This is the shared cache
    behind quantiles, shortfall integrals, and distribution comparison.
    """

    values: np.ndarray
    cum: np.ndarray

    def __post_init__(self) -> None:
        self.values.setflags(write=False)
        self.cum.setflags(write=False)


def _build_profile(space: FiniteSpace, values: np.ndarray) -> SortedProfile:
    order = np.argsort(values, kind="stable")
    v_sorted = values[order]
    p_sorted = space.probs[order]
    distinct: list[float] = []
    prefix: list[float] = []
    cum: list[float] = []
    for v, p in zip(v_sorted.tolist(), p_sorted.tolist()):
        prefix.append(p)
        if distinct and v == distinct[-1]:
            cum[-1] = math.fsum(prefix)
        else:
            distinct.append(v)
            cum.append(math.fsum(prefix))
    cum[-1] = 1.0
    return SortedProfile(np.array(distinct, dtype=float), np.array(cum, dtype=float))


@dataclass(frozen=True, eq=False)
class RandVar:
    """One real value per atom of a finite probability space.

    Instances are immutable and interoperate only when they reference the
    same space.  Arithmetic is atomwise; scalars broadcast.
    """

    space: FiniteSpace
    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=float)
        if arr.ndim != 1 or arr.size != self.space.n_atoms:
            raise ValueError(
                f"value vector has length {arr.size}, space has {self.space.n_atoms} atoms"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("values must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @classmethod
    def constant(cls, space: FiniteSpace, c: float) -> "RandVar":
        return cls(space, np.full(space.n_atoms, float(c)))

    @classmethod
    def indicator(cls, space: FiniteSpace, atoms: Iterable[int]) -> "RandVar":
        v = np.zeros(space.n_atoms)
        v[[int(i) for i in atoms]] = 1.0
        return cls(space, v)

    @cached_property
    def profile(self) -> SortedProfile:
        return _build_profile(self.space, self.values)

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    @property
    def is_constant(self) -> bool:
        return bool(np.all(self.values == self.values[0]))

    def _other_values(self, other) -> np.ndarray | float:
        if isinstance(other, RandVar):
            if not self.space.compatible(other.space):
                raise SpaceMismatchError("random variables live on different spaces")
            return other.values
        return float(other)

    def __add__(self, other) -> "RandVar":
        return RandVar(self.space, self.values + self._other_values(other))

    __radd__ = __add__

    def __sub__(self, other) -> "RandVar":
        return RandVar(self.space, self.values - self._other_values(other))

    def __rsub__(self, other) -> "RandVar":
        return RandVar(self.space, self._other_values(other) - self.values)

    def __mul__(self, other) -> "RandVar":
        return RandVar(self.space, self.values * self._other_values(other))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RandVar":
        return RandVar(self.space, self.values / self._other_values(other))

    def __rtruediv__(self, other) -> "RandVar":
        return RandVar(self.space, self._other_values(other) / self.values)

    def __neg__(self) -> "RandVar":
        return RandVar(self.space, -self.values)

    def __ge__(self, other) -> bool:
        """Atomwise domination: self >= other at every atom."""
        return bool(np.all(self.values >= self._other_values(other)))

    def __le__(self, other) -> bool:
        return bool(np.all(self.values <= self._other_values(other)))

    def tolist(self) -> list[float]:
        return [float(v) for v in self.values]


def expectation(x: RandVar) -> float:
    """Probability-weighted sum of the atom values."""
    return float(np.dot(x.space.probs, x.values))


def upper_quantile(x: RandVar, beta: float) -> float:
    """sup{v : P(X < v) <= beta}, computed exactly from the sorted profile.

    ``beta`` must lie in ``[0, 1)``.  The result is the k-th distinct value
    where ``beta`` falls in ``[cum[k-1], cum[k])``; no tolerance enters the
    comparison, since the definition is purely order based.
    """
    beta = float(beta)
    if not 0.0 <= beta < 1.0:
        raise ValueError(f"beta must lie in [0, 1), got {beta}")
    prof = x.profile
    k = int(np.searchsorted(prof.cum, beta, side="right"))
    return float(prof.values[k])


def essential_infimum(x: RandVar) -> float:
    """Smallest atom value (every atom has positive probability)."""
    return float(np.min(x.values))


def same_distribution(x: RandVar, y: RandVar) -> bool:
    """True iff the sorted (value, cumulative probability) profiles coincide exactly."""
    if not x.space.compatible(y.space):
        raise SpaceMismatchError("random variables live on different spaces")
    px, py = x.profile, y.profile
    return (
        px.values.size == py.values.size
        and bool(np.all(px.values == py.values))
        and bool(np.all(px.cum == py.cum))
    )
