"""Finite abelian groups Z_{n_1} + ... + Z_{n_r} with mixed-radix element encoding.

Elements are stored as integer indices in ``[0, n)``; the first invariant
factor is the most significant digit.  Subsets of a group are handled
internally as boolean masks of length ``n``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Union

import numpy as np

from .arith import euler_phi


class InvalidGroupError(ValueError):
    pass


class GroupDomainError(ValueError):
    """Elements or sets that do not belong to the group at hand."""


class InvalidDivisorError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    factors: tuple[int, ...]

    def __post_init__(self):
        if not self.factors:
            raise InvalidGroupError("a group needs at least one cyclic factor")
        for f in self.factors:
            if not isinstance(f, (int, np.integer)) or f < 2:
                raise InvalidGroupError(f"invalid cyclic factor {f!r}; every factor must be >= 2")
        object.__setattr__(self, "factors", tuple(int(f) for f in self.factors))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.factors

    @cached_property
    def order(self) -> int:
        return math.prod(self.factors)

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @cached_property
    def radix(self) -> np.ndarray:
        """Place value of each coordinate in the mixed-radix index."""
        places = [1] * self.rank
        for s in range(self.rank - 2, -1, -1):
            places[s] = places[s + 1] * self.factors[s + 1]
        return np.array(places, dtype=np.int64)

    @cached_property
    def residues(self) -> np.ndarray:
        """(n, r) array; row i holds the coordinates of element i."""
        idx = np.arange(self.order, dtype=np.int64)
        out = np.empty((self.order, self.rank), dtype=np.int64)
        for s, (f, p) in enumerate(zip(self.factors, self.radix)):
            out[:, s] = (idx // p) % f
        out.setflags(write=False)
        return out

    @cached_property
    def _factor_array(self) -> np.ndarray:
        return np.array(self.factors, dtype=np.int64)

    @cached_property
    def _char_weights(self) -> np.ndarray:
        # e / n_s, so that chi_x(g) = omega_e^(sum_s w_s x_s g_s)
        return np.array([self.exponent // f for f in self.factors], dtype=np.int64)

    def index_of(self, residues: Iterable[int]) -> int:
        res = tuple(int(v) for v in residues)
        if len(res) != self.rank:
            raise GroupDomainError(f"{res} has {len(res)} coordinates, group has rank {self.rank}")
        for v, f in zip(res, self.factors):
            if not 0 <= v < f:
                raise GroupDomainError(f"coordinate {v} out of range for Z_{f}")
        return int(sum(v * int(p) for v, p in zip(res, self.radix)))

    def element(self, value: ElementLike) -> GroupElement:
        return GroupElement(self, self._coerce(value))

    def elements(self) -> list[GroupElement]:
        return [GroupElement(self, i) for i in range(self.order)]

    @property
    def zero(self) -> GroupElement:
        return GroupElement(self, 0)

    def _coerce(self, value: ElementLike) -> int:
        if isinstance(value, GroupElement):
            if value.group != self:
                raise GroupDomainError(f"element {value} belongs to {value.group}, not {self}")
            return value.index
        if isinstance(value, (int, np.integer)):
            if not 0 <= value < self.order:
                raise GroupDomainError(f"index {value} out of range for a group of order {self.order}")
            return int(value)
        return self.index_of(value)

    # vectorised index arithmetic

    def add_index(self, i, j):
        r = (self.residues[i] + self.residues[j]) % self._factor_array
        return r @ self.radix

    def scale_index(self, k: int, i):
        r = (k * self.residues[i]) % self._factor_array
        return r @ self.radix

    @cached_property
    def negation(self) -> np.ndarray:
        """negation[i] is the index of -i."""
        out = ((-self.residues) % self._factor_array) @ self.radix
        out.setflags(write=False)
        return out

    def translate(self, i: int) -> np.ndarray:
        """Index map x -> x + i over the whole group."""
        return ((self.residues + self.residues[i]) % self._factor_array) @ self.radix

    def char_exponents(self, x: int) -> np.ndarray:
        """k[g] with chi_x(g) = omega_e^k[g], for every g."""
        w = self._char_weights * self.residues[x]
        return (self.residues @ w) % self.exponent

    @cached_property
    def orders(self) -> np.ndarray:
        res = self.residues
        per = self._factor_array // np.gcd(res, self._factor_array)
        out = np.lcm.reduce(per, axis=1)
        out.setflags(write=False)
        return out

    @cached_property
    def class_ids(self) -> np.ndarray:
        """class_ids[i] is the representative (minimal index) of the unit class of i."""
        n, e = self.order, self.exponent
        units = [ell for ell in range(2, e) if math.gcd(ell, e) == 1]
        if len(units) <= 256:
            ids = np.arange(n, dtype=np.int64)
            for ell in units:
                np.minimum(ids, self.scale_index(ell, np.arange(n)), out=ids)
        else:
            # one orbit per class; total work is sum of class sizes = n
            ids = np.full(n, -1, dtype=np.int64)
            for g in range(n):
                if ids[g] >= 0:
                    continue
                lam = int(self.orders[g])
                mult = [ell for ell in range(1, lam) if math.gcd(ell, lam) == 1] or [1]
                ids[self.scale_index(np.array(mult)[:, None], g)] = g
        ids.setflags(write=False)
        return ids

    def mask(self, subset: SetLike) -> np.ndarray:
        """Boolean membership vector for a subset given in any accepted form."""
        if isinstance(subset, np.ndarray) and subset.dtype == bool:
            if subset.shape != (self.order,):
                raise GroupDomainError(f"mask has shape {subset.shape}, expected ({self.order},)")
            return subset
        out = np.zeros(self.order, dtype=bool)
        for v in subset:
            out[self._coerce(v)] = True
        return out

    def from_mask(self, mask: np.ndarray) -> frozenset[GroupElement]:
        return frozenset(GroupElement(self, int(i)) for i in np.flatnonzero(mask))

    def __str__(self) -> str:
        return " + ".join(f"Z{f}" for f in self.factors)


@dataclass(frozen=True)
class GroupElement:
    group: GroupSpec
    index: int

    @property
    def residues(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.group.residues[self.index])

    def _other(self, other) -> int:
        return self.group._coerce(other)

    def __add__(self, other) -> GroupElement:
        return GroupElement(self.group, int(self.group.add_index(self.index, self._other(other))))

    def __neg__(self) -> GroupElement:
        return GroupElement(self.group, int(self.group.negation[self.index]))

    def __sub__(self, other) -> GroupElement:
        return self + (-self.group.element(other))

    def __rmul__(self, k: int) -> GroupElement:
        return GroupElement(self.group, int(self.group.scale_index(int(k), self.index)))

    def __repr__(self) -> str:
        res = self.residues
        return str(res[0]) if len(res) == 1 else "(" + ",".join(map(str, res)) + ")"


ElementLike = Union[GroupElement, int, Iterable[int]]
SetLike = Union[np.ndarray, Iterable[ElementLike]]


def make_group(factors: Iterable[int]) -> GroupSpec:
    return GroupSpec(tuple(factors))


def char_exponent(x: GroupElement, g: GroupElement) -> int:
    """Return k such that chi_x(g) = omega_e^k, e the group exponent."""
    if x.group != g.group:
        raise GroupDomainError("character exponent needs two elements of the same group")
    G = x.group
    k = sum(int(w) * a * b for w, a, b in zip(G._char_weights, x.residues, g.residues))
    return k % G.exponent


def element_order(g: GroupElement) -> int:
    return int(g.group.orders[g.index])


def involutions(G: GroupSpec) -> list[GroupElement]:
    return [GroupElement(G, int(i)) for i in np.flatnonzero(G.orders == 2)]


def closure_mask(G: GroupSpec, mask: np.ndarray) -> np.ndarray:
    """Subgroup generated by a masked subset, grown one generator at a time."""
    H = np.zeros(G.order, dtype=bool)
    H[0] = True
    for s in np.flatnonzero(mask):
        if H[s]:
            continue
        shift = G.translate(int(s))
        layer = H.copy()
        while True:
            moved = np.empty_like(layer)
            moved[shift] = layer
            layer = moved
            if H[np.flatnonzero(layer)[0]]:
                break
            H |= layer
    return H


def subgroup_closure(G: GroupSpec, S: SetLike) -> frozenset[GroupElement]:
    return G.from_mask(closure_mask(G, G.mask(S)))


def class_mask(G: GroupSpec, g: int) -> np.ndarray:
    return G.class_ids == G.class_ids[g]


def class_of(g: GroupElement) -> frozenset[GroupElement]:
    """All l*g with l a unit mod the exponent: the generators of <g>."""
    return g.group.from_mask(class_mask(g.group, g.index))


@dataclass(frozen=True)
class ClassPartition:
    group: GroupSpec
    classes: tuple[frozenset[GroupElement], ...]
    representatives: tuple[GroupElement, ...]

    def __len__(self) -> int:
        return len(self.classes)

    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


def class_representatives(G: GroupSpec) -> np.ndarray:
    return np.unique(G.class_ids)


def enumerate_classes(G: GroupSpec) -> ClassPartition:
    reps = class_representatives(G)
    classes = tuple(G.from_mask(G.class_ids == r) for r in reps)
    return ClassPartition(G, classes, tuple(GroupElement(G, int(r)) for r in reps))


def is_qset_mask(G: GroupSpec, mask: np.ndarray) -> bool:
    hits = np.bincount(G.class_ids, weights=mask, minlength=G.order)
    sizes = np.bincount(G.class_ids, minlength=G.order)
    return bool(np.all((hits == 0) | (hits == sizes)))


def is_qset(G: GroupSpec, S: SetLike) -> bool:
    """True iff S is a union of whole unit classes (equivalently lS = S for all units l)."""
    return is_qset_mask(G, G.mask(S))


def gcd_set_mask(G: GroupSpec, D: Iterable[Iterable[int]]) -> np.ndarray:
    out = np.zeros(G.order, dtype=bool)
    g = np.gcd(G.residues, G._factor_array)
    for dbar in D:
        dbar = tuple(int(v) for v in dbar)
        if len(dbar) != G.rank:
            raise InvalidDivisorError(f"divisor tuple {dbar} does not match rank {G.rank}")
        for d, f in zip(dbar, G.factors):
            if d < 1 or f % d:
                raise InvalidDivisorError(f"{d} does not divide {f}")
        if math.prod(dbar) >= G.order:
            raise InvalidDivisorError(f"divisor tuple {dbar} has product >= |G|; it would select 0")
        out |= np.all(g == np.array(dbar), axis=1)
    return out


def gcd_set(G: GroupSpec, D: Iterable[Iterable[int]]) -> frozenset[GroupElement]:
    """Union over divisor tuples d of {k : gcd(k_j, n_j) = d_j for every j}."""
    return G.from_mask(gcd_set_mask(G, D))


def expected_class_size(g: GroupElement) -> int:
    return euler_phi(element_order(g))
