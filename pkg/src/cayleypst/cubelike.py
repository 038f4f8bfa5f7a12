"""Cubelike graphs Cay(F_2^n, S): Boolean functions, Walsh spectra and bent constructions.

A point x of F_2^n is encoded as an integer with coordinate x_1 in the most
significant bit, which is the mixed-radix index of the group [2]*n.  The flag
coordinate of the doubled construction therefore splits the index range into
two contiguous halves.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .arith import is_power_of_two
from .groups import GroupElement, GroupSpec, make_group
from .pst import InternalConsistencyError, pst_all_pairs, spectral_gcd
from .spectrum import CayleyGraph, GraphPreconditionError, eigenvalue_table


class BentRequiredError(ValueError):
    pass


class PermutationError(ValueError):
    pass


@dataclass(frozen=True)
class BooleanFunction:
    n: int
    table: np.ndarray  # uint8 of length 2^n

    def __post_init__(self):
        table = np.asarray(self.table, dtype=np.uint8) & 1
        if table.shape != (1 << self.n,):
            raise ValueError(f"truth table of a {self.n}-variable function must have length {1 << self.n}")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @classmethod
    def from_callable(cls, n: int, fn: Callable[[tuple[int, ...]], int]) -> "BooleanFunction":
        """fn receives (x_1, ..., x_n) with x_1 the leading coordinate."""
        rows = [fn(tuple((i >> (n - 1 - j)) & 1 for j in range(n))) for i in range(1 << n)]
        return cls(n, np.array(rows))

    @classmethod
    def from_support(cls, n: int, support: Iterable[int]) -> "BooleanFunction":
        table = np.zeros(1 << n, dtype=np.uint8)
        table[list(support)] = 1
        return cls(n, table)

    @classmethod
    def from_hex(cls, n: int, text: str) -> "BooleanFunction":
        """Hex truth table, least significant bit = f(0)."""
        value = int(text, 16)
        if value >> (1 << n):
            raise ValueError(f"hex truth table has bits beyond 2^{n}")
        return cls(n, np.array([(value >> i) & 1 for i in range(1 << n)]))

    def to_hex(self) -> str:
        value = sum(1 << int(i) for i in np.flatnonzero(self.table))
        width = max(1, (1 << self.n) // 4)
        return format(value, f"0{width}x")

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __eq__(self, other) -> bool:
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.table, other.table))

    def __hash__(self) -> int:
        return hash((self.n, self.table.tobytes()))

    @property
    def weight(self) -> int:
        return int(self.table.sum())

    def support(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.table)]

    def complement(self) -> "BooleanFunction":
        return BooleanFunction(self.n, 1 - self.table)


@dataclass(frozen=True)
class WalshSpectrum:
    values: np.ndarray

    def __getitem__(self, y: int) -> int:
        return int(self.values[y])


def fwht(signs: np.ndarray) -> np.ndarray:
    """In-place style fast Walsh-Hadamard butterfly on a copy, O(N log N)."""
    a = np.array(signs, dtype=np.int64)
    h = 1
    while h < a.size:
        a = a.reshape(-1, 2, h)
        a = np.stack([a[:, 0] + a[:, 1], a[:, 0] - a[:, 1]], axis=1)
        a = a.reshape(-1)
        h *= 2
    return a


def walsh_transform(f: BooleanFunction) -> WalshSpectrum:
    """W_f(y) = sum_x (-1)^(f(x) + x.y)."""
    return WalshSpectrum(fwht(1 - 2 * f.table.astype(np.int64)))


def bent_failure(f: BooleanFunction) -> Optional[str]:
    if f.n % 2:
        return f"odd number of variables ({f.n}); bent functions need an even count"
    target = 1 << (f.n // 2)
    w = np.abs(walsh_transform(f).values)
    if np.all(w == target):
        return None
    y = int(np.flatnonzero(w != target)[0])
    return f"|W_f({y})| = {w[y]} != {target}"


def is_bent(f: BooleanFunction) -> bool:
    return bent_failure(f) is None


def _split_interleaved(index: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Split 2m-bit indices into x = (z_1, z_3, ...) and y = (z_2, z_4, ...)."""
    x = np.zeros_like(index)
    y = np.zeros_like(index)
    for i in range(m):
        x |= ((index >> (2 * m - 1 - 2 * i)) & 1) << (m - 1 - i)
        y |= ((index >> (2 * m - 2 - 2 * i)) & 1) << (m - 1 - i)
    return x, y


def mm_bent(m: int, perm: Optional[Sequence[int]] = None,
            h: Optional[BooleanFunction] = None) -> BooleanFunction:
    """Maiorana-McFarland function f(x, y) = x . perm(y) + h(y) on 2m variables.

    x sits on the odd coordinates z_1, z_3, ... and y on the even ones, so the
    default (identity permutation, h = 0) is z_1 z_2 + z_3 z_4 + ... .  The
    result is complemented when needed so that f(0) = 0.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    size = 1 << m
    perm = np.arange(size) if perm is None else np.asarray(perm, dtype=np.int64)
    if perm.shape != (size,) or sorted(perm.tolist()) != list(range(size)):
        raise PermutationError(f"perm must be a bijection on {size} points")
    hv = np.zeros(size, dtype=np.int64) if h is None else h.table.astype(np.int64)
    if hv.shape != (size,):
        raise ValueError(f"h must be a function of {m} variables")
    x, y = _split_interleaved(np.arange(1 << (2 * m)), m)
    dot = np.array([bin(v).count("1") & 1 for v in (x & perm[y])])
    f = BooleanFunction(2 * m, dot ^ hv[y])
    return f.complement() if f(0) else f


@lru_cache(maxsize=None)
def cubelike_group(n: int) -> GroupSpec:
    return make_group([2] * n)


def is_cubelike(G: GroupSpec) -> bool:
    return all(f == 2 for f in G.factors)


def support_graph(f: BooleanFunction) -> CayleyGraph:
    return CayleyGraph(cubelike_group(f.n), f.table.astype(bool))


def _bent_input(f: BooleanFunction) -> BooleanFunction:
    reason = bent_failure(f)
    if reason is not None:
        raise BentRequiredError(f"bent function required: {reason}")
    if f.n < 4:
        raise BentRequiredError("the constructions need m >= 2, i.e. at least 4 variables")
    return f.complement() if f(0) else f


def doubled_support_graph(f: BooleanFunction) -> CayleyGraph:
    """Cubelike graph on F_2^(2m+1) with S = (0, supp f) u (1, supp f), f bent on 2m variables.

    f is complemented first if f(0) = 1.  The result has PST between g and
    g + (1, 0, ..., 0) at time pi / 2^m.
    """
    f = _bent_input(f)
    half = f.table.astype(bool)
    return CayleyGraph(cubelike_group(f.n + 1), np.concatenate([half, half]))


def bent_support_graph(f: BooleanFunction) -> CayleyGraph:
    """Cubelike graph on F_2^(2m) with S = supp f for a bent f with f(0) = 0."""
    return support_graph(_bent_input(f))


def flag_involution(n: int) -> GroupElement:
    """(1, 0, ..., 0) in F_2^n."""
    return cubelike_group(n).element(1 << (n - 1))


def _require_cubelike(graph: CayleyGraph):
    if not is_cubelike(graph.group):
        raise GraphPreconditionError(f"{graph.group} is not F_2^n")


def min_time_exponent(graph: CayleyGraph) -> int:
    """l with gcd(d - alpha_z) = 2^l.  Connectivity is not needed for the power-of-two property."""
    _require_cubelike(graph)
    graph.require(simple=True)
    if graph.degree < 1:
        raise GraphPreconditionError("connection set is empty")
    m = spectral_gcd(eigenvalue_table(graph), require_connected=False)
    if not is_power_of_two(m):
        raise InternalConsistencyError(f"spectral gcd {m} of a cubelike graph is not a power of 2")
    return m.bit_length() - 1


def pst_time_bound_check(graph: CayleyGraph) -> Optional[bool]:
    """For a connected cubelike graph with PST: is 1 <= l <= floor(n/2)?  None if there is no PST."""
    _require_cubelike(graph)
    if not any(r.has_pst for r in pst_all_pairs(graph)):
        return None
    ell = min_time_exponent(graph)
    return 1 <= ell <= graph.group.rank // 2


def xor_sum(graph: CayleyGraph) -> int:
    acc = 0
    for i in np.flatnonzero(graph.mask):
        acc ^= int(i)
    return acc


def sum_condition_check(graph: CayleyGraph, a: GroupElement) -> bool:
    """Does the XOR of all of S equal a?  If so PST between g and g + a at pi/2 follows."""
    _require_cubelike(graph)
    graph.require(simple=True)
    if a.index == 0:
        raise ValueError("a must be nonzero")
    return xor_sum(graph) == a.index


# F_2^n viewed as the field F_{2^n}: bit i of an index is the coefficient of X^i.

PRIMITIVE_POLYNOMIALS = {
    2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83, 8: 0x11D, 9: 0x211,
    10: 0x409, 11: 0x805, 12: 0x1053, 13: 0x201B, 14: 0x402B, 15: 0x8003, 16: 0x1002D,
}


@dataclass(frozen=True)
class BinaryFieldContext:
    n: int
    modulus: int

    def mul(self, a: int, b: int) -> int:
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> self.n:
                a ^= self.modulus
        return r

    def pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, (1 << self.n) - 2)


def field_context(n: int) -> BinaryFieldContext:
    if n not in PRIMITIVE_POLYNOMIALS:
        raise ValueError(f"no field table for degree {n}; supported 2..16")
    return BinaryFieldContext(n, PRIMITIVE_POLYNOMIALS[n])


def scale_set(ctx: BinaryFieldContext, S: Iterable[int], c: int) -> set[int]:
    """{c * z : z in S} under field multiplication."""
    if c == 0:
        raise ValueError("scaling by 0 is not allowed")
    return {ctx.mul(c, int(z)) for z in S}


def random_connected_set(rng: np.random.Generator, n: int, max_tries: int = 1000) -> np.ndarray:
    """Uniform random nonempty S in F_2^n without 0, conditioned on generating F_2^n."""
    G = cubelike_group(n)
    for _ in range(max_tries):
        mask = rng.random(1 << n) < 0.5
        mask[0] = False
        if mask.any() and CayleyGraph(G, mask).connected:
            return mask
    raise RuntimeError("could not draw a connected set")


@dataclass
class SweepStats:
    n: int
    graphs: int = 0
    connected: int = 0
    with_pst: int = 0
    pst_by_exponent: dict = None
    gcd_not_power_of_two: int = 0
    bound_violations: int = 0

    def __post_init__(self):
        if self.pst_by_exponent is None:
            self.pst_by_exponent = {}

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "graphs": self.graphs,
            "connected": self.connected,
            "with_pst": self.with_pst,
            "pst_by_exponent": {str(k): v for k, v in sorted(self.pst_by_exponent.items())},
            "gcd_not_power_of_two": self.gcd_not_power_of_two,
            "bound_violations": self.bound_violations,
        }


def _sweep_one(stats: SweepStats, mask: np.ndarray):
    G = cubelike_group(stats.n)
    graph = CayleyGraph(G, mask)
    stats.graphs += 1
    m = spectral_gcd(eigenvalue_table(graph), require_connected=False)
    if not is_power_of_two(m):
        stats.gcd_not_power_of_two += 1
        return
    if not graph.connected:
        return
    stats.connected += 1
    if any(r.has_pst for r in pst_all_pairs(graph)):
        ell = m.bit_length() - 1
        stats.with_pst += 1
        stats.pst_by_exponent[ell] = stats.pst_by_exponent.get(ell, 0) + 1
        if not 1 <= ell <= stats.n // 2:
            stats.bound_violations += 1


def exhaustive_sweep(n: int, limit: int = 1 << 16) -> SweepStats:
    """Every nonempty S in F_2^n minus 0: power-of-two gcd and the PST time bound."""
    count = (1 << ((1 << n) - 1)) - 1
    if count > limit:
        raise ValueError(f"{count} subsets exceed the exhaustive budget {limit}")
    stats = SweepStats(n)
    bits = np.arange(1, 1 << n)
    for code in range(1, count + 1):
        mask = np.zeros(1 << n, dtype=bool)
        mask[bits[(code >> np.arange(bits.size)) & 1 == 1]] = True
        _sweep_one(stats, mask)
    return stats


def random_sweep(n: int, samples: int, seed: int = 0) -> SweepStats:
    rng = np.random.default_rng(seed)
    stats = SweepStats(n)
    for _ in range(samples):
        mask = rng.random(1 << n) < 0.5
        mask[0] = False
        if not mask.any():
            continue
        _sweep_one(stats, mask)
    return stats


def walsh_eigenvalues(f: BooleanFunction) -> np.ndarray:
    """Eigenvalues of Cay(F_2^n, supp f) recovered from W_f: 2*alpha_z = 2^n [z = 0] - W_f(z)."""
    w = walsh_transform(f).values
    twice = -w.copy()
    twice[0] += 1 << f.n
    return twice // 2


def bent_degrees(m: int) -> tuple[int, int]:
    """The two possible weights 2^(2m-1) -+ 2^(m-1) of a bent function on 2m variables."""
    return (1 << (2 * m - 1)) - (1 << (m - 1)), (1 << (2 * m - 1)) + (1 << (m - 1))

