"""Square-tiled surface combinatorics.

A surface made of ``d`` unit squares is encoded by two permutations: ``tau``
sends each square to the one glued on its right, ``sigma`` to the one glued
on top.  Everything downstream (connectivity, singularity data, genus and
the permutation pair ``p_l = sigma^-1``, ``p_r = tau^-1`` driving the
interval exchange) is derived from that pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

__all__ = [
    "Permutation",
    "Origami",
    "SingularityData",
    "REGISTRY",
    "get_surface",
]


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1, ..., d} stored as a 1-indexed image table."""

    image: tuple[int, ...]

    def __post_init__(self):
        d = len(self.image)
        if sorted(self.image) != list(range(1, d + 1)):
            raise ValueError(f"not a permutation of 1..{d}: {self.image}")

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls(tuple(range(1, d + 1)))

    @property
    def degree(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.image, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self * other)(i) = self(other(i))."""
        return Permutation(tuple(self(other(i)) for i in range(1, self.degree + 1)))

    __mul__ = compose

    def orbits(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            orbit = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                orbit.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(orbit))
        return out

    def cycle_lengths(self) -> list[int]:
        return sorted((len(o) for o in self.orbits()), reverse=True)

    def is_identity(self) -> bool:
        return all(self(i) == i for i in range(1, self.degree + 1))

    def __str__(self):
        return "(" + ",".join(str(i) for i in self.image) + ")"


@dataclass(frozen=True)
class SingularityData:
    """Vertex structure of a connected square-tiled surface.

    Cone angles are 2*k*pi where k runs over the commutator orbit lengths;
    orbits with k > 1 are the true singularities of the flat metric.
    """

    orbits: tuple[tuple[int, ...], ...]
    genus: int

    @property
    def orbit_lengths(self) -> tuple[int, ...]:
        return tuple(sorted((len(o) for o in self.orbits), reverse=True))

    @property
    def cone_angles(self) -> tuple[int, ...]:
        """Cone angles as multiples of pi (2k per orbit of length k)."""
        return tuple(2 * k for k in self.orbit_lengths)

    @property
    def singular_orders(self) -> tuple[int, ...]:
        return tuple(k - 1 for k in self.orbit_lengths if k > 1)

    @property
    def stratum(self) -> str:
        orders = self.singular_orders
        return "H(" + (",".join(str(o) for o in orders) if orders else "0") + ")"


@dataclass(frozen=True)
class Origami:
    """A square-tiled surface given by its horizontal/vertical gluings."""

    tau: Permutation
    sigma: Permutation

    def __post_init__(self):
        if self.tau.degree != self.sigma.degree:
            raise ValueError("tau and sigma act on different square counts")

    @property
    def d(self) -> int:
        return self.tau.degree

    # the permutation pair acting on the diagonal cross-sections
    @cached_property
    def p_l(self) -> Permutation:
        return self.sigma.inverse()

    @cached_property
    def p_r(self) -> Permutation:
        return self.tau.inverse()

    @cached_property
    def p_l_inv(self) -> Permutation:
        return self.sigma

    @cached_property
    def p_r_inv(self) -> Permutation:
        return self.tau

    # -- structure -----------------------------------------------------------

    def is_connected(self) -> bool:
        """True iff <tau, sigma> acts transitively on the squares."""
        return self._transitive(self.tau, self.sigma)

    def minimality_witness(self) -> bool:
        """True iff no strict nonempty subset is invariant under p_l and p_r."""
        return self._transitive(self.p_l, self.p_r)

    def _transitive(self, f: Permutation, g: Permutation) -> bool:
        seen = {1}
        stack = [1]
        while stack:
            i = stack.pop()
            for j in (f(i), g(i)):
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == self.d

    def commutator(self) -> Permutation:
        t, s = self.tau, self.sigma
        return t * s * t.inverse() * s.inverse()

    def is_torus_cover(self) -> bool:
        """True iff tau and sigma commute (no true singularity)."""
        return self.commutator().is_identity()

    def singularities(self) -> SingularityData:
        if not self.is_connected():
            raise ValueError("surface is not connected")
        orbits = tuple(self.commutator().orbits())
        # V - E + F = 2 - 2g with F = d squares, E = 2d edges, V = #orbits
        genus = (self.d - len(orbits) + 2) // 2
        return SingularityData(orbits=orbits, genus=genus)

    # -- text form -------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "Origami":
        """Parse 'd;tau=2,1,3;sigma=3,2,1'."""
        parts = [p.strip() for p in text.strip().split(";") if p.strip()]
        if len(parts) != 3:
            raise ValueError(f"expected 'd;tau=...;sigma=...', got {text!r}")
        d = int(parts[0])
        tables = {}
        for p in parts[1:]:
            name, _, body = p.partition("=")
            tables[name.strip()] = tuple(int(x) for x in body.split(","))
        tau, sigma = Permutation(tables["tau"]), Permutation(tables["sigma"])
        if tau.degree != d:
            raise ValueError(f"declared d={d} but tables have degree {tau.degree}")
        return cls(tau, sigma)

    def __str__(self):
        tau = ",".join(str(i) for i in self.tau.image)
        sigma = ",".join(str(i) for i in self.sigma.image)
        return f"{self.d};tau={tau};sigma={sigma}"


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


# Example registry.  fig1 and fig2 carry mutually inconsistent vertical data
# in their sources, so they are kept as two distinct surfaces.
REGISTRY: dict[str, Origami] = {
    "fig1": Origami(Permutation((2, 1, 3)), Permutation((3, 2, 1))),
    # defined through its diagonal pair: p_r^-1 = (2,1,3), p_l^-1 = (3,1,2)
    "fig2": Origami(Permutation((2, 1, 3)), Permutation((3, 1, 2))),
    "d4-cycle": Origami(Permutation((2, 3, 4, 1)), Permutation((2, 1, 3, 4))),
    "torus-d1": Origami(Permutation((1,)), Permutation((1,))),
}


def get_surface(spec: str) -> Origami:
    """Look up a registry key or parse an explicit 'd;tau=...;sigma=...' spec."""
    if spec in REGISTRY:
        return REGISTRY[spec]
    if ";" in spec:
        return Origami.parse(spec)
    raise ValueError(
        f"unknown surface {spec!r}; registry keys: {sorted(REGISTRY)}")


def all_origamis(d: int):
    """All (tau, sigma) pairs on d squares; exhaustive checks for small d."""
    perms = [Permutation(p) for p in itertools.permutations(range(1, d + 1))]
    for tau in perms:
        for sigma in perms:
            yield Origami(tau, sigma)
