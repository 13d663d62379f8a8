"""Reaction network data model.

A network with M species and R steps is stored as the dense integer matrices
``alpha`` (reactant complexes, M x R), ``beta`` (product complexes) and
``gamma = beta - alpha`` (the stoichiometric matrix). Networks are immutable.

Throughout, stoichiometric and kinetic subspaces are assumed to coincide;
networks for which they differ are not detected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from crnlie.linalg import integer_rank

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class NetworkError(ValueError):
    """Raised for structurally invalid networks or out-of-range queries."""


@dataclass(frozen=True)
class SpeciesId:
    index: int
    name: str


@dataclass(frozen=True)
class ReactionStep:
    reactant: tuple[int, ...]
    product: tuple[int, ...]
    rate_symbol: str

    def __post_init__(self):
        object.__setattr__(self, "reactant", tuple(int(c) for c in self.reactant))
        object.__setattr__(self, "product", tuple(int(c) for c in self.product))
        if len(self.reactant) != len(self.product):
            raise NetworkError("reactant and product vectors differ in length")
        if any(c < 0 for c in self.reactant + self.product):
            raise NetworkError(f"step {self.rate_symbol}: negative molecule count")
        if self.reactant == self.product:
            raise NetworkError(f"step {self.rate_symbol}: null step (reactant equals product)")
        if not NAME_RE.match(self.rate_symbol):
            raise NetworkError(f"invalid rate symbol {self.rate_symbol!r}")

    @property
    def vector(self) -> tuple[int, ...]:
        return tuple(b - a for a, b in zip(self.reactant, self.product))


@dataclass(frozen=True)
class ReactionNetwork:
    species: tuple[SpeciesId, ...]
    steps: tuple[ReactionStep, ...]
    gamma: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "species", tuple(self.species))
        object.__setattr__(self, "steps", tuple(self.steps))
        m, r = len(self.species), len(self.steps)
        if m < 1 or r < 1:
            raise NetworkError("a network needs at least one species and one step")
        if [s.index for s in self.species] != list(range(m)):
            raise NetworkError("species indices must be 0..M-1 in order")
        names = [s.name for s in self.species]
        if len(set(names)) != m:
            raise NetworkError("species names must be unique")
        for n in names:
            if not NAME_RE.match(n):
                raise NetworkError(f"invalid species name {n!r}")
        symbols = [s.rate_symbol for s in self.steps]
        if len(set(symbols)) != r:
            raise NetworkError("rate symbols must be unique")
        for s in self.steps:
            if len(s.reactant) != m:
                raise NetworkError(f"step {s.rate_symbol} has wrong length (expected {m})")
        gamma = tuple(tuple(self.steps[j].product[i] - self.steps[j].reactant[i] for j in range(r))
                      for i in range(m))
        object.__setattr__(self, "gamma", gamma)

    @classmethod
    def from_matrices(cls, species: Sequence[str], alpha: Sequence[Sequence[int]],
                      beta: Sequence[Sequence[int]], rate_symbols: Sequence[str] | None = None
                      ) -> "ReactionNetwork":
        """Build from M x R reactant/product matrices (the usual column convention)."""
        m = len(species)
        if len(alpha) != m or len(beta) != m:
            raise NetworkError("alpha/beta must have one row per species")
        r = len(alpha[0]) if m else 0
        if rate_symbols is None:
            rate_symbols = [f"k{j + 1}" for j in range(r)]
        steps = [ReactionStep(tuple(alpha[i][j] for i in range(m)),
                              tuple(beta[i][j] for i in range(m)), rate_symbols[j])
                 for j in range(r)]
        return cls(tuple(SpeciesId(i, n) for i, n in enumerate(species)), tuple(steps))

    @property
    def num_species(self) -> int:
        return len(self.species)

    @property
    def num_steps(self) -> int:
        return len(self.steps)

    @property
    def species_names(self) -> list[str]:
        return [s.name for s in self.species]

    @property
    def rate_symbols(self) -> list[str]:
        return [s.rate_symbol for s in self.steps]

    @property
    def alpha(self) -> list[list[int]]:
        return [[s.reactant[i] for s in self.steps] for i in range(self.num_species)]

    @property
    def beta(self) -> list[list[int]]:
        return [[s.product[i] for s in self.steps] for i in range(self.num_species)]

    def gamma_column(self, r: int) -> tuple[int, ...]:
        self._check_step(r)
        return self.steps[r].vector

    def step_index(self, symbol: str) -> int:
        for j, s in enumerate(self.steps):
            if s.rate_symbol == symbol:
                return j
        raise NetworkError(f"unknown rate symbol {symbol!r}")

    def species_index(self, name: str) -> int:
        for s in self.species:
            if s.name == name:
                return s.index
        raise NetworkError(f"unknown species {name!r}")

    def _check_step(self, r: int) -> None:
        if not 0 <= r < self.num_steps:
            raise NetworkError(f"step index {r} out of range 0..{self.num_steps - 1}")

    def _check_species(self, m: int) -> None:
        if not 0 <= m < self.num_species:
            raise NetworkError(f"species index {m} out of range 0..{self.num_species - 1}")

    def participates(self, m: int, r: int) -> bool:
        step = self.steps[r]
        return step.reactant[m] + step.product[m] > 0

    def sub_network(self, steps: Iterable[int]) -> "ReactionNetwork":
        """The network restricted to the given steps; species are kept."""
        keep = sorted(set(steps))
        return ReactionNetwork(self.species, tuple(self.steps[j] for j in keep))


def stoichiometric_rank(net: ReactionNetwork) -> int:
    return integer_rank(net.gamma)


def is_direct_catalyst_of_step(net: ReactionNetwork, m: int, r: int) -> bool:
    net._check_species(m)
    net._check_step(r)
    step = net.steps[r]
    return step.product[m] == step.reactant[m] and step.reactant[m] != 0


def is_direct_catalyst_of_network(net: ReactionNetwork, m: int) -> bool:
    net._check_species(m)
    return not any(net.gamma[m])


def make_reversible(net: ReactionNetwork, r: int, symbol: str | None = None) -> ReactionNetwork:
    """Append the reverse of step ``r`` under a fresh rate symbol."""
    net._check_step(r)
    step = net.steps[r]
    if symbol is None:
        taken = set(net.rate_symbols)
        base = f"{step.rate_symbol}_rev"
        symbol, n = base, 1
        while symbol in taken:
            n += 1
            symbol = f"{base}{n}"
    rev = ReactionStep(step.product, step.reactant, symbol)
    return ReactionNetwork(net.species, net.steps + (rev,))


@dataclass(frozen=True)
class InputSet:
    """Steps whose rate coefficients are control inputs; the rest form the drift."""

    indices: frozenset[int]
    num_steps: int

    def __post_init__(self):
        object.__setattr__(self, "indices", frozenset(int(i) for i in self.indices))
        bad = [i for i in self.indices if not 0 <= i < self.num_steps]
        if bad:
            raise NetworkError(f"input step indices out of range: {sorted(bad)}")

    @classmethod
    def of(cls, net: ReactionNetwork, indices: Iterable[int]) -> "InputSet":
        return cls(frozenset(indices), net.num_steps)

    @classmethod
    def from_symbols(cls, net: ReactionNetwork, symbols: Iterable[str]) -> "InputSet":
        return cls(frozenset(net.step_index(s) for s in symbols), net.num_steps)

    @classmethod
    def all_steps(cls, net: ReactionNetwork) -> "InputSet":
        return cls(frozenset(range(net.num_steps)), net.num_steps)

    @property
    def inputs(self) -> list[int]:
        return sorted(self.indices)

    @property
    def drift(self) -> list[int]:
        return [j for j in range(self.num_steps) if j not in self.indices]

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.inputs)

    def without(self, i: int) -> "InputSet":
        return InputSet(self.indices - {i}, self.num_steps)

    def symbols(self, net: ReactionNetwork) -> list[str]:
        return [net.steps[j].rate_symbol for j in self.inputs]
