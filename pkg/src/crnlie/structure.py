"""Structural analysis: initializers, initializer classes, consecutive
networks, critical steps and the search for minimal input sets.

A species *blocks* outside step ``j`` when ``gamma(m, j) != 0``, i.e. when it
takes part in ``j`` other than as a direct catalyst of ``j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from crnlie.lie import DEFAULT_SEED, DEFAULT_TRIALS, RankVerdict, analyze_inputs
from crnlie.network import InputSet, NetworkError, ReactionNetwork, stoichiometric_rank

MAX_UNBUDGETED_STEPS = 12


def reactant_species(net: ReactionNetwork, steps) -> set[int]:
    return {m for r in steps for m, a in enumerate(net.steps[r].reactant) if a}


def _blocks(net: ReactionNetwork, m: int, j: int) -> bool:
    return net.steps[j].vector[m] != 0


def _is_initializer(net: ReactionNetwork, r: int, active: list[int]) -> bool:
    reactants = reactant_species(net, [r])
    if not any(net.steps[r].vector[m] for m in reactants):
        return False  # all reactant species are direct catalysts (or none exist)
    return not any(_blocks(net, m, j) for m in reactants for j in active if j != r)


def find_initializers(net: ReactionNetwork, active=None) -> list[int]:
    """Steps whose reactant species appear in no other step except as its direct catalysts."""
    active = list(range(net.num_steps)) if active is None else sorted(active)
    return [r for r in active if _is_initializer(net, r, active)]


def class_closure(net: ReactionNetwork, seed: int, active=None) -> frozenset[int]:
    """Smallest step set containing ``seed`` whose reactant species do not
    appear non-catalytically in any step outside the set."""
    active = list(range(net.num_steps)) if active is None else list(active)
    group = {seed}
    changed = True
    while changed:
        changed = False
        species = reactant_species(net, group)
        for j in active:
            if j not in group and any(_blocks(net, m, j) for m in species):
                group.add(j)
                changed = True
    return frozenset(group)


def _moves_own_reactants(net: ReactionNetwork, group) -> bool:
    species = reactant_species(net, group)
    return any(_blocks(net, m, j) for m in species for j in group)


def find_initializer_classes(net: ReactionNetwork) -> list[frozenset[int]]:
    """Minimal initializer classes, pairwise disjoint, excluding singleton initializers.

    A closed group whose reactant species are catalysts throughout the group
    is not reported: no input of such a group can be forced.
    """
    inits = set(find_initializers(net))
    closures = {class_closure(net, r) for r in range(net.num_steps)}
    closures = {c for c in closures if _moves_own_reactants(net, c)}
    minimal = [c for c in closures if not any(o < c for o in closures)]
    minimal.sort(key=lambda c: (len(c), sorted(c)))
    chosen: list[frozenset[int]] = []
    used = set(inits)
    for c in minimal:
        if len(c) == 1 and next(iter(c)) in inits:
            continue
        if c & used:
            continue
        chosen.append(c)
        used |= c
    return chosen


@dataclass(frozen=True)
class InitializerReport:
    initializers: tuple[int, ...]
    classes: tuple[frozenset[int], ...]

    @property
    def lower_bound(self) -> int:
        return len(self.initializers) + len(self.classes)


def initializer_report(net: ReactionNetwork) -> InitializerReport:
    return InitializerReport(tuple(find_initializers(net)), tuple(find_initializer_classes(net)))


@dataclass(frozen=True)
class ConsecutiveCertificate:
    is_consecutive: bool
    order: tuple[int, ...]
    failure_reason: str | None = None
    failed_stage: int | None = None
    initializer_count: int | None = None


def is_consecutive(net: ReactionNetwork) -> ConsecutiveCertificate:
    remaining = list(range(net.num_steps))
    order: list[int] = []
    while remaining:
        inits = find_initializers(net, remaining)
        if len(inits) != 1:
            reason = (f"{len(inits)} initializers after removing {len(order)} step(s),"
                      f" {len(remaining)} remaining")
            return ConsecutiveCertificate(False, tuple(order), reason, len(order), len(inits))
        order.append(inits[0])
        remaining.remove(inits[0])
    return ConsecutiveCertificate(True, tuple(order))


# -- criticality and minimal input sets -------------------------------------


@dataclass(frozen=True)
class InputSetVerdict:
    inputs: tuple[int, ...]
    verdict: RankVerdict | None
    controllable_ae: bool
    critical_steps: tuple[int, ...] = ()
    minimal: bool = False
    initializers_critical: bool = True
    removals: dict = field(default_factory=dict, compare=False)  # step -> RankVerdict


def certify_critical_steps(net: ReactionNetwork, inputs: InputSet, trials: int = DEFAULT_TRIALS,
                           depth_cap: int | None = None, seed: int = DEFAULT_SEED
                           ) -> InputSetVerdict:
    """Remove each input in turn; an input is critical iff controllability is lost."""
    _, verdict = analyze_inputs(net, inputs, trials, depth_cap, seed)
    if not verdict.controllable_ae:
        return InputSetVerdict(tuple(inputs.inputs), verdict, False)
    critical = []
    removals = {}
    for i in inputs.inputs:
        _, v = analyze_inputs(net, inputs.without(i), trials, depth_cap, seed)
        removals[i] = v
        if not v.controllable_ae:
            critical.append(i)
    inits_in = set(find_initializers(net)) & inputs.indices
    return InputSetVerdict(tuple(inputs.inputs), verdict, True, tuple(critical),
                           len(critical) == len(inputs), inits_in <= set(critical), removals)


@dataclass(frozen=True)
class MinimalInputSearch:
    sets: tuple[InputSetVerdict, ...]
    lower_bound: int
    attained: bool
    partial: bool
    evaluated: int
    initializers: tuple[int, ...]
    classes: tuple[frozenset[int], ...]

    @property
    def size(self) -> int | None:
        return len(self.sets[0].inputs) if self.sets else None


def candidate_input_sets(net: ReactionNetwork, size: int, report: InitializerReport):
    """Input sets of the given size containing every initializer and hitting every class."""
    forced = set(report.initializers)
    free = [r for r in range(net.num_steps) if r not in forced]
    if size < len(forced):
        return
    for extra in itertools.combinations(free, size - len(forced)):
        chosen = forced | set(extra)
        if all(chosen & c for c in report.classes):
            yield tuple(sorted(chosen))


def minimal_input_sets(net: ReactionNetwork, budget: int | None = None, max_size: int | None = None,
                       trials: int = DEFAULT_TRIALS, depth_cap: int | None = None,
                       seed: int = DEFAULT_SEED) -> MinimalInputSearch:
    """Exhaustive search by increasing size; ``budget`` caps pipeline runs."""
    if budget is None and net.num_steps > MAX_UNBUDGETED_STEPS:
        raise NetworkError(f"{net.num_steps} steps: an explicit budget is required "
                           f"beyond {MAX_UNBUDGETED_STEPS}")
    report = initializer_report(net)
    target = stoichiometric_rank(net)
    if max_size is None:
        max_size = target
    evaluated = 0
    found: list[InputSetVerdict] = []
    partial = False
    for size in range(max(1, report.lower_bound), max_size + 1):
        for cand in candidate_input_sets(net, size, report):
            if budget is not None and evaluated >= budget:
                partial = True
                break
            evaluated += 1
            _, v = analyze_inputs(net, InputSet.of(net, cand), trials, depth_cap, seed)
            if v.controllable_ae:
                # every smaller admissible set was tried and failed
                found.append(InputSetVerdict(cand, v, True, cand, True, True))
        if found or partial:
            break
    attained = bool(found) and len(found[0].inputs) == report.lower_bound
    return MinimalInputSearch(tuple(found), report.lower_bound, attained, partial, evaluated,
                              report.initializers, report.classes)
