"""Random network generators shared by the property tests."""

import random

from hypothesis import strategies as st

from crnlie.network import NetworkError, ReactionNetwork, ReactionStep, SpeciesId


def build(species_count, columns, names=None):
    names = names or [f"S{i + 1}" for i in range(species_count)]
    steps = [ReactionStep(a, b, f"k{j + 1}") for j, (a, b) in enumerate(columns)]
    return ReactionNetwork(tuple(SpeciesId(i, n) for i, n in enumerate(names)), tuple(steps))


def random_step(rng, m, max_coeff=2):
    while True:
        a = tuple(rng.randint(0, max_coeff) if rng.random() < 0.5 else 0 for _ in range(m))
        b = tuple(rng.randint(0, max_coeff) if rng.random() < 0.5 else 0 for _ in range(m))
        if a != b:
            return a, b


def random_network(rng, max_species=5, max_steps=6, max_coeff=2, min_species=1):
    m = rng.randint(min_species, max_species)
    r = rng.randint(1, max_steps)
    return build(m, [random_step(rng, m, max_coeff) for _ in range(r)])


def random_network_with_reversible_pair(rng, max_species=5, max_steps=6):
    m = rng.randint(1, max_species)
    a, b = random_step(rng, m)
    cols = [(a, b), (b, a)]
    for _ in range(rng.randint(0, max_steps - 2)):
        cols.append(random_step(rng, m))
    rng.shuffle(cols)
    return build(m, cols)


def random_chain(rng, length):
    """Consecutive network by construction: c_i S_i -> d_i S_{i+1} (+ fresh side product)."""
    m = length + 1
    extra = [rng.random() < 0.3 for _ in range(length)]
    m_total = m + sum(extra)
    cols = []
    side = m
    for i in range(length):
        a = [0] * m_total
        b = [0] * m_total
        a[i] = rng.randint(1, 2)
        b[i + 1] = rng.randint(1, 2)
        if extra[i]:
            b[side] = 1
            side += 1
        cols.append((tuple(a), tuple(b)))
    return build(m_total, cols)


def parseable_network(rng, max_species=5, max_steps=6, max_coeff=3):
    """Random network whose species are all used, in first-appearance order."""
    while True:
        net = random_network(rng, max_species, max_steps, max_coeff)
        used = [i for i in range(net.num_species)
                if any(s.reactant[i] or s.product[i] for s in net.steps)]
        if len(used) != net.num_species:
            continue
        # relabel so species are numbered in order of first appearance
        order = []
        for st_ in net.steps:
            for counts in (st_.reactant, st_.product):
                order += [i for i, c in enumerate(counts) if c and i not in order]
        cols = [(tuple(st_.reactant[i] for i in order), tuple(st_.product[i] for i in order))
                for st_ in net.steps]
        return build(net.num_species, cols)


@st.composite
def networks(draw, max_species=4, max_steps=4, max_coeff=2):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_network(random.Random(seed), max_species, max_steps, max_coeff)
