import itertools
import random

import pytest

from crnlie.lie import analyze_inputs
from crnlie.network import InputSet, NetworkError
from crnlie.parser import parse_network
from crnlie.structure import (candidate_input_sets, certify_critical_steps, class_closure,
                              find_initializer_classes, find_initializers, initializer_report,
                              is_consecutive, minimal_input_sets)
from netgen import build, random_chain, random_network


def test_initializers_examples(ex1):
    assert find_initializers(ex1) == [0]
    assert find_initializers(parse_network("X + U ->[k1] X + V\nX + Y ->[k2] X + Z\n")) == [0, 1]
    assert find_initializers(parse_network("X + U ->[k1] U + V\nX + V ->[k2] X + W\n")) == [0]


def test_catalyst_only_and_inflow_steps_are_not_initializers():
    assert find_initializers(parse_network("E + S ->[k1] E + P\nS ->[k2] Q\n")) == []
    assert find_initializers(parse_network("0 ->[k1] A\n")) == []


def test_ex2_under_strict_definition(ex2):
    # X2 (reactant of step 1) is produced by step 3
    rep = initializer_report(ex2)
    assert rep.initializers == ()
    assert rep.classes == (frozenset({0, 1, 2}),)
    assert rep.lower_bound == 1
    assert not is_consecutive(ex2).is_consecutive


def test_classes():
    cyc = parse_network("A ->[k1] B\nB ->[k2] C\nC ->[k3] A\n")
    assert find_initializer_classes(cyc) == [frozenset({0, 1, 2})]
    net = parse_network("A <=>[k1,k2] B\nB ->[k3] C\n")
    assert class_closure(net, 0) == frozenset({0, 1, 2})
    assert find_initializers(net) == []


def test_consecutive_chain():
    net = parse_network("A ->[k1] B\nB ->[k2] C\nC ->[k3] D\n")
    cert = is_consecutive(net)
    assert cert.is_consecutive and cert.order == (0, 1, 2)
    two = parse_network("A ->[k1] B\nC ->[k2] D\n")
    bad = is_consecutive(two)
    assert not bad.is_consecutive and bad.initializer_count == 2 and bad.failed_stage == 0


def test_random_chains_are_consecutive():
    rng = random.Random(0)
    for _ in range(30):
        net = random_chain(rng, rng.randint(1, 6))
        assert is_consecutive(net).order == tuple(range(net.num_steps))


def test_critical_steps(ex1):
    cert = certify_critical_steps(ex1, InputSet.all_steps(ex1))
    assert cert.controllable_ae
    assert 0 in cert.critical_steps and cert.initializers_critical
    single = certify_critical_steps(ex1, InputSet.of(ex1, [0]))
    assert single.critical_steps == (0,) and single.minimal


def test_minimal_sets(ex1, ex2):
    assert [s.inputs for s in minimal_input_sets(ex1).sets] == [(0,)]
    search = minimal_input_sets(ex2)
    assert [s.inputs for s in search.sets] == [(0,), (1,), (2,)]
    assert search.attained
    two = parse_network("A ->[k1] B\nC ->[k2] D\n")
    assert [s.inputs for s in minimal_input_sets(two).sets] == [(0, 1)]


def test_candidates_respect_initializers_and_classes():
    net = parse_network("A ->[k1] B\nC ->[k2] D\nD ->[k3] E\n")
    rep = initializer_report(net)
    for cand in candidate_input_sets(net, 2, rep):
        assert set(rep.initializers) <= set(cand)


def test_minimal_sets_are_minimal_by_brute_force():
    rng = random.Random(4)
    for _ in range(15):
        net = random_network(rng, max_species=3, max_steps=4)
        search = minimal_input_sets(net)
        assert search.sets, "all inputs always work, so something must be found"
        size = search.size
        for smaller in itertools.combinations(range(net.num_steps), size - 1):
            if smaller:
                assert not analyze_inputs(net, InputSet.of(net, smaller))[1].controllable_ae


def test_budget():
    net = build(1, [((1,), (0,))] * 13)
    with pytest.raises(NetworkError):
        minimal_input_sets(net)
    res = minimal_input_sets(parse_network("A ->[k1] B\nC ->[k2] D\nE ->[k3] F\n"), budget=0)
    assert res.partial and res.sets == ()
