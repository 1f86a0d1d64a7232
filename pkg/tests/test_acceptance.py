"""Acceptance criteria, one test per criterion, each with its wall-clock budget.

Run ``pytest -m acceptance -s`` to see one PASS/FAIL line per criterion.
"""

import contextlib
import itertools
import json
import math
import random
import time
from fractions import Fraction

import pytest

from fairdiv import AgentOrdering, Instance
from fairdiv.audit import (
    check_ef1,
    check_po_bruteforce,
    check_scale_invariance,
    max_nash_welfare,
    nash_welfare,
    outputs_by_ordering,
    pef_degree,
    pef_degree_from_outputs,
)
from fairdiv.cli import main
from fairdiv.generators import gen_aw_counterexample, gen_ec_worst, gen_example4, gen_random, gen_rr_log_lower_bound
from fairdiv.io import RunResult, parse_instance, serialize_instance
from fairdiv.matching import AssignmentProblem, brute_force_assignment, max_weight_assignment
from fairdiv.mechanisms import (
    MECHANISMS,
    equitability_ratios,
    equitable_split,
    matching_pef1_rounds,
    partition_goods,
    round_robin,
    split_values,
)

pytestmark = pytest.mark.acceptance


@contextlib.contextmanager
def criterion(number, title, budget):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
    except BaseException as exc:
        print(f"\ncriterion {number} FAIL {title}: {exc}")
        raise
    print(f"\ncriterion {number} PASS {title} ({elapsed:.2f}s of {budget}s)")


def random_instances(count, seed, ns, m_range, keep=lambda inst: True):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        inst = gen_random(rng.choice(ns), rng.randint(*m_range), rng.randrange(2**32))
        if keep(inst):
            out.append(inst)
    return out


def test_criterion_1_matching_mechanism():
    with criterion(1, "matching_pef1: EF1, degree <= 1, scale invariance, round sets", 60):
        rng = random.Random(1001)
        for inst in random_instances(200, 1, (2, 3, 4), (1, 8)):
            outputs = outputs_by_ordering("matching_pef1", inst)
            assert all(check_ef1(inst, alloc) for _, alloc in outputs)
            assert pef_degree_from_outputs(inst, outputs)[0] <= 1
            for _ in range(3):
                scalars = [Fraction(rng.randint(1, 50), rng.randint(1, 50)) for _ in inst.agents]
                assert all(check_scale_invariance("matching_pef1", inst, scalars, pi) for pi, _ in outputs)
            round_sets = {
                tuple(frozenset(r.values()) for r in matching_pef1_rounds(inst, pi)) for pi, _ in outputs
            }
            assert len(round_sets) == 1


def test_criterion_2_matching_oracle():
    with criterion(2, "max_weight_assignment equals brute force on 500 problems", 30):
        rng = random.Random(2)
        for _ in range(500):
            left = rng.randint(1, 5)
            right = rng.randint(left, 7)
            # small ranges force ties so the tie-break is exercised, large ones test magnitude
            top = rng.choice((1, 3, 2**30))
            prob = AssignmentProblem.from_matrix(
                [[rng.randint(0, top) for _ in range(right)] for _ in range(left)]
            )
            priority = rng.sample(range(left), left)
            assert max_weight_assignment(prob, priority) == brute_force_assignment(prob, priority)


def test_criterion_3_round_robin():
    with criterion(3, "round robin fixtures and n<=3 degree bound", 60):
        inst = gen_example4()
        assert round_robin(inst, AgentOrdering.identity(4))[0] == {0, 4}
        assert round_robin(inst, AgentOrdering.reverse(4))[0] == {3}
        assert pef_degree("round_robin", inst)[0] == 2
        for n, rounds in ((4, 2), (8, 3)):
            assert pef_degree("round_robin", gen_rr_log_lower_bound(n, rounds))[0] >= int(math.log2(n))
        for inst in random_instances(200, 3, (2, 3), (1, 8)):
            assert pef_degree("round_robin", inst)[0] <= 1


def test_criterion_4_envy_cycle():
    with criterion(4, "envy-cycle worst case, n=m=2 exhaustive, EF1", 120):
        for n, m in ((2, 4), (3, 6), (4, 5)):
            assert pef_degree("envy_cycle", gen_ec_worst(n, m))[0] == m - m // n
        for values in itertools.product(range(3), repeat=4):
            inst = Instance((values[:2], values[2:]))
            assert pef_degree("envy_cycle", inst)[0] <= 1
        for inst in random_instances(200, 4, (2, 3, 4), (1, 8)):
            assert all(check_ef1(inst, alloc) for _, alloc in outputs_by_ordering("envy_cycle", inst))


def test_criterion_5_adjusted_winner():
    with criterion(5, "discrete AW lower bound and modified AW guarantees", 60):
        for m in (5, 7, 9):
            inst = gen_aw_counterexample(m)
            assert pef_degree("adjusted_winner_discrete", inst)[0] >= math.ceil(m / 2) - 1
            outs = dict(outputs_by_ordering("adjusted_winner_discrete", inst))
            assert outs[AgentOrdering((0, 1))][0] == set(range(m - 1))
            assert outs[AgentOrdering((1, 0))][0] == set(range(m // 2))
        for inst in random_instances(300, 5, (2,), (0, 8)):
            outputs = outputs_by_ordering("adjusted_winner_modified", inst)
            for _, alloc in outputs:
                assert check_ef1(inst, alloc) and check_po_bruteforce(inst, alloc)
            assert pef_degree_from_outputs(inst, outputs)[0] <= 1
            if partition_goods(inst).shared:
                split = equitable_split(inst)
                r1, r2 = equitability_ratios(inst, split)
                assert r1 == r2
                v = split_values(inst, split)
                assert v[0][0] >= v[0][1] and v[1][1] >= v[1][0]


def independent_max_nw(inst):
    # split goods by bitmask instead of enumerating owner tuples
    u1, u2 = inst.utilities
    best = Fraction(0)
    for mask in range(2**inst.m):
        first = sum(u1[g] for g in inst.goods if mask >> g & 1)
        second = sum(u2[g] for g in inst.goods if not mask >> g & 1)
        best = max(best, first * second)
    return best


def test_criterion_6_mnw():
    with criterion(6, "MNW: maximal NW, EF1, PO, degree <= 1", 60):
        insts = random_instances(300, 6, (2,), (1, 8), keep=lambda inst: max_nash_welfare(inst) > 0)
        for inst in insts:
            outputs = outputs_by_ordering("mnw_bruteforce", inst)
            target = independent_max_nw(inst)
            for _, alloc in outputs:
                assert nash_welfare(inst, alloc) == target
                assert check_ef1(inst, alloc) and check_po_bruteforce(inst, alloc)
            assert pef_degree_from_outputs(inst, outputs)[0] <= 1


def test_criterion_7_single_contested_good():
    with criterion(7, "one good, two equal agents: every mechanism has degree 1", 60):
        for value in (1, 5, "7/3"):
            inst = Instance(((value,), (value,)))
            for name in MECHANISMS:
                assert pef_degree(name, inst)[0] == 1, name


def test_criterion_8_cli(tmp_path, capsys, monkeypatch):
    with criterion(8, "CLI round-trips, determinism and exit codes", 5):
        def cli(*argv):
            code = main(list(argv))
            out, err = capsys.readouterr()
            return code, out, err

        for argv in (("--family", "example4"), ("--family", "random", "--n", "3", "--m", "5", "--seed", "7"),
                     ("--family", "aw_counterexample", "--m", "7")):
            code, text, _ = cli("gen", *argv)
            assert code == 0 and serialize_instance(parse_instance(text)) == text
            assert cli("gen", *argv)[1] == text

        path = tmp_path / "example4.json"
        assert cli("gen", "--family", "example4", "--out", str(path))[0] == 0
        for name in ("round_robin", "envy_cycle", "matching_pef1", "mnw_bruteforce"):
            runs = {cli("run", "--mechanism", name, "--instance", str(path), "--ordering", "3,1,4,2") for _ in range(3)}
            assert len(runs) == 1
            code, out, _ = runs.pop()
            assert code == 0
            result = RunResult.loads(out)
            assert RunResult.loads(result.dumps()) == result and result.dumps() == out
        assert json.loads(cli("run", "--mechanism", "round_robin", "--instance", str(path))[1])["bundles"][0] == [1, 5]

        assert cli("audit", "--mechanism", "matching_pef1", "--instance", str(path), "--require-pef1")[0] == 0
        assert cli("audit", "--mechanism", "round_robin", "--instance", str(path),
                   "--checks", "pef_degree", "--require-pef1")[0] == 1
        assert cli("run", "--mechanism", "round_robin", "--instance", str(path), "--ordering", "1,2")[0] == 2
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        assert cli("run", "--mechanism", "round_robin", "--instance", str(bad))[0] == 2
        monkeypatch.setenv("FAIRDIV_ENUM_CAP", "10")
        code, _, err = cli("audit", "--mechanism", "round_robin", "--instance", str(path), "--checks", "po")
        assert code == 2 and "resource" in err
