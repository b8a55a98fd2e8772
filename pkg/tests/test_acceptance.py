"""Acceptance criteria 1-7. Each test records one PASS/FAIL line, printed
in the terminal summary (and to stdout when run with ``-s``)."""
import json
import os
import random
import subprocess
import sys
import time

import pytest

from leancut import fixtures as fx
from leancut.corpus import (
    connected_simple_graphs,
    random_3ec_multigraph,
    random_decomposition,
    random_multigraph,
    seed_from_env,
    spread_decomposition,
)
from leancut.errors import InvariantError, IterationLimitError
from leancut.improve import improvement_step_detailed, leanify
from leancut.leanness import find_minimal_certificate, is_lean
from leancut.linkage import max_linking_paths
from leancut.multigraph import edges_between, is_k_edge_connected, write_graph
from leancut.oracle import NAIVE_ADHESION_CAP, brute_force_tcw, naive_is_lean, naive_max_linking_paths
from leancut.tcd import (
    Order,
    all_adhesions,
    compare_fatness,
    fatness,
    trivial_decomposition,
    width,
    write_decomposition,
)

from conftest import ACCEPTANCE_LINES

SEED = seed_from_env()


def report(number, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _random_pairs(r, g, count):
    ids = sorted(g.edges)
    for _ in range(count):
        yield set(r.sample(ids, r.randint(1, len(ids)))), set(r.sample(ids, r.randint(1, len(ids))))


def test_criterion_1_menger_duality():
    r = random.Random(SEED)
    started = time.monotonic()
    cases = []
    for name, make in sorted(fx.GRAPHS.items()):
        g = make()
        cases += [(g, A, B) for A, B in _random_pairs(r, g, 10)]
    cases += [(fx.c4(), {0, 3}, {1, 2}), (fx.interleave4(), {0, 1, 2}, {3, 4, 5})]
    for _ in range(100):
        n = r.randint(2, 6)
        g = random_multigraph(r, n, r.randint(n - 1, 12))
        cases += [(g, A, B) for A, B in _random_pairs(r, g, 10)]
    bad = 0
    for g, A, B in cases:
        res = max_linking_paths(g, A, B)
        if not (res.count == len(res.cut) == naive_max_linking_paths(g, A, B)):
            bad += 1
    elapsed = time.monotonic() - started
    report(1, bad == 0 and elapsed < 60, f"{len(cases)} (A,B) pairs, {bad} mismatches, {elapsed:.1f}s (< 60s)")


def _max_adhesion(g, d):
    return max((len(a) for a in all_adhesions(g, d).values()), default=0)


def test_criterion_2_leanness_oracle_agreement():
    r = random.Random(SEED + 2)
    pairs = []
    for name, make in sorted(fx.GRAPHS.items()):
        g = make()
        decs = [trivial_decomposition(g), brute_force_tcw(g)[1]]
        if g.n == 4:
            decs += [fx.interleaved(), fx.two_bags({0, 1}, {2, 3}), fx.two_bags({0, 2}, {1, 3})]
        pairs += [(g, d) for d in decs if _max_adhesion(g, d) <= NAIVE_ADHESION_CAP]
    fixture_count = len(pairs)
    while len(pairs) < fixture_count + 100:
        n = r.randint(2, 5)
        g = random_multigraph(r, n, r.randint(n - 1, 9))
        if r.random() < 0.5:
            d = random_decomposition(r, g, r.randint(1, 6))
        else:
            d = spread_decomposition(r, g, r.randint(n, n + 2))
        if _max_adhesion(g, d) <= NAIVE_ADHESION_CAP:
            pairs.append((g, d))
    agree = sum(is_lean(g, d) == naive_is_lean(g, d) for g, d in pairs)
    lean = sum(is_lean(g, d) for g, d in pairs)
    report(
        2,
        agree == len(pairs),
        f"{agree}/{len(pairs)} agree ({fixture_count} fixture pairs, {lean} lean, {len(pairs) - lean} not lean)",
    )


GOLDEN_K = {"interleave4": 2, "barbell3ec": 4}


def test_criterion_3_certificate_fixtures():
    got = {name: find_minimal_certificate(fx.GRAPHS[name](), fx.interleaved()).k for name in GOLDEN_K}
    report(3, got == GOLDEN_K, f"k found {got}, golden {GOLDEN_K}")


# -- the corpus run shared by criteria 4, 5 and 6 ---------------------------


class CorpusRun:
    def __init__(self):
        self.steps = 0
        self.contract_failures = []
        self.guard_hits = 0
        self.traces = []
        self.width_rows = []
        self.seconds = 0.0


def _checked_loop(run, g, d, max_iters=1000):
    """Improvement loop that re-checks the step contract from the outside."""
    trace = [tuple(fatness(g, d))]
    for _ in range(max_iters):
        try:
            step = improvement_step_detailed(g, d)
        except InvariantError as exc:
            run.contract_failures.append(str(exc))
            return None
        if step is None:
            run.traces.append(trace)
            return d
        run.steps += 1
        new = step.decomposition
        V1, V2 = step.sides
        before, after = all_adhesions(g, d), all_adhesions(g, new)
        problems = []
        if width(g, new) > width(g, d):
            problems.append("width grew")
        if compare_fatness(fatness(g, new), fatness(g, d)) is not Order.LESS:
            problems.append("fatness did not decrease")
        if after[step.map.join] != edges_between(g, V1, V2):
            problems.append("join adhesion")
        for link, (e1, e2) in step.map.link_copies.items():
            if len(after[e1]) > len(before[link]) or len(after[e2]) > len(before[link]):
                problems.append(f"copy of {link} grew")
        for extra, orig in ((step.map.a2_prime, step.certificate.a), (step.map.b1_prime, step.certificate.b)):
            if len(after[extra]) > len(before[orig]):
                problems.append("subdivided copy grew")
        run.contract_failures += problems
        trace.append(tuple(step.fatness_after))
        d = new
    run.guard_hits += 1
    return None


def _leanify_run(run, g, d):
    trace = []
    try:
        out = leanify(g, d, trace=trace)
    except IterationLimitError:
        run.guard_hits += 1
        return None
    except InvariantError as exc:
        run.contract_failures.append(str(exc))
        return None
    run.steps += len(trace)
    # one fatness sequence per improvement loop inside the recursion
    loops = {}
    for rec in trace:
        seq = loops.setdefault(rec.run, [tuple(rec.fatness_before)])
        if seq[-1] != tuple(rec.fatness_before):
            run.contract_failures.append("trace records do not chain")
        seq.append(tuple(rec.fatness_after))
    run.traces += loops.values()
    return out


@pytest.fixture(scope="module")
def corpus():
    run = CorpusRun()
    started = time.monotonic()
    r = random.Random(SEED + 4)
    # improvement loops on random 3-edge-connected instances
    for i in range(200):
        n = r.randint(2, 6)
        g = random_3ec_multigraph(r, n, r.randint(max(3, 2 * n - 1), 13))
        if i % 2:
            d = spread_decomposition(r, g, r.randint(n, n + 2))
        else:
            d = random_decomposition(r, g, r.randint(2, 7))
        _checked_loop(run, g, d)
    _checked_loop(run, fx.barbell3ec(), fx.interleaved())
    # leanify from the oracle witness, exhaustively for small simple graphs
    graphs = [(f"atlas{i}", g) for i, g in enumerate(connected_simple_graphs(5))]
    graphs += [(name, fx.GRAPHS[name]()) for name in ("K4", "Theta3", "barbell3ec")]
    for name, g in graphs:
        best, witness = brute_force_tcw(g)
        out = _leanify_run(run, g, witness)
        if out is None:
            run.width_rows.append((name, best, None, False))
            continue
        run.width_rows.append((name, best, width(g, out), naive_is_lean(g, out)))
    # and from deliberately poor starts, which do take steps
    for name in ("K4", "barbell3ec"):
        g = fx.GRAPHS[name]()
        for _ in range(10):
            _leanify_run(run, g, random_decomposition(r, g, r.randint(2, 6)))
            _leanify_run(run, g, spread_decomposition(r, g, r.randint(4, 6)))
    run.seconds = time.monotonic() - started
    return run


def test_criterion_4_step_contract(corpus):
    report(
        4,
        corpus.steps > 0 and not corpus.contract_failures,
        f"{corpus.steps} improvement steps, {len(corpus.contract_failures)} contract failures",
    )


def test_criterion_5_leanify_keeps_best_width(corpus):
    rows = corpus.width_rows
    bad = [row for row in rows if row[2] != row[1] or row[3] is not True]
    report(
        5,
        not bad and len(rows) >= 34 and corpus.seconds < 900,
        f"{len(rows) - len(bad)}/{len(rows)} graphs keep the best enumerated width and pass "
        f"naive_is_lean; corpus run {corpus.seconds:.1f}s (< 900s)",
    )


def test_criterion_6_termination(corpus):
    decreasing = all(
        compare_fatness(b, a) is Order.LESS
        for trace in corpus.traces
        for a, b in zip(trace, trace[1:])
    )
    longest = max(len(trace) - 1 for trace in corpus.traces)
    report(
        6,
        corpus.guard_hits == 0 and decreasing,
        f"{len(corpus.traces)} runs, {corpus.guard_hits} iteration-guard hits, "
        f"longest run {longest} steps, fatness strictly decreasing: {decreasing}",
    )


def _cli_run(tmp_path, tag, gp, dp, env):
    out, rep, tr = (tmp_path / f"{tag}.{ext}" for ext in ("json", "report.json", "tsv"))
    cmd = [sys.executable, "-m", "leancut.cli", "leanify", gp]
    cmd += [dp] if dp else []
    cmd += ["-o", str(out), "--report", str(rep), "--trace", str(tr)]
    subprocess.run(cmd, check=True, env=env, capture_output=True)
    return out.read_bytes(), rep.read_bytes(), tr.read_bytes()


def test_criterion_7_determinism(tmp_path):
    env = dict(os.environ, LEANCUT_SEED=str(SEED))
    r = random.Random(SEED + 7)
    inputs = []
    g = fx.barbell3ec()
    write_graph(g, tmp_path / "barbell.txt")
    write_decomposition(fx.interleaved(), tmp_path / "inter.json")
    inputs.append((str(tmp_path / "barbell.txt"), str(tmp_path / "inter.json")))
    write_graph(fx.interleave4(), tmp_path / "inter4.txt")
    inputs.append((str(tmp_path / "inter4.txt"), None))
    g = random_3ec_multigraph(r, 6, 13)
    write_graph(g, tmp_path / "rand.txt")
    write_decomposition(random_decomposition(r, g, 5), tmp_path / "rand.json")
    inputs.append((str(tmp_path / "rand.txt"), str(tmp_path / "rand.json")))
    same = 0
    for i, (gp, dp) in enumerate(inputs):
        first = _cli_run(tmp_path, f"a{i}", gp, dp, env)
        second = _cli_run(tmp_path, f"b{i}", gp, dp, env)
        same += first == second
        json.loads(first[1])
    report(7, same == len(inputs), f"{same}/{len(inputs)} inputs give byte-identical outputs, reports and traces")
