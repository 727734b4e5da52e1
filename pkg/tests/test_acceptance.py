"""Acceptance criteria, each run at its stated scale and tolerance.

Each test prints one PASS/FAIL line (also repeated in the terminal summary).
"""

import json
import math
import time

import pytest

from conftest import ACCEPTANCE_LINES
from orientchi.cli import main
from orientchi.verify import run_suite

pytestmark = pytest.mark.acceptance


def report_line(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    print(line)
    ACCEPTANCE_LINES.append(line)


def _suite(number, title, name, limit_s, **kwargs):
    report = run_suite(name, **kwargs)
    ok = report.passed and report.complete and report.runtime <= limit_s
    report_line(number, title, ok,
                f"{report.instances_run} instances, {len(report.failures)} failures, {report.runtime:.1f}s")
    return report, ok


def test_criterion_1_flh_extraction():
    report, ok = _suite(1, "disoriented long holes yield a->b<-c<-d", "flh-extraction", 600,
                        exhaustive_n=7, samples=10_000, seed=0, max_n=10)
    assert report.stats["disoriented_long_holes"] > 0
    assert ok, report.failures[:3]


def test_criterion_2_chvatal():
    report, ok = _suite(2, "acyclic a->b<-c<-d-free orientations are perfect", "chvatal", 600,
                        n=9, samples=500, seed=7)
    assert report.instances_run == 500
    assert ok, report.failures[:3]


def test_criterion_3_shift_family():
    report, ok = _suite(3, "shift digraphs: omega 2, no ->.<-.->, chi = ceil(log2 n)", "shift-family",
                        math.inf, n_min=3, n_max=8)
    for n in range(3, 9):
        assert report.stats[str(n)] == {"omega": 2, "chi": math.ceil(math.log2(n)), "frf": False}
    assert ok, report.failures


def test_criterion_4_cyclic_recognizer():
    report, ok = _suite(4, "cyclic recognizer dichotomy on all regular 7-tournaments", "cyclic-recognizer",
                        math.inf, n=7)
    assert report.stats["tournaments"] == 2640 and report.instances_run == 2640 * 7
    assert ok, report.failures[:3]


def test_criterion_5_partition_certificates():
    start = time.perf_counter()
    reports = [
        run_suite("outnbrs", n=10, samples=200, seed=11),
        run_suite("outorderable", n=10, samples=200, seed=13),
        run_suite("robustpartition", n=12, samples=200, seed=17),
    ]
    elapsed = time.perf_counter() - start
    failures = sum(len(r.failures) for r in reports)
    ok = failures == 0 and elapsed <= 1800
    report_line(5, "partition certificates re-verify independently", ok,
                f"{sum(r.instances_run for r in reports)} certificates/witnesses, {failures} failures, {elapsed:.1f}s")
    assert ok, [r.failures[:2] for r in reports]


def test_criterion_6_userobust():
    report, ok = _suite(6, "dense spread instances are not robust", "userobust", math.inf,
                        n=12, samples=200, seed=19, taus=(1, 2))
    assert report.stats["hypothesis_true"] > 0
    assert ok, report.failures[:3]


def test_criterion_7_layer_inequality():
    report, ok = _suite(7, "layer chromatic inequality", "layer-inequality", math.inf,
                        n=9, samples=300, seed=23)
    assert report.instances_run == 300
    assert ok, report.failures[:3]


def test_criterion_8_pipeline():
    report, ok = _suite(8, "colouring pipeline soundness on 1-spread digraphs", "pipeline", math.inf,
                        n=10, samples=100, seed=29)
    assert report.stats["graphs"] == 100
    assert ok, report.failures[:3]


DETERMINISM_COMMANDS = [
    ["gen", "shift", "--n", "6"],
    ["gen", "cyclic", "--m", "3"],
    ["gen", "random", "--n", "10", "--p", "0.5", "--seed", "1"],
    ["gen", "acyclic", "--n", "10", "--p", "0.5", "--seed", "1"],
    ["gen", "tournament", "--n", "9", "--seed", "1"],
    ["gen", "star", "--s", "2", "--t", "3"],
    ["analyze", "--chi", "--omega", "--holes", "--spread", "1", "--rich", "1", "1", "--pattern", "p4:frr", "{G}"],
    ["decompose", "{G}", "--theorem", "outnbrs", "--n", "2"],
    ["decompose", "{G}", "--theorem", "outorderable"],
    ["decompose", "{G}", "--theorem", "robustpartition"],
    ["color", "{T}", "--k1", "2", "--h", "2"],
    ["color", "--acyclic", "{A}"],
    ["verify", "pipeline", "--samples", "10", "--seed", "3"],
    ["verify", "outnbrs", "--samples", "10", "--seed", "3"],
]


def _run_all(tmp_path, tag):
    G, T, A = tmp_path / "g.dg", tmp_path / "t.dg", tmp_path / "a.dg"
    main(["gen", "random", "--n", "10", "--p", "0.5", "--seed", "1", "-o", str(G)])
    main(["gen", "tournament", "--n", "9", "--seed", "1", "-o", str(T)])
    main(["gen", "acyclic", "--n", "10", "--p", "0.5", "--seed", "1", "-o", str(A)])
    outputs = []
    for i, argv in enumerate(DETERMINISM_COMMANDS):
        argv = [a.format(G=G, T=T, A=A) for a in argv]
        out = tmp_path / f"{tag}{i}.out"
        assert main(argv + ["-o", str(out)]) == 0, argv
        text = out.read_text()
        if argv[0] == "verify":
            # wall-clock runtime is the one field that legitimately varies
            doc = json.loads(text)
            doc.pop("runtime")
            text = json.dumps(doc, indent=2)
        outputs.append(text)
    return outputs


def test_criterion_9_determinism(tmp_path):
    first = _run_all(tmp_path, "a")
    second = _run_all(tmp_path, "b")
    same = sum(a == b for a, b in zip(first, second))
    ok = same == len(DETERMINISM_COMMANDS)
    report_line(9, "fixed-seed commands are byte-identical across runs", ok,
                f"{same}/{len(DETERMINISM_COMMANDS)} commands identical")
    assert ok
