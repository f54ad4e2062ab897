"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line."""

from __future__ import annotations

import os
import subprocess
import sys
from itertools import combinations

import pytest

from labcount.antimagic import count_weak_antimagic_ie
from labcount.cones import build_system, extreme_rays
from labcount.directed import directed_magic_scan, is_directed_exception, search_directed_antimagic
from labcount.labelings import (
    NONNEG,
    POSITIVE,
    count_block_magic,
    count_magic_by_index,
    count_weak_antimagic_direct,
    vertex_sums,
)
from labcount.multigraph import bowtie, directed_path, path_graph
from labcount.quasipoly import detect_minimal
from labcount.suites import Scope, directed_family, family_graphs, run_verification_suite

pytestmark = pytest.mark.slow

SMALL = family_graphs(5, 1, 5)  # connected simple graphs, |V| <= 5, |E| <= 5


def block_specs(n):
    """Single blocks of 2..4 vertices and pairs of disjoint 2-vertex blocks."""
    specs = []
    for size in range(2, min(n, 4) + 1):
        specs += [(c,) for c in combinations(range(n), size)]
    for a in combinations(range(n), 2):
        for b in combinations(range(n), 2):
            if a < b and not set(a) & set(b):
                specs.append((a, b))
    return specs


def well_formed(report):
    return all(
        {"index", "graph", "measured", "paper_claim", "agrees"} <= set(r)
        and r["agrees"] in ("yes", "no", "inconclusive")
        for r in report["records"]
    )


def test_1_oracle_equivalence(acceptance):
    checked = 0
    mismatches = []
    for g in SMALL:
        for blocks in block_specs(g.n):
            for positivity in (NONNEG, POSITIVE):
                for k in range(6):
                    dp = count_block_magic(g, blocks, k, positivity, "dp")
                    brute = count_block_magic(g, blocks, k, positivity, "brute")
                    checked += 1
                    if dp != brute:
                        mismatches.append((g.edges, blocks, positivity, k, dp, brute))
    ok = not mismatches
    acceptance(1, "dp engine equals brute engine", ok, f"{checked} comparisons, {len(mismatches)} mismatches")
    assert ok, mismatches[:5]


def test_2_inclusion_exclusion(acceptance):
    bad = [
        (g.edges, k)
        for g in SMALL
        for k in range(6)
        if count_weak_antimagic_ie(g, k) != count_weak_antimagic_direct(g, k)
    ]
    ok = not bad
    acceptance(2, "inclusion-exclusion equals direct A_G(k)", ok, f"{len(SMALL)} graphs, k <= 5")
    assert ok, bad[:5]


def test_3_magic_index_period(acceptance):
    rep = run_verification_suite("stanley-period", Scope(graphs=family_graphs(5), r_max=20))
    violations = [r["index"] for r in rep["records"] if r["agrees"] != "yes"]
    ok = rep["status"] == "all-agree" and not violations
    acceptance(3, "H_G(r) period <= 2, 1 when bipartite", ok, f"{rep['summary']['graphs']} graphs, {len(violations)} violations")
    assert ok


def test_4_golden_sequences(acceptance):
    p3, bow = path_graph(3), bowtie()
    failures = []

    def check(name, got, expected, oracle=None):
        if got != expected or (oracle is not None and oracle != expected[: len(oracle)]):
            failures.append(name)

    a = [count_weak_antimagic_direct(p3, k) for k in range(11)]
    check("P3 A(k)", a, [k * k - k for k in range(11)], [count_weak_antimagic_ie(p3, k) for k in range(11)])
    m = [count_block_magic(p3, [(0, 2)], k) for k in range(11)]
    check("P3 M(k)", m, [k + 1 for k in range(11)], [count_block_magic(p3, [(0, 2)], k, engine="brute") for k in range(11)])
    h = [count_magic_by_index(bow, r) for r in range(21)]
    check(
        "bowtie H(r)",
        h,
        [r // 2 + 1 if r % 2 == 0 else 0 for r in range(21)],
        [count_magic_by_index(bow, r, "brute") for r in range(9)],
    )
    mv = [count_block_magic(bow, [range(5)], k) for k in range(11)]
    check(
        "bowtie M_V(k)",
        mv,
        [1, 1, 3, 4, 6, 8, 11, 13, 17, 20, 24],
        [count_block_magic(bow, [range(5)], k, engine="brute") for k in range(8)],
    )
    for length, expected in [(3, [1, 2, 5, 8, 13]), (4, [1, 2, 3, 6, 9, 12, 17, 22, 27, 34])]:
        d = directed_path(length)
        block = [tuple(range(1, length))]
        got = [count_block_magic(d, block, k) for k in range(len(expected))]
        oracle = [count_block_magic(d, block, k, engine="brute") for k in range(len(expected))]
        check(f"directed l={length}", got, expected, oracle)
    ok = not failures
    acceptance(4, "golden sequences", ok, "all match" if ok else ", ".join(failures))
    assert ok, failures


def test_5_period_claim_audit(acceptance):
    bow = bowtie()
    scope = Scope(graphs=(bow,), blocks=(tuple(range(5)),), k_max=30)
    partial = run_verification_suite("partial-period", scope)
    labels = run_verification_suite("lemma7", scope)
    rec = partial["records"][0]["measured"]
    seq = [int(x) for x in rec["sequence"]]
    oracle = [count_block_magic(bow, [range(5)], k, engine="brute") for k in range(8)]
    refit = detect_minimal(seq, 12, bow.num_edges)
    label_rec = labels["records"][0]["measured"]
    witnesses_valid = all(
        len(set(vertex_sums(bow, [int(x) for x in w["vector"][:6]]))) == 1
        and max(int(x) for x in w["vector"][:6]) == label_rec["max_label_over_rays"]
        for w in label_rec["witnesses"]
    )
    rays = extreme_rays(build_system(bow, [range(5)], "maxlabel"))
    period = rec["fit"]["period"]
    label = label_rec["max_label_over_rays"]
    ok = (
        well_formed(partial)
        and well_formed(labels)
        and seq[:8] == oracle
        and refit.found
        and refit.period == period
        and witnesses_valid
        and label == max(r.max_label for r in rays)
    )
    detail = (
        f"measured period {period} (agrees={partial['records'][0]['agrees']}), "
        f"max ray label {label} (agrees={labels['records'][0]['agrees']})"
    )
    acceptance(5, "period and ray-label audit reported", ok, detail)
    assert ok


def test_6_reciprocity(acceptance):
    graphs = family_graphs(6, 1, 5)
    rep = run_verification_suite("reciprocity", Scope(graphs=graphs, t_max=7))
    failures = [r for r in rep["records"] if r["agrees"] != "yes"]
    pendant = [
        r
        for r in rep["records"]
        if r["graph"]["edges"] == [[0, 1], [0, 2], [1, 2], [2, 3]] and r["measured"]["blocks"] == [[0, 1, 2, 3]]
    ]
    flagged = bool(pendant) and pendant[0]["measured"]["implicit_equalities"] != [] and (
        pendant[0]["measured"]["positive_equals_interior"] is False
    )
    ok = not failures and flagged
    acceptance(
        6,
        "reciprocity against relative-interior counts",
        ok,
        f"{rep['summary']['records']} (graph, block) pairs, {len(failures)} failures, pendant flagged={flagged}",
    )
    assert ok


def test_7_conjecture_surveys(acceptance):
    graphs = family_graphs(6, 2)
    strict = run_verification_suite("strict-antimagic", Scope(graphs=graphs))
    failed_strict = [r["graph"]["edges"] for r in strict["records"] if not r["measured"]["found"]]
    weak = run_verification_suite("weak-antimagic", Scope(graphs=graphs))
    weak_bad = [r for r in weak["records"] if r["agrees"] != "yes"]
    bipartite_checked = sum(
        1 for r in weak["records"] if any(c["statement"] == "bipartite" for c in r["measured"].get("checks", []))
    )
    ok = strict["status"] == "all-agree" and failed_strict == [[[0, 1]]] and not weak_bad
    acceptance(
        7,
        "strict and weak antimagic surveys",
        ok,
        f"{len(graphs)} graphs; strict fails only on {failed_strict}; "
        f"weak 2|E| all found, |E| bound on {bipartite_checked} bipartite graphs",
    )
    assert ok


def test_8_directed_suite(acceptance):
    small = directed_family(3)
    search_ok = all((search_directed_antimagic(d) is None) == is_directed_exception(d) for d in small)
    exceptions = sum(is_directed_exception(d) for d in small)
    scans_ok = all(directed_magic_scan(d, 4)["common_values"].keys() <= {"0"} for d in directed_family(4))
    periods = run_verification_suite("directed-period", Scope(lengths=(2, 3, 4, 5, 6)))
    found = periods["summary"]["periods"]
    ok = search_ok and exceptions > 0 and scans_ok and found[:3] == [1, 2, 3] and periods["summary"]["exceeds_two"]
    acceptance(
        8,
        "directed search, magic scan and path periods",
        ok,
        f"{len(small)} digraphs, {exceptions} exception labelings; periods {found}",
    )
    assert ok


def test_9_ray_indices(acceptance):
    rep = run_verification_suite("lemma34", Scope(graphs=family_graphs(5)))
    bad = [r["index"] for r in rep["records"] if r["agrees"] != "yes"]
    indices = sorted({i for r in rep["records"] for i in r["measured"]["ray_indices"]})
    ok = not bad and set(indices) <= {1, 2}
    acceptance(9, "ray indices in {1,2}; spanning condition iff all indices 1", ok, f"indices seen {indices}, {len(bad)} violations")
    assert ok


def test_10_determinism(acceptance, tmp_path):
    outputs = []
    for threads in ("1", "4"):
        env = dict(os.environ, LABCOUNT_THREADS=threads)
        for argv in (
            ["survey", "--check", "strict-antimagic", "--max-vertices", "5"],
            ["verify", "--suite", "reciprocity", "--max-vertices", "4"],
        ):
            proc = subprocess.run(
                [sys.executable, "-m", "labcount", *argv], capture_output=True, env=env, check=True
            )
            outputs.append(proc.stdout)
    ok = outputs[0] == outputs[2] and outputs[1] == outputs[3]
    acceptance(10, "reports identical with 1 and 4 workers", ok, f"{sum(map(len, outputs))} bytes compared")
    assert ok
