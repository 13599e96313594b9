"""Acceptance criteria 1-10.

Each test prints one line ``criterion N: PASS|FAIL ...``; the lines are
repeated in the pytest terminal summary.  A criterion's line is written
before its assertion, so a failing criterion is reported as FAIL.
"""

import itertools
import subprocess
import sys
import time

from verbalrank.catalog import CORPUS_WORDS, FULL, SMOKE, get_group
from verbalrank.checks import (
    check_abelian_wi, check_fitting_bound, check_focal, check_goodgen, check_rank_bound,
    check_section_lemma, frobenius_counterexample, standard_closure,
)
from verbalrank.groups import enumerate_by_closure
from verbalrank.structure import is_soluble, p_part, prime_divisors, sylow_subgroup
from verbalrank.subgroups import derived_subgroup
from verbalrank.verbal import w_values
from verbalrank.words import WordTree, commutator, defect, delta, gamma, sections, word_from_spec

from conftest import group, record_acceptance

WORDS = [word_from_spec(s) for s in CORPUS_WORDS]


def _shapes(k, memo={0: [()]}):
    if k not in memo:
        memo[k] = [(a, b) for i in range(k) for a in _shapes(i) for b in _shapes(k - 1 - i)]
    return memo[k]


def test_criterion_01_word_calculus():
    t0 = time.perf_counter()
    golden = defect(gamma(4)) == 8 and defect(commutator(gamma(3), gamma(3))) == 4
    deltas = all(defect(delta(n)) == 0 for n in range(5))
    full_shapes = {delta(n).shape for n in range(4)}
    shapes = [s for k in range(8) for s in _shapes(k)]
    iff = all((defect(WordTree.from_shape(s)) == 0) == (s in full_shapes) for s in shapes)
    secs = time.perf_counter() - t0
    ok = golden and deltas and iff and secs < 1.0
    record_acceptance(1, ok, f"defect goldens, delta_n, {len(shapes)} shapes <= 15 vertices, {secs:.2f}s")
    assert ok


def test_criterion_02_goodgen():
    t0 = time.perf_counter()
    bad = []
    count = 0
    for name in SMOKE:
        G = group(name)
        X = standard_closure(G)
        for w in WORDS:
            r = check_goodgen(G, X, w, name)
            count += 1
            if r.verdict != "pass":
                bad.append((name, str(w), r.verdict))
    secs = time.perf_counter() - t0
    ok = not bad and secs < 300
    record_acceptance(2, ok, f"{count} (group, word) pairs, failures {bad[:3]}, {secs:.1f}s")
    assert ok


def test_criterion_03_focal():
    t0 = time.perf_counter()
    bad, count = [], 0
    for name in SMOKE:
        G = group(name)
        if not is_soluble(G):
            continue
        for p in prime_divisors(G.order()):
            for w in WORDS:
                r = check_focal(G, w, p, name)
                count += 1
                if r.verdict != "pass":
                    bad.append((name, p, str(w), r.verdict))
    secs = time.perf_counter() - t0
    ok = not bad and count > 0 and secs < 300
    record_acceptance(3, ok, f"{count} (group, prime, word) triples, failures {bad[:3]}, {secs:.1f}s")
    assert ok


def test_criterion_04_rank_bound():
    bad, count = [], 0
    for name in FULL:
        G = group(name)
        if G.order() > 384 or not is_soluble(G):
            continue
        for w in WORDS:
            r = check_rank_bound(G, w, "nilpotent", name)
            count += 1
            if r.verdict != "pass":
                bad.append((name, str(w), r.verdict))
    A5 = group("A5")
    els = A5.host.elements()
    comms = {a.comm(b) for a in els for b in els}
    ore = len(comms) == 60 and len(w_values(A5, gamma(2))) == 60
    simple = check_rank_bound(A5, gamma(2), "nilpotent", "A5")
    ok = not bad and count > 0 and ore and simple.verdict == "pass"
    record_acceptance(4, ok, f"{count} soluble (group, word) pairs, A5 commutators {len(comms)}/60, "
                             f"A5 r={simple.quantities['r']} rank={simple.quantities['rank_w_G']}, failures {bad[:3]}")
    assert ok


def test_criterion_05_fitting_bound():
    rows, bad = [], []
    for name in FULL:
        G = group(name)
        if G.order() > 384 or not is_soluble(G):
            continue
        r = check_fitting_bound(G, name)
        rows.append(name)
        if r.verdict != "pass":
            bad.append((name, r.verdict))
    ok = not bad and rows
    record_acceptance(5, bool(ok), f"{len(rows)} soluble groups with computable rank, failures {bad}")
    assert ok


def test_criterion_06_section_lemma():
    bad, count = [], 0
    for name in ("S4", "SL(2,3)", "D8"):
        G = group(name)
        for w, eta in ((gamma(2), gamma(2)), (gamma(3), delta(1))):
            for S in sections(w):
                r = check_section_lemma(G, w, eta, S, name)
                count += 1
                if r.verdict != "pass":
                    bad.append((name, str(w), sorted(S), r.verdict))
    ok = not bad
    record_acceptance(6, ok, f"{count} (group, pair, section) cases, failures {bad[:3]}")
    assert ok


def test_criterion_07_abelian_wi():
    bad, critical = [], 0
    for name in SMOKE:
        G = group(name)
        if not is_soluble(G):
            continue
        r = check_abelian_wi(G, gamma(2), name)
        critical += len(r.quantities.get("critical_tuples", []))
        if r.verdict != "pass":
            bad.append((name, r.verdict, r.witness))
    ok = not bad
    record_acceptance(7, ok, f"{critical} critical tuples over soluble smoke groups, nonabelian w(i) found: {bad}")
    assert ok


def test_criterion_08_frobenius():
    t0 = time.perf_counter()
    rows, ok = [], True
    for m in (1, 2, 3):
        _, r = frobenius_counterexample(3, m, 3)
        q = r.quantities
        good = (r.verdict == "pass" and q["G_n_equals_G"] and q["all_cyclic"]
                and q["max_rank_nilpotent"] == 1 and q["rank_lower_bound"] >= m)
        ok &= good
        rows.append(f"m={m} |G|={q['order_G']} rank>={q['rank_lower_bound']}")
    secs = time.perf_counter() - t0
    ok &= secs < 120
    record_acceptance(8, ok, f"{'; '.join(rows)}; {secs:.1f}s")
    assert ok


def test_criterion_09_engine_oracles():
    bad, count = [], 0
    for name in FULL:
        G = group(name)
        if G.order() > 200:
            continue
        count += 1
        host = G.host
        if host.order() != len(enumerate_by_closure(host.degree, host.generators)):
            bad.append((name, "order"))
        els = host.elements()
        comms = sorted({a.comm(b) for a in els for b in els})
        if derived_subgroup(G).order() != len(enumerate_by_closure(host.degree, comms)):
            bad.append((name, "derived"))
        for p in prime_divisors(G.order()):
            if sylow_subgroup(G, p).order() != p_part(G.order(), p):
                bad.append((name, f"sylow {p}"))
    ok = not bad and count > 0
    record_acceptance(9, ok, f"{count} groups of order <= 200, mismatches {bad}")
    assert ok


def test_criterion_10_determinism(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"out{k}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "verbalrank", "corpus", "run", "--profile", "smoke", "--json", str(path)],
            capture_output=True, text=True,
        )
        outs.append((proc.returncode, proc.stdout, path.read_bytes()))
    ok = outs[0][0] == 0 and outs[0] == outs[1]
    record_acceptance(10, ok, f"two smoke runs: exit {outs[0][0]}/{outs[1][0]}, "
                              f"JSON {len(outs[0][2])} bytes, identical={outs[0][2] == outs[1][2]}")
    assert ok
