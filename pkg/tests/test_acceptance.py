"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line; the lines are
collected again in the terminal summary.
"""

import json
import subprocess
import sys
import time

import pytest

from _summary import LINES
from klr import flag_oracle
from klr.coxeter import CartanType, get_system
from klr.flag_oracle import count_open_richardson, flag_count, richardson_tally
from klr.hecke import HeckeAlgebra
from klr.kltables import KLTable, TableInvariantError, TableStore, default_table, dumps, load
from klr.laurent import LaurentPoly
from klr.multiplicity import (
    SUITES,
    Multiplicities,
    jh_poly,
    richardson_poincare,
    ungraded_mult,
    verify_suite,
)
from oracles import Oracle

P = LaurentPoly.parse


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    LINES.append(line)
    assert ok, line


def test_criterion_1_rank_one():
    W = get_system("A1")
    t = default_table(W)
    e, s = W.identity, W.gen(1)
    got = (jh_poly(e, s, t).poly, richardson_poincare(e, s, t), ungraded_mult(e, s, t))
    want = (P("v^-1 + v"), P("1 + v^2"), 2)
    record(1, got == want, f"A1 jh={got[0]}, poincare={got[1]}, ungraded={got[2]}")


def test_criterion_2_A2():
    W = get_system("A2")
    t = default_table(W)
    e, w0 = W.identity, W.longest_element()
    jh, rp = jh_poly(e, w0, t).poly, richardson_poincare(e, w0, t)
    betti = [rp[2 * i] for i in range(4)]
    ok = jh == P("v^-3 + 2*v^-1 + 2*v + v^3") and rp == P("1 + 2*v^2 + 2*v^4 + v^6")
    record(2, ok and betti == [1, 2, 2, 1], f"A2 jh={jh}, poincare={rp}, betti={betti}")


def test_criterion_3_identity_suites():
    summary = []
    ok = True
    for t in ("A1", "A2", "A3", "B2", "B3"):
        W = get_system(t)
        rep = verify_suite(W, default_table(W), "all")
        ok &= rep.ok and rep.pairs_checked() == len(SUITES) * len(W.comparable_pairs())
        summary.append(f"{t}:{len(rep.failures)}")
    start = time.perf_counter()
    W = get_system("A4")
    rep = verify_suite(W, default_table(W), "all", jobs=1)
    elapsed = time.perf_counter() - start
    ok &= rep.ok and elapsed < 300
    summary.append(f"A4:{len(rep.failures)} in {elapsed:.1f}s")
    record(3, ok, "counterexamples " + ", ".join(summary))


def test_criterion_4_kl_oracle():
    bad = 0
    pairs = 0
    for t in ("A3", "B3"):
        W = get_system(t)
        alg = HeckeAlgebra.of(W)
        oracle = Oracle(W)
        for x in W.enumerate():
            expect = oracle.kl_column(x)
            for y in W.enumerate():
                pairs += 1
                bad += alg.kl_poly(y, x) != expect.get(y, LaurentPoly())
    A3 = get_system("A3")
    special = HeckeAlgebra.of(A3).kl_poly(A3.gen(2), A3.element([2, 1, 3, 2]))
    record(4, bad == 0 and special == P("v + v^3"),
           f"{bad} mismatches over {pairs} pairs; h(2, 2132) = {special}")


def test_criterion_5_flag_oracle():
    flag_oracle._tally_cached.cache_clear()
    start = time.perf_counter()
    cases = [(2, q) for q in (2, 3, 5)] + [(3, q) for q in (2, 3, 5)] + [(4, 2)]
    mismatches = compared = 0
    strat_ok = True
    for n, q in cases:
        W = get_system(CartanType("A", n - 1))
        for y in W.enumerate():
            for yp in W.enumerate():
                c = count_open_richardson(y, yp, q)
                compared += 1
                mismatches += c.verdict != "OK"
        tally = richardson_tally(n, q)
        total = sum(q ** len(w) for w in W.enumerate())
        strat_ok &= sum(tally.values()) == total == flag_count(n, q)
    elapsed = time.perf_counter() - start
    record(5, mismatches == 0 and strat_ok and elapsed < 60,
           f"{mismatches} mismatches over {compared} pairs, stratification "
           f"{'ok' if strat_ok else 'broken'}, {elapsed:.1f}s")


def _cli(*args):
    proc = subprocess.run([sys.executable, "-m", "klr", *args], capture_output=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_criterion_6_ell_positive(tmp_path):
    notes = []
    ok = True
    # corrupted file: one perturbed coefficient in A3
    a3 = default_table("A3")
    obj = json.loads(dumps(a3))
    obj["polys"]["2|2,1,3,2"] = [[1, 1], [3, 2]]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    try:
        load(bad, "A3")
        ok = False
        notes.append("corrupted file accepted")
    except TableInvariantError as exc:
        rule_ok = [(x.rule, x.x) for x in exc.violations] == [("bar-invariance", "2,1,3,2")]
        ok &= rule_ok
        notes.append(f"corrupted file -> {exc.violations[0]}")
    code, _, err = _cli("table", "validate", str(bad))
    ok &= code == 2 and b"bar-invariance" in err

    # l = 0 data relabelled l = 2 must give byte-identical reports
    files = {}
    for t in ("A3", "B3", "C3"):
        tab = default_table(t)
        files[t] = tmp_path / f"{t}.json"
        files[t].write_text(dumps(KLTable(tab.cartan, 2, dict(tab.polys), "synthetic")))
    for t, extra in (("A3", []), ("B3", ["--dual-table", str(files["C3"])])):
        for fmt in ("csv", "json", "text"):
            base = _cli("verify", "--type", t, "--format", fmt)
            ext = _cli("verify", "--type", t, "--format", fmt, "--table", str(files[t]), *extra)
            same = base == ext and base[0] == 0
            ok &= same
        W = get_system(t)
        store = TableStore([load(files[t], t), load(files["C3"], "C3")])
        calc2 = Multiplicities(store.get(W.cartan, 2), store=store)
        calc0 = Multiplicities(default_table(W))
        same = all(calc2.jh_poly(z, x) == calc0.jh_poly(z, x) for z, x in W.comparable_pairs())
        ok &= same
        notes.append(f"{t} ell=2 reports {'identical' if same else 'differ'}")
    record(6, ok, "; ".join(notes))


def test_criterion_7_determinism(tmp_path):
    outs = []
    for i in range(3):
        path = tmp_path / f"b3_{i}.csv"
        code, stdout, _ = _cli("verify", "--suite", "all", "--type", "B3", "--jobs", "4",
                               "--format", "csv", "--output", str(path))
        outs.append((code, stdout, path.read_bytes()))
    serial = _cli("verify", "--suite", "all", "--type", "B3", "--format", "csv")[1]
    ok = all(o == outs[0] for o in outs) and outs[0][0] == 0 and outs[0][2] == serial
    record(7, ok, f"3 runs with --jobs 4, {len(outs[0][2])} bytes each, "
           f"{'identical' if ok else 'different'} (serial run matches: {outs[0][2] == serial})")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
