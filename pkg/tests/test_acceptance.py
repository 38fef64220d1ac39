"""Acceptance criteria 1 to 10. Each test prints one PASS/FAIL line."""

import random
import subprocess
import sys
import time

import pytest

from fuscat.automorphisms import k_family
from fuscat.axioms import acts_transitively, is_frobenius, is_fully_k_normalized, normalizer_category
from fuscat.catalog import alternating4, catalog_cases, random_divisible_category, run_case, symmetric
from fuscat.linfusion import (
    FormalSum,
    alperin_decompose,
    chain_to_sum,
    essential_subgroups,
    is_essential,
    rf_lattice_oracle,
    sum_to_chain,
)
from fuscat.morphism import Morphism
from fuscat.pcategory import divisible_closure, is_divisible
from fuscat.verify import check_iterated_normalizer, fusion_from_ambient, iterated_normalizer_configs

SEED = 42


def report(capsys, n, ok, detail=""):
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def cases():
    return catalog_cases(seed=SEED, n_random=25)


@pytest.fixture(scope="module")
def built(cases):
    return [(c, c.build()) for c in cases]


@pytest.fixture(scope="module")
def rows(cases):
    out = []
    t0 = time.perf_counter()
    for c in cases:
        t = time.perf_counter()
        row = run_case(c)
        out.append((row, time.perf_counter() - t))
    return out, time.perf_counter() - t0


@pytest.fixture(scope="module")
def frobenius_cases(built):
    return [(c, F) for c, F in built if is_frobenius(F)]


def test_criterion_1_equivalence(capsys, cases, rows):
    timed, total = rows
    n_random = sum(1 for c in cases if c.kind == "random")
    bad = [r["key"] for r, _ in timed if not r.get("agreement") or not r.get("complete")]
    expected = [r["key"] for r, _ in timed if "expected" in r and r["frobenius"] != r["expected"]]
    slow = [r["key"] for r, dt in timed if dt >= 60]
    ok = n_random >= 25 and not bad and not expected and not slow and total < 600
    report(capsys, 1, ok, f"{len(timed)} cases ({n_random} random), disagreements={bad}, "
                          f"unexpected={expected}, slow={slow}, total={total:.1f}s")


def test_criterion_2_essentials(capsys, built):
    notes = []
    S4 = fusion_from_ambient(symmetric(4), 2)
    kleins = [Q for Q in S4.subgroups if Q.order == 4 and all(S4.P.parent.element_order(x) <= 2 for x in Q.elements)]
    ess = essential_subgroups(S4)
    s4_ok = sorted(ess, key=lambda Q: Q.key) == sorted(kleins, key=lambda Q: Q.key)
    s4_ok &= all(S4.aut_group(Q).order == 6 and acts_transitively(S4, Q) for Q in ess)
    notes.append(f"S4 essentials={[list(Q.elements) for Q in ess]} kleins={[list(Q.elements) for Q in kleins]} "
                 f"|F(Q)|={[S4.aut_group(Q).order for Q in kleins]}")
    inner_ok = all(not essential_subgroups(F) for c, F in built if c.kind == "inner")
    a4_ok = not essential_subgroups(fusion_from_ambient(alternating4(), 2))
    notes.append(f"inner zero={inner_ok} A4 zero={a4_ok}")
    report(capsys, 2, s4_ok and inner_ok and a4_ok, "; ".join(notes))


def test_criterion_3_graph_vs_lattice(capsys, built):
    checked, bad = 0, []
    for c, F in built:
        for Q in F.proper_subgroups():
            if len(F.maps_from(Q)) > 200:
                continue
            checked += 1
            if is_essential(F, Q) == rf_lattice_oracle(F, Q):
                bad.append((c.key, Q.elements))
    report(capsys, 3, checked > 0 and not bad, f"{checked} pairs, disagreements={bad}")


def test_criterion_4_alperin(capsys, frobenius_cases):
    total, bad = 0, []
    for c, F in frobenius_cases:
        allowed = set(essential_subgroups(F)) | {F.P}
        for R in F.subgroups:
            for psi in F.maps_from(R):
                total += 1
                chain = alperin_decompose(F, psi)
                if not chain.verify() or any(ln.U not in allowed for ln in chain.links):
                    bad.append((c.key, psi))
    report(capsys, 4, total > 0 and not bad, f"{total} morphisms over {len(frobenius_cases)} cases, failures={len(bad)}")


def test_criterion_5_chains(capsys, frobenius_cases):
    rng = random.Random(SEED)
    total, bad = 0, []
    for c, F in frobenius_cases:
        for R in F.subgroups:
            incl = Morphism.inclusion(R, F.P)
            for psi in F.maps_from(R):
                total += 1
                links = alperin_decompose(F, psi).to_links()
                try:
                    s = chain_to_sum(links, incl, psi)
                    if s != FormalSum.dimorphism(incl, psi):
                        raise AssertionError("sum mismatch")
                    if psi != incl:
                        shuffled = links[:]
                        rng.shuffle(shuffled)
                        order = sum_to_chain(shuffled, incl, psi)
                        chain_to_sum([shuffled[i] for i in order], incl, psi)
                except Exception as exc:  # noqa: BLE001
                    bad.append((c.key, psi, type(exc).__name__))
    report(capsys, 5, total > 0 and not bad, f"{total} instances, failures={len(bad)}")


def test_criterion_6_closure(capsys, built):
    bad = []
    for c, F in built:
        again = divisible_closure(F.P, F.p, list(F.morphisms()))
        if not again.same_homs(F) or not is_divisible(again)[0]:
            bad.append(c.key)
    rng = random.Random(SEED + 1)
    for i in range(100):
        _, F, seeds = random_divisible_category(rng)
        again = divisible_closure(F.P, F.p, list(F.morphisms()))
        if not is_divisible(F)[0] or not again.same_homs(F):
            bad.append(f"random seed set {i}")
    report(capsys, 6, not bad, f"{len(built)} catalog + 100 random seed sets, failures={bad}")


def test_criterion_7_normalizers(capsys, frobenius_cases):
    total, bad, incomplete = 0, [], 0
    for c, F in frobenius_cases:
        for Q in F.subgroups:
            ks, full = k_family(Q)
            incomplete += not full
            for K in ks:
                if not is_fully_k_normalized(F, Q, K, validate=False):
                    continue
                total += 1
                if not is_frobenius(normalizer_category(F, Q, K, check=False)):
                    bad.append((c.key, Q.elements, len(K)))
    report(capsys, 7, total > 0 and not bad, f"{total} (Q,K) pairs, failures={bad}, incomplete families={incomplete}")


def test_criterion_8_iterated_normalizer(capsys, frobenius_cases):
    pool = []
    for c, F in frobenius_cases:
        pool.extend((c.key, F, cfg) for cfg in iterated_normalizer_configs(F))
    sample = random.Random(SEED).sample(pool, min(300, len(pool)))
    bad = []
    for key, F, (Q, Fn, R, J) in sample:
        res = check_iterated_normalizer(F, Q, Fn, R, J)
        if not res.ok:
            bad.append((key, Q.elements, R.elements, len(J)))
    report(capsys, 8, len(sample) >= 100 and not bad, f"{len(sample)} of {len(pool)} configurations, failures={bad}")


def test_criterion_9_intersected_and_partial(capsys, rows):
    timed, _ = rows
    bad, lines = [], []
    for row, _ in timed:
        checks = row["checks"]
        if row["frobenius"]:
            if any(v != "yes" for v in checks.values()):
                bad.append(row["key"])
        else:
            if all(v == "yes" for v in checks.values()):
                bad.append(row["key"])
            lines.append(f"{row['key']}: " + "; ".join(f"{k}={v}" for k, v in sorted(checks.items())))
    with capsys.disabled():
        for ln in lines:
            print(f"\n  witness {ln}", end="")
    report(capsys, 9, not bad, f"{len(timed)} cases, {len(lines)} non-Frobenius, failures={bad}")


def test_criterion_10_determinism(capsys, tmp_path):
    cmd = [sys.executable, "-m", "fuscat.cli", "catalog", "run", "--seed", "42"]
    a = subprocess.run(cmd, capture_output=True, cwd=tmp_path)
    b = subprocess.run(cmd, capture_output=True, cwd=tmp_path)
    ok = a.returncode == b.returncode == 0 and a.stdout == b.stdout and len(a.stdout) > 0
    report(capsys, 10, ok, f"exit={a.returncode},{b.returncode} bytes={len(a.stdout)} identical={a.stdout == b.stdout}")
