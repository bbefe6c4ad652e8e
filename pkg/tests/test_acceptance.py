"""One test per acceptance criterion; each records a PASS/FAIL line."""
import os
import random
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

from conftest import ACCEPTANCE_LINES, a_values
from semicyclic import braiding
from semicyclic.cyclo import field_spec
from semicyclic.evaluator import compare_22, evaluate, kashaev, trace
from semicyclic.qcalc import QSign, f_coeff, qdiff, qfact
from semicyclic.reps import check_relations, generalized, semicyclic, standard
from semicyclic.tangle import CROSS_POS, Diagram, Slice, all_turaev_pairs, builtin
from semicyclic.words import (WORKING_CONVENTION, casimir_factorization, commute_EF, eval_commuted, eval_word,
                              is_balanced, random_balanced_word, search_bracket_conventions, Word)


@contextmanager
def criterion(label, title, budget=None):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        if budget is not None:
            assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        line = f"criterion {label}: {status}  {title}  ({elapsed:.1f}s)"
        ACCEPTANCE_LINES.append(line)
        print(line)


def all_semicyclic(spec):
    for name, a in a_values(spec):
        for i in range(spec.n):
            yield f"a={name} i={i}", semicyclic(spec, a, i)


def test_criterion_01_representation_axioms():
    with criterion("1", "representation relations, N in {3,5,7}, all i, a in {1,2,q,sym}", budget=5):
        for n in (3, 5, 7):
            spec = field_spec(n)
            for label, rep in all_semicyclic(spec):
                report = check_relations(rep)
                assert report.ok, (n, label, [c.identity for c in report if not c.ok])


def test_criterion_02_intertwiner():
    with criterion("2", "R Delta(Z) R^-1 = Delta'(Z) for Z in {E,F,K}", budget=30):
        for n in (3, 5, 7):
            spec = field_spec(n)
            for label, rep in all_semicyclic(spec):
                assert braiding.check_intertwiner(rep).ok, (n, label)


def test_criterion_03_yang_baxter():
    with criterion("3", "R12 R13 R23 = R23 R13 R12, N in {3,5,7}", budget=600):
        for n in (3, 5):
            spec = field_spec(n)
            for name, a in a_values(spec):
                for i in (0, (n + 1) // 2):
                    assert braiding.check_ybe(semicyclic(spec, a, i)), (n, name, i)
        spec = field_spec(7)
        for a in (spec.rational(2), spec.a()):
            assert braiding.check_ybe(semicyclic(spec, a, 4))


def test_criterion_04_fusion_dichotomy():
    with criterion("4", "(Delta x Id)(R) = R13 R23 holds; (Id x Delta)(R) - R13 R12 nonzero (semicyclic), zero (rho_0)"):
        for n in (3, 5, 7):
            spec = field_spec(n)
            for name, a in a_values(spec):
                for i in range(n):
                    if n == 7 and i not in (0, 4):
                        continue
                    report = braiding.check_fusion(semicyclic(spec, a, i))
                    assert report["(Delta x Id)(R) = R13 R23"].holds, (n, name, i)
                    assert not report["(Id x Delta)(R) = R13 R12"].holds, (n, name, i)
            report = braiding.check_fusion(standard(spec))
            assert report["(Delta x Id)(R) = R13 R23"].holds
            assert report["(Id x Delta)(R) = R13 R12"].holds


def test_criterion_04_witness_vector():
    """The witness v_0 (x) v_{i+1} (x) v_{i+1} must be sent to a nonzero vector.

    This is checked literally.  Since F^2 v_{i+1} = 0 the vector is killed
    by every surviving term, so this test is expected to fail; v_0 v_{i-1} v_{i-1}
    is the vector that works (asserted in the same loop for the record).
    """
    with criterion("4-witness", "residual maps v_0 v_{i+1} v_{i+1} to a nonzero vector"):
        failures = []
        for n in (3, 5):
            spec = field_spec(n)
            for i in range(n):
                rep = semicyclic(spec, spec.a(), i)
                r = braiding.r_matrix(rep)
                residual = braiding.id_delta_r(rep) - braiding.legs(r, "13") @ braiding.legs(r, "12")
                assert braiding.fusion_witness(rep, residual, -1)
                if not braiding.fusion_witness(rep, residual, +1):
                    failures.append((n, i))
        assert not failures, f"v_0 v_(i+1) v_(i+1) maps to zero for (N, i) in {failures}"


def test_criterion_05_turaev_moves():
    with criterion("5", "every Turaev move pair evaluates to equal operators, N in {3,5}"):
        for n in (3, 5):
            spec = field_spec(n)
            for name, a in a_values(spec):
                rep = semicyclic(spec, a, (n + 1) // 2)
                for move, variant, (left, right) in all_turaev_pairs():
                    assert evaluate(left, rep).operator == evaluate(right, rep).operator, (n, name, move, variant)


def test_criterion_06_f_lemma():
    with criterion("6", "f_q product formula and vanishing sums, N in {3,5,7}"):
        for n in (3, 5, 7):
            spec = field_spec(n)
            d = qdiff(spec)
            for a in range(1, n):
                for b in range(a + 1):
                    lhs = f_coeff(spec, a - b, QSign.MINUS) * f_coeff(spec, b)
                    sign = -1 if (a - b) % 2 else 1
                    rhs = sign * d ** a / (qfact(spec, a - b) * qfact(spec, b)) * spec.q((a - a * a) // 2 + b * (a - 1))
                    assert lhs == rhs, (n, a, b)
                s1 = sum((f_coeff(spec, a - b, QSign.MINUS) * f_coeff(spec, b) for b in range(a + 1)), spec.zero())
                s2 = sum((f_coeff(spec, a - b) * f_coeff(spec, b, QSign.MINUS) for b in range(a + 1)), spec.zero())
                assert s1 == 0 and s2 == 0, (n, a)


def test_criterion_07_kashaev_equivalence():
    with criterion("7", "semicyclic scalar = rho_0 scalar and a-free, unknot/trefoil/figure_eight, N in {3,5,7}"):
        for n in (3, 5, 7):
            spec = field_spec(n)
            for name in ("unknot", "trefoil", "figure_eight"):
                d = builtin(name)
                std = kashaev(d, spec)
                for i in (0, (n + 1) // 2):
                    s = evaluate(d, semicyclic(spec, spec.a(), i)).scalar
                    assert s == std, (n, name, i)
                    assert s.a_degrees() <= {0}, (n, name, i)


def test_criterion_08_figure_eight_trace():
    with criterion("8", "figure-eight staging r; r,s; r,s,t; r,s,t,u and cap relations"):
        for n in (3, 5):
            spec = field_spec(n)
            rep = semicyclic(spec, 1, (n + 1) // 2)
            value = evaluate(builtin("figure_eight"), rep).scalar
            for i in range(n):
                stages = list(trace(builtin("figure_eight"), rep, i))
                crossing_stages = [st for st in stages if st.slice is not None and st.slice.kind.startswith("cross")]
                assert [{len(lbl) for _, lbl in st.terms} for st in crossing_stages] == [{1}, {2}, {3}, {4}]
                last = crossing_stages[-1].terms
                for idx, (r, s, t, u) in last:
                    j, k = idx[0], idx[1]
                    assert idx[2:] == ((j + r - t + u) % n, (i - r + s - u) % n, (k - s + t) % n)
                # the caps keep exactly the terms with k = j+r-t+u and j = i-r+s-u
                kept = {lbl for idx, lbl in last
                        if idx[1] == (idx[0] + lbl[0] - lbl[2] + lbl[3]) % n
                        and idx[0] == (i - lbl[0] + lbl[1] - lbl[3]) % n}
                final = stages[-1].terms
                assert {lbl for _, lbl in final} <= kept
                assert all(idx == (i,) for idx, _ in final)
                assert sum(final.values(), spec.zero()) == value


def test_criterion_09_balanced_words():
    with criterion("9", "200 random balanced words diagonal and a-free; commute_EF sound, N in {3,5}"):
        seed = int(os.environ.get("SEMICYCLIC_SEED", "0"))
        for n in (3, 5):
            spec = field_spec(n)
            rng = random.Random(seed + n)
            fs = [spec.q(3 * j) * (2 * j + 3) for j in range(n)]
            reps = [semicyclic(spec, spec.a(), i) for i in range(n)] + [generalized(spec, spec.a(), fs)]
            for _ in range(200):
                w = random_balanced_word(rng, 2 * (n - 1))
                assert is_balanced(w)
                for rep in reps:
                    op = eval_word(w, rep, check=False)
                    assert op.is_diagonal() and op.is_a_free(), (n, str(w), rep.descr())
            for c in range(n):
                for d in range(c + 1, n):
                    w = Word(tuple(f for f in (("E", c), ("F", d)) if f[1]))
                    for rep in reps[:2] + [standard(spec)]:
                        assert eval_commuted(commute_EF(spec, c, d), rep) == eval_word(w, rep, check=False), (n, c, d)


def test_criterion_10_casimir_factorization():
    with criterion("10", "both Casimir factorizations for 1 <= m <= N-1, N in {3,5}"):
        assert search_bracket_conventions((3, 5)) == [WORKING_CONVENTION]
        for n in (3, 5):
            spec = field_spec(n)
            for rep in [semicyclic(spec, a, i) for _, a in a_values(spec) for i in (0, (n + 1) // 2)] + [standard(spec)]:
                for m in range(1, n):
                    assert casimir_factorization(m, rep).ok, (n, m, rep.descr())


def test_criterion_11_two_two_novelty():
    with criterion("11", "a single positive crossing differs between rho_{1,i} and rho_0, N=3"):
        spec = field_spec(3)
        cross = Diagram((Slice(CROSS_POS, 0),), ("d", "d"))
        assert compare_22(cross, spec, 1, 2).nonzero


def test_criterion_12_cli_end_to_end():
    with criterion("12", "'verify --n 3 --a sym all' exits 0, fusion-right fails as expected", budget=120):
        proc = subprocess.run([sys.executable, "-m", "semicyclic", "verify", "--n", "3", "--a", "sym", "all"],
                              capture_output=True, text=True, timeout=120)
        assert proc.returncode == 0, proc.stdout + proc.stderr
        lines = proc.stdout.splitlines()
        assert any("fails (expected)" in ln and "(Id x Delta)(R) = R13 R12" in ln for ln in lines)
        assert not any(" FAILS " in ln for ln in lines)
