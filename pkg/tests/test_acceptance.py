"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import time
from contextlib import contextmanager
from itertools import chain, combinations

import numpy as np
import pytest

import btensor as bt
from cases import (
    diag_index,
    make_t42,
    make_t43,
    random_b,
    random_doubly_b,
    random_hypergraph,
    random_mixed_diag,
    random_sdd_z,
    random_sddd_z,
    random_symmetric,
    random_symmetric_b,
    random_tensor,
    random_z,
)


@contextmanager
def criterion(number, label, budget=None):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"criterion {number} ({label}): FAIL")
        raise
    elapsed = time.perf_counter() - start
    print(f"criterion {number} ({label}): PASS  [{elapsed:.2f}s]")
    if budget is not None:
        assert elapsed < budget, f"criterion {number} took {elapsed:.2f}s, budget {budget}s"


def test_criterion_1_all_ones_paper_example():
    with criterion(1, "all-ones intervals and dim-2 spectrum", budget=1.0):
        ones43 = bt.Tensor.ones(4, 3)
        sym = bt.intervals_even_symmetric(ones43)
        assert [(p.lo, p.hi) for p in sym.parts] == [(0.0, 27.0)]
        gersch = bt.intervals_gerschgorin(ones43)
        assert [(p.lo, p.hi) for p in gersch.parts] == [(-25.0, 27.0)]

        pairs = bt.eigenpairs_n2(bt.Tensor.ones(4, 2))
        assert sorted(p.lam for p in pairs) == [0.0, 8.0]
        assert all(p.residual <= 1e-10 for p in pairs)


def test_criterion_2_t43_kernel_example():
    with criterion(2, "order-4 dim-3 B-tensor with kernel vector", budget=1.0):
        t43 = make_t43()
        assert bt.is_b(t43)
        assert bt.residual(t43, 0.0, [-4.0, 2.0, 3.0]) <= 1e-9

        dec = bt.decompose_b(t43)
        assert np.array_equal(dec.part_b.array + dec.part_c.array, t43.array)
        assert bt.is_z(dec.part_b) and bt.is_b(dec.part_b)
        assert np.all(dec.part_c.array >= 0.0) and bt.is_b(dec.part_c)
        assert dec.epsilon > 0.0


def test_criterion_3_t42_counterexample():
    with criterion(3, "doubly-B counter-example classification and split"):
        t42 = make_t42()
        flags = bt.classify(t42).flags
        assert flags["Z"] is True
        assert flags["B"] is False
        assert flags["doublyB"] is True
        assert flags["SDDD"] is True
        assert flags["SDD"] is False

        # not positive definite: the quartic form dips negative
        assert bt.polyeval(t42, [0.9, 1.0]) == pytest.approx(-0.2878, abs=1e-10)

        dec = bt.decompose_doubly_b(t42)
        assert np.array_equal(dec.part_b.array + dec.part_c.array, t42.array)
        assert bt.is_z(dec.part_b) and bt.is_doubly_b(dec.part_b)
        assert np.all(dec.part_c.array >= 0.0) and bt.is_doubly_b(dec.part_c)
        n, m = t42.dim, t42.order
        expected_c = np.broadcast_to(
            dec.row_constants.reshape((n,) + (1,) * (m - 1)), t42.array.shape).copy()
        expected_c[diag_index(n, m)] = dec.row_constants + dec.epsilon
        assert np.array_equal(dec.part_c.array, expected_c)


def test_criterion_4_equivalence_ladder():
    with criterion(4, "equivalence ladder on 1000 random tensors", budget=30.0):
        rng = np.random.default_rng(20240811)
        makers = (random_tensor, random_z, random_sdd_z, random_sddd_z,
                  random_b, random_doubly_b, random_mixed_diag)
        sizes = [(m, n) for m in (2, 3, 4) for n in (2, 3, 4)]
        violations = 0
        for k in range(1000):
            m, n = sizes[k % len(sizes)]
            A = makers[k % len(makers)](rng, m, n)
            P = bt.a_plus(A)
            checks = [
                bt.is_b(A) == bt.is_b(P),
                bt.is_doubly_b(A) == bt.is_doubly_b(P),
                bt.is_b(A) == bt.is_sdd(P),
                bt.is_doubly_b(A) == bt.is_sddd(P),
                (not bt.is_b(A)) or bt.is_doubly_b(A),
                (not bt.is_sdd(A)) or bt.is_sddd(A),
            ]
            if bt.is_z(A):
                checks.append(bt.is_b(A) == bt.is_sdd(A))
                checks.append(bt.is_doubly_b(A) == bt.is_sddd(A))
            violations += sum(not ok for ok in checks)
        assert violations == 0


def _nonempty_subsets(n):
    return chain.from_iterable(combinations(range(1, n + 1), r)
                               for r in range(1, n + 1))


def test_criterion_5_heredity_and_cone():
    with criterion(5, "heredity and cone suites, 500 members each"):
        rng = np.random.default_rng(20240812)
        sizes = [(m, n) for m in (2, 3, 4) for n in (2, 3, 4)]
        violations = 0

        for k in range(500):  # principal sub-tensors of B-tensors stay B
            m, n = sizes[k % len(sizes)]
            A = random_b(rng, m, n)
            violations += sum(not bt.is_b(bt.principal_subtensor(A, J))
                              for J in _nonempty_subsets(n))

        for k in range(500):  # principal sub-tensors of doubly-B stay doubly-B
            m, n = sizes[k % len(sizes)]
            A = random_doubly_b(rng, m, n)
            violations += sum(not bt.is_doubly_b(bt.principal_subtensor(A, J))
                              for J in _nonempty_subsets(n))

        for k in range(500):  # sums and positive scalings of B-tensors stay B
            m, n = sizes[k % len(sizes)]
            A1, A2 = random_b(rng, m, n), random_b(rng, m, n)
            total = bt.Tensor.from_array(A1.array + A2.array)
            scaled = bt.Tensor.from_array(float(rng.uniform(0.1, 4.0)) * A1.array)
            violations += (not bt.is_b(total)) + (not bt.is_b(scaled))

        for k in range(500):  # row-constant and diagonal additions keep doubly-B
            m, n = sizes[k % len(sizes)]
            A = random_doubly_b(rng, m, n)
            row_shift = rng.uniform(0.0, 2.0, size=n).reshape((n,) + (1,) * (m - 1))
            with_rows = bt.Tensor.from_array(A.array + row_shift)
            diag_boost = A.array.copy()
            diag_boost[diag_index(n, m)] += rng.uniform(0.0, 3.0, size=n)
            with_diag = bt.Tensor.from_array(diag_boost)
            violations += (not bt.is_doubly_b(with_rows)) + (not bt.is_doubly_b(with_diag))

        assert violations == 0


def test_criterion_6_interval_soundness_vs_oracle():
    with criterion(6, "interval soundness against the oracle", budget=300.0):
        rng = np.random.default_rng(20240813)
        violations = 0

        for k in range(300):  # full dim-2 spectrum inside the per-row union
            A = random_tensor(rng, 2 + k % 3, 2)
            union = bt.intervals_odd_or_n2(A)
            for pair in bt.eigenpairs_n2(A, tol=1e-8):
                violations += not union.contains(pair.lam, slack=1e-9)

        for k in range(300):  # searched eigenvalues of Z-tensors inside the union
            A = random_z(rng, 3, 3)
            union = bt.intervals_z(A)
            for pair in bt.eigen_search(A, restarts=64, seed=0):
                violations += not union.contains(pair.lam, slack=1e-9)

        for k in range(300):  # searched eigenvalues inside the symmetric interval
            A = random_symmetric(rng, 4, 3)
            union = bt.intervals_even_symmetric(A)
            for pair in bt.eigen_search(A, restarts=64, seed=0):
                violations += not union.contains(pair.lam, slack=1e-9)

        assert violations == 0


def test_criterion_7_hypergraph_laplacians():
    with criterion(7, "3-uniform hypergraph Laplacian bounds"):
        rng = np.random.default_rng(20240814)
        for k in range(50):
            n = 3 + k % 4  # up to 6 vertices
            G = random_hypergraph(rng, n, 3)
            L = bt.laplacian_tensor(G)
            assert bt.is_z(L)
            assert np.array_equal(bt.row_stats(L).row_sum, np.zeros(n))
            bound = bt.laplacian_bounds(G)
            for pair in bt.eigen_search(L, restarts=64, seed=0):
                assert bound.contains(pair.lam, slack=1e-9)


def test_criterion_8_definiteness_verdicts():
    with criterion(8, "definiteness verdicts"):
        iden = bt.definiteness(bt.Tensor.identity(4, 3))
        assert iden.verdict == "positive_definite" and iden.method == "B_test"

        ones = bt.definiteness(bt.Tensor.ones(4, 3))
        assert ones.verdict == "positive_semidefinite"

        rng = np.random.default_rng(20240815)
        for k in range(100):
            A = random_symmetric_b(rng, 2 * (1 + k % 2), 2 + k % 3)
            verdict = bt.definiteness(A)
            assert verdict.verdict != "indefinite_possible"
