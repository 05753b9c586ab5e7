"""Acceptance gate: one test per criterion, each reported as PASS or FAIL
in the terminal summary."""

import io
import json
import math
import time
from fractions import Fraction

import numpy as np

from eigenperiod.cli import run
from eigenperiod.dm import cyclic_cover_genus, is_int, is_sigma_int, parse_weights
from eigenperiod.exact import exact_signature, smith_normal_form
from eigenperiod.hodge import (
    CharacterHodgeStructure,
    arrangement_eigendims,
    half_twist,
    sylvester_signature,
    validate_chs,
)
from eigenperiod.k3 import cyclic_root_isometry, k3_lattice, verify_catalog
from eigenperiod.lattice import root_vectors, standard_lattice
from eigenperiod.siegel import (
    cayley_from_bounded,
    cayley_to_bounded,
    find_polarization,
    in_bounded_Ipq,
    in_bounded_siegel,
    is_symplectic,
    random_siegel_point,
    random_sp2g_z,
    riemann_frobenius,
    satake_embed,
    standard_J,
    symplectic_action,
    transitivity_witness,
)

from helpers import box_vectors_of_norm, random_int_matrix, random_symmetric
from test_exact import eig_signature, snf_postconditions
from test_hodge import curve_structure, random_sigma, random_structure
from test_lattice import e8_coordinate_roots, e8_simple_roots
from test_siegel import random_with_singular_values


def cli(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out, stderr=io.StringIO())
    return code, json.loads(out.getvalue())


def test_01_dm_int_counts(criterion):
    with criterion(1, "INT counts 27, 7, 1, 1 for m = 5..8 at d_max 60"):
        expected = {5: 27, 6: 7, 7: 1, 8: 1}
        for m, count in expected.items():
            start = time.perf_counter()
            code, rep = cli("dm", "enum", str(m), "INT", "--dmax", "60")
            elapsed = time.perf_counter() - start
            systems = rep["results"]["systems"]
            assert code == 0
            assert len(systems) == count, (
                f"m = {m}: expected {count} systems, found {len(systems)}:\n" + "\n".join(systems))
            assert elapsed < 60


def test_02_sigma_int_bound(criterion):
    with criterion(2, "SigmaINT: (1/6)^12 found at m = 12, m = 13 and 14 empty"):
        start = time.perf_counter()
        _, rep = cli("dm", "enum", "12", "SigmaINT")
        assert ",".join(["1/6"] * 12) in rep["results"]["systems"]
        for m in (13, 14):
            _, rep = cli("dm", "enum", str(m), "SigmaINT", "--dmax", "60")
            assert rep["results"]["count"] == 0
        assert time.perf_counter() - start < 300


def test_03_table_weight_rows(criterion):
    with criterion(3, "table weight rows satisfy SigmaINT; three of them also INT"):
        rows = {"1/6x12": False, "2/6x5,1/6x2": False, "2/5x5": True, "1/3x6": True, "1/4x8": True}
        for text, int_expected in rows.items():
            mu = parse_weights(text)
            assert mu.weight == 2
            assert is_sigma_int(mu), text
            assert is_int(mu) == int_expected, text


def test_04_k3_catalog(criterion):
    with criterion(4, "all glue pairs pass rank, signature, det, group and form checks"):
        start = time.perf_counter()
        res = verify_catalog()
        assert time.perf_counter() - start < 10
        assert len(res["entries"]) == 8
        for e in res["entries"]:
            assert e["rank_sum_is_22"] and e["sig_pattern_ok"] and e["det_match"] and e["group_iso"], e["name"]
            if e["name"] != "dp4_text":
                assert e["form_anti_iso"] is True, e["name"]
        assert res["pass"]


def test_05_k3_lattice(criterion):
    with criterion(5, "K3 lattice: rank 22, even, det +-1, signature (3, 19)"):
        L = k3_lattice()
        assert L.rank == 22 and L.is_even and abs(L.det()) == 1
        assert tuple(L.signature())[:2] == (3, 19)


def test_06_root_counts(criterion):
    with criterion(6, "root counts A2 6, D4 24, E8 240 against box oracles"):
        for name, count in (("A2", 6), ("D4", 24)):
            L = standard_lattice(name)
            assert len(root_vectors(L)) == count == box_vectors_of_norm(L.gram_matrix, -2)
        start = time.perf_counter()
        E8 = standard_lattice("E8")
        R = e8_simple_roots()
        assert E8.gram == tuple(tuple(int(-sum(a * b for a, b in zip(x, y))) for y in R) for x in R)
        assert len(root_vectors(E8)) == 240 == e8_coordinate_roots()
        assert time.perf_counter() - start < 30


def test_07_riemann_frobenius(criterion):
    with criterion(7, "elliptic curves polarized by rJ, r < 0; sqrt torus has none at bound 10"):
        J = standard_J(1)
        for tau in (1j, 0.5 + 2j, -1.3 + 0.2j):
            for r in (-1, -2, -7):
                assert riemann_frobenius(np.array([[tau], [1]]), r * J)
                assert riemann_frobenius(np.array([[1, tau]]), r * J, "period")
            assert not riemann_frobenius(np.array([[tau], [1]]), J)
        P = np.sqrt(np.array([[-2, -3], [-5, -7]], dtype=complex))
        start = time.perf_counter()
        assert find_polarization(P, 10) == []
        assert time.perf_counter() - start < 300


def test_08_siegel_suite(criterion):
    with criterion(8, "group law, witness, Cayley and Satake property suites"):
        rng = np.random.default_rng(8)
        worst = 0.0
        for case in range(50):
            g = 1 + case % 3
            M1, M2 = random_sp2g_z(g, rng), random_sp2g_z(g, rng)
            Z = random_siegel_point(g, rng)
            d = symplectic_action(M1 @ M2, Z) - symplectic_action(M1, symplectic_action(M2, Z))
            worst = max(worst, float(np.max(np.abs(d))))
        assert worst < 1e-8
        for case in range(100):
            g = 1 + case % 3
            Z = random_siegel_point(g, rng)
            M = transitivity_witness(Z)
            assert is_symplectic(M)
            assert np.max(np.abs(symplectic_action(M, 1j * np.eye(g)) - Z)) < 1e-9
        for _ in range(100):
            Z = random_siegel_point(2, rng)
            back = cayley_from_bounded(cayley_to_bounded(Z))
            assert np.max(np.abs(back - Z)) / max(1.0, np.max(np.abs(Z))) < 1e-9
        for _ in range(100):
            p, q = (int(x) for x in rng.integers(1, 4, size=2))
            Z = random_with_singular_values(rng, q, p, rng.uniform(0.0, 1.2, size=min(p, q)))
            assert in_bounded_Ipq(Z) == in_bounded_siegel(satake_embed(Z))


def test_09_hodge_suite(criterion):
    with criterion(9, "half twist (1, 2m-6, 1), K3 signature, eigendims, random half twists"):
        for m in range(5, 13):
            assert half_twist(curve_structure(m), {1}).hodge_numbers() == (1, 2 * m - 6, 1)
        assert sylvester_signature(22, (1, 20, 1)) == (3, 19)
        e = arrangement_eigendims(parse_weights("1/3x6"), 1)
        assert e.numbers == (1, 3) and e.total == 4
        rng = np.random.default_rng(9)
        for _ in range(200):
            H = random_structure(rng)
            S = random_sigma(rng, H.group_order)
            W = half_twist(H, S)
            chars = S | {(-a) % H.group_order for a in S}
            assert W.total() == H.total(chars)
            assert validate_chs(W)[0]


def test_10_cyclic_isometries(criterion):
    with criterion(10, "order-p isometries of A_{p-1} for p = 2, 3, 5, 7, 11, 13"):
        for p in (2, 3, 5, 7, 11, 13):
            _, _, rep = cyclic_root_isometry(p)
            assert rep["isometry"] and rep["order_p"] and rep["no_fixed_vector"]
            assert rep["fixes_discriminant_generator"]


def test_11_genus(criterion):
    with criterion(11, "cyclic cover genus of y^3 = six linear factors is 4"):
        assert cyclic_cover_genus(3, (1, 1, 1, 1, 1, 1)) == 4


def test_12_kernel_properties(criterion):
    with criterion(12, "SNF postconditions on 500 matrices; signature vs eigenvalues on 200"):
        rng = np.random.default_rng(12)
        for _ in range(500):
            r, c = (int(x) for x in rng.integers(1, 7, size=2))
            A = random_int_matrix(rng, r, c, bound=9)
            snf_postconditions(A, *smith_normal_form(A))
        for _ in range(200):
            n = int(rng.integers(1, 7))
            G = random_symmetric(rng, n)
            if round(np.linalg.det(G)) == 0:
                G = G + np.diag(rng.choice([-19, 19], size=n))
            assert tuple(exact_signature(G.tolist()))[:2] == eig_signature(G)
