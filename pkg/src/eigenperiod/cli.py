"""Command-line front end.

Every subcommand prints one JSON report on stdout::

    {"schema": 1, "command": ..., "inputs": ..., "results": ...,
     "pass": ..., "version": ..., "timing": {"seconds": ...}}

Exit status is 0 when every check passes, 1 when one fails and 2 for usage,
parse or precondition errors. A short summary goes to stderr when it is a
terminal.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from . import __version__
from . import dm, hodge, k3, siegel
from .expr import LatticeExprError, parse_expr
from .lattice import discriminant_form, discriminant_group, is_p_elementary

SCHEMA = 1


class UsageError(Exception):
    pass


# -- JSON helpers ------------------------------------------------------------

def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.ndarray):
        if np.iscomplexobj(x):
            return matrix_to_json(x)
        return _jsonable(x.tolist())
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def matrix_to_json(M) -> dict:
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    r, c = M.shape
    return {"rows": r, "cols": c,
            "entries": [[float(z.real), float(z.imag)] for z in M.ravel()]}


def matrix_from_json(obj: Any) -> np.ndarray:
    """Read ``{"rows", "cols", "entries": [[re, im], ...]}`` or a nested list."""
    if isinstance(obj, list):
        try:
            return np.array(obj, dtype=complex)
        except (TypeError, ValueError) as exc:
            raise UsageError(f"bad matrix: {exc}") from None
    try:
        r, c, entries = int(obj["rows"]), int(obj["cols"]), obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"matrix JSON needs rows, cols and entries ({exc})") from None
    if len(entries) != r * c:
        raise UsageError(f"expected {r * c} entries, got {len(entries)}")
    vals = []
    for e in entries:
        if isinstance(e, (int, float)):
            vals.append(complex(e))
        elif len(e) == 2:
            vals.append(complex(float(e[0]), float(e[1])))
        else:
            raise UsageError(f"entry {e!r} is not [re, im]")
    return np.array(vals, dtype=complex).reshape(r, c)


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from None


def _load_matrix(path: str) -> np.ndarray:
    return matrix_from_json(_load_json(path))


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _integral_matrix(M: np.ndarray) -> np.ndarray:
    if np.any(np.abs(M.imag) > 0) or np.any(M.real != np.round(M.real)):
        raise UsageError("polarization matrix must have integer entries")
    return np.round(M.real).astype(int)


# -- subcommands -------------------------------------------------------------
# each returns (inputs, results, pass)

def _lattice_summary(L) -> dict:
    out = {
        "rank": L.rank,
        "gram": L.gram_matrix,
        "signature": list(L.signature()),
        "det": L.det(),
        "even": L.is_even,
        "discriminant_group": discriminant_group(L),
    }
    if L.is_even:
        q = discriminant_form(L)
        out["discriminant_form"] = {"q": [str(v) for v in q.q_values],
                                    "b": [[str(v) for v in row] for row in q.b_pairings]}
    order = abs(out["det"])
    primes = [p for p in range(2, order + 1) if order % p == 0
              and all(p % d for d in range(2, int(p ** 0.5) + 1))]
    out["p_elementary"] = [p for p in primes if is_p_elementary(L, p)]
    return out


def cmd_lattice_info(a):
    e = _parse_lattice(a.expr)
    L = e.lattice()
    res = {"canonical": e.canonical(), **_lattice_summary(L)}
    return {"expr": a.expr}, res, True


def _parse_lattice(text: str):
    try:
        return parse_expr(text)
    except LatticeExprError as exc:
        raise UsageError(str(exc)) from None


def cmd_k3_verify_table(a):
    res = k3.verify_catalog()
    return {}, res, res["pass"]


def cmd_k3_glue(a):
    M = _parse_lattice(a.m_expr)
    N = _parse_lattice(a.n_expr)
    pair = k3.GluePair("custom", M.lattice(), N.lattice(), "cli")
    rep = k3.glue_report(pair)
    return {"M": M.canonical(), "N": N.canonical()}, rep.as_dict(), rep.passed


def cmd_k3_cyclic(a):
    L, rho, rep = k3.cyclic_root_isometry(a.p)
    return {"p": a.p}, {"lattice": L.label, "rho": rho, **rep}, rep["pass"]


def _weights(text: str) -> dm.WeightSystem:
    try:
        return dm.parse_weights(text)
    except dm.WeightError as exc:
        if exc.condition == "parse":
            raise UsageError(str(exc)) from None
        raise


def cmd_dm_enum(a):
    systems = dm.enumerate_weights(a.m, a.condition, a.dmax, workers=a.workers)
    res = {"count": len(systems), "systems": [w.to_string() for w in systems]}
    return {"m": a.m, "condition": a.condition, "dmax": a.dmax}, res, True


def cmd_dm_check(a):
    try:
        mu = dm.parse_weights(a.mu)
    except dm.WeightError as exc:
        if exc.condition == "parse":
            raise UsageError(str(exc)) from None
        return {"mu": a.mu}, {"valid": False, "violated": exc.condition, "message": str(exc)}, False
    res = {
        "valid": True,
        "canonical": mu.to_string(),
        "json": mu.to_json(),
        "m": mu.m,
        "d": mu.d,
        "weight": mu.weight,
        "INT": dm.is_int(mu),
        "SigmaINT": dm.is_sigma_int(mu),
        "INT_failing_pairs": [[str(u), str(v)] for u, v in dm.failing_pairs(mu, dm.INT)],
    }
    return {"mu": a.mu}, res, True


def cmd_dm_genus(a):
    ks = _int_list(a.exponents)
    return {"d": a.d, "exponents": ks}, {"genus": dm.cyclic_cover_genus(a.d, ks)}, True


def cmd_dm_stability(a):
    k = _int_list(a.k)
    groups = []
    for part in a.groups.split(";"):
        idx = _int_list(part)
        if any(i < 1 or i > len(k) for i in idx):
            raise UsageError(f"group indices must lie in 1..{len(k)}")
        if idx:
            groups.append([i - 1 for i in idx])
    used = {i for g in groups for i in g}
    groups += [[i] for i in range(len(k)) if i not in used]
    v = dm.git_classify(k, groups)
    res = {"verdict": v.verdict.value, "witnesses": [[i + 1 for i in w] for w in v.witnesses]}
    return {"k": k, "groups": [[i + 1 for i in g] for g in groups]}, res, True


def cmd_siegel_check_point(a):
    Z = _load_matrix(a.file)
    sym = Z.shape[0] == Z.shape[1] and bool(np.allclose(Z, Z.T, atol=a.tol, rtol=0))
    ok = siegel.is_siegel_point(Z, a.tol) if Z.shape[0] == Z.shape[1] else False
    res = {"g": Z.shape[0], "symmetric": sym, "in_siegel_half_plane": ok}
    return {"file": a.file, "tol": a.tol}, res, ok


def cmd_siegel_riemann(a):
    P = _load_matrix(a.file)
    A = _integral_matrix(_load_matrix(a.afile))
    ok = siegel.riemann_frobenius(P, A, a.mode, a.tol)
    return {"file": a.file, "afile": a.afile, "mode": a.mode}, {"satisfied": ok, "A": A}, ok


def cmd_siegel_find_polarization(a):
    P = _load_matrix(a.file)
    found = siegel.find_polarization(P, a.bound, a.tol)
    res = {"count": len(found), "polarizations": [A.tolist() for A in found]}
    return {"file": a.file, "bound": a.bound}, res, True


def cmd_siegel_satake(a):
    Z = _load_matrix(a.file)
    if Z.shape != (a.q, a.p):
        raise UsageError(f"expected a {a.q} x {a.p} matrix, got {Z.shape[0]} x {Z.shape[1]}")
    inside = siegel.in_bounded_Ipq(Z, a.tol)
    W = siegel.satake_embed(Z)
    image_inside = siegel.in_bounded_siegel(W, a.tol)
    res = {"in_I_pq": inside, "embedded": W, "image_in_bounded_siegel": image_inside,
           "membership_agrees": inside == image_inside}
    return {"file": a.file, "p": a.p, "q": a.q}, res, inside == image_inside


def cmd_hodge_halftwist(a):
    try:
        H = hodge.CharacterHodgeStructure.from_json(_load_json(a.file))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if a.sigma == "canonical":
        sigma = sorted(hodge.canonical_sigma(H.group_order))
    else:
        sigma = _int_list(a.sigma)
    ok_in, diag_in = hodge.validate_chs(H)
    W = hodge.half_twist(H, sigma)
    ok_out, diag_out = hodge.validate_chs(W)
    res = {
        "input_valid": ok_in,
        "input_diagnostics": diag_in,
        "output": W.to_json(),
        "hodge_numbers": list(W.hodge_numbers()),
        "output_valid": ok_out,
        "output_diagnostics": diag_out,
    }
    return {"file": a.file, "sigma": sigma}, res, ok_in and ok_out


def cmd_hodge_eigendims(a):
    mu = _weights(a.mu)
    e = hodge.arrangement_eigendims(mu, a.n)
    res = {"numbers": list(e.numbers), "total": e.total}
    return {"mu": mu.to_string(), "n": a.n}, res, True


def cmd_hodge_signature(a):
    h = _int_list(a.h)
    tp, tm = hodge.sylvester_signature(a.b, h)
    return {"b": a.b, "hodge_numbers": h}, {"t_plus": tp, "t_minus": tm}, True


# -- parser ------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eigenperiod", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="group", required=True)

    def leaf(group, name, func: Callable, help: str):
        q = group.add_parser(name, help=help)
        q.set_defaults(func=func, command=f"{q.prog.split()[-2]} {name}")
        return q

    lat = sub.add_parser("lattice", help="lattice expressions").add_subparsers(dest="cmd", required=True)
    q = leaf(lat, "info", cmd_lattice_info, "invariants of a lattice expression")
    q.add_argument("expr")

    kk = sub.add_parser("k3", help="K3 catalog checks").add_subparsers(dest="cmd", required=True)
    leaf(kk, "verify-table", cmd_k3_verify_table, "check every catalog glue pair")
    q = leaf(kk, "glue", cmd_k3_glue, "check a custom (M, N) pair")
    q.add_argument("m_expr")
    q.add_argument("n_expr")
    q = leaf(kk, "cyclic", cmd_k3_cyclic, "order-p isometry of A_{p-1}")
    q.add_argument("p", type=int)

    d = sub.add_parser("dm", help="weight systems").add_subparsers(dest="cmd", required=True)
    q = leaf(d, "enum", cmd_dm_enum, "enumerate ball-case weight systems")
    q.add_argument("m", type=int)
    q.add_argument("condition", choices=list(dm.CONDITIONS))
    q.add_argument("--dmax", type=int, default=60)
    q.add_argument("--workers", type=int, default=1)
    q = leaf(d, "check", cmd_dm_check, "validate a weight system and test INT/SigmaINT")
    q.add_argument("mu", help='e.g. "1/3,1/3,1/3,1/3,1/3,1/3" or "1/3x6"')
    q = leaf(d, "genus", cmd_dm_genus, "genus of a cyclic cover of the line")
    q.add_argument("d", type=int)
    q.add_argument("exponents", help="comma-separated k_1,...,k_{m-1}")
    q = leaf(d, "stability", cmd_dm_stability, "GIT stability of weighted points")
    q.add_argument("k", help="comma-separated positive weights")
    q.add_argument("groups", help='1-based coincidence classes, e.g. "1,2,3;4"')

    s = sub.add_parser("siegel", help="Siegel half-plane").add_subparsers(dest="cmd", required=True)
    q = leaf(s, "check-point", cmd_siegel_check_point, "is Z in the Siegel half-plane")
    q.add_argument("file")
    q = leaf(s, "riemann", cmd_siegel_riemann, "Riemann-Frobenius conditions")
    q.add_argument("file")
    q.add_argument("afile")
    q.add_argument("--mode", choices=["coperiod", "period"], default="coperiod")
    q = leaf(s, "find-polarization", cmd_siegel_find_polarization,
             "search integral skew forms in a box")
    q.add_argument("file")
    q.add_argument("bound", type=int)
    q = leaf(s, "satake", cmd_siegel_satake, "Satake embedding of a q x p matrix")
    q.add_argument("file")
    q.add_argument("p", type=int)
    q.add_argument("q", type=int)
    for name in ("check-point", "riemann", "find-polarization", "satake"):
        s.choices[name].add_argument("--tol", type=float, default=siegel.DEFAULT_TOL)

    h = sub.add_parser("hodge", help="character Hodge structures").add_subparsers(dest="cmd", required=True)
    q = leaf(h, "halftwist", cmd_hodge_halftwist, "negative half twist")
    q.add_argument("file")
    q.add_argument("sigma", help='comma-separated characters or "canonical"')
    q = leaf(h, "eigendims", cmd_hodge_eigendims, "eigenspace Hodge numbers of an arrangement")
    q.add_argument("mu")
    q.add_argument("n", type=int)
    q = leaf(h, "signature", cmd_hodge_signature, "signature from Hodge numbers")
    q.add_argument("b", type=int)
    q.add_argument("h", help="comma-separated h^{n,0},...,h^{0,n}")
    return p


def _emit(report: dict, out) -> None:
    out.write(json.dumps(_jsonable(report), sort_keys=False) + "\n")


def _summary(report: dict) -> str:
    status = "PASS" if report.get("pass") else "FAIL"
    if "error" in report:
        return f"{report['command']}: error: {report['error']}"
    return f"{report['command']}: {status} ({report['timing']['seconds']:.3f} s)"


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed usage; --help and --version exit 0
        return 0 if exc.code in (0, None) else 2
    report: dict[str, Any] = {"schema": SCHEMA, "command": args.command}
    start = time.perf_counter()
    try:
        inputs, results, ok = args.func(args)
    except (UsageError, ValueError, ArithmeticError) as exc:
        report.update({"inputs": {k: v for k, v in vars(args).items()
                                  if k not in ("func", "command", "group", "cmd")},
                       "error": str(exc), "pass": False, "version": __version__})
        _emit(report, stdout)
        if stderr.isatty():
            print(_summary(report), file=stderr)
        return 2
    report.update({
        "inputs": inputs,
        "results": results,
        "pass": bool(ok),
        "version": __version__,
        "timing": {"seconds": round(time.perf_counter() - start, 6)},
    })
    _emit(report, stdout)
    if stderr.isatty():
        print(_summary(report), file=stderr)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


__all__ = ["main", "matrix_from_json", "matrix_to_json", "run"]
