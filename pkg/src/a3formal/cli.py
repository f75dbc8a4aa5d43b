"""Command-line front end.

    a3formal demushkin --p 3 --q 3 --d 4 --json
    a3formal hh --algebra exterior2.json --n 3 --s -1
    a3formal koszul --algebra exterior2.json --max 4
    a3formal dga --file small.json --action canonical
    a3formal example counterexample
    a3formal verify report.json

Exit status: 0 on success, 1 when `verify` rejects a report, 2 on invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .fp_core import FpError, signed
from .graded_algebra import BudgetExceeded

SCHEMA_ID = "formality-report/v1"


class UsageError(Exception):
    """Invalid input; reported with exit status 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"invalid arguments: {message}")


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(add_help=False)
    top.add_argument("--json", action="store_true", help="emit the JSON report")
    top.add_argument("--seed", type=int, default=0, help="seed for randomised choices")
    # same flags after the subcommand; SUPPRESS keeps them from resetting the global values
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    ap = _Parser(prog="a3formal", description="A3-formality toolkit over F_p.", parents=[top])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("demushkin", parents=[common], help="decide A3-formality of a Demushkin group")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--perturb", type=int, default=0,
                   help="apply this many seeded random changes to f2 before computing")

    s = sub.add_parser("hh", parents=[common], help="graded Hochschild cohomology dimension")
    s.add_argument("--algebra", required=True, help="quadratic presentation JSON (or a bundled name)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--s", type=int, required=True)
    s.add_argument("--variant", choices=("bar", "koszul", "both"), default="both")

    s = sub.add_parser("koszul", parents=[common], help="Koszul dimensions and numerical Koszulity")
    s.add_argument("--algebra", required=True)
    s.add_argument("--max", type=int, default=4)

    s = sub.add_parser("dga", parents=[common], help="work with a finite DGA given as JSON")
    s.add_argument("--file", required=True)
    s.add_argument("--action", choices=("validate", "cohomology", "canonical"), default="canonical")

    s = sub.add_parser("example", parents=[common], help="run a built-in example")
    s.add_argument("name", choices=("counterexample", "exterior2"))

    s = sub.add_parser("verify", parents=[common], help="re-check a demushkin JSON report")
    s.add_argument("report")
    return ap


def _load_json(path: str):
    p = Path(path)
    if not p.exists():
        bundled = resources.files("a3formal") / "data" / p.name
        if bundled.is_file():
            text = bundled.read_text()
        else:
            raise UsageError(f"file not found: {path}")
    else:
        text = p.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed JSON in {path}: {e}") from None


def _check_range(name, value, lo, hi):
    if not lo <= value <= hi:
        raise UsageError(f"invalid parameter: --{name} must lie in [{lo}, {hi}], got {value}")


# ----------------------------------------------------------------------------
# commands

def cmd_demushkin(args) -> dict:
    from .demushkin import build_f2, perturb_f2, verdict
    from .unipotent import DemushkinParams
    _check_range("d", args.d, 2, 6)
    _check_range("perturb", args.perturb, 0, 100)
    try:
        params = DemushkinParams(args.p, args.q, args.d)
    except FpError as e:
        raise UsageError(f"invalid parameter: {e}") from None
    f2 = build_f2(params)
    rng = np.random.default_rng(args.seed)
    for _ in range(args.perturb):
        f2 = perturb_f2(params, f2, rng)
    rep = verdict(params, f2).to_json()
    rep["command"] = "demushkin"
    rep["f2"] = {"perturbations": args.perturb, "seed": args.seed}
    return rep


def _presentation(path):
    from .graded_algebra import QuadraticPresentation
    try:
        return QuadraticPresentation.from_json(_load_json(path))
    except FpError as e:
        raise UsageError(f"invalid algebra: {e}") from None


def _finite_algebra(pres, need: int):
    """The quadratic algebra, computed until it vanishes (at most degree 8)."""
    from .graded_algebra import algebra_from_quadratic
    cap = max(need, 2)
    while True:
        A = algebra_from_quadratic(pres, cap)
        if A.finite or cap >= 8:
            return A
        cap += 1


def cmd_hh(args) -> dict:
    from .hochschild import hh_dim
    _check_range("n", args.n, 0, 6)
    _check_range("s", args.s, -6, 6)
    pres = _presentation(args.algebra)
    A = _finite_algebra(pres, args.n + args.s + 2)
    out = {"command": "hh", "n": args.n, "s": args.s, "p": pres.p, "hilbert": list(A.dims), "dims": {}}
    if args.variant in ("bar", "both"):
        if not A.finite:
            raise UsageError("invalid algebra: the bar variant needs an algebra that vanishes by degree 8")
        out["dims"]["bar"] = hh_dim(A, args.n, args.s, "bar", normalized=True)
    if args.variant in ("koszul", "both"):
        out["dims"]["koszul"] = hh_dim(A, args.n, args.s, "koszul", pres)
    vals = set(out["dims"].values())
    out["dim"] = vals.pop() if len(vals) == 1 else None
    return out


def cmd_koszul(args) -> dict:
    from .graded_algebra import algebra_from_quadratic
    from .koszul import koszul_dims, numerical_koszulity
    _check_range("max", args.max, 2, 8)
    pres = _presentation(args.algebra)
    A = algebra_from_quadratic(pres, args.max)
    return {"command": "koszul", "p": pres.p, "max": args.max, "hilbert": list(A.dims),
            "koszul_dims": koszul_dims(pres, args.max),
            "numerically_koszul": numerical_koszulity(pres, args.max)}


def _load_dga(path):
    from .dga import FiniteDGA
    try:
        return FiniteDGA.from_json(_load_json(path))
    except (FpError, ValueError, TypeError) as e:
        raise UsageError(f"invalid DGA: {e}") from None


def cmd_dga(args) -> dict:
    from .dga import canonical_class_dga, cohomology_splitting, validate_dga
    D = _load_dga(args.file)
    rep = validate_dga(D)
    out = {"command": "dga", "action": args.action, "p": D.p, "dims": list(D.dims),
           "valid": rep.ok, "violations": rep.violations}
    if args.action == "validate" or not rep.ok:
        return out
    rng = np.random.default_rng(args.seed) if args.seed else None
    H, S = cohomology_splitting(D, rng)
    out["cohomology_dims"] = list(H.dims)
    if args.action == "canonical":
        cc = canonical_class_dga(D, split=S)
        out["class_zero"] = cc.is_zero
        out["conclusive"] = cc.conclusive
        out["a3_formal"] = cc.is_zero if cc.conclusive else None
    return out


def cmd_example(args) -> dict:
    if args.name == "exterior2":
        data = _load_json("exterior2.json")
        return {"command": "example", "name": "exterior2", "presentation": data}
    from .dga import (canonical_class_dga, class_of, cohomology_splitting, example_dga_isaksen,
                      generator_vector, massey3, massey4_defined, validate_dga)
    D = example_dga_isaksen()
    H, S = cohomology_splitting(D)
    a = [class_of(D, S, 1, generator_vector(D, n)) for n in ("a12", "a23", "a34", "a45")]
    m123 = massey3(D, a[0], a[1], a[2], S)
    m234 = massey3(D, a[1], a[2], a[3], S)
    cc = canonical_class_dga(D, split=S)
    return {"command": "example", "name": "counterexample", "p": D.p, "dims": list(D.dims),
            "valid": validate_dga(D).ok, "cohomology_dims": list(H.dims[:3]),
            "massey": {"a1,a2,a3": {"defined": m123.defined, "vanishes": m123.vanishes},
                       "a2,a3,a4": {"defined": m234.defined, "vanishes": m234.vanishes},
                       "a1,a2,a3,a4_defined": massey4_defined(D, *a, split=S)},
            "class_zero": cc.is_zero, "conclusive": cc.conclusive,
            "a3_formal": cc.is_zero if cc.conclusive else None}


def cmd_verify(args) -> dict:
    from .demushkin import build_f2, kappa3_vector, kappa_cochain, perturb_f2, presentation, verdict
    from .hochschild import CoboundaryWitness, verify_witness
    from .unipotent import DemushkinParams
    rep = _load_json(args.report)
    try:
        prm = rep["params"]
        params = DemushkinParams(int(prm["p"]), int(prm["q"]), int(prm["d"]))
        f2info = rep.get("f2") or {"perturbations": 0, "seed": 0}
        claimed = [int(v) for v in rep["kappa"]["values"]]
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"malformed report: {e}") from None
    f2 = build_f2(params)
    rng = np.random.default_rng(int(f2info.get("seed", 0)))
    for _ in range(int(f2info.get("perturbations", 0))):
        f2 = perturb_f2(params, f2, rng)
    kv = kappa3_vector(params, f2)
    checks = {"kappa_matches": [signed(v, params.p) for v in kv.values] == claimed}
    dp = presentation(params)
    w = rep.get("witness")
    if rep.get("a3_formal"):
        if not w:
            checks["witness_valid"] = False
        else:
            lam = np.array(w["lambda_rref"], dtype=np.int64)
            try:
                checks["witness_valid"] = verify_witness(dp.pres, dp.algebra, kappa_cochain(kv),
                                                         CoboundaryWitness(lam % params.p))
            except ValueError:
                checks["witness_valid"] = False
    else:
        checks["no_witness_exists"] = not verdict(params, f2).class_zero
    return {"command": "verify", "params": prm, "checks": checks, "verified": all(checks.values())}


COMMANDS = {"demushkin": cmd_demushkin, "hh": cmd_hh, "koszul": cmd_koszul,
            "dga": cmd_dga, "example": cmd_example, "verify": cmd_verify}


# ----------------------------------------------------------------------------
# output

def _human(rep: dict) -> str:
    c = rep["command"]
    if c == "demushkin":
        prm = rep["params"]
        lines = [f"Demushkin group p={prm['p']} q={prm['q']} d={prm['d']}",
                 f"  A3-formal: {'yes' if rep['a3_formal'] else 'no'}",
                 f"  calibration c0 = {rep['calibration']}",
                 f"  kappa_3 nonzero on: {', '.join(rep['kappa_nonzero_on']) or 'nothing'}"]
        if rep["witness"]:
            lines.append("  witness lambda with d(lambda) = kappa_3 found and re-verified")
        return "\n".join(lines)
    if c == "hh":
        if rep["dim"] is None:
            return f"dim HH^{{{rep['n']},{rep['s']}}} disagrees between variants: {rep['dims']}"
        return f"dim HH^{{{rep['n']},{rep['s']}}} = {rep['dim']}"
    if c == "koszul":
        return (f"Hilbert series {rep['hilbert']}\nKoszul dims {rep['koszul_dims']}\n"
                f"numerically Koszul through degree {rep['max']}: {rep['numerically_koszul']}")
    if c == "verify":
        return ("verified" if rep["verified"] else "REJECTED") + f": {rep['checks']}"
    return json.dumps(rep, indent=2, sort_keys=True)


def _to_plain(x):
    if isinstance(x, dict):
        return {str(k): _to_plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_to_plain(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return _to_plain(x.tolist())
    return x


def run(argv=None) -> tuple:
    """(exit status, report dict or None, text written)."""
    try:
        args = _parser().parse_args(argv)
        if args.command is None:
            raise UsageError("unknown command: choose one of " + ", ".join(COMMANDS))
        rep = _to_plain(COMMANDS[args.command](args))
    except UsageError as e:
        return 2, None, f"error: {e}"
    except BudgetExceeded as e:
        return 2, None, f"error: input too large: {e}"
    rep.setdefault("schema", SCHEMA_ID)
    text = json.dumps(rep, sort_keys=True, indent=2) if args.json else _human(rep)
    status = 1 if args.command == "verify" and not rep["verified"] else 0
    return status, rep, text


def main(argv=None) -> int:
    status, _, text = run(argv)
    print(text, file=sys.stderr if status == 2 else sys.stdout)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
