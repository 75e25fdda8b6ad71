"""Batch front end: ``luent gen|analyze|sepcheck|lutest``.

Exit codes: 0 ok / separable, 1 input error, 3 entangled, 4 indeterminate,
5 invariance drift above 1e-9.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .concurrence import concurrence_bipartite, concurrence_multipartite, concurrence_tripartite
from .errors import LuentError
from .invariants import all_bipartition_invariants, invariant_vector, tripartite_invariants
from .lu import invariance_suite, random_state
from .separability import RankTwoMixedState, separability_check
from .spectrum import char_poly_coeffs, entanglement_of_formation, schmidt_spectrum
from .state import from_json_dict, make_named, to_json_dict

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_ENTANGLED = 3
EXIT_INDETERMINATE = 4
EXIT_DRIFT = 5

DRIFT_TOL = 1e-9
ANALYSES = ("invariants", "concurrence", "schmidt", "eof", "charpoly")
GEN_KINDS = ("product", "max_entangled", "bell", "ghz", "paper-5-6", "random")


class InputError(LuentError):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=True)


def _load_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load_state(path: str):
    obj = _load_json(path)
    state = from_json_dict(obj, where=Path(path).name)
    return state, obj.get("label")


def load_rank_two(path: str) -> RankTwoMixedState:
    obj = _load_json(path)
    name = Path(path).name
    if not isinstance(obj, dict):
        raise InputError(f"{name}: expected an object")
    p = obj.get("p")
    if not isinstance(p, (int, float)) or isinstance(p, bool):
        raise InputError(f"{name}.p: expected a number, got {p!r}")
    vecs = []
    for key in ("E1", "E2"):
        if key not in obj:
            raise InputError(f"{name}: missing field {key!r}")
        st = from_json_dict(obj[key], where=f"{name}.{key}")
        if st.parties != 2:
            raise InputError(f"{name}.{key}: eigenvectors must be two-party states")
        vecs.append(st.as_bipartite())
    return RankTwoMixedState(float(p), *vecs)


def analyze(state, what=ANALYSES) -> dict:
    out: dict = {"parties": state.parties, "dim": state.dim}
    bip = state.as_bipartite() if state.parties == 2 else None
    if "invariants" in what:
        inv: dict = {"bipartitions": {str(p): v for p, v in all_bipartition_invariants(state).items()}}
        if bip is not None:
            inv["I"] = list(invariant_vector(bip).values)
        if state.parties == 3:
            inv["tripartite"] = list(tripartite_invariants(state))
        out["invariants"] = inv
    if "concurrence" in what:
        conc = {"C_N^M": concurrence_multipartite(state).as_dict()}
        if bip is not None:
            conc["C_N"] = concurrence_bipartite(bip).as_dict()
        if state.parties == 3:
            conc["C_N^3"] = concurrence_tripartite(state).as_dict()
        out["concurrence"] = conc
    # spectrum quantities are defined for two parties only
    spec = schmidt_spectrum(bip) if bip is not None else None
    if "schmidt" in what:
        out["schmidt"] = list(spec.values) if spec else None
    if "eof" in what:
        out["eof"] = entanglement_of_formation(spec) if spec else None
    if "charpoly" in what:
        if bip is not None:
            cp = char_poly_coeffs(invariant_vector(bip))
            out["charpoly"] = {f"c_{k}": v for k, v in cp.c.items()}
        else:
            out["charpoly"] = None
    return out


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and not isinstance(obj[0], (dict, list)):
        yield prefix, " ".join(_fmt(x) for x in obj)
    else:
        yield prefix, _fmt(obj)


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return "null" if x is None else str(x)


def _render(obj: dict, fmt: str) -> str:
    if fmt == "json":
        return _dump(obj)
    rows = list(_flatten(obj))
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "random":
        state = random_state(args.n, args.m, args.seed)
    elif kind == "paper-5-6":
        state = make_named("paper_5_6_example", 2, 3)
    else:
        state = make_named(kind, args.n, args.m)
    payload = to_json_dict(state)
    payload["label"] = kind if kind != "random" else f"random-seed{args.seed}"
    text = _dump(payload) + "\n"
    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise InputError(f"{args.out}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_analyze(args) -> int:
    state, label = load_state(args.path)
    what = ANALYSES if args.what == "all" else tuple(w.strip() for w in args.what.split(","))
    unknown = set(what) - set(ANALYSES)
    if unknown:
        raise InputError(f"--what: unknown quantities {sorted(unknown)}; choose from {ANALYSES}")
    report = analyze(state, what)
    if label is not None:
        report["label"] = label
    print(_render(report, args.format))
    return EXIT_OK


def cmd_sepcheck(args) -> int:
    rho = load_rank_two(args.path)
    verdict = separability_check(rho, with_ppt=args.with_ppt)
    print(_render(verdict.as_dict(), args.format))
    if verdict.separable is None:
        return EXIT_INDETERMINATE
    return EXIT_OK if verdict.separable else EXIT_ENTANGLED


def cmd_lutest(args) -> int:
    state, _ = load_state(args.path)
    if args.trials < 1:
        raise InputError(f"--trials must be >= 1, got {args.trials}")
    report = invariance_suite(state, args.trials, args.seed)
    out = {
        "trials": report.trials,
        "seed": report.seed,
        "tolerance": DRIFT_TOL,
        "max_drift": report.max_drift,
        "passed": report.passed(DRIFT_TOL),
    }
    print(_render(out, args.format))
    return EXIT_OK if report.passed(DRIFT_TOL) else EXIT_DRIFT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="luent", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a named or Haar-random pure state")
    g.add_argument("--kind", choices=GEN_KINDS, required=True)
    g.add_argument("--n", type=int, default=2, help="local dimension N")
    g.add_argument("--m", type=int, default=2, help="number of parties M")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", help="output path (default stdout)")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", help="invariants, concurrence, Schmidt spectrum, EoF")
    a.add_argument("path")
    a.add_argument("--what", default="all", help=f"comma list from {','.join(ANALYSES)} or 'all'")
    a.add_argument("--format", choices=("json", "text"), default="json")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("sepcheck", help="rank-two separability verdict")
    s.add_argument("path")
    s.add_argument("--with-ppt", action="store_true", help="also run the partial-transpose test")
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.set_defaults(func=cmd_sepcheck)

    t = sub.add_parser("lutest", help="local-unitary invariance drift table")
    t.add_argument("path")
    t.add_argument("--trials", type=int, default=1000)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--format", choices=("json", "text"), default="json")
    t.set_defaults(func=cmd_lutest)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors are input errors; --help / --version exit 0
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (LuentError, ValueError) as exc:
        err = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        print(_dump(err))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
