"""``sgstruct`` command line: JSON reports on stdout, readable summaries on stderr.

Exit codes: 0 success, 1 verification or assertion failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import __version__
from .catalog import catalog_f_minus2, contains_minimal_forbidden
from .checks import SUITES, run_suite
from .cliques import m_neighborhoods, maximal_positive_cliques
from .errors import PatternWitnessError
from .generators import DEFAULT_SEED
from .hoffman import convergence_probe, hoffman_eigenvalues, special_matrix, threshold
from .integrability import DEFAULT_BUDGET, integrability_search, verify_certificate
from .io import InputError, certificate_to_dict, load_certificate, load_graph, load_hoffman, load_kappa, write_json
from .spectra import spectrum
from .switching import is_pattern_free, ktilde_family
from .structure import DecompositionParams, decompose, verify_decomposition

SCHEMA = "sgstruct.report/1"
EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def sig12(x: float) -> float:
    return float(f"{x:.12g}")


class Report:
    def __init__(self, command: str, parameters: dict, seed: int | None = None):
        self.data = {
            "schema": SCHEMA,
            "tool_version": __version__,
            "command": command,
            "input_digest": {},
            "parameters": parameters,
            "results": {},
            "warnings": [],
            "seed": seed,
        }

    def digest(self, path, value):
        self.data["input_digest"][str(path)] = "sha256:" + value

    def warn(self, msg: str):
        self.data["warnings"].append(msg)


def _sorted(vs) -> list:
    return sorted(int(v) for v in vs)


def cmd_spectrum(args, rep: Report) -> int:
    G, d = load_graph(args.graph)
    rep.digest(args.graph, d)
    sp = spectrum(G)
    rep.data["results"] = {
        "order": G.order,
        "eigenvalues": [sig12(x) for x in sp],
        "smallest": sig12(sp.smallest) if G.order else None,
    }
    if G.order:
        print(f"lambda_min = {sp.smallest:.12g}", file=sys.stderr)
    return EXIT_OK


def cmd_cliques(args, rep: Report) -> int:
    G, d = load_graph(args.graph)
    rep.digest(args.graph, d)
    cat = maximal_positive_cliques(G, args.n_min)
    out = []
    for C in cat:
        entry = {"vertices": _sorted(C)}
        if args.m is not None:
            sp = m_neighborhoods(G, C, args.m)
            entry["split"] = {
                "m": args.m,
                "plus": _sorted(sp.plus),
                "minus": _sorted(sp.minus),
                "rest": _sorted(sp.rest),
                "disjoint": sp.disjoint,
            }
        out.append(entry)
    rep.data["results"] = {"n_min": args.n_min, "cliques": out}
    print(f"{len(out)} maximal positive cliques with >= {args.n_min} vertices", file=sys.stderr)
    return EXIT_OK


def cmd_hoffman(args, rep: Report) -> int:
    h, d = load_hoffman(args.hoffman)
    rep.digest(args.hoffman, d)
    sp = hoffman_eigenvalues(h)
    res = {
        "slim": len(h.slim),
        "fat": len(h.fat),
        "special_matrix": special_matrix(h).tolist(),
        "eigenvalues": [sig12(x) for x in sp],
        "smallest": sig12(sp.smallest) if len(h.slim) else None,
        "is_fat": h.is_fat(),
    }
    if h.is_fat() and h.slim:
        w = contains_minimal_forbidden(h)
        res["forbidden_witness"] = None if w is None else {
            "slim": list(w.slim),
            "fat": list(w.fat),
            "catalog_index": w.catalog_index,
            "matrix": [list(r) for r in catalog_f_minus2().entries[w.catalog_index].matrix],
        }
    if args.probe:
        t = convergence_probe(h, args.probe)
        res["probe"] = {"limit": sig12(t.target), "rows": [[n, sig12(v)] for n, v in t.rows]}
    rep.data["results"] = res
    if h.slim:
        print(f"lambda_min(h) = {sp.smallest:.12g}", file=sys.stderr)
    return EXIT_OK


def cmd_decompose(args, rep: Report) -> int:
    G, d = load_graph(args.graph)
    rep.digest(args.graph, d)
    kappa = None
    if args.kappa_file:
        kappa, kd = load_kappa(args.kappa_file)
        rep.digest(args.kappa_file, kd)
    try:
        params = DecompositionParams(args.m, args.n, args.lam, kappa, args.valency_bound)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if not args.force:
        free, hit = is_pattern_free(G, ktilde_family(args.m))
        if not free:
            kind = ("Ktilde_zero", "Ktilde_minus")[hit.pattern_index]
            return _witness_failure(rep, PatternWitnessError(f"induced {kind} pattern", witness=hit.vertices, pattern=kind))
        if args.n < threshold(args.m):
            raise InputError(
                f"n={args.n} is below 2(m^2+m)={threshold(args.m)}; rerun with --force to decompose anyway"
            )
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            D = decompose(G, params)
        except PatternWitnessError as exc:
            return _witness_failure(rep, exc)
    for w in caught:
        rep.warn(str(w.message))
    for note in D.warnings:
        if note not in rep.data["warnings"]:
            rep.warn(note)
    R = verify_decomposition(G, D)
    rep.data["results"] = {
        "pieces": [
            {"fat": p.fat, "vertices": _sorted(p.vertices), "clique": _sorted(p.clique),
             "plus": _sorted(p.plus), "minus": _sorted(p.minus)}
            for p in D.pieces
        ],
        "residual_edges": [[u, v, str(s)] for u, v, s in D.residual.edges()],
        "report": {
            "max_membership": R.max_membership,
            "coverage_gaps": list(R.coverage_gaps),
            "plex_degrees": list(R.plex_degrees),
            "max_pairwise_intersection": R.max_pairwise_intersection,
            "residual_max_valency": R.residual_max_valency,
            "bounds_checked": [
                {"name": b.name, "value": b.value, "bound": b.bound, "satisfied": b.satisfied} for b in R.bounds_checked
            ],
            "integrity_issues": list(R.integrity_issues),
        },
    }
    print(f"{len(D.pieces)} pieces; report {'ok' if R.ok else 'FAILED'}", file=sys.stderr)
    for b in R.bounds_checked:
        state = {True: "pass", False: "FAIL", None: "unchecked"}[b.satisfied]
        print(f"  {b.name:<18} {b.value} <= {b.bound}: {state}", file=sys.stderr)
    return EXIT_OK if R.ok else EXIT_FAIL


def _witness_failure(rep: Report, exc: PatternWitnessError) -> int:
    rep.data["results"] = {"precondition": "failed", "pattern": exc.pattern, "witness": list(exc.witness)}
    print(f"precondition failed: {exc}; witness {list(exc.witness)}", file=sys.stderr)
    return EXIT_FAIL


def cmd_integrable(args, rep: Report) -> int:
    G, d = load_graph(args.graph)
    rep.digest(args.graph, d)
    if args.s < 1:
        raise InputError("--s must be a positive integer")
    res = integrability_search(G, args.s, max_dim=args.max_dim, budget=args.budget)
    out = {"status": res.status, "s": res.s, "shift": res.shift, "nodes": res.nodes, "max_dim": res.max_dim}
    if res.certificate is not None:
        out["certificate"] = certificate_to_dict(res.certificate)
        if args.output:
            write_json(args.output, certificate_to_dict(res.certificate))
    rep.data["results"] = out
    print(f"{res.status} (shift {res.shift}, {res.nodes} nodes)", file=sys.stderr)
    return EXIT_OK if res.certificate is not None else EXIT_FAIL


def cmd_verify(args, rep: Report) -> int:
    G, d = load_graph(args.graph)
    rep.digest(args.graph, d)
    cert, cd = load_certificate(args.certificate)
    rep.digest(args.certificate, cd)
    try:
        ok = verify_certificate(cert, G)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    rep.data["results"] = {"valid": ok}
    print("certificate valid" if ok else "certificate INVALID", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_checks(args, rep: Report) -> int:
    res = run_suite(args.suite, args.seed)
    rep.data["results"] = {
        "suite": res.suite,
        "passed": res.passed,
        "total": len(res.cases),
        "cases": [{"name": c.name, "passed": c.passed} for c in res.cases],
        "failures": [{"name": c.name, "detail": c.detail} for c in res.failed],
    }
    print(f"{res.suite}: {res.passed}/{len(res.cases)} pass (seed {res.seed})", file=sys.stderr)
    return EXIT_OK if res.ok else EXIT_FAIL


def _positive_ints(text: str) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("values must be positive integers")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sgstruct", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--report", type=Path, help="write the JSON report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectrum", help="adjacency spectrum of a signed graph")
    s.add_argument("graph", type=Path)
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("cliques", help="maximal positive cliques and their m-neighbourhoods")
    s.add_argument("graph", type=Path)
    s.add_argument("--n-min", type=int, default=1)
    s.add_argument("--m", type=int)
    s.set_defaults(func=cmd_cliques)

    s = sub.add_parser("hoffman", help="special matrix and eigenvalues of a Hoffman signed graph")
    s.add_argument("hoffman", type=Path)
    s.add_argument("--probe", type=_positive_ints, help="comma-separated n values for the expansion probe")
    s.set_defaults(func=cmd_hoffman)

    s = sub.add_parser("decompose", help="clique-neighbourhood decomposition with property checks")
    s.add_argument("graph", type=Path)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--lambda", dest="lam", type=float)
    s.add_argument("--kappa-file", type=Path)
    s.add_argument("--valency-bound", type=int)
    s.add_argument("--force", action="store_true", help="skip the pattern precondition and allow n below 2(m^2+m)")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("integrable", help="search for an s-integrability certificate")
    s.add_argument("graph", type=Path)
    s.add_argument("--s", type=int, default=1)
    s.add_argument("--max-dim", type=int)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--output", type=Path, help="also write the certificate JSON here")
    s.set_defaults(func=cmd_integrable)

    s = sub.add_parser("verify", help="check a certificate exactly against a graph")
    s.add_argument("graph", type=Path)
    s.add_argument("certificate", type=Path)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("checks", help="run a seeded property suite")
    s.add_argument("suite", choices=SUITES)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.set_defaults(func=cmd_checks)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    params = {k: (str(v) if isinstance(v, Path) else v) for k, v in vars(args).items() if k not in ("func", "report")}
    rep = Report(args.command, params, seed=getattr(args, "seed", None))
    try:
        code = args.func(args, rep)
    except InputError as exc:
        rep.data["error"] = str(exc)
        print(f"input error: {exc}", file=sys.stderr)
        code = EXIT_INPUT
    text = json.dumps(rep.data, indent=2)
    if args.report:
        args.report.write_text(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
