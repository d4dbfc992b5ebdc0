"""Command line front end.

Input files are single JSON documents::

    {"blocks": [2, 3], "elements": {"p": [[...], ...], ...}}

Every report echoes the resolved tolerances and seed, carries one
(name, pass, residual) line per mathematical check, and exits 0 iff all
checks pass (1 on a failed check, 2 on input/usage errors).  Floats are
serialized with 17 significant digits so reports round-trip losslessly
and are byte-identical for identical (input, seed, tolerances).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import antilattice as al
from . import spectral as sp
from .errors import ParseError, SynlabError, UnknownCommand, ValidationError
from .linalg import DEFAULT_TOL, Tolerances, frob
from .order import loewner_cmp, commutes
from .projections import Projection, Symmetry
from .structure import AlgebraSpec, Element, center, commutant, is_factor

__all__ = ["parse_spec", "dispatch", "render_json", "main"]

COMMANDS = (
    "spectral", "carrier", "meet", "join", "inf", "commutant", "center",
    "factor", "exchange", "existsk", "witness", "suite", "qsublambda-check",
)


# ---------------------------------------------------------------------------
# input parsing and deterministic JSON rendering

def parse_spec(path: str, tol: Tolerances = DEFAULT_TOL):
    """Load an algebra + named elements document."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(doc, dict) or "blocks" not in doc:
        raise ParseError("document must be an object with a 'blocks' key")
    try:
        algebra = AlgebraSpec(tuple(doc["blocks"]))
    except (TypeError, ValueError, ValidationError) as exc:
        raise ParseError(f"bad 'blocks' entry: {exc}") from exc
    elements = {}
    for name, rows in (doc.get("elements") or {}).items():
        try:
            matrix = np.array(rows, dtype=float)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"element {name!r} is not a numeric matrix") from exc
        elements[name] = Element(algebra, matrix)  # raises ValidationError
    return algebra, elements


def serialize_spec(algebra: AlgebraSpec, elements) -> dict:
    return {
        "blocks": list(algebra.blocks),
        "elements": {name: el.matrix.tolist() for name, el in elements.items()},
    }


def _fmt_float(x: float) -> str:
    if x != x:
        return "NaN"
    if x in (float("inf"), float("-inf")):
        return '"Infinity"' if x > 0 else '"-Infinity"'
    text = format(float(x), ".17g")
    # keep a float-looking token so the report round-trips as a float
    if not any(ch in text for ch in ".eE") and text.lstrip("-").isdigit():
        text += ".0"
    return text


def render_json(obj, indent: int = 0) -> str:
    """Deterministic JSON with 17-significant-digit floats."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return render_json(obj.tolist(), indent)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        body = ",\n".join(
            f"{inner}{json.dumps(str(key))}: {render_json(value, indent + 1)}"
            for key, value in obj.items())
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        body = ",\n".join(f"{inner}{render_json(item, indent + 1)}" for item in obj)
        return "[\n" + body + "\n" + pad + "]"
    raise TypeError(f"cannot render {type(obj).__name__}")


# ---------------------------------------------------------------------------
# command implementations; each returns (results dict, checks list)

def _pick(elements, names, count):
    if names:
        chosen = [n.strip() for n in names.split(",")]
    else:
        chosen = list(elements)
    if count is not None:
        chosen = chosen[:count]
        if len(chosen) != count:
            raise ParseError(f"command needs {count} element(s), got {len(chosen)}")
    missing = [n for n in chosen if n not in elements]
    if missing:
        raise ParseError(f"unknown element name(s): {', '.join(missing)}")
    return [elements[n] for n in chosen], chosen


def _as_projection(el: Element, name: str, tol: Tolerances) -> Projection:
    try:
        return Projection.from_matrix(el.matrix, tol)
    except SynlabError as exc:
        raise ValidationError(f"element {name!r} is not a projection: {exc}") from exc


def _cmd_spectral(algebra, elements, args, tol):
    (el,), (name,) = _pick(elements, args.elements, 1)
    res = sp.spectral_resolution(el.matrix, tol)
    bounds = sp.spectral_bounds(el.matrix, tol)
    last = res.jumps[-1][1]
    checks = [("final_projection_is_identity",
               frob(last.matrix - np.eye(el.dim)) <= tol.recon,
               frob(last.matrix - np.eye(el.dim)))]
    return {
        "element": name,
        "spectrum": res.jump_locations(),
        "bounds": {"lower": bounds.lower, "upper": bounds.upper},
        "jumps": [{"lambda": lam, "rank": proj.rank} for lam, proj in res.jumps],
    }, checks


def _cmd_carrier(algebra, elements, args, tol):
    from .projections import carrier
    (el,), (name,) = _pick(elements, args.elements, 1)
    car = carrier(el.matrix, tol)
    residual = frob(el.matrix @ car.matrix - el.matrix)
    checks = [("a_times_carrier_is_a",
               residual <= tol.recon * max(1.0, frob(el.matrix)), residual)]
    return {"element": name, "carrier": car.matrix, "rank": car.rank}, checks


def _cmd_meet_join(algebra, elements, args, tol, join: bool):
    from .projections import proj_join, proj_meet
    (e1, e2), (n1, n2) = _pick(elements, args.elements, 2)
    p = _as_projection(e1, n1, tol)
    q = _as_projection(e2, n2, tol)
    out = proj_join(p, q, tol) if join else proj_meet(p, q, tol)
    if join:
        checks = [
            ("p_below_join", loewner_cmp(p.matrix, out.matrix, tol).leq,
             loewner_cmp(p.matrix, out.matrix, tol).slack),
            ("q_below_join", loewner_cmp(q.matrix, out.matrix, tol).leq,
             loewner_cmp(q.matrix, out.matrix, tol).slack),
        ]
    else:
        checks = [
            ("meet_below_p", loewner_cmp(out.matrix, p.matrix, tol).leq,
             loewner_cmp(out.matrix, p.matrix, tol).slack),
            ("meet_below_q", loewner_cmp(out.matrix, q.matrix, tol).leq,
             loewner_cmp(out.matrix, q.matrix, tol).slack),
        ]
    return {"p": n1, "q": n2, "result": out.matrix, "rank": out.rank}, checks


def _cmd_inf(algebra, elements, args, tol):
    (e1, e2), (n1, n2) = _pick(elements, args.elements, 2)
    verdict = al.infimum_decide(e1, e2, tol)
    results = {
        "c": n1, "d": n2,
        "status": verdict.status.value,
        "reason": verdict.reason.value,
        "value": verdict.value.matrix if verdict.exists else None,
    }
    checks = []
    if verdict.exists:
        for tag, el in (("c", e1), ("d", e2)):
            cmp_v = loewner_cmp(verdict.value.matrix, el.matrix, tol)
            checks.append((f"infimum_below_{tag}", cmp_v.leq, cmp_v.slack))
    return results, checks


def _cmd_commutant(algebra, elements, args, tol):
    chosen, names = _pick(elements, args.elements, None)
    basis = commutant(algebra, [el.matrix for el in chosen], tol)
    worst = 0.0
    for member in basis.elements:
        for el in chosen:
            ok = commutes(member, el.matrix, tol)
            if not ok:
                worst = max(worst, 1.0)
    checks = [("basis_members_commute", worst == 0.0, worst)]
    return {"members": names, "dimension": basis.dim}, checks


def _cmd_center(algebra, elements, args, tol):
    basis = center(algebra, tol)
    checks = [("center_dim_equals_block_count",
               basis.dim == algebra.num_blocks, float(basis.dim))]
    return {"dimension": basis.dim, "blocks": list(algebra.blocks)}, checks


def _cmd_factor(algebra, elements, args, tol):
    verdict = is_factor(algebra, tol)
    results = {
        "is_factor": verdict.is_factor,
        "center_dim": verdict.center_dim,
        "witness": verdict.witness if verdict.witness is not None else None,
    }
    return results, []


def _cmd_exchange(algebra, elements, args, tol):
    (e1, e2), (n1, n2) = _pick(elements, args.elements, 2)
    p = _as_projection(e1, n1, tol)
    q = _as_projection(e2, n2, tol)
    t = al.exchange_symmetry(p, q, algebra, tol)
    from .linalg import symmetrize
    tpt = symmetrize(t.matrix @ p.matrix @ t.matrix)
    tqt = symmetrize(t.matrix @ q.matrix @ t.matrix)
    sq_res = frob(t.matrix @ t.matrix - np.eye(p.dim))
    cond = (loewner_cmp(tpt, q.matrix, tol).leq
            or loewner_cmp(tqt, p.matrix, tol).leq)
    checks = [
        ("t_squared_is_identity", sq_res <= tol.recon, sq_res),
        ("exchange_condition", cond,
         max(loewner_cmp(tpt, q.matrix, tol).slack,
             loewner_cmp(tqt, p.matrix, tol).slack)),
    ]
    return {"p": n1, "q": n2, "symmetry": t.matrix}, checks


def _cmd_existsk(algebra, elements, args, tol):
    (e1, e2), (n1, n2) = _pick(elements, args.elements, 2)
    p = _as_projection(e1, n1, tol)
    s = Symmetry.from_matrix(e2.matrix, tol)
    result = al.existsk_construct(p, s, tol)
    checks = [
        ("k_leq_p", result.k_leq_p_slack >= -tol.psd, result.k_leq_p_slack),
        ("k_leq_p_perp", result.k_leq_p_perp_slack >= -tol.psd,
         result.k_leq_p_perp_slack),
        ("k_not_leq_zero", result.k_max_eigenvalue > tol.psd,
         result.k_max_eigenvalue),
        ("proof_identity_d_squared", result.proof_identity_residual <= tol.recon,
         result.proof_identity_residual),
        ("scalar_identities_exact", result.scalar_identities_exact, 0.0),
    ]
    return {"p": n1, "s": n2, "k": result.k,
            "constants": {"alpha": result.alpha, "beta": result.beta,
                          "gamma": result.gamma}}, checks


def _cmd_witness(algebra, elements, args, tol):
    (e1, e2), (n1, n2) = _pick(elements, args.elements, 2)
    result = al.witness_pipeline(e1, e2, tol)
    inf_norm = (frob(result.inf_pq.value.matrix)
                if result.inf_pq.exists else float("nan"))
    checks = [
        ("p_nonzero", not result.p.is_zero(), float(result.p.rank)),
        ("q_nonzero", not result.q.is_zero(), float(result.q.rank)),
        ("pq_vanishes", result.pq_residual <= tol.recon, result.pq_residual),
        ("p_q_infimum_zero", result.inf_pq.exists and inf_norm <= tol.recon,
         inf_norm),
    ]
    return {"c": n1, "d": n2, "lambda": result.lam, "mu": result.mu,
            "p": result.p.matrix, "q": result.q.matrix}, checks


def _cmd_suite(algebra, elements, args, tol):
    report = al.antilattice_suite(algebra, trials=args.trials, seed=args.seed, tol=tol)
    results = report.to_dict()
    checks = list(report.checks)
    checks.append(("verdict_matches_factor_test",
                   (report.verdict == "Antilattice") == report.is_factor, 0.0))
    return results, checks


def _cmd_qsublambda(algebra, elements, args, tol):
    (el,), (name,) = _pick(elements, args.elements, 1)
    checks = sp.q_lambda_clause_report(el.matrix, tol)
    return {"element": name}, checks


_HANDLERS = {
    "spectral": _cmd_spectral,
    "carrier": _cmd_carrier,
    "meet": lambda a, e, ar, t: _cmd_meet_join(a, e, ar, t, join=False),
    "join": lambda a, e, ar, t: _cmd_meet_join(a, e, ar, t, join=True),
    "inf": _cmd_inf,
    "commutant": _cmd_commutant,
    "center": _cmd_center,
    "factor": _cmd_factor,
    "exchange": _cmd_exchange,
    "existsk": _cmd_existsk,
    "witness": _cmd_witness,
    "suite": _cmd_suite,
    "qsublambda-check": _cmd_qsublambda,
}


def dispatch(args) -> tuple[dict, int]:
    """Run one parsed command; returns (report, exit status)."""
    if args.command not in _HANDLERS:
        raise UnknownCommand(args.command)
    overrides = {}
    for flag, name in (("tol_eig", "eig"), ("tol_psd", "psd"),
                       ("tol_recon", "recon"), ("tol_ortho", "ortho")):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[name] = value
    try:
        tol = DEFAULT_TOL.replace(**overrides)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    algebra, elements = parse_spec(args.input, tol)
    results, checks = _HANDLERS[args.command](algebra, elements, args, tol)
    report = {
        "command": args.command,
        "config": {
            "input": args.input,
            "seed": args.seed,
            "trials": args.trials,
            "tolerances": {"eig": tol.eig, "recon": tol.recon,
                           "ortho": tol.ortho, "psd": tol.psd},
        },
        "results": results,
        "checks": [{"name": n, "pass": p, "residual": r} for n, p, r in checks],
    }
    status = 0 if all(c["pass"] for c in report["checks"]) else 1
    return report, status


def _print_text(report) -> None:
    print(f"command: {report['command']}")
    cfg = report["config"]
    print(f"seed: {cfg['seed']}  trials: {cfg['trials']}  tolerances: {cfg['tolerances']}")
    for key, value in report["results"].items():
        if isinstance(value, np.ndarray):
            value = value.tolist()
        print(f"{key}: {value}")
    for check in report["checks"]:
        flag = "PASS" if check["pass"] else "FAIL"
        print(f"[{flag}] {check['name']}  residual={check['residual']:.3e}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="synlab",
        description="Batch verification tool for block-diagonal synaptic algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--input", required=True, help="JSON algebra/elements file")
        cmd.add_argument("--elements", default=None,
                         help="comma-separated element names (default: file order)")
        cmd.add_argument("--tol-eig", type=float, default=None)
        cmd.add_argument("--tol-psd", type=float, default=None)
        cmd.add_argument("--tol-recon", type=float, default=None)
        cmd.add_argument("--tol-ortho", type=float, default=None)
        cmd.add_argument("--seed", type=int, default=0)
        cmd.add_argument("--trials", type=int, default=500)
        cmd.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.trials < 1:
        print("error: trials must be >= 1", file=sys.stderr)
        return 2
    try:
        report, status = dispatch(args)
    except (ParseError, ValidationError, UnknownCommand) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SynlabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        print(render_json(_plain(report)))
    else:
        _print_text(report)
    return status


def _plain(obj):
    """Convert ndarrays to nested lists for rendering."""
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


if __name__ == "__main__":
    sys.exit(main())
