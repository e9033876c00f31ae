"""Command-line entry point: parse a problem file, run checks, emit a report.

Exit codes: 0 all requested checks passed, 1 a check failed, 2 the input
could not be parsed or validated, 3 an internal invariant was violated.
JSON reports are canonical (sorted keys) and contain nothing run-dependent,
so identical inputs produce byte-identical output; wall-clock time is shown
only in text mode.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import io as sio
from .crossed import (
    CrossedHom,
    ch_cohomology,
    ch_mc_residual,
    check_crossed,
    graph_check,
    verify,
)
from .deformation import (
    CrossedHomDeformation,
    TripleDeformation,
    ch_deformation_residual,
    ch_infinitesimal,
    triple_deformation_residual,
    triple_infinitesimal,
)
from .errors import InternalInvariantError, SupercochainError, UsageError, ValidationError
from .exact_linalg import format_scalar
from .superalgebra import check_jacobi, check_super_skew
from .triple import LieSupActTriple, check_action, mc_residual, triple_cohomology

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_INTERNAL = 3


def _failures_to_list(failures, limit=25):
    out = []
    for f in failures[:limit]:
        out.append(f.to_dict(format_scalar))
    if len(failures) > limit:
        out.append({"omitted": len(failures) - limit})
    return out


def _verdict(name, ok, failures=()):
    v = {"name": name, "ok": bool(ok)}
    if failures:
        v["failures"] = _failures_to_list(list(failures))
    return v


def _block_witnesses(block, limit=10):
    gs, hs = block.g_space, block.h_space
    tspace = block.target_space
    out = []
    for (gk, hk) in sorted(block.coeffs):
        vec = block.coeffs[(gk, hk)]
        out.append(
            {
                "g_slots": [gs.labels[i] for i in gk],
                "h_slots": [hs.labels[j] for j in hk],
                "value": {
                    tspace.labels[k]: format_scalar(x) for k, x in enumerate(vec) if x != 0
                },
            }
        )
        if len(out) >= limit:
            break
    return out


def _triple_of(pf: sio.ProblemFile) -> LieSupActTriple:
    pf.require("g", "h", "action")
    return LieSupActTriple(pf.g, pf.h, pf.action)


def _triple_verdicts(t: LieSupActTriple):
    verdicts = []
    for tag, alg in (("g", t.g), ("h", t.h)):
        skew = check_super_skew(alg)
        jac = check_jacobi(alg)
        verdicts.append(_verdict(f"{tag}.super_skew", skew.ok, skew.failures))
        verdicts.append(_verdict(f"{tag}.jacobi", jac.ok, jac.failures))
    act = check_action(t.g, t.h, t.rho)
    verdicts.append(_verdict("action", act.ok, act.failures))
    return verdicts


def _crossed_of(pf: sio.ProblemFile) -> CrossedHom:
    pf.require("g", "h", "action", "crossed")
    return CrossedHom(_triple_of(pf), pf.crossed)


def cmd_check_algebra(pf, flags):
    algs = pf.algebras()
    if not algs:
        raise ValidationError("file has no algebra section")
    verdicts = []
    for name, alg in algs:
        skew = check_super_skew(alg)
        jac = check_jacobi(alg)
        verdicts.append(_verdict(f"{name}.super_skew", skew.ok, skew.failures))
        verdicts.append(_verdict(f"{name}.jacobi", jac.ok, jac.failures))
    return {"verdicts": verdicts}


def cmd_check_triple(pf, flags):
    t = _triple_of(pf)
    verdicts = _triple_verdicts(t)
    res = mc_residual(t.g, t.h, t.rho)
    axioms_ok = all(v["ok"] for v in verdicts)
    for name, comp in res.components().items():
        v = {"name": f"mc_residual.{name}", "ok": comp.is_zero()}
        if not comp.is_zero():
            v["witnesses"] = _block_witnesses(comp)
        verdicts.append(v)
    if axioms_ok != res.is_zero:
        raise InternalInvariantError("axiom checks disagree with the Maurer-Cartan residual")
    return {"verdicts": verdicts}


def cmd_check_crossed(pf, flags):
    D = _crossed_of(pf)
    verdicts = _triple_verdicts(D.triple)
    if not all(v["ok"] for v in verdicts):
        return {"verdicts": verdicts}
    rep = check_crossed(D)
    verdicts.append(_verdict("crossed_identity", rep.ok, rep.failures))
    graph_ok = graph_check(D)
    verdicts.append(_verdict("graph_in_semidirect", graph_ok))
    residual = ch_mc_residual(D)
    v = {"name": "mc_residual", "ok": residual.is_zero()}
    if not residual.is_zero():
        v["witnesses"] = _block_witnesses(residual)
    verdicts.append(v)
    if not (rep.ok == graph_ok == residual.is_zero()):
        raise InternalInvariantError("crossed homomorphism characterizations disagree")
    return {"verdicts": verdicts}


def _parity_list(flags):
    if flags.parity == "even":
        return (("even", 0),)
    if flags.parity == "odd":
        return (("odd", 1),)
    return (("even", 0), ("odd", 1))


def cmd_cohomology(pf, flags):
    t = _triple_of(pf)
    verdicts = _triple_verdicts(t)
    if not all(v["ok"] for v in verdicts):
        return {"verdicts": verdicts}
    table = {}
    for n in range(1, flags.max_n + 1):
        even, odd = triple_cohomology(t, n)
        row = {}
        for name, p in _parity_list(flags):
            row[name] = even if p == 0 else odd
        table[str(n)] = row
    return {"verdicts": verdicts, "cohomology": table}


def cmd_ch_cohomology(pf, flags):
    D = _crossed_of(pf)
    verdicts = _triple_verdicts(D.triple)
    rep = check_crossed(D)
    verdicts.append(_verdict("crossed_identity", rep.ok, rep.failures))
    if not all(v["ok"] for v in verdicts):
        return {"verdicts": verdicts}
    D = verify(D)
    table = {}
    for n in range(1, flags.max_n + 1):
        even, odd = ch_cohomology(D, n)
        row = {}
        for name, p in _parity_list(flags):
            row[name] = even if p == 0 else odd
        table[str(n)] = row
    return {"verdicts": verdicts, "cohomology": table}


def cmd_deform(pf, flags):
    t = _triple_of(pf)
    pf.require("deformation")
    verdicts = _triple_verdicts(t)
    if not all(v["ok"] for v in verdicts):
        return {"verdicts": verdicts}
    pis, rhos, mus = sio.deformation_terms(pf)
    order = flags.order if flags.order is not None else pf.deformation.order
    d = TripleDeformation.build(t, pis, rhos, mus, order=order)
    residuals = []
    for n in range(0, d.order + 1):
        r = triple_deformation_residual(d, n)
        entry = {"order": n, "ok": r.is_zero}
        if not r.is_zero:
            entry["witnesses"] = {
                name: _block_witnesses(comp)
                for name, comp in r.components().items()
                if not comp.is_zero()
            }
        residuals.append(entry)
        verdicts.append({"name": f"residual.order{n}", "ok": r.is_zero})
    inf = triple_infinitesimal(d)
    info = {
        "order": inf.order,
        "is_cocycle": inf.is_cocycle,
    }
    return {"verdicts": verdicts, "residuals": residuals, "infinitesimal": info}


def cmd_ch_deform(pf, flags):
    D = _crossed_of(pf)
    pf.require("deformation")
    verdicts = _triple_verdicts(D.triple)
    rep = check_crossed(D)
    verdicts.append(_verdict("crossed_identity", rep.ok, rep.failures))
    if not all(v["ok"] for v in verdicts):
        return {"verdicts": verdicts}
    D = verify(D)
    terms = sio.crossed_deformation_terms(pf)
    order = flags.order if flags.order is not None else pf.deformation.order
    d = CrossedHomDeformation.build(D, terms, order=order)
    residuals = []
    for n in range(0, d.order + 1):
        r = ch_deformation_residual(d, n)
        entry = {"order": n, "ok": r.is_zero()}
        if not r.is_zero():
            entry["witnesses"] = _block_witnesses(r)
        residuals.append(entry)
        verdicts.append({"name": f"residual.order{n}", "ok": r.is_zero()})
    inf = ch_infinitesimal(d)
    info = {"order": inf.order, "is_cocycle": inf.is_cocycle}
    return {"verdicts": verdicts, "residuals": residuals, "infinitesimal": info}


_HANDLERS = {
    "check-algebra": cmd_check_algebra,
    "check-triple": cmd_check_triple,
    "check-crossed": cmd_check_crossed,
    "cohomology": cmd_cohomology,
    "ch-cohomology": cmd_ch_cohomology,
    "deform": cmd_deform,
    "ch-deform": cmd_ch_deform,
}


def run(command: str, path: str, flags) -> dict:
    """Execute one command against one file; returns the report dictionary."""
    pf = sio.parse(path)
    body = _HANDLERS[command](pf, flags)
    ok = all(v["ok"] for v in body.get("verdicts", ()))
    report = {
        "command": command,
        "file": str(path),
        "parameters": {
            "max_n": flags.max_n,
            "parity": flags.parity,
            "order": flags.order,
            "seed": flags.seed,
        },
        "ok": ok,
    }
    report.update(body)
    return report


def _format_text(report: dict, elapsed_ms: float) -> str:
    lines = [f"{report['command']}  {report['file']}"]
    for v in report.get("verdicts", ()):
        mark = "ok" if v["ok"] else "FAIL"
        lines.append(f"  [{mark:4}] {v['name']}")
        for f in v.get("failures", [])[:5]:
            if "omitted" in f:
                lines.append(f"         ... {f['omitted']} more")
            else:
                lines.append(f"         at ({', '.join(f['where'])}): lhs={f['lhs']} rhs={f['rhs']}")
        for w in v.get("witnesses", [])[:5]:
            slots = ", ".join(w["g_slots"] + w["h_slots"])
            lines.append(f"         at ({slots}): {w['value']}")
    if report.get("cohomology"):
        lines.append("  n    " + "  ".join(k for k in next(iter(report["cohomology"].values()))))
        for n in sorted(report["cohomology"], key=int):
            row = report["cohomology"][n]
            lines.append("  " + str(n).ljust(4) + "  ".join(str(row[k]) for k in row))
    if "residuals" in report:
        for entry in report["residuals"]:
            mark = "ok" if entry["ok"] else "FAIL"
            lines.append(f"  residual order {entry['order']}: {mark}")
    if "infinitesimal" in report:
        info = report["infinitesimal"]
        if info["order"] is None:
            lines.append("  infinitesimal: none (constant deformation)")
        else:
            lines.append(
                f"  infinitesimal at order {info['order']}: "
                f"{'cocycle' if info['is_cocycle'] else 'NOT a cocycle'}"
            )
    lines.append(f"  result: {'PASS' if report['ok'] else 'FAIL'}  ({elapsed_ms:.1f} ms)")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="supercochain",
        description="Exact checks and cohomology for Lie superalgebra triples, "
        "crossed homomorphisms and their deformations.",
    )
    parser.add_argument("command", choices=sorted(_HANDLERS))
    parser.add_argument("file", help="JSON problem file")
    parser.add_argument("--max-n", type=int, default=2, dest="max_n", help="top cohomology degree")
    parser.add_argument("--parity", choices=("even", "odd", "both"), default="both")
    parser.add_argument("--format", choices=("text", "json"), default="text", dest="fmt")
    parser.add_argument("--order", type=int, default=None, help="deformation truncation order")
    parser.add_argument("--seed", type=int, default=0, help="seed recorded in the report")
    args = parser.parse_args(argv)
    if args.max_n < 1:
        print("error: --max-n must be >= 1", file=sys.stderr)
        return EXIT_BAD_INPUT

    start = time.perf_counter()
    try:
        report = run(args.command, args.file, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except InternalInvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except SupercochainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    elapsed_ms = (time.perf_counter() - start) * 1000.0

    if args.fmt == "json":
        sys.stdout.write(sio.report_to_json(report))
    else:
        sys.stdout.write(_format_text(report, elapsed_ms))
    return EXIT_OK if report["ok"] else EXIT_CHECK_FAILED


if __name__ == "__main__":
    raise SystemExit(main())
