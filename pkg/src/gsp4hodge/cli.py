"""Command-line front end.

Every command reads an optional JSON document (``--input path`` or ``-``
for stdin), dispatches to the library, and emits a deterministic report:

    {"command": ..., "status": "ok"|"invalid"|"degenerate",
     "payload": {...}, "citations": [...]}

as JSON (default), plain text, or DOT where a graph makes sense.  Exit
codes: 0 ok, 2 invalid input, 3 degenerate parameters.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction as Q

from .errors import (
    DegenerateIntersection,
    InconsistentData,
    InvalidData,
    LedgerInconsistent,
    NotALine,
    ParseError,
)
from .extledger import check_ledger, socle_diagram
from .hecke import FrobeniusData, HeckeData, classicality_classify, hecke_charpoly, ideal_generators
from .kernel import (
    KernelBasis,
    glue_generators,
    glue_subspace,
    jbar_rank,
    kernel_basis,
    matrix_suite,
    recover_parameters,
)
from .phimodule import (
    general_position,
    phi_module_from_json,
    standard_filtration,
    validate,
)
from .scalars import parse_scalar, scalar_str
from .symplectic import flag_anisotropy_check
from .weyl import from_oneline, from_word

EXIT_OK, EXIT_INVALID, EXIT_DEGENERATE = 0, 2, 3

#: Stable anchor names for what each command exercises.
CITATIONS = {
    "validate": ["structural-invariants", "nondegeneracy-polynomial"],
    "flag": ["standard-filtration", "flag-anisotropy"],
    "kernel": ["tangent-map-kernel", "borel-rank"],
    "recover": ["hodge-parameter-recovery", "tangent-map-kernel"],
    "glue": ["parabolic-gluing"],
    "matrices": ["generator-matrix-suite"],
    "ledger": ["dimension-ledger"],
    "socle": ["socle-layers", "constituent-combinatorics"],
    "hecke": ["frobenius-charpoly", "hecke-ideal-generators"],
    "classify": ["classicality-bounds", "refinement-partial-sums"],
    "batch": ["batch-dispatch"],
}

_STATUS_EXIT = {"ok": EXIT_OK, "invalid": EXIT_INVALID, "degenerate": EXIT_DEGENERATE}


def _mat_strs(M):
    return [[scalar_str(x) for x in row] for row in M]


def _rows_strs(rows):
    return [[scalar_str(x) for x in row] for row in rows]


def _load_document(path: str | None) -> dict:
    if path is None:
        return {}
    raw = sys.stdin.read() if path == "-" else open(path, "r", encoding="utf-8").read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"input is not JSON: {exc}") from exc
    if isinstance(doc, dict) and doc.get("schema", 1) != 1:
        raise ParseError(f"unsupported schema version {doc.get('schema')}")
    return doc


def _ab_from_doc(doc: dict, symbolic_flag: bool):
    symbolic = bool(doc.get("symbolic", False)) or symbolic_flag
    a_text = str(doc.get("a", "a" if symbolic else None))
    b_text = str(doc.get("b", "b" if symbolic else None))
    if a_text == "None" or b_text == "None":
        raise ParseError("the document needs Hodge parameters a and b (or --symbolic)")
    return parse_scalar(a_text, symbolic), parse_scalar(b_text, symbolic)


def _report(command: str, status: str, payload) -> dict:
    return {
        "command": command,
        "status": status,
        "payload": payload,
        "citations": CITATIONS[command],
    }


# ---------------------------------------------------------------------------
# Command handlers: each returns a report dict
# ---------------------------------------------------------------------------


def run_validate(doc, args):
    d = phi_module_from_json(doc)
    report = validate(d)
    return _report("validate", "ok" if report.ok else "invalid", report.as_dict())


def run_flag(doc, args):
    d = phi_module_from_json(doc)
    hf = standard_filtration(d)
    payload = {
        "members": {str(i): _rows_strs(hf.member(i).rows) for i in (1, 2, 3)},
        "jumps": list(hf.jumps),
        "anisotropic": flag_anisotropy_check(hf.flag),
        "general_position": general_position(hf),
    }
    return _report("flag", "ok", payload)


def run_kernel(doc, args):
    a, b = _ab_from_doc(doc, args.symbolic)
    K = kernel_basis(a, b)
    payload = {
        "a": scalar_str(a),
        "b": scalar_str(b),
        "rank": jbar_rank(a, b),
        "dim": K.dim,
        "basis": _rows_strs(K.rows),
    }
    return _report("kernel", "ok", payload)


def _kernel_from_doc(doc) -> KernelBasis:
    symbolic = bool(doc.get("symbolic", False))
    rows = tuple(
        tuple(parse_scalar(str(x), symbolic) for x in row) for row in doc["kernel"]
    )
    if any(len(r) != 24 for r in rows):
        raise ParseError("kernel rows must have 24 entries")
    return KernelBasis(rows=rows, a=None, b=None)


def run_recover(doc, args):
    if "count" in doc or args.random:
        count = int(doc.get("count", args.random or 0))
        rng = random.Random(args.seed)
        results = []
        for _ in range(count):
            while True:
                a = Q(rng.randint(-9, 9), rng.randint(1, 5))
                b = Q(rng.randint(-9, 9), rng.randint(1, 5))
                if a * b * (b + 1) * (a + b) * (a * b + a + b) != 0:
                    break
            got = recover_parameters(kernel_basis(a, b))
            results.append(
                {"a": scalar_str(a), "b": scalar_str(b), "round_trip": got == (a, b)}
            )
        all_ok = all(r["round_trip"] for r in results)
        payload = {"count": count, "seed": args.seed, "all_ok": all_ok, "results": results}
        return _report("recover", "ok" if all_ok else "degenerate", payload)

    if "kernel" in doc:
        K = _kernel_from_doc(doc)
        a, b = recover_parameters(K)
        payload = {"a": scalar_str(a), "b": scalar_str(b), "source": "kernel-basis"}
        return _report("recover", "ok", payload)

    a, b = _ab_from_doc(doc, args.symbolic)
    got_a, got_b = recover_parameters(kernel_basis(a, b))
    round_trip = (got_a, got_b) == (a, b)
    payload = {
        "a": scalar_str(got_a),
        "b": scalar_str(got_b),
        "round_trip": round_trip,
        "source": "parameters",
    }
    return _report("recover", "ok" if round_trip else "degenerate", payload)


def run_glue(doc, args):
    glue = glue_subspace()
    payload = {
        "generator_count": len(glue_generators()),
        "dim": glue.dim,
        "basis": _rows_strs(glue.rows),
    }
    return _report("glue", "ok", payload)


def run_matrices(doc, args):
    a, b = _ab_from_doc(doc, args.symbolic)
    suite = matrix_suite(a, b)
    payload = {name: _mat_strs(M) for name, M in suite.items()}
    payload["basis"] = "filtration basis (v1, v2, v3, v4)"
    return _report("matrices", "ok", payload)


def run_ledger(doc, args):
    try:
        report = check_ledger()
    except LedgerInconsistent as exc:
        return _report("ledger", "invalid", exc.report.as_dict())
    return _report("ledger", "ok", report.as_dict())


def run_socle(doc, args):
    kind = doc.get("kind", getattr(args, "kind", None))
    if kind is None:
        raise ParseError("socle needs a diagram kind: PS1, pi1 or pimin")
    w = None
    w_text = doc.get("w", getattr(args, "w", None))
    if w_text:
        w_text = str(w_text)
        w = from_oneline(json.loads(w_text)) if w_text.startswith("[") else from_word(w_text)
    diagram = socle_diagram(kind, w)
    payload = {"kind": diagram.kind, "layers": diagram.layer_labels()}
    report = _report("socle", "ok", payload)
    report["_diagram"] = diagram  # consumed by the dot/text renderers
    return report


def run_hecke(doc, args):
    if "c0" in doc:
        d = HeckeData(
            l=int(doc["l"]),
            c0=Q(parse_scalar(str(doc["c0"]))),
            c1=Q(parse_scalar(str(doc["c1"]))),
            c2=Q(parse_scalar(str(doc["c2"]))),
        )
        f = hecke_charpoly(d)
        back = ideal_generators(f, d.l)
        payload = {
            "charpoly": [scalar_str(x) for x in (Q(1),) + f.coeffs],
            "sim": scalar_str(f.sim),
            "round_trip": back == d,
        }
        return _report("hecke", "ok", payload)
    if "coeffs" in doc:
        f = FrobeniusData(
            coeffs=tuple(Q(parse_scalar(str(x))) for x in doc["coeffs"]),
            sim=Q(parse_scalar(str(doc["sim"]))),
        )
        d = ideal_generators(f, int(doc["l"]))
        payload = {
            "c0": scalar_str(d.c0),
            "c1": scalar_str(d.c1),
            "c2": scalar_str(d.c2),
            "round_trip": hecke_charpoly(d) == f,
        }
        return _report("hecke", "ok", payload)
    raise ParseError("hecke document needs either c0/c1/c2 or coeffs/sim")


def run_classify(doc, args):
    report = classicality_classify(
        alphas=[Q(parse_scalar(str(x))) for x in doc["alphas"]],
        weights=[int(x) for x in doc["weights"]],
        p=int(doc["p"]),
        C=Q(parse_scalar(str(doc["C"]))),
    )
    return _report("classify", "ok", report.as_dict())


_HANDLERS = {
    "validate": run_validate,
    "flag": run_flag,
    "kernel": run_kernel,
    "recover": run_recover,
    "glue": run_glue,
    "matrices": run_matrices,
    "ledger": run_ledger,
    "socle": run_socle,
    "hecke": run_hecke,
    "classify": run_classify,
}


def dispatch(command: str, doc: dict, args) -> tuple[dict, int]:
    """Run one command; returns (report, exit_code)."""
    try:
        report = _HANDLERS[command](doc, args)
    except (ParseError, InvalidData, InconsistentData, KeyError, TypeError, ValueError) as exc:
        report = _report(command, "invalid", {"error": str(exc) or repr(exc)})
    except (DegenerateIntersection, NotALine) as exc:
        report = _report(command, "degenerate", {"error": str(exc)})
    return report, _STATUS_EXIT[report["status"]]


def run_batch(doc, args) -> tuple[dict, int]:
    if not isinstance(doc, list):
        raise ParseError("batch input must be a JSON list of documents")
    results = []
    worst = EXIT_OK
    for item in doc:
        if not isinstance(item, dict) or "command" not in item:
            results.append(_report("batch", "invalid", {"error": "missing command"}))
            worst = max(worst, EXIT_INVALID)
            continue
        command = item["command"]
        if command not in _HANDLERS:
            results.append(_report("batch", "invalid", {"error": f"unknown command {command!r}"}))
            worst = max(worst, EXIT_INVALID)
            continue
        sub, code = dispatch(command, item.get("doc", {}), args)
        sub.pop("_diagram", None)
        results.append(sub)
        worst = max(worst, code)
    return _report("batch", "ok" if worst == EXIT_OK else ("invalid" if worst == EXIT_INVALID else "degenerate"), {"results": results}), worst


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def render(report: dict, fmt: str) -> str:
    diagram = report.pop("_diagram", None)
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    if fmt == "dot":
        if diagram is None:
            raise ParseError("dot output is only available for socle diagrams")
        return diagram.to_dot()
    # text
    lines = [f"command: {report['command']}", f"status: {report['status']}"]
    if diagram is not None:
        lines.append(diagram.to_text())
    else:
        lines.extend(_text_lines(report["payload"], indent="  "))
    lines.append("citations: " + ", ".join(report["citations"]))
    return "\n".join(lines)


def _text_lines(value, indent=""):
    out = []
    if isinstance(value, dict):
        for key in sorted(value):
            sub = value[key]
            if isinstance(sub, (dict, list)):
                out.append(f"{indent}{key}:")
                out.extend(_text_lines(sub, indent + "  "))
            else:
                out.append(f"{indent}{key}: {sub}")
    elif isinstance(value, list):
        simple = all(not isinstance(x, (dict, list)) for x in value)
        if simple:
            out.append(f"{indent}[" + ", ".join(str(x) for x in value) + "]")
        else:
            for x in value:
                out.extend(_text_lines(x, indent + "  "))
    else:
        out.append(f"{indent}{value}")
    return out


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "dot"), default="json")
    common.add_argument("--input", default=None, help="JSON document path or - for stdin")
    common.add_argument("--symbolic", action="store_true", help="work over Q(a,b)")
    common.add_argument("--seed", type=int, default=0, help="seed for random sweeps")
    parser = argparse.ArgumentParser(
        prog="gsp4hodge",
        description="Exact computations around symplectic Hodge parameters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _HANDLERS:
        p = sub.add_parser(name, parents=[common])
        if name == "socle":
            p.add_argument("kind", nargs="?", choices=("PS1", "pi1", "pimin"))
            p.add_argument("--w", default=None, help="Weyl word like s1s2 or one-line [2,1,4,3]")
        if name == "recover":
            p.add_argument("--random", type=int, default=0, help="round-trip this many random points")
    sub.add_parser("batch", parents=[common])
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if not hasattr(args, "random"):
        args.random = 0
    try:
        doc = _load_document(args.input)
        if args.command == "batch":
            report, code = run_batch(doc, args)
        else:
            report, code = dispatch(args.command, doc, args)
        print(render(report, args.format))
        return code
    except ParseError as exc:
        print(json.dumps({"status": "invalid", "error": str(exc)}, sort_keys=True))
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
