"""Command line front end: ``zpuv <verb> spec.json [options]``.

Every numeric row a verb emits carries a provenance label, either
``paper-claim`` (a stated formula evaluated on the inputs) or
``oracle-truth`` (brute-force enumeration).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import Callable

from . import __version__
from .ambient import gray_psi
from .builder import (
    CodeSpec,
    Kind,
    MessageBoundError,
    SpecRefused,
    ambient_bound_check,
    build_span,
    claimed_cardinality,
    derive_quantities,
    encode,
    generators,
    validate_spec,
)
from .local_ring import RElem
from .oracle import (
    ALL_OPS,
    DEFAULT_GUARD,
    GuardExceeded,
    check_closed_under,
    closure_exponent,
    dual_code,
    independence_audit,
    min_distance,
    qc_image_check,
    span_closure,
)
from .sampling import iter_specs
from .serialize import SpecParseError, dumps, load_messages, load_spec, spec_to_json

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3
PAPER, ORACLE = "paper-claim", "oracle-truth"
STAGES = ("validate", "derive", "span", "claim", "bound", "closure", "audit", "gray", "dual", "distance")
METRICS = ("hamming-mixed", "gray-hamming")


class Run:
    """Accumulates one report and the exit status it implies."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.body: dict = {}
        self.rows: list[dict] = []
        self.status = EXIT_OK
        self.timing: dict[str, float] = {}

    def row(self, name: str, value, provenance: str, **extra) -> None:
        self.rows.append({"row": name, "value": value, "provenance": provenance, **extra})

    def fail(self, code: int) -> None:
        self.status = max(self.status, code)

    def guard_hit(self, stage: str, exc: GuardExceeded) -> dict:
        if self.args.strict:
            self.fail(EXIT_GUARD)
        return {"status": "guard-exceeded", "lower_bound": exc.lower_bound, "guard": exc.guard,
                "note": "claim not checkable at this scale"}

    def emit(self) -> int:
        out = dict(self.body)
        if self.rows:
            out["rows"] = self.rows
        if self.timing:
            out["timing_seconds"] = self.timing
        if self.args.format == "json":
            text = dumps(out)
        else:
            text = render_text(out)
        if getattr(self.args, "out", None):
            Path(self.args.out).write_text(text)
        else:
            sys.stdout.write(text)
        return self.status


# text rendering


def _scalar(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def _item_line(item: dict, indent: int) -> str:
    return (" " * indent + "  ".join(_scalar(x) for x in item.values() if x != "")).rstrip()


def render_text(out: dict) -> str:
    lines = []
    rows = out.pop("rows", None)
    for key, val in out.items():
        if isinstance(val, dict):
            lines.append(f"[{key}]")
            width = max((len(k) for k in val), default=0)
            for k, v in val.items():
                if isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
                    lines.append(f"  {k}:")
                    lines += [_item_line(item, 4) for item in v]
                else:
                    lines.append(f"  {k.ljust(width)}  {_scalar(v)}")
        elif isinstance(val, list) and val and all(isinstance(x, dict) for x in val):
            lines.append(f"[{key}]")
            lines += [_item_line(item, 2) for item in val]
        else:
            lines.append(f"{key}: {_scalar(val)}")
    if rows:
        cols = ("row", "value", "provenance")
        table = [[_scalar(r[c]) for c in cols] for r in rows]
        widths = [max(len(c), *(len(t[i]) for t in table)) for i, c in enumerate(cols)]
        lines.append("")
        lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
        lines.append("  ".join("-" * w for w in widths))
        lines += ["  ".join(t.ljust(w) for t, w in zip(row, widths)).rstrip() for row in table]
    return "\n".join(lines) + "\n"


# stage runners


def _validation(run: Run, spec: CodeSpec) -> bool:
    rep = validate_spec(spec)
    run.body["validation"] = rep.to_json()
    if not rep.ok or (run.args.strict and not rep.consistent):
        run.fail(EXIT_FAIL)
    return rep.ok


def _refused(run: Run, spec: CodeSpec) -> bool:
    """True when the builders must not run on this spec."""
    rep = validate_spec(spec)
    if rep.ok:
        return False
    if getattr(run.args, "force", False):
        run.body["unvalidated"] = [c.name for c in rep.failures()]
        return False
    run.body["refused"] = [c.name for c in rep.failures()]
    run.fail(EXIT_FAIL)
    return True


def _closure(run: Run, spec: CodeSpec):
    rank = closure_exponent(generators(spec), spec.params)
    try:
        cs = span_closure(generators(spec), spec.params, run.args.guard)
    except GuardExceeded as exc:
        run.body["closure"] = {**run.guard_hit("closure", exc), "rank_exponent": rank}
        run.row("cardinality exponent (by rank)", rank, ORACLE)
        return None
    if cs.exponent != rank:
        raise AssertionError(f"enumeration exponent {cs.exponent} disagrees with rank {rank}")
    run.body["closure"] = {"size": len(cs), "exponent": cs.exponent}
    run.row("cardinality exponent", cs.exponent, ORACLE)
    return cs


def _claim(run: Run, spec: CodeSpec) -> int | None:
    e = claimed_cardinality(spec, require_valid=False)
    if e is None:
        run.row("cardinality exponent", "no formula for this kind", PAPER)
    else:
        run.row("cardinality exponent", e, PAPER)
    return e


def _bound(run: Run, spec: CodeSpec, e: int | None) -> None:
    b = ambient_bound_check(spec, e)
    run.body["ambient_bound"] = b.to_json()
    run.row("ambient bound exponent", b.bound_exponent, ORACLE, flag=b.flag)
    if run.args.strict and not b.consistent:
        run.fail(EXIT_FAIL)


def _stage_list(text: str | None) -> list[str]:
    if not text:
        return list(STAGES)
    stages = [s.strip() for s in text.split(",") if s.strip()]
    bad = [s for s in stages if s not in STAGES]
    if bad:
        raise SpecParseError(f"unknown stage(s) {bad}; choose from {list(STAGES)}", "--stages")
    return stages


def cmd_validate(run: Run, spec: CodeSpec) -> None:
    _validation(run, spec)


def cmd_derive(run: Run, spec: CodeSpec) -> None:
    if _refused(run, spec):
        return
    run.body["derived"] = derive_quantities(spec, require_valid=False).to_json()


def cmd_span(run: Run, spec: CodeSpec) -> None:
    if _refused(run, spec):
        return
    sp = build_span(spec, require_valid=False)
    run.body["span"] = sp.to_json()
    run.row("spanning set size", len(sp), PAPER)


def cmd_card(run: Run, spec: CodeSpec) -> None:
    if _refused(run, spec):
        return
    _bound(run, spec, _claim(run, spec))


def cmd_enumerate(run: Run, spec: CodeSpec) -> None:
    cs = _closure(run, spec)
    if cs is None:
        return
    run.body["closed_under"] = {op: check_closed_under(cs, op) for op in ALL_OPS}
    if run.args.words:
        cs.dump(run.args.words)
        run.body["closure"]["dumped_to"] = str(run.args.words)


def cmd_gray(run: Run, spec: CodeSpec) -> None:
    cs = _closure(run, spec)
    if cs is not None:
        run.body["gray"] = {"length": spec.params.gray_length, "classification": qc_image_check(cs)}


def cmd_dual(run: Run, spec: CodeSpec) -> None:
    cs = _closure(run, spec)
    if cs is None:
        return
    try:
        d = dual_code(cs, run.args.guard)
    except GuardExceeded as exc:
        run.body["dual"] = run.guard_hit("dual", exc)
        return
    run.body["dual"] = {"size": len(d), "exponent": d.exponent}
    run.row("dual cardinality exponent", d.exponent, ORACLE)


def cmd_distance(run: Run, spec: CodeSpec) -> None:
    cs = _closure(run, spec)
    if cs is None:
        return
    try:
        d = min_distance(cs, run.args.metric)
    except ValueError as exc:
        run.body["distance"] = {"metric": run.args.metric, "error": str(exc)}
        return
    run.body["distance"] = {"metric": run.args.metric, "value": d}
    run.row(f"minimum distance ({run.args.metric})", d, ORACLE)


def cmd_encode(run: Run, spec: CodeSpec) -> None:
    if _refused(run, spec):
        return
    msgs = load_messages(run.args.messages, spec.p)
    try:
        word = encode(spec, msgs, require_valid=False)
    except MessageBoundError as exc:
        run.body["error"] = str(exc)
        run.fail(EXIT_FAIL)
        return
    run.body["codeword"] = word.to_json()
    run.body["gray"] = list(gray_psi(word))


def cmd_report(run: Run, spec: CodeSpec) -> None:
    stages = _stage_list(run.args.stages)

    def timed(name: str, fn: Callable[[], object]):
        t0 = time.perf_counter()
        res = fn()
        if run.args.timing:
            run.timing[name] = round(time.perf_counter() - t0, 4)
        return res

    valid = True
    if "validate" in stages:
        valid = timed("validate", lambda: _validation(run, spec))
    else:
        valid = validate_spec(spec).ok
    if not valid:
        run.body["note"] = "hypotheses fail; builder stages run unvalidated"
    if "derive" in stages:
        run.body["derived"] = timed("derive", lambda: derive_quantities(spec, require_valid=False).to_json())
    sp = None
    if "span" in stages or "audit" in stages:
        sp = build_span(spec, require_valid=False)
    if "span" in stages:
        run.body["span"] = {"size": len(sp), "blocks": sp.block_counts}
        run.row("spanning set size", len(sp), PAPER)
    e = None
    if "claim" in stages or "bound" in stages:
        e = _claim(run, spec)
    if "bound" in stages:
        _bound(run, spec, e)
    oracle_stages = [s for s in ("closure", "audit", "gray", "dual", "distance") if s in stages]
    if not oracle_stages:
        return
    cs = timed("closure", lambda: _closure(run, spec))
    if e is not None and "closure" in stages:
        truth = cs.exponent if cs is not None else run.body["closure"]["rank_exponent"]
        run.body["claim_vs_truth"] = {
            "claimed_exponent": e, "oracle_exponent": truth,
            "method": "enumeration" if cs is not None else "rank",
            "verdict": "match" if e == truth else "mismatch",
        }
    if cs is None:
        return
    if "closure" in stages:
        run.body["closure"]["closed_under"] = {op: check_closed_under(cs, op) for op in ALL_OPS}
    if "audit" in stages:
        try:
            audit = timed("audit", lambda: independence_audit(sp, spec.params, run.args.guard))
        except GuardExceeded as exc:
            run.body["audit"] = run.guard_hit("audit", exc)
        else:
            run.body["audit"] = {
                "independent": audit["independent"], "first_dependent": audit["first_dependent"],
                "blocks": audit["blocks"], "r_span_exponent": audit["r_span_exponent"],
            }
            if audit["claimed_exponent"] is not None:
                run.row("sum of per-block contributions", audit["claimed_exponent"], PAPER)
            run.row("R-span exponent of spanning set", audit["r_span_exponent"], ORACLE)
    if "gray" in stages:
        run.body["gray"] = {"classification": timed("gray", lambda: qc_image_check(cs))}
    if "dual" in stages:
        try:
            d = timed("dual", lambda: dual_code(cs, run.args.guard))
        except GuardExceeded as exc:
            run.body["dual"] = run.guard_hit("dual", exc)
        else:
            run.body["dual"] = {"size": len(d), "exponent": d.exponent}
            run.row("dual cardinality exponent", d.exponent, ORACLE)
    if "distance" in stages:
        if len(cs) > 1:
            for metric in METRICS:
                run.row(f"minimum distance ({metric})", min_distance(cs, metric), ORACLE)
        else:
            run.body["distance"] = {"error": "no nonzero codeword"}


# search


def _lambda(text: str, p: int) -> RElem:
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise SpecParseError(f"lambda must be a,b,c integers, got {text!r}", "--lambda") from None
    if len(parts) != 3:
        raise SpecParseError("lambda must have three components", "--lambda")
    return RElem(*parts, p)


def _spec_key(spec: CodeSpec) -> str:
    return json.dumps(spec_to_json(spec), sort_keys=True, separators=(",", ":"))


def _load_progress(path: Path | None, identity: dict) -> dict:
    if path and path.exists():
        state = json.loads(path.read_text())
        if state.get("identity") == identity:
            return state
    return {"identity": identity, "examined": 0, "seen": {}, "results": []}


def cmd_search(run: Run, _spec: None) -> None:
    a = run.args
    kind = Kind(a.kind)
    lam = _lambda(a.lam, a.p) if a.lam else RElem.one(a.p)
    identity = {"p": a.p, "alpha": a.alpha, "beta": a.beta, "kind": kind.value,
                "lambda": list(lam.as_tuple()), "metric": a.metric, "guard": a.guard}
    progress = Path(a.progress) if a.progress else None
    state = _load_progress(progress, identity)
    examined = state["examined"]
    seen: dict[str, dict] = state["seen"]
    budget_left = a.budget
    exhausted = True
    for idx, spec in enumerate(iter_specs(kind, a.p, a.alpha, a.beta, lam)):
        if idx < examined:
            continue
        if budget_left <= 0:
            exhausted = False
            break
        budget_left -= 1
        examined = idx + 1
        if not validate_spec(spec).ok:
            continue
        try:
            cs = span_closure(generators(spec), spec.params, a.guard)
        except GuardExceeded:
            continue
        if len(cs) < 2:
            continue
        digest = hashlib.sha256(cs.keys.tobytes()).hexdigest()
        key = _spec_key(spec)
        prior = seen.get(digest)
        if prior is not None and prior["spec_key"] <= key:
            continue
        seen[digest] = {"spec_key": key, "distance": min_distance(cs, a.metric), "size": len(cs),
                        "spec": spec_to_json(spec)}
        if progress and examined % 500 == 0:
            progress.write_text(json.dumps({**state, "examined": examined, "seen": seen}))
    if progress:
        progress.write_text(json.dumps({**state, "examined": examined, "seen": seen}))
    ranked = sorted(seen.values(), key=lambda r: (-r["distance"], -r["size"], r["spec_key"]))
    top = ranked[: a.top] if a.top else ranked
    run.body["search"] = {**identity, "examined": examined, "distinct_codes": len(seen),
                          "complete": exhausted, "partial": not exhausted}
    run.body["results"] = [
        {"rank": i + 1, "distance": r["distance"], "size": r["size"], "spec": r["spec"], "provenance": ORACLE}
        for i, r in enumerate(top)
    ]
    if a.results:
        Path(a.results).write_text(dumps({"search": run.body["search"], "results": run.body["results"]}))


# argument parsing


VERBS: dict[str, tuple[Callable, str]] = {
    "validate": (cmd_validate, "check the hypotheses of the governing theorem"),
    "derive": (cmd_derive, "compute h, k, m1, m2, l1, l2 and block degrees"),
    "span": (cmd_span, "list the minimal spanning set"),
    "card": (cmd_card, "claimed cardinality and the ambient bound"),
    "enumerate": (cmd_enumerate, "enumerate the generated code by brute force"),
    "gray": (cmd_gray, "classify the Gray image"),
    "dual": (cmd_dual, "enumerate the dual code"),
    "distance": (cmd_distance, "exhaustive minimum distance"),
    "encode": (cmd_encode, "encode a message file"),
    "report": (cmd_report, "run several stages and juxtapose claims with enumeration"),
    "search": (cmd_search, "search generator tuples for good codes"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--guard", type=int, default=DEFAULT_GUARD, help="maximum number of enumerated words")
    common.add_argument("--strict", action="store_true", help="fail on INCONSISTENT flags and guard overflow")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="zpuv", description="Additive codes over Z_p x (Z_p + uZ_p + vZ_p).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb, (_, help_text) in VERBS.items():
        sp = sub.add_parser(verb, parents=[common], help=help_text)
        if verb == "search":
            sp.add_argument("--p", type=int, required=True)
            sp.add_argument("--alpha", type=int, required=True)
            sp.add_argument("--beta", type=int, required=True)
            sp.add_argument("--kind", choices=[k.value for k in Kind], required=True)
            sp.add_argument("--lambda", dest="lam", help="lambda as a,b,c (constacyclic kinds)")
            sp.add_argument("--metric", choices=METRICS, default="gray-hamming")
            sp.add_argument("--top", type=int, default=10)
            sp.add_argument("--budget", type=int, default=20000, help="maximum candidate tuples examined")
            sp.add_argument("--results", help="results file")
            sp.add_argument("--progress", help="progress record for resuming")
            continue
        sp.add_argument("spec", help="CodeSpec JSON file")
        if verb in ("derive", "span", "card", "encode"):
            sp.add_argument("--force", action="store_true", help="run even if hypotheses fail")
        if verb == "encode":
            sp.add_argument("messages", help="JSON object with s1..s6 polynomials")
        if verb == "distance":
            sp.add_argument("--metric", choices=METRICS, default="hamming-mixed")
        if verb == "enumerate":
            sp.add_argument("--words", help="dump the codewords, one packed word per line")
        if verb == "report":
            sp.add_argument("--stages", help=f"comma separated subset of {','.join(STAGES)}")
            sp.add_argument("--timing", action="store_true", help="include wall-clock timings")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = VERBS[args.verb][0]
    run = Run(args)
    try:
        spec = None
        if args.verb != "search":
            spec = load_spec(args.spec)
            run.body["spec"] = spec_to_json(spec)
        handler(run, spec)
    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SpecRefused as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD if args.strict else EXIT_FAIL
    return run.emit()


if __name__ == "__main__":
    sys.exit(main())
