from __future__ import annotations
import argparse
import json
import logging
import sys
from typing import Any, Callable, List, Optional

import requests
from pydantic import BaseModel, ValidationError

import config
import operations as ops
from codec import load_json_file
from errors import RForestError
from schemas import (
    AxiomsIn,
    CclIn,
    DeltaIn,
    DistanceIn,
    IntervalIn,
    IsomorphicIn,
    MeetIn,
    ParallelIn,
    PathTestIn,
    PredicateIn,
    ProjectIn,
    RestrictIn,
    SpaceEnvelope,
    SuiteRunIn,
    TipIn,
    TreeProjectIn,
    TypeDistanceIn,
)

logger = logging.getLogger("rforest")

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


# -----------------------------
# Input helpers
# -----------------------------
def _space(path: str) -> Any:
    raw = load_json_file(path)
    if isinstance(raw, dict) and "space" in raw and "kind" not in raw:
        return raw["space"]
    return raw


def _files(paths: List[str]) -> List[Any]:
    return [load_json_file(p) for p in paths]


def _emit(out: BaseModel) -> None:
    print(json.dumps(out.model_dump(exclude_none=True)))


# -----------------------------
# Verb handlers: argparse namespace -> output model
# -----------------------------
def _space_check(args):
    return ops.space_check(SpaceEnvelope.model_validate({"space": _space(args.file)}).space)


def _space_diameter(args):
    return ops.space_diameter(SpaceEnvelope.model_validate({"space": _space(args.file)}).space)


def _elem_dist(args):
    return ops.elem_distance(DistanceIn.model_validate({
        "space": _space(args.space), "a": load_json_file(args.a), "b": load_json_file(args.b), "s": args.s,
    }))


def _elem_meet(args):
    return ops.elem_meet(MeetIn.model_validate({"space": _space(args.space), "elements": _files(args.elements)}))


def _elem_restrict(args):
    return ops.elem_restrict(RestrictIn.model_validate({
        "space": _space(args.space), "element": load_json_file(args.element), "r": args.r,
    }))


def _elem_tp(args):
    return ops.elem_tip(TipIn.model_validate({"space": _space(args.space), "element": load_json_file(args.element)}))


def _elem_pred(args):
    return ops.elem_predicate(PredicateIn.model_validate({
        "space": _space(args.space), "element": load_json_file(args.element), "function": load_json_file(args.function),
    }))


def _interval_enum(args):
    return ops.interval_enum(IntervalIn.model_validate({
        "space": _space(args.space), "a": load_json_file(args.a), "b": load_json_file(args.b),
    }))


def _interval_delta(args):
    return ops.interval_delta(DeltaIn.model_validate({
        "space": _space(args.space), "a": load_json_file(args.a), "b": load_json_file(args.b),
        "r": args.r, "x": load_json_file(args.x),
    }))


def _interval_project(args):
    return ops.interval_project(ProjectIn.model_validate({
        "space": _space(args.space), "a": load_json_file(args.a), "b": load_json_file(args.b), "x": load_json_file(args.x),
    }))


def _tree_ccl(args):
    return ops.tree_ccl(CclIn.model_validate({"space": _space(args.space), "elements": _files(args.elements)}))


def _tree_project(args):
    return ops.tree_project(TreeProjectIn.model_validate({
        "space": _space(args.space), "tree": load_json_file(args.tree), "x": load_json_file(args.x),
    }))


def _tree_iso(args):
    return ops.tree_isomorphic(IsomorphicIn.model_validate({
        "space": _space(args.space), **{name: load_json_file(getattr(args, name)) for name in "abcd"},
    }))


def _path_test(args):
    return ops.path_test(PathTestIn.model_validate({
        "space": _space(args.space), "f": load_json_file(args.f), "g": load_json_file(args.g), "V": args.V, "e": args.e,
    }))


def _path_parallel(args):
    return ops.path_parallel(ParallelIn.model_validate({
        "space": _space(args.space), "f": load_json_file(args.f), "V": args.V, "e": args.e, "points": args.points,
    }))


def _path_axioms(args):
    return ops.path_axioms(AxiomsIn.model_validate({"metric": load_json_file(args.metric), "r": args.r}))


def _types_payload(args) -> TypeDistanceIn:
    return TypeDistanceIn.model_validate({
        "space": _space(args.space), "model": load_json_file(args.model),
        "t1": load_json_file(args.t1), "t2": load_json_file(args.t2),
    })


def _types_dist(args):
    return ops.types_distance(_types_payload(args))


def _types_oracle(args):
    return ops.types_oracle(_types_payload(args))


def _prop_run(args):
    return ops.prop_run(SuiteRunIn.model_validate({
        "suite": args.suite, "space": _space(args.space), "seed": args.seed, "cases": args.cases,
        "max_breakpoints": args.max_breakpoints, "max_family": args.max_family,
        "max_intervals": args.max_intervals, "max_denominator": args.max_denominator,
    }))


# -----------------------------
# Run server (programmatically)
# -----------------------------
def run_server(port: int, host: str = "127.0.0.1", reload: bool = True) -> int:
    try:
        import uvicorn
    except ImportError:
        print("uvicorn not installed. Run: pip install -r requirements.txt", file=sys.stderr)
        return EXIT_FAILURE
    uvicorn.run("api:app", host=host, port=port, reload=reload)
    return EXIT_OK


# -----------------------------
# Health checker
# -----------------------------
def health_check(base_url: str) -> int:
    logger.info("checking server at %s", base_url)
    try:
        r = requests.get(f"{base_url.rstrip('/')}/health", timeout=10)
        r.raise_for_status()
        body = r.json()
    except (requests.RequestException, ValueError) as e:
        print(f"Health check failed: {e}", file=sys.stderr)
        return EXIT_FAILURE
    print(json.dumps(body))
    return EXIT_OK


# -----------------------------
# CLI
# -----------------------------
def _common(p: argparse.ArgumentParser, *files: str, multi: Optional[str] = None) -> None:
    p.add_argument("--space", required=True, help="Space description (JSON file)")
    for name in files:
        p.add_argument(f"--{name}", required=True, help=f"{name} (JSON file)")
    if multi:
        p.add_argument(f"--{multi}", nargs="+", required=True, help=f"{multi} (JSON files)")


def _int_at_least(low: int) -> Callable[[str], int]:
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
        if value < low:
            raise argparse.ArgumentTypeError(f"must be >= {low}, got {value}")
        return value
    return parse


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rforest", description="Exact-arithmetic R-forest toolkit")
    sub = p.add_subparsers(dest="cmd", required=True)

    # space
    ps = sub.add_parser("space", help="Validate base spaces").add_subparsers(dest="verb", required=True)
    for verb, fn in (("check", _space_check), ("diameter", _space_diameter)):
        v = ps.add_parser(verb)
        v.add_argument("file")
        v.set_defaults(fn=fn)

    # elem
    pe = sub.add_parser("elem", help="Forest elements").add_subparsers(dest="verb", required=True)
    v = pe.add_parser("dist")
    _common(v, "a", "b")
    v.add_argument("--s", help="Truncation (rational)")
    v.set_defaults(fn=_elem_dist)
    v = pe.add_parser("meet")
    _common(v, multi="elements")
    v.set_defaults(fn=_elem_meet)
    v = pe.add_parser("restrict")
    _common(v, "element")
    v.add_argument("--r", required=True)
    v.set_defaults(fn=_elem_restrict)
    v = pe.add_parser("tp")
    _common(v, "element")
    v.set_defaults(fn=_elem_tp)
    v = pe.add_parser("pred")
    _common(v, "element", "function")
    v.set_defaults(fn=_elem_pred)

    # interval
    pi = sub.add_parser("interval", help="Intervals [K, K']").add_subparsers(dest="verb", required=True)
    v = pi.add_parser("enum")
    _common(v, "a", "b")
    v.set_defaults(fn=_interval_enum)
    v = pi.add_parser("delta")
    _common(v, "a", "b", "x")
    v.add_argument("--r", required=True)
    v.set_defaults(fn=_interval_delta)
    v = pi.add_parser("project")
    _common(v, "a", "b", "x")
    v.set_defaults(fn=_interval_project)

    # tree
    pt = sub.add_parser("tree", help="Finite trees").add_subparsers(dest="verb", required=True)
    v = pt.add_parser("ccl")
    _common(v, multi="elements")
    v.set_defaults(fn=_tree_ccl)
    v = pt.add_parser("project")
    _common(v, "tree", "x")
    v.set_defaults(fn=_tree_project)
    v = pt.add_parser("iso", help="Are [a, b] from a and [c, d] from c the same path?")
    _common(v, "a", "b", "c", "d")
    v.set_defaults(fn=_tree_iso)

    # path
    pp = sub.add_parser("path", help="Path space").add_subparsers(dest="verb", required=True)
    v = pp.add_parser("test")
    _common(v, "f", "g")
    v.add_argument("--V", required=True, help="Entourage index")
    v.add_argument("--e", required=True)
    v.set_defaults(fn=_path_test)
    v = pp.add_parser("parallel")
    _common(v, "f")
    v.add_argument("--V", required=True, help="Entourage index")
    v.add_argument("--e", required=True)
    v.add_argument("--points", nargs="*", default=[], help="Start points to build from")
    v.set_defaults(fn=_path_parallel)
    v = pp.add_parser("axioms")
    v.add_argument("--metric", required=True, help="Pointed finite metric (JSON file)")
    v.add_argument("--r", required=True)
    v.set_defaults(fn=_path_axioms)

    # types
    py = sub.add_parser("types", help="Type space over desk models").add_subparsers(dest="verb", required=True)
    for verb, fn in (("dist", _types_dist), ("oracle", _types_oracle)):
        v = py.add_parser(verb)
        _common(v, "model", "t1", "t2")
        v.set_defaults(fn=fn)

    # prop
    pr = sub.add_parser("prop", help="Property suites").add_subparsers(dest="verb", required=True)
    v = pr.add_parser("run")
    v.add_argument("--suite", required=True)
    v.add_argument("--seed", type=_int_at_least(0), default=config.DEFAULT_SEED)
    v.add_argument("--cases", type=_int_at_least(1), default=config.DEFAULT_CASES)
    v.add_argument("--space", required=True)
    v.add_argument("--max-breakpoints", type=_int_at_least(1), default=config.DEFAULT_MAX_BREAKPOINTS)
    v.add_argument("--max-family", type=_int_at_least(1), default=config.DEFAULT_MAX_FAMILY)
    v.add_argument("--max-intervals", type=_int_at_least(1), default=config.DEFAULT_MAX_INTERVALS)
    v.add_argument("--max-denominator", type=_int_at_least(1), default=config.DEFAULT_MAX_DENOMINATOR)
    v.set_defaults(fn=_prop_run)

    # serve / health
    v = sub.add_parser("serve", help="Start the FastAPI server (uvicorn)")
    v.add_argument("--port", type=int, default=8000, help="Port to bind")
    v.add_argument("--host", type=str, default="127.0.0.1", help="Host to bind")
    v.add_argument("--no-reload", action="store_true", help="Disable auto-reload")
    v = sub.add_parser("health", help="Check server availability")
    v.add_argument("--base-url", type=str, default=config.DEFAULT_BASE_URL, help="API base URL")
    return p


def cli_dispatch(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 for --help
        return EXIT_USAGE if e.code else EXIT_OK

    if args.cmd == "serve":
        return run_server(port=args.port, host=args.host, reload=(not args.no_reload))
    if args.cmd == "health":
        return health_check(args.base_url)

    handler: Callable[[argparse.Namespace], BaseModel] = args.fn
    try:
        out = handler(args)
    except (RForestError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except RuntimeError as e:
        logger.error("invariant broken: %s", e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    _emit(out)
    return EXIT_FAILURE if getattr(out, "violations", None) else EXIT_OK


def main() -> None:
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, config.LOG_LEVEL.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
