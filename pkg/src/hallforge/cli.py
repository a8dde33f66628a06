"""Command-line interface.

Commands mirror the library surface: ``cartan``, ``enum``, ``hall``, ``mul``,
``reduce``, ``reflect`` for one-shot computations, ``verify`` for relation
and consistency sweeps, ``braid`` for the reflection-symmetry suites.  All
output is JSON on stdout (reports can also be written with --out).  Exit
status: 0 when nothing failed (skips allowed, reported as warnings), 1 when
any check failed, 2 for configuration errors.

Set HALLFORGE_CACHE_DIR to persist representation enumerations between runs;
entries are content-addressed by quiver hash, q and mode.  ``verify --jobs N``
fans independent relation checks out to worker processes (fork start method);
each worker holds its own caches, and report order is input order regardless
of completion order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import ConfigError, HallforgeError, ResourceLimitError
from .fqlinalg import Mat
from .qalg import Charge, QuantumContext, verify_relation, bb_relation_items, qgkm_relation_items
from .quivers import Quiver, cartan_from_quiver, is_sink, is_source, standard_quiver
from .repfq import FULL, NILPOTENT, RepCategory
from .reflect import ReflectionContext
from .scalars import Scalar
from .sdh import HallAlgebra, NormalBasisElt, SDHElem
from .suites import (
    bb_relations_suite,
    braid_suite,
    building_block_suite,
    cartan_euler_suite,
    euler_pairings_suite,
    inverse_suite,
    k_commutation_suite,
    qcombinatorics_suite,
    qgkm_relations_suite,
    reduction_suite,
    riedtmann_peng_suite,
    square_suite,
)

VERIFY_SUITES = (
    "bb-relations",
    "qgkm-relations",
    "cartan-euler",
    "riedtmann-peng",
    "euler-pairings",
    "reduction",
    "k-commutation",
    "qcombinatorics",
    "building-block",
)


def load_quiver(path: str) -> Quiver:
    if path.startswith("std:"):
        return standard_quiver(path[4:])
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read quiver file {path}: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(f"quiver file {path} is not valid JSON: {exc}") from exc
    return Quiver.from_json(data)


def parse_dim(text: str, n: int) -> tuple[int, ...]:
    try:
        dims = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"bad dimension vector {text!r}") from exc
    if len(dims) != n or any(d < 0 for d in dims):
        raise ConfigError(f"dimension vector {text!r} needs {n} nonnegative entries")
    return dims


def parse_charge(text: str | None) -> dict[str, int] | None:
    if text is None:
        return None
    try:
        data = json.loads(text)
        return {str(k): int(v) for k, v in data.items()}
    except (ValueError, AttributeError) as exc:
        raise ConfigError(f"bad charge JSON {text!r}") from exc


def check_q(q: int) -> int:
    if q not in (2, 3, 5):
        raise ConfigError(f"q must be one of 2, 3, 5 (got {q})")
    return q


def make_category(args) -> RepCategory:
    kwargs = {}
    if getattr(args, "max_dim", None) is not None:
        kwargs["max_total_dim"] = args.max_dim
    cache = os.environ.get("HALLFORGE_CACHE_DIR")
    if cache:
        kwargs["cache_dir"] = cache
    return RepCategory(load_quiver(args.quiver), check_q(args.q), args.mode, **kwargs)


def make_hall(args) -> HallAlgebra:
    kwargs = {}
    if getattr(args, "max_dim", None) is not None:
        kwargs["max_total_dim"] = args.max_dim
    hall = HallAlgebra(load_quiver(args.quiver), check_q(args.q), args.mode, **kwargs)
    cache = os.environ.get("HALLFORGE_CACHE_DIR")
    if cache:
        hall.rep.cache_dir = cache
    return hall


def resolve_class(cat: RepCategory, class_id: str):
    parts = class_id.split(":")
    if len(parts) != 3 or parts[0] != cat._qhash:
        raise ConfigError(f"class id {class_id!r} does not match this quiver/config")
    dims = parse_dim(parts[1], cat.quiver.n)
    for cls in cat.enumerate_reps(dims):
        if cls.id == class_id:
            return cls
    raise ConfigError(f"unknown class id {class_id!r}")


def parse_elem(hall: HallAlgebra, text: str) -> SDHElem:
    try:
        rows = json.loads(text)
    except ValueError as exc:
        raise ConfigError(f"element is not valid JSON: {exc}") from exc
    terms = {}
    for row in rows:
        a = resolve_class(hall.rep, row["A"])
        b = resolve_class(hall.rep, row["B"])
        alpha = tuple(int(x) for x in row["alpha"])
        beta = tuple(int(x) for x in row["beta"])
        coeff = Scalar.from_json(row["coeff"])
        terms[NormalBasisElt(a, b, alpha, beta)] = coeff
    return hall.elem(terms)


def parse_cx(hall: HallAlgebra, text: str):
    try:
        data = json.loads(text)
    except ValueError as exc:
        raise ConfigError(f"complex is not valid JSON: {exc}") from exc

    def parse_rep(obj):
        dims = tuple(int(x) for x in obj["dims"])
        mats = []
        for k, (s, t) in enumerate(hall.rep.arrow_idx):
            mats.append(Mat.from_rows(hall.q, dims[t], dims[s], obj["mats"][k]))
        return hall.rep._make(dims, mats)

    rep0 = parse_rep(data["M0"])
    rep1 = parse_rep(data["M1"])
    d0 = tuple(
        Mat.from_rows(hall.q, rep1.dims[v], rep0.dims[v], data["d0"][v])
        for v in range(hall.quiver.n)
    )
    d1 = tuple(
        Mat.from_rows(hall.q, rep0.dims[v], rep1.dims[v], data["d1"][v])
        for v in range(hall.quiver.n)
    )
    try:
        return hall.cx.make(rep0, rep1, d0, d1)
    except (ValueError, AssertionError) as exc:
        raise ConfigError(f"not a valid complex: {exc}") from exc


def emit(data, args) -> None:
    text = json.dumps(data, indent=2, sort_keys=False)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_cartan(args) -> int:
    quiver = load_quiver(args.quiver)
    emit({"a": [list(row) for row in cartan_from_quiver(quiver).matrix]}, args)
    return 0


def cmd_enum(args) -> int:
    cat = make_category(args)
    dims = parse_dim(args.dim, cat.quiver.n)
    rows = [
        {
            "id": cls.id,
            "dim": list(cls.dimvec),
            "aut": cls.aut_size,
            "mats": [list(map(list, m.rows)) for m in cls.rep.mats],
        }
        for cls in cat.enumerate_reps(dims)
    ]
    emit(rows, args)
    return 0


def cmd_hall(args) -> int:
    cat = make_category(args)
    dx = parse_dim(args.dim_x, cat.quiver.n)
    dz = parse_dim(args.dim_z, cat.quiver.n)
    rows = []
    for x in cat.enumerate_reps(dx):
        for z in cat.enumerate_reps(dz):
            for coeff, y in cat.hall_product_classes(x, z):
                rows.append(
                    {
                        "x": x.id,
                        "z": z.id,
                        "y": y.id,
                        "hall_number": cat.hall_number(x, z, y),
                        "ext_over_hom": f"{coeff.numerator}/{coeff.denominator}",
                    }
                )
    emit(rows, args)
    return 0


def cmd_mul(args) -> int:
    hall = make_hall(args)
    x = parse_elem(hall, args.elem1)
    y = parse_elem(hall, args.elem2)
    emit(hall.mul(x, y).to_json(), args)
    return 0


def cmd_reduce(args) -> int:
    hall = make_hall(args)
    cx = parse_cx(hall, args.cx)
    emit(hall.reduce(cx).to_json(), args)
    return 0


def cmd_reflect(args) -> int:
    hall = make_hall(args)
    quiver = hall.quiver
    if is_sink(quiver, args.vertex):
        direction = "sink"
    elif is_source(quiver, args.vertex):
        direction = "source"
    else:
        raise ConfigError(f"vertex {args.vertex} is neither a sink nor a source")
    ctx = QuantumContext(quiver, hall.q, mode=hall.mode, hall=hall)
    rctx = ReflectionContext(ctx, args.vertex, direction)
    elem = parse_elem(hall, args.elem)
    emit(rctx.gamma(elem).to_json(), args)
    return 0


def _summary(rows: list[dict]) -> dict:
    return {
        "pass": sum(1 for r in rows if r["status"] == "pass"),
        "fail": sum(1 for r in rows if r["status"] == "fail"),
        "skip": sum(1 for r in rows if r["status"] == "skip"),
    }


def _finish_report(rows: list[dict], config: dict, args) -> int:
    report = {"config": config, "summary": _summary(rows), "results": rows}
    emit(report, args)
    if report["summary"]["fail"]:
        return 1
    if report["summary"]["skip"]:
        print(
            f"warning: {report['summary']['skip']} checks skipped on resource bounds",
            file=sys.stderr,
        )
    return 0


# worker-pool plumbing for relation sweeps -----------------------------------

_WORKER_CTX: QuantumContext | None = None


def _init_worker(cfg: dict) -> None:
    global _WORKER_CTX
    quiver = Quiver.from_json(cfg["quiver"])
    charge = None
    if cfg["mode"] == FULL:
        charge = Charge.default(quiver, cfg["q"], cfg.get("charge"))
    kwargs = {}
    if cfg.get("max_dim") is not None:
        kwargs["max_total_dim"] = cfg["max_dim"]
    _WORKER_CTX = QuantumContext(
        quiver, cfg["q"], mode=cfg["mode"], max_level=cfg["max_level"], charge=charge, **kwargs
    )


def _run_item(item) -> dict:
    rel, params = item
    r = verify_relation(_WORKER_CTX, rel, params)
    r["check"] = r.pop("relation")
    return r


def _relation_sweep(cfg: dict, items, jobs: int) -> list[dict]:
    if jobs > 1 and hasattr(os, "fork"):
        import multiprocessing as mp

        with mp.get_context("fork").Pool(jobs, _init_worker, (cfg,)) as pool:
            return pool.map(_run_item, items)
    _init_worker(cfg)
    return [_run_item(it) for it in items]


def cmd_verify(args) -> int:
    quiver = load_quiver(args.quiver)
    q = check_q(args.q)
    config = {
        "suite": args.suite,
        "quiver": quiver.to_json(),
        "q": q,
        "mode": args.mode,
        "max_level": args.max_level,
        "max_degree": args.max_degree,
        "max_dim": args.max_dim,
        "jobs": args.jobs,
    }
    charge = parse_charge(args.charge)
    hall_kwargs = {}
    if args.max_dim is not None:
        hall_kwargs["max_total_dim"] = args.max_dim

    if args.suite == "bb-relations":
        cfg = {
            "quiver": quiver.to_json(),
            "q": q,
            "mode": NILPOTENT,
            "max_level": args.max_level,
            "max_dim": args.max_dim,
        }
        _init_worker(cfg)
        items = bb_relation_items(_WORKER_CTX, args.max_level, args.max_degree)
        rows = _relation_sweep(cfg, items, args.jobs)
    elif args.suite == "qgkm-relations":
        cfg = {
            "quiver": quiver.to_json(),
            "q": q,
            "mode": FULL,
            "max_level": args.max_level,
            "max_dim": args.max_dim,
            "charge": charge,
        }
        _init_worker(cfg)
        items = qgkm_relation_items(_WORKER_CTX, args.max_degree)
        rows = _relation_sweep(cfg, items, args.jobs)
    elif args.suite == "cartan-euler":
        rows = cartan_euler_suite(quiver, q)
    elif args.suite == "riedtmann-peng":
        rows = riedtmann_peng_suite(quiver, q, args.max_dim or 3)
    elif args.suite == "euler-pairings":
        rows = euler_pairings_suite(quiver, q, args.max_dim or 2)
    elif args.suite == "reduction":
        rows = reduction_suite(quiver, q, args.max_dim or 3)
    elif args.suite == "k-commutation":
        rows = k_commutation_suite(quiver, q)
    elif args.suite == "qcombinatorics":
        rows = qcombinatorics_suite()
    elif args.suite == "building-block":
        if not args.vertex:
            raise ConfigError("building-block suite needs --vertex")
        rows = building_block_suite(quiver, args.vertex, q)
    else:
        raise ConfigError(f"unknown suite {args.suite!r}")
    return _finish_report(rows, config, args)


def cmd_braid(args) -> int:
    quiver = load_quiver(args.quiver)
    q = check_q(args.q)
    config = {"suite": args.suite, "quiver": quiver.to_json(), "q": q, "family": args.family}
    if args.suite == "rank2":
        rows = braid_suite(quiver, q, args.family, parse_charge(args.charge))
    elif args.suite == "square":
        if not args.vertex:
            raise ConfigError("square suite needs --vertex (a sink)")
        rows = square_suite(quiver, args.vertex, q)
    elif args.suite == "inverse":
        if not args.vertex:
            raise ConfigError("inverse suite needs --vertex (a sink)")
        rows = inverse_suite(quiver, args.vertex, q)
    else:
        raise ConfigError(f"unknown braid suite {args.suite!r}")
    return _finish_report(rows, config, args)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hallforge",
        description="Exact Hall-algebra computations for quivers with loops over F_q.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mode=True, q=True):
        p.add_argument("--quiver", required=True, help="quiver JSON file (or std:<name>)")
        if q:
            p.add_argument("--q", type=int, required=True, help="field size, prime in {2,3,5}")
        if mode:
            p.add_argument("--mode", choices=(NILPOTENT, FULL), default=NILPOTENT)
        p.add_argument("--max-dim", type=int, default=None, help="total-dimension bound")
        p.add_argument("--out", default=None, help="also write the JSON output to this file")

    p = sub.add_parser("cartan", help="Cartan matrix of a quiver")
    p.add_argument("--quiver", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_cartan)

    p = sub.add_parser("enum", help="isomorphism classes at a dimension vector")
    common(p)
    p.add_argument("--dim", required=True, help="comma-separated dimension vector")
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("hall", help="Hall numbers and product coefficients")
    common(p)
    p.add_argument("--dim-x", required=True)
    p.add_argument("--dim-z", required=True)
    p.set_defaults(func=cmd_hall)

    p = sub.add_parser("mul", help="product of two normal-form elements")
    common(p)
    p.add_argument("--elem1", required=True, help="element JSON")
    p.add_argument("--elem2", required=True, help="element JSON")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("reduce", help="normal form of a complex class")
    common(p)
    p.add_argument("--cx", required=True, help="complex JSON")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("reflect", help="reflection image of an element")
    common(p)
    p.add_argument("--vertex", required=True)
    p.add_argument("--elem", required=True)
    p.set_defaults(func=cmd_reflect)

    p = sub.add_parser("verify", help="run a verification suite")
    common(p)
    p.add_argument("--suite", required=True, choices=VERIFY_SUITES)
    p.add_argument("--max-level", type=int, default=2)
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--charge", default=None, help='multiplicities JSON, e.g. {"1": 2}')
    p.add_argument("--vertex", default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("braid", help="reflection-symmetry suites")
    common(p)
    p.add_argument("--suite", required=True, choices=("rank2", "square", "inverse"))
    p.add_argument("--vertex", default=None)
    p.add_argument("--family", choices=("bb", "qgkm"), default="qgkm")
    p.add_argument("--charge", default=None)
    p.set_defaults(func=cmd_braid)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(json.dumps({"error": "config", "message": str(exc)}), file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(json.dumps({"error": "resource", "message": str(exc)}), file=sys.stderr)
        return 2
    except HallforgeError as exc:
        print(json.dumps({"error": "internal", "message": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
