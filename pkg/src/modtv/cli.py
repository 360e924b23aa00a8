"""Command-line front end.

Backends and triangulations can be given as file paths or as the names of
shipped data files (``fib``, ``vec_z2``, ``s3_boundary4simplex`` ...).
Results go to stdout and are deterministic for a fixed seed; timing goes to
stderr.  Errors are printed to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import builtins as shipped
from .catdata import check_chromatic, load_backend, validate_b
from .decor import (
    genus2_one_vertex,
    genus2_two_vertex,
    load_surface,
    random_rep,
    torus_one_vertex,
    torus_two_vertex,
    torus_with_vertices,
)
from .equivalence import (
    Decoration,
    evaluate_word,
    load_word,
    normal_form,
    normal_form_to_json,
    random_subset,
    random_word,
)
from .errors import InvariantViolation, ModTVError, SchemaError
from .gcore import cyclic_group, load_group, symmetric_group
from .graphval import check_cancellation_12, check_cancellation_23, check_even_permutation
from .skein import dual_graph_rep, intersect_path
from .statesum import Stats, default_jobs, fuzz_invariance, tv_invariant
from .tricomplex import load_h_triangulation


def _resolve(arg: str) -> Path:
    p = Path(arg)
    if p.exists():
        return p
    q = shipped.backend_path(arg)
    if q.exists():
        return q
    raise SchemaError(f"no such file or shipped data: {arg}", {"argument": arg})


def _read(arg: str):
    path = _resolve(arg)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}", {"path": str(path)}) from None


def _backend(arg: str):
    return load_backend(_read(arg), name=Path(arg).stem)


def _scalar_out(x) -> dict:
    z = x.to_complex()
    return {"exact": x.to_json(), "text": str(x), "field": x.field.n,
            "approx": [round(z.real, 12), round(z.imag, 12)]}


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _preflight(backend) -> None:
    """Refuse to sum over data whose basic identities already fail."""
    for name, res in (("check_cancellation_23", check_cancellation_23(backend)),
                      ("check_even_permutation", check_even_permutation(backend))):
        if not res.ok:
            raise InvariantViolation(f"{name} fails: {res.detail}", {"check": name, "witness": res.witness})
    backend._cache["even_ok"] = True


def cmd_tv(args) -> int:
    B = _backend(args.backend)
    _preflight(B)
    h = load_h_triangulation(_read(args.triangulation), B.group, B)
    stats = Stats()
    t0 = time.perf_counter()
    val = tv_invariant(h, B, method=args.method, stats=stats, jobs=args.jobs)
    wall = time.perf_counter() - t0
    payload = {"backend": B.name, "triangulation": Path(args.triangulation).stem, "value": _scalar_out(val),
               "tets": h.complex.n_tets, "states": stats.states, "tet_lookups": stats.tet_lookups,
               "cache_hits": stats.cache_hits, "method": args.method}
    _emit(args, payload, [
        str(val),
        f"# backend={B.name} tets={h.complex.n_tets} method={args.method}",
        f"# states={stats.states} tet_lookups={stats.tet_lookups} cache_hits={stats.cache_hits}",
        f"# approx={payload['value']['approx'][0]}",
    ])
    print(f"wall time {wall:.3f}s", file=sys.stderr)
    return 0


def cmd_fuzz(args) -> int:
    B = _backend(args.backend)
    h = load_h_triangulation(_read(args.triangulation), B.group, B)
    t0 = time.perf_counter()
    rep = fuzz_invariance(h, B, args.moves, seed=args.seed, method=args.method)
    wall = time.perf_counter() - t0
    lines = [f"baseline {rep.baseline}"]
    for i, entry in enumerate(rep.log):
        lines.append(f"{i:4d} {entry['move']:>5} tets={entry['tets']} value={entry['value']}")
    if rep.ok:
        lines.append(f"PASS {len(rep.log)} moves ({rep.rejected} rejected), kinds={sorted(map(str, rep.kinds()))}")
    else:
        lines.append(f"FAIL at move {rep.first_bad}")
    _emit(args, rep.as_dict(), lines)
    print(f"wall time {wall:.3f}s", file=sys.stderr)
    return 0 if rep.ok else 1


def validation_report(B) -> list[dict]:
    """Run every identity check on a backend; one entry per check and degree."""
    out = []

    def add(name, res, degree=None):
        row = {"check": name, "ok": res.ok, "message": res.detail, "witness": res.witness}
        if degree is not None:
            row["degree"] = B.group.name(degree)
        out.append(row)

    add("validate_b", validate_b(B))
    for g in B.group.elements:
        if g not in B.badset:
            add("check_chromatic", check_chromatic(B, g), g)
    add("check_even_permutation", check_even_permutation(B))
    for g in B.group.elements:
        if g not in B.badset:
            add("check_cancellation_12", check_cancellation_12(B, g), g)
    add("check_cancellation_23", check_cancellation_23(B))
    return out


def cmd_validate(args) -> int:
    B = _backend(args.backend)
    rows = validation_report(B)
    ok = all(r["ok"] for r in rows)
    lines = []
    for r in rows:
        tag = r["check"] + (f"[{r['degree']}]" if "degree" in r else "")
        line = f"{'pass' if r['ok'] else 'FAIL'} {tag}"
        if not r["ok"]:
            line += f"  {r['message']}  witness={json.dumps(r['witness'], sort_keys=True, default=str)}"
        lines.append(line)
    _emit(args, {"backend": B.name, "ok": ok, "checks": rows}, lines)
    return 0 if ok else 1


_SURFACES = {
    "torus_one_vertex": torus_one_vertex,
    "torus_two_vertex": torus_two_vertex,
    "genus2_one_vertex": genus2_one_vertex,
    "genus2_two_vertex": genus2_two_vertex,
}


def _surface(doc):
    if isinstance(doc, str):
        if doc in _SURFACES:
            return _SURFACES[doc]()
        if doc.startswith("torus_with_vertices:"):
            return torus_with_vertices(int(doc.split(":", 1)[1]))
        raise SchemaError(f"unknown surface {doc!r}", doc)
    return load_surface(doc)


def cmd_normal_form(args) -> int:
    doc = _read(args.word)
    if not isinstance(doc, dict) or "group" not in doc or "surface" not in doc:
        raise SchemaError("word file needs 'group' and 'surface'", None)
    G = load_group(doc["group"])
    tri = _surface(doc["surface"])
    w = load_word(doc, tri, G)
    nf = normal_form(w)
    direct = evaluate_word(w)
    agree = nf.target.same(direct)
    out = normal_form_to_json(nf)
    payload = {"normal_form": out, "length": len(w.generators), "agrees": bool(agree)}
    _emit(args, payload, [
        f"gauge {json.dumps(out['gauge'], sort_keys=True)}",
        f"restrict {out['restrict_from']} -> {out['restrict_to']}",
        f"labels {json.dumps(out['labels'], sort_keys=True)}",
        f"agrees with direct evaluation: {bool(agree)}",
    ])
    return 0 if agree else 3


def rep_check(seed: int, words: int, bijections: int) -> dict:
    """Random normal-form and intersection-pairing checks; returns counts of failures."""
    rng = random.Random(seed)
    groups = [cyclic_group(6), symmetric_group(3)]
    torus = torus_with_vertices(3)
    bad_nf = 0
    for i in range(words):
        G = groups[i % 2]
        rho = random_rep(torus, G, rng)
        w = random_word(Decoration(random_subset(rng, torus.vertices), rho), rng.randint(1, 8), rng)
        nf = normal_form(w)
        if not nf.target.same(evaluate_word(w)):
            bad_nf += 1
    surfaces = [torus_one_vertex(), torus_two_vertex(), genus2_one_vertex(), genus2_two_vertex()]
    groups = [cyclic_group(5), symmetric_group(3)]
    bad_bij = 0
    for i in range(bijections):
        tri = surfaces[i % len(surfaces)]
        G = groups[(i // len(surfaces)) % 2]
        rho = random_rep(tri, G, rng)
        t = dual_graph_rep(rho)
        if any(intersect_path([(k, 1)], t) != g for k, g in enumerate(rho.labels)):
            bad_bij += 1
    return {"seed": seed, "words": words, "normal_form_failures": bad_nf,
            "bijections": bijections, "bijection_failures": bad_bij}


def cmd_rep_check(args) -> int:
    res = rep_check(args.seed, args.words, args.bijections)
    ok = res["normal_form_failures"] == 0 and res["bijection_failures"] == 0
    res["ok"] = ok
    _emit(args, res, [
        f"normal forms: {res['words'] - res['normal_form_failures']}/{res['words']} agree",
        f"intersection pairing: {res['bijections'] - res['bijection_failures']}/{res['bijections']} reproduce rho",
        "PASS" if ok else "FAIL",
    ])
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modtv", description="Modified Turaev-Viro state sums of G-decorated 3-manifolds")
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = common(sub.add_parser("tv", help="evaluate the invariant"))
    sp.add_argument("backend")
    sp.add_argument("triangulation")
    sp.add_argument("--method", choices=["eliminate", "states"], default="eliminate")
    sp.add_argument("--jobs", type=int, default=None, help="worker processes for --method states")
    sp.set_defaults(func=cmd_tv)

    sp = common(sub.add_parser("fuzz", help="random Pachner and gauge moves"))
    sp.add_argument("backend")
    sp.add_argument("triangulation")
    sp.add_argument("--moves", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--method", choices=["eliminate", "states"], default="eliminate")
    sp.set_defaults(func=cmd_fuzz)

    sp = common(sub.add_parser("validate", help="check the backend identities"))
    sp.add_argument("backend")
    sp.set_defaults(func=cmd_validate)

    sp = common(sub.add_parser("normal-form", help="normal form of an equivalence word"))
    sp.add_argument("word")
    sp.set_defaults(func=cmd_normal_form)

    sp = common(sub.add_parser("rep-check", help="random groupoid checks"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--words", type=int, default=1000)
    sp.add_argument("--bijections", type=int, default=200)
    sp.set_defaults(func=cmd_rep_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) is None:
        args.jobs = default_jobs()
    try:
        return args.func(args)
    except ModTVError as exc:
        print(json.dumps(exc.to_dict(), sort_keys=True), file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
