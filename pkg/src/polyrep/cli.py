"""Command-line front end.

Machine-readable output (records, rankvec / arr files) goes to stdout or
``--out``; human summaries go to stderr.  Exit status: 0 success, 1 a check
came out false, 2 bad input, 3 size limit exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import constructs, cone, inequality, lattice, matroid, represent
from .errors import InputError, PreconditionError, SizeLimitError, UndefinedRatioError, UnsupportedError
from .gf import field_make, parse_field
from .verify import all_passed, verify_paper

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_SIZE = 0, 1, 2, 3


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _field(text: str):
    try:
        return parse_field(text)
    except (InputError, SizeLimitError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _masks(text: str) -> list:
    try:
        return [int(t, 16) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated hex masks, got {text!r}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _record(rec: dict) -> None:
    print(json.dumps(rec))


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


# -- commands -----------------------------------------------------------------

def cmd_construct(a) -> int:
    if a.name in ("fano", "x2"):
        arr = constructs.fano_x1(a.field or field_make(2)) if a.name == "fano" else constructs.dfz_x2(a.field or field_make(3))
        if a.format == "rankvec":
            _emit(lattice.format_rankvec(represent.rank_vector(arr)), a.out)
        else:
            _emit(represent.format_arrangement(arr), a.out)
        _note(f"{a.name}: {arr.n} subspaces of {arr.field}^{arr.ambient_dim}")
        return EXIT_OK
    if a.format == "arr":
        raise InputError(f"{a.name} is only available as a rank vector")
    if a.name == "phi":
        h = constructs.phi(a.field_x1, a.field_x2)
    else:
        if a.epsilon is None:
            raise InputError("phi-eps needs --epsilon")
        h = constructs.phi_eps(a.epsilon, a.field_x1, a.field_x2)
    _emit(lattice.format_rankvec(h), a.out)
    _note(f"{a.name}: 20 elements, full rank {h.full}")
    return EXIT_OK


def cmd_rank(a) -> int:
    if a.arr:
        h = represent.rank_vector(represent.read_arrangement(a.arr))
    elif a.h:
        h = lattice.read_rankvec(a.h)
    else:
        raise InputError("rank needs --arr or --h")
    if a.mask is None:
        _emit(lattice.format_rankvec(h), a.out)
    else:
        _record({"mask": format(a.mask, "x"), "rank": str(lattice.rank(h, a.mask))})
    return EXIT_OK


def cmd_check_polymatroid(a) -> int:
    h = lattice.read_rankvec(a.h)
    chk = inequality.is_polymatroid(h, "full" if a.full else "elemental")
    _record({"polymatroid": chk.ok, "axiom": chk.axiom, "witness": [format(w, "x") for w in chk.witness]})
    return EXIT_OK if chk else EXIT_FAIL


def cmd_check_matroid(a) -> int:
    ok = matroid.is_matroid(lattice.read_rankvec(a.h))
    _record({"matroid": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_circuits(a) -> int:
    h = lattice.read_rankvec(a.h)
    cs = matroid.circuits(h)
    _emit("".join(f"{c:x}\n" for c in sorted(cs)), a.out)
    _note(f"{len(cs)} circuits")
    return EXIT_OK


def cmd_connected(a) -> int:
    ok = matroid.is_connected(lattice.read_rankvec(a.h))
    _record({"connected": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_ingleton(a) -> int:
    h = lattice.read_rankvec(a.h)
    rep = inequality.ingleton_scan(h, a.mode, trials=a.trials, seed=a.seed, threads=a.threads)
    _record(rep.record())
    _note(f"Ingleton {rep.mode}: min J = {rep.min_score} over {rep.quadruples_checked} quadruples")
    return EXIT_OK if rep.min_score >= 0 else EXIT_FAIL


def cmd_perturb(a) -> int:
    g = constructs.epsilon_perturb(lattice.read_rankvec(a.h), a.epsilon)
    _emit(lattice.format_rankvec(g), a.out)
    return EXIT_OK


def cmd_int_perturb(a) -> int:
    arr = represent.integer_perturb(represent.read_arrangement(a.arr), a.k)
    _emit(represent.format_arrangement(arr), a.out)
    _note(f"perturbed by k={a.k} over {arr.field}")
    return EXIT_OK


def cmd_direct_sum(a) -> int:
    h = constructs.direct_sum(lattice.read_rankvec(a.h1), lattice.read_rankvec(a.h2))
    _emit(lattice.format_rankvec(h), a.out)
    return EXIT_OK


def cmd_induce(a) -> int:
    h = lattice.induce(lattice.read_rankvec(a.h), a.subsets)
    _emit(lattice.format_rankvec(h), a.out)
    return EXIT_OK


def cmd_equalities(a) -> int:
    if a.which == "x1":
        preds, labels = constructs.equalities_x1(), constructs.X1_LABELS
    else:
        preds, labels = constructs.equalities_x2(), constructs.X2_LABELS
    h = lattice.read_rankvec(a.h, labels)
    results = constructs.evaluate_equalities(preds, h)
    for p, ok in results:
        _record({"equality": str(p), "holds": ok, "residual": str(p.residual(h))})
    failed = sum(not ok for _, ok in results)
    _note(f"{len(results) - failed}/{len(results)} equalities hold")
    return EXIT_OK if not failed else EXIT_FAIL


def cmd_dfz_ratio(a) -> int:
    h = lattice.read_rankvec(a.h)
    if a.preset == "x1":
        num, den = [1 << i for i in range(3)], [1 << i for i in range(3, 7)]
    elif a.preset == "x2":
        num, den = [1 << i for i in range(5)], [1 << i for i in range(5, 13)]
    else:
        num, den = a.num, a.den
        if not num or not den:
            raise InputError("dfz-ratio needs --preset or both --num and --den")
    _record({"ratio": str(inequality.dfz_ratio(h, num, den))})
    return EXIT_OK


def cmd_enum_gens(a) -> int:
    fields = a.field or [field_make(2)]
    dims = a.max_dim or [4]
    if len(dims) == 1 and len(fields) > 1:
        dims = dims * len(fields)
    if len(dims) != len(fields):
        raise InputError("give one --max-dim per --field (or a single one for all)")
    G = None
    for fld, d in zip(fields, dims):
        part = cone.enumerate_generators(a.n, fld, d)
        _note(f"{fld} d={d}: {part.tuples_enumerated} tuples, {len(part)} distinct rank vectors")
        G = part if G is None else G.merge(part)
    out = Path(a.out)
    out.mkdir(parents=True, exist_ok=True)
    for j, g in enumerate(G.generators):
        (out / f"gen_{j:05d}.rankvec").write_text(lattice.format_rankvec(g))
    _record({"generators": len(G), "tuples": G.tuples_enumerated, "out": str(out)})
    return EXIT_OK


def cmd_cone_member(a) -> int:
    h = lattice.read_rankvec(a.h)
    files = sorted(Path(a.gens).glob("*.rankvec"))
    if not files:
        raise InputError(f"no .rankvec files in {a.gens}")
    names, vectors = {}, []
    for f in files:
        g = lattice.read_rankvec(f)
        if g not in names:
            names[g] = f.name
            vectors.append(g)
    G = cone.GeneratorSet.from_vectors(vectors)
    cert = cone.cone_member(h, G)
    rec = cert.record()
    if cert.is_member:
        rec["coefficients"] = {names[G.generators[int(j)]]: c for j, c in rec["coefficients"].items()}
    _record(rec)
    if not cert.is_member:
        _note("non-member of the cone spanned by these generators only; "
              "this says nothing about the full closed convex cone unless the generator set is complete")
    return EXIT_OK


def cmd_verify_paper(a) -> int:
    items = verify_paper(a.field_x1, a.field_x2, a.epsilon, trials=a.trials, seed=a.seed)
    for it in items:
        _record(it.record())
    bad = [it.name for it in items if not it.passed]
    _note(f"{len(items) - len(bad)}/{len(items)} items pass" + (f"; failed: {', '.join(bad)}" if bad else ""))
    return EXIT_OK if all_passed(items) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polyrep", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a named arrangement or rank vector")
    p.add_argument("name", choices=["fano", "x2", "phi", "phi-eps"])
    p.add_argument("--field", type=_field, help="field for fano / x2, e.g. GF(2) or GF(3^2)")
    p.add_argument("--field-x1", type=_field, default=None)
    p.add_argument("--field-x2", type=_field, default=None)
    p.add_argument("--epsilon", type=_fraction)
    p.add_argument("--format", choices=["arr", "rankvec"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("rank", help="rank vector of an arrangement, or one rank value")
    p.add_argument("--arr")
    p.add_argument("--h")
    p.add_argument("--mask", type=lambda s: int(s, 16))
    p.add_argument("--out")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("check-polymatroid")
    p.add_argument("--h", required=True)
    p.add_argument("--full", action="store_true", help="literal check over all subset pairs")
    p.set_defaults(func=cmd_check_polymatroid)

    for name, fn in (("check-matroid", cmd_check_matroid), ("connected", cmd_connected)):
        p = sub.add_parser(name)
        p.add_argument("--h", required=True)
        p.set_defaults(func=fn)

    p = sub.add_parser("circuits")
    p.add_argument("--h", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_circuits)

    p = sub.add_parser("ingleton")
    p.add_argument("--h", required=True)
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_ingleton)

    p = sub.add_parser("perturb")
    p.add_argument("--h", required=True)
    p.add_argument("--epsilon", type=_fraction, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("int-perturb")
    p.add_argument("--arr", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_int_perturb)

    p = sub.add_parser("direct-sum")
    p.add_argument("--h1", required=True)
    p.add_argument("--h2", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_direct_sum)

    p = sub.add_parser("induce")
    p.add_argument("--h", required=True)
    p.add_argument("--subsets", type=_masks, required=True, help="comma-separated hex masks")
    p.add_argument("--out")
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("equalities")
    p.add_argument("which", choices=["x1", "x2"])
    p.add_argument("--h", required=True)
    p.set_defaults(func=cmd_equalities)

    p = sub.add_parser("dfz-ratio")
    p.add_argument("--h", required=True)
    p.add_argument("--preset", choices=["x1", "x2"])
    p.add_argument("--num", type=_masks)
    p.add_argument("--den", type=_masks)
    p.set_defaults(func=cmd_dfz_ratio)

    p = sub.add_parser("enum-gens")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", type=_field, action="append")
    p.add_argument("--max-dim", type=int, action="append")
    p.add_argument("--out", required=True, help="directory for generator rankvec files")
    p.set_defaults(func=cmd_enum_gens)

    p = sub.add_parser("cone-member")
    p.add_argument("--h", required=True)
    p.add_argument("--gens", required=True, help="directory of rankvec files")
    p.set_defaults(func=cmd_cone_member)

    p = sub.add_parser("verify-paper", help="check every computational premise of the construction")
    p.add_argument("--field-x1", type=_field, default=None)
    p.add_argument("--field-x2", type=_field, default=None)
    p.add_argument("--epsilon", type=_fraction, default=Fraction(1))
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(func=cmd_verify_paper)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except SizeLimitError as exc:
        _note(f"size limit: {exc}")
        return EXIT_SIZE
    except (InputError, PreconditionError, UndefinedRatioError, UnsupportedError, OSError) as exc:
        _note(f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
