"""Command-line frontend.

Every subcommand prints one JSON document on stdout.  Exit codes: 0 success
or positive verdict, 1 negative verdict, 2 infinite families, 3 undecided,
64 usage error, 65 malformed input, 70 irrational spectrum.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalogue import (
    ClassDescriptor,
    Convertible,
    InfiniteFamilies,
    LocalMap,
    Obstructed,
    UnboundedModuli,
    classify,
    convertibility,
    enumerate_classes,
    hierarchy,
    tensor_rank_of_invariants,
)
from .errors import DimensionMismatch, IrrationalSpectrum
from .invariants import KroneckerInvariants, kronecker_invariants
from .kronecker import reduce_to_canonical
from .matrix import Matrix
from .scalar import format_scalar, parse_scalar
from .slocc import (
    SloccWitness,
    State,
    apply_slocc,
    local_ranks,
    regularizing_lft,
    slocc_equivalent,
    state_to_pencil,
    witness_maps,
)

EXIT_OK, EXIT_NO, EXIT_INFINITE, EXIT_UNDECIDED = 0, 1, 2, 3
EXIT_USAGE, EXIT_DATA, EXIT_SOFTWARE = 64, 65, 70


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# serialization


def _mat(M: Matrix) -> list[list[str]]:
    return [[format_scalar(x) for x in M.row(i)] for i in range(M.rows)]


def _inv(inv: KroneckerInvariants) -> dict:
    return {
        "normal_rank": inv.normal_rank,
        "right_minimal_indices": list(inv.right),
        "left_minimal_indices": list(inv.left),
        "finite_divisors": [{"point": format_scalar(x), "degrees": list(d)} for x, d in inv.finite],
        "infinite_divisor_degrees": list(inv.infinite),
    }


def _witness(w) -> dict:
    return {"A": _mat(w.A), "B": _mat(w.B), "C": _mat(w.C)}


def _descriptor(d: ClassDescriptor) -> dict:
    return {
        "dims": [2, d.m, d.n],
        "label": d.label,
        "aliases": list(d.aliases),
        "local_ranks": list(d.local_ranks),
        "tensor_rank": d.tensor_rank,
        "invariants": _inv(d.inv),
    }


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _parse_matrix(rows, what: str) -> Matrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError(f"{what} must be a non-empty nested array")
    out = []
    for r in rows:
        row = []
        for x in r:
            if isinstance(x, bool) or not isinstance(x, (str, int)):
                raise InputError(f"{what}: entries must be scalar strings, got {x!r}")
            try:
                row.append(parse_scalar(str(x)))
            except ValueError as exc:
                raise InputError(f"{what}: {exc}") from None
        out.append(row)
    try:
        return Matrix(out)
    except ValueError as exc:
        raise InputError(f"{what}: {exc}") from None


def load_state(path: str) -> State:
    """Read a state file (``dims`` + ``amplitudes``) or a pencil file (``R`` + ``S``)."""
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be an object")
    if "amplitudes" in doc:
        amps = doc["amplitudes"]
        if not isinstance(amps, list) or len(amps) != 2:
            raise InputError(f"{path}: amplitudes must have first dimension 2")
        R = _parse_matrix(amps[0], "amplitudes[0]")
        S = _parse_matrix(amps[1], "amplitudes[1]")
        dims = doc.get("dims")
        if dims is not None and list(dims) != [2, R.rows, R.cols]:
            raise InputError(f"{path}: dims {dims} do not match amplitude shape")
    elif "R" in doc and "S" in doc:
        R = _parse_matrix(doc["R"], "R")
        S = _parse_matrix(doc["S"], "S")
    else:
        raise InputError(f"{path}: expected 'amplitudes' or 'R' and 'S'")
    try:
        return State(R, S)
    except (ValueError, DimensionMismatch) as exc:
        raise InputError(f"{path}: {exc}") from None


def dump_state(s: State) -> dict:
    return {"dims": list(s.dims), "amplitudes": [_mat(s.R), _mat(s.S)]}


# ---------------------------------------------------------------------------
# subcommands


def cmd_invariants(args) -> int:
    s = load_state(args.file)
    inv = kronecker_invariants(state_to_pencil(s))
    _emit({
        "dims": list(s.dims),
        "invariants": _inv(inv),
        "invariant_polynomials": [str(p) for p in inv.invariant_polynomials()],
        "local_ranks": list(local_ranks(s)),
        "tensor_rank": tensor_rank_of_invariants(inv),
    })
    return EXIT_OK


def cmd_canonical(args) -> int:
    s = load_state(args.file)
    doc = {}
    if args.regularize:
        t = regularizing_lft(kronecker_invariants(state_to_pencil(s)))
        s = apply_slocc(s, SloccWitness.alice(t, s.m, s.n))
        doc["regularizing_lft"] = [format_scalar(x) for x in t.as_tuple()]
    dec = reduce_to_canonical(state_to_pencil(s))
    doc.update({"B": _mat(dec.B), "C": _mat(dec.C), "K": {"R": _mat(dec.K.R), "S": _mat(dec.K.S)},
                "invariants": _inv(dec.inv)})
    _emit(doc)
    return EXIT_OK


def cmd_equiv(args) -> int:
    s1, s2 = load_state(args.a), load_state(args.b)
    if s1.dims != s2.dims:
        raise InputError(f"dimensions differ: {s1.dims} vs {s2.dims}")
    v = slocc_equivalent(s1, s2)
    if not v:
        _emit({"equivalent": False, "reason": v.reason})
        return EXIT_NO
    doc = {"equivalent": True, "witness": _witness(v.witness)}
    if args.verify:
        doc["verified"] = witness_maps(s1, s2, v.witness)
    _emit(doc)
    return EXIT_OK


def cmd_classify(args) -> int:
    _emit(_descriptor(classify(load_state(args.file))))
    return EXIT_OK


def _dims(values) -> tuple[int, int]:
    if values[0] != 2 or values[1] < 1 or values[2] < 1:
        raise UsageError("--dims expects 2 m n with m, n >= 1")
    return values[1], values[2]


def cmd_enumerate(args) -> int:
    m, n = _dims(args.dims)
    cat = enumerate_classes(m, n, full_rank_only=args.full_rank_only)
    if isinstance(cat, InfiniteFamilies):
        _emit({"dims": [2, m, n], "infinite_families": True, "witness_structure": cat.witness})
        return EXIT_INFINITE
    _emit({"dims": [2, m, n], "count": cat.count, "classes": [_descriptor(d) for d in cat.classes]})
    return EXIT_OK


def _compose_local(first: LocalMap, second: LocalMap) -> LocalMap:
    """Apply ``first`` and then ``second``."""
    return LocalMap(first.A @ second.A, second.B @ first.B, second.C @ first.C)


def cmd_convert(args) -> int:
    s1, s2 = load_state(args.a), load_state(args.b)
    d1, d2 = classify(s1), classify(s2)
    doc = {"source": _descriptor(d1), "target": _descriptor(d2)}
    if d1 == d2:
        v = slocc_equivalent(s1, s2)
        doc.update({"verdict": "Convertible", "same_class": True, "witness": _witness(v.witness)})
        if args.verify:
            doc["verified"] = witness_maps(s1, s2, v.witness)
        _emit(doc)
        return EXIT_OK
    v = convertibility(d1, d2, args.budget, args.seed,
                       tensor_rank_obstruction=not args.no_tensor_rank_obstruction)
    if isinstance(v, Obstructed):
        doc.update({"verdict": "Obstructed", "reason": v.reason})
        _emit(doc)
        return EXIT_NO
    if not isinstance(v, Convertible):
        doc.update({"verdict": "Undecided", "samples": v.samples})
        _emit(doc)
        return EXIT_UNDECIDED
    # input -> source representative -> target representative -> target input
    to_rep = slocc_equivalent(s1, d1.representative()).witness
    from_rep = slocc_equivalent(d2.representative(), s2).witness
    total = _compose_local(_compose_local(LocalMap(to_rep.A, to_rep.B, to_rep.C), v.local_map),
                           LocalMap(from_rep.A, from_rep.B, from_rep.C))
    doc.update({
        "verdict": "Convertible",
        "deleted_columns": list(v.deleted_columns),
        "deleted_rows": list(v.deleted_rows),
        "coefficients": [{"kind": k, "kept": a, "deleted": b, "value": format_scalar(c)}
                         for k, a, b, c in v.coefficients],
        "representative_map": _witness(v.local_map),
        "witness": _witness(total),
    })
    if args.verify:
        image = total.apply(s1)
        doc["verified"] = image.proportional_to(s2) is not None and classify(image) == d2
    _emit(doc)
    return EXIT_OK


def cmd_hierarchy(args) -> int:
    m, n = _dims(args.dims)
    h = hierarchy(m, n, args.budget, args.seed, reduce=args.reduce,
                  tensor_rank_obstruction=not args.no_tensor_rank_obstruction)
    if args.dot:
        Path(args.dot).write_text(h.to_dot())
    doc = {
        "dims": [2, m, n],
        "nodes": [_descriptor(d) for d in h.nodes],
        "edges": [{"from": i, "to": j} for i, j, _ in h.edges],
        "undecided": [{"from": i, "to": j} for i, j in h.undecided],
    }
    if args.verify:
        doc["verified"] = all(
            v.local_map.apply(h.nodes[i].representative()).proportional_to(h.nodes[j].representative())
            is not None for i, j, v in h.edges)
    _emit(doc)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kronslocc", description="Kronecker invariants and SLOCC classes of 2 x m x n states.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    q = sub.add_parser("invariants", help="Kronecker invariants, local ranks and tensor rank")
    q.add_argument("file")
    q.set_defaults(func=cmd_invariants)

    q = sub.add_parser("canonical", help="canonical form with its transformation matrices")
    q.add_argument("file")
    q.add_argument("--regularize", action="store_true", help="first move infinite divisors to finite points")
    q.set_defaults(func=cmd_canonical)

    q = sub.add_parser("equiv", help="decide SLOCC equivalence of two states")
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("--verify", action="store_true")
    q.set_defaults(func=cmd_equiv)

    q = sub.add_parser("classify", help="normalized class descriptor")
    q.add_argument("file")
    q.set_defaults(func=cmd_classify)

    q = sub.add_parser("enumerate", help="list all SLOCC classes of 2 x m x n")
    q.add_argument("--dims", nargs=3, type=int, required=True, metavar=("2", "M", "N"))
    q.add_argument("--full-rank-only", action="store_true")
    q.set_defaults(func=cmd_enumerate)

    for name, func, help_ in (("convert", cmd_convert, "search a non-invertible conversion"),
                              ("hierarchy", cmd_hierarchy, "pairwise conversion graph")):
        q = sub.add_parser(name, help=help_)
        if name == "convert":
            q.add_argument("a")
            q.add_argument("b")
        else:
            q.add_argument("--dims", nargs=3, type=int, required=True, metavar=("2", "M", "N"))
            q.add_argument("--dot", help="write the graph in DOT syntax to this path")
            q.add_argument("--reduce", action="store_true", help="drop transitive edges")
        q.add_argument("--budget", type=int, default=10_000)
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--verify", action="store_true")
        q.add_argument("--no-tensor-rank-obstruction", action="store_true")
        q.set_defaults(func=func)
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except IrrationalSpectrum as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOFTWARE
    except UnboundedModuli as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFINITE


def main() -> None:
    sys.exit(run())
