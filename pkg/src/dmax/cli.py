"""Command-line front end: ``dmax <subcommand> [flags]``.

Exit codes: 0 success (or Maximal), 2 Extendable (verify only), 1 usage or
I/O error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from . import analysis, canon, constructions, maximality, rounding, setfile
from .words import PointSet, ball_decomposition, diameter, shell

EXIT_OK, EXIT_USAGE, EXIT_EXTENDABLE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(word) -> str:
    return " ".join(map(str, word))


def _load(args) -> tuple[PointSet, Optional[int]]:
    if not args.file:
        raise UsageError("--file is required")
    try:
        return setfile.read(args.file)
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from exc


def _diam(args, S, declared) -> int:
    if args.d is not None:
        return args.d
    if declared is not None:
        return declared
    return diameter(S)


def _base_word(S: PointSet, spec: Optional[str]):
    if spec is None:
        return S.members[0]
    try:
        if "," in spec:
            return S.check_word([int(x) for x in spec.split(",") if x.strip()])
        idx = int(spec)
    except ValueError as exc:
        raise UsageError(f"bad --w {spec!r}: {exc}") from exc
    if not 0 <= idx < len(S):
        raise UsageError(f"--w index {idx} out of range for {len(S)} members")
    return S.members[idx]


def _emit(out, S: PointSet, d: Optional[int] = None):
    if out:
        setfile.write(out, S, d)
        print(f"wrote {out}")
    else:
        sys.stdout.write(setfile.serialize(S, d))


def cmd_construct(args) -> int:
    family = {"even": "binary_even", "odd": "binary_odd"}.get(args.family, args.family)
    if family == "binary":
        family = "binary_even" if args.d % 2 == 0 else "binary_odd"
    n = 2 if family != "cube" else args.n
    try:
        spec = constructions.ConstructionSpec(family, n, args.d)
        S = spec.build()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(f"# family={family} n={S.n} d={args.d} r={S.r} size={len(S)} diameter={diameter(S)}")
    _emit(args.out, S, args.d)
    return EXIT_OK


def cmd_verify(args) -> int:
    S, declared = _load(args)
    d = _diam(args, S, declared)
    fn = maximality.verdict_infinite if args.mode == "infinite" else maximality.verdict_finite
    try:
        v = fn(S, d, workers=args.threads)
    except maximality.DiameterMismatch as exc:
        raise UsageError(str(exc)) from exc
    print(f"mode={args.mode} n={S.n} r={S.r} size={len(S)} d={d}")
    print(v.status.value)
    print(f"nodes_explored {v.nodes_explored}")
    if v.maximal:
        return EXIT_OK
    print(f"witness {_fmt(v.witness)}")
    print(f"witness_kind {v.witness_kind.value}")
    if v.witness_kind is maximality.WitnessKind.NEEDS_NEW_COORDINATE:
        print(f"extension {_fmt(v.extension())}")
    return EXIT_EXTENDABLE


def cmd_complete(args) -> int:
    S, declared = _load(args)
    d = _diam(args, S, declared)
    budget = args.r_budget if args.r_budget is not None else S.r + d
    try:
        T = maximality.complete(S, d, budget, workers=args.threads)
    except maximality.BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        print(f"# partial size={len(exc.partial)} r={exc.partial.r}")
        return EXIT_USAGE
    except maximality.DiameterMismatch as exc:
        raise UsageError(str(exc)) from exc
    print(f"# completed: size {len(S)} -> {len(T)}, r {S.r} -> {T.r}, diameter {diameter(T)}")
    _emit(args.out, T, d)
    return EXIT_OK


def cmd_canon(args) -> int:
    S, declared = _load(args)
    form, iso = canon.canonicalize(S)
    print(f"# canonical form: size={len(form)} support={form.r}")
    print(f"# coordinate_permutation {_fmt(i + 1 for i in iso.coordinate_permutation)}")
    for i, p in enumerate(iso.symbol_permutations):
        print(f"# symbols@{i + 1} {_fmt(p)}")
    _emit(args.out, form, declared)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    try:
        types = canon.enumerate_types(args.n, args.d, args.max_r, args.max_size)
    except canon.EnumerationBudgetExceeded as exc:
        raise UsageError(str(exc)) from exc
    print(f"# n={args.n} d={args.d} max_r={args.max_r} max_size={args.max_size} types={len(types)}")
    if args.out:
        os.makedirs(args.out, exist_ok=True)
    for idx, T in enumerate(types):
        if args.out:
            setfile.write(os.path.join(args.out, f"type_{idx:03d}.dmax"), T, args.d)
        print(f"## type {idx} size={len(T)} support={T.r}")
        sys.stdout.write(setfile.serialize(T, args.d))
    return EXIT_OK


def cmd_stats(args) -> int:
    S, declared = _load(args)
    d = _diam(args, S, declared)
    w = _base_word(S, args.w)
    print(f"n={S.n} r={S.r} size={len(S)} d={d} w={_fmt(w)}")
    ks = [args.k] if args.k is not None else range(S.r + 1)
    for k in ks:
        Sk = shell(S, w, k)
        if not len(Sk):
            continue
        prof = analysis.shell_profile(S, w, k, d)
        bound = analysis.shell_bound(S.n, d, k)
        line = (f"k={k} size={len(Sk)} sum_p={prof.total} sum_p2={prof.square_total} "
                f"shell_bound={bound}")
        if S.n == 2:
            bp = analysis.binary_profile(S, w, k, 2 * d)
            line += f" Delta={bp.delta} P_big={bp.p_big} P_small={bp.p_small}"
        print(line)
    decomposition = {ell: len(core) for ell, core in ball_decomposition(S).items()}
    print("core_centers " + " ".join(f"l{ell}={size}" for ell, size in decomposition.items()))
    return EXIT_OK


def cmd_refine(args) -> int:
    S, declared = _load(args)
    d = _diam(args, S, declared)
    w = _base_word(S, args.w)
    if args.k is None:
        raise UsageError("--k is required")
    try:
        steps = analysis.refinement_chain(S, w, args.k, args.L, d)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(f"w={_fmt(w)} k={args.k} L={args.L} d={d} shell_size={len(shell(S, w, args.k))}")
    for m, (t, trace, size) in enumerate(steps):
        i, s = trace.chosen
        tmpl = " ".join("*" if x is None else str(x) for x in t)
        print(f"step {m}: fix coordinate {i + 1} to {s}; ratio {trace.ratio} >= {trace.guaranteed}; "
              f"|alpha|={len(trace.alpha)} |beta|={len(trace.beta)}; template [{tmpl}] keeps {size}")
    return EXIT_OK


def cmd_center(args) -> int:
    S, declared = _load(args)
    d = _diam(args, S, declared)
    cfg = rounding.RoundingConfig(lam=args.lam, retries=args.retries, seed=args.seed,
                                  target_radius=args.target_radius)
    run = rounding.near_center_run(S, d, cfg)
    m = len(S)
    print(f"seed={args.seed} m={m} d={d} target_radius={run.target_radius} "
          f"lambda={cfg.resolved_lambda(m):.6g} retries={cfg.resolved_retries(m)}")
    print(f"floating entries: {run.fractional.floating_count()} -> {run.rounded.floating_count()} "
          f"(rows {run.rounded.floating_rows()}, bound f+m={run.rounded.floating_rows() + m})")
    print(f"azuma_radius={rounding.azuma_radius(m, d, cfg.resolved_lambda(m)):.6g} "
          f"guarantee_applies={rounding.rounding_guarantee_applies(m, d)}")
    if run.center is None:
        print(f"no center found after {run.attempts} attempts")
    else:
        print(f"center {_fmt(run.center)} after {run.attempts} attempts")
    return EXIT_OK


def cmd_sunflower(args) -> int:
    S, declared = _load(args)
    w = _base_word(S, args.w)
    if args.k is None or args.p is None:
        raise UsageError("--k and --p are required")
    X = shell(S, w, args.k)
    try:
        found = analysis.find_word_sunflower(X, w, args.p)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(f"w={_fmt(w)} k={args.k} p={args.p} shell_size={len(X)}")
    if found is None:
        print("no sunflower found")
        return EXIT_OK
    members, stem = found
    print("stem " + " ".join(str(i + 1) for i in stem))
    for a in members:
        print(f"petal {_fmt(a)}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    try:
        table = analysis.bound_table(args.n, args.d, args.L)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(f"n={table.n} d={table.d} L={table.L} C={table.sunflower_constant_C}")
    for name, value in table.entries.items():
        print(f"{name} {value}")
    return EXIT_OK


def cmd_kleitman(args) -> int:
    ds = [args.d] if args.d is not None else range(args.n)
    for d in ds:
        try:
            size = analysis.kleitman_oracle(args.n, d)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        print(f"n_dim={args.n} d={d} max_size={size} formula={analysis.kleitman_formula(args.n, d)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dmax", description="Construct, verify and analyze d-maximal sets.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, *flags):
        sp = sub.add_parser(name)
        sp.set_defaults(fn=fn)
        sp.add_argument("--threads", type=int, default=1)
        for flag in flags:
            {
                "file": lambda: sp.add_argument("--file"),
                "out": lambda: sp.add_argument("--out"),
                "n": lambda: sp.add_argument("--n", type=int, default=2),
                "d": lambda: sp.add_argument("--d", type=int),
                "w": lambda: sp.add_argument("--w"),
                "k": lambda: sp.add_argument("--k", type=int),
                "L": lambda: sp.add_argument("--L", type=int, default=0),
                "p": lambda: sp.add_argument("--p", type=int),
            }[flag]()
        return sp

    sp = add("construct", cmd_construct, "out", "n")
    sp.add_argument("--family", required=True,
                    choices=["cube", "even", "odd", "binary", "binary_even", "binary_odd", "hadamard"])
    sp.add_argument("--d", type=int, required=True)
    sp = add("verify", cmd_verify, "file", "d")
    sp.add_argument("--mode", choices=["finite", "infinite"], default="infinite")
    sp = add("complete", cmd_complete, "file", "d", "out")
    sp.add_argument("--r-budget", type=int)
    add("canon", cmd_canon, "file", "out")
    sp = add("enumerate", cmd_enumerate, "n", "out")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--max-r", type=int, required=True)
    sp.add_argument("--max-size", type=int)
    add("stats", cmd_stats, "file", "d", "w", "k")
    add("refine", cmd_refine, "file", "d", "w", "k", "L")
    sp = add("center", cmd_center, "file", "d")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--retries", type=int)
    sp.add_argument("--lambda", dest="lam", type=float)
    sp.add_argument("--target-radius", type=int)
    add("sunflower", cmd_sunflower, "file", "w", "k", "p")
    sp = add("bounds", cmd_bounds, "n", "L")
    sp.add_argument("--d", type=int, required=True)
    sp = add("kleitman", cmd_kleitman, "d")
    sp.add_argument("--n", type=int, required=True)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "fn", None):
            raise UsageError("missing subcommand")
        if getattr(args, "seed", 0) is not None and not 0 <= getattr(args, "seed", 0) < 2**64:
            raise UsageError("--seed must be a 64-bit unsigned integer")
        return args.fn(args)
    except UsageError as exc:
        print(f"dmax: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except setfile.SetFileError as exc:
        print(f"dmax: malformed set file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"dmax: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
