"""Command-line front end.

Subcommands:

* ``compile`` - print routing diagnostics and transition matrices,
  numeric or symbolic.
* ``run``     - iterate the state equation, write a CSV trace plus a
  JSON metadata sidecar, print the final state.
* ``verify``  - run both the recursion and the discrete-event oracle
  and diff the traces.

Exit codes: 0 success, 1 usage error, 2 validation/compilation error,
3 verification mismatch.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import engine, oracle
from .compiler import compile_network, render_symbolic, symbolic_transition
from .errors import (CompilationError, MaxPlusError, ServiceTableError,
                     SpecValidationError)
from .network import (Constant, Exponential, ExplicitSequence, NetworkSpec,
                      Remapped, Uniform, build_closed_tandem,
                      build_open_tandem, build_reference_fork_join,
                      build_round_robin, load_spec, realize_service)
from .semiring import format_scalar

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_MISMATCH = 3

FLOAT_TOL = 1e-9


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parse_tau(text: str, seed: int):
    """Parse --tau values like const:2, seq:1,5,2:wrap, uniform:1,3,
    exp:0.5."""
    kind, _, rest = text.partition(":")
    try:
        if kind == "const":
            value = float(rest)
            return Constant(int(value) if value.is_integer() else value)
        if kind == "seq":
            parts = rest.split(":")
            nums = []
            for tok in parts[0].split(","):
                v = float(tok)
                nums.append(int(v) if v.is_integer() else v)
            policy = parts[1] if len(parts) > 1 else "wrap"
            return ExplicitSequence(tuple(nums), policy)
        if kind == "uniform":
            lo, hi = (float(t) for t in rest.split(","))
            return Uniform(lo, hi, seed)
        if kind == "exp":
            return Exponential(float(rest), seed)
    except (ValueError, IndexError):
        pass
    raise SpecValidationError([f"cannot parse --tau value {text!r}"])


def _parse_preset(name: str, args) -> NetworkSpec:
    base, _, arg = name.partition(":")
    tau = _parse_tau(args.tau, args.seed) if args.tau else None
    if base == "paper-example-1":
        return build_reference_fork_join(tau)
    if base == "open-tandem":
        return build_open_tandem(int(arg), tau)
    if base in ("closed-tandem", "closed-tandem-unit"):
        n = int(arg)
        if base == "closed-tandem-unit":
            r = [1] * n
        elif args.r:
            r = [int(t) for t in args.r.split(",")]
        else:
            r = [1] + [0] * (n - 1)
        return build_closed_tandem(n, r, tau)
    if base == "round-robin":
        l = int(arg)
        return build_round_robin(l, tau, tau)
    raise SpecValidationError([f"unknown preset {name!r}"])


def _load(args) -> NetworkSpec:
    if args.preset:
        return _parse_preset(args.preset, args)
    if args.spec:
        spec = load_spec(args.spec)
        if args.tau:
            tau = _parse_tau(args.tau, args.seed)
            spec = NetworkSpec(name=spec.name, n=spec.n, arcs=spec.arcs,
                               initial_buffer=spec.initial_buffer,
                               service=(tau,) * spec.n)
        return spec
    raise SpecValidationError(["one of --spec or --preset is required"])


def _apply_backend(table, backend: str):
    if backend == "float":
        return table.as_float()
    if not table.is_integral():
        raise SpecValidationError(
            ["--backend int requires integral service times; pass "
             "--backend float"])
    return table


def cmd_compile(args) -> int:
    spec = _load(args)
    ct = compile_network(spec)
    routing = ct.routing
    print(f"network: {spec.name}")
    print(f"n={spec.n}  M={routing.memory_depth}  p={routing.longest_path}")
    for m, g in enumerate(routing.matrices):
        arcs = sorted((i + 1, j + 1) for i, j in g.support())
        print(f"G_{m} support: {arcs if arcs else 'empty'}")
    if args.symbolic:
        mats = symbolic_transition(spec)
        print(render_symbolic(mats))
    else:
        table = _apply_backend(realize_service(spec, args.k), args.backend)
        mats = ct.transition_at(args.k, table)
        for m, t in enumerate(mats, start=1):
            label = f"T_{m}(k={args.k}):" if len(mats) > 1 else \
                f"T(k={args.k}):"
            print(label)
            print(t.pretty())
    return EXIT_OK


def cmd_run(args) -> int:
    spec = _load(args)
    if args.horizon > 0:
        table = _apply_backend(realize_service(spec, args.horizon),
                               args.backend)
    else:
        table = None
    trace = engine.run(spec, args.horizon, table=table, method=args.method)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = spec.name.replace(":", "-")
    csv_path = out / f"{stem}_trace.csv"
    meta_path = out / f"{stem}_meta.json"
    trace.write_csv(csv_path)
    trace.write_metadata(meta_path)
    final = "[" + ", ".join(format_scalar(x)
                            for x in trace.d(args.horizon)) + "]"
    print(f"d({args.horizon}) = {final}")
    print(f"trace: {csv_path}")
    print(f"metadata: {meta_path}")
    if args.verify:
        return _verify(spec, args, trace=trace, table=table)
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = _load(args)
    return _verify(spec, args)


def _verify(spec, args, trace=None, table=None) -> int:
    K = args.horizon
    if K < 1:
        print("nothing to verify at K=0")
        return EXIT_OK
    if table is None:
        table = _apply_backend(realize_service(spec, K), args.backend)
    if trace is None:
        trace = engine.run(spec, K, table=table, method=args.method)
    tol = 0.0 if table.is_integral() else FLOAT_TOL
    reference = oracle.simulate(spec, table, K)
    cmp = engine.compare_traces(trace, reference, tol=tol)
    if not cmp.equal:
        k, i = cmp.first_mismatch
        print(f"MISMATCH vs DES oracle at k={k}, node {i}: "
              f"recursion={format_scalar(trace.d(k)[i - 1])} "
              f"oracle={format_scalar(reference.d(k)[i - 1])} "
              f"(max |diff| = {cmp.max_abs_diff})")
        return EXIT_MISMATCH
    msg = "exact match" if tol == 0.0 else f"match within {tol}"
    print(f"{msg}, K={K}, n={spec.n}")

    if args.preset and args.preset.startswith("round-robin:"):
        # second, independent check against the original routing system
        l = int(args.preset.split(":")[1])
        source = spec.service[l]  # ring node l+1 carries the source stream
        base = source.base if isinstance(source, Remapped) else source
        branches = list(spec.service[:l])
        direct = oracle.simulate_round_routing(l, base, branches, K)
        branch_vectors = [tuple(v[:l]) for v in trace.vectors]
        branch_trace = engine.DepartureTrace(
            spec_name=trace.spec_name, n=l, horizon=K,
            vectors=branch_vectors)
        cmp2 = engine.compare_traces(branch_trace, direct, tol=tol)
        if not cmp2.equal:
            k, i = cmp2.first_mismatch
            print(f"MISMATCH vs round-routing DES at k={k}, branch {i}")
            return EXIT_MISMATCH
        print(f"round-routing equivalence holds on branches 1..{l}")
    return EXIT_OK


def _add_common(p):
    p.add_argument("--spec", help="path to a network spec JSON file")
    p.add_argument("--preset",
                   help="preset name: paper-example-1, open-tandem:N, "
                        "closed-tandem:N, closed-tandem-unit:N, "
                        "round-robin:L")
    p.add_argument("--tau",
                   help="uniform per-node service override, e.g. const:2, "
                        "seq:1,5,2:wrap, uniform:1,3, exp:0.5")
    p.add_argument("--r", help="closed-tandem initial buffers, e.g. 1,0,2")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for stochastic --tau kinds")
    p.add_argument("--backend", choices=("int", "float"), default="int")


def build_parser() -> _Parser:
    parser = _Parser(prog="maxplusnet",
                     description="Max-plus state equations for fork-join "
                                 "queueing networks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="print routing and transition "
                                       "matrices")
    _add_common(p)
    p.add_argument("--symbolic", action="store_true",
                   help="render entries as service-time symbols")
    p.add_argument("-k", type=int, default=1,
                   help="customer index for numeric matrices")
    p.set_defaults(fn=cmd_compile)

    p = sub.add_parser("run", help="iterate the state equation and export "
                                   "the trace")
    _add_common(p)
    p.add_argument("-K", "--horizon", type=int, default=10)
    p.add_argument("--method", choices=engine._METHODS, default="implicit")
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--verify", action="store_true",
                   help="also diff against the DES oracle")
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("verify", help="diff the recursion against the DES "
                                      "oracle")
    _add_common(p)
    p.add_argument("-K", "--horizon", type=int, default=25)
    p.add_argument("--method", choices=engine._METHODS, default="implicit")
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (SpecValidationError, CompilationError, ServiceTableError) as e:
        if isinstance(e, SpecValidationError):
            for v in e.violations:
                print(f"invalid: {v}", file=sys.stderr)
        else:
            print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except MaxPlusError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
