"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 invalid parameters,
3 I/O failure, 4 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .action import is_free, is_good_action, lens_crystallization
from .builders import InvalidParameters, LensParams
from .gem import check_crystallization, colored_isomorphic, dual_graph, gem_to_text, lens_gem_direct
from .geometry import DEFAULT_SEED, check_commuting_square
from .homology import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    chain_complex,
    homology_of_chain_complex,
    homology_via_derived,
    lens_homology,
    sphere_homology,
)
from .poset import is_pure, ridges_in_two_facets, validate

EXIT_OK, EXIT_FAIL, EXIT_PARAMS, EXIT_IO, EXIT_BUDGET = 0, 1, 2, 3, 4


@dataclass
class RunConfig:
    command: str
    params: LensParams
    out: Path | None = None
    format: str = "json"
    geometry: bool = False
    via_derived: bool = False
    budget: int = DEFAULT_BUDGET
    samples: int = 10_000
    seed: int = DEFAULT_SEED


def _config(args: argparse.Namespace) -> RunConfig:
    q = args.q if args.q is not None else [1] * (args.n or 1)
    n = args.n if args.n is not None else len(q)
    if n < 1:
        raise InvalidParameters("n must be >= 1")
    if len(q) != n:
        raise InvalidParameters(f"-q lists {len(q)} values but n = {n}")
    return RunConfig(
        command=args.command,
        params=LensParams(args.p, q),
        out=Path(args.out) if args.out else None,
        format=args.format,
        geometry=getattr(args, "geometry", False),
        via_derived=getattr(args, "via_derived", False),
        budget=args.budget,
        samples=getattr(args, "samples", 10_000),
        seed=getattr(args, "seed", DEFAULT_SEED),
    )


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def cmd_build(cfg: RunConfig) -> int:
    L = lens_crystallization(cfg.params)
    for name, K in (("sigma", L.sigma), ("quotient", L.quotient)):
        f = K.f_vector()
        print(f"{name}: f = {f}  facets = {f[-1]}  cells = {len(K)}")
    if cfg.out is not None:
        tag = f"p{cfg.params.p}_q{'-'.join(map(str, cfg.params.q))}"
        _write(cfg.out / f"sigma_{tag}.json", L.sigma.to_json(indent=1) + "\n")
        _write(cfg.out / f"quotient_{tag}.json", L.quotient.to_json(indent=1) + "\n")
        print(f"wrote {cfg.out}/sigma_{tag}.json and {cfg.out}/quotient_{tag}.json")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    P = cfg.params
    n, p, d = P.n, P.p, P.dim
    L = lens_crystallization(P)
    S, Q = L.sigma, L.quotient
    results: list[tuple[str, bool]] = []
    check = lambda name, ok: results.append((name, bool(ok)))

    fs = S.f_vector()
    check("sigma validates", not validate(S))
    check("sigma vertex count 2p(n+1)", fs[0] == 2 * p * (n + 1))
    check("sigma facet count (2p)^(n+1)", fs[-1] == (2 * p) ** (n + 1))
    check("rho automorphism of order p", L.rho.order == p)
    check("action is good", is_good_action(L.rho))
    check("action is free", is_free(L.rho))
    check("quotient validates", not validate(Q))
    check("quotient vertex count 2(n+1)", len(Q.vertex_ids) == 2 * (n + 1))
    check("quotient pure, ridges in two facets", is_pure(Q) and ridges_in_two_facets(Q))
    check("quotient facet count 2^(n+1) p^n", Q.f_vector()[-1] == 2 ** (n + 1) * p**n)

    G = dual_graph(Q)
    rep = check_crystallization(G)
    for line in rep.lines():
        status, name = line.split(" ", 1)
        check(f"gem {name}", status == "PASS")
    direct = lens_gem_direct(P)
    check("gem matches closed-form lens gem", colored_isomorphic(G, direct))

    for name, K, expected in (("sigma", S, sphere_homology(d)), ("quotient", Q, lens_homology(p, n))):
        C = chain_complex(K)
        H = homology_of_chain_complex(C)
        check(f"{name} boundary of boundary is zero", C.is_complex())
        check(f"{name} homology", H == expected)
        check(f"{name} Euler-Poincare", H.euler_characteristic() == K.euler_characteristic() == 0)

    if cfg.geometry:
        sq = check_commuting_square(P, cfg.samples, cfg.seed)
        check(f"geometry commuting square (max err {sq.max_error:.2e})", sq.ok)
    if cfg.via_derived:
        Hd = homology_via_derived(Q, cfg.budget)
        check("quotient homology via derived subdivision", Hd == lens_homology(p, n))

    for name, ok in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    failed = sum(not ok for _, ok in results)
    print(f"{P}: {len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_FAIL


def cmd_homology(cfg: RunConfig) -> int:
    P = cfg.params
    L = lens_crystallization(P)
    H = homology_of_chain_complex(chain_complex(L.quotient))
    Hd = homology_via_derived(L.quotient, cfg.budget) if cfg.via_derived else None
    if cfg.format == "json":
        data = {"params": {"p": P.p, "n": P.n, "q": list(P.q)}, "direct": H.to_dict()}
        if Hd is not None:
            data["via_derived"] = Hd.to_dict()
            data["agree"] = H == Hd
        text = json.dumps(data, indent=1) + "\n"
    else:
        lines = [f"# homology of {P} (direct)", *H.lines()]
        if Hd is not None:
            lines += ["# via derived subdivision", *Hd.lines(), f"# agree: {H == Hd}"]
        text = "\n".join(lines) + "\n"
    _emit(cfg, text)
    return EXIT_OK if Hd is None or H == Hd else EXIT_FAIL


def cmd_gem(cfg: RunConfig) -> int:
    P = cfg.params
    G = lens_gem_direct(P)
    if cfg.format == "json":
        data = {
            "params": {"p": P.p, "n": P.n, "q": list(P.q)},
            "colors": list(G.colors),
            "nodes": [list(v) for v in G.nodes],
            "edges": sorted([list(a), list(b), c] for a, b, c in G.edges),
        }
        text = json.dumps(data) + "\n"
    else:
        text = gem_to_text(G, P)
    _emit(cfg, text)
    return EXIT_OK


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        _write(cfg.out, text)


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "homology": cmd_homology, "gem": cmd_gem}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lenscryst",
        description="Crystallizations of generalized lens spaces L(p, q_1, ..., q_n).",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "build": "build Σ and Σ/<ρ>, print f-vectors, optionally write JSON to --out DIR",
        "verify": "run every construction check and print PASS/FAIL lines",
        "homology": "integer homology of Σ/<ρ>",
        "gem": "emit the closed-form lens gem",
    }
    for name, text in helps.items():
        sp = sub.add_parser(name, help=text, description=text)
        sp.add_argument("-p", type=int, required=True, help="order of the cyclic group, p >= 2")
        sp.add_argument("-n", type=int, default=None, help="sphere is S^(2n+1); default len(q) or 1")
        sp.add_argument("-q", type=int, nargs="+", default=None,
                        help="rotation numbers q_1 .. q_n coprime to p, reduced mod p (default all 1)")
        sp.add_argument("--out", default=None, help="output directory (build) or file (homology, gem)")
        default_fmt = "gem-text" if name == "gem" else ("text" if name == "homology" else "json")
        sp.add_argument("--format", choices=["json", "gem-text", "text"], default=default_fmt,
                        help=f"output format (default {default_fmt})")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help=f"max top simplices of a derived subdivision (default {DEFAULT_BUDGET})")
        if name in ("verify", "homology"):
            sp.add_argument("--via-derived", action="store_true",
                            help="cross-check homology on the derived subdivision")
        if name == "verify":
            sp.add_argument("--geometry", action="store_true", help="check the commuting square numerically")
            sp.add_argument("--samples", type=int, default=10_000, help="geometry samples (default 10000)")
            sp.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"geometry seed (default {DEFAULT_SEED})")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
    except InvalidParameters as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    try:
        return COMMANDS[cfg.command](cfg)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
