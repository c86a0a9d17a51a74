"""Command-line interface; the only module that performs I/O.

Exit codes: 0 success (or a true boolean result), 1 false boolean result,
2 malformed or inconsistent input files, 3 domain errors (empty subshift,
absent section, horseshoe/quotient validation), 4 enumeration or state cap
exceeded, 5 no compatible selection. Errors go to stderr only.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

from .errors import (
    CapExceeded,
    DimensionMismatch,
    NoCompatibleSelection,
    ParseError,
    QentError,
)
from .fileio import (
    format_adjacency,
    load_adjacency,
    load_pam,
    load_vertex_map,
)
from .graphs import (
    find_right_inverse,
    graph_isomorphic,
    is_graph_morphism,
    kronecker_product,
    quotient_graph,
)
from .interval_maps import compatible_selection, markov_graph, validate_horseshoe
from .sofic import quotient_entropy, sofic_entropy
from .spectral import (
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_TOLERANCE,
    EntropyReport,
    entropy,
)
from .words import DEFAULT_ENUMERATION_CAP, count_words_range, growth_rate

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_CAP = 4
EXIT_NO_SELECTION = 5

ENUM_CAP_ENV = "QE_ENUM_CAP"


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = DEFAULT_TOLERANCE
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP
    output_mode: str = "human"
    log2: bool = False

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be > 0")
        if self.max_iterations <= 0 or self.enumeration_cap <= 0:
            raise ValueError("caps must be positive")


def _config(args) -> RunConfig:
    cap = getattr(args, "enum_cap", None)
    if cap is None:
        cap = int(os.environ.get(ENUM_CAP_ENV, DEFAULT_ENUMERATION_CAP))
    return RunConfig(
        tolerance=args.tolerance,
        max_iterations=args.max_iterations,
        enumeration_cap=cap,
        output_mode="json" if args.json else "human",
        log2=args.log2,
    )


def _scaled(value: float, cfg: RunConfig) -> float:
    return value / math.log(2) if cfg.log2 else value


def _unit(cfg: RunConfig) -> str:
    return "bits" if cfg.log2 else "nats"


def _emit(cfg: RunConfig, human: list[str], payload: dict) -> None:
    if cfg.output_mode == "json":
        print(json.dumps(payload))
    else:
        print("\n".join(human))


def _section_pairs_1based(report: EntropyReport) -> list[list[int]] | None:
    if report.section is None:
        return None
    return [[k + 1, v + 1] for k, v in report.section]


def _format_section(report: EntropyReport) -> str:
    assert report.section is not None
    return ", ".join(f"{k + 1} -> {v + 1}" for k, v in report.section)


def cmd_entropy(args, cfg: RunConfig) -> int:
    A = load_adjacency(args.graph)
    report = entropy(A, tolerance=cfg.tolerance, max_iterations=cfg.max_iterations)
    value = _scaled(report.value, cfg)
    _emit(
        cfg,
        [
            f"entropy: {value:.10f}",
            f"method: {report.method}",
            f"residual: {report.residual:.3e}",
        ],
        {
            "entropy": value,
            "method": report.method,
            "residual": report.residual,
            "n": A.n,
            "unit": _unit(cfg),
        },
    )
    return EXIT_OK


def cmd_quotient_entropy(args, cfg: RunConfig) -> int:
    A = load_adjacency(args.graph)
    f = load_vertex_map(args.vmap)
    report = quotient_entropy(
        A,
        f,
        args.method,
        n_max=args.nmax,
        tolerance=cfg.tolerance,
        max_iterations=cfg.max_iterations,
        state_cap=cfg.enumeration_cap,
    )
    if args.method in ("auto", "section"):
        section_found = report.method == "section"
    else:
        section_found = None  # not checked on explicit sofic/bruteforce runs
    value = _scaled(report.value, cfg)
    human = [
        f"quotient entropy: {value:.10f}",
        f"method: {report.method}",
        "section found: "
        + {True: "yes", False: "no", None: "not checked"}[section_found],
    ]
    if report.section is not None:
        human.append(f"section: {_format_section(report)}")
    human.append(f"residual: {report.residual:.3e}")
    _emit(
        cfg,
        human,
        {
            "entropy": value,
            "method": report.method,
            "residual": report.residual,
            "n": A.n,
            "m": f.codomain_size,
            "section_found": section_found,
            "section": _section_pairs_1based(report),
            "unit": _unit(cfg),
        },
    )
    return EXIT_OK


def cmd_horseshoe(args, cfg: RunConfig) -> int:
    dyn = load_pam(args.pam)
    F = validate_horseshoe(dyn)
    base = entropy(F, tolerance=cfg.tolerance, max_iterations=cfg.max_iterations)
    human = ["markov graph:"]
    human.extend(format_adjacency(F).splitlines())
    human.append(f"entropy: {_scaled(base.value, cfg):.10f}")
    payload = {
        "n": F.n,
        "markov_graph": [list(row) for row in F.rows],
        "entropy": _scaled(base.value, cfg),
        "residual": base.residual,
        "unit": _unit(cfg),
    }
    if args.quotient is not None:
        q = load_pam(args.quotient)
        sel = compatible_selection(dyn, q)
        qreport = entropy(
            sel.quotient, tolerance=cfg.tolerance, max_iterations=cfg.max_iterations
        )
        cross = sofic_entropy(
            F,
            sel.coarse_map,
            tolerance=cfg.tolerance,
            max_iterations=cfg.max_iterations,
        )
        residual = abs(qreport.value - cross.value)
        c_1based = [v + 1 for v in sel.coarse_map.image]
        g_1based = [v + 1 for v in sel.section]
        human.append("selection c: " + " ".join(str(v) for v in c_1based))
        human.append(
            "section g: "
            + ", ".join(f"{j + 1} -> {v + 1}" for j, v in enumerate(sel.section))
        )
        human.append("quotient graph:")
        human.extend(format_adjacency(sel.quotient).splitlines())
        human.append(f"quotient entropy: {_scaled(qreport.value, cfg):.10f}")
        human.append(f"cross-check residual: {residual:.3e}")
        payload["quotient"] = {
            "m": sel.partition_size,
            "c": c_1based,
            "g": g_1based,
            "graph": [list(row) for row in sel.quotient.rows],
            "entropy": _scaled(qreport.value, cfg),
            "residual": residual,
        }
    _emit(cfg, human, payload)
    return EXIT_OK


def cmd_check_morphism(args, cfg: RunConfig) -> int:
    A = load_adjacency(args.graph_a)
    B = load_adjacency(args.graph_b)
    f = load_vertex_map(args.vmap)
    ok = is_graph_morphism(A, B, f)
    _emit(cfg, [f"graph morphism: {'yes' if ok else 'no'}"], {"is_morphism": ok})
    return EXIT_OK if ok else EXIT_FALSE


def cmd_find_section(args, cfg: RunConfig) -> int:
    A = load_adjacency(args.graph)
    f = load_vertex_map(args.vmap)
    B = quotient_graph(A, f)
    g = find_right_inverse(A, B, f)
    if g is None:
        _emit(cfg, ["section: none"], {"section": None})
        return EXIT_FALSE
    human = ", ".join(f"{k + 1} -> {v + 1}" for k, v in enumerate(g))
    _emit(cfg, [f"section: {human}"], {"section": [[k + 1, v + 1] for k, v in enumerate(g)]})
    return EXIT_OK


def cmd_words(args, cfg: RunConfig) -> int:
    A = load_adjacency(args.graph)
    counts = count_words_range(A, args.length)
    human = [f"words of length {args.length}: {counts[-1]}"]
    ratios: list[float | None] = [None]
    for prev, cur in zip(counts, counts[1:]):
        ratios.append(math.log(cur) - math.log(prev))
    if len(counts) >= 2:
        rate = growth_rate(counts)
        normalized = rate.normalized
        human.append("length   count   ln-ratio   ln/length")
        for t, (c, r, nl) in enumerate(zip(counts, ratios, normalized), start=1):
            r_str = f"{r:.6f}" if r is not None else "      -"
            human.append(f"{t:6d}   {c}   {r_str}   {nl:.6f}")
        growth = rate.estimate
    else:
        normalized = (math.log(counts[0]),)
        growth = None
    _emit(
        cfg,
        human,
        {
            "length": args.length,
            "count": counts[-1],
            "counts": counts,
            "growth_ln": growth,
            "normalized_ln": list(normalized),
        },
    )
    return EXIT_OK


def cmd_product(args, cfg: RunConfig) -> int:
    A = load_adjacency(args.graph_a)
    B = load_adjacency(args.graph_b)
    text = format_adjacency(kronecker_product(A, B))
    if args.output is not None:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_iso(args, cfg: RunConfig) -> int:
    A = load_adjacency(args.graph_a)
    B = load_adjacency(args.graph_b)
    ok = graph_isomorphic(A, B)
    _emit(cfg, [f"isomorphic: {'yes' if ok else 'no'}"], {"isomorphic": ok})
    return EXIT_OK if ok else EXIT_FALSE


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument(
        "--log2", action="store_true", help="report entropies in bits instead of nats"
    )
    common.add_argument(
        "--tolerance", type=float, default=DEFAULT_TOLERANCE,
        help="power-iteration residual tolerance",
    )
    common.add_argument(
        "--max-iterations", type=int, default=DEFAULT_MAX_ITERATIONS,
        help="power-iteration cap",
    )
    common.add_argument(
        "--enum-cap", type=int, default=None, dest="enum_cap",
        help=f"enumeration/state cap (also env {ENUM_CAP_ENV})",
    )

    parser = argparse.ArgumentParser(
        prog="qent",
        description="Topological and quotient-topological entropy of Markov chains",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", parents=[common], help="entropy of a graph file")
    p.add_argument("graph", help=".adj file")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser(
        "quotient-entropy", parents=[common],
        help="entropy of a chain observed through a vertex map",
    )
    p.add_argument("graph", help=".adj file")
    p.add_argument("vmap", help=".vmap file")
    p.add_argument(
        "--method", choices=("auto", "section", "sofic", "bruteforce"), default="auto"
    )
    p.add_argument("--nmax", type=int, default=25, help="bruteforce word length")
    p.set_defaults(func=cmd_quotient_entropy)

    p = sub.add_parser(
        "horseshoe", parents=[common],
        help="analyze a piecewise affine map, optionally with a quotient",
    )
    p.add_argument("pam", help=".pam dynamics file")
    p.add_argument("--quotient", help=".pam quotient file", default=None)
    p.set_defaults(func=cmd_horseshoe)

    p = sub.add_parser(
        "check-morphism", parents=[common], help="is the vertex map a graph morphism?"
    )
    p.add_argument("graph_a", help="source .adj")
    p.add_argument("graph_b", help="target .adj")
    p.add_argument("vmap", help=".vmap file")
    p.set_defaults(func=cmd_check_morphism)

    p = sub.add_parser(
        "find-section", parents=[common],
        help="right inverse of the map onto its quotient graph, if any",
    )
    p.add_argument("graph", help=".adj file")
    p.add_argument("vmap", help=".vmap file")
    p.set_defaults(func=cmd_find_section)

    p = sub.add_parser(
        "words", parents=[common], help="exact word count and growth diagnostics"
    )
    p.add_argument("graph", help=".adj file")
    p.add_argument("-n", "--length", type=int, required=True, help="word length")
    p.set_defaults(func=cmd_words)

    p = sub.add_parser(
        "product", parents=[common], help="Kronecker product of two graphs (.adj out)"
    )
    p.add_argument("graph_a", help=".adj file")
    p.add_argument("graph_b", help=".adj file")
    p.add_argument("-o", "--output", default=None, help="write to file instead of stdout")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser(
        "iso", parents=[common], help="are two graphs isomorphic? (n <= 10)"
    )
    p.add_argument("graph_a", help=".adj file")
    p.add_argument("graph_b", help=".adj file")
    p.set_defaults(func=cmd_iso)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        return args.func(args, cfg)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DimensionMismatch as exc:
        print(f"error: inconsistent inputs: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except NoCompatibleSelection as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_SELECTION
    except QentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
