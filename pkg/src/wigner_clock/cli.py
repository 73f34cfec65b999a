"""Command-line sweep driver.

    wigner-clock --w-over-m 0.1,1,10 --measures fidelity,entropy --out sweep.csv \
        --svg fidelity:fig1.svg --figure comparison:fig7.png

Options may also come from a ``key = value`` config file (``--config``);
keys are the long flag names without dashes (``xi-min`` or ``xi_min``).
Flags given on the command line override the file.
"""

from __future__ import annotations

import argparse
import configparser
import logging
import math
import sys
from pathlib import Path

from . import measures as M
from .quadrature import OracleSpec, QuadratureSpec
from .svg import render_svg
from .sweep import MEASURES, SweepPointError, SweepSpec, format_csv, run_sweep, write_csv

log = logging.getLogger("wigner_clock")

KEYS = ("xi_min", "xi_max", "xi_steps", "w_over_m", "measures", "renyi_orders", "qmax_mult",
        "grid", "rel_tol", "oracle_samples", "seed", "out", "svg", "figure", "workers",
        "check_refinement")


def _floats(text: str) -> list[float]:
    out = []
    for tok in text.split(","):
        tok = tok.strip().lower()
        if not tok:
            continue
        out.append(math.inf if tok in ("inf", "infinity") else float(tok))
    return out


def _names(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _targets(items: list[str]) -> list[tuple[str, Path]]:
    out = []
    for item in items:
        for part in _names(item):
            measure, sep, path = part.partition(":")
            if not sep or not path:
                raise ValueError(f"expected measure:path, got {part!r}")
            out.append((measure.strip(), Path(path.strip())))
    return out


def _bool(text: str) -> bool:
    return configparser.ConfigParser.BOOLEAN_STATES[text.strip().lower()]


def read_config(path: str | Path) -> dict[str, str]:
    """Parse a sectionless ``key = value`` file into normalised keys."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    text = Path(path).read_text(encoding="utf-8")
    parser.read_string("[sweep]\n" + text, source=str(path))
    values = {}
    for key, value in parser["sweep"].items():
        norm = key.replace("-", "_")
        if norm not in KEYS:
            raise ValueError(f"{path}: unknown config key {key!r}")
        values[norm] = value
    return values


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="wigner-clock",
        description="Sweep qubit-clock / boosted-wavepacket entanglement measures over rapidity and w/m.")
    p.add_argument("--config", type=Path, help="key = value file; flags override it")
    p.add_argument("--xi-min", type=float)
    p.add_argument("--xi-max", type=float)
    p.add_argument("--xi-steps", type=int)
    p.add_argument("--w-over-m", help="comma list of w/m values")
    p.add_argument("--measures", help=f"comma list from {','.join(MEASURES)}")
    p.add_argument("--renyi-orders", help="comma list, 'inf' allowed")
    p.add_argument("--qmax-mult", type=float, help="radial cutoff as a multiple of w")
    p.add_argument("--grid", help="nq,ntheta,nphi")
    p.add_argument("--rel-tol", type=float, help="grid-refinement tolerance on fidelity")
    p.add_argument("--check-refinement", action="store_const", const="true",
                   help="re-run each fidelity on a doubled grid and fail above --rel-tol")
    p.add_argument("--oracle-samples", type=int, help="enable the Monte-Carlo oracle with N samples")
    p.add_argument("--seed", type=int, help="oracle RNG seed")
    p.add_argument("--out", type=Path, help="CSV output path")
    p.add_argument("--svg", action="append", help="measure:path, repeatable")
    p.add_argument("--figure", action="append",
                   help="measure:path rendered with matplotlib (measure may be 'comparison'), repeatable")
    p.add_argument("--workers", type=int, help="threads for grid points")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def spec_from_options(opts: dict[str, object]) -> tuple[SweepSpec, list, list]:
    """Turn merged string/typed options into a SweepSpec plus plot targets."""
    def get(key, conv, default=None):
        v = opts.get(key)
        if v is None:
            return default
        return conv(v) if isinstance(v, str) else v

    quad_kwargs = {}
    grid = get("grid", str)
    if grid:
        nq, nt, nphi = (int(x) for x in _names(grid))
        quad_kwargs.update(n_q=nq, n_theta=nt, n_phi=nphi)
    if opts.get("qmax_mult") is not None:
        quad_kwargs["q_max_multiple"] = get("qmax_mult", float)
    if opts.get("rel_tol") is not None:
        quad_kwargs["target_rel_tol"] = get("rel_tol", float)
    quad = QuadratureSpec(**quad_kwargs)

    oracle = None
    n_samples = get("oracle_samples", int, 0)
    if n_samples:
        oracle = OracleSpec(n_samples=n_samples, rng_seed=get("seed", int, 0))

    svg = opts.get("svg") or []
    figure = opts.get("figure") or []
    spec = SweepSpec(
        xi_min=get("xi_min", float, 0.0),
        xi_max=get("xi_max", float, 10.0),
        xi_steps=get("xi_steps", int, 101),
        w_over_m_values=tuple(get("w_over_m", _floats, (0.1, 1.0, 10.0))),
        renyi_orders=tuple(get("renyi_orders", _floats, M.DEFAULT_RENYI_ORDERS)),
        measures=tuple(get("measures", _names, list(MEASURES))),
        quad=quad,
        oracle=oracle,
        output_path=get("out", Path),
        check_refinement=get("check_refinement", _bool, False),
        workers=get("workers", int, 1),
    )
    as_list = (lambda v: [v] if isinstance(v, str) else list(v))
    return spec, _targets(as_list(svg)), _targets(as_list(figure))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        opts: dict[str, object] = read_config(args.config) if args.config else {}
        for key in KEYS:
            value = getattr(args, key, None)
            if value is not None:
                opts[key] = value
        spec, svg_targets, fig_targets = spec_from_options(opts)
    except (ValueError, KeyError, OSError, configparser.Error) as exc:
        print(f"wigner-clock: configuration error: {exc}", file=sys.stderr)
        return 2

    try:
        result = run_sweep(spec)
    except SweepPointError as exc:
        print(f"wigner-clock: {exc}", file=sys.stderr)
        return 1

    try:
        if spec.output_path is not None:
            write_csv(result, spec.output_path)
        else:
            sys.stdout.write(format_csv(result))
        for measure, path in svg_targets:
            render_svg(result, measure, path)
        if fig_targets:
            from .plotting import save_figure
            for measure, path in fig_targets:
                save_figure(result, measure, path)
    except (KeyError, OSError) as exc:
        print(f"wigner-clock: output error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
