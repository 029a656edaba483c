"""Command-line interface.

Exit codes: 0 for an affirmative or valid result, 1 for a negative or invalid
one (diagnostics go to standard output as JSON), 2 for usage and input errors.
"""

from __future__ import annotations

import json
import os
import sys

import click

from . import acceptance, builder, descartes, graphs, lift, render, words
from .geometry import contact
from .scalar import TOLERANCE_ENV, resolve_tolerance
from .serialize import (ball_to_json, balls_from_json, configuration_to_json, dumps,
                        graph_from_text, matrix_to_json, packing_to_json)


class InputError(click.ClickException):
    exit_code = 2


def _emit(obj) -> None:
    click.echo(dumps(obj))


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None


def _load_graph(path: str) -> graphs.Graph:
    try:
        return graph_from_text(_read(path))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read graph from {path}: {exc}") from None


def _load_balls(path: str) -> tuple[int, list]:
    try:
        return balls_from_json(json.loads(_read(path)))
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        raise InputError(f"cannot read packing from {path}: {exc}") from None


def _load_packing(path: str) -> builder.Packing:
    d, balls = _load_balls(path)
    try:
        return builder.Packing.of(d, balls)
    except builder.PackingError as exc:
        _emit({"valid": False, **exc.to_json()})
        sys.exit(1)


def _parse_numbers(text: str, what: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"{what} must be comma-separated numbers, got {text!r}") from None


@click.group()
@click.option("--tolerance", type=float, default=None,
              help=f"Absolute float tolerance (default 1e-9, or ${TOLERANCE_ENV}).")
def cli(tolerance):
    """Apollonian ball packings of stacked-polytope graphs."""
    if tolerance is not None:
        if not tolerance > 0:
            raise InputError("tolerance must be positive")
        os.environ[TOLERANCE_ENV] = repr(tolerance)


@cli.command()
@click.argument("graph_file")
@click.option("--dim", "d", type=int, required=True, help="Ball dimension d.")
@click.option("--trace", is_flag=True, help="Include the construction trace.")
@click.option("--float", "use_float", is_flag=True, help="Float arithmetic even for d = 3.")
def build(graph_file, d, trace, use_float):
    """Build the packing of a stacked (d+1)-polytopal graph."""
    g = _load_graph(graph_file)
    try:
        packing, steps = builder.build_from_graph(g, d, exact=False if use_float else None)
    except builder.NotStackedError as exc:
        _emit({"error": "not-stacked", "message": str(exc)})
        sys.exit(1)
    except builder.PackingError as exc:
        out = exc.to_json()
        if trace and exc.trace is not None:
            out["trace"] = exc.trace.to_json()
        _emit(out)
        sys.exit(1)
    out = packing_to_json(packing)
    if trace:
        out["trace"] = steps.to_json()
    _emit(out)


@cli.command()
@click.argument("graph_file")
def decide(graph_file):
    """Packability of a stacked 4-polytopal graph by 3-balls."""
    verdict = graphs.decide_packable_stacked4(_load_graph(graph_file))
    _emit(verdict.to_json())
    sys.exit(0 if verdict.decision == graphs.PACKABLE else 1)


@cli.command()
@click.argument("packing_file")
def validate(packing_file):
    """Check that balls form a packing (and a Descartes configuration if there are d+2)."""
    d, balls = _load_balls(packing_file)
    eps = resolve_tolerance(None)
    bad = []
    for i in range(len(balls)):
        for j in range(i + 1, len(balls)):
            c = contact(balls[i], balls[j], eps)
            if not c.admissible:
                bad.append([i, j, c.kind.value])
    out = {"valid": not bad, "bad_pairs": bad, "n": len(balls), "d": d}
    if not bad:
        out["graph"] = builder.tangency_graph(balls, eps).to_json()
    if len(balls) == d + 2:
        report = descartes.validate(descartes.DescartesConfiguration(d, balls), eps)
        out["descartes"] = {"valid": report.valid, "eq1_residual": float(report.eq1_residual),
                            "eq2_residual": float(report.eq2_residual),
                            "bad_pairs": [list(p) for p in report.bad_pairs]}
    _emit(out)
    sys.exit(0 if out["valid"] else 1)


@cli.command()
@click.option("--simplify", "simplify_word", default=None, help="Reduce a word.")
@click.option("--mass", "mass_word", default=None, help="Weighted mass of a word.")
@click.option("--sequence", "sequence_word", default=None,
              help="Balls generated from the canonical configuration.")
@click.option("--weights", default=None, help="Weight vector, e.g. -1,1,1,1,1.")
@click.option("--dim", "d", type=int, default=3, show_default=True)
def word(simplify_word, mass_word, sequence_word, weights, d):
    """Word calculus in the Apollonian group; the rightmost letter acts first."""
    chosen = [w for w in (simplify_word, mass_word, sequence_word) if w is not None]
    if len(chosen) != 1:
        raise click.UsageError("give exactly one of --simplify, --mass, --sequence")
    try:
        u = words.Word.parse(chosen[0], d)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    try:
        if simplify_word is not None:
            reduced, pos = words.is_reduced(u)
            s = words.simplify(u)
            _emit({"reduced": reduced, "violation": pos, "simplified": str(s),
                   "matrix": matrix_to_json(words.matrix_of(s))})
        elif mass_word is not None:
            w = _weights(weights, d)
            _, mass = words.weighted_sums(u, w)
            _emit({"mass": mass})
        else:
            seq = words.coxeter_sequence(u, descartes.canonical_configuration(d))
            _emit({"balls": [ball_to_json(b) for b in seq.balls],
                   "final": configuration_to_json(seq.final)})
    except words.UnsupportedDimension as exc:
        raise InputError(str(exc)) from None


def _weights(text, d):
    if text is None:
        return (-1,) + (1,) * (d + 1)
    values = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            values.append(int(tok))
        except ValueError:
            try:
                values.append(float(tok))
            except ValueError:
                raise InputError(f"bad weight {tok!r}") from None
    if len(values) != d + 2:
        raise InputError(f"need {d + 2} weights, got {len(values)}")
    return values


@cli.command()
@click.argument("graph_file")
@click.option("--dim", "d", type=int, required=True)
@click.option("--unknown", "report_unknown", is_flag=True,
              help="Also list cliques whose kissing bound is unknown.")
def scan(graph_file, d, report_unknown):
    """Kissing-number screen; CSV of violating cliques."""
    if d < 3:
        raise InputError("scan needs --dim >= 3")
    hits = graphs.kissing_screen(_load_graph(graph_file), d, report_unknown)
    click.echo("clique,count,bound")
    for v in hits:
        bound = "unknown" if v.bound is None else str(v.bound)
        click.echo(f"{' '.join(map(str, v.clique))},{v.count},{bound}")
    sys.exit(1 if any(v.bound is not None for v in hits) else 0)


@cli.command("lift")
@click.argument("packing_file")
@click.option("--report", is_flag=True, help="Per-pair edge-tangency table as CSV.")
def lift_cmd(packing_file, report):
    """Polar vertices of the lifted packing and its stress dimension."""
    packing = _load_packing(packing_file)
    try:
        result = lift.lift_packing(packing)
    except lift.LiftError as exc:
        _emit({"error": "lift", "message": str(exc)})
        sys.exit(1)
    if report:
        click.echo(result.report.to_csv(), nl=False)
    else:
        _emit(result.to_json())
    sys.exit(0 if result.report.ok else 1)


@cli.command()
@click.argument("packing_file")
def hexlet(packing_file):
    """Soddy hexlets in a 3-dimensional packing (exit 1 when any is found)."""
    packing = _load_packing(packing_file)
    if packing.d != 3:
        raise InputError("hexlet detection needs a 3-dimensional packing")
    hits = builder.detect_hexlet(packing)
    _emit({"hexlets": [list(h) for h in hits]})
    sys.exit(1 if hits else 0)


@cli.command("render")
@click.argument("packing_file")
@click.option("--plane", default=None, help="Cutting hyperplane a1,...,ad,offset.")
@click.option("-o", "--output", default=None, help="Write the SVG here instead of stdout.")
def render_cmd(packing_file, plane, output):
    """SVG of the cross-section of a packing."""
    d, balls = _load_balls(packing_file)
    values = _parse_numbers(plane, "--plane") if plane else None
    try:
        svg = render.render_svg(balls, values)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        click.echo(svg, nl=False)


@cli.command()
@click.option("--coherence", is_flag=True, help="Only the decide/build agreement check.")
@click.option("--max-vertices", type=int, default=9, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def reproduce(coherence, max_vertices, seed, as_json):
    """Run the acceptance checks and print a pass/fail table."""
    if max_vertices < 5:
        raise InputError("--max-vertices must be at least 5")
    if coherence:
        run = acceptance.coherence_run(max_vertices)
        total = len(run.graphs)
        out = {"graphs": total, "agree": run.agreements,
               "agreement": run.agreements / total if total else 0.0}
        _emit(out)
        sys.exit(0 if total and run.agreements == total else 1)
    results = acceptance.run_all(seed=seed, max_vertices=max_vertices)
    if as_json:
        _emit([r.to_json() for r in results])
    else:
        for r in results:
            click.echo(r.line)
    sys.exit(0 if all(r.passed for r in results) else 1)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="apollopack", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        return 1
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
