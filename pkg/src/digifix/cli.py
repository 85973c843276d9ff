"""digifix command line.

Exit codes: 0 success / verdict holds, 1 verdict fails, 2 parse error,
3 semantic error, 4 budget exceeded. Each command ends with one machine line
``RESULT key=value ...``.
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

import click

from .contraction import FIXED_POINT_FAMILIES, check_condition
from .demo import run_demo
from .document import DocumentParseError, SpaceDocument, parse_document
from .errors import BudgetExceededError, DigifixError
from .falsify import BoxPool, builtin_doubling_counterexample, builtin_involution_counterexample, search_counterexample
from .fixedpoint import DEFAULT_MAP_BUDGET, fixed_points, has_fpp, picard_orbit, solve_unique_fixed_point
from .metrics import TOLERANCE, build_space

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_SEMANTIC, EXIT_BUDGET = 0, 1, 2, 3, 4


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, tuple):
        return ",".join(_fmt(x) for x in v)
    return str(v)


def _result(command: str, **fields) -> None:
    click.echo("RESULT " + " ".join([f"command={command}"] + [f"{k}={_fmt(v)}" for k, v in fields.items()]))


def _fail(code: int, message: str, command: str):
    click.echo(f"error: {message}", err=True)
    _result(command, status="error", exit=code)
    sys.exit(code)


def _load(path: str, command: str, need_map: bool = False, need_condition: bool = False):
    try:
        doc = parse_document(Path(path).read_text())
    except DocumentParseError as exc:
        _fail(EXIT_PARSE, f"parse error at {exc}", command)
    except OSError as exc:
        _fail(EXIT_PARSE, str(exc), command)
    except DigifixError as exc:
        _fail(EXIT_SEMANTIC, str(exc), command)
    if need_map and doc.map is None:
        _fail(EXIT_SEMANTIC, "document has no map", command)
    if need_condition and doc.condition is None:
        _fail(EXIT_SEMANTIC, "document has no condition", command)
    try:
        space = build_space(doc.image, doc.metric)
    except DigifixError as exc:
        _fail(EXIT_SEMANTIC, str(exc), command)
    return doc, space


def _budget(flag):
    env = os.environ.get("DIGIFIX_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise click.BadParameter(f"DIGIFIX_BUDGET={env!r} is not an integer") from None
    return flag


def _describe(doc: SpaceDocument) -> str:
    cond = doc.condition
    label = ", ".join(f"{k}={v:.12g}" for k, v in cond.as_dict().items())
    return f"{cond.variant}({label})"


@click.group()
def main():
    """Verify fixed-point assertions on finite digital metric spaces."""


@main.command()
@click.argument("file", type=click.Path())
@click.option("--tolerance", default=TOLERANCE, show_default=True, help="Absolute slack on inequalities.")
def check(file, tolerance):
    """Check a document's map against its condition over all point pairs."""
    doc, space = _load(file, "check", need_map=True, need_condition=True)
    rep = check_condition(space, doc.map, doc.condition, tol=tolerance)
    pts = space.points
    click.echo(f"condition: {_describe(doc)}")
    click.echo(f"pairs checked: {rep.pairs_checked}")
    click.echo(f"verdict: {'HOLDS' if rep.holds else 'FAILS'}")
    if rep.tightest is not None:
        i, j = rep.tightest
        click.echo(f"tightest pair: {pts[i]}, {pts[j]}  lhs={_fmt(rep.lhs)} rhs={_fmt(rep.rhs)} margin={_fmt(rep.margin)}")
    if rep.witness is not None:
        i, j = rep.witness
        click.echo(f"witness pair: {pts[i]}, {pts[j]}")
    _result(
        "check",
        holds=rep.holds,
        pairs_checked=rep.pairs_checked,
        margin=rep.margin,
        tightest=rep.tightest,
        witness=rep.witness,
    )
    sys.exit(EXIT_OK if rep.holds else EXIT_FAIL)


@main.command("fixed-points")
@click.argument("file", type=click.Path())
@click.option("--max-iter", type=int, default=None, help="Orbit length cap (default 4|X|).")
def fixed_points_cmd(file, max_iter):
    """List fixed points; with a condition, certify the unique one and show its orbit."""
    doc, space = _load(file, "fixed-points", need_map=True)
    fps = fixed_points(space, doc.map)
    if fps:
        click.echo(f"fixed points ({len(fps)}): " + " ".join(str(p) for p in fps))
    else:
        click.echo("no fixed points")
    code = EXIT_OK
    extra = {}
    if doc.condition is not None:
        if doc.condition.variant not in FIXED_POINT_FAMILIES:
            click.echo(f"condition {doc.condition.variant} guarantees no fixed point; skipping certification")
        else:
            try:
                unique = solve_unique_fixed_point(space, doc.map, doc.condition)
            except DigifixError as exc:
                click.echo(f"certification failed: {exc}")
                code = EXIT_FAIL
            else:
                orbit = picard_orbit(space, doc.map, space.points[0], max_iter)
                click.echo(f"unique fixed point: {unique}")
                click.echo("orbit: " + " -> ".join(str(space.points[i]) for i in orbit.orbit))
                extra = {"unique": space.image.index(unique), "orbit_length": len(orbit.orbit),
                         "constancy_index": orbit.constancy_index}
    _result("fixed-points", count=len(fps), indices=tuple(space.image.index(p) for p in fps) or None, **extra)
    sys.exit(code)


@main.command()
@click.argument("file", type=click.Path())
@click.option("--budget", type=int, default=DEFAULT_MAP_BUDGET, show_default=True, help="Cap on |X|^|X| self-maps.")
def fpp(file, budget):
    """Decide the fixed point property by enumerating continuous self-maps."""
    budget = _budget(budget)
    doc, _ = _load(file, "fpp")
    try:
        rep = has_fpp(doc.image, budget)
    except BudgetExceededError as exc:
        _fail(EXIT_BUDGET, str(exc), "fpp")
    click.echo(f"FPP: {'yes' if rep.has_fpp else 'no'}")
    if rep.witness is not None:
        click.echo("witness (continuous, fixed-point free):")
        for i, t in enumerate(rep.witness.table):
            click.echo(f"  {doc.image.points[i]} -> {doc.image.points[t]}")
    _result("fpp", has_fpp=rep.has_fpp, witness=rep.witness.table if rep.witness else None, maps=rep.maps_enumerated)
    sys.exit(EXIT_OK if rep.has_fpp else EXIT_FAIL)


@main.command()
@click.argument("file", type=click.Path(), required=False)
@click.option("--window", type=int, default=10, show_default=True, help="Doubling family window K.")
@click.option("--budget", type=int, default=4096, show_default=True, help="Self-maps per space before sampling.")
@click.option("--seed", type=int, default=0, show_default=True)
def falsify(file, window, budget, seed):
    """Run the built-in counterexamples, or search for one against FILE's condition.

    With FILE, every subset of the bounding box of its points (up to its size)
    is tried under its metric and adjacency. Exit 0 when a counterexample is found.
    """
    budget = _budget(budget)
    if file is None:
        if window < 2:
            _fail(EXIT_SEMANTIC, "window must be at least 2", "falsify")
        dbl = builtin_doubling_counterexample(window)
        click.echo(f"doubling, K={window}: {dbl.pairs_checked} pairs, ratio {dbl.ratio}, "
                   f"fixed points {dbl.fixed_points or 'none'} -> {'REFUTED' if dbl.refutes else 'not refuted'}")
        inv = builtin_involution_counterexample()
        click.echo(f"involution: coefficient sum {inv.coefficient_sum} , pair (0,1) lhs={_fmt(inv.lhs)} "
                   f"rhs={_fmt(inv.rhs)}, fixed points {inv.fixed_points or 'none'} "
                   f"-> {'REFUTED' if inv.refutes else 'not refuted'}")
        ok = dbl.refutes and inv.refutes
        _result("falsify", doubling=dbl.refutes, involution=inv.refutes, ratio=str(dbl.ratio), margin=inv.margin)
        sys.exit(EXIT_OK if ok else EXIT_FAIL)
    doc, space = _load(file, "falsify", need_condition=True)
    if doc.metric.kind == "table":
        _fail(EXIT_SEMANTIC, "search needs an l_p or shortest-path metric", "falsify")
    pts = doc.image.points
    lo = tuple(min(c) for c in zip(*pts))
    hi = tuple(max(c) for c in zip(*pts))
    pool = BoxPool(lo, hi, len(pts), doc.image.u, doc.metric)
    found = search_counterexample(doc.condition, pool, maps_per_space=budget, seed=seed)
    if found is None:
        click.echo(f"no fixed-point-free map satisfies {_describe(doc)} in the pool")
        _result("falsify", found=False, seed=seed)
        sys.exit(EXIT_FAIL)
    img = found.space.image
    click.echo(f"counterexample for {_describe(doc)} on {list(img.points)}:")
    for i, t in enumerate(found.map.table):
        click.echo(f"  {img.points[i]} -> {img.points[t]}")
    _result("falsify", found=True, seed=seed, spaces=found.spaces_scanned, maps=found.maps_checked,
            table=found.map.table, margin=found.report.margin)
    sys.exit(EXIT_OK)


@main.command()
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--window", type=int, default=10, show_default=True, help="Extra doubling window K.")
@click.option("--trials", type=int, default=1000, show_default=True, help="Property-sweep trials.")
def demo(seed, window, trials):
    """Reproduce every claim in the checklist; exit 0 iff all PASS."""
    items = run_demo(seed=seed, window=window, trials=trials)
    for it in items:
        verdict = "TRUE" if it.observed else "FALSE"
        note = "" if it.expected else " (expected FALSE)"
        click.echo(f"[{'PASS' if it.passed else 'FAIL'}] {it.claim}: {verdict}{note}  {it.detail}")
    passed = sum(it.passed for it in items)
    _result("demo", passed=passed, total=len(items), all_pass=passed == len(items))
    sys.exit(EXIT_OK if passed == len(items) else EXIT_FAIL)


if __name__ == "__main__":
    main()
