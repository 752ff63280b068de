"""Command-line frontend.

Exit status is 0 on success, 1 when the input fails validation and 2 when
a structural property the theory guarantees is found violated.

    opengw trees --k 2 --beta 1 --r 1
    opengw boundary --tree @tree.json
    opengw signs --k 3 --beta 2 --max-r 2 --m 1,2 --format csv
    opengw degree --m 1 --k 2 --beta 1
    opengw ledger --m 1 --k 2 --beta 1
    opengw verify sorted-odd-even --max-r 4 --m 1,2
    opengw poly "H^3" --m 1 --normal-form --restrict
"""

from __future__ import annotations

import csv
import io
import json
import sys
from typing import Optional

import click

from .boundary import boundary_components, tree_node_indices
from .cohomology import MIXED, degree, normal_form, parse_poly, restrict_weights
from .errors import InvariantViolation, SpecError
from .invariants import ConstraintTuple, describe, resolution_ledger
from .signs import odd_vertex_count, sorted_odd_even_theta, sorted_odd_even_zeta, theta, zeta
from .spec_core import Label, PreModuliSpec, basic_spec
from .trees import LabeledTree, enumerate_trees, is_sorted_odd_even
from .verify import SUITES, Bounds, run_suite

__all__ = ["cli", "main"]

SIGN_COLUMNS = (
    "tree-id",
    "r",
    "o",
    "is_sorted_odd_even",
    "m",
    "theta",
    "zeta",
    "closed_form_theta",
    "closed_form_zeta",
    "agree",
)


def _emit(obj) -> None:
    click.echo(json.dumps(obj, indent=2))


def _load_json(text: str, field: str):
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise SpecError(f"{field}: cannot read {text[1:]!r}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{field}: malformed JSON ({exc.msg} at position {exc.pos})") from exc


def _int_list(text: str, field: str) -> tuple[int, ...]:
    if text is None or text.strip() == "":
        return ()
    try:
        out = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise SpecError(f"{field}: expected comma-separated integers, got {text!r}") from None
    if any(x < 0 for x in out):
        raise SpecError(f"{field}: entries must be non-negative, got {text!r}")
    return out


def _ms(text: str) -> tuple[int, ...]:
    ms = _int_list(text, "--m")
    if not ms or any(m < 1 for m in ms):
        raise SpecError(f"--m: ambient dimensions must be positive, got {text!r}")
    return ms


def _base(k: int, l: int, beta: int, k_labels: Optional[str]) -> PreModuliSpec:
    if k_labels is None:
        return basic_spec(k, l, beta)
    raw = _load_json(k_labels, "--k-labels")
    if not isinstance(raw, list):
        raise SpecError("--k-labels: expected a JSON list of labels")
    try:
        labels = [Label.from_json(x) for x in raw]
    except SpecError as exc:
        raise SpecError(f"--k-labels: {exc}") from exc
    return PreModuliSpec(labels, range(1, l + 1), beta)


def _tree(text: str) -> LabeledTree:
    try:
        return LabeledTree.from_json(_load_json(text, "--tree"))
    except SpecError as exc:
        raise SpecError(f"--tree: {exc}") from exc


nonneg = click.IntRange(min=0)


@click.group()
def cli():
    """Resolution calculus for equivariant open Gromov-Witten invariants of (CP^2m, RP^2m)."""


@cli.command()
@click.option("--k", "k", type=nonneg, default=0, help="Number of plain boundary labels.")
@click.option("--l", "l", type=nonneg, default=0, help="Number of interior labels.")
@click.option("--beta", type=nonneg, default=0)
@click.option("--r", "r", type=nonneg, default=0, help="Edges are 1..r.")
@click.option("--rho", default=None, help="Explicit comma-separated edge set (overrides --r).")
@click.option("--k-labels", default=None, help="JSON list of boundary labels (overrides --k).")
def trees(k, l, beta, r, rho, k_labels):
    """Enumerate resolution trees of a basic specification."""
    base = _base(k, l, beta, k_labels)
    edges = _int_list(rho, "--rho") if rho is not None else tuple(range(1, r + 1))
    if any(j < 1 for j in edges):
        raise SpecError(f"--rho: edge indices must be positive, got {rho!r}")
    _emit([t.to_json() for t in enumerate_trees(base, edges)])


@cli.command()
@click.option("--tree", "tree_text", required=True, help="Tree JSON, or @path to a file holding it.")
@click.option("--r", "r", type=click.IntRange(min=1), default=None, help="New node index (default: max index + 1).")
def boundary(tree_text, r):
    """List boundary components of every vertex of a tree."""
    tree = _tree(tree_text)
    if r is None:
        r = max(tree_node_indices(tree), default=0) + 1
    _emit([c.to_json() for c in boundary_components(tree, r)])


def _sign_rows(items, ms):
    rows = []
    for tree_id, t in items:
        sorted_oe = is_sorted_odd_even(t)
        o = odd_vertex_count(t)
        for m in ms:
            th, ze = theta(t, m), zeta(t, m)
            row = {
                "tree-id": tree_id,
                "r": t.r,
                "o": o,
                "is_sorted_odd_even": sorted_oe,
                "m": m,
                "theta": th,
                "zeta": ze,
                "closed_form_theta": None,
                "closed_form_zeta": None,
                "agree": None,
            }
            if sorted_oe:
                ct, cz = sorted_odd_even_theta(o, m), sorted_odd_even_zeta(t.r, o, m)
                row.update(closed_form_theta=ct, closed_form_zeta=cz, agree=(th, ze) == (ct, cz))
            rows.append(row)
    return rows


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


@cli.command()
@click.option("--tree", "tree_text", default=None, help="A single tree (JSON or @path).")
@click.option("--k", "k", type=nonneg, default=0)
@click.option("--l", "l", type=nonneg, default=0)
@click.option("--beta", type=nonneg, default=0)
@click.option("--max-r", type=nonneg, default=None, help="Enumerate trees with 0..max-r edges.")
@click.option("--k-labels", default=None)
@click.option("--sorted-only", is_flag=True, help="Keep sorted odd-even trees only.")
@click.option("--m", "m_text", default="1", help="Comma-separated ambient dimensions.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "table"]), default="json")
def signs(tree_text, k, l, beta, max_r, k_labels, sorted_only, m_text, fmt):
    """Sign table: theta and zeta against the sorted odd-even closed forms."""
    ms = _ms(m_text)
    if tree_text is not None:
        if max_r is not None:
            raise SpecError("--tree and --max-r are mutually exclusive")
        items = [("0", _tree(tree_text))]
    else:
        if max_r is None:
            raise SpecError("--max-r: required unless --tree is given")
        base = _base(k, l, beta, k_labels)
        items = []
        for r in range(max_r + 1):
            for i, t in enumerate(enumerate_trees(base, range(1, r + 1))):
                items.append((f"r{r}-{i}", t))
    if sorted_only:
        items = [(i, t) for i, t in items if is_sorted_odd_even(t)]
    rows = _sign_rows(items, ms)
    if fmt == "json":
        _emit(rows)
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(SIGN_COLUMNS)
        for row in rows:
            writer.writerow([_cell(row[c]) for c in SIGN_COLUMNS])
        click.echo(buf.getvalue(), nl=False)
    else:
        table = [list(SIGN_COLUMNS)] + [[_cell(row[c]) for c in SIGN_COLUMNS] for row in rows]
        widths = [max(len(r[i]) for r in table) for i in range(len(SIGN_COLUMNS))]
        for r in table:
            click.echo("  ".join(cell.rjust(w) for cell, w in zip(r, widths)).rstrip())


def _constraint_options(f):
    f = click.option("--m", "m", type=click.IntRange(min=1), required=True)(f)
    f = click.option("--k", "k", type=nonneg, default=0)(f)
    f = click.option("--l-vec", default="", help="Comma-separated l_0,l_1,...,l_2m.")(f)
    f = click.option("--beta", type=nonneg, default=0)(f)
    return f


def _constraints(l_vec: str, m: int) -> ConstraintTuple:
    c = ConstraintTuple(_int_list(l_vec, "--l-vec"))
    try:
        c.check(m)
    except SpecError as exc:
        raise SpecError(f"--l-vec: {exc}") from exc
    return c


@cli.command("degree")
@_constraint_options
def degree_cmd(m, k, l_vec, beta):
    """Degree of I(k, l_vec, beta) by both routes, and vanishing status."""
    _emit(describe(k, _constraints(l_vec, m), beta, m).to_json())


@cli.command()
@_constraint_options
def ledger(m, k, l_vec, beta):
    """Degree report plus the resolution ledger with signs."""
    c = _constraints(l_vec, m)
    report = describe(k, c, beta, m).to_json()
    report["ledger"] = [level.to_json() for level in resolution_ledger(k, c, beta, m)]
    _emit(report)


@cli.command()
@click.argument("suite", type=click.Choice(sorted(SUITES)))
@click.option("--max-k", type=nonneg, default=3)
@click.option("--max-l", type=nonneg, default=2)
@click.option("--max-beta", type=nonneg, default=3)
@click.option("--max-r", type=nonneg, default=3)
@click.option("--m", "m_text", default="1,2,3")
@click.option("--show", type=nonneg, default=5, help="How many failures to print.")
def verify(suite, max_k, max_l, max_beta, max_r, m_text, show):
    """Run an exhaustive property check; exit 2 if any case disagrees."""
    bounds = Bounds(max_k, max_l, max_beta, max_r, _ms(m_text))
    result = run_suite(suite, bounds)
    click.echo(result.summary())
    for line in result.failures[:show]:
        click.echo(f"  {line}")
    if not result.ok:
        raise InvariantViolation(result.summary())


@cli.command()
@click.argument("expr")
@click.option("--m", "m", type=click.IntRange(min=1), required=True)
@click.option("--normal-form", "nf", is_flag=True, help="Reduce modulo the ring relation.")
@click.option("--restrict", is_flag=True, help="Apply the weight restriction (after any reduction).")
def poly(expr, m, nf, restrict):
    """Parse, optionally reduce and restrict an equivariant polynomial."""
    p = parse_poly(expr, m)
    if nf:
        p = normal_form(p)
    if restrict:
        p = restrict_weights(p)
    d = degree(p)
    _emit({"m": m, "poly": str(p), "degree": "mixed" if d is MIXED else d})


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="opengw", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except SpecError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except InvariantViolation as exc:
        click.echo(f"invariant violated: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
