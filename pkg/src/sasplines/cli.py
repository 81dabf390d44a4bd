"""Command-line interface: ``sas <command> MESH [options]``.

Exit status is 0 on success, 1 when a computation cannot be completed (for
example a Hilbert function that has not stabilized) and 2 for unreadable or
malformed input.  Output is deterministic for identical inputs.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

import click

from . import __version__
from .errors import ComputationError, InputError, NotStabilized, SasError
from .exactalg import binom2
from .generic import DEFAULT_TOL, generic_dim, genericity_report, regularity_bound
from .hilbert import fit_hp, format_hp, postulation, series_numerator
from .homology import dim_formula, dim_quotient_vertex, h0_h1_J
from .mesh import Mesh, load_mesh, validate
from .net import hp_transform, image_mesh, load_net, postulation_bound, tensor_table
from .splinespace import hf_table, spline_dim

FORMATS = ("table", "csv", "json")


# --------------------------------------------------------------------------
# input


def _resolve(path: str) -> Path:
    """A path on disk, or a shipped fixture addressed as ``fixtures/<name>.json``
    or simply ``<name>``."""
    p = Path(path)
    if p.exists():
        return p
    if p.parent.name == "fixtures" or str(p.parent) == ".":
        name = p.name if p.suffix else p.name + ".json"
        shipped = resources.files("sasplines") / "fixtures" / name
        if shipped.is_file():
            return Path(str(shipped))
    raise FileNotFoundError(path)


def _mesh(path: str) -> Mesh:
    mesh = load_mesh(_resolve(path))
    return mesh


# --------------------------------------------------------------------------
# output


def _cell(v: Any) -> Any:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return ""
    return v


def _json_value(v: Any) -> Any:
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    if isinstance(v, dict):
        return {k: _json_value(x) for k, x in v.items()}
    return v


def _emit(
    fmt: str,
    command: str,
    source: str,
    r: int | None,
    header: Sequence[str],
    rows: Sequence[Sequence[Any]],
    summary: dict[str, Any] | None = None,
) -> None:
    summary = summary or {}
    if fmt == "json":
        doc: dict[str, Any] = {
            "command": command,
            "input": source,
            "r": r,
            "rows": [{h: _json_value(v) for h, v in zip(header, row)} for row in rows],
        }
        if summary:
            doc["summary"] = _json_value(summary)
        click.echo(json.dumps(doc, indent=1))
        return
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(v) for v in row])
        click.echo(buf.getvalue(), nl=False)
        for k, v in summary.items():
            click.echo(f"# {k}: {_cell(v) if not isinstance(v, (list, tuple)) else ' '.join(map(str, v))}")
        return
    cells = [[str(_cell(v)) for v in row] for row in rows]
    widths = [max([len(h)] + [len(c[i]) for c in cells]) for i, h in enumerate(header)]
    click.echo("  ".join(h.rjust(w) for h, w in zip(header, widths)))
    for c in cells:
        click.echo("  ".join(x.rjust(w) for x, w in zip(c, widths)))
    for k, v in summary.items():
        shown = " ".join(map(str, v)) if isinstance(v, (list, tuple)) else _cell(v)
        click.echo(f"{k}: {shown}")


def _hp_summary(values: Sequence[int], prefix: str = "") -> dict[str, Any]:
    try:
        hp = fit_hp(values)
    except NotStabilized as exc:
        return {f"{prefix}hp": f"not stabilized ({exc})"}
    return {
        f"{prefix}hp": format_hp(hp),
        f"{prefix}postulation": postulation(values, hp),
        f"{prefix}series_numerator": series_numerator(values, hp),
    }


# --------------------------------------------------------------------------
# commands

_fmt_option = click.option(
    "--format", "fmt", type=click.Choice(FORMATS), default="table", show_default=True
)
_r_option = click.option("--r", "r", type=click.IntRange(min=0), required=True, help="smoothness order")
_dmax_option = click.option("--dmax", type=click.IntRange(min=0), required=True, help="largest degree")


@click.group()
@click.version_option(__version__, prog_name="sas")
def main() -> None:
    """Dimensions of semialgebraic spline spaces over curved planar meshes."""


@main.command("validate")
@click.argument("mesh")
def cmd_validate(mesh: str) -> None:
    """Run the mesh consistency checks; exit 0 iff all pass."""
    m = _mesh(mesh)
    report = validate(m)
    for line in report.lines():
        click.echo(line)
    click.echo(f"phi0={m.phi0} phi1={m.phi1} phi2={m.phi2}")
    sys.exit(0 if report.ok else 1)


@main.command("dim")
@click.argument("mesh")
@_r_option
@_dmax_option
@_fmt_option
def cmd_dim(mesh: str, r: int, dmax: int, fmt: str) -> None:
    """dim C^r_d for d = 0..dmax."""
    m = _mesh(mesh)
    values = hf_table(m, r, dmax)
    _emit(fmt, "dim", mesh, r, ("d", "dim"), list(enumerate(values)))


@main.command("hilbert")
@click.argument("mesh")
@_r_option
@click.option("--dmax", default="auto", show_default=True, help="largest degree, or 'auto' for generic meshes")
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True)
@_fmt_option
def cmd_hilbert(mesh: str, r: int, dmax: str, tol: float, fmt: str) -> None:
    """Hilbert polynomial, postulation number and series numerator."""
    m = _mesh(mesh)
    if dmax == "auto":
        report = genericity_report(m, tol=tol)
        if not report.formula_applies:
            raise NotStabilized("mesh is not generic; pass an explicit --dmax")
        D, _ = regularity_bound(m, r)
        cap = D - 2 + 3
    else:
        try:
            cap = int(dmax)
        except ValueError:
            raise click.BadParameter("expected an integer or 'auto'", param_hint="--dmax") from None
        if cap < 0:
            raise click.BadParameter("must be nonnegative", param_hint="--dmax")
    values = hf_table(m, r, cap)
    hp = fit_hp(values)
    post = postulation(values, hp)
    num = series_numerator(values, hp)
    summary = {"hp": format_hp(hp), "postulation": post, "series_numerator": num}
    rows = [(d, v, hp[0] * d * d + hp[1] * d + hp[2]) for d, v in enumerate(values)]
    _emit(fmt, "hilbert", mesh, r, ("d", "dim", "hp"), rows, summary)


@main.command("formula")
@click.argument("mesh")
@_r_option
@_dmax_option
@_fmt_option
def cmd_formula(mesh: str, r: int, dmax: int, fmt: str) -> None:
    """Four-term Euler-characteristic breakdown with the direct count alongside."""
    m = _mesh(mesh)
    rows = []
    for d in range(dmax + 1):
        t = dim_formula(m, r, d)
        rows.append((d, t.term_faces, t.term_edges, t.term_vertices, t.term_h0, t.total, spline_dim(m, r, d)))
    header = ("d", "term_faces", "term_edges", "term_vertices", "term_h0", "total", "direct")
    _emit(fmt, "formula", mesh, r, header, rows)


@main.command("homology")
@click.argument("mesh")
@_r_option
@_dmax_option
@_fmt_option
def cmd_homology(mesh: str, r: int, dmax: int, fmt: str) -> None:
    """dim H0(J)_d, dim H1(J)_d and the sum of dim (S/J(v))_d."""
    m = _mesh(mesh)
    rows = []
    for d in range(dmax + 1):
        h0, h1 = h0_h1_J(m, r, d)
        q = sum(dim_quotient_vertex(m, v.id, r, d) for v in m.interior_vertices)
        rows.append((d, h0, h1, q, binom2(d + 2) + h1))
    _emit(fmt, "homology", mesh, r, ("d", "h0", "h1", "sum_quotients", "dim"), rows)


@main.command("generic")
@click.argument("mesh")
@click.option("--r", "r", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--dim", "dim_d", type=click.IntRange(min=0), default=None, help="also evaluate the generic formula in this degree")
@click.option("--strict", is_flag=True, help="apply condition 1 at boundary vertices too")
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True)
@_fmt_option
def cmd_generic(mesh: str, r: int, dim_d: int | None, strict: bool, tol: float, fmt: str) -> None:
    """Genericity report, regularity bound and optionally the generic formula."""
    m = _mesh(mesh)
    report = genericity_report(m, strict=strict, tol=tol)
    D, per_edge = regularity_bound(m, r)
    summary: dict[str, Any] = {"generic": report.generic, "D": D}
    if dim_d is not None:
        summary["d"] = dim_d
        summary["generic_dim"] = generic_dim(m, r, dim_d, tol=tol)
        summary["certified"] = dim_d >= D - 2
    if fmt == "table":
        for line in report.lines():
            click.echo(line)
        click.echo(f"regularity bound D = {D} (r = {r})")
        for eid, val in per_edge.items():
            click.echo(f"    D_{eid} = {val}")
        if dim_d is not None:
            tag = "certified (d >= D-2)" if summary["certified"] else "not certified (d < D-2)"
            click.echo(f"generic_dim(r={r}, d={dim_d}) = {summary['generic_dim']}  [{tag}]")
        return
    rows = [
        (c.number, c.passed, c.numeric, " | ".join(c.witnesses)) for c in report.conditions
    ]
    _emit(fmt, "generic", mesh, r, ("condition", "passed", "numeric", "witnesses"), rows, summary)


@main.command("net")
@click.argument("mesh")
@click.option("--net", "net_path", required=True, help="net JSON file {\"forms\": [f, g, h]}")
@_r_option
@_dmax_option
@_fmt_option
def cmd_net(mesh: str, net_path: str, r: int, dmax: int, fmt: str) -> None:
    """Image mesh, its Hilbert function, and the transfer back through the net."""
    m = _mesh(mesh)
    net = load_net(_resolve(net_path))
    im = image_mesh(m, net)
    # the image table is cheap (linear forms); go far enough for its fit
    image_values = hf_table(im, r, max(dmax, 10))
    direct = hf_table(m, r, dmax)
    summary: dict[str, Any] = {"n": net.n}
    try:
        ihp = fit_hp(image_values)
    except NotStabilized:
        ihp = None
    tensor = tensor_table(image_values, net.n, dmax, ihp)
    rows = [
        (d, image_values[d] if d <= dmax else None, direct[d], tensor[d]) for d in range(dmax + 1)
    ]
    if ihp is not None:
        d0 = postulation(image_values, ihp)
        A = hp_transform(*ihp, net.n)
        summary.update(
            {
                "image_hp": format_hp(ihp),
                "image_postulation": d0,
                "hp": format_hp(A),
                "postulation_bound": postulation_bound(d0, net.n),
            }
        )
        try:
            dhp = fit_hp(direct)
            summary["postulation"] = postulation(direct, dhp)
        except NotStabilized:
            pass
    _emit(fmt, "net", mesh, r, ("d", "dim_image", "dim", "tensor"), rows, summary)


def run(argv: Sequence[str] | None = None) -> int:
    """Entry point that maps package errors onto exit codes."""
    try:
        main.main(args=list(argv) if argv is not None else None, standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 2
    except FileNotFoundError as exc:
        click.echo(f"FileNotFound: {exc.filename or exc}", err=True)
        return 2
    except InputError as exc:
        click.echo(f"{type(exc).__name__}: {exc}", err=True)
        return 2
    except ComputationError as exc:
        click.echo(f"{type(exc).__name__}: {exc}", err=True)
        return 1
    except SystemExit as exc:
        return int(exc.code or 0)
    except SasError as exc:  # pragma: no cover - every error is one of the two kinds
        click.echo(f"{type(exc).__name__}: {exc}", err=True)
        return 1
    return 0


def entry() -> None:
    sys.exit(run())


if __name__ == "__main__":
    entry()
