"""Command-line client.

Builds the report documents in-process, or fetches them from a running
service with ``--server URL``, and renders them.  Exit codes: 0 on success,
1 on a usage error, 2 when an internal consistency check fails.
"""

from __future__ import annotations

import json
import sys
import urllib.error
import urllib.parse
import urllib.request

import click

from . import __version__, report
from .catalog import AmbiguousMatch, NoMatch
from .config import ConfigError
from .strata import PipelineError

EXIT_OK, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2


class ServerError(RuntimeError):
    def __init__(self, status: int, detail: str):
        super().__init__(detail)
        self.status = status


def _fetch(server: str, path: str, params: dict) -> dict:
    query = urllib.parse.urlencode({k: str(v).lower() if isinstance(v, bool) else v for k, v in params.items()})
    url = server.rstrip("/") + path + (f"?{query}" if query else "")
    try:
        with urllib.request.urlopen(url) as resp:
            return json.loads(resp.read().decode())
    except urllib.error.HTTPError as exc:
        try:
            detail = json.loads(exc.read().decode()).get("detail", str(exc))
        except ValueError:
            detail = str(exc)
        raise ServerError(exc.code, str(detail)) from exc
    except urllib.error.URLError as exc:
        raise click.UsageError(f"cannot reach {server}: {exc.reason}") from exc


def _emit(ctx: click.Context, kind: str, path: str, fmt: str, build, **params) -> None:
    server = ctx.obj.get("server")
    doc = _fetch(server, path, params) if server else build()
    click.echo(report.render(doc, fmt), nl=False)


NU = click.option("--nu", type=int, required=True, help="torsion order: 3, 4 or 5")
EXCLUDE_H = click.option(
    "--exclude-h", is_flag=True, default=False, help="nu=3 only: drop the involution twisting y0 and y1"
)


def _table_json(extra=()):
    return click.option("--format", "fmt", type=click.Choice(["table", "json", *extra]), default="table", show_default=True)


@click.group()
@click.version_option(__version__, prog_name="godeaux")
@click.option("--server", default=None, metavar="URL", help="fetch documents from a running godeaux service")
@click.pass_context
def cli(ctx: click.Context, server: str | None) -> None:
    """Automorphism strata and inertia of Godeaux parameter spaces."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


@cli.command()
@NU
@_table_json(("dot",))
@EXCLUDE_H
@click.pass_context
def strata(ctx, nu, fmt, exclude_h):
    """Regrouped strata table, components and Hasse diagram."""
    report.check_nu(nu)
    _emit(ctx, "strata", f"/strata/{nu}", fmt, lambda: report.strata_report(nu, not exclude_h), include_h=not exclude_h)


@cli.command()
@NU
@_table_json()
@EXCLUDE_H
@click.pass_context
def inertia(ctx, nu, fmt, exclude_h):
    """Components of the inertia stack with centralizers."""
    report.check_nu(nu)
    _emit(ctx, "inertia", f"/inertia/{nu}", fmt, lambda: report.inertia_report(nu, not exclude_h), include_h=not exclude_h)


@cli.command()
@NU
@click.option("--twist", type=int, required=True, help="the unit u of Z_nu by which eigenspaces are permuted")
@_table_json()
@EXCLUDE_H
@click.pass_context
def equations(ctx, nu, twist, fmt, exclude_h):
    """Congruences generated for one twist, and their parametric solution."""
    report.check_nu(nu)
    _emit(
        ctx, "equations", f"/equations/{nu}", fmt,
        lambda: report.equations_report(nu, twist, not exclude_h), twist=twist, include_h=not exclude_h,
    )


@cli.command()
@NU
@_table_json()
@click.pass_context
def ambient(ctx, nu, fmt):
    """Orders and structure of H and H/G."""
    report.check_nu(nu)
    _emit(ctx, "ambient", f"/ambient/{nu}", fmt, lambda: report.ambient_report(nu))


@cli.command("group-id")
@NU
@click.option("--generators", default="", help='tuples separated by ";", e.g. "(2,2,0,0);(0,0,0,1)"')
@click.option("--elements", is_flag=True, default=False, help="also list the elements")
@_table_json()
@click.pass_context
def group_id(ctx, nu, generators, elements, fmt):
    """Identify the subgroup of H/G generated by the given tuples."""
    report.check_nu(nu)
    _emit(
        ctx, "group-id", f"/group-id/{nu}", fmt,
        lambda: report.group_id_report(nu, generators, elements), generators=generators, elements=elements,
    )


def main(argv: list[str] | None = None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="godeaux", standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except (report.UsageError, NoMatch) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    except ServerError as exc:
        click.echo(f"server error: {exc}", err=True)
        return EXIT_USAGE if exc.status < 500 else EXIT_INTERNAL
    except (PipelineError, ConfigError, AmbiguousMatch) as exc:
        click.echo(f"internal consistency failure: {exc}", err=True)
        return EXIT_INTERNAL
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
