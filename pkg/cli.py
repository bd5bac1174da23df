"""
Command line driver of the workbench.
Every single-check command builds a one-check suite and runs it through the
same path as `run-suite`, so a report line can be replayed in isolation.
Commands:
    validate-frame, validate-object, validate-topology, check-sheaf,
    oracle-compare, check-dne, run-suite, explain
Exit codes:
    0 pass, 1 counterexample, 2 inconclusive-only failures, 3 usage or parse error.
"""

import json
import sys
from pathlib import Path
from typing import Any, Optional

import click

from controller.checkconstants import DEFAULT_WORKERS, configureLogging
from controller.errors import ResolutionError, WorkbenchError
from controller.loader import describeError, loadJson, loadSuite
from controller.suite import builtinSuite, explain, readReport, renderReport, runSuite, writeReport
from objects.suite import CheckSpec, Suite

EXIT_USAGE = 3


def _reference(value: Optional[str]) -> Any:
    """
    A flag value is a JSON file path, inline JSON, or a plain reference such
    as "heyting CHAIN3" or "dnn".
    """
    if value is None:
        return None
    if value.lstrip().startswith(("{", "[")):
        try:
            return json.loads(value)
        except json.JSONDecodeError as error:
            raise ResolutionError(f"invalid inline JSON at column {error.colno}: {error.msg}", location="flag") from error
    if value.endswith(".json") or Path(value).is_file():
        return loadJson(value)
    return value


def _emit(ctx: click.Context, suite: Suite, reportOut: Optional[str], allowInconclusive: bool, workers: int):
    report = runSuite(suite, workers=workers, allowInconclusive=allowInconclusive)
    if reportOut:
        writeReport(report, reportOut)
    click.echo(renderReport(report), nl=False)
    ctx.exit(report.exitStatus)


def _single(ctx: click.Context, operation: str, bounds: str, reportOut: Optional[str], **references):
    spec = CheckSpec(id=operation, operation=operation, bounds=bounds, **references)
    _emit(ctx, Suite(name=operation, checks=[spec]), reportOut, ctx.obj["allowInconclusive"], 1)


class WorkbenchGroup(click.Group):
    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except WorkbenchError as error:
            click.echo(describeError(error), err=True)
            ctx.exit(EXIT_USAGE)


boundsOption = click.option(
    "--bounds", required=True, help="BASIS:MAX_LEAVES:FUEL:POOL_LEAVES[:PSI_CAP[:CARRIER_LIMIT]]"
)
reportOption = click.option("--report-out", "reportOut", type=click.Path(dir_okay=False), help="Write the report here.")
frameOption = click.option("--frame", help='Frame reference, e.g. "heyting CHAIN3" or a frame file.')
objectOption = click.option("--object", "objectRef", required=True, help="Object file or inline JSON.")
topologyOption = click.option("--topology", required=True, help='"id", "dnn" or a topology file.')


@click.group(cls=WorkbenchGroup)
@click.option("--verbose", is_flag=True, help="Log at DEBUG.")
@click.option("--allow-inconclusive", "allowInconclusive", is_flag=True, help="Inconclusive lines do not fail the run.")
@click.pass_context
def cli(ctx: click.Context, verbose: bool, allowInconclusive: bool):
    """
    Realizability workbench: bounded law checks over evidenced frames,
    realizability toposes and their topologies.
    """
    configureLogging("DEBUG" if verbose else None)
    ctx.ensure_object(dict)
    ctx.obj["allowInconclusive"] = allowInconclusive


@cli.command("validate-frame")
@boundsOption
@click.option("--frame", required=True, help='Frame reference, e.g. "heyting CHAIN3" or a frame file.')
@reportOption
@click.pass_context
def validateFrameCommand(ctx, bounds, frame, reportOut):
    """Checks the evidenced-frame laws."""
    _single(ctx, "validate-frame", bounds, reportOut, frame=_reference(frame))


@cli.command("validate-object")
@boundsOption
@frameOption
@objectOption
@reportOption
@click.pass_context
def validateObjectCommand(ctx, bounds, frame, objectRef, reportOut):
    """Checks sym and trs of an object."""
    _single(ctx, "validate-object", bounds, reportOut, frame=_reference(frame), object=_reference(objectRef))


@cli.command("validate-topology")
@boundsOption
@frameOption
@topologyOption
@click.option("--row", "rows", multiple=True, help="Restrict to these rows (inc, idm, prs, fext).")
@reportOption
@click.pass_context
def validateTopologyCommand(ctx, bounds, frame, topology, rows, reportOut):
    """Checks a Lawvere-Tierney topology row by row."""
    _single(
        ctx,
        "validate-topology",
        bounds,
        reportOut,
        frame=_reference(frame),
        topology=_reference(topology),
        rows=list(rows) or None,
    )


@cli.command("check-sheaf")
@boundsOption
@frameOption
@objectOption
@topologyOption
@reportOption
@click.pass_context
def checkSheafCommand(ctx, bounds, frame, objectRef, topology, reportOut):
    """Checks the internal separation and descent conditions."""
    _single(
        ctx,
        "check-sheaf",
        bounds,
        reportOut,
        frame=_reference(frame),
        object=_reference(objectRef),
        topology=_reference(topology),
    )


@cli.command("oracle-compare")
@boundsOption
@frameOption
@objectOption
@topologyOption
@reportOption
@click.pass_context
def oracleCompareCommand(ctx, bounds, frame, objectRef, topology, reportOut):
    """Compares the internal sheaf check with the enumeration oracle."""
    _single(
        ctx,
        "oracle-compare",
        bounds,
        reportOut,
        frame=_reference(frame),
        object=_reference(objectRef),
        topology=_reference(topology),
    )


@cli.command("check-dne")
@boundsOption
@click.option("--frame", default='{"tier": "cps"}', show_default=True, help="Tier frame reference.")
@click.option("--proposition", required=True, help='"Always", "Never", "=TERM" or "table: ...".')
@reportOption
@click.pass_context
def checkDneCommand(ctx, bounds, frame, proposition, reportOut):
    """Checks that call/cc realizes double negation elimination."""
    _single(ctx, "check-dne", bounds, reportOut, frame=_reference(frame), proposition=proposition)


@cli.command("run-suite")
@click.option("--suite", help="Suite file.")
@click.option("--builtin", help="Builtin suite name (finite-oracle, desk-lemmas).")
@click.option("--workers", default=DEFAULT_WORKERS, show_default=True, type=click.IntRange(min=1))
@reportOption
@click.pass_context
def runSuiteCommand(ctx, suite, builtin, workers, reportOut):
    """Runs every check of a suite and prints the report."""
    if (suite is None) == (builtin is None):
        raise click.UsageError("give exactly one of --suite and --builtin")
    loaded = loadSuite(suite) if suite is not None else builtinSuite(builtin)
    _emit(ctx, loaded, reportOut, ctx.obj["allowInconclusive"], workers)


@cli.command("explain")
@click.argument("check_id", metavar="CHECK_ID")
@click.option("--report", "reportPath", required=True, type=click.Path(dir_okay=False), help="Report file.")
def explainCommand(check_id, reportPath):
    """Prints the witness or counterexample of one report line."""
    click.echo(explain(check_id, readReport(reportPath).lines))


def main(argv=None) -> int:
    """
    Runs the CLI without click's own exit handling so usage errors map to
    exit status 3.
    """
    try:
        status = cli.main(args=argv, prog_name="workbench", standalone_mode=False)
    except click.ClickException as error:
        error.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        return EXIT_USAGE
    return status or 0


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
