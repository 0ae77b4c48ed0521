"""
Command-line front end.

    spinx axioms --space lp:4:2
    spinx eval circ --space lp:2:2 "[1,0];0" "[0,1];0"
    spinx campaign lp2 --p 4 --seed 42
    spinx probe --space lp:1:2

Exit codes: 0 expectations met, 1 finding, 2 usage error, 3 domain error.
"""
import argparse
import csv
import json
import logging
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from constants import ABS_TOL, DEFAULT_RESOLUTION, DEFAULT_SAMPLES, DEFAULT_SEED
from exceptions import (
    DimensionMismatch, InvalidElement, InvalidGrid, InvalidSpace, NotInCone, NotOrthogonal, NotPositive,
    UnsupportedSpace, ZeroElement,
)
from jordan import bilinearity_campaign, circ, jordan_campaign, zero_product_campaign
from normed_spaces import SpaceDescriptor, strict_convexity_probe
from order_unit import OrderElement, absolute, absolute_cover, axiom_suite, cone_classify, order_unit_suite
from search import GridSpec, h1_plane_campaign, l42_scaling_campaign, lp2_triviality_campaign, write_defect_surface_csv
from spectral import decompose, power, sqrt_positive, square

logger = logging.getLogger("spinx")

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

USAGE_ERRORS = (InvalidSpace, InvalidGrid, InvalidElement)
DOMAIN_ERRORS = (NotPositive, NotInCone, ZeroElement, NotOrthogonal, DimensionMismatch, UnsupportedSpace)

EXPRESSIONS = ("abs", "sqrt", "power", "circ", "spectral", "square", "cover", "classify")
CAMPAIGNS = ("bilinearity", "lp2", "h1", "l42", "jordan", "zero-product", "order-unit")
FORMATS = ("json", "csv", "human")


@dataclass(frozen=True)
class CliConfig:
    command: str
    space_spec: str | None = None
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    resolution: int = DEFAULT_RESOLUTION
    tol: float = ABS_TOL
    fmt: str = "json"
    workers: int = 1
    verbose: int = 0
    csv_path: str | None = None
    p: float | None = None
    n: int | None = None
    target: str | None = None
    operands: tuple = ()

    @classmethod
    def from_args(cls, args):
        config = cls(
            command=args.command,
            space_spec=args.space,
            seed=args.seed,
            samples=args.samples,
            resolution=args.resolution,
            tol=args.tol,
            fmt=args.format,
            workers=args.workers,
            verbose=args.verbose,
            csv_path=getattr(args, "csv", None),
            p=getattr(args, "p", None),
            n=getattr(args, "n", None),
            target=getattr(args, "expression", None) or getattr(args, "name", None),
            operands=tuple(getattr(args, "operands", ())),
        )
        if config.seed < 0:
            raise InvalidGrid("The seed must be a nonnegative integer.")
        if config.samples < 1:
            raise InvalidGrid("At least one sample is needed.")
        if not config.tol > 0:
            raise InvalidGrid("The tolerance must be positive.")
        return config

    @property
    def space(self):
        if self.space_spec is None:
            raise InvalidSpace(f"'{self.command}' needs --space.")
        return parse_space_spec(self.space_spec)


def parse_space_spec(spec):
    """
    Parse lp:<p>:<dim>, hilbert:<dim>, weighted:<file.json> or h1.

    Parameters:
    - spec (str): The space spec.

    Returns:
    - SpaceDescriptor: The parsed space.
    """
    if spec == "h1":
        return SpaceDescriptor.h1_plane()
    kind, _, rest = spec.partition(":")
    try:
        if kind == "lp":
            p, dim = rest.split(":")
            return SpaceDescriptor.lp(math.inf if p == "inf" else float(p), int(dim))
        if kind == "hilbert":
            return SpaceDescriptor.hilbert(int(rest))
        if kind == "weighted":
            obj = json.loads(Path(rest).read_text())
            if isinstance(obj, list):
                return SpaceDescriptor.weighted(obj)
            return SpaceDescriptor.from_json({"kind": "weighted", **obj})
    except (ValueError, OSError) as exc:
        if isinstance(exc, InvalidSpace):
            raise
        raise InvalidSpace(f"Cannot parse space spec {spec!r}: {exc}") from exc
    raise InvalidSpace(f"Unknown space spec {spec!r}; use lp:<p>:<dim>, hilbert:<dim>, weighted:<file.json> or h1.")


def parse_element(space, literal):
    """Parse "[c1,...,cn];alpha" into an OrderElement of the space."""
    coords, sep, alpha = literal.rpartition(";")
    if not sep:
        raise InvalidElement(f"Element literal {literal!r} must look like \"[c1,...,cn];alpha\".")
    try:
        v = json.loads(coords)
        a = float(alpha)
    except ValueError as exc:
        raise InvalidElement(f"Cannot parse element literal {literal!r}.") from exc
    if not isinstance(v, list):
        raise InvalidElement(f"Coordinates of {literal!r} must be a JSON list.")
    return OrderElement(space, v, a)


# ================ Commands ================

def cmd_axioms(config):
    space = config.space
    report = axiom_suite(space, config.samples, config.seed, config.tol, config.workers, config.verbose > 0)
    return (EXIT_OK if report.consistent else EXIT_FINDING), report


def _expect_operands(config, count):
    if len(config.operands) != count:
        raise InvalidElement(f"'{config.target}' takes {count} operand(s), got {len(config.operands)}.")


def cmd_eval(config):
    space = config.space
    expression = config.target
    arity = 2 if expression == "circ" else 1
    _expect_operands(config, arity)
    elements = [parse_element(space, lit) for lit in config.operands]
    x = elements[0]

    if expression == "abs":
        result = absolute(x, config.tol).to_json()
    elif expression == "sqrt":
        result = sqrt_positive(x, config.tol).to_json()
    elif expression == "power":
        if config.n is None or config.n < 1:
            raise InvalidElement("'power' needs --n >= 1.")
        result = power(x, config.n).to_json()
    elif expression == "circ":
        result = circ(x, elements[1]).to_json()
    elif expression == "spectral":
        result = decompose(x).to_json()
    elif expression == "square":
        result = square(x).to_json()
    elif expression == "cover":
        result = absolute_cover(x, config.tol).to_json()
    else:
        result = cone_classify(x, config.tol).name

    return EXIT_OK, {"expression": expression, "space": space.to_json(), "operands": [e.to_json() for e in elements],
                     "result": result}


def cmd_campaign(config):
    name = config.target
    verbose = config.verbose > 0

    if name == "lp2":
        if config.p is None:
            raise InvalidGrid("'campaign lp2' needs --p.")
        certificate = lp2_triviality_campaign(
            config.p, GridSpec(resolution=config.resolution, tol=config.tol), verbose, keep_surface=config.csv_path is not None,
        )
        if config.csv_path is not None:
            write_defect_surface_csv(config.csv_path, certificate)
        return (EXIT_OK if certificate.consistent else EXIT_FINDING), certificate

    if name == "h1":
        report = h1_plane_campaign(config.samples, config.seed, config.tol, config.workers, verbose)
    elif name == "l42":
        report = l42_scaling_campaign(config.tol)
    elif name == "bilinearity":
        report = bilinearity_campaign(config.space, config.samples, config.seed, config.tol, config.workers, verbose)
    elif name == "jordan":
        report = jordan_campaign(config.space, config.samples, config.seed, config.tol, config.workers, verbose)
    elif name == "zero-product":
        report = zero_product_campaign(config.space, config.samples, config.seed, config.tol, config.workers, verbose)
    else:
        report = order_unit_suite(config.space, config.samples, config.seed, config.tol, workers=config.workers, verbose=verbose)
    return (EXIT_OK if report.consistent else EXIT_FINDING), report


def cmd_probe(config):
    report = strict_convexity_probe(config.space, config.samples, config.seed, config.tol)
    return (EXIT_OK if report.consistent else EXIT_FINDING), report


COMMANDS = {"axioms": cmd_axioms, "eval": cmd_eval, "campaign": cmd_campaign, "probe": cmd_probe}


# ================ Output ================

def _mark(ok):
    if os.environ.get("NO_COLOR"):
        return "ok  " if ok else "FAIL"
    return "\033[32m✓\033[0m" if ok else "\033[31m✗\033[0m"


def render_human(result):
    if isinstance(result, dict):
        return json.dumps(result, indent=2)
    data = result.to_json()
    lines = [f"=============== {data['campaign']} ==============="]
    if data.get("space") is not None:
        lines.append(f"space: {json.dumps(data['space'])}")
    if "axioms" in data:
        for axiom in data["axioms"]:
            expected = "info" if axiom["expected"] is None else ("pass" if axiom["expected"] else "fail")
            met = axiom["expected"] is None or axiom["pass"] == axiom["expected"]
            lines.append(
                f"{_mark(met)} {axiom['id']:<32} pass={str(axiom['pass']):<5} expected={expected:<4} "
                f"max_defect={axiom['max_defect']:.3e} checked={axiom['checked']}"
            )
    else:
        lines.append(f"resolution: {data['resolution']}")
        lines.append(f"min defect: {data['min_defect']:.6e} at {data['argmin']}")
        lines.append(f"{_mark(data['consistent'])} verdict {data['verdict']} (expected {data['expected']})")
    lines.append(f"=============== {'consistent' if data['consistent'] else 'INCONSISTENT'} ===============")
    return "\n".join(lines)


def write_csv(result, stream):
    writer = csv.writer(stream, lineterminator="\n")
    if isinstance(result, dict):
        writer.writerow(["key", "value"])
        for key, value in result.items():
            writer.writerow([key, json.dumps(value)])
        return
    data = result.to_json()
    if "axioms" in data:
        writer.writerow(["id", "pass", "expected", "max_defect", "checked"])
        for axiom in data["axioms"]:
            writer.writerow([axiom["id"], axiom["pass"], axiom["expected"], repr(axiom["max_defect"]), axiom["checked"]])
    else:
        writer.writerow(["key", "value"])
        for key, value in data.items():
            writer.writerow([key, json.dumps(value)])


def emit(result, fmt, stream=None):
    stream = stream if stream is not None else sys.stdout
    if fmt == "human":
        print(render_human(result), file=stream)
    elif fmt == "csv":
        write_csv(result, stream)
    elif isinstance(result, dict):
        print(json.dumps(result, indent=2), file=stream)
    else:
        print(result.dumps(), file=stream)


# ================ Entry point ================

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--space", help="lp:<p>:<dim>, hilbert:<dim>, weighted:<file.json> or h1")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    common.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION)
    common.add_argument("--tol", type=float, default=ABS_TOL)
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--workers", type=int, default=1, help="processes for sampling campaigns")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="spinx", description="Order unit spaces over normed spaces: checks and campaigns.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("axioms", parents=[common], help="absolutely ordered space axioms")

    ev = sub.add_parser("eval", parents=[common], help="evaluate one expression")
    ev.add_argument("expression", choices=EXPRESSIONS)
    ev.add_argument("operands", nargs="+", help='element literals "[c1,...,cn];alpha"')
    ev.add_argument("--n", type=int, help="exponent for power")

    camp = sub.add_parser("campaign", parents=[common], help="run a verification campaign")
    camp.add_argument("name", choices=CAMPAIGNS)
    camp.add_argument("--p", type=float, help="exponent for lp2")
    camp.add_argument("--csv", help="write the lp2 defect surface to this path")

    sub.add_parser("probe", parents=[common], help="strict convexity probe against the analytic verdict")
    return parser


def configure_logging(verbosity):
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    configure_logging(args.verbose)
    try:
        config = CliConfig.from_args(args)
        code, result = COMMANDS[config.command](config)
    except USAGE_ERRORS as exc:
        print(f"spinx: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DOMAIN_ERRORS as exc:
        print(f"spinx: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    emit(result, config.fmt)
    if code == EXIT_FINDING:
        logger.warning("%s: expectations not met", config.command)
    return code


if __name__ == "__main__":
    sys.exit(main())
