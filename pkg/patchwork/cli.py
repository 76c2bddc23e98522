"""
Interface de linha de comando do motor de patchworking.

Subcomandos:
- validate <tri> [<rps>]            - valida triangulação e estrutura de fase
- homology <tri> <rps>              - homologia e censo da T-variedade
- glued <tri> [--betti]             - complexo do espaço colado
- bounds <tri>                      - cotas e grafo dual
- intersect <tri> <s1> <s2> <o> -o  - interseção estável de duas distribuições
- maxcurve <d> [--census]           - família maximal em dΔ3
- export <tri> <rps> --format       - malha OFF/OBJ
- schema <report>                   - JSON Schema de um relatório
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, NoReturn, Optional, Sequence

from pydantic import BaseModel

from patchwork.adapters.file_adapter import (
    load_orientation,
    load_phase_structure,
    load_signs,
    load_triangulation,
    save_orientation,
    save_phase_structure,
    save_signs,
    save_triangulation,
)
from patchwork.adapters.mesh_adapter import export_mesh
from patchwork.core.config import configure_logging, get_app_info, get_limits_config
from patchwork.core.exceptions import (
    PatchworkException,
    create_error_response,
    get_exit_code_for_exception,
)
from patchwork.domain.bounds import bounds_report
from patchwork.domain.glued_space import betti_glued, build_glued
from patchwork.domain.homology import barycentric_betti, betti_f2
from patchwork.domain.lattice import validate_triangulation
from patchwork.domain.maximal_curve import (
    build_family,
    closed_form_census,
    cycle_census,
    floor_triangulation,
    verify_maximality,
)
from patchwork.domain.phase_structure import from_sign_distribution, validate_rps
from patchwork.domain.stable_intersection import intersect
from patchwork.domain.tmanifold import (
    build_from_structure,
    cell_census,
    connected_components,
    is_closed_manifold,
)
from patchwork.schemas.report_schemas import (
    REPORT_SCHEMAS,
    CellCensusResponse,
    ExportResponse,
    GluedResponse,
    HomologyResponse,
    IntersectResponse,
    MaxCurveResponse,
    ValidateResponse,
)

logger = logging.getLogger(__name__)


class CommandResult:
    """Relatório de um subcomando e o código de saída correspondente."""

    def __init__(
        self,
        report: Optional[BaseModel],
        exit_code: int = 0,
        text: Optional[str] = None,
    ):
        self.report = report
        self.exit_code = exit_code
        self.text = text


def _render_table(report: BaseModel) -> str:
    lines = []
    for key, value in report.model_dump(mode="json").items():
        if isinstance(value, dict):
            lines.append(f"{key}:")
            lines += [f"  {k:<28} {v}" for k, v in value.items()]
        else:
            lines.append(f"{key:<30} {value}")
    return "\n".join(lines)


# === Subcomandos ===


def cmd_validate(args: argparse.Namespace) -> CommandResult:
    tri = load_triangulation(args.triangulation)
    tri_report = validate_triangulation(tri)
    rps_report = None
    if args.phase_structure:
        rps_report = validate_rps(tri, load_phase_structure(args.phase_structure, tri))
    valid = tri_report.valid and (rps_report is None or rps_report.valid)
    report = ValidateResponse(
        valid=valid, triangulation=tri_report, phase_structure=rps_report
    )
    return CommandResult(report, 0 if valid else 1)


def cmd_homology(args: argparse.Namespace) -> CommandResult:
    tri = load_triangulation(args.triangulation)
    tm = build_from_structure(load_phase_structure(args.phase_structure, tri))
    components, _ = connected_components(tm)
    report = HomologyResponse(
        dim=tm.dim,
        codim=tm.codim,
        cell_counts=tm.complex.counts(),
        betti=betti_f2(tm.complex),
        components=components,
        euler_characteristic=tm.complex.euler_characteristic(),
        closed_manifold=is_closed_manifold(tm),
        census=CellCensusResponse.from_census(cell_census(tm)),
        oracle_betti=barycentric_betti(tm.complex),
    )
    return CommandResult(report)


def cmd_glued(args: argparse.Namespace) -> CommandResult:
    gc = build_glued(load_triangulation(args.triangulation))
    report = GluedResponse(
        dim=gc.tri.n,
        cell_counts=gc.complex.counts(),
        euler_characteristic=gc.complex.euler_characteristic(),
        betti=betti_glued(gc) if args.betti else None,
    )
    return CommandResult(report)


def cmd_bounds(args: argparse.Namespace) -> CommandResult:
    return CommandResult(bounds_report(load_triangulation(args.triangulation)))


def cmd_intersect(args: argparse.Namespace) -> CommandResult:
    tri = load_triangulation(args.triangulation)
    e1 = from_sign_distribution(tri, load_signs(args.signs1, tri))
    e2 = from_sign_distribution(tri, load_signs(args.signs2, tri))
    result = intersect(e1, e2, load_orientation(args.orientation, tri))
    save_phase_structure(result, args.output)
    report = IntersectResponse(
        codim=result.codim,
        simplices=len(result.assignments),
        valid=validate_rps(tri, result).valid,
        output=str(args.output),
    )
    return CommandResult(report, 0 if report.valid else 2)


def cmd_maxcurve(args: argparse.Namespace) -> CommandResult:
    fd = floor_triangulation(args.degree)
    sigma, curve = build_family(fd)
    verdict = verify_maximality(fd, (sigma, curve))
    census = cycle_census(fd, curve, classify=True) if args.census else None

    exported: list[str] = []
    if args.export_dir:
        out = Path(args.export_dir)
        out.mkdir(parents=True, exist_ok=True)
        save_triangulation(fd.triangulation, out / "triangulation.json")
        save_signs(fd.mu, out / "signs.json")
        save_orientation(fd.orientation, out / "orientation.json")
        save_phase_structure(curve.rps, out / "curve.json")
        export_mesh(sigma, "off", out / "surface.off")
        export_mesh(curve, "obj", out / "curve.obj")
        if census is not None:
            (out / "census.json").write_text(census.model_dump_json(indent=2) + "\n")
        exported = sorted(str(p) for p in out.iterdir())

    report = MaxCurveResponse(
        d=fd.d,
        tetrahedra=fd.triangulation.volume,
        verdict=verdict,
        surface_betti=betti_f2(sigma.complex),
        census=census,
        closed_form={f.value: c for f, c in closed_form_census(fd.d).items()},
        exported=exported,
    )
    return CommandResult(report)


def cmd_export(args: argparse.Namespace) -> CommandResult:
    tri = load_triangulation(args.triangulation)
    tm = build_from_structure(load_phase_structure(args.phase_structure, tri))
    text = export_mesh(tm, args.format, args.output)
    components, _ = connected_components(tm)
    report = ExportResponse(
        format=args.format,
        dim=tm.dim,
        components=components,
        output=str(args.output) if args.output else None,
    )
    return CommandResult(report, text=None if args.output else text)


def cmd_schema(args: argparse.Namespace) -> CommandResult:
    schema = REPORT_SCHEMAS[args.report].model_json_schema()
    return CommandResult(None, text=json.dumps(schema, indent=2))


# === Parser ===


def _degree(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"degree must be an integer, got {text!r}"
        ) from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"degree must be >= 1, got {value}")
    return value


class _Parser(argparse.ArgumentParser):
    """Erros de uso saem com 1, como os demais erros de entrada."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    info = get_app_info()
    parser = _Parser(
        prog="patchwork", description=info["description"]
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {info['version']}"
    )
    parser.add_argument(
        "--json", action="store_true", help="machine-readable JSON reports"
    )
    parser.add_argument("--log-level", help="override LOG_LEVEL for this run")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("validate", cmd_validate, "validate a triangulation and a phase structure")
    p.add_argument("triangulation")
    p.add_argument("phase_structure", nargs="?")

    p = add("homology", cmd_homology, "homology of the T-manifold of a phase structure")
    p.add_argument("triangulation")
    p.add_argument("phase_structure")

    p = add("glued", cmd_glued, "cell complex of the glued space")
    p.add_argument("triangulation")
    p.add_argument("--betti", action="store_true", help="compute the F2 Betti numbers")

    p = add("bounds", cmd_bounds, "dual graph, bounds and Hodge numbers")
    p.add_argument("triangulation")

    p = add("intersect", cmd_intersect, "stable intersection of two sign distributions")
    p.add_argument("triangulation")
    p.add_argument("signs1")
    p.add_argument("signs2")
    p.add_argument("orientation")
    p.add_argument(
        "-o", "--output", required=True, help="phase structure file to write"
    )

    p = add("maxcurve", cmd_maxcurve, "maximal curve family on the floor triangulation")
    p.add_argument("degree", type=_degree)
    p.add_argument("--census", action="store_true", help="classify the cycles")
    p.add_argument("--export-dir", help="write triangulation, signs, meshes and census")

    p = add("export", cmd_export, "OFF/OBJ mesh of a T-manifold in dimension 3")
    p.add_argument("triangulation")
    p.add_argument("phase_structure")
    p.add_argument("--format", choices=["off", "obj"], required=True)
    p.add_argument("-o", "--output", help="mesh file (stdout when omitted)")

    p = add("schema", cmd_schema, "JSON Schema of a report")
    p.add_argument("report", choices=sorted(REPORT_SCHEMAS))
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Executa um subcomando e devolve o código de saída."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    logger.debug("Limits: %s", get_limits_config())

    try:
        result = args.handler(args)
    except PatchworkException as e:
        logger.error("%s failed: %s", args.command, e.message)
        payload = create_error_response(e)
        if args.json:
            print(json.dumps(payload), file=sys.stderr)
        else:
            code, detail = payload["error_code"], payload["detail"]
            print(f"error [{code}]: {detail}", file=sys.stderr)
        return get_exit_code_for_exception(e)
    except Exception as e:
        logger.exception("%s failed with an unexpected error", args.command)
        payload = {"detail": str(e), "error_code": None, "error_type": type(e).__name__}
        if args.json:
            print(json.dumps(payload), file=sys.stderr)
        else:
            print(f"error: {payload['detail']}", file=sys.stderr)
        return get_exit_code_for_exception(e)

    if result.text is not None:
        print(result.text, end="" if result.text.endswith("\n") else "\n")
    elif result.report is not None:
        if args.json:
            print(result.report.model_dump_json(indent=2))
        else:
            print(_render_table(result.report))
    return result.exit_code


def run() -> None:
    sys.exit(main())
