"""
Línea de comandos de hurstlab.

    hurstlab stats   --input btc.csv
    hurstlab hurst   --input btc.csv --method rs --start 0 --window 500
    hurstlab roll    --input btc.csv --format json --split-date 2014-01-01
    hurstlab compare --input btc.csv
    hurstlab synth fgn --n 1434 --hurst 0.7 --seed 1 --output fgn.csv
    hurstlab serve

stdout lleva solo los datos emitidos; los logs van a stderr. Cualquier error
termina con estado 1 y una única línea JSON {"error": ..., "detail": ...} en
stderr, sin salida parcial.
"""

from typing import List, Optional
import argparse
import json
import logging
import sys

from pydantic import ValidationError

from hurstlab import __version__
from hurstlab.analysis.descriptive import describe
from hurstlab.analysis.synth import fgn_prices, gen_random_walk_prices
from hurstlab.config import (
    DEFAULT_FORMAT, DEFAULT_METHOD, DEFAULT_POLY_ORDER, DEFAULT_SCALES,
    DEFAULT_SERIES, DEFAULT_STEP, DEFAULT_WINDOW, settings
)
from hurstlab.exceptions import HurstLabError
from hurstlab.models.domain import FgnSpec, HurstMethod, SeriesKind
from hurstlab.models.schemas import (
    ComparisonRecord, CsvSchema, ErrorResponse, HurstRecord, OutputFormat, RunConfig, SeriesRecord,
    StatRow, stats_table
)
from hurstlab.processors.csv_io import emit_prices
from hurstlab.processors.emitter import emit, write_outputs
from hurstlab.services.pipeline_service import PipelineService, derive_series, series_records
from hurstlab.utils.helpers import parse_iso_date, parse_scales, setup_logging

logger = logging.getLogger(__name__)


def _add_input_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="CSV OHLC con cabecera y fechas yyyy-mm-dd")
    p.add_argument("--date-col", default="date")
    p.add_argument("--close-col", default="close")
    p.add_argument("--high-col", default="high")
    p.add_argument("--low-col", default="low")
    p.add_argument("--delimiter", default=",")


def _add_estimator_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("--series", choices=[k.value for k in SeriesKind], default=DEFAULT_SERIES)
    p.add_argument("--method", choices=[m.value for m in HurstMethod], default=DEFAULT_METHOD)
    p.add_argument("--scales", default=",".join(str(s) for s in DEFAULT_SCALES),
                   help="Tamaños de bloque separados por comas")
    p.add_argument("--poly-order", type=int, default=DEFAULT_POLY_ORDER, help="Orden del ajuste DFA (1-3)")


def _add_output_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=[f.value for f in OutputFormat], default=DEFAULT_FORMAT)
    p.add_argument("--output", default="-", help="Ruta de salida o '-' para stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hurstlab",
        description="Exponente de Hurst deslizante (R/S y DFA) sobre series OHLC",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default="INFO", help="Nivel de log (a stderr)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="Estadística descriptiva de rendimientos y volatilidad")
    _add_input_arguments(p)
    _add_output_arguments(p)
    p.add_argument("--series", choices=[k.value for k in SeriesKind], default=DEFAULT_SERIES,
                   help="Serie exportada con --emit-series")
    p.add_argument("--emit-series", action="store_true", help="Emite la serie derivada en lugar de la tabla")

    p = sub.add_parser("hurst", help="Una estimación de H sobre una ventana")
    _add_input_arguments(p)
    _add_estimator_arguments(p)
    _add_output_arguments(p)
    p.add_argument("--start", type=int, default=0, help="Índice de la primera observación")
    p.add_argument("--window", type=int, default=None, help="Longitud (por defecto, hasta el final)")

    p = sub.add_parser("roll", help="Serie de Hurst sobre ventanas deslizantes")
    _add_input_arguments(p)
    _add_estimator_arguments(p)
    _add_output_arguments(p)
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p.add_argument("--step", type=int, default=DEFAULT_STEP)
    p.add_argument("--split-date", default=None, help="Resumen antes/después de yyyy-mm-dd")
    p.add_argument("--stats-output", default=None, help="Tabla de estadísticos (CSV) para la salida CSV")
    p.add_argument("--workers", type=int, default=1, help="Hilos para las ventanas")

    p = sub.add_parser("compare", help="DFA frente a R/S multiescala en las mismas ventanas")
    _add_input_arguments(p)
    _add_estimator_arguments(p)
    _add_output_arguments(p)
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p.add_argument("--step", type=int, default=DEFAULT_STEP)
    p.add_argument("--stats-output", default=None)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("synth", help="Genera series de prueba con H conocido")
    kinds = p.add_subparsers(dest="kind", required=True)
    fgn = kinds.add_parser("fgn", help="Precios cuyos rendimientos ×100 son un fGn")
    fgn.add_argument("--n", type=int, required=True, help="Número de rendimientos")
    fgn.add_argument("--hurst", type=float, required=True)
    fgn.add_argument("--sigma", type=float, default=1.0)
    fgn.add_argument("--seed", type=int, default=None)
    fgn.add_argument("--range-vol", type=float, default=0.01)
    fgn.add_argument("--output", default="-")
    walk = kinds.add_parser("prices", help="Paseo aleatorio gaussiano de precios")
    walk.add_argument("--n", type=int, required=True, help="Número de filas")
    walk.add_argument("--drift", type=float, default=0.0)
    walk.add_argument("--vol", type=float, default=0.02)
    walk.add_argument("--seed", type=int, default=None)
    walk.add_argument("--output", default="-")

    p = sub.add_parser("serve", help="Arranca la API HTTP")
    p.add_argument("--host", default=settings.api_host)
    p.add_argument("--port", type=int, default=settings.api_port)

    return parser


def _schema(args: argparse.Namespace) -> CsvSchema:
    return CsvSchema(
        date_column=args.date_col,
        close_column=args.close_col,
        high_column=args.high_col,
        low_column=args.low_col,
        delimiter=args.delimiter,
    )


def build_config(args: argparse.Namespace) -> RunConfig:
    """Traduce los argumentos a un RunConfig validado"""
    split_date = getattr(args, "split_date", None)
    values = dict(
        input=args.input,
        series=args.series,
        method=args.method,
        scales=parse_scales(args.scales),
        poly_order=args.poly_order,
        format=args.format,
        csv_schema=_schema(args),
        split_date=parse_iso_date(split_date) if split_date else None,
        n_jobs=getattr(args, "workers", 1),
    )
    if getattr(args, "window", None) is not None:
        values["window"] = args.window
    if getattr(args, "step", None) is not None:
        values["step"] = args.step
    return RunConfig(**values)


def _stats_bytes(rows: List[StatRow]) -> bytes:
    return emit(rows, OutputFormat.CSV, record_type=StatRow)


def cmd_stats(args: argparse.Namespace) -> List[tuple]:
    """Tabla descriptiva (una columna por serie) o la serie derivada"""
    service = PipelineService()
    prices = service.load_prices(RunConfig(input=args.input, csv_schema=_schema(args)))
    quality = prices.quality_report()
    meta = {"quality": quality.model_dump(mode="json")}

    if args.emit_series:
        series = derive_series(prices, args.series)
        records = series_records(series)
        meta["series"] = args.series
        return [(emit(records, args.format, meta, SeriesRecord), args.output)]

    columns = {
        kind.value: describe(derive_series(prices, kind).values) for kind in SeriesKind
    }
    return [(emit(stats_table(columns), args.format, meta, StatRow), args.output)]


def cmd_hurst(args: argparse.Namespace) -> List[tuple]:
    """Una estimación sobre [start, start + window)"""
    config = build_config(args)
    window, estimate = PipelineService().single_estimate(config, args.start, args.window)
    record = {
        "anchor_date": window.start_date.isoformat() if window.start_date else window.start_index,
        "h": estimate.h,
        "r_squared": estimate.r_squared,
        "method": estimate.method.value,
        "std_err": estimate.std_err,
        "window_length": estimate.window_length,
    }
    meta = {"config": config.model_dump(mode="json"), "estimate": estimate.model_dump(mode="json")}
    return [(emit([record], args.format, meta), args.output)]


def cmd_roll(args: argparse.Namespace) -> List[tuple]:
    """Pipeline completo: estadística de la serie, Hurst deslizante y resumen"""
    config = build_config(args)
    report = PipelineService(n_jobs=config.n_jobs).run_pipeline(config)
    outputs = [(emit(report.records, config.format, report.meta(), HurstRecord), args.output)]
    if args.stats_output:
        table = stats_table({config.series.value: report.series_stats, "hurst": report.hurst_stats})
        outputs.append((_stats_bytes(table), args.stats_output))
    return outputs


def cmd_compare(args: argparse.Namespace) -> List[tuple]:
    """DFA y R/S multiescala emparejados por ancla"""
    config = build_config(args)
    report = PipelineService(n_jobs=config.n_jobs).compare_methods(config)
    outputs = [(emit(report.records, config.format, report.meta(), ComparisonRecord), args.output)]
    if args.stats_output:
        table = stats_table({"dfa": report.dfa_stats, "rs": report.rs_stats})
        outputs.append((_stats_bytes(table), args.stats_output))
    return outputs


def cmd_synth(args: argparse.Namespace) -> List[tuple]:
    """Precios sintéticos en el formato que lee load_csv"""
    if args.kind == "fgn":
        spec = FgnSpec(n=args.n, h=args.hurst, sigma=args.sigma, seed=args.seed)
        prices = fgn_prices(spec, range_vol=args.range_vol)
    else:
        prices = gen_random_walk_prices(args.n, drift=args.drift, vol=args.vol, seed=args.seed)
    return [(emit_prices(prices).encode("utf-8"), args.output)]


def cmd_serve(args: argparse.Namespace) -> List[tuple]:
    import uvicorn
    uvicorn.run("hurstlab.main:app", host=args.host, port=args.port, log_level="info")
    return []


COMMANDS = {
    "stats": cmd_stats,
    "hurst": cmd_hurst,
    "roll": cmd_roll,
    "compare": cmd_compare,
    "synth": cmd_synth,
    "serve": cmd_serve,
}


def _validation_detail(exc: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in exc.errors()
    )


def _fail(kind: str, detail: str) -> int:
    """Única línea de error en stderr"""
    body = ErrorResponse(error=kind, detail=detail).body()
    sys.stderr.write(json.dumps(body, ensure_ascii=False) + "\n")
    return 1


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level, stream=sys.stderr)

    try:
        # todo se calcula antes de escribir: sin salida parcial
        write_outputs(COMMANDS[args.command](args))
    except HurstLabError as e:
        return _fail(e.kind, e.message)
    except ValidationError as e:
        return _fail("validation", _validation_detail(e))
    except ValueError as e:
        return _fail("argument", str(e))

    logger.info(f"Comando {args.command} completado")
    return 0


if __name__ == "__main__":
    sys.exit(main())
