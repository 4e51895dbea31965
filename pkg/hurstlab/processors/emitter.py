"""
Serialización de registros a CSV (cabecera + una fila por registro) o JSON
({"meta": ..., "records": [...]}). Los números se escriben con 6 cifras
significativas; parsear y volver a emitir no altera la salida.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Type, Union
import io
import json
import logging
import math
import os
import sys
import tempfile

import pandas as pd
from pydantic import BaseModel

from hurstlab.exceptions import DataIOError
from hurstlab.models.schemas import OutputFormat

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 6
_FLOAT_FORMAT = f"%.{SIGNIFICANT_DIGITS}g"

Record = Union[BaseModel, Dict[str, Any]]


def round_significant(value: float) -> float:
    """Redondeo a 6 cifras significativas"""
    return float(_FLOAT_FORMAT % value)


def _as_row(record: Record) -> Dict[str, Any]:
    if isinstance(record, BaseModel):
        return record.model_dump(mode="json")
    return dict(record)


def _normalize(value: Any) -> Any:
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        if math.isnan(value):
            return None
        return round_significant(value)
    if isinstance(value, dict):
        return {k: _normalize(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_normalize(v) for v in value]
    return value


def _columns(rows: List[Dict[str, Any]], record_type: Optional[Type[BaseModel]]) -> List[str]:
    if record_type is not None and record_type.model_fields:
        columns = list(record_type.model_fields)
    else:
        columns = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    return columns


def emit(
    records: Sequence[Record],
    fmt: Union[OutputFormat, str] = OutputFormat.CSV,
    meta: Optional[Dict[str, Any]] = None,
    record_type: Optional[Type[BaseModel]] = None,
) -> bytes:
    """Serializa los registros en el formato pedido"""
    fmt = OutputFormat(fmt)
    rows = [_as_row(r) for r in records]
    if record_type is None and records and isinstance(records[0], BaseModel):
        record_type = type(records[0])

    if fmt == OutputFormat.JSON:
        payload = {
            "meta": _normalize(meta or {}),
            "records": [_normalize(row) for row in rows],
        }
        return (json.dumps(payload, indent=2, ensure_ascii=False) + "\n").encode("utf-8")

    frame = pd.DataFrame(rows, columns=_columns(rows, record_type))
    text = frame.to_csv(index=False, float_format=_FLOAT_FORMAT, lineterminator="\n")
    return text.encode("utf-8")


def parse_records(
    data: Union[bytes, str],
    fmt: Union[OutputFormat, str] = OutputFormat.CSV,
    record_type: Optional[Type[BaseModel]] = None,
) -> List[Record]:
    """Inverso de emit para la parte de registros"""
    fmt = OutputFormat(fmt)
    text = data.decode("utf-8") if isinstance(data, bytes) else data

    if fmt == OutputFormat.JSON:
        rows = json.loads(text)["records"]
    else:
        frame = pd.read_csv(io.StringIO(text), float_precision="round_trip", keep_default_na=False, na_values=[""])
        frame = frame.astype(object).where(frame.notna(), None)
        rows = frame.to_dict(orient="records")

    if record_type is None:
        return rows
    return [record_type.model_validate(row) for row in rows]


def parse_meta(data: Union[bytes, str]) -> Dict[str, Any]:
    """Bloque 'meta' de una salida JSON"""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    return json.loads(text)["meta"]


def _is_stdout(destination: Optional[Union[str, Path]]) -> bool:
    return destination is None or str(destination) == "-"


def write_output(data: bytes, destination: Optional[Union[str, Path]] = None) -> None:
    """Escribe la salida completa de una vez; None o '-' es stdout"""
    if _is_stdout(destination):
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    try:
        Path(destination).write_bytes(data)
    except OSError as e:
        raise DataIOError(f"no se pudo escribir {destination}: {e}") from e
    logger.info(f"Salida escrita en {destination} ({len(data)} bytes)")


def write_outputs(outputs: Sequence[Tuple[bytes, Optional[Union[str, Path]]]]) -> None:
    """Escribe varias salidas a la vez, o ninguna.

    Los archivos se preparan como temporales junto a su destino y solo se
    renombran cuando todos se han escrito; stdout va al final.
    """
    staged: List[Tuple[Path, Path]] = []
    try:
        for data, destination in outputs:
            if _is_stdout(destination):
                continue
            target = Path(destination)
            fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=target.parent)
            staged.append((Path(tmp_name), target))
            with os.fdopen(fd, "wb") as handle:
                handle.write(data)
    except OSError as e:
        for tmp, _ in staged:
            tmp.unlink(missing_ok=True)
        raise DataIOError(f"no se pudo escribir {destination}: {e}") from e

    for i, (tmp, target) in enumerate(staged):
        try:
            os.replace(tmp, target)
        except OSError as e:
            for pending, _ in staged[i:]:
                pending.unlink(missing_ok=True)
            raise DataIOError(f"no se pudo escribir {target}: {e}") from e
        logger.info(f"Salida escrita en {target}")

    for data, destination in outputs:
        if _is_stdout(destination):
            write_output(data, destination)
