"""Jerarquía de errores del paquete.

Ninguna clase hereda de ValueError: los validadores de pydantic dejan pasar
estas excepciones tal cual en lugar de envolverlas en un ValidationError.
"""


class HurstLabError(Exception):
    """Excepción base"""
    kind = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def to_dict(self) -> dict:
        return {"error": self.kind, "detail": self.message}


class EmptyInputError(HurstLabError):
    """La serie o el archivo no contiene observaciones"""
    kind = "empty_input"


class InsufficientDataError(HurstLabError):
    """Hay menos observaciones de las que requiere el cálculo"""
    kind = "insufficient_data"


class PriceDomainError(HurstLabError):
    """Valor fuera de dominio (precio no positivo, valor no finito)"""
    kind = "domain"


class BoundsError(HurstLabError):
    """Índices fuera de rango"""
    kind = "bounds"


class ZeroVarianceError(HurstLabError):
    """Ventana constante: la desviación estándar es cero"""
    kind = "zero_variance"


class DegenerateSeriesError(HurstLabError):
    """Serie sin varianza para estadística descriptiva"""
    kind = "degenerate_series"


class ScaleError(HurstLabError):
    """Tamaño de bloque o conjunto de escalas inválido"""
    kind = "scale"


class DegenerateFluctuationError(HurstLabError):
    """F(m) = 0 en alguna escala, el logaritmo no está definido"""
    kind = "degenerate_fluctuation"


class NumericalError(HurstLabError):
    """Fallo numérico (ajuste singular, autovalor negativo)"""
    kind = "numerical"


class SchemaError(HurstLabError):
    """Esquema CSV inválido o columna ausente"""
    kind = "schema"


class RowParseError(HurstLabError):
    """Celda no interpretable en el CSV"""
    kind = "row_parse"

    def __init__(self, message: str, line: int):
        super().__init__(f"línea {line}: {message}")
        self.line = line


class OrderingError(HurstLabError):
    """Fechas no estrictamente crecientes"""
    kind = "ordering"


class DataIOError(HurstLabError):
    """No se pudo leer la entrada o escribir la salida"""
    kind = "io"
