import pytest
import sys
import os
from datetime import date

# Agregar el directorio raíz al path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from hurstlab.exceptions import RowParseError, ZeroVarianceError
from hurstlab.utils.helpers import parse_iso_date, parse_scales


class TestHelpers:
    """Tests para las funciones de utilidad"""

    def test_parse_scales(self):
        assert parse_scales("4,8,16,32,64,128") == (4, 8, 16, 32, 64, 128)
        assert parse_scales(" 4, 8 ,") == (4, 8)
        with pytest.raises(ValueError):
            parse_scales("4,ocho")

    def test_parse_iso_date(self):
        assert parse_iso_date("2011-08-18") == date(2011, 8, 18)
        with pytest.raises(ValueError):
            parse_iso_date("18/08/2011")


class TestErrors:
    """Tests para la jerarquía de errores"""

    def test_error_payload(self):
        error = ZeroVarianceError("ventana constante")
        assert error.to_dict() == {"error": "zero_variance", "detail": "ventana constante"}

    def test_row_error_carries_line(self):
        error = RowParseError("valor no numérico", line=12)
        assert error.line == 12
        assert error.message.startswith("línea 12")
        assert not isinstance(error, ValueError)


if __name__ == "__main__":
    pytest.main([__file__])
