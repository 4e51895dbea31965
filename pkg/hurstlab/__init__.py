# Estimación de memoria larga (exponente de Hurst) en series financieras
__version__ = "1.0.0"
