from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import ValidationError
import logging
from contextlib import asynccontextmanager

from hurstlab import __version__
from hurstlab.config import (
    DEFAULT_POLY_ORDER, DEFAULT_SCALES, DEFAULT_STEP, DEFAULT_WINDOW, settings
)
from hurstlab.exceptions import HurstLabError
from hurstlab.models.schemas import ErrorResponse
from hurstlab.api.routes import router
from hurstlab.utils.helpers import setup_logging

# Configurar logging
setup_logging(settings.log_level, settings.log_file)

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Maneja el ciclo de vida de la aplicación"""
    logger.info("Iniciando aplicación...")
    logger.info(f"Límite de puntos por serie: {settings.max_points}, workers: {settings.n_jobs}")
    yield
    logger.info("Cerrando aplicación...")


# Crear aplicación FastAPI
app = FastAPI(
    title="HurstLab",
    description="""
    API para estimar el exponente de Hurst de series financieras.

    ## Características

    * **Estadística descriptiva**: momentos, mediana y contraste de Jarque-Bera
    * **Estimadores**: R/S clásico, R/S multiescala y DFA de orden 1 a 3
    * **Ventanas deslizantes**: serie temporal de H con huecos explícitos
    * **Pipeline CSV**: de precios OHLC a la serie de H y su resumen
    * **Sintéticos**: ruido gaussiano fraccional con H conocido

    ## Endpoints Principales

    * `POST /api/v1/stats` - Estadística descriptiva
    * `POST /api/v1/hurst` - Una estimación de H
    * `POST /api/v1/roll` - Hurst deslizante
    * `POST /api/v1/pipeline` - Pipeline sobre un CSV subido
    * `POST /api/v1/synth/fgn` - Generador fGn
    """,
    version=__version__,
    license_info={
        "name": "MIT",
        "url": "https://opensource.org/licenses/MIT"
    },
    lifespan=lifespan
)

# Configurar CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Incluir rutas
app.include_router(router)


# Manejo de excepciones global
@app.exception_handler(HurstLabError)
async def hurstlab_exception_handler(request, exc: HurstLabError):
    """Errores del dominio: datos o parámetros inválidos"""
    logger.warning(f"Error de cálculo ({exc.kind}): {exc.message}")
    return JSONResponse(status_code=422, content=ErrorResponse(**exc.to_dict()).body())


@app.exception_handler(ValidationError)
async def validation_exception_handler(request, exc: ValidationError):
    """Modelos construidos dentro de los endpoints"""
    logger.warning(f"Validación fallida: {exc.error_count()} errores")
    return JSONResponse(
        status_code=422,
        content=ErrorResponse(error="validation", detail=str(exc)).body()
    )


@app.exception_handler(HTTPException)
async def http_exception_handler(request, exc):
    """Maneja excepciones HTTP"""
    logger.error(f"Excepción HTTP {exc.status_code}: {exc.detail}")
    return JSONResponse(
        status_code=exc.status_code,
        content=ErrorResponse(error="http", detail=str(exc.detail), status_code=exc.status_code).body()
    )


@app.exception_handler(Exception)
async def global_exception_handler(request, exc):
    """Maneja excepciones globales"""
    logger.error(f"Excepción no manejada: {str(exc)}")
    return JSONResponse(
        status_code=500,
        content=ErrorResponse(
            error="Error interno del servidor",
            detail=str(exc) if settings.debug else "Contacta al administrador"
        ).body()
    )


# Endpoints adicionales
@app.get("/")
async def root():
    """Endpoint raíz con información de la API"""
    return {
        "service": "HurstLab",
        "version": __version__,
        "description": "Estimación del exponente de Hurst por R/S y DFA",
        "status": "running",
        "docs": "/docs",
        "redoc": "/redoc",
        "health": "/health"
    }


@app.get("/health")
async def health_check():
    """Endpoint de salud del sistema"""
    return {
        "status": "healthy",
        "service": "HurstLab",
        "version": __version__,
    }


@app.get("/config")
async def get_config():
    """Parámetros por defecto y límites del servicio"""
    return {
        "window": DEFAULT_WINDOW,
        "step": DEFAULT_STEP,
        "scales": list(DEFAULT_SCALES),
        "poly_order": DEFAULT_POLY_ORDER,
        "max_points": settings.max_points,
        "n_jobs": settings.n_jobs,
        "debug": settings.debug
    }


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(
        "hurstlab.main:app",
        host=settings.api_host,
        port=settings.api_port,
        reload=settings.debug,
        log_level="info"
    )
