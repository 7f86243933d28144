"""
darbouxkit.api.app
~~~~~~~~~~~~~~~~~~

Factory da aplicação FastAPI.

Uso:
    uvicorn darbouxkit.api.app:create_app --factory --reload --port 8000
"""

import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI

from darbouxkit.analise.catalogo import CATALOGO
from darbouxkit.api.routes import analise, health
from darbouxkit.cli.comandos import COMANDOS
from darbouxkit.core.config import settings

logger = logging.getLogger("darbouxkit")


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Gerencia startup e shutdown da aplicação."""
    logger.info(
        "%s %s iniciada (%d sistemas no catálogo).",
        settings.app_name,
        settings.app_version,
        len(CATALOGO),
    )
    yield
    logger.info("%s encerrada.", settings.app_name)


def create_app() -> FastAPI:
    """Cria e configura a aplicação FastAPI."""

    # Sentry: rastreamento de erros em produção
    if settings.sentry_dsn:
        import sentry_sdk

        sentry_sdk.init(
            dsn=settings.sentry_dsn,
            traces_sample_rate=0.2,
            send_default_pii=False,
        )

    app = FastAPI(
        title=settings.app_name,
        description=(
            "API REST para análise de integrabilidade de Darboux de campos polinomiais.\n\n"
            "**Funcionalidades:**\n"
            f"- Comandos: {', '.join(COMANDOS)}\n"
            "- Aritmética exata sobre Q(i)\n"
            "- Catálogo de sistemas de referência com aliases\n"
        ),
        version=settings.app_version,
        docs_url="/docs",
        redoc_url="/redoc",
        lifespan=lifespan,
    )

    # Rotas
    app.include_router(health.router)
    app.include_router(analise.router)

    return app
