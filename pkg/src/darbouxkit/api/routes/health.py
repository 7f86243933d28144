"""
darbouxkit.api.routes.health
~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Health check: versões da pilha algébrica e um autoteste exato curto (o
certificado de tangência do sistema prop11, K = -2y).
"""

import logging
from functools import lru_cache

import numpy as np
import sympy
from fastapi import APIRouter

from darbouxkit import __version__
from darbouxkit.algebra.polinomio import SphereContext
from darbouxkit.analise.campo import PolyVectorField, check_on_sphere
from darbouxkit.analise.catalogo import CATALOGO
from darbouxkit.cli.parser import parse_poly
from darbouxkit.core.config import settings
from darbouxkit.core.exceptions import DarbouxKitError
from darbouxkit.schemas.relatorio import HealthResponse

logger = logging.getLogger("darbouxkit")

router = APIRouter(tags=["Health"])


@lru_cache(maxsize=1)
def autoteste() -> bool:
    """Confere X(G) = -2y·G para o sistema prop11."""
    sistema = CATALOGO["prop11"]
    nomes = sistema.variaveis
    try:
        X = PolyVectorField([parse_poly(c, nomes) for c in sistema.componentes])
        certificado = check_on_sphere(X, SphereContext(2))
    except DarbouxKitError:
        logger.exception("Autoteste do health check falhou.")
        return False
    return certificado.cofator == parse_poly("-2*y", nomes)


@router.api_route("/health", methods=["GET", "HEAD"], response_model=HealthResponse)
async def health_check() -> HealthResponse:
    ok = autoteste()
    return HealthResponse(
        status="ok" if ok else "degradado",
        versao=settings.app_version,
        servico=settings.app_name,
        darbouxkit=__version__,
        sympy=sympy.__version__,
        numpy=np.__version__,
        sistemas_catalogo=len(CATALOGO),
        autoteste=ok,
    )
