"""
darbouxkit.api.routes.analise
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Endpoints de análise: os mesmos comandos da CLI sobre HTTP.

Respostas negativas (superfície não invariante, campo não tangente, ...) vêm
com status 200; o código de saída equivalente da CLI segue em `results.exit_code`.
"""

import asyncio
import logging

from fastapi import APIRouter, HTTPException, Path

from darbouxkit.analise.catalogo import buscar_por_nome, listar, resolver_sistema
from darbouxkit.cli.comandos import COMANDOS, run
from darbouxkit.core.exceptions import DarbouxKitError, ParametrosInvalidos
from darbouxkit.schemas.relatorio import (
    AnaliseRequest,
    CatalogoResponse,
    ErrorResponse,
    Relatorio,
    SistemaResumo,
    SystemSpec,
)

logger = logging.getLogger("darbouxkit")

router = APIRouter(prefix="/api/v1", tags=["Análise"])


@router.get(
    "/catalogo",
    response_model=CatalogoResponse,
    summary="Listar catálogo de sistemas",
    description="Lista os sistemas de referência disponíveis pelo nome ou alias.",
)
async def get_catalogo() -> CatalogoResponse:
    """Lista todos os sistemas do catálogo."""
    itens = [s.resumo() for s in listar()]
    return CatalogoResponse(sistemas=itens, total=len(itens))


@router.get(
    "/catalogo/{nome}",
    response_model=SistemaResumo,
    responses={404: {"model": ErrorResponse}},
    summary="Detalhar sistema do catálogo",
)
async def get_sistema(nome: str) -> SistemaResumo:
    sistema = buscar_por_nome(nome)
    if sistema is None:
        raise HTTPException(status_code=404, detail=f"Sistema '{nome}' não encontrado.")
    return sistema.resumo()


@router.post(
    "/analise/{comando}",
    response_model=Relatorio,
    responses={400: {"model": ErrorResponse}, 422: {"model": ErrorResponse}},
    summary="Executar análise",
    description=f"Executa um dos comandos {', '.join(COMANDOS)} sobre o sistema informado.",
)
async def post_analise(
    corpo: AnaliseRequest,
    comando: str = Path(..., description="Comando a executar"),
) -> Relatorio:
    """Executa um comando de análise em uma thread de trabalho."""
    try:
        spec: SystemSpec = corpo.sistema or resolver_sistema(corpo.nome or "")
        p = corpo.parametros
        relatorio, codigo = await asyncio.to_thread(
            run, comando, spec, basis=p.basis, surface=p.surface, g=p.g, h=p.h
        )
    except ParametrosInvalidos as e:
        raise HTTPException(status_code=400, detail=str(e))
    except DarbouxKitError as e:
        logger.warning("Análise %s falhou: %s", comando, e)
        raise HTTPException(status_code=422, detail=str(e))

    relatorio.results.setdefault("exit_code", codigo)
    return relatorio
