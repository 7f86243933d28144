"""
darbouxkit.analise.numerico
~~~~~~~~~~~~~~~~~~~~~~~~~~~

Validação cruzada em ponto flutuante: órbitas por Runge-Kutta de quarta ordem
(passo fixo), confinamento de órbitas em superfícies invariantes e constância de
funções de Darboux ao longo das órbitas.

Lotes de tentativas independentes rodam como tarefas asyncio limitadas por um
semáforo, cada uma numa thread de trabalho.
"""

import asyncio
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
import sympy

from darbouxkit.algebra.polinomio import MultiPoly, SphereContext, nomes_padrao
from darbouxkit.analise.campo import PolyVectorField
from darbouxkit.analise.darboux import (
    DarbouxFunction,
    RealFactorDescription,
    formas_reais,
)
from darbouxkit.analise.superficies import ExponentialFactor, InvariantSurface
from darbouxkit.core.exceptions import (
    DivergenciaNumerica,
    ParametrosInvalidos,
    SemPontosAmostrais,
)

logger = logging.getLogger("darbouxkit")

TOL_ESFERA_INICIAL = 1e-12
TOL_DERIVA = 1e-8
TOL_NUMERICA = 1e-6
FAIXA_GUARDA = 1e-9
PASSO_PADRAO = 1e-3
HORIZONTE_PADRAO = 10.0
TENTATIVAS_PADRAO = 10
MAX_CONCORRENCIA = 4

Avaliador = Callable[[np.ndarray], np.ndarray]


# ============================================================================
# Avaliação numérica de polinômios
# ============================================================================


def _simbolos(nvars: int) -> Tuple[sympy.Symbol, ...]:
    return sympy.symbols(f"u0:{nvars}")


def avaliador(p: MultiPoly) -> Avaliador:
    """Função numpy de p; aceita um ponto (N,) ou uma matriz de pontos (T, N)."""
    simbolos = _simbolos(p.nvars)
    funcao = sympy.lambdify(simbolos, p.to_sympy(simbolos), modules="numpy")

    def avaliar(pontos: np.ndarray) -> np.ndarray:
        pontos = np.asarray(pontos)
        return np.broadcast_to(funcao(*pontos.T), pontos.shape[:-1])

    return avaliar


def _campo_numerico(X: PolyVectorField) -> Callable[[np.ndarray], np.ndarray]:
    simbolos = _simbolos(X.nvars)
    funcao = sympy.lambdify(
        simbolos, [p.to_sympy(simbolos) for p in X.components], modules="numpy"
    )

    def avaliar(estado: np.ndarray) -> np.ndarray:
        return np.array(funcao(*estado), dtype=estado.dtype)

    return avaliar


# ============================================================================
# Integração
# ============================================================================


@dataclass
class Orbit:
    """Amostras (t, ponto) com passo fixo; deriva = max |G| antes da renormalização."""

    amostras: pd.DataFrame
    passo: float
    deriva: Optional[float] = None
    sinalizada: bool = False

    @property
    def pontos(self) -> np.ndarray:
        return self.amostras.to_numpy()

    @property
    def tempos(self) -> np.ndarray:
        return self.amostras.index.to_numpy()


def integrate(
    X: PolyVectorField,
    x0: Sequence[Union[float, complex]],
    passo: float,
    passos: int,
    ctx: Optional[SphereContext] = None,
    nomes: Optional[Sequence[str]] = None,
    tol_esfera: float = TOL_ESFERA_INICIAL,
    tol_deriva: float = TOL_DERIVA,
) -> Orbit:
    """Runge-Kutta clássico de quarta ordem com passo fixo.

    Na esfera, cada passo é seguido da renormalização radial x / sqrt(Σ x_i²) e a
    deriva |G| é registrada antes dela.

    Raises:
        ParametrosInvalidos: passo não positivo, ponto fora da esfera ou de tamanho errado.
        DivergenciaNumerica: estado não finito.
    """
    if passo <= 0 or passos < 0:
        raise ParametrosInvalidos(f"Passo ({passo}) deve ser positivo e passos ({passos}) >= 0.")
    N = X.nvars
    if len(x0) != N:
        raise ParametrosInvalidos(f"Ponto inicial com {len(x0)} coordenadas; esperado {N}.")
    complexo = not X.is_real or any(isinstance(v, complex) and v.imag for v in x0)
    estado = np.array(x0, dtype=complex if complexo else float)
    if ctx is not None:
        if ctx.nvars != N:
            raise ParametrosInvalidos(f"Campo em {N} variáveis; S^{ctx.n} exige {ctx.nvars}.")
        g0 = abs(np.sum(estado * estado) - 1)
        if g0 > tol_esfera:
            raise ParametrosInvalidos(f"Ponto inicial fora da esfera: |G(x0)| = {g0:.3e}.")
    F = _campo_numerico(X)
    trajetoria = np.empty((passos + 1, N), dtype=estado.dtype)
    trajetoria[0] = estado
    deriva = 0.0 if ctx is not None else None
    for k in range(1, passos + 1):
        k1 = F(estado)
        k2 = F(estado + 0.5 * passo * k1)
        k3 = F(estado + 0.5 * passo * k2)
        k4 = F(estado + passo * k3)
        estado = estado + (passo / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(estado)):
            raise DivergenciaNumerica(k, k * passo)
        if ctx is not None:
            quadrado = np.sum(estado * estado)
            deriva = max(deriva, float(abs(quadrado - 1)))
            estado = estado / np.sqrt(quadrado)
        trajetoria[k] = estado
    indice = pd.Index(np.arange(passos + 1) * passo, name="t")
    colunas = list(nomes) if nomes is not None else nomes_padrao(N)
    amostras = pd.DataFrame(trajetoria, index=indice, columns=colunas)
    sinalizada = deriva is not None and deriva > tol_deriva
    if sinalizada:
        logger.warning("Órbita com deriva %.3e acima da tolerância %.1e.", deriva, tol_deriva)
    return Orbit(amostras=amostras, passo=passo, deriva=deriva, sinalizada=sinalizada)


# ============================================================================
# Lotes assíncronos
# ============================================================================


async def _executar_lote(
    funcao: Callable[[Any], Any], argumentos: Sequence[Any], max_concorrencia: int
) -> List[Any]:
    semaforo = asyncio.Semaphore(max_concorrencia)

    async def _tentativa(argumento: Any) -> Any:
        async with semaforo:
            return await asyncio.to_thread(funcao, argumento)

    return list(await asyncio.gather(*(_tentativa(a) for a in argumentos)))


def _run_async(coro):  # type: ignore[no-untyped-def]
    """Executa a coroutine em código síncrono, mesmo com um event loop já rodando."""
    try:
        loop = asyncio.get_running_loop()
    except RuntimeError:
        loop = None

    if loop and loop.is_running():
        # Dentro de um event loop existente (Jupyter, servidor)
        import nest_asyncio

        nest_asyncio.apply()
        return loop.run_until_complete(coro)
    else:
        return asyncio.run(coro)


def executar_lote(
    funcao: Callable[[Any], Any],
    argumentos: Sequence[Any],
    max_concorrencia: int = MAX_CONCORRENCIA,
) -> List[Any]:
    """Aplica funcao a cada argumento em threads, no máximo max_concorrencia por vez."""
    if max_concorrencia < 1:
        raise ParametrosInvalidos(f"max_concorrencia deve ser >= 1: {max_concorrencia}")
    return _run_async(_executar_lote(funcao, argumentos, max_concorrencia))


# ============================================================================
# Confinamento em superfícies
# ============================================================================


@dataclass
class RelatorioSuperficie:
    passou: bool
    max_desvio: float
    desvios: List[float]
    tolerancia: float


def _pontos_iniciais(
    f: MultiPoly, ctx: Optional[SphereContext], rngs: Sequence[np.random.Generator]
) -> List[np.ndarray]:
    """Pontos reais em {f = 0} (∩ S^n na esfera) para f linear real."""
    if not f.is_real:
        raise SemPontosAmostrais(f"{f} tem coeficientes não reais: traço real vazio.")
    if f.degree() != 1:
        raise ParametrosInvalidos(f"Amostragem implementada para superfícies lineares: {f}")
    coefs, constante = f.linear_coefficients()
    a = np.array([float(c.re) for c in coefs])
    c = float(constante.re)
    norma2 = float(a @ a)
    centro = -c * a / norma2
    raio2 = 1.0 - c * c / norma2
    if ctx is not None and raio2 < 0:
        raise SemPontosAmostrais(f"{f} = 0 não intersecta a esfera real.")
    pontos = []
    for rng in rngs:
        direcao = rng.normal(size=a.size)
        direcao -= (direcao @ a) / norma2 * a
        comprimento = np.linalg.norm(direcao)
        if ctx is None:
            pontos.append(centro + direcao)
            continue
        if comprimento < 1e-12:
            direcao = np.zeros_like(a)
        else:
            direcao /= comprimento
        pontos.append(centro + np.sqrt(max(raio2, 0.0)) * direcao)
    return pontos


def check_surface_numeric(
    X: PolyVectorField,
    S: Union[InvariantSurface, MultiPoly],
    tentativas: int = TENTATIVAS_PADRAO,
    tol: float = TOL_NUMERICA,
    passo: float = PASSO_PADRAO,
    horizonte: float = HORIZONTE_PADRAO,
    ctx: Optional[SphereContext] = None,
    semente: int = 0,
    max_concorrencia: int = MAX_CONCORRENCIA,
) -> RelatorioSuperficie:
    """Integra órbitas a partir de pontos de {f = 0} e confere max |f| <= tol.

    Raises:
        SemPontosAmostrais: f sem traço real (ex.: meridianos complexos).
    """
    f = S.f if isinstance(S, InvariantSurface) else S
    if tentativas < 1:
        raise ParametrosInvalidos(f"tentativas deve ser >= 1: {tentativas}")
    sementes = np.random.SeedSequence(semente).spawn(tentativas)
    iniciais = _pontos_iniciais(f, ctx, [np.random.default_rng(s) for s in sementes])
    valor = avaliador(f)
    passos = int(round(horizonte / passo))
    nomes = nomes_padrao(X.nvars)

    def _tentativa(x0: np.ndarray) -> float:
        orbita = integrate(X, list(x0), passo, passos, ctx=ctx, nomes=nomes)
        return float(np.max(np.abs(valor(orbita.pontos))))

    desvios = executar_lote(_tentativa, iniciais, max_concorrencia)
    max_desvio = max(desvios)
    passou = max_desvio <= tol
    logger.info("Confinamento em %s = 0: max |f| = %.3e (%s).", f, max_desvio,
                "ok" if passou else "falhou")
    return RelatorioSuperficie(passou=passou, max_desvio=max_desvio, desvios=desvios,
                               tolerancia=tol)


def orbitas_aleatorias(
    X: PolyVectorField,
    quantidade: int,
    passo: float = PASSO_PADRAO,
    horizonte: float = HORIZONTE_PADRAO,
    ctx: Optional[SphereContext] = None,
    caixa: Tuple[float, float] = (-0.4, 0.4),
    semente: int = 0,
    max_concorrencia: int = MAX_CONCORRENCIA,
) -> List[Orbit]:
    """Órbitas a partir de pontos uniformes na caixa (ou uniformes em S^n)."""
    rng = np.random.default_rng(semente)
    if ctx is None:
        iniciais = list(rng.uniform(caixa[0], caixa[1], size=(quantidade, X.nvars)))
    else:
        brutos = rng.normal(size=(quantidade, X.nvars))
        iniciais = list(brutos / np.linalg.norm(brutos, axis=1, keepdims=True))
    passos = int(round(horizonte / passo))
    return executar_lote(
        lambda x0: integrate(X, list(x0), passo, passos, ctx=ctx), iniciais, max_concorrencia
    )


# ============================================================================
# Constância de funções de Darboux
# ============================================================================


@dataclass
class RelatorioIntegral:
    passou: bool
    max_variacao: float
    variacoes: List[float]
    excluidas: List[int] = field(default_factory=list)
    tolerancia: float = TOL_NUMERICA


def _log_forma(forma: RealFactorDescription, pontos: np.ndarray) -> np.ndarray:
    log = np.zeros(len(pontos))
    if forma.base is not None and forma.potencia:
        log += float(forma.potencia) * np.log(avaliador(forma.base)(pontos).real)
    if forma.arg_angulo is not None and forma.coef_angulo:
        im, re = (avaliador(p)(pontos).real for p in forma.arg_angulo)
        log += float(forma.coef_angulo) * np.unwrap(np.arctan2(im, re))
    if forma.expoente is not None:
        num, den = (avaliador(p)(pontos).real for p in forma.expoente)
        log += num / den
    return log


def check_first_integral_numeric(
    X: PolyVectorField,
    D: DarbouxFunction,
    superficies: Sequence[Union[InvariantSurface, MultiPoly]],
    exponenciais: Sequence[Union[ExponentialFactor, Tuple[MultiPoly, MultiPoly]]] = (),
    orbitas: Sequence[Orbit] = (),
    tol: float = TOL_NUMERICA,
    faixa_guarda: float = FAIXA_GUARDA,
) -> RelatorioIntegral:
    """Variação relativa de H·e^(σt) ao longo de cada órbita.

    Com λ inteiros, H é avaliada diretamente (produto complexo); caso contrário,
    pelas formas reais, com o ângulo de dois argumentos desenrolado ao longo da órbita.
    Órbitas que passam a menos de faixa_guarda de algum fator são excluídas.

    Raises:
        SemPontosAmostrais: todas as órbitas foram excluídas.
    """
    fs = [s.f if isinstance(s, InvariantSurface) else s for s in superficies]
    ghs = [(e.g, e.h) if isinstance(e, ExponentialFactor) else tuple(e) for e in exponenciais]
    if len(fs) != len(D.lambdas) or len(ghs) != len(D.mus):
        raise ParametrosInvalidos("D não corresponde às superfícies/fatores dados.")
    if not orbitas:
        raise ParametrosInvalidos("Nenhuma órbita fornecida.")
    guardas = [avaliador(f) for f in fs] + [avaliador(h) for _, h in ghs]
    sigma = complex(D.sigma)
    direto = all(lam.is_integer for lam in D.lambdas)
    if direto:
        fatores = [(avaliador(f), int(lam.re)) for f, lam in zip(fs, D.lambdas) if lam]
        expoentes = [(avaliador(g), avaliador(h), complex(mu)) for (g, h), mu in zip(ghs, D.mus)]
    else:
        if sigma.imag:
            raise ParametrosInvalidos("σ não real sem λ inteiros: sem forma real.")
        formas = formas_reais(D, fs, ghs)

    variacoes: List[float] = []
    excluidas: List[int] = []
    for indice, orbita in enumerate(orbitas):
        pontos, tempos = orbita.pontos, orbita.tempos
        if any(np.min(np.abs(g(pontos))) < faixa_guarda for g in guardas):
            logger.warning("Órbita %d excluída: passa pela faixa de guarda de um fator.", indice)
            excluidas.append(indice)
            continue
        if direto:
            valores = np.exp(sigma * tempos).astype(complex)
            for aval, e in fatores:
                valores = valores * aval(pontos).astype(complex) ** e
            for g, h, mu in expoentes:
                valores = valores * np.exp(mu * g(pontos) / h(pontos))
            variacao = float(np.max(np.abs(valores / valores[0] - 1)))
        else:
            log = sigma.real * tempos + sum(
                (_log_forma(forma, pontos) for forma in formas), np.zeros(len(pontos))
            )
            variacao = float(np.max(np.abs(np.expm1(log - log[0]))))
        variacoes.append(variacao)
    if not variacoes:
        raise SemPontosAmostrais("Todas as órbitas caíram na faixa de guarda.")
    max_variacao = max(variacoes)
    passou = max_variacao <= tol
    logger.info("Variação relativa máxima da integral: %.3e (%s).", max_variacao,
                "ok" if passou else "falhou")
    return RelatorioIntegral(
        passou=passou,
        max_variacao=max_variacao,
        variacoes=variacoes,
        excluidas=excluidas,
        tolerancia=tol,
    )
