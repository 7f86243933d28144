"""
darbouxkit.analise.campo
~~~~~~~~~~~~~~~~~~~~~~~~

Campos vetoriais polinomiais X = Σ P_i ∂/∂x_i, derivada de Lie, teste de tangência
à esfera (certificado X(G) = K·G) e o espaço linear de campos tangentes a S^n.

Uso:
    >>> from darbouxkit.analise.campo import PolyVectorField, check_on_sphere
    >>> from darbouxkit.algebra.polinomio import MultiPoly, SphereContext
    >>> x, y, z = MultiPoly.variables(3)
    >>> rotacao = PolyVectorField([-y, x, z * 0])
    >>> check_on_sphere(rotacao, SphereContext(2)).cofator.is_zero()
    True
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from darbouxkit.algebra import linear
from darbouxkit.algebra.numeros import GaussianRational
from darbouxkit.algebra.polinomio import (
    Monomial,
    MultiPoly,
    SphereContext,
    exact_divide,
    monomios_ate_grau,
    partial_derivative,
    reduce_mod_sphere,
)
from darbouxkit.core.exceptions import CampoNaoTangente, EspacoVazio, ParametrosInvalidos

logger = logging.getLogger("darbouxkit")

PESO_AMOSTRAL = 5
TAMANHO_CACHE_LIE = 1024


@dataclass(frozen=True)
class DegreeVector:
    """Graus das componentes na ordem de declaração e ordenados (m_1 >= m_2 >= ...)."""

    raw: Tuple[int, ...]

    @property
    def sorted(self) -> Tuple[int, ...]:
        return tuple(sorted(self.raw, reverse=True))

    @property
    def m1(self) -> int:
        return max(self.raw) if self.raw else 0

    @property
    def ultimo(self) -> int:
        """Grau da última componente (P_(n+1) na ordem declarada)."""
        return self.raw[-1]


class PolyVectorField:
    """Campo vetorial polinomial com N componentes em N variáveis."""

    def __init__(self, componentes: Sequence[MultiPoly]) -> None:
        if not componentes:
            raise ParametrosInvalidos("O campo precisa de ao menos uma componente.")
        nvars = componentes[0].nvars
        if len(componentes) != nvars or any(p.nvars != nvars for p in componentes):
            raise ParametrosInvalidos(
                f"Campo com {len(componentes)} componentes em {nvars} variáveis."
            )
        self._componentes = tuple(componentes)

    @property
    def components(self) -> Tuple[MultiPoly, ...]:
        return self._componentes

    @property
    def nvars(self) -> int:
        return len(self._componentes)

    @property
    def graus(self) -> DegreeVector:
        """Vetor de graus; a componente nula conta como grau 0."""
        return DegreeVector(tuple(max(p.degree(), 0) for p in self._componentes))

    @property
    def is_real(self) -> bool:
        return all(p.is_real for p in self._componentes)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self._componentes)

    def __eq__(self, outro: object) -> bool:
        if not isinstance(outro, PolyVectorField):
            return NotImplemented
        return self._componentes == outro._componentes

    def __hash__(self) -> int:
        return hash(self._componentes)

    def render(self, nomes: Optional[Sequence[str]] = None) -> List[str]:
        return [p.render(nomes) for p in self._componentes]

    def __repr__(self) -> str:
        return f"PolyVectorField({self.render()!r})"


def lie_derivative(X: PolyVectorField, f: MultiPoly) -> MultiPoly:
    """X(f) = Σ P_i ∂f/∂x_i, exato."""
    if f.nvars != X.nvars:
        raise ParametrosInvalidos(f"Polinômio em {f.nvars} variáveis; campo em {X.nvars}.")
    return _derivada_lie(X, f)


@lru_cache(maxsize=TAMANHO_CACHE_LIE)
def _derivada_lie(X: PolyVectorField, f: MultiPoly) -> MultiPoly:
    resultado = MultiPoly.zero(X.nvars)
    for i, p in enumerate(X.components):
        if p.is_zero():
            continue
        d = partial_derivative(f, i)
        if not d.is_zero():
            resultado = resultado + p * d
    return resultado


def lie_iterada(X: PolyVectorField, f: MultiPoly, ordem: int) -> List[MultiPoly]:
    """[f, X(f), X²(f), ..., X^ordem(f)]."""
    derivadas = [f]
    for _ in range(ordem):
        derivadas.append(lie_derivative(X, derivadas[-1]))
    return derivadas


# ============================================================================
# Tangência à esfera
# ============================================================================


@dataclass(frozen=True)
class TangencyCertificate:
    """Cofator K com X(G) = K·G exatamente."""

    cofator: MultiPoly


def check_on_sphere(X: PolyVectorField, ctx: SphereContext) -> TangencyCertificate:
    """Calcula X(G) e divide exatamente por G.

    Raises:
        CampoNaoTangente: X(G) não é múltiplo de G (resto canônico anexado).
    """
    if X.nvars != ctx.nvars:
        raise ParametrosInvalidos(f"Campo em {X.nvars} variáveis; S^{ctx.n} exige {ctx.nvars}.")
    xg = lie_derivative(X, ctx.G)
    k = exact_divide(xg, ctx.G)
    if k is None:
        resto, _ = reduce_mod_sphere(xg, ctx)
        raise CampoNaoTangente(resto)
    return TangencyCertificate(cofator=k)


# ============================================================================
# Espaço dos campos tangentes
# ============================================================================


@dataclass(frozen=True)
class TangentFieldSpace:
    """Soluções de X(G) = K·G com deg P_i <= m_i e deg K <= max(m) - 1.

    Cada vetor da base lista os coeficientes de P_1, ..., P_N (monômios em
    `monomios_componentes`) seguidos dos de K (`monomios_cofator`).
    """

    n: int
    m: Tuple[int, ...]
    monomios_componentes: Tuple[Tuple[Monomial, ...], ...]
    monomios_cofator: Tuple[Monomial, ...]
    base: Tuple[Tuple[GaussianRational, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.base)

    @property
    def nincognitas(self) -> int:
        return sum(len(ms) for ms in self.monomios_componentes) + len(self.monomios_cofator)

    def campo(self, vetor: Sequence[object]) -> Tuple[PolyVectorField, MultiPoly]:
        """Reconstrói (X, K) a partir de um vetor de coeficientes."""
        if len(vetor) != self.nincognitas:
            raise ParametrosInvalidos(
                f"Vetor com {len(vetor)} entradas; esperado {self.nincognitas}."
            )
        nvars = self.n + 1
        valores = [GaussianRational.de(v) for v in vetor]
        componentes = []
        pos = 0
        for monomios in self.monomios_componentes:
            termos = dict(zip(monomios, valores[pos:pos + len(monomios)]))
            componentes.append(MultiPoly(termos, nvars))
            pos += len(monomios)
        cofator = MultiPoly(dict(zip(self.monomios_cofator, valores[pos:])), nvars)
        return PolyVectorField(componentes), cofator

    def combinar(self, pesos: Sequence[object]) -> Tuple[PolyVectorField, MultiPoly]:
        """Combinação linear dos vetores da base."""
        if len(pesos) != self.dimension:
            raise ParametrosInvalidos(f"Esperados {self.dimension} pesos, recebidos {len(pesos)}.")
        vetor = [GaussianRational(0)] * self.nincognitas
        for peso, v in zip(pesos, self.base):
            p = GaussianRational.de(peso)
            if p:
                vetor = [a + p * b for a, b in zip(vetor, v)]
        return self.campo(vetor)


def _restricoes_tangencia(
    n: int, m: Tuple[int, ...]
) -> Tuple[List[List[GaussianRational]], Tuple[Tuple[Monomial, ...], ...], Tuple[Monomial, ...]]:
    """Matriz da identidade Σ 2 x_i P_i - K·G = 0 nas incógnitas (P, K)."""
    nvars = n + 1
    ctx = SphereContext(n)
    monomios_componentes = tuple(tuple(monomios_ate_grau(nvars, g)) for g in m)
    monomios_cofator = tuple(monomios_ate_grau(nvars, max(m) - 1))
    colunas: List[MultiPoly] = []
    for i, monomios in enumerate(monomios_componentes):
        xi2 = MultiPoly.variable(i, nvars).scale(2)
        for mono in monomios:
            colunas.append(xi2 * MultiPoly({mono: 1}, nvars))
    for mono in monomios_cofator:
        colunas.append(-(ctx.G * MultiPoly({mono: 1}, nvars)))
    linhas_idx: Dict[Monomial, int] = {}
    for col in colunas:
        for mono in col.termos:
            linhas_idx.setdefault(mono, len(linhas_idx))
    matriz = [[GaussianRational(0)] * len(colunas) for _ in linhas_idx]
    for j, col in enumerate(colunas):
        for mono, c in col.termos.items():
            matriz[linhas_idx[mono]][j] = c
    return matriz, monomios_componentes, monomios_cofator


@lru_cache(maxsize=32)
def _espaco(n: int, m: Tuple[int, ...]) -> TangentFieldSpace:
    matriz, monomios_componentes, monomios_cofator = _restricoes_tangencia(n, m)
    ncols = sum(len(ms) for ms in monomios_componentes) + len(monomios_cofator)
    base = linear.nullspace(matriz, ncols)
    logger.debug("Espaço tangente n=%d m=%s: %d incógnitas, dimensão %d", n, m, ncols, len(base))
    return TangentFieldSpace(
        n=n,
        m=m,
        monomios_componentes=monomios_componentes,
        monomios_cofator=monomios_cofator,
        base=tuple(tuple(v) for v in base),
    )


def tangent_field_space(n: int, m: Sequence[int]) -> TangentFieldSpace:
    """Base racional do espaço de campos de graus <= m tangentes a S^n.

    Args:
        n: Dimensão da esfera (n + 1 variáveis).
        m: Graus máximos das n + 1 componentes, na ordem de declaração.
    """
    graus = tuple(int(g) for g in m)
    if n < 1:
        raise ParametrosInvalidos(f"Dimensão da esfera deve ser >= 1: {n}")
    if len(graus) != n + 1 or any(g < 0 for g in graus):
        raise ParametrosInvalidos(f"Esperados {n + 1} graus não negativos, recebidos {graus}.")
    return _espaco(n, graus)


def sample_on_sphere_field(
    n: int,
    m: Sequence[int],
    seed: int,
    coeficientes: Optional[Sequence[int]] = None,
) -> PolyVectorField:
    """Campo tangente a S^n: combinação inteira aleatória da base racional.

    Args:
        seed: Semente do gerador numpy (cada semente dá um campo determinístico).
        coeficientes: Pesos explícitos; se omitidos, sorteados em [-5, 5].

    Raises:
        EspacoVazio: o espaço tangente é trivial para esses graus.
    """
    espaco = tangent_field_space(n, m)
    if espaco.dimension == 0:
        raise EspacoVazio(f"Nenhum campo não nulo de graus {tuple(m)} é tangente a S^{n}.")
    if coeficientes is None:
        rng = np.random.default_rng(seed)
        sorteio = rng.integers(-PESO_AMOSTRAL, PESO_AMOSTRAL + 1, espaco.dimension)
        coeficientes = [int(v) for v in sorteio]
    campo, _ = espaco.combinar(coeficientes)
    return campo
