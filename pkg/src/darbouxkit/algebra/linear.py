"""
darbouxkit.algebra.linear
~~~~~~~~~~~~~~~~~~~~~~~~~

Álgebra linear exata: escalonamento de Gauss-Jordan sobre Q(i), núcleo, solução
particular de sistemas, e determinantes de matrizes de polinômios (Bareiss sem
frações, com expansão em cofatores como oráculo).
"""

import logging
from typing import List, Optional, Sequence, Tuple

from darbouxkit.algebra.numeros import ZERO, GaussianRational
from darbouxkit.algebra.polinomio import MultiPoly, exact_divide
from darbouxkit.core.exceptions import ParametrosInvalidos

logger = logging.getLogger("darbouxkit")

Vetor = List[GaussianRational]
Matriz = List[List[GaussianRational]]


def _copiar(matriz: Sequence[Sequence[object]]) -> Matriz:
    return [[GaussianRational.de(v) for v in linha] for linha in matriz]


def escalonar(
    matriz: Sequence[Sequence[object]], ncols: Optional[int] = None
) -> Tuple[Matriz, List[int]]:
    """Forma escalonada reduzida por linhas.

    O pivô de cada coluna é o elemento de maior norma abaixo da linha corrente.

    Returns:
        (matriz reduzida, índices das colunas pivô)
    """
    m = _copiar(matriz)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivos: List[int] = []
    linha = 0
    for col in range(ncols):
        if linha >= len(m):
            break
        candidato = max(range(linha, len(m)), key=lambda r: m[r][col].norm())
        if not m[candidato][col]:
            continue
        m[linha], m[candidato] = m[candidato], m[linha]
        inv = m[linha][col].inverse()
        m[linha] = [v * inv for v in m[linha]]
        for r in range(len(m)):
            if r != linha and m[r][col]:
                fator = m[r][col]
                m[r] = [a - fator * b for a, b in zip(m[r], m[linha])]
        pivos.append(col)
        linha += 1
    return m, pivos


def posto(matriz: Sequence[Sequence[object]]) -> int:
    if not matriz:
        return 0
    return len(escalonar(matriz)[1])


def normalizar(vetor: Sequence[GaussianRational]) -> Vetor:
    """Escala o vetor para que a primeira entrada não nula seja 1."""
    for v in vetor:
        if v:
            inv = v.inverse()
            return [x * inv for x in vetor]
    return list(vetor)


def nullspace(matriz: Sequence[Sequence[object]], ncols: int) -> List[Vetor]:
    """Base do núcleo {v : M·v = 0}, cada vetor com primeira entrada não nula igual a 1."""
    if not matriz:
        return [
            [GaussianRational(1) if j == i else ZERO for j in range(ncols)] for i in range(ncols)
        ]
    reduzida, pivos = escalonar(matriz, ncols)
    livres = [c for c in range(ncols) if c not in pivos]
    base: List[Vetor] = []
    for livre in livres:
        v = [ZERO] * ncols
        v[livre] = GaussianRational(1)
        for linha, col in enumerate(pivos):
            v[col] = -reduzida[linha][livre]
        base.append(normalizar(v))
    return base


def resolver(matriz: Sequence[Sequence[object]], rhs: Sequence[object]) -> Optional[Vetor]:
    """Solução particular de M·v = b (variáveis livres nulas), ou None se inconsistente."""
    ncols = len(matriz[0]) if matriz else 0
    aumentada = [list(linha) + [b] for linha, b in zip(matriz, rhs)]
    reduzida, pivos = escalonar(aumentada, ncols + 1)
    if ncols in pivos:
        return None
    v = [ZERO] * ncols
    for linha, col in enumerate(pivos):
        v[col] = reduzida[linha][ncols]
    return v


# ============================================================================
# Determinantes de matrizes polinomiais
# ============================================================================


def _checar_quadrada(matriz: Sequence[Sequence[MultiPoly]]) -> int:
    n = len(matriz)
    if n == 0 or any(len(linha) != n for linha in matriz):
        raise ParametrosInvalidos("A matriz deve ser quadrada e não vazia.")
    return n


def determinante_bareiss(matriz: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinante pelo algoritmo de Bareiss (divisões exatas, sem frações)."""
    n = _checar_quadrada(matriz)
    nvars = matriz[0][0].nvars
    m = [list(linha) for linha in matriz]
    sinal = 1
    anterior = MultiPoly.constant(1, nvars)
    for k in range(n - 1):
        if m[k][k].is_zero():
            troca = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if troca is None:
                return MultiPoly.zero(nvars)
            m[k], m[troca] = m[troca], m[k]
            sinal = -sinal
        pivo = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                numerador = pivo * m[i][j] - m[i][k] * m[k][j]
                q = exact_divide(numerador, anterior)
                if q is None:
                    raise ArithmeticError("Divisão de Bareiss não exata.")
                m[i][j] = q
            m[i][k] = MultiPoly.zero(nvars)
        anterior = pivo
    det = m[n - 1][n - 1]
    return det if sinal > 0 else -det


def determinante_cofatores(matriz: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Expansão de Laplace pela primeira linha. Oráculo para matrizes pequenas."""
    n = _checar_quadrada(matriz)
    if n == 1:
        return matriz[0][0]
    total = MultiPoly.zero(matriz[0][0].nvars)
    for j, entrada in enumerate(matriz[0]):
        if entrada.is_zero():
            continue
        menor = [linha[:j] + linha[j + 1:] for linha in matriz[1:]]
        termo = entrada * determinante_cofatores(menor)
        total = total + termo if j % 2 == 0 else total - termo
    return total
