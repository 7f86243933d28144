"""
darbouxkit.analise.cotas
~~~~~~~~~~~~~~~~~~~~~~~~

Fórmulas fechadas das cotas de integrabilidade e de contagem de superfícies
invariantes. Os graus m são a sequência ordenada m_1 >= m_2 >= ..., exceto na
cota de paralelos, que usa o grau da última componente na ordem declarada.
"""

from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from darbouxkit.core.exceptions import ParametrosInvalidos


def _c(a: int, b: int) -> int:
    if a < 0 or b < 0:
        return 0
    return comb(a, b)


def _checar(n: int, m: Sequence[int]) -> list:
    if n < 1:
        raise ParametrosInvalidos(f"Dimensão deve ser >= 1: {n}")
    if not m:
        raise ParametrosInvalidos("Vetor de graus vazio.")
    ordenado = sorted((int(g) for g in m), reverse=True)
    if ordenado[-1] < 0:
        raise ParametrosInvalidos(f"Graus negativos: {tuple(m)}")
    return ordenado


def limiar_integral_primeira(n: int, m: Sequence[int]) -> int:
    """p + q a partir do qual há integral primeira em R^n."""
    m1 = _checar(n, m)[0]
    return _c(n + m1 - 1, m1 - 1) + 1


def limiar_integral_racional(n: int, m: Sequence[int]) -> int:
    m1 = _checar(n, m)[0]
    return _c(n + m1 - 1, m1 - 1) + n


def cota_hiperplanos(n: int, m: Sequence[int]) -> int:
    """Número máximo de hiperplanos invariantes de um campo em R^n."""
    ordenado = _checar(n, m)
    return _c(n, 2) * (ordenado[0] - 1) + sum(ordenado[:n])


def cota_hiperplanos_por_ponto(n: int, m: Sequence[int]) -> int:
    ordenado = _checar(n, m)
    return _c(n - 1, 2) * (ordenado[0] - 1) + sum(ordenado[: n - 1]) + 1


def limiar_esfera(n: int, m: Sequence[int]) -> Fraction:
    """p + q a partir do qual há integral primeira na esfera S^n."""
    m1 = _checar(n, m)[0]
    return Fraction(n + 2 * m1, n + m1) * _c(n + m1, m1) + 1


def limiar_esfera_racional(n: int, m: Sequence[int]) -> Fraction:
    m1 = _checar(n, m)[0]
    return Fraction(n + 2 * m1, n + m1) * _c(n + m1, m1) + n


def cota_meridianos(n: int, m: Sequence[int]) -> int:
    ordenado = _checar(n, m)
    return _c(n - 1, 2) * (ordenado[0] - 1) + sum(ordenado[: n - 1]) + 1


def cota_paralelos(n: int, m: Sequence[int]) -> Optional[int]:
    """Grau da última componente, na ordem declarada (m_(n+1) = deg P_(n+1)).

    None quando m tem só n entradas.
    """
    _checar(n, m)
    return int(m[n]) if len(m) > n else None


def dimensao_quociente(n: int, m: int, d: int = 2) -> int:
    """Dimensão de C_m[x_1..x_(n+1)] módulo múltiplos de um polinômio de grau d."""
    if n < 1 or m < 0 or d < 1:
        raise ParametrosInvalidos(f"Parâmetros inválidos: n={n}, m={m}, d={d}")
    return _c(n + 1 + m, n + 1) - _c(n + 1 + m - d, n + 1)
