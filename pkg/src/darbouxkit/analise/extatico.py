"""
darbouxkit.analise.extatico
~~~~~~~~~~~~~~~~~~~~~~~~~~~

Polinômio extático E_W(X) de um campo associado a uma base W = {v_1, ..., v_l}:
o determinante da matriz com linhas v_i, X(v_i), ..., X^(l-1)(v_i).

Toda superfície invariante f = 0 com f em span(W) divide E_W(X); a multiplicidade
é o maior k com f^k | E_W(X).
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from darbouxkit.algebra import linear
from darbouxkit.algebra.polinomio import Monomial, MultiPoly, exact_divide
from darbouxkit.analise.campo import PolyVectorField, lie_iterada
from darbouxkit.core.exceptions import BaseDependente, ExtaticoDegenerado, ParametrosInvalidos

logger = logging.getLogger("darbouxkit")

METODOS = ("bareiss", "cofatores")


@dataclass(frozen=True)
class ExtacticResult:
    E: MultiPoly
    base: Tuple[MultiPoly, ...]
    degenerate: bool

    @property
    def grau(self) -> Optional[int]:
        return None if self.degenerate else self.E.degree()


def checar_base(W: Sequence[MultiPoly]) -> None:
    """Rejeita bases vazias ou linearmente dependentes (posto da matriz de coeficientes)."""
    if not W:
        raise ParametrosInvalidos("A base W não pode ser vazia.")
    monomios: Dict[Monomial, int] = {}
    for v in W:
        for m in v.termos:
            monomios.setdefault(m, len(monomios))
    matriz = [[v.coefficient(m) for m in monomios] for v in W]
    posto = linear.posto(matriz) if monomios else 0
    if posto < len(W):
        raise BaseDependente(len(W), posto)


def matriz_extatica(X: PolyVectorField, W: Sequence[MultiPoly]) -> List[List[MultiPoly]]:
    """Matriz l×l: linha j contém X^j(v_1), ..., X^j(v_l)."""
    colunas = [lie_iterada(X, v, len(W) - 1) for v in W]
    return [[coluna[j] for coluna in colunas] for j in range(len(W))]


def extactic(
    X: PolyVectorField, W: Sequence[MultiPoly], metodo: str = "bareiss"
) -> ExtacticResult:
    """Polinômio extático de X associado a W.

    Args:
        X: Campo vetorial.
        W: Base (linearmente independente) do subespaço W.
        metodo: "bareiss" (padrão) ou "cofatores" (expansão de Laplace, para conferência).

    Raises:
        BaseDependente: W não é linearmente independente.
    """
    if metodo not in METODOS:
        raise ParametrosInvalidos(f"Método desconhecido: {metodo!r}. Use {METODOS}.")
    if any(v.nvars != X.nvars for v in W):
        raise ParametrosInvalidos("W e o campo têm números de variáveis diferentes.")
    checar_base(W)
    matriz = matriz_extatica(X, W)
    if metodo == "bareiss":
        E = linear.determinante_bareiss(matriz)
    else:
        E = linear.determinante_cofatores(matriz)
    degenerado = E.is_zero()
    if degenerado:
        logger.info("Polinômio extático identicamente nulo para W com %d elementos.", len(W))
    return ExtacticResult(E=E, base=tuple(W), degenerate=degenerado)


def multiplicity(resultado: ExtacticResult, f: MultiPoly) -> int:
    """Maior k com f^k | E (0 se f não é fator).

    Raises:
        ExtaticoDegenerado: E ≡ 0 (multiplicidade indefinida).
        ParametrosInvalidos: f constante.
    """
    if resultado.degenerate:
        raise ExtaticoDegenerado("Multiplicidade indefinida: polinômio extático nulo.")
    if f.is_constant():
        raise ParametrosInvalidos(f"f deve ser não constante: {f}")
    k = 0
    atual = resultado.E
    while True:
        q = exact_divide(atual, f)
        if q is None:
            return k
        k += 1
        atual = q
