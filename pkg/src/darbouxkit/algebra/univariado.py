"""
darbouxkit.algebra.univariado
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Polinômios univariados sobre Q(i): mdc de famílias de coeficientes e raízes.

Raízes exatas em Q(i) vêm dos fatores lineares da fatoração sobre Q(i) (sympy,
extension=I). Fatores irredutíveis de grau >= 2 são relatados como raízes não
exatas: aproximações numéricas e, para coeficientes reais, intervalos racionais
de isolamento certificados.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

import numpy as np
import sympy

from darbouxkit.algebra.numeros import GaussianRational

logger = logging.getLogger("darbouxkit")

S = sympy.Symbol("s")

Coeficientes = Dict[int, GaussianRational]


@dataclass(frozen=True)
class RaizNaoExata:
    """Fator irredutível (grau >= 2) sobre Q(i) e suas raízes aproximadas."""

    fator: str
    grau: int
    multiplicidade: int
    aproximacoes: Tuple[complex, ...]
    intervalos: Tuple[Tuple[Fraction, Fraction], ...] = ()

    @property
    def reais(self) -> int:
        """Raízes reais distintas (uma por intervalo isolante)."""
        return len(self.intervalos)


@dataclass
class Raizes:
    """Raízes de um polinômio univariado: exatas em Q(i) e fatores residuais."""

    exatas: List[Tuple[GaussianRational, int]] = field(default_factory=list)
    nao_exatas: List[RaizNaoExata] = field(default_factory=list)

    @property
    def contagem(self) -> int:
        """Número de raízes com multiplicidade."""
        exatas = sum(k for _, k in self.exatas)
        return exatas + sum(r.grau * r.multiplicidade for r in self.nao_exatas)


def para_sympy(coeficientes: Coeficientes, s: sympy.Symbol = S) -> sympy.Expr:
    return sympy.Add(*(c.to_sympy() * s**k for k, c in coeficientes.items()))


def mdc(familia: Iterable[Coeficientes], s: sympy.Symbol = S) -> sympy.Expr:
    """Mdc mônico de uma família de polinômios em s sobre Q(i); 0 se todos nulos."""
    expressoes = [para_sympy(c, s) for c in familia if c]
    if not expressoes:
        return sympy.Integer(0)
    g = sympy.gcd_list(expressoes, s, extension=sympy.I)
    if g == 0:
        return sympy.Integer(0)
    poly = sympy.Poly(g, s, extension=sympy.I)
    return poly.monic().as_expr()


def grau(expr: sympy.Expr, s: sympy.Symbol = S) -> int:
    if expr == 0:
        return -1
    return sympy.Poly(expr, s, extension=sympy.I).degree()


def _coeficientes_gaussianos(poly: sympy.Poly) -> List[GaussianRational]:
    return [GaussianRational.from_sympy(c) for c in poly.all_coeffs()]


def raizes(expr: sympy.Expr, s: sympy.Symbol = S) -> Raizes:
    """Fatora sobre Q(i) e separa raízes exatas de fatores residuais."""
    resultado = Raizes()
    if expr == 0 or grau(expr, s) <= 0:
        return resultado
    _, fatores = sympy.factor_list(expr, s, extension=sympy.I)
    for fator, multiplicidade in fatores:
        poly = sympy.Poly(fator, s, extension=sympy.I)
        if poly.degree() <= 0:
            continue
        coefs = _coeficientes_gaussianos(poly)
        if poly.degree() == 1:
            a, b = coefs
            resultado.exatas.append((-b / a, multiplicidade))
            continue
        aproximacoes = tuple(complex(r) for r in np.roots([complex(c) for c in coefs]))
        intervalos: Tuple[Tuple[Fraction, Fraction], ...] = ()
        # fator com raiz real é múltiplo de um polinômio real: normaliza pelo líder
        coefs = [c / coefs[0] for c in coefs]
        if all(c.is_real for c in coefs):
            real = sympy.Poly([c.to_sympy() for c in coefs], s, domain=sympy.QQ)
            intervalos = tuple(
                (Fraction(int(a.p), int(a.q)), Fraction(int(b.p), int(b.q)))
                for (a, b), _ in real.intervals()
            )
        logger.debug("Fator sem raízes em Q(i): %s (grau %d)", fator, poly.degree())
        resultado.nao_exatas.append(
            RaizNaoExata(
                fator=str(fator),
                grau=poly.degree(),
                multiplicidade=multiplicidade,
                aproximacoes=aproximacoes,
                intervalos=intervalos,
            )
        )
    return resultado


def raizes_comuns(
    familia: Iterable[Coeficientes], s: sympy.Symbol = S
) -> Tuple[sympy.Expr, Raizes]:
    """Raízes do mdc de uma família; o mdc nulo significa "toda raiz serve"."""
    g = mdc(familia, s)
    if g == 0:
        return g, Raizes()
    return g, raizes(g, s)
