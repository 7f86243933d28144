"""
darbouxkit.algebra.numeros
~~~~~~~~~~~~~~~~~~~~~~~~~~

Corpo dos coeficientes: racionais gaussianos Q(i), com partes real e imaginária
em fractions.Fraction (inteiros de precisão arbitrária).
"""

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

import sympy

Rational = Fraction

Escalar = Union["GaussianRational", Fraction, int]


def _fracao(valor: object) -> Fraction:
    if isinstance(valor, Fraction):
        return valor
    if isinstance(valor, bool):
        raise TypeError("bool não é um coeficiente válido")
    if isinstance(valor, (int, _RationalABC)):
        return Fraction(valor)
    raise TypeError(f"Coeficiente não exato: {valor!r}")


class GaussianRational:
    """Número complexo a + b*i com a, b racionais. Imutável."""

    __slots__ = ("_re", "_im")

    def __init__(self, re: object = 0, im: object = 0) -> None:
        self._re = _fracao(re)
        self._im = _fracao(im)

    @classmethod
    def de(cls, valor: object) -> "GaussianRational":
        """Converte int, Fraction, GaussianRational ou complex com partes inteiras."""
        if isinstance(valor, GaussianRational):
            return valor
        if isinstance(valor, complex):
            if not (valor.real.is_integer() and valor.imag.is_integer()):
                raise TypeError(f"Complexo não exato: {valor!r}")
            return cls(int(valor.real), int(valor.imag))
        return cls(_fracao(valor))

    @classmethod
    def from_sympy(cls, valor: sympy.Expr) -> "GaussianRational":
        re, im = sympy.expand(sympy.sympify(valor)).as_real_imag()
        if not (re.is_Rational and im.is_Rational):
            re, im = sympy.simplify(re), sympy.simplify(im)
        if not (re.is_Rational and im.is_Rational):
            raise TypeError(f"Coeficiente fora de Q(i): {valor}")
        return cls(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    @property
    def is_real(self) -> bool:
        return self._im == 0

    @property
    def is_integer(self) -> bool:
        """Inteiro racional (parte imaginária nula)."""
        return self._im == 0 and self._re.denominator == 1

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self._re, -self._im)

    def norm(self) -> Fraction:
        """Norma re² + im² (multiplicativa)."""
        return self._re * self._re + self._im * self._im

    def to_sympy(self) -> sympy.Expr:
        re = sympy.Rational(self._re.numerator, self._re.denominator)
        im = sympy.Rational(self._im.numerator, self._im.denominator)
        return re + im * sympy.I

    def to_dict(self) -> dict:
        return {"re": str(self._re), "im": str(self._im)}

    # ------------------------------------------------------------------
    # Aritmética
    # ------------------------------------------------------------------

    @staticmethod
    def _coagir(outro: object) -> "GaussianRational":
        if isinstance(outro, GaussianRational):
            return outro
        return GaussianRational.de(outro)

    def __add__(self, outro: object) -> "GaussianRational":
        try:
            b = self._coagir(outro)
        except TypeError:
            return NotImplemented
        return GaussianRational(self._re + b._re, self._im + b._im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self._re, -self._im)

    def __sub__(self, outro: object) -> "GaussianRational":
        try:
            b = self._coagir(outro)
        except TypeError:
            return NotImplemented
        return GaussianRational(self._re - b._re, self._im - b._im)

    def __rsub__(self, outro: object) -> "GaussianRational":
        try:
            b = self._coagir(outro)
        except TypeError:
            return NotImplemented
        return b - self

    def __mul__(self, outro: object) -> "GaussianRational":
        try:
            b = self._coagir(outro)
        except TypeError:
            return NotImplemented
        return GaussianRational(
            self._re * b._re - self._im * b._im,
            self._re * b._im + self._im * b._re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("divisão por zero em Q(i)")
        return GaussianRational(self._re / n, -self._im / n)

    def __truediv__(self, outro: object) -> "GaussianRational":
        try:
            b = self._coagir(outro)
        except TypeError:
            return NotImplemented
        return self * b.inverse()

    def __rtruediv__(self, outro: object) -> "GaussianRational":
        try:
            b = self._coagir(outro)
        except TypeError:
            return NotImplemented
        return b * self.inverse()

    def __pow__(self, expoente: int) -> "GaussianRational":
        if not isinstance(expoente, int):
            return NotImplemented
        if expoente < 0:
            return self.inverse() ** (-expoente)
        resultado = GaussianRational(1)
        base = self
        while expoente:
            if expoente & 1:
                resultado = resultado * base
            base = base * base
            expoente >>= 1
        return resultado

    # ------------------------------------------------------------------
    # Comparação e conversões
    # ------------------------------------------------------------------

    def __eq__(self, outro: object) -> bool:
        if isinstance(outro, GaussianRational):
            return self._re == outro._re and self._im == outro._im
        if isinstance(outro, complex):
            return complex(self) == outro
        try:
            return self._im == 0 and self._re == _fracao(outro)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    def __bool__(self) -> bool:
        return bool(self._re) or bool(self._im)

    def __complex__(self) -> complex:
        return complex(float(self._re), float(self._im))

    def __repr__(self) -> str:
        return f"GaussianRational({self._re!s}, {self._im!s})"

    def __str__(self) -> str:
        if self._im == 0:
            return str(self._re)
        imag = "i" if abs(self._im) == 1 else f"{abs(self._im)}*i"
        if self._re == 0:
            return imag if self._im > 0 else f"-{imag}"
        sinal = "+" if self._im > 0 else "-"
        return f"({self._re}{sinal}{imag})"


ZERO = GaussianRational(0)
UM = GaussianRational(1)
I = GaussianRational(0, 1)
