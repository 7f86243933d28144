"""
darbouxkit.algebra.polinomio
~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Polinômios multivariados esparsos e exatos sobre Q(i).

Representação: mapa monômio (tupla de expoentes) -> coeficiente não nulo.
Ordem canônica: lexicográfica graduada com a última variável como a maior, o que
torna a lista ordenada de termos única para cada polinômio.

Uso:
    >>> from darbouxkit.algebra.polinomio import MultiPoly, SphereContext, reduce_mod_sphere
    >>> x, y, z = MultiPoly.variables(3)
    >>> r, h = reduce_mod_sphere(z**3, SphereContext(2))
    >>> str(r)
    '-y^2*z - x^2*z + z'
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import sympy

from darbouxkit.algebra.numeros import ZERO, GaussianRational
from darbouxkit.core.exceptions import ParametrosInvalidos

logger = logging.getLogger("darbouxkit")

Monomial = Tuple[int, ...]

NOMES_PADRAO = ("x", "y", "z")


def chave_grlex(m: Monomial) -> Tuple[int, Tuple[int, ...]]:
    """Chave de ordenação: grau total, depois expoentes da última variável para a primeira."""
    return (sum(m), tuple(reversed(m)))


def nomes_padrao(nvars: int) -> List[str]:
    if nvars <= len(NOMES_PADRAO):
        return list(NOMES_PADRAO[:nvars])
    return [f"x{i + 1}" for i in range(nvars)]


def monomios_ate_grau(nvars: int, grau: int) -> List[Monomial]:
    """Todos os monômios de grau total <= grau, em ordem canônica crescente."""
    if grau < 0:
        return []

    def _compor(total: int, k: int) -> Iterator[Monomial]:
        if k == 1:
            yield (total,)
            return
        for primeiro in range(total, -1, -1):
            for resto in _compor(total - primeiro, k - 1):
                yield (primeiro,) + resto

    if nvars == 0:
        return [()]
    monomios = [m for t in range(grau + 1) for m in _compor(t, nvars)]
    return sorted(monomios, key=chave_grlex)


def _acumular(termos: Dict[Monomial, GaussianRational], m: Monomial, c: GaussianRational) -> None:
    novo = termos.get(m, ZERO) + c
    if novo:
        termos[m] = novo
    else:
        termos.pop(m, None)


class MultiPoly:
    """Polinômio em N variáveis com coeficientes em Q(i). Imutável."""

    __slots__ = ("_termos", "_nvars", "_hash")

    def __init__(self, termos: Optional[Mapping[Sequence[int], object]] = None, nvars: int = 1):
        if nvars < 0:
            raise ParametrosInvalidos(f"Número de variáveis inválido: {nvars}")
        normalizados: Dict[Monomial, GaussianRational] = {}
        for m, c in (termos or {}).items():
            mono = tuple(int(e) for e in m)
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise ParametrosInvalidos(f"Monômio {m} incompatível com {nvars} variáveis.")
            _acumular(normalizados, mono, GaussianRational.de(c))
        self._termos = normalizados
        self._nvars = nvars
        self._hash: Optional[int] = None

    @classmethod
    def _cru(cls, termos: Dict[Monomial, GaussianRational], nvars: int) -> "MultiPoly":
        p = cls.__new__(cls)
        p._termos = termos
        p._nvars = nvars
        p._hash = None
        return p

    # ------------------------------------------------------------------
    # Construtores
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._cru({}, nvars)

    @classmethod
    def constant(cls, c: object, nvars: int) -> "MultiPoly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def variable(cls, i: int, nvars: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise ParametrosInvalidos(f"Índice de variável {i} fora de 0..{nvars - 1}.")
        m = [0] * nvars
        m[i] = 1
        return cls._cru({tuple(m): GaussianRational(1)}, nvars)

    @classmethod
    def variables(cls, nvars: int) -> List["MultiPoly"]:
        return [cls.variable(i, nvars) for i in range(nvars)]

    @classmethod
    def linear(
        cls, coeficientes: Sequence[object], constante: object = 0, nvars: Optional[int] = None
    ) -> "MultiPoly":
        """a_1*x_1 + ... + a_k*x_k + c, num anel de nvars >= k variáveis."""
        n = len(coeficientes) if nvars is None else nvars
        termos: Dict[Sequence[int], object] = {(0,) * n: constante}
        for i, a in enumerate(coeficientes):
            m = [0] * n
            m[i] = 1
            termos[tuple(m)] = a
        return cls(termos, n)

    # ------------------------------------------------------------------
    # Acesso
    # ------------------------------------------------------------------

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def termos(self) -> Mapping[Monomial, GaussianRational]:
        return dict(self._termos)

    def sorted_terms(self) -> List[Tuple[Monomial, GaussianRational]]:
        """Termos em ordem canônica decrescente (termo líder primeiro)."""
        return sorted(self._termos.items(), key=lambda t: chave_grlex(t[0]), reverse=True)

    def coefficient(self, m: Sequence[int]) -> GaussianRational:
        return self._termos.get(tuple(m), ZERO)

    def is_zero(self) -> bool:
        return not self._termos

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self._termos)

    def constant_value(self) -> GaussianRational:
        return self._termos.get((0,) * self._nvars, ZERO)

    @property
    def is_real(self) -> bool:
        return all(c.is_real for c in self._termos.values())

    def degree(self) -> int:
        """Grau total; -1 para o polinômio nulo."""
        return max((sum(m) for m in self._termos), default=-1)

    def degree_in(self, i: int) -> int:
        self._checar_indice(i)
        return max((m[i] for m in self._termos), default=-1)

    def is_linear(self) -> bool:
        return self.degree() == 1

    def leading_term(self) -> Tuple[Monomial, GaussianRational]:
        if not self._termos:
            raise ParametrosInvalidos("O polinômio nulo não tem termo líder.")
        m = max(self._termos, key=chave_grlex)
        return m, self._termos[m]

    def homogeneous_part(self, grau: int) -> "MultiPoly":
        return MultiPoly._cru(
            {m: c for m, c in self._termos.items() if sum(m) == grau}, self._nvars
        )

    def linear_coefficients(self) -> Tuple[List[GaussianRational], GaussianRational]:
        """(a, c) com f = a·x + c; exige grau <= 1."""
        if self.degree() > 1:
            raise ParametrosInvalidos(f"{self} não é afim.")
        a = [self.coefficient(tuple(1 if j == i else 0 for j in range(self._nvars)))
             for i in range(self._nvars)]
        return a, self.constant_value()

    def variaveis_presentes(self) -> List[int]:
        return [i for i in range(self._nvars) if any(m[i] for m in self._termos)]

    def _checar_indice(self, i: int) -> None:
        if not 0 <= i < self._nvars:
            raise ParametrosInvalidos(f"Índice de variável {i} fora de 0..{self._nvars - 1}.")

    # ------------------------------------------------------------------
    # Aritmética (ring_ops)
    # ------------------------------------------------------------------

    def _coagir(self, outro: object) -> "MultiPoly":
        if isinstance(outro, MultiPoly):
            if outro._nvars != self._nvars:
                raise ParametrosInvalidos(
                    f"Número de variáveis incompatível: {self._nvars} != {outro._nvars}"
                )
            return outro
        return MultiPoly.constant(outro, self._nvars)

    def __add__(self, outro: object) -> "MultiPoly":
        try:
            b = self._coagir(outro)
        except TypeError:
            return NotImplemented
        termos = dict(self._termos)
        for m, c in b._termos.items():
            _acumular(termos, m, c)
        return MultiPoly._cru(termos, self._nvars)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._cru({m: -c for m, c in self._termos.items()}, self._nvars)

    def __sub__(self, outro: object) -> "MultiPoly":
        try:
            b = self._coagir(outro)
        except TypeError:
            return NotImplemented
        termos = dict(self._termos)
        for m, c in b._termos.items():
            _acumular(termos, m, -c)
        return MultiPoly._cru(termos, self._nvars)

    def __rsub__(self, outro: object) -> "MultiPoly":
        return (-self) + outro

    def scale(self, c: object) -> "MultiPoly":
        k = GaussianRational.de(c)
        if not k:
            return MultiPoly.zero(self._nvars)
        return MultiPoly._cru({m: k * v for m, v in self._termos.items()}, self._nvars)

    def __mul__(self, outro: object) -> "MultiPoly":
        if not isinstance(outro, MultiPoly):
            try:
                return self.scale(outro)
            except TypeError:
                return NotImplemented
        b = self._coagir(outro)
        termos: Dict[Monomial, GaussianRational] = {}
        for ma, ca in self._termos.items():
            for mb, cb in b._termos.items():
                _acumular(termos, tuple(x + y for x, y in zip(ma, mb)), ca * cb)
        return MultiPoly._cru(termos, self._nvars)

    def __rmul__(self, outro: object) -> "MultiPoly":
        try:
            return self.scale(outro)
        except TypeError:
            return NotImplemented

    def __pow__(self, expoente: int) -> "MultiPoly":
        if not isinstance(expoente, int) or expoente < 0:
            raise ParametrosInvalidos(f"Expoente deve ser inteiro não negativo: {expoente!r}")
        resultado = MultiPoly.constant(1, self._nvars)
        base = self
        while expoente:
            if expoente & 1:
                resultado = resultado * base
            expoente >>= 1
            if expoente:
                base = base * base
        return resultado

    def conjugate(self) -> "MultiPoly":
        return MultiPoly._cru({m: c.conjugate() for m, c in self._termos.items()}, self._nvars)

    def real_part(self) -> "MultiPoly":
        """Parte real coeficiente a coeficiente (vale como Re f em pontos reais)."""
        return MultiPoly({m: c.re for m, c in self._termos.items()}, self._nvars)

    def imag_part(self) -> "MultiPoly":
        return MultiPoly({m: c.im for m, c in self._termos.items()}, self._nvars)

    # ------------------------------------------------------------------
    # Comparação e conversão
    # ------------------------------------------------------------------

    def __eq__(self, outro: object) -> bool:
        if isinstance(outro, MultiPoly):
            return self._nvars == outro._nvars and self._termos == outro._termos
        try:
            c = GaussianRational.de(outro)
        except TypeError:
            return NotImplemented
        return self.is_constant() and self.constant_value() == c

    def __hash__(self) -> int:
        if self._hash is None:
            # constantes se comparam iguais a escalares: o hash precisa coincidir
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self._nvars, frozenset(self._termos.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._termos)

    def to_sympy(self, simbolos: Optional[Sequence[sympy.Symbol]] = None) -> sympy.Expr:
        if simbolos is None:
            simbolos = sympy.symbols(nomes_padrao(self._nvars))
        expr = sympy.Integer(0)
        for m, c in self.sorted_terms():
            termo = c.to_sympy()
            for s, e in zip(simbolos, m):
                if e:
                    termo = termo * s**e
            expr = expr + termo
        return expr

    @classmethod
    def from_sympy(cls, expr: sympy.Expr, simbolos: Sequence[sympy.Symbol]) -> "MultiPoly":
        expr = sympy.expand(sympy.sympify(expr))
        if expr == 0:
            return cls.zero(len(simbolos))
        try:
            poly = sympy.Poly(expr, *simbolos)
            termos = {m: GaussianRational.from_sympy(c) for m, c in poly.terms()}
        except (sympy.PolynomialError, TypeError) as e:
            raise ParametrosInvalidos(f"Expressão fora de Q(i)[{simbolos}]: {expr}") from e
        return cls(termos, len(simbolos))

    def render(self, nomes: Optional[Sequence[str]] = None) -> str:
        return render(self, nomes)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"MultiPoly({render(self)!r}, nvars={self._nvars})"


# ============================================================================
# Renderização
# ============================================================================


def _monomio_str(m: Monomial, nomes: Sequence[str]) -> str:
    partes = []
    for nome, e in zip(nomes, m):
        if e == 1:
            partes.append(nome)
        elif e > 1:
            partes.append(f"{nome}^{e}")
    return "*".join(partes)


def _termo_str(c: GaussianRational, mono: str) -> Tuple[bool, str]:
    """(negativo, texto sem sinal) de um termo."""
    if c.im == 0:
        negativo, mag = c.re < 0, abs(c.re)
        if not mono:
            return negativo, str(mag)
        return negativo, mono if mag == 1 else f"{mag}*{mono}"
    if c.re == 0:
        negativo, mag = c.im < 0, abs(c.im)
        unidade = "i" if mag == 1 else f"{mag}*i"
        return negativo, unidade if not mono else f"{unidade}*{mono}"
    return False, str(c) if not mono else f"{c}*{mono}"


def render(f: MultiPoly, nomes: Optional[Sequence[str]] = None) -> str:
    """Forma canônica textual, relida sem perdas por parse_poly."""
    if f.is_zero():
        return "0"
    nomes = list(nomes) if nomes is not None else nomes_padrao(f.nvars)
    saida: List[str] = []
    for m, c in f.sorted_terms():
        negativo, texto = _termo_str(c, _monomio_str(m, nomes))
        if not saida:
            saida.append(f"-{texto}" if negativo else texto)
        else:
            saida.append(f" - {texto}" if negativo else f" + {texto}")
    return "".join(saida)


# ============================================================================
# Operações do núcleo
# ============================================================================


def partial_derivative(f: MultiPoly, i: int) -> MultiPoly:
    """Derivada parcial formal em relação à variável i (0-based)."""
    f._checar_indice(i)
    termos: Dict[Monomial, GaussianRational] = {}
    for m, c in f._termos.items():
        if m[i]:
            novo = m[:i] + (m[i] - 1,) + m[i + 1:]
            _acumular(termos, novo, c * m[i])
    return MultiPoly._cru(termos, f.nvars)


@dataclass(frozen=True)
class SphereContext:
    """Esfera unitária S^n em R^(n+1): G = x_1² + ... + x_(n+1)² - 1."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParametrosInvalidos(f"Dimensão da esfera deve ser >= 1: {self.n}")

    @property
    def nvars(self) -> int:
        return self.n + 1

    @cached_property
    def G(self) -> MultiPoly:
        termos: Dict[Sequence[int], object] = {(0,) * self.nvars: -1}
        for i in range(self.nvars):
            m = [0] * self.nvars
            m[i] = 2
            termos[tuple(m)] = 1
        return MultiPoly(termos, self.nvars)

    def checar(self, f: MultiPoly) -> None:
        if f.nvars != self.nvars:
            raise ParametrosInvalidos(
                f"Polinômio em {f.nvars} variáveis; a esfera S^{self.n} exige {self.nvars}."
            )


def reduce_mod_sphere(f: MultiPoly, ctx: SphereContext) -> Tuple[MultiPoly, MultiPoly]:
    """Representante canônico módulo G.

    Substitui x_(n+1)² -> 1 - x_1² - ... - x_n² até o grau na última variável ser <= 1.

    Returns:
        (r, h) com f = r + h·G e grau de r na última variável <= 1.
    """
    ctx.checar(f)
    ultima = ctx.nvars - 1
    resto = dict(f._termos)
    multiplicador: Dict[Monomial, GaussianRational] = {}
    while True:
        altos = [m for m in resto if m[ultima] >= 2]
        if not altos:
            break
        for m in altos:
            c = resto.pop(m, None)
            if c is None:
                continue
            base = m[:ultima] + (m[ultima] - 2,)
            # c·m = c·base·(1 - Σ x_i²) + c·base·G
            _acumular(multiplicador, base, c)
            _acumular(resto, base, c)
            for i in range(ultima):
                _acumular(resto, base[:i] + (base[i] + 2,) + base[i + 1:], -c)
    return MultiPoly._cru(resto, f.nvars), MultiPoly._cru(multiplicador, f.nvars)


def reduzido(f: MultiPoly, ctx: SphereContext) -> MultiPoly:
    return reduce_mod_sphere(f, ctx)[0]


def exact_divide(f: MultiPoly, g: MultiPoly) -> Optional[MultiPoly]:
    """Quociente exato q com f = q·g, ou None se g não divide f."""
    if f.nvars != g.nvars:
        raise ParametrosInvalidos(f"Número de variáveis incompatível: {f.nvars} != {g.nvars}")
    if g.is_zero():
        raise ParametrosInvalidos("Divisão pelo polinômio nulo.")
    if f.is_zero():
        return MultiPoly.zero(f.nvars)
    if f.degree() < g.degree():
        return None
    lm_g, lc_g = g.leading_term()
    itens_g = list(g._termos.items())
    resto = dict(f._termos)
    quociente: Dict[Monomial, GaussianRational] = {}
    while resto:
        m = max(resto, key=chave_grlex)
        d = tuple(a - b for a, b in zip(m, lm_g))
        if any(e < 0 for e in d):
            return None
        t = resto[m] / lc_g
        quociente[d] = t
        for mg, cg in itens_g:
            _acumular(resto, tuple(a + b for a, b in zip(d, mg)), -(t * cg))
    return MultiPoly._cru(quociente, f.nvars)


Numero = Union[int, float, complex, Fraction, GaussianRational]


def _horner(
    termos: List[Tuple[Monomial, object]], valores: Sequence[object], k: int, zero: object
) -> object:
    if k == 0:
        total = zero
        for _, c in termos:
            total = total + c
        return total
    var = k - 1
    grupos: Dict[int, List[Tuple[Monomial, object]]] = {}
    for m, c in termos:
        grupos.setdefault(m[var], []).append((m, c))
    acumulado = zero
    for e in range(max(grupos), -1, -1):
        acumulado = acumulado * valores[var]
        if e in grupos:
            acumulado = acumulado + _horner(grupos[e], valores, k - 1, zero)
    return acumulado


def evaluate(f: MultiPoly, ponto: Sequence[Numero]) -> Numero:
    """Avalia f no ponto pelo esquema de Horner, variável a variável.

    Pontos exatos (int, Fraction, GaussianRational) dão um GaussianRational;
    pontos numéricos dão float (campo e ponto reais) ou complex.
    """
    if len(ponto) != f.nvars:
        raise ParametrosInvalidos(f"Ponto com {len(ponto)} coordenadas; esperado {f.nvars}.")
    if f.is_zero():
        return ZERO if _exato(ponto) else 0.0
    if _exato(ponto):
        valores = [GaussianRational.de(p) for p in ponto]
        return _horner(list(f._termos.items()), valores, f.nvars, ZERO)
    termos = [(m, float(c.re) if c.is_real else complex(c)) for m, c in f._termos.items()]
    return _horner(termos, list(ponto), f.nvars, 0.0)


def _exato(ponto: Sequence[object]) -> bool:
    return all(
        isinstance(p, (int, Fraction, GaussianRational)) and not isinstance(p, bool)
        for p in ponto
    )


def substitute(f: MultiPoly, imagens: Sequence[MultiPoly]) -> MultiPoly:
    """Composição f(imagens[0], ..., imagens[N-1]); as imagens vivem num mesmo anel."""
    if len(imagens) != f.nvars:
        raise ParametrosInvalidos(f"Esperadas {f.nvars} imagens, recebidas {len(imagens)}.")
    if not imagens:
        return f
    alvo = imagens[0].nvars
    if any(p.nvars != alvo for p in imagens):
        raise ParametrosInvalidos("Imagens em anéis diferentes.")
    potencias: List[List[MultiPoly]] = [[MultiPoly.constant(1, alvo)] for _ in imagens]

    def _potencia(i: int, e: int) -> MultiPoly:
        cache = potencias[i]
        while len(cache) <= e:
            cache.append(cache[-1] * imagens[i])
        return cache[e]

    resultado = MultiPoly.zero(alvo)
    for m, c in f._termos.items():
        termo = MultiPoly.constant(c, alvo)
        for i, e in enumerate(m):
            if e:
                termo = termo * _potencia(i, e)
        resultado = resultado + termo
    return resultado


def agrupar_em(f: MultiPoly, i: int) -> Dict[Monomial, Dict[int, GaussianRational]]:
    """Coleta f como polinômio nas outras variáveis com coeficientes univariados em x_i.

    Returns:
        {monômio sem x_i: {grau em x_i: coeficiente}}
    """
    f._checar_indice(i)
    grupos: Dict[Monomial, Dict[int, GaussianRational]] = {}
    for m, c in f._termos.items():
        grupos.setdefault(m[:i] + m[i + 1:], {})[m[i]] = c
    return grupos


def estender(f: MultiPoly, extras: int = 1) -> MultiPoly:
    """Mergulha f num anel com `extras` variáveis novas no fim."""
    return MultiPoly._cru({m + (0,) * extras: c for m, c in f._termos.items()}, f.nvars + extras)
