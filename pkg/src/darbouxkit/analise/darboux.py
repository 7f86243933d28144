"""
darbouxkit.analise.darboux
~~~~~~~~~~~~~~~~~~~~~~~~~~

Integrais primeiras de Darboux a partir dos cofatores, invariantes dependentes do
tempo, formas reais de pares conjugados e as fórmulas fechadas das cotas.

Uma função de Darboux H = f_1^λ_1 ⋯ f_p^λ_p · exp(g_1/h_1)^μ_1 ⋯ é integral
primeira se Σ λ_i K_i + Σ μ_j L_j = 0; com Σ λ_i K_i + Σ μ_j L_j = -σ, H·e^(σt)
é invariante. Na esfera as igualdades valem módulo G.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from darbouxkit.algebra import linear
from darbouxkit.algebra.numeros import ZERO, GaussianRational
from darbouxkit.algebra.polinomio import Monomial, MultiPoly, SphereContext, reduzido
from darbouxkit.analise import cotas
from darbouxkit.analise.campo import DegreeVector, PolyVectorField, lie_derivative
from darbouxkit.analise.superficies import ExponentialFactor, InvariantSurface
from darbouxkit.core.exceptions import ParametrosInvalidos

logger = logging.getLogger("darbouxkit")


# ============================================================================
# Sistema de cofatores e funções de Darboux
# ============================================================================


@dataclass(frozen=True)
class CofactorSystem:
    """Cofatores K_1..K_p (superfícies) e L_1..L_q (fatores exponenciais).

    Com ctx, todos os cofatores são guardados já reduzidos módulo G.
    """

    cofatores_superficies: Tuple[MultiPoly, ...]
    cofatores_exponenciais: Tuple[MultiPoly, ...] = ()
    ctx: Optional[SphereContext] = None

    def __post_init__(self) -> None:
        todos = tuple(self.cofatores_superficies) + tuple(self.cofatores_exponenciais)
        if not todos:
            raise ParametrosInvalidos("O sistema precisa de ao menos um cofator (p + q >= 1).")
        nvars = todos[0].nvars
        if any(k.nvars != nvars for k in todos):
            raise ParametrosInvalidos("Cofatores com números de variáveis diferentes.")
        if self.ctx is not None:
            if self.ctx.nvars != nvars:
                raise ParametrosInvalidos(f"Cofatores em {nvars} variáveis; S^{self.ctx.n}.")
            sup = tuple(reduzido(k, self.ctx) for k in self.cofatores_superficies)
            exp = tuple(reduzido(k, self.ctx) for k in self.cofatores_exponenciais)
        else:
            sup = tuple(self.cofatores_superficies)
            exp = tuple(self.cofatores_exponenciais)
        object.__setattr__(self, "cofatores_superficies", sup)
        object.__setattr__(self, "cofatores_exponenciais", exp)

    @classmethod
    def de(
        cls,
        superficies: Sequence[InvariantSurface],
        exponenciais: Sequence[ExponentialFactor] = (),
        ctx: Optional[SphereContext] = None,
    ) -> "CofactorSystem":
        return cls(
            tuple(s.cofator for s in superficies),
            tuple(e.cofator for e in exponenciais),
            ctx,
        )

    @property
    def p(self) -> int:
        return len(self.cofatores_superficies)

    @property
    def q(self) -> int:
        return len(self.cofatores_exponenciais)

    @property
    def modo(self) -> str:
        return "ambiente" if self.ctx is None else "esfera"

    @property
    def todos(self) -> Tuple[MultiPoly, ...]:
        return self.cofatores_superficies + self.cofatores_exponenciais


def _gaussianos(valores: Sequence[object]) -> Tuple[GaussianRational, ...]:
    return tuple(GaussianRational.de(v) for v in valores)


@dataclass(frozen=True)
class DarbouxFunction:
    """Expoentes λ (superfícies), μ (fatores exponenciais) e deriva σ."""

    lambdas: Tuple[GaussianRational, ...]
    mus: Tuple[GaussianRational, ...] = ()
    sigma: GaussianRational = ZERO

    def __post_init__(self) -> None:
        object.__setattr__(self, "lambdas", _gaussianos(self.lambdas))
        object.__setattr__(self, "mus", _gaussianos(self.mus))
        object.__setattr__(self, "sigma", GaussianRational.de(self.sigma))
        if not any(self.lambdas) and not any(self.mus):
            raise ParametrosInvalidos("Todos os expoentes de Darboux são nulos.")

    @property
    def integral_primeira(self) -> bool:
        return not self.sigma

    @property
    def expoentes_inteiros(self) -> bool:
        return all(v.is_integer for v in self.lambdas + self.mus)

    def to_dict(self) -> Dict[str, object]:
        return {
            "lambdas": [v.to_dict() for v in self.lambdas],
            "mus": [v.to_dict() for v in self.mus],
            "sigma": self.sigma.to_dict(),
        }


def _resolver_expoentes(cs: CofactorSystem, com_sigma: bool) -> List[List[GaussianRational]]:
    colunas = list(cs.todos)
    if com_sigma:
        colunas.append(MultiPoly.constant(1, colunas[0].nvars))
    linhas: Dict[Monomial, int] = {}
    for k in colunas:
        for m in k.termos:
            linhas.setdefault(m, len(linhas))
    matriz = [[k.coefficient(m) for k in colunas] for m in linhas]
    return linear.nullspace(matriz, len(colunas))


def find_first_integral(cs: CofactorSystem) -> List[DarbouxFunction]:
    """Base do núcleo de Σ λ_i K_i + Σ μ_j L_j = 0; lista vazia quando trivial."""
    base = _resolver_expoentes(cs, com_sigma=False)
    funcoes = [DarbouxFunction(tuple(v[: cs.p]), tuple(v[cs.p:])) for v in base]
    logger.info("%d integral(is) primeira(s) de Darboux independente(s).", len(funcoes))
    return funcoes


def find_time_invariant(cs: CofactorSystem) -> Optional[DarbouxFunction]:
    """Solução de Σ λ_i K_i + Σ μ_j L_j + σ = 0 com σ != 0, ou None.

    O primeiro expoente não nulo é normalizado para 1.
    """
    for v in _resolver_expoentes(cs, com_sigma=True):
        sigma = v[-1]
        if not sigma:
            continue
        expoentes = v[:-1]
        if not any(expoentes):
            continue
        funcao = DarbouxFunction(
            tuple(expoentes[: cs.p]), tuple(expoentes[cs.p:]), sigma
        )
        logger.info("Invariante dependente do tempo com σ = %s.", sigma)
        return funcao
    return None


# ============================================================================
# Verificação
# ============================================================================


@dataclass
class VerificacaoDarboux:
    passou: bool
    residuo: MultiPoly
    numerador: Optional[MultiPoly] = None


def _produto(fatores: Sequence[Tuple[MultiPoly, int]], nvars: int) -> MultiPoly:
    resultado = MultiPoly.constant(1, nvars)
    for f, e in fatores:
        if e:
            resultado = resultado * f**e
    return resultado


def verify_darboux(
    X: PolyVectorField,
    D: DarbouxFunction,
    superficies: Sequence[InvariantSurface],
    exponenciais: Sequence[ExponentialFactor] = (),
    ctx: Optional[SphereContext] = None,
) -> VerificacaoDarboux:
    """Confere Σ λ_i K_i + Σ μ_j L_j + σ ≡ 0 (mod G na esfera).

    Para λ inteiros, σ = 0 e sem fatores exponenciais, expande H = N/D e confere
    também D·X(N) - N·X(D) = 0 (módulo G na esfera).

    Raises:
        ParametrosInvalidos: D não corresponde às superfícies/fatores dados, ou
            algum cofator não confere com o campo.
    """
    if len(D.lambdas) != len(superficies) or len(D.mus) != len(exponenciais):
        raise ParametrosInvalidos(
            f"D tem {len(D.lambdas)}+{len(D.mus)} expoentes; recebidos "
            f"{len(superficies)} superfícies e {len(exponenciais)} fatores exponenciais."
        )
    for item in list(superficies) + list(exponenciais):
        if not item.verificar(X, ctx):
            raise ParametrosInvalidos(f"Cofator {item.cofator} não confere com o campo.")
    nvars = X.nvars
    residuo = MultiPoly.constant(D.sigma, nvars)
    for lam, s in zip(D.lambdas, superficies):
        residuo = residuo + s.cofator.scale(lam)
    for mu, e in zip(D.mus, exponenciais):
        residuo = residuo + e.cofator.scale(mu)
    if ctx is not None:
        residuo = reduzido(residuo, ctx)
    numerador = None
    if D.expoentes_inteiros and D.integral_primeira and not exponenciais:
        expoentes = [int(lam.re) for lam in D.lambdas]
        N = _produto([(s.f, e) for s, e in zip(superficies, expoentes) if e > 0], nvars)
        Dn = _produto([(s.f, -e) for s, e in zip(superficies, expoentes) if e < 0], nvars)
        numerador = Dn * lie_derivative(X, N) - N * lie_derivative(X, Dn)
        if ctx is not None:
            numerador = reduzido(numerador, ctx)
    passou = residuo.is_zero() and (numerador is None or numerador.is_zero())
    logger.info("verify_darboux: %s (resíduo %s).", "ok" if passou else "falhou", residuo)
    return VerificacaoDarboux(passou=passou, residuo=residuo, numerador=numerador)


# ============================================================================
# Formas reais
# ============================================================================


@dataclass(frozen=True)
class RealFactorDescription:
    """Fator real de uma função de Darboux em pontos reais.

    log do valor = potencia·log(base) + coef_angulo·atan2(arg_angulo) + num/den
    """

    tipo: str
    base: Optional[MultiPoly] = None
    potencia: Fraction = Fraction(0)
    coef_angulo: Fraction = Fraction(0)
    arg_angulo: Optional[Tuple[MultiPoly, MultiPoly]] = None
    expoente: Optional[Tuple[MultiPoly, MultiPoly]] = None

    def polinomios(self) -> List[MultiPoly]:
        """Polinômios cujo zero é singular para a avaliação."""
        if self.expoente is not None:
            return [self.expoente[1]]
        return [self.base] if self.base is not None else []


def real_form(f: MultiPoly, lam: object) -> RealFactorDescription:
    """f^λ · conj(f)^conj(λ) = ((Re f)² + (Im f)²)^Re λ · exp(-2 Im λ · arg f).

    Para f real, |f|^λ = (f²)^(λ/2) com λ real.
    """
    lam = GaussianRational.de(lam)
    if f.is_zero():
        raise ParametrosInvalidos("Par conjugado nulo.")
    if f.is_real:
        if not lam.is_real:
            raise ParametrosInvalidos(f"Fator real {f} com expoente não real {lam}.")
        return RealFactorDescription(tipo="real", base=f * f, potencia=lam.re / 2)
    re, im = f.real_part(), f.imag_part()
    return RealFactorDescription(
        tipo="par_conjugado",
        base=re * re + im * im,
        potencia=lam.re,
        coef_angulo=-2 * lam.im,
        arg_angulo=(im, re),
    )


def real_form_exponencial(g: MultiPoly, h: MultiPoly, mu: object) -> RealFactorDescription:
    """exp(μ g/h) junto do conjugado: exp(2 Re(μ g h̄) / |h|²)."""
    mu = GaussianRational.de(mu)
    if h.is_zero():
        raise ParametrosInvalidos("h deve ser não nulo.")
    if g.is_real and h.is_real and mu.is_real:
        return RealFactorDescription(tipo="exponencial_real", expoente=(g.scale(mu), h))
    numerador = (g * h.conjugate()).scale(mu).real_part().scale(2)
    denominador = (h * h.conjugate()).real_part()
    return RealFactorDescription(tipo="exponencial_par", expoente=(numerador, denominador))


def _parear(
    itens: Sequence[Tuple[Tuple[MultiPoly, ...], GaussianRational]],
) -> List[Tuple[int, Optional[int]]]:
    """Índices (i, j) de pares conjugados; j None para itens reais com expoente real."""
    usados = set()
    pares: List[Tuple[int, Optional[int]]] = []
    for i, (polys, expoente) in enumerate(itens):
        if i in usados or not expoente:
            continue
        usados.add(i)
        if all(p.is_real for p in polys) and expoente.is_real:
            pares.append((i, None))
            continue
        conjugados = tuple(p.conjugate() for p in polys)
        j = next(
            (
                j
                for j, (outros, e) in enumerate(itens)
                if j not in usados and outros == conjugados and e == expoente.conjugate()
            ),
            None,
        )
        if j is None:
            raise ParametrosInvalidos(f"Fator {polys} sem conjugado correspondente.")
        usados.add(j)
        pares.append((i, j))
    return pares


def formas_reais(
    D: DarbouxFunction,
    superficies: Sequence[Union[InvariantSurface, MultiPoly]],
    exponenciais: Sequence[Union[ExponentialFactor, Tuple[MultiPoly, MultiPoly]]] = (),
) -> List[RealFactorDescription]:
    """Agrupa os fatores de D em formas reais (pares conjugados ou fatores reais).

    Raises:
        ParametrosInvalidos: fator complexo sem o conjugado com expoente conjugado.
    """
    fs = [s.f if isinstance(s, InvariantSurface) else s for s in superficies]
    ghs = [(e.g, e.h) if isinstance(e, ExponentialFactor) else tuple(e) for e in exponenciais]
    if len(fs) != len(D.lambdas) or len(ghs) != len(D.mus):
        raise ParametrosInvalidos("D não corresponde às superfícies/fatores dados.")
    formas = []
    for i, _ in _parear([((f,), lam) for f, lam in zip(fs, D.lambdas)]):
        formas.append(real_form(fs[i], D.lambdas[i]))
    for i, _ in _parear([(gh, mu) for gh, mu in zip(ghs, D.mus)]):
        g, h = ghs[i]
        formas.append(real_form_exponencial(g, h, D.mus[i]))
    return formas


# ============================================================================
# Cotas
# ============================================================================


@dataclass(frozen=True)
class BoundsReport:
    n: int
    m: Tuple[int, ...]
    thm1b: int
    thm1d: int
    thm2_total: int
    thm2_point: int
    thm3b: Fraction
    thm3d: Fraction
    thm4: int
    thm5: Optional[int]
    d_of_m: int

    def to_dict(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "m": list(self.m),
            "thm1b": self.thm1b,
            "thm1d": self.thm1d,
            "thm2_total": self.thm2_total,
            "thm2_point": self.thm2_point,
            "thm3b": str(self.thm3b),
            "thm3d": str(self.thm3d),
            "thm4": self.thm4,
            "thm5": self.thm5,
            "d_of_m": self.d_of_m,
        }


def _brutos(m: Union[DegreeVector, Sequence[int]]) -> Tuple[int, ...]:
    return m.raw if isinstance(m, DegreeVector) else tuple(int(g) for g in m)


def _graus(m: Union[DegreeVector, Sequence[int]]) -> Tuple[int, ...]:
    return tuple(sorted(_brutos(m), reverse=True))


def bounds(n: int, m: Union[DegreeVector, Sequence[int]], d: int = 2) -> BoundsReport:
    """Avalia todas as cotas para dimensão n e graus m (d: grau da hipersuperfície)."""
    graus = _graus(m)
    return BoundsReport(
        n=n,
        m=graus,
        thm1b=cotas.limiar_integral_primeira(n, graus),
        thm1d=cotas.limiar_integral_racional(n, graus),
        thm2_total=cotas.cota_hiperplanos(n, graus),
        thm2_point=cotas.cota_hiperplanos_por_ponto(n, graus),
        thm3b=cotas.limiar_esfera(n, graus),
        thm3d=cotas.limiar_esfera_racional(n, graus),
        thm4=cotas.cota_meridianos(n, graus),
        thm5=cotas.cota_paralelos(n, _brutos(m)),
        d_of_m=cotas.dimensao_quociente(n, graus[0], d),
    )


def limiar_atingido(
    p: int, q: int, n: int, m: Union[DegreeVector, Sequence[int]], esfera: bool
) -> bool:
    """p + q alcança o limiar que garante integral primeira (R^n ou S^n)."""
    graus = _graus(m)
    limiar = cotas.limiar_esfera(n, graus) if esfera else cotas.limiar_integral_primeira(n, graus)
    return p + q >= limiar
