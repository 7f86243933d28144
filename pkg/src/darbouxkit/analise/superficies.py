"""
darbouxkit.analise.superficies
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Superfícies invariantes: equação do cofator em R^N e módulo a esfera, busca de
paralelos, meridianos e hiperplanos pelos fatores do polinômio extático, e
verificação de fatores exponenciais.

Nada é relatado como invariante sem confirmação exata: candidatos saem do
polinômio extático (fatores lineares) e passam por cofactor_solve.
"""

import itertools
import logging
from dataclasses import dataclass, field, replace
from math import gcd, lcm
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from darbouxkit.algebra.numeros import GaussianRational
from darbouxkit.algebra.polinomio import (
    MultiPoly,
    SphereContext,
    agrupar_em,
    estender,
    exact_divide,
    monomios_ate_grau,
    reduzido,
    substitute,
)
from darbouxkit.algebra import linear
from darbouxkit.algebra.univariado import RaizNaoExata, Raizes, raizes_comuns
from darbouxkit.analise import cotas
from darbouxkit.analise.campo import PolyVectorField, check_on_sphere, lie_derivative
from darbouxkit.analise.extatico import ExtacticResult, extactic, multiplicity
from darbouxkit.core.exceptions import (
    NaoFatorExponencial,
    NaoInvariante,
    NaoTransversal,
    ParametrosInvalidos,
)

logger = logging.getLogger("darbouxkit")

TENTATIVAS_PADRAO = 8
FAIXA_SORTEIO = 3

# ============================================================================
# Tipos
# ============================================================================


@dataclass(frozen=True)
class InvariantSurface:
    """f = 0 invariante: X(f) = K·f (+ h·G quando vale só na esfera)."""

    f: MultiPoly
    cofator: MultiPoly
    tipo: str
    multiplicidade: int = 1
    multiplicador: Optional[MultiPoly] = None
    transversal: Optional[bool] = None

    @property
    def modo(self) -> str:
        return "ambiente" if self.multiplicador is None else "esfera"

    def verificar(self, X: PolyVectorField, ctx: Optional[SphereContext] = None) -> bool:
        """Reconfere a identidade multiplicando e comparando."""
        lado_direito = self.cofator * self.f
        if self.multiplicador is not None:
            if ctx is None:
                return False
            lado_direito = lado_direito + self.multiplicador * ctx.G
        return lie_derivative(X, self.f) == lado_direito


@dataclass(frozen=True)
class ExponentialFactor:
    """F = exp(g/h) com X(F) = L·F, isto é, h·X(g) - g·X(h) = L·h² (+ mult·G)."""

    g: MultiPoly
    h: MultiPoly
    cofator: MultiPoly
    multiplicador: Optional[MultiPoly] = None

    def verificar(self, X: PolyVectorField, ctx: Optional[SphereContext] = None) -> bool:
        numerador = self.h * lie_derivative(X, self.g) - self.g * lie_derivative(X, self.h)
        lado_direito = self.cofator * self.h * self.h
        if self.multiplicador is not None:
            if ctx is None:
                return False
            lado_direito = lado_direito + self.multiplicador * ctx.G
        return numerador == lado_direito


@dataclass
class ParallelReport:
    """Paralelos x_(n+1) = k encontrados como fatores de P_(n+1)."""

    exatos: List[Tuple[GaussianRational, InvariantSurface]]
    nao_exatos: List[RaizNaoExata]
    degenerado: bool
    cota: Optional[int]
    cota_prova: int
    E: MultiPoly

    @property
    def real_visible(self) -> List[Tuple[GaussianRational, InvariantSurface]]:
        """Paralelos com k real e |k| < 1 (traço real não vazio na esfera)."""
        return [(k, s) for k, s in self.exatos if k.is_real and abs(k.re) < 1]

    @property
    def contagem(self) -> int:
        exatos = sum(s.multiplicidade for _, s in self.exatos)
        return exatos + sum(r.grau * r.multiplicidade for r in self.nao_exatos)

    @property
    def atingida(self) -> bool:
        return not self.degenerado and self.cota is not None and self.contagem == self.cota


@dataclass
class LinearReport:
    """Meridianos ou hiperplanos invariantes confirmados, com o extático usado."""

    superficies: List[InvariantSurface]
    degenerado: bool
    cota: Optional[int]
    extatico: ExtacticResult
    nao_exatos: List[RaizNaoExata] = field(default_factory=list)
    reais_nao_exatos: int = 0

    @property
    def reais(self) -> List[InvariantSurface]:
        return [s for s in self.superficies if s.f.is_real]

    @property
    def contagem_reais(self) -> int:
        """Superfícies reais distintas: exatas mais raízes reais irracionais dos fatores
        não exatos (inclinações ou deslocamentos), estas sem confirmação de invariância."""
        return len(self.reais) + self.reais_nao_exatos

    @property
    def contagem(self) -> int:
        """Contagem com multiplicidade."""
        return sum(s.multiplicidade for s in self.superficies)

    @property
    def atingida(self) -> bool:
        return not self.degenerado and self.cota is not None and self.contagem == self.cota


# ============================================================================
# Classificação e transversalidade
# ============================================================================


def classificar(f: MultiPoly, ctx: Optional[SphereContext] = None) -> str:
    if f.degree() != 1:
        return "general"
    if ctx is None:
        return "hyperplane"
    a, c = f.linear_coefficients()
    ultimo = len(a) - 1
    if not any(a[:ultimo]):
        return "parallel"
    if not c and not a[ultimo]:
        return "meridian"
    return "hyperplane"


def transversal(f: MultiPoly, ctx: SphereContext) -> bool:
    """f = a·x + c é transversal à esfera, salvo se Σ a_i² != 0 e c² = Σ a_i²."""
    ctx.checar(f)
    a, c = f.linear_coefficients()
    soma = sum((ai * ai for ai in a), GaussianRational(0))
    return not (soma and c * c == soma)


def forma_normal(coeficientes: Sequence[GaussianRational]) -> Tuple[GaussianRational, ...]:
    """Coeficientes inteiros (gaussianos) sem fator inteiro comum, o primeiro real positivo."""
    primeiro = next((c for c in coeficientes if c), None)
    if primeiro is None:
        raise ParametrosInvalidos("Forma linear nula.")
    escalados = [c / primeiro for c in coeficientes]
    denominador = lcm(*(d for c in escalados for d in (c.re.denominator, c.im.denominator)))
    inteiros = [c * denominador for c in escalados]
    divisor = 0
    for c in inteiros:
        divisor = gcd(divisor, c.re.numerator, c.im.numerator)
    return tuple(GaussianRational(c.re / divisor, c.im / divisor) for c in inteiros)


# ============================================================================
# Equação do cofator
# ============================================================================


def _resolver_na_esfera(
    alvo: MultiPoly, base: MultiPoly, ctx: SphereContext, grau_max: int
) -> Optional[Tuple[MultiPoly, MultiPoly]]:
    """K com deg K <= grau_max e alvo - K·base = h·G; devolve (K, h) ou None."""
    nvars = ctx.nvars
    monomios = monomios_ate_grau(nvars, grau_max)
    colunas = [reduzido(MultiPoly({m: 1}, nvars) * base, ctx) for m in monomios]
    alvo_reduzido = reduzido(alvo, ctx)
    linhas = sorted({m for p in colunas + [alvo_reduzido] for m in p.termos})
    if not linhas:
        valores: Optional[List[GaussianRational]] = [GaussianRational(0)] * len(monomios)
    elif not monomios:
        valores = [] if alvo_reduzido.is_zero() else None
    else:
        matriz = [[col.coefficient(m) for col in colunas] for m in linhas]
        valores = linear.resolver(matriz, [alvo_reduzido.coefficient(m) for m in linhas])
    if valores is None:
        return None
    K = MultiPoly(dict(zip(monomios, valores)), nvars)
    h = exact_divide(alvo - K * base, ctx.G)
    if h is None:
        raise ArithmeticError("Resto módulo G nulo, mas sem divisão exata por G.")
    return K, h


def cofactor_solve(
    X: PolyVectorField,
    f: MultiPoly,
    ctx: Optional[SphereContext] = None,
    verificar_transversal: bool = True,
) -> InvariantSurface:
    """Resolve X(f) = K·f (ou X(f) = K·f + h·G na esfera) com deg K <= m_1 - 1.

    Args:
        X: Campo vetorial.
        f: Superfície candidata (não constante).
        ctx: Esfera; se None, a invariância é pedida em R^N.
        verificar_transversal: levanta NaoTransversal para f linear não transversal.

    Raises:
        NaoInvariante: o sistema linear do cofator não tem solução.
        NaoTransversal: (só na esfera) f linear tangente a S^n.
    """
    if f.nvars != X.nvars:
        raise ParametrosInvalidos(f"Superfície em {f.nvars} variáveis; campo em {X.nvars}.")
    if f.is_constant():
        raise ParametrosInvalidos("A superfície deve ser não constante.")
    m1 = X.graus.m1
    xf = lie_derivative(X, f)
    K = exact_divide(xf, f)
    multiplicador = None
    if K is None:
        if ctx is None:
            raise NaoInvariante(str(f))
        ctx.checar(f)
        solucao = _resolver_na_esfera(xf, f, ctx, m1 - 1)
        if solucao is None:
            raise NaoInvariante(str(f))
        K, multiplicador = solucao
    eh_transversal = None
    if ctx is not None and f.degree() == 1:
        eh_transversal = transversal(f, ctx)
        if not eh_transversal and verificar_transversal:
            raise NaoTransversal(str(f))
    return InvariantSurface(
        f=f,
        cofator=K,
        tipo=classificar(f, ctx),
        multiplicador=multiplicador,
        transversal=eh_transversal,
    )


# ============================================================================
# Fatores lineares do polinômio extático
# ============================================================================


def _raizes_restritas(F: MultiPoly, imagens: Sequence[MultiPoly]) -> Optional[Raizes]:
    """Raízes em s (última variável do anel das imagens) para as quais F se anula
    na restrição; None se a restrição é identicamente nula."""
    restrita = substitute(F, imagens)
    if restrita.is_zero():
        return None
    s = restrita.nvars - 1
    _, raizes = raizes_comuns(agrupar_em(restrita, s).values())
    return raizes


def _fatores_lineares_homogeneos(
    F: MultiPoly,
    k: int,
    rng: np.random.Generator,
    tentativas: int = TENTATIVAS_PADRAO,
) -> Tuple[List[Tuple[GaussianRational, ...]], List[RaizNaoExata]]:
    """Formas a·x em x_1..x_k (coeficientes em Q(i)) que dividem F.

    k = 1 e k = 2 são completos; para k >= 3 a busca é de Las Vegas: restringe F
    a planos aleatórios, levanta as raízes e confirma cada candidato por divisão exata.
    """
    N = F.nvars
    achados: List[Tuple[GaussianRational, ...]] = []
    nao_exatos: List[RaizNaoExata] = []

    def _registrar(a: Sequence[GaussianRational]) -> None:
        normal = forma_normal(a)
        if normal not in achados:
            achados.append(normal)

    x = MultiPoly.variables(N + 1)
    s = x[N]
    mantidas = [estender(v) for v in MultiPoly.variables(N)]

    if exact_divide(F, MultiPoly.variable(0, N)) is not None:
        _registrar([GaussianRational(1)] + [GaussianRational(0)] * (k - 1))
    if k == 1:
        return achados, nao_exatos

    if k == 2:
        imagens = list(mantidas)
        imagens[1] = s * x[0]
        raizes = _raizes_restritas(F, imagens)
        if raizes is not None:
            for s0, _ in raizes.exatas:
                _registrar([-s0, GaussianRational(1)])
            nao_exatos.extend(raizes.nao_exatas)
        return achados, nao_exatos

    for tentativa in range(tentativas):
        r = [int(v) for v in rng.integers(-FAIXA_SORTEIO, FAIXA_SORTEIO + 1, k)]
        if not any(r):
            continue
        conjuntos: Optional[List[List[GaussianRational]]] = []
        for j in range(k):
            imagens = list(mantidas)
            for i in range(k):
                imagens[i] = x[0] * r[i] + (s * x[0] if i == j else 0)
            raizes = _raizes_restritas(F, imagens)
            if raizes is None:
                conjuntos = None
                break
            conjuntos.append(
                [GaussianRational(0)] + [-(s0.inverse()) for s0, _ in raizes.exatas if s0]
            )
        if conjuntos is None:
            logger.debug("Plano degenerado na tentativa %d (r = %s).", tentativa, r)
            continue
        for a in itertools.product(*conjuntos):
            if sum((ai * ri for ai, ri in zip(a, r)), GaussianRational(0)) != 1:
                continue
            if exact_divide(F, MultiPoly.linear(a, nvars=N)) is not None:
                _registrar(a)
    if not achados:
        logger.warning("Busca aleatória esgotou %d tentativa(s) sem fator linear.", tentativas)
    return achados, nao_exatos


def _confirmar(
    X: PolyVectorField,
    resultado: ExtacticResult,
    f: MultiPoly,
    ctx: Optional[SphereContext],
) -> Optional[InvariantSurface]:
    mult = multiplicity(resultado, f)
    if mult == 0:
        logger.debug("%s não divide o polinômio extático.", f)
        return None
    try:
        superficie = cofactor_solve(X, f, ctx, verificar_transversal=False)
    except NaoInvariante:
        logger.debug("%s divide o extático mas não é invariante.", f)
        return None
    return replace(superficie, multiplicidade=mult)


def _ordenar(superficies: Iterable[InvariantSurface]) -> List[InvariantSurface]:
    return sorted(superficies, key=lambda s: str(s.f))


# ============================================================================
# Paralelos, meridianos e hiperplanos
# ============================================================================


def find_parallels(X: PolyVectorField, ctx: SphereContext) -> ParallelReport:
    """Paralelos x_(n+1) = k: raízes do mdc dos coeficientes de P_(n+1) vistos em x_(n+1).

    Raises:
        CampoNaoTangente: X não é tangente à esfera.
    """
    check_on_sphere(X, ctx)
    ultima = ctx.nvars - 1
    xn = MultiPoly.variable(ultima, ctx.nvars)
    resultado = extactic(X, [MultiPoly.constant(1, ctx.nvars), xn])
    E = resultado.E
    cota = cotas.cota_paralelos(ctx.n, X.graus.raw)
    cota_prova = max(E.degree(), 0)
    if resultado.degenerate:
        logger.info("P_(n+1) ≡ 0: todo x_(n+1) = k é invariante.")
        return ParallelReport([], [], True, cota, cota_prova, E)
    _, raizes = raizes_comuns(agrupar_em(E, ultima).values())
    exatos = []
    for k, _ in raizes.exatas:
        superficie = _confirmar(X, resultado, xn - k, ctx)
        if superficie is None:
            raise ArithmeticError(f"Raiz {k} do mdc não confirmada como paralelo.")
        exatos.append((k, superficie))
    exatos.sort(key=lambda par: (par[0].re, par[0].im))
    logger.info("%d paralelo(s) exato(s), %d fator(es) não exato(s).",
                len(exatos), len(raizes.nao_exatas))
    return ParallelReport(exatos, raizes.nao_exatas, False, cota, cota_prova, E)


def _linear_de(f: MultiPoly, variaveis: int) -> Optional[Tuple[GaussianRational, ...]]:
    """Coeficientes de f se f = a_1 x_1 + ... + a_k x_k (homogêneo em x_1..x_k)."""
    if f.degree() != 1:
        return None
    a, c = f.linear_coefficients()
    if c or any(a[variaveis:]):
        return None
    return tuple(a[:variaveis])


def find_meridians(
    X: PolyVectorField,
    ctx: SphereContext,
    candidatos: Sequence[MultiPoly] = (),
    tentativas: int = TENTATIVAS_PADRAO,
    semente: int = 0,
) -> LinearReport:
    """Meridianos a_1 x_1 + ... + a_n x_n = 0 a partir de E_{x_1,...,x_n}(X).

    Para n <= 2 a busca é completa sobre Q(i); para n >= 3 combina candidatos
    fornecidos com a busca randomizada, sempre confirmando exatamente.

    Raises:
        CampoNaoTangente: X não é tangente à esfera.
    """
    check_on_sphere(X, ctx)
    n, N = ctx.n, ctx.nvars
    resultado = extactic(X, MultiPoly.variables(N)[:n])
    cota = cotas.cota_meridianos(n, X.graus.sorted)
    if resultado.degenerate:
        return LinearReport([], True, cota, resultado)
    rng = np.random.default_rng(semente)
    coeficientes, nao_exatos = _fatores_lineares_homogeneos(resultado.E, n, rng, tentativas)
    for f in candidatos:
        a = _linear_de(f, n)
        if a is None:
            logger.warning("Candidato %s não é um meridiano; ignorado.", f)
            continue
        normal = forma_normal(a)
        if normal not in coeficientes:
            coeficientes.append(normal)
    superficies = []
    for a in coeficientes:
        superficie = _confirmar(X, resultado, MultiPoly.linear(a, nvars=N), ctx)
        if superficie is not None:
            superficies.append(superficie)
    logger.info("%d meridiano(s) invariante(s) (cota %d).", len(superficies), cota)
    reais_nao_exatos = sum(r.reais for r in nao_exatos)
    return LinearReport(
        _ordenar(superficies), False, cota, resultado, nao_exatos, reais_nao_exatos
    )


def find_hyperplanes(
    X: PolyVectorField,
    candidatos: Sequence[MultiPoly] = (),
    tentativas: int = TENTATIVAS_PADRAO,
    semente: int = 0,
) -> LinearReport:
    """Hiperplanos invariantes em R^N a partir de E_{1,x_1,...,x_N}(X).

    Direções: fatores lineares da parte homogênea de maior grau de E.
    Deslocamentos: raízes em c da restrição de E a a·x + c = 0.
    """
    N = X.nvars
    variaveis = MultiPoly.variables(N)
    resultado = extactic(X, [MultiPoly.constant(1, N)] + variaveis)
    cota = cotas.cota_hiperplanos(N, X.graus.sorted)
    if resultado.degenerate:
        return LinearReport([], True, cota, resultado)
    E = resultado.E
    rng = np.random.default_rng(semente)
    topo = E.homogeneous_part(E.degree())
    direcoes, _ = _fatores_lineares_homogeneos(topo, N, rng, tentativas)
    coeficientes: List[Tuple[GaussianRational, ...]] = []
    nao_exatos: List[RaizNaoExata] = []
    reais_nao_exatos = 0
    x = MultiPoly.variables(N + 1)
    c = x[N]
    for a in direcoes:
        j = next(i for i, ai in enumerate(a) if ai)
        b = [ai / a[j] for ai in a]
        imagens = list(x[:N])
        imagens[j] = -c - sum((x[i] * b[i] for i in range(N) if i != j), MultiPoly.zero(N + 1))
        raizes = _raizes_restritas(E, imagens)
        if raizes is None:
            raise ArithmeticError(f"Extático nulo sobre todos os hiperplanos de direção {b}.")
        for c0, _ in raizes.exatas:
            normal = forma_normal(list(b) + [c0])
            if normal not in coeficientes:
                coeficientes.append(normal)
        nao_exatos.extend(raizes.nao_exatas)
        if all(bi.is_real for bi in b):
            reais_nao_exatos += sum(r.reais for r in raizes.nao_exatas)
    for f in candidatos:
        if f.degree() != 1:
            logger.warning("Candidato %s não é um hiperplano; ignorado.", f)
            continue
        a, c0 = f.linear_coefficients()
        normal = forma_normal(list(a) + [c0])
        if normal not in coeficientes:
            coeficientes.append(normal)
    superficies = []
    for coefs in coeficientes:
        f = MultiPoly.linear(coefs[:N], coefs[N], nvars=N)
        superficie = _confirmar(X, resultado, f, None)
        if superficie is not None:
            superficies.append(superficie)
    logger.info("%d hiperplano(s) invariante(s) (cota %d).", len(superficies), cota)
    return LinearReport(
        _ordenar(superficies), False, cota, resultado, nao_exatos, reais_nao_exatos
    )


# ============================================================================
# Fatores exponenciais
# ============================================================================


def verify_exponential_factor(
    X: PolyVectorField,
    g: MultiPoly,
    h: MultiPoly,
    ctx: Optional[SphereContext] = None,
) -> ExponentialFactor:
    """Resolve h·X(g) - g·X(h) = L·h² (+ mult·G) com deg L <= m_1 - 1.

    Raises:
        NaoFatorExponencial: sistema sem solução ou cofator de grau alto demais.
    """
    if h.is_zero():
        raise ParametrosInvalidos("h deve ser não nulo.")
    if g.nvars != X.nvars or h.nvars != X.nvars:
        raise ParametrosInvalidos("g, h e o campo têm números de variáveis diferentes.")
    m1 = X.graus.m1
    if g.is_zero():
        return ExponentialFactor(g, h, MultiPoly.zero(X.nvars))
    numerador = h * lie_derivative(X, g) - g * lie_derivative(X, h)
    h2 = h * h
    L = exact_divide(numerador, h2)
    multiplicador = None
    if L is None:
        if ctx is None:
            raise NaoFatorExponencial("h·X(g) - g·X(h) não é múltiplo de h².")
        solucao = _resolver_na_esfera(numerador, h2, ctx, m1 - 1)
        if solucao is None:
            raise NaoFatorExponencial("sem cofator L de grau <= m_1 - 1 módulo G.")
        L, multiplicador = solucao
    if L.degree() > m1 - 1:
        raise NaoFatorExponencial(
            f"o cofator {L} tem grau {L.degree()} > m_1 - 1 = {m1 - 1}."
        )
    return ExponentialFactor(g, h, L, multiplicador)
