"""
Testes de campos vetoriais: derivada de Lie, tangência à esfera, espaço de campos
tangentes e o polinômio extático (detecção de fatores e equivariância pela base).
"""

import numpy as np
import pytest
import sympy

from darbouxkit.algebra.polinomio import MultiPoly, SphereContext, exact_divide, monomios_ate_grau
from darbouxkit.analise.campo import (
    TAMANHO_CACHE_LIE,
    DegreeVector,
    PolyVectorField,
    check_on_sphere,
    lie_derivative,
    sample_on_sphere_field,
    _derivada_lie,
    tangent_field_space,
)
from darbouxkit.analise.extatico import extactic, multiplicity
from darbouxkit.cli.parser import parse_poly
from darbouxkit.core.exceptions import (
    BaseDependente,
    CampoNaoTangente,
    EspacoVazio,
    ExtaticoDegenerado,
    ParametrosInvalidos,
)

XYZ = ["x", "y", "z"]
XY = ["x", "y"]

PROP9A = ["i*y*(x+y) - 2*x*z", "-i*x*(x+y) - 2*y*z", "1 + x^2 + y^2 - z^2"]
PROP11 = ["y", "1 - x - x^2 - y^2 + z^2", "-2*y*z"]


def _campo(componentes, nomes=XYZ) -> PolyVectorField:
    return PolyVectorField([parse_poly(c, nomes) for c in componentes])


def _p(src: str, nomes=XYZ) -> MultiPoly:
    return parse_poly(src, nomes)


def _inteiro(rng: np.random.Generator) -> int:
    return int(rng.integers(-3, 4))


def _poly_aleatorio(rng: np.random.Generator, nvars: int, grau: int) -> MultiPoly:
    return MultiPoly({m: _inteiro(rng) for m in monomios_ate_grau(nvars, grau)}, nvars)


# ============================================================================
# Testes do campo vetorial
# ============================================================================


class TestPolyVectorField:
    def test_graus(self) -> None:
        X = _campo(PROP11)
        assert X.graus.raw == (1, 2, 2)
        assert X.graus.sorted == (2, 2, 1)
        assert X.graus.m1 == 2
        assert X.graus.ultimo == 2

    def test_componente_nula_conta_grau_zero(self) -> None:
        assert _campo(["-y", "x", "0"]).graus.raw == (1, 1, 0)

    def test_componentes_incompativeis(self) -> None:
        with pytest.raises(ParametrosInvalidos):
            PolyVectorField([_p("x"), _p("y")])

    def test_campo_vazio(self) -> None:
        with pytest.raises(ParametrosInvalidos):
            PolyVectorField([])

    def test_degree_vector_ordenado(self) -> None:
        assert DegreeVector((1, 3, 2)).sorted == (3, 2, 1)


# ============================================================================
# Testes da derivada de Lie e da tangência
# ============================================================================


class TestTangencia:
    def test_lie_rotacao(self) -> None:
        X = _campo(["-y", "x", "0"])
        assert lie_derivative(X, _p("x^2 + y^2")).is_zero()
        assert lie_derivative(X, _p("x")) == _p("-y")

    def test_cache_da_derivada_limitado(self) -> None:
        X = _campo(["-y", "x", "z^2"])
        f = _p("x*y + z")
        lie_derivative(X, f)
        antes = _derivada_lie.cache_info()
        assert lie_derivative(_campo(["-y", "x", "z^2"]), _p("x*y + z")) == _p("x^2 - y^2 + z^2")
        depois = _derivada_lie.cache_info()
        assert depois.hits == antes.hits + 1
        assert depois.maxsize == TAMANHO_CACHE_LIE
        assert not hasattr(X, "_cache_lie")

    def test_prop9a_cofator(self) -> None:
        certificado = check_on_sphere(_campo(PROP9A), SphereContext(2))
        assert certificado.cofator == _p("-2*z")

    def test_prop11_cofator(self) -> None:
        certificado = check_on_sphere(_campo(PROP11), SphereContext(2))
        assert certificado.cofator == _p("-2*y")

    def test_campo_nao_tangente(self) -> None:
        with pytest.raises(CampoNaoTangente) as info:
            check_on_sphere(_campo(["1", "0", "0"]), SphereContext(2))
        assert info.value.resto == _p("2*x")

    def test_dimensao_incompativel(self) -> None:
        with pytest.raises(ParametrosInvalidos):
            check_on_sphere(_campo(["-y", "x"], XY), SphereContext(2))


# ============================================================================
# Testes do espaço de campos tangentes
# ============================================================================


class TestTangentFieldSpace:
    def test_campos_lineares_sao_antissimetricos(self) -> None:
        """Campos lineares tangentes a S^2: matrizes antissimétricas 3x3."""
        assert tangent_field_space(2, (1, 1, 1)).dimension == 3

    def test_base_satisfaz_tangencia(self) -> None:
        espaco = tangent_field_space(2, (2, 2, 2))
        ctx = SphereContext(2)
        assert espaco.dimension > 0
        for vetor in espaco.base:
            X, K = espaco.campo(vetor)
            assert lie_derivative(X, ctx.G) == K * ctx.G

    def test_amostra_deterministica_e_tangente(self) -> None:
        a = sample_on_sphere_field(2, (2, 2, 2), seed=42)
        b = sample_on_sphere_field(2, (2, 2, 2), seed=42)
        assert a == b
        check_on_sphere(a, SphereContext(2))

    def test_pesos_nulos_dao_campo_nulo(self) -> None:
        espaco = tangent_field_space(1, (1, 1))
        X = sample_on_sphere_field(1, (1, 1), seed=0, coeficientes=[0] * espaco.dimension)
        assert X.is_zero()

    def test_espaco_vazio(self) -> None:
        with pytest.raises(EspacoVazio):
            sample_on_sphere_field(1, (0, 0), seed=0)

    def test_graus_invalidos(self) -> None:
        with pytest.raises(ParametrosInvalidos):
            tangent_field_space(2, (2, 2))
        with pytest.raises(ParametrosInvalidos):
            tangent_field_space(0, (1,))


# ============================================================================
# Testes do polinômio extático
# ============================================================================


class TestExtactic:
    def test_reta_invariante_desacoplado(self) -> None:
        X = _campo(["x", "2*y"], XY)
        resultado = extactic(X, [MultiPoly.constant(1, 2), _p("x", XY), _p("y", XY)])
        assert resultado.E == _p("2*x*y", XY)
        assert resultado.grau == 2
        assert not resultado.degenerate

    def test_campo_radial_degenerado(self) -> None:
        X = _campo(["x", "y"], XY)
        resultado = extactic(X, [MultiPoly.constant(1, 2), _p("x", XY), _p("y", XY)])
        assert resultado.degenerate
        assert resultado.grau is None
        with pytest.raises(ExtaticoDegenerado):
            multiplicity(resultado, _p("x", XY))

    def test_multiplicidade(self) -> None:
        X = _campo(["x^2", "y"], XY)
        resultado = extactic(X, [MultiPoly.constant(1, 2), _p("x", XY), _p("y", XY)])
        assert resultado.E == _p("x^2*y - 2*x^3*y", XY)
        assert multiplicity(resultado, _p("x", XY)) == 2
        assert multiplicity(resultado, _p("y", XY)) == 1
        assert multiplicity(resultado, _p("x + y", XY)) == 0

    def test_multiplicidade_de_constante(self) -> None:
        X = _campo(["x", "2*y"], XY)
        resultado = extactic(X, [_p("x", XY), _p("y", XY)])
        with pytest.raises(ParametrosInvalidos):
            multiplicity(resultado, MultiPoly.constant(3, 2))

    def test_meridianos_prop9a(self) -> None:
        X = _campo(PROP9A)
        resultado = extactic(X, [_p("x"), _p("y")])
        assert resultado.E == _p("-i*(x + y)*(x + i*y)*(x - i*y)")

    def test_base_dependente(self) -> None:
        X = _campo(PROP9A)
        with pytest.raises(BaseDependente) as info:
            extactic(X, [_p("x"), _p("2*x")])
        assert info.value.posto == 1

    def test_base_vazia(self) -> None:
        with pytest.raises(ParametrosInvalidos):
            extactic(_campo(PROP9A), [])

    def test_metodo_desconhecido(self) -> None:
        with pytest.raises(ParametrosInvalidos):
            extactic(_campo(PROP9A), [_p("x")], metodo="gauss")

    def test_bareiss_e_cofatores_concordam(self) -> None:
        X = _campo(PROP11)
        W = [MultiPoly.constant(1, 3), _p("x"), _p("y"), _p("z")]
        assert extactic(X, W).E == extactic(X, W, metodo="cofatores").E


def _campo_com_reta(rng: np.random.Generator) -> tuple:
    """Campo planar de grau 2 com a reta f = a0 + a1 x + a2 y = 0 invariante (a2 != 0)."""
    a0, a1 = _inteiro(rng), _inteiro(rng)
    a2 = int(rng.choice([-2, -1, 1, 2]))
    f = MultiPoly.linear([a1, a2], a0)
    K = _poly_aleatorio(rng, 2, 1)
    P1 = _poly_aleatorio(rng, 2, 2)
    P2 = exact_divide(K * f - P1.scale(a1), MultiPoly.constant(a2, 2))
    return PolyVectorField([P1, P2]), f


class TestPropriedadesExtactic:
    def test_reta_plantada_divide_extatico(self) -> None:
        rng = np.random.default_rng(2024)
        W = [MultiPoly.constant(1, 2)] + MultiPoly.variables(2)
        for _ in range(20):
            X, f = _campo_com_reta(rng)
            assert exact_divide(extactic(X, W).E, f) is not None

    def test_equivariancia_pela_base(self) -> None:
        rng = np.random.default_rng(99)
        W = [MultiPoly.constant(1, 2)] + MultiPoly.variables(2)
        for _ in range(10):
            X = PolyVectorField([_poly_aleatorio(rng, 2, 2) for _ in range(2)])
            _verificar_equivariancia(rng, X, W)

    @pytest.mark.lento
    def test_reta_plantada_corpus(self) -> None:
        rng = np.random.default_rng(1)
        W = [MultiPoly.constant(1, 2)] + MultiPoly.variables(2)
        falhas = 0
        for _ in range(200):
            X, f = _campo_com_reta(rng)
            if exact_divide(extactic(X, W).E, f) is None:
                falhas += 1
        assert falhas == 0

    @pytest.mark.lento
    def test_equivariancia_corpus(self) -> None:
        rng = np.random.default_rng(100)
        W = [MultiPoly.constant(1, 2)] + MultiPoly.variables(2)
        X = PolyVectorField([_poly_aleatorio(rng, 2, 2) for _ in range(2)])
        for _ in range(100):
            _verificar_equivariancia(rng, X, W)


def _verificar_equivariancia(rng: np.random.Generator, X: PolyVectorField, W: list) -> None:
    while True:
        M = [[_inteiro(rng) for _ in W] for _ in W]
        det = sympy.Matrix(M).det()
        if det != 0:
            break
    novo = [
        sum((v.scale(c) for v, c in zip(W, linha)), MultiPoly.zero(2)) for linha in M
    ]
    assert extactic(X, novo).E == extactic(X, W).E.scale(int(det))
