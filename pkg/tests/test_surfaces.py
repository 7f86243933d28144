"""
Testes de superfícies invariantes: equação do cofator (em R^N e módulo a esfera),
paralelos, meridianos, hiperplanos e fatores exponenciais.

As regressões usam os sistemas do catálogo; os corpora de campos amostrados
(marcados como lentos) conferem que as contagens nunca passam das cotas.
"""

from fractions import Fraction

import numpy as np
import pytest

from darbouxkit.algebra.numeros import GaussianRational
from darbouxkit.algebra.polinomio import MultiPoly, SphereContext
from darbouxkit.analise import cotas
from darbouxkit.analise.campo import PolyVectorField, sample_on_sphere_field, tangent_field_space
from darbouxkit.analise.catalogo import CATALOGO
from darbouxkit.analise.superficies import (
    _fatores_lineares_homogeneos,
    classificar,
    cofactor_solve,
    find_hyperplanes,
    find_meridians,
    find_parallels,
    forma_normal,
    transversal,
    verify_exponential_factor,
)
from darbouxkit.cli.parser import parse_poly
from darbouxkit.core.exceptions import (
    CampoNaoTangente,
    NaoFatorExponencial,
    NaoInvariante,
    NaoTransversal,
    ParametrosInvalidos,
)

XYZ = ["x", "y", "z"]
XY = ["x", "y"]
S2 = SphereContext(2)


def _p(src: str, nomes=XYZ) -> MultiPoly:
    return parse_poly(src, nomes)


def _catalogo(nome: str) -> PolyVectorField:
    sistema = CATALOGO[nome]
    return PolyVectorField([parse_poly(c, sistema.variaveis) for c in sistema.componentes])


def _g(*valores) -> tuple:
    return tuple(GaussianRational.de(v) for v in valores)


# ============================================================================
# Testes da equação do cofator
# ============================================================================


class TestCofactorSolve:
    def test_cofator_ambiente(self) -> None:
        s = cofactor_solve(_catalogo("prop9a"), _p("x + y"))
        assert s.cofator == _p("-i*(x - y - 2*i*z)")
        assert s.modo == "ambiente"
        assert s.tipo == "hyperplane"

    def test_invariante_so_na_esfera(self) -> None:
        """x^2 + y^2 = 0 é invariante em S^2 mas não em R^3 para este campo."""
        X = PolyVectorField([_p("-y + x^2 + y^2 + z^2 - 1"), _p("x"), _p("0")])
        f = _p("x^2 + y^2")
        with pytest.raises(NaoInvariante):
            cofactor_solve(X, f)
        s = cofactor_solve(X, f, S2)
        assert s.modo == "esfera"
        assert s.cofator.is_zero()
        assert s.multiplicador == _p("2*x")
        assert s.tipo == "general"
        assert s.verificar(X, S2)

    def test_nao_invariante(self) -> None:
        with pytest.raises(NaoInvariante):
            cofactor_solve(_catalogo("prop11"), _p("x"), S2)

    def test_nao_transversal(self) -> None:
        X = _catalogo("rotacao")
        with pytest.raises(NaoTransversal):
            cofactor_solve(X, _p("z - 1"), S2)
        s = cofactor_solve(X, _p("z - 1"), S2, verificar_transversal=False)
        assert s.transversal is False
        assert s.tipo == "parallel"

    def test_superficie_constante(self) -> None:
        with pytest.raises(ParametrosInvalidos):
            cofactor_solve(_catalogo("prop9a"), MultiPoly.constant(2, 3))

    def test_verificar_sem_contexto_falha_em_modo_esfera(self) -> None:
        X = PolyVectorField([_p("-y + x^2 + y^2 + z^2 - 1"), _p("x"), _p("0")])
        s = cofactor_solve(X, _p("x^2 + y^2"), S2)
        assert not s.verificar(X)


class TestClassificacao:
    def test_tipos_na_esfera(self) -> None:
        assert classificar(_p("z - 1/2"), S2) == "parallel"
        assert classificar(_p("x + y"), S2) == "meridian"
        assert classificar(_p("x + z"), S2) == "hyperplane"
        assert classificar(_p("x^2 - y"), S2) == "general"

    def test_tipos_em_rn(self) -> None:
        assert classificar(_p("x + y")) == "hyperplane"

    def test_transversalidade(self) -> None:
        assert transversal(_p("x + y + z - 1"), S2)
        assert not transversal(_p("x - 1"), S2)
        assert transversal(_p("x + i*y"), S2)

    def test_forma_normal(self) -> None:
        assert forma_normal(_g(2, 4)) == _g(1, 2)
        assert forma_normal(_g(GaussianRational(0, 1), 1)) == (
            GaussianRational(1), GaussianRational(0, -1)
        )
        with pytest.raises(ParametrosInvalidos):
            forma_normal(_g(0, 0))


# ============================================================================
# Testes de paralelos
# ============================================================================


class TestParalelos:
    def test_prop11(self) -> None:
        relatorio = find_parallels(_catalogo("prop11"), S2)
        assert len(relatorio.exatos) == 1
        k, s = relatorio.exatos[0]
        assert k == 0
        assert s.f == _p("z")
        assert s.cofator == _p("-2*y")
        assert relatorio.contagem == 1
        # cota é o grau de P_3 = -2yz
        assert relatorio.cota == 2
        assert not relatorio.atingida
        assert relatorio.real_visible == relatorio.exatos

    def test_rotacao_degenerada(self) -> None:
        relatorio = find_parallels(_catalogo("rotacao"), S2)
        assert relatorio.degenerado
        assert not relatorio.atingida

    def test_paralelos_nao_transversais_sinalizados(self) -> None:
        """P_3 = 1 - z^2: z = ±1 são invariantes mas tangentes à esfera."""
        X = PolyVectorField([_p("-x*z"), _p("-y*z"), _p("1 - z^2")])
        relatorio = find_parallels(X, S2)
        assert [k for k, _ in relatorio.exatos] == [-1, 1]
        assert all(s.transversal is False for _, s in relatorio.exatos)
        assert relatorio.real_visible == []

    def test_paralelos_irracionais(self) -> None:
        """2z^2 - 1 não tem raízes em Q(i): entra na contagem só como fator residual."""
        X = PolyVectorField(
            [_p("-x*z*(2*z^2 - 1)"), _p("-y*z*(2*z^2 - 1)"), _p("(2*z^2 - 1)*(1 - z^2)")]
        )
        relatorio = find_parallels(X, S2)
        assert [k for k, _ in relatorio.exatos] == [-1, 1]
        assert len(relatorio.nao_exatos) == 1
        assert relatorio.nao_exatos[0].grau == 2
        assert relatorio.contagem == 4
        assert relatorio.cota == 4
        assert relatorio.atingida

    def test_cota_usa_grau_da_ultima_componente(self) -> None:
        """Graus (0, 2, 2): ordenados dariam m_3 = 0, mas z = 1/2 divide P_3."""
        X = PolyVectorField([_p("0"), _p("-z*(2*z - 1)"), _p("y*(2*z - 1)")])
        relatorio = find_parallels(X, S2)
        assert [k for k, _ in relatorio.exatos] == [GaussianRational(Fraction(1, 2))]
        assert relatorio.cota == 2
        assert relatorio.contagem == 1
        assert relatorio.contagem <= relatorio.cota
        assert len(relatorio.real_visible) == 1
        assert cotas.cota_paralelos(2, X.graus.sorted) == 0

    def test_campo_nao_tangente(self) -> None:
        X = PolyVectorField([_p("1"), _p("0"), _p("0")])
        with pytest.raises(CampoNaoTangente):
            find_parallels(X, S2)


# ============================================================================
# Testes de meridianos
# ============================================================================


class TestMeridianos:
    def test_prop9a_tres_meridianos(self) -> None:
        relatorio = find_meridians(_catalogo("prop9a"), S2)
        cofatores = {s.f: s.cofator for s in relatorio.superficies}
        assert cofatores == {
            _p("x + i*y"): _p("x + y - 2*z"),
            _p("x - i*y"): _p("-(x + y + 2*z)"),
            _p("x + y"): _p("-i*(x - y - 2*i*z)"),
        }
        assert relatorio.contagem == 3
        assert relatorio.cota == 3
        assert relatorio.atingida
        assert [s.f for s in relatorio.reais] == [_p("x + y")]
        assert all(s.tipo == "meridian" for s in relatorio.superficies)

    @pytest.mark.parametrize(
        "nome, esperados",
        [
            ("pp3_dois_meridianos", {"x", "y"}),
            ("pp4_dois_meridianos", {"x", "y"}),
            ("pp5_dois_meridianos", {"x", "x + y"}),
        ],
    )
    def test_subfamilias_com_dois_meridianos_reais(self, nome: str, esperados: set) -> None:
        relatorio = find_meridians(_catalogo(nome), S2)
        assert {s.f for s in relatorio.reais} == {_p(e) for e in esperados}
        assert len(relatorio.reais) == 2

    def test_candidato_nao_meridiano_ignorado(self) -> None:
        relatorio = find_meridians(_catalogo("pp3_dois_meridianos"), S2, candidatos=[_p("z")])
        assert {s.f for s in relatorio.superficies} == {_p("x"), _p("y")}

    def test_rotacao_so_tem_meridianos_complexos(self) -> None:
        relatorio = find_meridians(_catalogo("rotacao"), S2)
        assert {s.f for s in relatorio.superficies} == {_p("x + i*y"), _p("x - i*y")}
        assert relatorio.reais == []

    def test_meridianos_irracionais_contam_como_reais(self) -> None:
        """E = 2x^2 - y^2: os meridianos y = ±√2·x são reais mas fora de Q(i)."""
        X = PolyVectorField([_p("y - 3*x^2*y"), _p("2*x - 3*x*y^2"), _p("-3*x*y*z")])
        relatorio = find_meridians(X, S2)
        assert relatorio.extatico.E == _p("2*x^2 - y^2")
        assert relatorio.reais == []
        (residual,) = relatorio.nao_exatos
        assert residual.grau == 2
        assert residual.reais == 2
        assert relatorio.contagem_reais == 2

    def test_degenerado(self) -> None:
        """x·P_2 - y·P_1 ≡ 0: todo meridiano é invariante."""
        X = PolyVectorField([_p("x*z"), _p("y*z"), _p("z^2 - 1")])
        relatorio = find_meridians(X, S2)
        assert relatorio.degenerado
        assert relatorio.superficies == []
        assert not relatorio.atingida

    def test_circulo(self) -> None:
        """Em S^1 o único candidato é x = 0."""
        X = PolyVectorField([_p("x*y", XY), _p("-x^2", XY)])
        relatorio = find_meridians(X, SphereContext(1))
        assert [s.f for s in relatorio.superficies] == [_p("x", XY)]


class TestFatoresLineares:
    def test_busca_aleatoria_em_tres_variaveis(self) -> None:
        F = _p("(x + y + z)*(x - 2*y + 3*z)*z*(x^2 + y^2 + 1)")
        achados, _ = _fatores_lineares_homogeneos(F, 3, np.random.default_rng(0))
        assert set(achados) == {_g(1, 1, 1), _g(1, -2, 3), _g(0, 0, 1)}

    def test_busca_completa_em_duas_variaveis(self) -> None:
        F = _p("x*(2*x - 3*y)*(x^2 + y^2)", XY)
        achados, nao_exatos = _fatores_lineares_homogeneos(F, 2, np.random.default_rng(0))
        esperados = {_g(1, 0), _g(2, -3), _g(1, GaussianRational(0, 1)),
                     _g(1, GaussianRational(0, -1))}
        assert set(achados) == esperados
        assert nao_exatos == []


# ============================================================================
# Testes de hiperplanos
# ============================================================================


class TestHiperplanos:
    def test_desacoplado(self) -> None:
        relatorio = find_hyperplanes(_catalogo("planar_desacoplado"))
        assert {s.f for s in relatorio.superficies} == {_p("x", XY), _p("y", XY)}
        assert relatorio.cota == 2
        assert relatorio.atingida

    def test_deslocado(self) -> None:
        relatorio = find_hyperplanes(_catalogo("planar_deslocado"))
        assert {s.f for s in relatorio.superficies} == {_p("x - 1", XY), _p("y - 2", XY)}
        cofatores = {s.f: s.cofator for s in relatorio.superficies}
        assert cofatores[_p("y - 2", XY)] == 3

    def test_radial_degenerado(self) -> None:
        relatorio = find_hyperplanes(_catalogo("planar_radial"))
        assert relatorio.degenerado
        assert relatorio.cota == cotas.cota_hiperplanos(2, (1, 1))

    def test_prop9a_em_r3(self) -> None:
        relatorio = find_hyperplanes(_catalogo("prop9a"))
        encontrados = {s.f for s in relatorio.superficies}
        assert {_p("x + i*y"), _p("x - i*y"), _p("x + y")} <= encontrados
        for s in relatorio.superficies:
            assert s.verificar(_catalogo("prop9a"))


# ============================================================================
# Testes de fatores exponenciais
# ============================================================================


class TestFatorExponencial:
    def test_fator_exp_x(self) -> None:
        X = PolyVectorField([_p("1", XY), _p("x", XY)])
        e = verify_exponential_factor(X, _p("x", XY), _p("1", XY))
        assert e.cofator == 1
        assert e.verificar(X)

    def test_cofator_de_grau_alto(self) -> None:
        X = PolyVectorField([_p("1", XY), _p("x", XY)])
        with pytest.raises(NaoFatorExponencial):
            verify_exponential_factor(X, _p("y", XY), _p("1", XY))

    def test_sem_divisao_por_h2(self) -> None:
        X = PolyVectorField([_p("1", XY), _p("x", XY)])
        with pytest.raises(NaoFatorExponencial):
            verify_exponential_factor(X, _p("1", XY), _p("x", XY))

    def test_g_nulo(self) -> None:
        X = PolyVectorField([_p("1", XY), _p("x", XY)])
        e = verify_exponential_factor(X, MultiPoly.zero(2), _p("x", XY))
        assert e.cofator.is_zero()

    def test_h_nulo(self) -> None:
        X = PolyVectorField([_p("1", XY), _p("x", XY)])
        with pytest.raises(ParametrosInvalidos):
            verify_exponential_factor(X, _p("x", XY), MultiPoly.zero(2))


# ============================================================================
# Corpora de campos amostrados
# ============================================================================


def _corpus(m: tuple, quantidade: int):
    for semente in range(quantidade):
        yield sample_on_sphere_field(2, m, semente)


class TestCorpora:
    def test_amostras_pequenas_respeitam_cotas(self) -> None:
        for X in _corpus((2, 2, 2), 10):
            _conferir_cotas(X)

    @pytest.mark.lento
    def test_no_maximo_dois_meridianos_reais(self) -> None:
        assert tangent_field_space(2, (2, 2, 2)).dimension > 0
        for X in _corpus((2, 2, 2), 1000):
            relatorio = find_meridians(X, S2)
            if not relatorio.degenerado:
                assert relatorio.contagem_reais <= 2
            _conferir_cotas(X)

    @pytest.mark.lento
    @pytest.mark.parametrize("m", [(2, 2, 1), (3, 2, 2)])
    def test_cotas_nunca_violadas(self, m: tuple) -> None:
        for X in _corpus(m, 200):
            _conferir_cotas(X, limite_paralelos=m[-1])


def _conferir_cotas(X: PolyVectorField, limite_paralelos: int = 2) -> None:
    meridianos = find_meridians(X, S2)
    if not meridianos.degenerado:
        assert meridianos.contagem <= cotas.cota_meridianos(2, X.graus.sorted)
    paralelos = find_parallels(X, S2)
    if not paralelos.degenerado:
        assert paralelos.contagem <= paralelos.cota_prova <= limite_paralelos
        assert paralelos.contagem <= paralelos.cota
