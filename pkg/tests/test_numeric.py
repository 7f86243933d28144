"""
Testes da validação numérica: RK4, confinamento de órbitas em superfícies
invariantes, constância de integrais primeiras e lotes assíncronos.
"""

import asyncio
from fractions import Fraction

import numpy as np
import pytest

from darbouxkit.algebra.polinomio import MultiPoly, SphereContext
from darbouxkit.analise.campo import PolyVectorField
from darbouxkit.analise.catalogo import CATALOGO
from darbouxkit.analise.darboux import DarbouxFunction
from darbouxkit.analise.numerico import (
    avaliador,
    check_first_integral_numeric,
    check_surface_numeric,
    executar_lote,
    integrate,
    orbitas_aleatorias,
)
from darbouxkit.analise.superficies import find_meridians
from darbouxkit.cli.parser import parse_poly
from darbouxkit.core.exceptions import (
    DivergenciaNumerica,
    ParametrosInvalidos,
    SemPontosAmostrais,
)

XYZ = ["x", "y", "z"]
XY = ["x", "y"]
S2 = SphereContext(2)


def _p(src: str, nomes=XYZ) -> MultiPoly:
    return parse_poly(src, nomes)


def _campo(nome: str) -> PolyVectorField:
    sistema = CATALOGO[nome]
    return PolyVectorField([parse_poly(c, sistema.variaveis) for c in sistema.componentes])


def _rotacao_planar() -> PolyVectorField:
    return PolyVectorField([_p("-y", XY), _p("x", XY)])


# ============================================================================
# Testes de integração
# ============================================================================


class TestIntegrate:
    def test_rotacao_planar(self) -> None:
        orbita = integrate(_rotacao_planar(), [1.0, 0.0], 0.01, 100)
        assert orbita.amostras.index.name == "t"
        assert list(orbita.amostras.columns) == XY
        assert orbita.tempos[-1] == pytest.approx(1.0)
        assert orbita.pontos[-1] == pytest.approx(np.array([np.cos(1.0), np.sin(1.0)]), abs=1e-9)
        assert orbita.deriva is None

    def test_renormalizacao_na_esfera(self) -> None:
        orbita = integrate(_campo("prop11"), [0.6, 0.0, 0.8], 1e-3, 500, ctx=S2)
        normas = np.linalg.norm(orbita.pontos, axis=1)
        assert normas == pytest.approx(np.ones(501), abs=1e-12)
        assert orbita.deriva < 1e-8
        assert not orbita.sinalizada

    def test_campo_complexo_gera_orbita_complexa(self) -> None:
        orbita = integrate(_campo("prop9a"), [0.1, 0.2, 0.3], 1e-3, 10)
        assert np.iscomplexobj(orbita.pontos)

    def test_ponto_fora_da_esfera(self) -> None:
        with pytest.raises(ParametrosInvalidos):
            integrate(_campo("prop11"), [1.0, 1.0, 0.0], 1e-3, 10, ctx=S2)

    def test_passo_invalido(self) -> None:
        with pytest.raises(ParametrosInvalidos):
            integrate(_rotacao_planar(), [1.0, 0.0], 0.0, 10)

    def test_dimensao_errada(self) -> None:
        with pytest.raises(ParametrosInvalidos):
            integrate(_rotacao_planar(), [1.0, 0.0, 0.0], 0.01, 10)

    def test_explosao_em_tempo_finito(self) -> None:
        """x' = x^2 a partir de x = 1 explode em t = 1."""
        X = PolyVectorField([_p("x^2", ["x"])])
        with pytest.raises(DivergenciaNumerica) as info:
            integrate(X, [1.0], 0.1, 200)
        assert info.value.passo > 0

    def test_avaliador_vetorizado(self) -> None:
        f = avaliador(_p("x^2 + y - 1", XY))
        assert f(np.array([[1.0, 1.0], [0.0, 0.0]])) == pytest.approx(np.array([1.0, -1.0]))
        constante = avaliador(MultiPoly.constant(2, 2))
        assert constante(np.zeros((3, 2))) == pytest.approx(np.full(3, 2.0))


# ============================================================================
# Testes de lotes
# ============================================================================


class TestExecutarLote:
    def test_ordem_preservada(self) -> None:
        assert executar_lote(lambda v: v * v, [1, 2, 3, 4], max_concorrencia=2) == [1, 4, 9, 16]

    def test_concorrencia_invalida(self) -> None:
        with pytest.raises(ParametrosInvalidos):
            executar_lote(abs, [1], max_concorrencia=0)

    async def test_dentro_de_event_loop(self) -> None:
        """Chamado de uma coroutine: usa o loop já em execução."""
        assert asyncio.get_running_loop().is_running()
        assert executar_lote(str, [1, 2]) == ["1", "2"]


# ============================================================================
# Testes de confinamento
# ============================================================================


class TestConfinamento:
    def test_meridianos_pp3(self) -> None:
        X = _campo("pp3_dois_meridianos")
        for s in find_meridians(X, S2).reais:
            relatorio = check_surface_numeric(X, s, tentativas=3, horizonte=1.0, ctx=S2)
            assert relatorio.passou
            assert len(relatorio.desvios) == 3

    def test_paralelo_prop11(self) -> None:
        relatorio = check_surface_numeric(
            _campo("prop11"), _p("z"), tentativas=2, horizonte=1.0, ctx=S2
        )
        assert relatorio.passou
        assert relatorio.max_desvio <= relatorio.tolerancia

    def test_reta_invariante_no_plano(self) -> None:
        relatorio = check_surface_numeric(
            _campo("planar_deslocado"), _p("y - 2", XY), tentativas=2, horizonte=0.5
        )
        assert relatorio.passou

    def test_superficie_complexa(self) -> None:
        with pytest.raises(SemPontosAmostrais):
            check_surface_numeric(_campo("prop9a"), _p("x + i*y"), ctx=S2)

    def test_plano_fora_da_esfera(self) -> None:
        with pytest.raises(SemPontosAmostrais):
            check_surface_numeric(_campo("prop11"), _p("z - 2"), ctx=S2)

    def test_superficie_nao_linear(self) -> None:
        with pytest.raises(ParametrosInvalidos):
            check_surface_numeric(_campo("prop11"), _p("x^2 - y"), ctx=S2)

    @pytest.mark.lento
    @pytest.mark.parametrize(
        "nome", ["pp3_dois_meridianos", "pp4_dois_meridianos", "pp5_dois_meridianos"]
    )
    def test_meridianos_horizonte_completo(self, nome: str) -> None:
        X = _campo(nome)
        for s in find_meridians(X, S2).reais:
            assert check_surface_numeric(X, s, ctx=S2).passou

    @pytest.mark.lento
    def test_paralelo_prop11_horizonte_completo(self) -> None:
        assert check_surface_numeric(_campo("prop11"), _p("z"), ctx=S2).passou


# ============================================================================
# Testes de constância de integrais primeiras
# ============================================================================


class TestIntegralNumerica:
    def test_rotacao_produto_direto(self) -> None:
        X = _rotacao_planar()
        orbitas = orbitas_aleatorias(X, 3, passo=0.01, horizonte=1.0)
        relatorio = check_first_integral_numeric(
            X, DarbouxFunction((1, 1)), [_p("x + i*y", XY), _p("x - i*y", XY)], orbitas=orbitas
        )
        assert relatorio.passou
        assert relatorio.excluidas == []

    def test_rotacao_forma_real(self) -> None:
        """λ = (1/2, 1/2): avaliado pela forma real (x^2 + y^2)^(1/2)."""
        X = _rotacao_planar()
        orbitas = orbitas_aleatorias(X, 2, passo=0.01, horizonte=1.0)
        D = DarbouxFunction((Fraction(1, 2), Fraction(1, 2)))
        relatorio = check_first_integral_numeric(
            X, D, [_p("x + i*y", XY), _p("x - i*y", XY)], orbitas=orbitas
        )
        assert relatorio.passou

    def test_invariante_temporal(self) -> None:
        """x' = x: x·e^(-t) é constante."""
        X = PolyVectorField([_p("x", ["x"])])
        orbita = integrate(X, [0.5], 0.01, 100)
        relatorio = check_first_integral_numeric(
            X, DarbouxFunction((1,), sigma=-1), [_p("x", ["x"])], orbitas=[orbita]
        )
        assert relatorio.passou

    def test_funcao_errada_falha(self) -> None:
        X = _rotacao_planar()
        orbitas = orbitas_aleatorias(X, 2, passo=0.01, horizonte=1.0)
        relatorio = check_first_integral_numeric(
            X, DarbouxFunction((1,)), [_p("x", XY)], orbitas=orbitas
        )
        assert not relatorio.passou

    def test_orbita_na_faixa_de_guarda(self) -> None:
        X = _rotacao_planar()
        parada = integrate(X, [0.0, 0.0], 0.01, 10)
        with pytest.raises(SemPontosAmostrais):
            check_first_integral_numeric(
                X, DarbouxFunction((1, 1)), [_p("x + i*y", XY), _p("x - i*y", XY)],
                orbitas=[parada],
            )

    def test_sem_orbitas(self) -> None:
        with pytest.raises(ParametrosInvalidos):
            check_first_integral_numeric(
                _rotacao_planar(), DarbouxFunction((1,)), [_p("x", XY)], orbitas=[]
            )

    def test_prop9a_ambiente_curto(self) -> None:
        X = _campo("prop9a_ambiente")
        superficies = [_p(f) for f in CATALOGO["prop9a_ambiente"].superficies]
        orbitas = orbitas_aleatorias(X, 2, horizonte=0.5, semente=3)
        relatorio = check_first_integral_numeric(
            X, DarbouxFunction((1, 1, -2)), superficies, orbitas=orbitas
        )
        assert relatorio.passou

    @pytest.mark.lento
    def test_prop9a_ambiente_dez_orbitas(self) -> None:
        """H = (x^2 + y^2)/G^2 varia no máximo 1e-6 em t ∈ [0, 10]."""
        X = _campo("prop9a_ambiente")
        superficies = [_p(f) for f in CATALOGO["prop9a_ambiente"].superficies]
        orbitas = orbitas_aleatorias(X, 10, passo=1e-3, horizonte=10.0, semente=7)
        relatorio = check_first_integral_numeric(
            X, DarbouxFunction((1, 1, -2)), superficies, orbitas=orbitas
        )
        assert relatorio.passou
        assert len(relatorio.variacoes) + len(relatorio.excluidas) == 10
