"""
darbouxkit.cli.comandos
~~~~~~~~~~~~~~~~~~~~~~~

Despacho dos comandos de análise sobre um SystemSpec. Cada comando devolve um
Relatorio e o código de saída (0 sucesso, 1 resposta negativa de pergunta sim/não).

Erros de entrada sobem como ParametrosInvalidos; a CLI os converte no código 2
e a API em HTTP 400.
"""

import logging
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from darbouxkit.algebra.polinomio import MultiPoly, SphereContext, render
from darbouxkit.algebra.univariado import RaizNaoExata
from darbouxkit.analise import darboux, numerico, superficies
from darbouxkit.analise.campo import (
    PolyVectorField,
    check_on_sphere,
    sample_on_sphere_field,
    tangent_field_space,
)
from darbouxkit.analise.extatico import extactic
from darbouxkit.analise.superficies import ExponentialFactor, InvariantSurface
from darbouxkit.cli.parser import parse_poly
from darbouxkit.core.config import Settings
from darbouxkit.core.exceptions import (
    CampoNaoTangente,
    NaoFatorExponencial,
    NaoInvariante,
    NaoTransversal,
    ParametrosInvalidos,
    SemPontosAmostrais,
)
from darbouxkit.schemas.relatorio import Relatorio, SystemSpec

logger = logging.getLogger("darbouxkit")

COMANDOS = (
    "check-sphere",
    "extactic",
    "parallels",
    "meridians",
    "hyperplanes",
    "cofactor",
    "expfactor",
    "darboux",
    "bounds",
    "sample",
    "verify-numeric",
)


# ============================================================================
# Sistema e configuração
# ============================================================================


@dataclass
class Sistema:
    """SystemSpec interpretado: nomes, campo e contexto da esfera."""

    spec: SystemSpec
    nomes: List[str]
    campo: PolyVectorField
    ctx: Optional[SphereContext]

    @property
    def n(self) -> int:
        """Dimensão: n de S^n na esfera, N de R^N no modo ambiente."""
        return self.campo.nvars - 1 if self.ctx is not None else self.campo.nvars

    def poly(self, expressao: str) -> MultiPoly:
        return parse_poly(expressao, self.nomes)

    def texto(self, p: Optional[MultiPoly]) -> Optional[str]:
        return None if p is None else render(p, self.nomes)

    def exigir_esfera(self, comando: str) -> SphereContext:
        if self.ctx is None:
            raise ParametrosInvalidos(f"O comando {comando} exige mode = sphere.")
        return self.ctx


def montar_sistema(spec: SystemSpec) -> Sistema:
    nomes = list(spec.variables)
    campo = PolyVectorField([parse_poly(c, nomes) for c in spec.components])
    ctx = SphereContext(len(nomes) - 1) if spec.mode == "sphere" else None
    return Sistema(spec=spec, nomes=nomes, campo=campo, ctx=ctx)


def configuracao(spec: SystemSpec, **sobrescritas: Any) -> Settings:
    """Settings a partir de options do JSON; flags explícitas (não None) vencem."""
    opcoes = spec.options
    valores: Dict[str, Any] = {
        "tolerancia_numerica": opcoes.tol,
        "semente": opcoes.seed,
        "passo_integracao": opcoes.stepsize,
        "tentativas_numericas": opcoes.trials,
        "amostras": opcoes.count,
    }
    valores.update(sobrescritas)
    config = Settings(**{k: v for k, v in valores.items() if v is not None})
    if opcoes.steps is not None:
        config.horizonte = opcoes.steps * config.passo_integracao
    return config


# ============================================================================
# Serialização
# ============================================================================


def _superficie(s: InvariantSurface, sistema: Sistema) -> Dict[str, Any]:
    return {
        "f": sistema.texto(s.f),
        "kind": s.tipo,
        "cofactor": sistema.texto(s.cofator),
        "multiplicity": s.multiplicidade,
        "mode": s.modo,
        "multiplier": sistema.texto(s.multiplicador),
        "transversal": s.transversal,
    }


def _exponencial(e: ExponentialFactor, sistema: Sistema) -> Dict[str, Any]:
    return {
        "g": sistema.texto(e.g),
        "h": sistema.texto(e.h),
        "cofactor": sistema.texto(e.cofator),
        "multiplier": sistema.texto(e.multiplicador),
    }


def _nao_exata(r: RaizNaoExata) -> Dict[str, Any]:
    return {
        "factor": r.fator,
        "degree": r.grau,
        "multiplicity": r.multiplicidade,
        "approximations": [{"re": z.real, "im": z.imag} for z in r.aproximacoes],
        "intervals": [[str(a), str(b)] for a, b in r.intervalos],
    }


# ============================================================================
# Comandos
# ============================================================================


@dataclass
class Contexto:
    sistema: Sistema
    config: Settings
    basis: Optional[Sequence[str]] = None
    surface: Optional[str] = None
    g: Optional[str] = None
    h: Optional[str] = None


Saida = Tuple[Dict[str, Any], int, Dict[str, bool], Optional[Dict[str, Any]]]


def _graus(sistema: Sistema) -> Tuple[int, ...]:
    graus = sistema.spec.options.degrees
    return tuple(graus) if graus is not None else sistema.campo.graus.raw


def _bounds(sistema: Sistema) -> Dict[str, Any]:
    return darboux.bounds(sistema.n, _graus(sistema)).to_dict()


def _check_sphere(c: Contexto) -> Saida:
    ctx = c.sistema.exigir_esfera("check-sphere")
    try:
        certificado = check_on_sphere(c.sistema.campo, ctx)
    except CampoNaoTangente as e:
        return {"tangent": False, "remainder": c.sistema.texto(e.resto)}, 1, {}, None
    return {"tangent": True, "cofactor": c.sistema.texto(certificado.cofator)}, 0, {}, None


def _extactic(c: Contexto) -> Saida:
    if not c.basis:
        raise ParametrosInvalidos("O comando extactic exige --basis.")
    W = [c.sistema.poly(v) for v in c.basis]
    resultado = extactic(c.sistema.campo, W)
    results = {
        "basis": [c.sistema.texto(v) for v in W],
        "E": c.sistema.texto(resultado.E),
        "degree": resultado.grau,
        "degenerate": resultado.degenerate,
    }
    return results, 0, {"extactic": resultado.degenerate}, None


def _parallels(c: Contexto) -> Saida:
    ctx = c.sistema.exigir_esfera("parallels")
    relatorio = superficies.find_parallels(c.sistema.campo, ctx)
    visiveis = {str(k) for k, _ in relatorio.real_visible}
    results = {
        "parallels": [
            dict(_superficie(s, c.sistema), k=k.to_dict(), real_visible=str(k) in visiveis)
            for k, s in relatorio.exatos
        ],
        "non_exact": [_nao_exata(r) for r in relatorio.nao_exatos],
        "count": relatorio.contagem,
        "bound": relatorio.cota,
        "proof_bound": relatorio.cota_prova,
        "attained": relatorio.atingida,
    }
    return results, 0, {"parallels": relatorio.degenerado}, _bounds(c.sistema)


def _linear(relatorio: superficies.LinearReport, chave: str, c: Contexto) -> Dict[str, Any]:
    return {
        chave: [_superficie(s, c.sistema) for s in relatorio.superficies],
        "non_exact": [_nao_exata(r) for r in relatorio.nao_exatos],
        "count": relatorio.contagem,
        "real_count": sum(s.multiplicidade for s in relatorio.reais),
        "real_non_exact": relatorio.reais_nao_exatos,
        "bound": relatorio.cota,
        "attained": relatorio.atingida,
        "E": c.sistema.texto(relatorio.extatico.E),
    }


def _candidatos(c: Contexto) -> List[MultiPoly]:
    return [c.sistema.poly(s) for s in c.sistema.spec.candidates.surfaces]


def _meridians(c: Contexto) -> Saida:
    ctx = c.sistema.exigir_esfera("meridians")
    relatorio = superficies.find_meridians(
        c.sistema.campo,
        ctx,
        candidatos=_candidatos(c),
        tentativas=c.config.tentativas_meridianos,
        semente=c.config.semente,
    )
    results = _linear(relatorio, "meridians", c)
    return results, 0, {"meridians": relatorio.degenerado}, _bounds(c.sistema)


def _buscar_hiperplanos(
    c: Contexto, candidatos: Sequence[MultiPoly] = ()
) -> superficies.LinearReport:
    return superficies.find_hyperplanes(
        c.sistema.campo,
        candidatos=candidatos,
        tentativas=c.config.tentativas_meridianos,
        semente=c.config.semente,
    )


def _hyperplanes(c: Contexto) -> Saida:
    relatorio = _buscar_hiperplanos(c, _candidatos(c))
    results = _linear(relatorio, "hyperplanes", c)
    return results, 0, {"hyperplanes": relatorio.degenerado}, _bounds(c.sistema)


def _cofactor(c: Contexto) -> Saida:
    if not c.surface:
        raise ParametrosInvalidos("O comando cofactor exige --surface.")
    f = c.sistema.poly(c.surface)
    try:
        s = superficies.cofactor_solve(c.sistema.campo, f, c.sistema.ctx)
    except NaoInvariante as e:
        return {"invariant": False, "f": c.sistema.texto(f), "reason": str(e)}, 1, {}, None
    except NaoTransversal as e:
        results = {"invariant": False, "transversal": False, "f": c.sistema.texto(f),
                   "reason": str(e)}
        return results, 1, {}, None
    return dict(_superficie(s, c.sistema), invariant=True), 0, {}, None


def _expfactor(c: Contexto) -> Saida:
    if not c.g:
        raise ParametrosInvalidos("O comando expfactor exige --g.")
    g = c.sistema.poly(c.g)
    h = c.sistema.poly(c.h or "1")
    try:
        e = superficies.verify_exponential_factor(c.sistema.campo, g, h, c.sistema.ctx)
    except NaoFatorExponencial as erro:
        results = {"exponential_factor": False, "g": c.sistema.texto(g),
                   "h": c.sistema.texto(h), "reason": erro.motivo}
        return results, 1, {}, None
    return dict(_exponencial(e, c.sistema), exponential_factor=True), 0, {}, None


def _coletar(
    c: Contexto,
) -> Tuple[List[InvariantSurface], List[ExponentialFactor], List[Dict[str, str]], Dict[str, bool]]:
    """Superfícies detectadas e candidatos confirmados, sem repetição."""
    sistema = c.sistema
    X, ctx = sistema.campo, sistema.ctx
    achadas: List[InvariantSurface] = []
    flags: Dict[str, bool] = {}
    if ctx is not None:
        meridianos = superficies.find_meridians(
            X, ctx, tentativas=c.config.tentativas_meridianos, semente=c.config.semente
        )
        paralelos = superficies.find_parallels(X, ctx)
        flags.update(meridians=meridianos.degenerado, parallels=paralelos.degenerado)
        achadas.extend(meridianos.superficies)
        achadas.extend(s for _, s in paralelos.exatos)
    else:
        hiperplanos = _buscar_hiperplanos(c)
        flags.update(hyperplanes=hiperplanos.degenerado)
        achadas.extend(hiperplanos.superficies)
    rejeitados: List[Dict[str, str]] = []
    for f in _candidatos(c):
        if any(s.f == f for s in achadas):
            continue
        try:
            achadas.append(superficies.cofactor_solve(X, f, ctx, verificar_transversal=False))
        except NaoInvariante as e:
            rejeitados.append({"f": sistema.texto(f), "reason": str(e)})
    exponenciais: List[ExponentialFactor] = []
    for candidato in sistema.spec.candidates.exponential_factors:
        g, h = sistema.poly(candidato.g), sistema.poly(candidato.h)
        try:
            exponenciais.append(superficies.verify_exponential_factor(X, g, h, ctx))
        except NaoFatorExponencial as e:
            rejeitados.append({"g": candidato.g, "h": candidato.h, "reason": e.motivo})
    return achadas, exponenciais, rejeitados, flags


def _darboux(c: Contexto) -> Saida:
    sistema = c.sistema
    achadas, exponenciais, rejeitados, flags = _coletar(c)
    p, q = len(achadas), len(exponenciais)
    results: Dict[str, Any] = {
        "surfaces": [_superficie(s, sistema) for s in achadas],
        "exponential_factors": [_exponencial(e, sistema) for e in exponenciais],
        "rejected": rejeitados,
        "p": p,
        "q": q,
        "threshold_reached": darboux.limiar_atingido(
            p, q, sistema.n, _graus(sistema), esfera=sistema.ctx is not None
        ),
        "first_integrals": [],
        "time_invariant": None,
    }
    if p + q == 0:
        return results, 0, flags, _bounds(sistema)
    cs = darboux.CofactorSystem.de(achadas, exponenciais, sistema.ctx)
    for D in darboux.find_first_integral(cs):
        verificacao = darboux.verify_darboux(sistema.campo, D, achadas, exponenciais, sistema.ctx)
        results["first_integrals"].append(dict(D.to_dict(), verified=verificacao.passou))
    invariante = darboux.find_time_invariant(cs)
    if invariante is not None:
        verificacao = darboux.verify_darboux(
            sistema.campo, invariante, achadas, exponenciais, sistema.ctx
        )
        results["time_invariant"] = dict(invariante.to_dict(), verified=verificacao.passou)
    return results, 0, flags, _bounds(sistema)


def _bounds_comando(c: Contexto) -> Saida:
    relatorio = _bounds(c.sistema)
    return dict(relatorio), 0, {}, relatorio


def _sample(c: Contexto) -> Saida:
    c.sistema.exigir_esfera("sample")
    n = c.sistema.n
    graus = _graus(c.sistema)
    espaco = tangent_field_space(n, graus)
    campos = []
    for k in range(c.config.amostras):
        semente = c.config.semente + k
        campo = sample_on_sphere_field(n, graus, semente)
        campos.append({"seed": semente, "components": campo.render(c.sistema.nomes)})
    results = {"n": n, "degrees": list(graus), "dimension": espaco.dimension, "fields": campos}
    return results, 0, {}, None


def _verify_numeric(c: Contexto) -> Saida:
    sistema = c.sistema
    config = c.config
    candidatos = _candidatos(c)
    if candidatos:
        alvos = candidatos
    elif sistema.ctx is not None:
        alvos = [s.f for s in _coletar(c)[0]]
    else:
        alvos = [s.f for s in _buscar_hiperplanos(c).superficies]
    checagens = []
    passou = True
    for f in alvos:
        item: Dict[str, Any] = {"f": sistema.texto(f)}
        if f.degree() != 1:
            item.update(skipped=True, reason="amostragem só para superfícies lineares")
            checagens.append(item)
            continue
        try:
            relatorio = numerico.check_surface_numeric(
                sistema.campo,
                f,
                tentativas=config.tentativas_numericas,
                tol=config.tolerancia_numerica,
                passo=config.passo_integracao,
                horizonte=config.horizonte,
                ctx=sistema.ctx,
                semente=config.semente,
                max_concorrencia=config.max_concorrencia,
            )
        except SemPontosAmostrais as e:
            item.update(skipped=True, reason=str(e))
            checagens.append(item)
            continue
        item.update(passed=relatorio.passou, max_deviation=relatorio.max_desvio)
        passou = passou and relatorio.passou
        checagens.append(item)
    results: Dict[str, Any] = {"surfaces": checagens, "first_integral": None}
    integral = _integral_numerica(c, candidatos)
    if integral is not None:
        results["first_integral"] = integral
        passou = passou and integral["passed"]
    results["passed"] = passou
    return results, 0 if passou else 1, {}, None


def _integral_numerica(c: Contexto, candidatos: List[MultiPoly]) -> Optional[Dict[str, Any]]:
    """Constância da primeira integral formada pelos candidatos, quando existe."""
    sistema, config = c.sistema, c.config
    confirmadas = []
    for f in candidatos:
        try:
            confirmadas.append(
                superficies.cofactor_solve(
                    sistema.campo, f, sistema.ctx, verificar_transversal=False
                )
            )
        except NaoInvariante:
            continue
    if not confirmadas:
        return None
    integrais = darboux.find_first_integral(darboux.CofactorSystem.de(confirmadas, (), sistema.ctx))
    if not integrais:
        return None
    D = integrais[0]
    orbitas = numerico.orbitas_aleatorias(
        sistema.campo,
        config.tentativas_numericas,
        passo=config.passo_integracao,
        horizonte=config.horizonte,
        ctx=sistema.ctx,
        semente=config.semente,
        max_concorrencia=config.max_concorrencia,
    )
    relatorio = numerico.check_first_integral_numeric(
        sistema.campo,
        D,
        confirmadas,
        orbitas=orbitas,
        tol=config.tolerancia_numerica,
        faixa_guarda=config.faixa_guarda,
    )
    return {
        "darboux_function": D.to_dict(),
        "passed": relatorio.passou,
        "max_relative_variation": relatorio.max_variacao,
        "excluded_orbits": relatorio.excluidas,
    }


_DESPACHO: Dict[str, Callable[[Contexto], Saida]] = {
    "check-sphere": _check_sphere,
    "extactic": _extactic,
    "parallels": _parallels,
    "meridians": _meridians,
    "hyperplanes": _hyperplanes,
    "cofactor": _cofactor,
    "expfactor": _expfactor,
    "darboux": _darboux,
    "bounds": _bounds_comando,
    "sample": _sample,
    "verify-numeric": _verify_numeric,
}


def run(
    comando: str,
    spec: SystemSpec,
    *,
    basis: Optional[Sequence[str]] = None,
    surface: Optional[str] = None,
    g: Optional[str] = None,
    h: Optional[str] = None,
    seed: Optional[int] = None,
    tol: Optional[float] = None,
    count: Optional[int] = None,
) -> Tuple[Relatorio, int]:
    """Executa um comando e devolve (relatório, código de saída).

    Raises:
        ParametrosInvalidos: comando desconhecido ou entrada inválida.
    """
    if comando not in _DESPACHO:
        raise ParametrosInvalidos(f"Comando desconhecido: {comando!r}. Use um de {COMANDOS}.")
    inicio = time.perf_counter()
    sistema = montar_sistema(spec)
    config = configuracao(spec, semente=seed, tolerancia_numerica=tol, amostras=count)
    parse = time.perf_counter() - inicio
    contexto = Contexto(sistema=sistema, config=config, basis=basis, surface=surface, g=g, h=h)
    results, codigo, flags, limites = _DESPACHO[comando](contexto)
    total = time.perf_counter() - inicio
    logger.info("Comando %s concluído em %.3fs (código %d).", comando, total, codigo)
    eco: Dict[str, Any] = spec.model_dump()
    eco.update({k: v for k, v in {"basis": basis, "surface": surface, "g": g, "h": h}.items() if v})
    relatorio = Relatorio(
        command=comando,
        input_echo=eco,
        results=results,
        bounds=limites,
        degenerate_flags=flags,
        timings={"parse": parse, "total": total},
    )
    return relatorio, codigo
