"""
darbouxkit.schemas.relatorio
~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Schemas Pydantic da descrição de sistemas (entrada da CLI e da API) e do
relatório produzido por cada comando.
"""

import re
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

_NOME_VARIAVEL = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")

# ============================================================================
# Entrada
# ============================================================================


class ExponentialCandidate(BaseModel):
    """Candidato a fator exponencial exp(g/h)."""

    g: str = Field(..., description="Numerador g")
    h: str = Field("1", description="Denominador h")


class Candidates(BaseModel):
    surfaces: List[str] = Field(default_factory=list, description="Superfícies candidatas")
    exponential_factors: List[ExponentialCandidate] = Field(default_factory=list)


class Options(BaseModel):
    """Tolerâncias, sementes e tamanhos; ausentes usam os padrões da configuração."""

    model_config = ConfigDict(extra="forbid")

    tol: Optional[float] = Field(None, gt=0, description="Tolerância numérica")
    seed: Optional[int] = Field(None, ge=0, description="Semente")
    steps: Optional[int] = Field(None, gt=0, description="Número de passos RK4")
    stepsize: Optional[float] = Field(None, gt=0, description="Passo de integração")
    trials: Optional[int] = Field(None, ge=1, description="Tentativas numéricas")
    count: Optional[int] = Field(None, ge=1, description="Quantidade de amostras")
    degrees: Optional[List[int]] = Field(None, description="Graus m das componentes")

    @field_validator("degrees")
    @classmethod
    def _graus_nao_negativos(cls, v: Optional[List[int]]) -> Optional[List[int]]:
        if v is not None and (not v or any(g < 0 for g in v)):
            raise ValueError("degrees deve ser uma lista não vazia de inteiros >= 0")
        return v


class SystemSpec(BaseModel):
    """Campo vetorial polinomial, modo de análise e candidatos."""

    variables: List[str] = Field(..., min_length=1, description="Nomes das variáveis, em ordem")
    components: List[str] = Field(..., min_length=1, description="Componentes P_i do campo")
    mode: Literal["ambient", "sphere"] = Field("ambient", description="R^N ou S^(N-1)")
    candidates: Candidates = Field(default_factory=Candidates)
    options: Options = Field(default_factory=Options)

    @field_validator("variables")
    @classmethod
    def _nomes_validos(cls, v: List[str]) -> List[str]:
        for nome in v:
            if not _NOME_VARIAVEL.match(nome):
                raise ValueError(f"Nome de variável inválido: {nome!r}")
            if nome == "i":
                raise ValueError("'i' é reservado para a unidade imaginária")
        if len(set(v)) != len(v):
            raise ValueError("Nomes de variáveis repetidos")
        return v

    @model_validator(mode="after")
    def _componentes_por_variavel(self) -> "SystemSpec":
        if len(self.components) != len(self.variables):
            raise ValueError(
                f"{len(self.components)} componentes para {len(self.variables)} variáveis"
            )
        if self.mode == "sphere" and len(self.variables) < 2:
            raise ValueError("O modo sphere exige ao menos 2 variáveis")
        return self


# ============================================================================
# Relatório
# ============================================================================


class Relatorio(BaseModel):
    """Documento de saída de qualquer comando."""

    command: str
    input_echo: Dict[str, Any] = Field(default_factory=dict)
    results: Dict[str, Any] = Field(default_factory=dict)
    bounds: Optional[Dict[str, Any]] = None
    degenerate_flags: Dict[str, bool] = Field(default_factory=dict)
    timings: Dict[str, float] = Field(default_factory=dict)


# ============================================================================
# API
# ============================================================================


class ParametrosComando(BaseModel):
    """Argumentos específicos de comando (equivalentes às flags da CLI)."""

    basis: Optional[List[str]] = Field(None, description="Base W do extático")
    surface: Optional[str] = Field(None, description="Superfície para cofactor")
    g: Optional[str] = None
    h: Optional[str] = None


class AnaliseRequest(BaseModel):
    """Requisição de análise: um sistema explícito ou o nome de um sistema do catálogo."""

    sistema: Optional[SystemSpec] = None
    nome: Optional[str] = Field(None, description="Nome ou alias do catálogo")
    parametros: ParametrosComando = Field(default_factory=ParametrosComando)

    @model_validator(mode="after")
    def _exatamente_um(self) -> "AnaliseRequest":
        if (self.sistema is None) == (self.nome is None):
            raise ValueError("Informe exatamente um de 'sistema' ou 'nome'")
        return self


class SistemaResumo(BaseModel):
    nome: str
    descricao: str
    modo: str
    aliases: List[str]
    componentes: List[str]


class CatalogoResponse(BaseModel):
    sistemas: List[SistemaResumo]
    total: int


class HealthResponse(BaseModel):
    """Resposta do health check."""

    status: str = "ok"
    versao: str
    servico: str = "DarbouxKit API"
    darbouxkit: str
    sympy: str
    numpy: str
    sistemas_catalogo: int
    autoteste: bool = Field(..., description="Certificado de tangência exato do sistema prop11")


class ErrorResponse(BaseModel):
    """Resposta de erro padrão."""

    detail: str
