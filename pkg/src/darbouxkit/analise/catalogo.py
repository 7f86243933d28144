"""
darbouxkit.analise.catalogo
~~~~~~~~~~~~~~~~~~~~~~~~~~~

Catálogo de sistemas de referência (regressões e exemplos).

Permite usar um sistema pelo nome em vez de escrever o JSON:
    >>> from darbouxkit.analise.catalogo import resolver_sistema
    >>> resolver_sistema("prop11").mode
    'sphere'
"""

from typing import Dict, List, Optional, Sequence, Tuple

from darbouxkit.core.exceptions import ParametrosInvalidos
from darbouxkit.schemas.relatorio import (
    Candidates,
    ExponentialCandidate,
    SistemaResumo,
    SystemSpec,
)

XYZ = ("x", "y", "z")


class SistemaCatalogo:
    """Metadados e componentes de um sistema do catálogo."""

    def __init__(
        self,
        nome: str,
        descricao: str,
        componentes: Sequence[str],
        modo: str = "sphere",
        variaveis: Sequence[str] = XYZ,
        aliases: Optional[List[str]] = None,
        superficies: Sequence[str] = (),
        exponenciais: Sequence[Tuple[str, str]] = (),
    ) -> None:
        self.nome = nome
        self.descricao = descricao
        self.componentes = list(componentes)
        self.modo = modo
        self.variaveis = list(variaveis)
        self.aliases = aliases or []
        self.superficies = list(superficies)
        self.exponenciais = list(exponenciais)

    def spec(self) -> SystemSpec:
        return SystemSpec(
            variables=self.variaveis,
            components=self.componentes,
            mode=self.modo,
            candidates=Candidates(
                surfaces=self.superficies,
                exponential_factors=[ExponentialCandidate(g=g, h=h) for g, h in self.exponenciais],
            ),
        )

    def resumo(self) -> SistemaResumo:
        return SistemaResumo(
            nome=self.nome,
            descricao=self.descricao,
            modo=self.modo,
            aliases=self.aliases,
            componentes=self.componentes,
        )

    def __repr__(self) -> str:
        return f"SistemaCatalogo('{self.nome}', {self.modo})"


CATALOGO: Dict[str, SistemaCatalogo] = {
    s.nome: s
    for s in (
        SistemaCatalogo(
            nome="prop9a",
            descricao="Campo quadrático complexo em S^2 com três meridianos invariantes",
            componentes=["i*y*(x+y) - 2*x*z", "-i*x*(x+y) - 2*y*z", "1 + x^2 + y^2 - z^2"],
            aliases=["tres_meridianos", "complexo_222"],
        ),
        SistemaCatalogo(
            nome="prop11",
            descricao="Campo de graus (2,2,1) em S^2 com o paralelo z = 0",
            componentes=["y", "1 - x - x^2 - y^2 + z^2", "-2*y*z"],
            aliases=["paralelo_221"],
        ),
        SistemaCatalogo(
            nome="rotacao",
            descricao="Rotação em torno do eixo z; todo paralelo é invariante",
            componentes=["-y", "x", "0"],
        ),
        SistemaCatalogo(
            nome="pp3_dois_meridianos",
            descricao="Membro real da subfamília com plano invariante y = 0: meridianos x, y",
            componentes=["-3*x*z", "-y*z", "1 + 2*x^2 - z^2"],
        ),
        SistemaCatalogo(
            nome="pp4_dois_meridianos",
            descricao="Membro real da subfamília com plano invariante x = 0: meridianos x, y",
            componentes=["-x*z", "-4*y*z", "1 + 3*y^2 - z^2"],
        ),
        SistemaCatalogo(
            nome="pp5_dois_meridianos",
            descricao="Membro real da subfamília com plano ax + by = 0: meridianos x, x + y",
            componentes=["-2*x*z", "-x*z - 3*y*z", "1 + x^2 + x*y + 2*y^2 - z^2"],
        ),
        SistemaCatalogo(
            nome="prop9a_ambiente",
            descricao="O campo prop9a em R^3, com x ± iy e G como candidatos de Darboux",
            componentes=["i*y*(x+y) - 2*x*z", "-i*x*(x+y) - 2*y*z", "1 + x^2 + y^2 - z^2"],
            modo="ambient",
            superficies=["x + i*y", "x - i*y", "x^2 + y^2 + z^2 - 1"],
        ),
        SistemaCatalogo(
            nome="planar_desacoplado",
            descricao="Sistema linear desacoplado no plano: retas x = 0 e y = 0",
            componentes=["x", "2*y"],
            modo="ambient",
            variaveis=("x", "y"),
        ),
        SistemaCatalogo(
            nome="planar_deslocado",
            descricao="Sistema linear com equilíbrio em (1, 2): retas x = 1 e y = 2",
            componentes=["x - 1", "3*y - 6"],
            modo="ambient",
            variaveis=("x", "y"),
        ),
        SistemaCatalogo(
            nome="planar_radial",
            descricao="Campo radial: toda reta pela origem é invariante (extático nulo)",
            componentes=["x", "y"],
            modo="ambient",
            variaveis=("x", "y"),
        ),
    )
}

# Índice reverso: alias → nome
_ALIAS_MAP: Dict[str, str] = {}
for _nome, _sistema in CATALOGO.items():
    for _alias in _sistema.aliases:
        _ALIAS_MAP[_alias.lower()] = _nome
    _ALIAS_MAP[_nome.lower()] = _nome


def buscar_por_nome(nome: str) -> Optional[SistemaCatalogo]:
    """Busca um sistema pelo nome ou alias (case-insensitive)."""
    chave = _ALIAS_MAP.get(nome.lower())
    return CATALOGO[chave] if chave is not None else None


def listar() -> List[SistemaCatalogo]:
    """Sistemas do catálogo ordenados por nome."""
    return sorted(CATALOGO.values(), key=lambda s: s.nome)


def resolver_sistema(nome: str) -> SystemSpec:
    """SystemSpec do sistema com esse nome ou alias.

    Raises:
        ParametrosInvalidos: nome fora do catálogo.
    """
    sistema = buscar_por_nome(nome)
    if sistema is None:
        raise ParametrosInvalidos(
            f"Sistema '{nome}' não encontrado no catálogo. Use 'dkit catalogo' para listar."
        )
    return sistema.spec()
