"""
darbouxkit.core.exceptions
~~~~~~~~~~~~~~~~~~~~~~~~~~

Exceções customizadas do DarbouxKit.

Respostas negativas de perguntas sim/não (campo não tangente, superfície não
invariante, ...) também são exceções; a CLI as traduz para o código de saída 1.
Erros de entrada derivam de ParametrosInvalidos e viram código de saída 2.
"""

from typing import Any


class DarbouxKitError(Exception):
    """Erro base para todas as exceções do DarbouxKit."""


class ParametrosInvalidos(DarbouxKitError):
    """Parâmetros inválidos para uma operação.

    Ex: número de variáveis incompatível, índice fora do intervalo,
    divisão pelo polinômio nulo, expoentes de Darboux todos nulos.
    """


class ErroSintaxe(ParametrosInvalidos):
    """Erro de sintaxe ao interpretar uma expressão polinomial."""

    def __init__(self, posicao: int, mensagem: str) -> None:
        self.posicao = posicao
        self.mensagem = mensagem
        super().__init__(f"Erro de sintaxe na posição {posicao}: {mensagem}")


class BaseDependente(ParametrosInvalidos):
    """A base W do polinômio extático não é linearmente independente."""

    def __init__(self, dimensao: int, posto: int) -> None:
        self.dimensao = dimensao
        self.posto = posto
        super().__init__(
            f"Base com {dimensao} elementos tem posto {posto}: elementos linearmente dependentes."
        )


class CampoNaoTangente(DarbouxKitError):
    """X(G) não é divisível por G: o campo não é tangente à esfera."""

    def __init__(self, resto: Any) -> None:
        self.resto = resto
        super().__init__(f"Campo não tangente à esfera: X(G) mod G = {resto}")


class ExtaticoDegenerado(DarbouxKitError):
    """Polinômio extático identicamente nulo.

    Multiplicidades não estão definidas nesse caso (infinitas superfícies invariantes).
    """


class NaoInvariante(DarbouxKitError):
    """O sistema linear do cofator não tem solução: a superfície não é invariante."""

    def __init__(self, superficie: str) -> None:
        self.superficie = superficie
        super().__init__(f"A superfície {superficie} = 0 não é invariante.")


class NaoTransversal(DarbouxKitError):
    """A superfície linear não é transversal à esfera."""

    def __init__(self, superficie: str) -> None:
        self.superficie = superficie
        super().__init__(f"O hiperplano {superficie} = 0 não é transversal à esfera.")


class NaoFatorExponencial(DarbouxKitError):
    """exp(g/h) não é fator exponencial do campo."""

    def __init__(self, motivo: str) -> None:
        self.motivo = motivo
        super().__init__(f"Não é fator exponencial: {motivo}")


class EspacoVazio(DarbouxKitError):
    """O espaço de campos tangentes à esfera para os graus pedidos é trivial."""


class DivergenciaNumerica(DarbouxKitError):
    """A integração numérica produziu um estado não finito."""

    def __init__(self, passo: int, tempo: float) -> None:
        self.passo = passo
        self.tempo = tempo
        super().__init__(f"Estado não finito no passo {passo} (t = {tempo:g}).")


class SemPontosAmostrais(DarbouxKitError):
    """Não há pontos reais de amostragem sobre a superfície (traço real vazio)."""
