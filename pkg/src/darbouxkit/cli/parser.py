"""
darbouxkit.cli.parser
~~~~~~~~~~~~~~~~~~~~~

Leitura exata de expressões polinomiais por descida recursiva.

Gramática:
    expr   := termo (("+" | "-") termo)*
    termo  := unario ("*" unario)*
    unario := ("+" | "-") unario | potencia
    potencia := atomo ("^" INTEIRO)?
    atomo  := INTEIRO ("/" INTEIRO)? | "i" | VARIAVEL | "(" expr ")"

Multiplicação implícita e literais de ponto flutuante são rejeitados; espaços
são ignorados.

Uso:
    >>> from darbouxkit.cli.parser import parse_poly, render
    >>> render(parse_poly("i*y*(x+y) - 2*x*z", ["x", "y", "z"]), ["x", "y", "z"])
    '-2*x*z + i*y^2 + i*x*y'
"""

import re
from fractions import Fraction
from typing import List, NamedTuple, Sequence

from darbouxkit.algebra.numeros import I
from darbouxkit.algebra.polinomio import MultiPoly, render
from darbouxkit.core.exceptions import ErroSintaxe, ParametrosInvalidos

__all__ = ["parse_poly", "render"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class Token(NamedTuple):
    tipo: str
    valor: str
    posicao: int


def _tokenizar(src: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(src):
        casamento = _TOKEN.match(src, pos)
        if casamento is None or casamento.end() == pos:
            break
        numero, nome, simbolo = casamento.groups()
        inicio = casamento.start(casamento.lastindex) if casamento.lastindex else pos
        pos = casamento.end()
        if numero is not None:
            if pos < len(src) and src[pos] == ".":
                raise ErroSintaxe(pos, "literais de ponto flutuante não são aceitos")
            tokens.append(Token("int", numero, inicio))
        elif nome is not None:
            tokens.append(Token("nome", nome, inicio))
        elif simbolo is not None:
            if simbolo not in "+-*/^()":
                if simbolo == ".":
                    raise ErroSintaxe(inicio, "literais de ponto flutuante não são aceitos")
                raise ErroSintaxe(inicio, f"caractere inesperado {simbolo!r}")
            tokens.append(Token(simbolo, simbolo, inicio))
    tokens.append(Token("fim", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, nomes: Sequence[str]) -> None:
        self.src = src
        self.indices = {nome: k for k, nome in enumerate(nomes)}
        self.nvars = len(nomes)
        self.tokens = _tokenizar(src)
        self.k = 0

    @property
    def atual(self) -> Token:
        return self.tokens[self.k]

    def _avancar(self) -> Token:
        token = self.tokens[self.k]
        self.k += 1
        return token

    def _esperar(self, tipo: str, descricao: str) -> Token:
        if self.atual.tipo != tipo:
            raise ErroSintaxe(self.atual.posicao, f"esperado {descricao}")
        return self._avancar()

    def expressao(self) -> MultiPoly:
        resultado = self.termo()
        while self.atual.tipo in ("+", "-"):
            operador = self._avancar().tipo
            direita = self.termo()
            resultado = resultado + direita if operador == "+" else resultado - direita
        return resultado

    def termo(self) -> MultiPoly:
        resultado = self.unario()
        while True:
            if self.atual.tipo == "*":
                self._avancar()
                resultado = resultado * self.unario()
            elif self.atual.tipo in ("int", "nome", "("):
                raise ErroSintaxe(self.atual.posicao, "multiplicação implícita não permitida")
            elif self.atual.tipo == "/":
                raise ErroSintaxe(
                    self.atual.posicao, "'/' só é aceito entre dois inteiros literais"
                )
            else:
                return resultado

    def unario(self) -> MultiPoly:
        if self.atual.tipo == "-":
            self._avancar()
            return -self.unario()
        if self.atual.tipo == "+":
            self._avancar()
            return self.unario()
        return self.potencia()

    def potencia(self) -> MultiPoly:
        base = self.atomo()
        if self.atual.tipo != "^":
            return base
        self._avancar()
        if self.atual.tipo == "-":
            raise ErroSintaxe(self.atual.posicao, "expoente negativo")
        expoente = self._esperar("int", "expoente inteiro não negativo")
        if self.atual.tipo == "^":
            raise ErroSintaxe(self.atual.posicao, "potências encadeadas exigem parênteses")
        return base ** int(expoente.valor)

    def atomo(self) -> MultiPoly:
        token = self.atual
        if token.tipo == "int":
            self._avancar()
            valor = Fraction(int(token.valor))
            if self.atual.tipo == "/":
                self._avancar()
                denominador = self._esperar("int", "inteiro após '/'")
                if int(denominador.valor) == 0:
                    raise ErroSintaxe(denominador.posicao, "denominador nulo")
                valor = valor / int(denominador.valor)
            return MultiPoly.constant(valor, self.nvars)
        if token.tipo == "nome":
            self._avancar()
            if token.valor == "i":
                return MultiPoly.constant(I, self.nvars)
            if token.valor not in self.indices:
                raise ErroSintaxe(token.posicao, f"variável desconhecida {token.valor!r}")
            return MultiPoly.variable(self.indices[token.valor], self.nvars)
        if token.tipo == "(":
            self._avancar()
            interno = self.expressao()
            self._esperar(")", "')'")
            return interno
        if token.tipo == "fim":
            raise ErroSintaxe(token.posicao, "fim inesperado da expressão")
        raise ErroSintaxe(token.posicao, f"símbolo inesperado {token.valor!r}")


def parse_poly(src: str, nomes: Sequence[str]) -> MultiPoly:
    """Converte uma expressão em MultiPoly nas variáveis nomes (na ordem dada).

    Raises:
        ErroSintaxe: erro de sintaxe, variável desconhecida ou expoente negativo,
            com a posição (0-based) do problema.
        ParametrosInvalidos: nomes de variáveis inválidos.
    """
    if "i" in nomes:
        raise ParametrosInvalidos("'i' é reservado para a unidade imaginária.")
    if len(set(nomes)) != len(nomes):
        raise ParametrosInvalidos(f"Nomes de variáveis repetidos: {list(nomes)}")
    if not src or not src.strip():
        raise ErroSintaxe(0, "expressão vazia")
    parser = _Parser(src, nomes)
    resultado = parser.expressao()
    if parser.atual.tipo != "fim":
        token = parser.atual
        if token.tipo == ")":
            raise ErroSintaxe(token.posicao, "')' sem '(' correspondente")
        raise ErroSintaxe(token.posicao, f"símbolo inesperado {token.valor!r}")
    return resultado
