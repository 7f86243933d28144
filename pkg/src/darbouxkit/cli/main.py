"""
darbouxkit.cli.main
~~~~~~~~~~~~~~~~~~~

Ponto de entrada `dkit`.

Uso:
    dkit meridians --input sistema.json --output relatorio.json
    dkit parallels --sistema prop11
    dkit cofactor --sistema prop9a --surface "x + y"
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from darbouxkit import __version__
from darbouxkit.analise import catalogo
from darbouxkit.cli.comandos import COMANDOS, run
from darbouxkit.core.exceptions import DarbouxKitError, ParametrosInvalidos
from darbouxkit.schemas.relatorio import Relatorio, SystemSpec

logger = logging.getLogger("darbouxkit")

EXIT_ENTRADA = 2


def construir_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dkit",
        description="Superfícies invariantes e integrais de Darboux de campos polinomiais.",
    )
    p.add_argument(
        "comando", choices=COMANDOS + ("schema", "catalogo"), help="Análise a executar."
    )
    origem = p.add_mutually_exclusive_group()
    origem.add_argument("--input", "-i", type=Path, help="Arquivo JSON com o SystemSpec.")
    origem.add_argument("--sistema", help="Nome ou alias de um sistema do catálogo.")
    p.add_argument("--output", "-o", type=Path, help="Arquivo do relatório (padrão: stdout).")
    p.add_argument("--seed", type=int, help="Semente (sobrepõe options.seed).")
    p.add_argument("--tol", type=float, help="Tolerância numérica (sobrepõe options.tol).")
    p.add_argument("--count", type=int, help="Quantidade de amostras para sample.")
    p.add_argument("--basis", nargs="+", help="Base W para extactic.")
    p.add_argument("--surface", help="Superfície para cofactor.")
    p.add_argument("--g", help="Numerador g do fator exponencial exp(g/h).")
    p.add_argument("--h", help="Denominador h do fator exponencial (padrão 1).")
    p.add_argument("-v", "--verbose", action="store_true", help="Log em nível DEBUG (stderr).")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def _carregar_spec(args: argparse.Namespace) -> SystemSpec:
    if args.sistema:
        return catalogo.resolver_sistema(args.sistema)
    if args.input is None:
        raise ParametrosInvalidos("Informe --input ou --sistema.")
    return SystemSpec.model_validate_json(args.input.read_text(encoding="utf-8"))


def _escrever(texto: str, destino: Optional[Path]) -> None:
    if destino is None:
        sys.stdout.write(texto + "\n")
    else:
        destino.write_text(texto + "\n", encoding="utf-8")


def main(argv: Optional[List[str]] = None) -> int:
    args = construir_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    if args.comando == "schema":
        esquema = {
            "system_spec": SystemSpec.model_json_schema(),
            "report": Relatorio.model_json_schema(),
        }
        _escrever(json.dumps(esquema, indent=2, ensure_ascii=False), args.output)
        return 0
    if args.comando == "catalogo":
        resumo = [s.resumo().model_dump() for s in catalogo.listar()]
        _escrever(json.dumps(resumo, indent=2, ensure_ascii=False), args.output)
        return 0

    try:
        spec = _carregar_spec(args)
        relatorio, codigo = run(
            args.comando,
            spec,
            basis=args.basis,
            surface=args.surface,
            g=args.g,
            h=args.h,
            seed=args.seed,
            tol=args.tol,
            count=args.count,
        )
    except (DarbouxKitError, ValidationError, OSError) as e:
        logger.debug("Falha na entrada", exc_info=True)
        sys.stderr.write(f"erro: {e}\n")
        return EXIT_ENTRADA

    _escrever(relatorio.model_dump_json(indent=2), args.output)
    return codigo


if __name__ == "__main__":
    sys.exit(main())
