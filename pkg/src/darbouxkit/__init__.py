"""
DarbouxKit: Superfícies invariantes e integrabilidade de Darboux de campos
vetoriais polinomiais em R^N e na esfera S^n.

Uso rápido:
    >>> from darbouxkit import MultiPoly, PolyVectorField, SphereContext, find_meridians
    >>> x, y, z = MultiPoly.variables(3)
    >>> X = PolyVectorField([-3 * x * z, -y * z, 1 + 2 * x**2 - z**2])
    >>> [str(s.f) for s in find_meridians(X, SphereContext(2)).superficies]
    ['x', 'y']
"""

from darbouxkit.algebra.numeros import GaussianRational
from darbouxkit.algebra.polinomio import MultiPoly, SphereContext
from darbouxkit.analise.campo import PolyVectorField, check_on_sphere, tangent_field_space
from darbouxkit.analise.darboux import bounds, find_first_integral, verify_darboux
from darbouxkit.analise.extatico import extactic
from darbouxkit.analise.superficies import (
    cofactor_solve,
    find_hyperplanes,
    find_meridians,
    find_parallels,
)

__version__ = "0.1.0"
__all__ = [
    "GaussianRational",
    "MultiPoly",
    "PolyVectorField",
    "SphereContext",
    "bounds",
    "check_on_sphere",
    "cofactor_solve",
    "extactic",
    "find_first_integral",
    "find_hyperplanes",
    "find_meridians",
    "find_parallels",
    "tangent_field_space",
    "verify_darboux",
    "__version__",
]
