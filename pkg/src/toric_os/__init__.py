"""Exact combinatorial invariants of central toric arrangements.

Given the integer matrix of defining characters, the package computes the
arithmetic matroid, the poset of layers, the Poincare polynomial of the
complement, a symbolic presentation of its rational cohomology ring, and
cross-checks the graded dimensions against independent counting formulas.
"""

from .arrangement import (
    CoveringData,
    Layer,
    LayerPoset,
    ToricArrangement,
    containment,
)
from .intlinalg import (
    IntMatrix,
    SnfDecomposition,
    column_hermite_form,
    kernel_lattice,
    multiplicity,
    saturation,
    smith_normal_form,
    torsion_cosets,
)
from .matroid import ArithmeticMatroid, CircuitDependency
from .presentation import (
    GeneratorSymbol,
    LinComb,
    Presentation,
    build_presentation,
    circuit_relations,
    integral_basis_change,
    inversion_length,
    product,
    toro_relation,
    unimodular_circuit_relation,
)
from .verify import (
    GradedDims,
    VerificationReport,
    graded_decomposition_dims,
    quotient_dimensions,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "ArithmeticMatroid",
    "CircuitDependency",
    "CoveringData",
    "GeneratorSymbol",
    "GradedDims",
    "IntMatrix",
    "Layer",
    "LayerPoset",
    "LinComb",
    "Presentation",
    "SnfDecomposition",
    "ToricArrangement",
    "VerificationReport",
    "build_presentation",
    "circuit_relations",
    "column_hermite_form",
    "containment",
    "graded_decomposition_dims",
    "integral_basis_change",
    "inversion_length",
    "kernel_lattice",
    "multiplicity",
    "product",
    "quotient_dimensions",
    "saturation",
    "smith_normal_form",
    "toro_relation",
    "torsion_cosets",
    "unimodular_circuit_relation",
    "verify",
]
