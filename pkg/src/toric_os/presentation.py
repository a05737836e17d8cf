"""Symbolic presentation of the cohomology ring of a toric-arrangement complement.

Generators are formal symbols indexed by a layer W, an independent set A
cutting W out, and a disjoint set B of toral directions; the relations come
in three families: structure constants for products of two symbols, linear
relations among degree-one toral symbols, and one relation for every
corank-one subset and every component of its intersection.  All
coefficients are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .arrangement import Layer, ToricArrangement, containment
from .intlinalg import kernel_lattice


@dataclass(frozen=True)
class GeneratorSymbol:
    """Formal generator e(W, A; B) of degree |A| + |B|."""

    layer: Layer
    a_part: Tuple[int, ...]
    b_part: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.a_part) + len(self.b_part)

    def sort_key(self):
        return (self.degree, self.a_part, self.b_part, self.layer.sort_key())

    def __repr__(self) -> str:
        t = ",".join(str(x) for x in self.layer.translation)
        return (
            f"e(codim{self.layer.codim}@({t}); "
            f"A={list(self.a_part)}; B={list(self.b_part)})"
        )


class LinComb:
    """Exact rational linear combination of generator symbols."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Tuple[GeneratorSymbol, Fraction]] = ()):
        acc: Dict[GeneratorSymbol, Fraction] = {}
        for sym, coeff in terms:
            c = acc.get(sym, Fraction(0)) + coeff
            if c:
                acc[sym] = c
            elif sym in acc:
                del acc[sym]
        self.terms = acc

    @classmethod
    def single(cls, sym: GeneratorSymbol, coeff=1) -> "LinComb":
        return cls([(sym, Fraction(coeff))])

    @classmethod
    def zero(cls) -> "LinComb":
        return cls()

    def items(self) -> List[Tuple[GeneratorSymbol, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def coefficient(self, sym: GeneratorSymbol) -> Fraction:
        return self.terms.get(sym, Fraction(0))

    def scale(self, c) -> "LinComb":
        c = Fraction(c)
        if not c:
            return LinComb()
        return LinComb((s, v * c) for s, v in self.terms.items())

    def __add__(self, other: "LinComb") -> "LinComb":
        return LinComb(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + other.scale(-1)

    def __neg__(self) -> "LinComb":
        return self.scale(-1)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinComb) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degree(self) -> Optional[int]:
        """Common degree of the terms; None for the zero combination."""
        degrees = {s.degree for s in self.terms}
        if not degrees:
            return None
        assert len(degrees) == 1, "inhomogeneous combination"
        return degrees.pop()

    def __repr__(self) -> str:
        if not self.terms:
            return "LinComb(0)"
        bits = [f"{c}*{s!r}" for s, c in self.items()]
        return "LinComb(" + " + ".join(bits) + ")"


def inversion_length(a_set: Sequence[int], b_set: Sequence[int]) -> int:
    """Length of the shuffle taking the concatenation (A, B) to sorted A u B."""
    sa, sb = set(a_set), set(b_set)
    if sa & sb:
        raise ValueError("sets must be disjoint")
    return sum(1 for a in sa for b in sb if a > b)


def product(arr: ToricArrangement, g: GeneratorSymbol, h: GeneratorSymbol) -> LinComb:
    """Product of two generator symbols as a combination of symbols.

    Zero when the index sets overlap, when their union is dependent, or when
    the layers do not meet; otherwise a signed sum over the components of the
    intersection of the two layers.
    """
    left = g.a_part + g.b_part
    right = h.a_part + h.b_part
    if set(left) & set(right):
        return LinComb.zero()
    union = sorted(left + right)
    if not arr.matroid.is_independent(union):
        return LinComb.zero()
    components = arr.intersect_layers(g.layer, h.layer)
    if not components:
        return LinComb.zero()
    sign = (-1) ** inversion_length(sorted(left), sorted(right))
    new_a = tuple(sorted(g.a_part + h.a_part))
    new_b = tuple(sorted(g.b_part + h.b_part))
    return LinComb(
        (GeneratorSymbol(layer, new_a, new_b), Fraction(sign)) for layer in components
    )


def toro_relation(arr: ToricArrangement, dep: Sequence[int]) -> LinComb:
    """Degree-one relation sum_i n_i e(T, {}; {i}) from an integer dependency."""
    if len(dep) != arr.size:
        raise ValueError("dependency length mismatch")
    if any(arr.matrix.mat_vec(list(dep))):
        raise ValueError("vector is not a dependency of the characters")
    torus = arr.torus()
    return LinComb(
        (GeneratorSymbol(torus, (), (i,)), Fraction(n))
        for i, n in enumerate(dep)
        if n
    )


def _layer_above(arr: ToricArrangement, subset: Tuple[int, ...], low: Layer) -> Layer:
    """The unique component of the intersection over ``subset`` containing ``low``."""
    matches = [w for w in arr.layers_of(subset) if containment(w, low)]
    assert len(matches) == 1
    return matches[0]


def circuit_relations(arr: ToricArrangement, subset: Iterable[int], low: Layer) -> LinComb:
    """The relation attached to a corank-one subset X and a component of its intersection.

    X splits as the disjoint union of its unique circuit C and a free part F.
    Terms run over j in C and splittings X = A + B + {j} with F inside A and
    |B| even; the symbol is e(W, A; B) for the component W above ``low``, with
    coefficient (-1)^(#{a in A : a <= j}) * c_B * m(A)/m(A u B).
    """
    x = tuple(sorted(set(subset)))
    matroid = arr.matroid
    if matroid.rank(x) != len(x) - 1:
        raise ValueError("subset must have corank one")
    if low.codim != matroid.rank(x) or not set(x) <= set(low.support):
        raise ValueError("layer is not a component of the subset intersection")
    circuit = matroid.circuit_within(x)
    dep = matroid.circuit_dependency(circuit)
    terms: List[Tuple[GeneratorSymbol, Fraction]] = []
    for j in circuit:
        others = tuple(i for i in x if i != j)
        pool = tuple(i for i in circuit if i != j)
        for size in range(0, len(pool) + 1, 2):
            for b_part in combinations(pool, size):
                a_part = tuple(i for i in others if i not in b_part)
                w = _layer_above(arr, a_part, low)
                sign = (-1) ** sum(1 for a in a_part if a <= j)
                coeff = Fraction(
                    sign * dep.sign_product(b_part) * matroid.multiplicity(a_part),
                    matroid.multiplicity(others),
                )
                terms.append((GeneratorSymbol(w, a_part, b_part), coeff))
    return LinComb(terms)


def unimodular_circuit_relation(arr: ToricArrangement, circuit: Iterable[int]) -> LinComb:
    """Specialization of the circuit relation when every multiplicity is one."""
    if not arr.is_unimodular():
        raise ValueError("arrangement is not unimodular")
    c = tuple(sorted(set(circuit)))
    dep = arr.matroid.circuit_dependency(c)
    assert all(abs(n) == 1 for n in dep.coeffs)
    terms: List[Tuple[GeneratorSymbol, Fraction]] = []
    for j in c:
        pool = tuple(i for i in c if i != j)
        for size in range(0, len(pool) + 1, 2):
            for b_part in combinations(pool, size):
                a_part = tuple(i for i in pool if i not in b_part)
                layers = arr.layers_of(a_part)
                assert len(layers) == 1
                sign = (-1) ** sum(1 for a in a_part if a <= j)
                coeff = Fraction(sign * dep.sign_product(b_part))
                terms.append((GeneratorSymbol(layers[0], a_part, b_part), coeff))
    return LinComb(terms)


def integral_basis_change(
    arr: ToricArrangement,
    layer: Layer,
    a_part: Iterable[int],
    b_part: Iterable[int],
) -> LinComb:
    """Expansion of a doubled-form symbol over the integral generating family.

    The returned combination is written over symbols (L, A', B') that stand
    for the plain (undoubled) generators; the leading term keeps (layer, A)
    with coefficient 2^|A|, the others drop into lower filtration degree.
    """
    a = tuple(sorted(set(a_part)))
    b = tuple(sorted(set(b_part)))
    if set(a) & set(b):
        raise ValueError("index sets overlap")
    if not arr.matroid.is_independent(a + b):
        raise ValueError("union is dependent")
    if layer.codim != len(a) or not set(a) <= set(layer.support):
        raise ValueError("layer is not cut out by the first index set")
    m = arr.matroid.multiplicity
    m_a = m(a)
    terms: List[Tuple[GeneratorSymbol, Fraction]] = []
    for size in range(len(a) + 1):
        for dropped in combinations(a, size):
            rest = tuple(i for i in a if i not in dropped)
            up = _layer_above(arr, rest, layer)
            coeff = Fraction((-1) ** size * 2 ** len(rest) * m(rest), m_a)
            terms.append(
                (GeneratorSymbol(up, rest, tuple(sorted(b + dropped))), coeff)
            )
    return LinComb(terms)


@dataclass
class Presentation:
    """Generators and relations of the cohomology ring of the complement.

    Built over the essentialized arrangement; ``torus_rank_deficit`` records
    how many free torus directions were split off from the original input.
    """

    arrangement: ToricArrangement
    torus_rank_deficit: int
    generators: Tuple[GeneratorSymbol, ...]
    toro_relations: Tuple[LinComb, ...]
    circuit_relations: Tuple[LinComb, ...]
    circuit_relation_keys: Tuple[Tuple[Tuple[int, ...], Layer], ...]
    _products: Dict[Tuple[GeneratorSymbol, GeneratorSymbol], LinComb] = field(
        default_factory=dict, repr=False
    )

    def product(self, g: GeneratorSymbol, h: GeneratorSymbol) -> LinComb:
        key = (g, h)
        got = self._products.get(key)
        if got is None:
            got = product(self.arrangement, g, h)
            self._products[key] = got
        return got

    def product_rules(self) -> Dict[Tuple[GeneratorSymbol, GeneratorSymbol], LinComb]:
        """Full table of pairwise products (materialized on demand)."""
        for g in self.generators:
            for h in self.generators:
                self.product(g, h)
        return dict(self._products)

    def relations(self) -> Tuple[LinComb, ...]:
        return self.toro_relations + self.circuit_relations

    def symbols_by_degree(self) -> Dict[int, Tuple[GeneratorSymbol, ...]]:
        out: Dict[int, List[GeneratorSymbol]] = {}
        for g in self.generators:
            out.setdefault(g.degree, []).append(g)
        return {k: tuple(v) for k, v in out.items()}

    def multiply(self, comb: LinComb, sym: GeneratorSymbol) -> LinComb:
        out = LinComb()
        for g, c in comb.terms.items():
            out = out + self.product(g, sym).scale(c)
        return out


def build_presentation(arr: ToricArrangement) -> Presentation:
    """Enumerate all generators and relations for a central arrangement."""
    ess, deficit = arr.essentialize()
    matroid = ess.matroid
    generators: List[GeneratorSymbol] = []
    complement_all = list(ess.elements())
    for layer in ess.layer_poset().layers:
        k = layer.codim
        for a_part in combinations(layer.support, k):
            if not matroid.is_independent(a_part):
                continue
            rest = [i for i in complement_all if i not in a_part]
            for size in range(0, len(rest) + 1):
                for b_part in combinations(rest, size):
                    if matroid.is_independent(a_part + b_part):
                        generators.append(GeneratorSymbol(layer, a_part, b_part))
    generators.sort(key=GeneratorSymbol.sort_key)

    kernel = kernel_lattice(ess.matrix)
    toro = tuple(toro_relation(ess, kernel.column(j)) for j in range(kernel.cols))

    circuit_rels: List[LinComb] = []
    keys: List[Tuple[Tuple[int, ...], Layer]] = []
    for x in matroid.corank_one_subsets():
        for low in ess.components_of(x):
            circuit_rels.append(circuit_relations(ess, x, low))
            keys.append((x, low))

    return Presentation(
        arrangement=ess,
        torus_rank_deficit=deficit,
        generators=tuple(generators),
        toro_relations=toro,
        circuit_relations=tuple(circuit_rels),
        circuit_relation_keys=tuple(keys),
    )
