"""Central toric arrangements, their layers, and layer arithmetic.

A layer is a connected component of an intersection of hypertori.  It is
represented canonically by the saturated lattice of characters that are
constant on it (``direction``, in column Hermite form) together with a
canonical rational translation vector in [0,1)^d, so layers obtained from
different generating subsets compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from math import comb, gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .intlinalg import (
    IntMatrix,
    frac_mod1,
    hnf_solve,
    in_lattice,
    saturation,
    smith_normal_form,
    torsion_cosets,
)
from .matroid import ArithmeticMatroid


@dataclass(frozen=True)
class Layer:
    """Connected component of an intersection of hypertori.

    direction  : column-Hermite basis of the saturated lattice of
                 characters constant on the layer (d x codim),
    translation: canonical coset label in [0,1)^d,
    support    : all element indices whose hypertorus contains the layer.
    """

    direction: IntMatrix
    translation: Tuple[Fraction, ...]
    support: Tuple[int, ...]

    @property
    def codim(self) -> int:
        return self.direction.cols

    @property
    def ambient_dim(self) -> int:
        return self.direction.rows

    def sort_key(self):
        return (self.codim, self.translation, self.direction.entries)

    def __repr__(self) -> str:
        t = ",".join(str(x) for x in self.translation)
        return f"Layer(codim={self.codim}, t=({t}), support={self.support})"


def containment(outer: Layer, inner: Layer) -> bool:
    """True iff inner is a subset of outer.

    Checked on canonical data: every direction character of the outer layer
    must lie in the inner direction lattice and take an integer value on the
    difference of the translations.
    """
    diff = [a - b for a, b in zip(inner.translation, outer.translation)]
    for j in range(outer.direction.cols):
        chi = outer.direction.column(j)
        if not in_lattice(inner.direction, chi):
            return False
        if sum(c * x for c, x in zip(chi, diff)).denominator != 1:
            return False
    return True


def _canonical_translation(direction: IntMatrix, x: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Canonical representative of x modulo Z^d plus the layer's tangent space.

    Solves the congruence system through the fixed Smith transform of the
    direction basis; the result depends only on the coset of x.
    """
    d = direction.rows
    r = direction.cols
    if r == 0:
        return tuple([Fraction(0)] * d)
    snf = smith_normal_form(direction.transpose())
    assert all(e == 1 for e in snf.D.diagonal()), "direction lattice must be saturated"
    gx = direction.transpose().mat_vec(list(x))
    c = snf.U.mat_vec(gx)
    z = [frac_mod1(ci) for ci in c] + [Fraction(0)] * (d - r)
    out = snf.V.mat_vec(z)
    return tuple(frac_mod1(v) for v in out)


@dataclass(frozen=True)
class CoveringData:
    """Component counts of the lifted hypertori and the covering degree."""

    subset: Tuple[int, ...]
    a: Tuple[int, ...]  # aligned with subset
    degree: int

    def a_map(self) -> Dict[int, int]:
        return dict(zip(self.subset, self.a))


class LayerPoset:
    """All layers ordered by reverse inclusion; the ambient torus is the minimum."""

    def __init__(self, layers: Sequence[Layer]):
        self.layers: Tuple[Layer, ...] = tuple(sorted(layers, key=Layer.sort_key))
        n = len(self.layers)
        leq = [[False] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                # layers[i] <= layers[j] iff layers[i] contains layers[j]
                leq[i][j] = containment(self.layers[i], self.layers[j])
        self._leq = leq
        self._index = {layer: i for i, layer in enumerate(self.layers)}

    def __len__(self) -> int:
        return len(self.layers)

    def index(self, layer: Layer) -> int:
        return self._index[layer]

    def le(self, a: Layer, b: Layer) -> bool:
        return self._leq[self.index(a)][self.index(b)]

    def by_codim(self) -> Dict[int, Tuple[Layer, ...]]:
        out: Dict[int, List[Layer]] = {}
        for layer in self.layers:
            out.setdefault(layer.codim, []).append(layer)
        return {k: tuple(v) for k, v in out.items()}

    def cover_edges(self) -> Tuple[Tuple[int, int], ...]:
        """Transitive reduction of the order as (lower, upper) index pairs."""
        n = len(self.layers)
        edges = []
        for i in range(n):
            for j in range(n):
                if i == j or not self._leq[i][j]:
                    continue
                if any(
                    self._leq[i][k] and self._leq[k][j]
                    for k in range(n)
                    if k != i and k != j
                ):
                    continue
                edges.append((i, j))
        return tuple(edges)

    def minimal_upper_bounds(self, members: Sequence[Layer]) -> Tuple[Layer, ...]:
        idxs = [self.index(m) for m in members]
        ubs = [
            j
            for j in range(len(self.layers))
            if all(self._leq[i][j] for i in idxs)
        ]
        minimal = [
            j
            for j in ubs
            if not any(k != j and self._leq[k][j] for k in ubs)
        ]
        return tuple(self.layers[j] for j in minimal)


class ToricArrangement:
    """A central arrangement of hypertori given by primitive integer characters."""

    def __init__(
        self,
        characters: Sequence[Sequence[int]],
        dimension: Optional[int] = None,
        normalize: bool = False,
    ):
        chars = [tuple(int(x) for x in chi) for chi in characters]
        if dimension is None:
            if not chars:
                raise ValueError("dimension required for an empty arrangement")
            dimension = len(chars[0])
        if any(len(chi) != dimension for chi in chars):
            raise ValueError("character length does not match dimension")
        cooked = []
        for chi in chars:
            content = 0
            for x in chi:
                content = gcd(content, x)
            if content == 0:
                raise ValueError("zero character")
            if content > 1:
                if not normalize:
                    raise ValueError(f"character {list(chi)} is not primitive")
                chi = tuple(x // content for x in chi)
            cooked.append(chi)
        self.dimension = dimension
        self.characters: Tuple[Tuple[int, ...], ...] = tuple(cooked)
        self.matrix = IntMatrix.from_columns(self.characters, rows=dimension)
        self.matroid = ArithmeticMatroid(self.matrix)
        self._layers_cache: Dict[Tuple[int, ...], Tuple[Layer, ...]] = {}
        self._poset: Optional[LayerPoset] = None
        self._intersections: Dict[Tuple[Layer, Layer], Tuple[Layer, ...]] = {}

    # -- basic data --------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.characters)

    def elements(self) -> range:
        return range(self.size)

    def is_essential(self) -> bool:
        return self.matroid.full_rank() == self.dimension

    def is_unimodular(self) -> bool:
        return self.matroid.is_unimodular()

    def torus(self) -> Layer:
        return self._make_layer(
            IntMatrix.zero(self.dimension, 0),
            tuple([Fraction(0)] * self.dimension),
        )

    # -- layer construction --------------------------------------------------

    def _make_layer(self, direction: IntMatrix, x: Sequence[Fraction]) -> Layer:
        t = _canonical_translation(direction, x)
        support = []
        for i in range(self.size):
            chi = self.characters[i]
            if not in_lattice(direction, chi):
                continue
            if sum(c * v for c, v in zip(chi, t)).denominator == 1:
                support.append(i)
        return Layer(direction, t, tuple(support))

    def layers_of(self, subset: Iterable[int]) -> Tuple[Layer, ...]:
        """Connected components of the intersection over an independent subset."""
        sub = tuple(sorted(set(subset)))
        cached = self._layers_cache.get(sub)
        if cached is not None:
            return cached
        if not self.matroid.is_independent(sub):
            raise ValueError("subset must be independent")
        cols = self.matrix.column_submatrix(sub)
        direction = saturation(cols)
        layers = [self._make_layer(direction, x) for x in torsion_cosets(cols)]
        layers.sort(key=Layer.sort_key)
        out = tuple(layers)
        self._layers_cache[sub] = out
        return out

    def layer_poset(self) -> LayerPoset:
        if self._poset is None:
            seen: Dict[Layer, None] = {}
            for sub in self.matroid.independent_subsets():
                for layer in self.layers_of(sub):
                    seen[layer] = None
            self._poset = LayerPoset(list(seen))
        return self._poset

    def local_arrangement(self, layer: Layer) -> ArithmeticMatroid:
        """Matroid of the hyperplane arrangement in the tangent space at the layer."""
        return self.matroid.restriction(layer.support)

    def intersect_layers(self, first: Layer, second: Layer) -> Tuple[Layer, ...]:
        """Connected components of the set intersection of two layers."""
        key = (first, second)
        cached = self._intersections.get(key)
        if cached is not None:
            return cached
        stacked = first.direction.hstack(second.direction)
        target = []
        for layer in (first, second):
            target.extend(layer.direction.transpose().mat_vec(list(layer.translation)))
        snf = smith_normal_form(stacked.transpose())
        divisors = [e for e in snf.D.diagonal() if e]
        s = len(divisors)
        c = snf.U.mat_vec(target)
        if any(ci.denominator != 1 for ci in c[s:]):
            out: Tuple[Layer, ...] = ()
            self._intersections[key] = out
            return out
        direction = saturation(stacked)
        found = []
        for tup in cartesian(*(range(e) for e in divisors)):
            z = [(c[i] + tup[i]) / divisors[i] for i in range(s)]
            z += [Fraction(0)] * (self.dimension - s)
            y = snf.V.mat_vec(z)
            found.append(self._make_layer(direction, [frac_mod1(v) for v in y]))
        found.sort(key=Layer.sort_key)
        out = tuple(found)
        self._intersections[key] = out
        return out

    def components_of(self, subset: Iterable[int]) -> Tuple[Layer, ...]:
        """Components of the intersection over an arbitrary (possibly dependent) subset."""
        sub = tuple(sorted(set(subset)))
        if not sub:
            return (self.torus(),)
        if self.matroid.is_independent(sub):
            return self.layers_of(sub)
        base = None
        for c in self.matroid.circuits():
            if set(c) <= set(sub):
                base = tuple(i for i in sub if i != c[0])
                break
        if base is None or not self.matroid.is_independent(base):
            raise ValueError("only corank-one dependent subsets are supported")
        picked = [w for w in self.layers_of(base) if set(sub) <= set(w.support)]
        return tuple(picked)

    # -- essentialization ----------------------------------------------------

    def essentialize(self) -> Tuple["ToricArrangement", int]:
        """Project onto the span of the characters; returns the rank deficit too."""
        r = self.matroid.full_rank() if self.size else 0
        if r == self.dimension:
            return self, 0
        basis = saturation(self.matrix)
        new_chars = []
        for chi in self.characters:
            coords = hnf_solve(basis, chi)
            assert coords is not None
            new_chars.append(coords)
        projected = ToricArrangement(new_chars, dimension=r)
        return projected, self.dimension - r

    # -- enumerative invariants ----------------------------------------------

    def nbc_counts(self) -> Tuple[int, ...]:
        """Per-codimension totals of no-broken-circuit sets of local arrangements."""
        counts = [0] * (self.dimension + 1)
        for layer in self.layer_poset().layers:
            k = layer.codim
            counts[k] += len(self.local_arrangement(layer).nbc_sets(k))
        return tuple(counts)

    def poincare_polynomial(self) -> Tuple[int, ...]:
        """Coefficients of the Poincare polynomial of the complement."""
        d = self.dimension
        counts = self.nbc_counts()
        coeffs = [0] * (d + 1)
        for j, nj in enumerate(counts):
            # expand nj * (t+1)^(d-j) * t^j
            for i in range(d - j + 1):
                coeffs[j + i] += nj * comb(d - j, i)
        return tuple(coeffs)

    def covering_data(self, subset: Iterable[int]) -> CoveringData:
        """Arithmetic of the unimodularizing cover of a corank-one subset."""
        sub = tuple(sorted(set(subset)))
        if self.matroid.rank(sub) != len(sub) - 1:
            raise ValueError("subset must contain exactly one circuit")
        circuit = self.matroid.circuit_within(sub)
        m = self.matroid.multiplicity
        m_sub = m(sub)
        a = []
        for i in sub:
            if i in circuit:
                value = m_sub
                for j in circuit:
                    if j != i:
                        value *= m(tuple(k for k in circuit if k != j))
            else:
                value = m_sub
            a.append(value)
        a_map = dict(zip(sub, a))
        degrees = set()
        for i in circuit:
            num = 1
            for j in sub:
                if j != i:
                    num *= a_map[j]
            rest = tuple(j for j in sub if j != i)
            den = m(rest)
            if num % den:
                raise ArithmeticError("covering degree is not an integer")
            degrees.add(num // den)
        if len(degrees) != 1:
            raise ArithmeticError("covering degree depends on the deleted element")
        return CoveringData(sub, tuple(a), degrees.pop())
