"""Matroid and multiplicity structure of an integer character list.

The ground set is the ordered index set of the matrix columns; every
subset keeps the induced order.  Rank is rational rank of the chosen
columns, and the multiplicity of a subset is the index of the sublattice
it spans inside its saturation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .intlinalg import IntMatrix, int_rank, kernel_lattice, multiplicity


@dataclass(frozen=True)
class CircuitDependency:
    """Primitive integer dependency supported on a circuit.

    ``coeffs[k]`` is the coefficient of ``circuit[k]``; the coefficient of
    the smallest circuit element is positive and the entries have content
    one.  Up to one global positive rational factor the magnitudes equal
    the multiplicities of the one-element-deleted subsets.
    """

    circuit: Tuple[int, ...]
    coeffs: Tuple[int, ...]

    @property
    def coefficients(self) -> Dict[int, int]:
        return dict(zip(self.circuit, self.coeffs))

    @property
    def signs(self) -> Dict[int, int]:
        return {i: (1 if n > 0 else -1) for i, n in zip(self.circuit, self.coeffs)}

    def sign_product(self, subset: Iterable[int]) -> int:
        out = 1
        signs = self.signs
        for i in subset:
            out *= signs[i]
        return out


class ArithmeticMatroid:
    """Rank and multiplicity oracle over a fixed integer matrix.

    ``ground`` is a sorted tuple of column indices; restrictions share the
    matrix and keep the original indices, so induced orders agree with the
    parent order.
    """

    def __init__(self, matrix: IntMatrix, ground: Optional[Sequence[int]] = None):
        self.matrix = matrix
        if ground is None:
            ground = range(matrix.cols)
        self.ground = tuple(sorted(ground))
        if any(j < 0 or j >= matrix.cols for j in self.ground):
            raise IndexError("ground element out of range")
        for j in self.ground:
            if not any(matrix.column(j)):
                raise ValueError("zero character (loop) not allowed")
        self._rank_cache: Dict[frozenset, int] = {frozenset(): 0}
        self._mult_cache: Dict[frozenset, int] = {frozenset(): 1}
        self._circuits: Optional[Tuple[Tuple[int, ...], ...]] = None
        self._dependencies: Dict[Tuple[int, ...], CircuitDependency] = {}

    # -- basic oracles ---------------------------------------------------

    def _check(self, subset: Iterable[int]) -> Tuple[int, ...]:
        sub = tuple(sorted(set(subset)))
        for j in sub:
            if j not in self.ground:
                raise IndexError(f"element {j} not in ground set")
        return sub

    def rank(self, subset: Iterable[int]) -> int:
        sub = self._check(subset)
        key = frozenset(sub)
        got = self._rank_cache.get(key)
        if got is None:
            got = int_rank(self.matrix.column_submatrix(sub))
            self._rank_cache[key] = got
        return got

    def full_rank(self) -> int:
        return self.rank(self.ground)

    def is_independent(self, subset: Iterable[int]) -> bool:
        sub = self._check(subset)
        return self.rank(sub) == len(sub)

    def multiplicity(self, subset: Iterable[int]) -> int:
        sub = self._check(subset)
        key = frozenset(sub)
        got = self._mult_cache.get(key)
        if got is None:
            got = multiplicity(self.matrix.column_submatrix(sub))
            self._mult_cache[key] = got
        return got

    def is_unimodular(self) -> bool:
        # m(A) of any subset divides m of its maximal independent subsets
        for size in range(1, self.full_rank() + 1):
            for sub in combinations(self.ground, size):
                if self.is_independent(sub) and self.multiplicity(sub) != 1:
                    return False
        return True

    # -- circuits ----------------------------------------------------------

    def circuits(self) -> Tuple[Tuple[int, ...], ...]:
        if self._circuits is None:
            found = []
            for size in range(1, self.full_rank() + 2):
                for sub in combinations(self.ground, size):
                    s = set(sub)
                    if any(s.issuperset(c) for c in found):
                        continue
                    if self.rank(sub) < len(sub):
                        found.append(frozenset(sub))
            self._circuits = tuple(sorted(tuple(sorted(c)) for c in found))
        return self._circuits

    def broken_circuits(self) -> Tuple[frozenset, ...]:
        return tuple(frozenset(c[1:]) for c in self.circuits())

    def nbc_sets(self, k: int) -> Tuple[Tuple[int, ...], ...]:
        """All k-subsets of the ground set containing no broken circuit."""
        broken = self.broken_circuits()
        out = []
        for sub in combinations(self.ground, k):
            s = set(sub)
            if not any(b <= s for b in broken):
                out.append(sub)
        return tuple(out)

    def circuit_dependency(self, circuit: Iterable[int]) -> CircuitDependency:
        c = self._check(circuit)
        cached = self._dependencies.get(c)
        if cached is not None:
            return cached
        if self.rank(c) != len(c) - 1 or not all(
            self.is_independent(c[:k] + c[k + 1 :]) for k in range(len(c))
        ):
            raise ValueError(f"{c} is not a circuit")
        ker = kernel_lattice(self.matrix.column_submatrix(c))
        assert ker.cols == 1
        coeffs = ker.column(0)
        # Hermite normalization already makes the first coefficient positive,
        # and minimality of the circuit makes every coefficient nonzero.
        assert coeffs[0] > 0 and all(coeffs)
        dep = CircuitDependency(c, tuple(coeffs))
        self._dependencies[c] = dep
        return dep

    # -- restriction -------------------------------------------------------

    def restriction(self, subset: Iterable[int]) -> "ArithmeticMatroid":
        sub = self._check(subset)
        out = ArithmeticMatroid(self.matrix, sub)
        out._rank_cache = self._rank_cache
        out._mult_cache = self._mult_cache
        return out

    def independent_subsets(self):
        """All independent subsets as sorted tuples, by size then lex."""
        for size in range(0, self.full_rank() + 1):
            for sub in combinations(self.ground, size):
                if self.is_independent(sub):
                    yield sub

    def corank_one_subsets(self) -> Tuple[Tuple[int, ...], ...]:
        """Subsets X with rank |X| - 1; each contains a unique circuit."""
        out = []
        for size in range(2, len(self.ground) + 1):
            for sub in combinations(self.ground, size):
                if self.rank(sub) == len(sub) - 1:
                    out.append(sub)
        return tuple(out)

    def circuit_within(self, subset: Iterable[int]) -> Tuple[int, ...]:
        sub = self._check(subset)
        if self.rank(sub) != len(sub) - 1:
            raise ValueError("subset does not have corank one")
        matches = [c for c in self.circuits() if set(c) <= set(sub)]
        assert len(matches) == 1
        return matches[0]
