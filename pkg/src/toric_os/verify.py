"""Cross-validation of the presentation against independent combinatorial formulas.

Three computations of the graded dimensions must agree: exact rank
computation on the quotient of the symbolic presentation, the direct
count through no-broken-circuit sets of local arrangements, and the
binomial expansion of the same counts degree by degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .arrangement import ToricArrangement
from .intlinalg import exact_rank
from .matroid import ArithmeticMatroid
from .presentation import (
    Presentation,
    build_presentation,
    circuit_relations,
    integral_basis_change,
    unimodular_circuit_relation,
)


@dataclass(frozen=True)
class GradedDims:
    """Dimensions of the graded pieces, indexed by cohomological degree."""

    dims: Tuple[int, ...]

    def __iter__(self):
        return iter(self.dims)

    def polynomial_str(self) -> str:
        return "[" + ", ".join(str(x) for x in self.dims) + "]"


def _tensor_with_torus(dims: Sequence[int], deficit: int) -> Tuple[int, ...]:
    """Multiply a dimension vector by the Betti numbers of a torus factor."""
    out = [0] * (len(dims) + deficit)
    for j, v in enumerate(dims):
        for i in range(deficit + 1):
            out[j + i] += v * comb(deficit, i)
    return tuple(out)


def quotient_dimensions(pres: Presentation) -> GradedDims:
    """Graded dimensions of the presentation modulo its relation ideal.

    The degree-k slice of the ideal is spanned by products relation*symbol
    with matching degrees; dimensions are computed by exact rational rank.
    """
    ess = pres.arrangement
    d = ess.dimension
    by_degree = pres.symbols_by_degree()
    relations = [r for r in pres.relations() if r]
    dims: List[int] = []
    for k in range(d + 1):
        symbols = by_degree.get(k, ())
        if not symbols:
            dims.append(0)
            continue
        index = {s: i for i, s in enumerate(symbols)}
        rows: List[List[Fraction]] = []
        for rel in relations:
            deg = rel.degree()
            if deg is None or deg > k:
                continue
            for s in by_degree.get(k - deg, ()):
                expanded = pres.multiply(rel, s)
                if not expanded:
                    continue
                row = [Fraction(0)] * len(symbols)
                for sym, coeff in expanded.terms.items():
                    row[index[sym]] = coeff
                rows.append(row)
        dims.append(len(symbols) - exact_rank(rows))
    return GradedDims(_tensor_with_torus(dims, pres.torus_rank_deficit))


def graded_decomposition_dims(arr: ToricArrangement) -> GradedDims:
    """Betti numbers from the graded decomposition over layers.

    beta_j = sum over codimensions k <= j and layers W of codimension k of
    #nbc_k(local arrangement at W) * binom(d - k, j - k).
    """
    d = arr.dimension
    counts = arr.nbc_counts()
    dims = tuple(
        sum(counts[k] * comb(d - k, j - k) for k in range(j + 1)) for j in range(d + 1)
    )
    return GradedDims(dims)


def poincare_dims(arr: ToricArrangement) -> GradedDims:
    return GradedDims(arr.poincare_polynomial())


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    dims_presentation: GradedDims
    dims_decomposition: GradedDims
    dims_poincare: GradedDims
    checks: Tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary_lines(self) -> List[str]:
        lines = [
            f"presentation quotient dims : {self.dims_presentation.polynomial_str()}",
            f"graded decomposition dims  : {self.dims_decomposition.polynomial_str()}",
            f"poincare coefficients      : {self.dims_poincare.polynomial_str()}",
        ]
        for c in self.checks:
            status = "ok" if c.passed else "FAIL"
            detail = f" ({c.detail})" if c.detail else ""
            lines.append(f"[{status}] {c.name}{detail}")
        lines.append("RESULT: " + ("PASS" if self.passed else "FAIL"))
        return lines

    def to_jsonable(self) -> Dict:
        return {
            "dims": {
                "presentation": list(self.dims_presentation.dims),
                "decomposition": list(self.dims_decomposition.dims),
                "poincare": list(self.dims_poincare.dims),
            },
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
            "passed": self.passed,
        }


def _complement_basis(matroid: ArithmeticMatroid, subset: Tuple[int, ...]) -> Tuple[int, ...]:
    """Greedy lexicographic completion of an independent set to a basis."""
    chosen = list(subset)
    r = matroid.rank(chosen)
    extra: List[int] = []
    for i in matroid.ground:
        if i in subset:
            continue
        if matroid.rank(chosen + [i]) > r:
            chosen.append(i)
            extra.append(i)
            r += 1
    return tuple(extra)


def spanning_symbol_counts(pres: Presentation) -> Tuple[int, ...]:
    """Count symbols with A an nbc set of the local arrangement and B in a fixed complement.

    For each independent A a complement basis D(A) is fixed once; the counts
    must reproduce the Betti numbers degree by degree.
    """
    ess = pres.arrangement
    matroid = ess.matroid
    d = ess.dimension
    complements: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    counts = [0] * (d + 1)
    for sym in pres.generators:
        local = ess.local_arrangement(sym.layer)
        if sym.a_part not in local.nbc_sets(len(sym.a_part)):
            continue
        comp = complements.get(sym.a_part)
        if comp is None:
            comp = _complement_basis(matroid, sym.a_part)
            complements[sym.a_part] = comp
        if set(sym.b_part) <= set(comp):
            counts[sym.degree] += 1
    return _tensor_with_torus(counts, pres.torus_rank_deficit)


def local_nbc_alternating_sums(arr: ToricArrangement) -> List[int]:
    """Alternating nbc-count sums of the local arrangements with nonempty support."""
    out = []
    for layer in arr.layer_poset().layers:
        if not layer.support:
            continue
        local = arr.local_arrangement(layer)
        total = 0
        for k in range(len(layer.support) + 1):
            total += (-1) ** k * len(local.nbc_sets(k))
        out.append(total)
    return out


def verify(arr: ToricArrangement, pres: Optional[Presentation] = None) -> VerificationReport:
    """Run the three dimension computations and the module-level invariants."""
    if pres is None:
        pres = build_presentation(arr)
    ess = pres.arrangement
    matroid = ess.matroid

    dims_q = quotient_dimensions(pres)
    dims_g = graded_decomposition_dims(arr)
    dims_p = poincare_dims(arr)

    checks: List[CheckResult] = []
    checks.append(
        CheckResult(
            "three-way graded dimension agreement",
            dims_q.dims == dims_g.dims == dims_p.dims,
            f"{dims_q.polynomial_str()} / {dims_g.polynomial_str()} / {dims_p.polynomial_str()}",
        )
    )

    bad = [
        sub
        for sub in matroid.independent_subsets()
        if len(ess.layers_of(sub)) != matroid.multiplicity(sub)
    ]
    checks.append(
        CheckResult(
            "component count equals multiplicity for independent subsets",
            not bad,
            "" if not bad else f"failing subsets: {bad[:3]}",
        )
    )

    poset = ess.layer_poset()
    mub_ok = True
    for sub in matroid.independent_subsets():
        if not sub:
            continue
        atoms = [ess.layers_of((i,))[0] for i in sub]
        expected = set(ess.layers_of(sub))
        if set(poset.minimal_upper_bounds(atoms)) != expected:
            mub_ok = False
            break
    checks.append(
        CheckResult("minimal upper bounds of atoms are the components", mub_ok)
    )

    degree_ok = True
    degree_detail = ""
    for x in matroid.corank_one_subsets():
        try:
            ess.covering_data(x)
        except ArithmeticError as exc:
            degree_ok = False
            degree_detail = f"{x}: {exc}"
            break
    checks.append(
        CheckResult(
            "covering degree independent of the deleted circuit element",
            degree_ok,
            degree_detail,
        )
    )

    counts = spanning_symbol_counts(pres)
    checks.append(
        CheckResult(
            "nbc-indexed spanning symbols match the Betti numbers",
            tuple(counts) == dims_p.dims,
            f"{list(counts)} vs {list(dims_p.dims)}",
        )
    )

    basis_ok = True
    basis_detail = ""
    for sym in pres.generators:
        if sym.b_part:
            continue
        change = integral_basis_change(ess, sym.layer, sym.a_part, sym.b_part)
        lead = change.coefficient(sym)
        if lead != 2 ** len(sym.a_part):
            basis_ok = False
            basis_detail = f"leading coefficient {lead} for {sym!r}"
            break
        m_a = matroid.multiplicity(sym.a_part)
        for other, coeff in change.terms.items():
            if other != sym and len(other.a_part) >= len(sym.a_part):
                basis_ok = False
                basis_detail = "basis change does not lower the filtration"
                break
            if (coeff * m_a).denominator != 1:
                basis_ok = False
                basis_detail = f"denominator of {coeff} does not divide {m_a}"
                break
        if not basis_ok:
            break
    checks.append(
        CheckResult(
            "integral basis change is triangular with leading coefficient 2^|A|",
            basis_ok,
            basis_detail,
        )
    )

    # The alternating sum of nbc counts of every nonempty local arrangement
    # vanishes; this is the vanishing that survives at the level of local
    # data.  The full Poincare polynomial of an essential arrangement takes
    # the value (-1)^d * N_d at t = -1 instead.
    sums = local_nbc_alternating_sums(arr)
    checks.append(
        CheckResult(
            "local arrangements have vanishing alternating nbc sums",
            all(s == 0 for s in sums),
            "" if all(s == 0 for s in sums) else f"sums: {sums}",
        )
    )
    d = arr.dimension
    counts_nbc = arr.nbc_counts()
    poin_at_minus_one = sum(
        c * (-1) ** j for j, c in enumerate(arr.poincare_polynomial())
    )
    expected = (-1) ** d * counts_nbc[d] if arr.is_essential() else 0
    checks.append(
        CheckResult(
            "Poincare value at -1 matches the signed top nbc count",
            poin_at_minus_one == expected,
            f"value {poin_at_minus_one}, expected {expected}",
        )
    )

    if ess.is_unimodular():
        uni_ok = True
        for circuit in matroid.circuits():
            comps = ess.components_of(circuit)
            if len(comps) != 1:
                uni_ok = False
                break
            if unimodular_circuit_relation(ess, circuit) != circuit_relations(
                ess, circuit, comps[0]
            ):
                uni_ok = False
                break
        checks.append(
            CheckResult("unimodular specialization agrees with the general relation", uni_ok)
        )

    return VerificationReport(dims_q, dims_g, dims_p, tuple(checks))


def dims_from_serialized(data: Dict) -> Tuple[int, ...]:
    """Recompute graded dimensions from a serialized presentation document.

    Symbols are treated as opaque ids; only the degrees, the relation
    vectors, and the product table are used, so this checks the serialized
    data and not the in-memory objects.
    """
    degrees = {g["id"]: g["degree"] for g in data["generators"]}
    by_degree: Dict[int, List[int]] = {}
    for gid, deg in degrees.items():
        by_degree.setdefault(deg, []).append(gid)
    products: Dict[Tuple[int, int], List] = {}
    for entry in data["product_rules"]:
        products[(entry["left"], entry["right"])] = entry["terms"]

    def as_fraction(s: str) -> Fraction:
        return Fraction(s)

    relations = []
    for rel in list(data["toro_relations"]) + [
        c["terms"] for c in data["circuit_relations"]
    ]:
        vec = {t["gen"]: as_fraction(t["coeff"]) for t in rel}
        if vec:
            relations.append(vec)

    top = data["essential_dimension"]
    dims = []
    for k in range(top + 1):
        symbols = sorted(by_degree.get(k, []))
        if not symbols:
            dims.append(0)
            continue
        index = {g: i for i, g in enumerate(symbols)}
        rows = []
        for vec in relations:
            deg = degrees[next(iter(vec))]
            if deg > k:
                continue
            for s in by_degree.get(k - deg, []):
                row = [Fraction(0)] * len(symbols)
                nonzero = False
                for gid, coeff in vec.items():
                    for term in products.get((gid, s), []):
                        row[index[term["gen"]]] += coeff * as_fraction(term["coeff"])
                for x in row:
                    if x:
                        nonzero = True
                        break
                if nonzero:
                    rows.append(row)
        dims.append(len(symbols) - exact_rank(rows))
    return _tensor_with_torus(dims, data["essential_deficit"])
