"""Command-line front end.

Reads a JSON arrangement description and dispatches to the computations.
Output is deterministic: the same input produces byte-identical output.

Exit codes: 0 on success, 1 when verification finds a mismatch, 2 for
malformed input (bad JSON, zero or non-primitive characters without
--normalize, non-central declarations, bad permutations).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .arrangement import Layer, ToricArrangement
from .presentation import Presentation, build_presentation
from .verify import verify

SCHEMA = "toric-os/1"


class SpecError(Exception):
    """Malformed arrangement description; mapped to exit code 2."""


def load_spec(path: str, normalize: bool, order: Optional[Sequence[int]]) -> tuple:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read spec file: {exc}")
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc}")
    if not isinstance(raw, dict):
        raise SpecError("spec document must be a JSON object")

    if "characters" not in raw:
        raise SpecError("missing required field 'characters'")
    characters = raw["characters"]
    if not isinstance(characters, list) or not all(
        isinstance(c, list) and all(isinstance(x, int) for x in c) for c in characters
    ):
        raise SpecError("'characters' must be a list of integer vectors")

    dimension = raw.get("dimension")
    if dimension is None and characters:
        dimension = len(characters[0])
    if not isinstance(dimension, int) or dimension < 0:
        raise SpecError("'dimension' must be a nonnegative integer")

    levels = raw.get("levels")
    if levels is not None and any(lv != 1 for lv in levels):
        raise SpecError("non-central arrangement (levels != 1) not supported")

    norm = normalize or bool(raw.get("normalize", False))

    perm = order if order is not None else raw.get("order")
    if perm is not None:
        perm = list(perm)
        if sorted(perm) != list(range(len(characters))):
            raise SpecError("'order' must be a permutation of the element indices")
        characters = [characters[i] for i in perm]

    names = raw.get("names")
    if names is not None and (
        not isinstance(names, list) or len(names) != len(characters)
    ):
        raise SpecError("'names' must list one name per character")
    layer_names = raw.get("layer_names", {})
    if not isinstance(layer_names, dict):
        raise SpecError("'layer_names' must be an object")

    try:
        arr = ToricArrangement(characters, dimension=dimension, normalize=norm)
    except ValueError as exc:
        raise SpecError(str(exc))
    return arr, names, layer_names


def _frac_str(x: Fraction) -> str:
    return str(x)


def layer_labels(arr: ToricArrangement) -> Dict[Layer, str]:
    """Canonical labels L<codim>.<index>, indices lexicographic within a codimension."""
    labels: Dict[Layer, str] = {}
    for codim, group in sorted(arr.layer_poset().by_codim().items()):
        for i, layer in enumerate(group):
            labels[layer] = f"L{codim}.{i}"
    return labels


def _layer_json(layer: Layer, label: str, layer_names: Dict[str, str]) -> Dict:
    doc = {
        "label": label,
        "codim": layer.codim,
        "support": list(layer.support),
        "translation": [_frac_str(x) for x in layer.translation],
        "direction": [list(row) for row in layer.direction.entries],
    }
    if label in layer_names:
        doc["name"] = layer_names[label]
    return doc


def _dump(doc: Dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(", ", ": "), indent=1) + "\n"


def cmd_matroid(arr: ToricArrangement, as_json: bool, names, layer_names) -> str:
    matroid = arr.matroid
    subsets = []
    ground = list(matroid.ground)
    for sub in matroid.independent_subsets():
        subsets.append(
            {
                "subset": list(sub),
                "rank": matroid.rank(sub),
                "multiplicity": matroid.multiplicity(sub),
            }
        )
    doc = {
        "schema": SCHEMA,
        "ground": ground,
        "rank": matroid.full_rank(),
        "circuits": [list(c) for c in matroid.circuits()],
        "multiplicity": subsets,
    }
    if as_json:
        return _dump(doc)
    lines = []
    if names:
        lines.append("elements: " + " ".join(f"{i}={n}" for i, n in enumerate(names)))
    lines += [f"ground set: {ground}", f"rank: {doc['rank']}"]
    lines.append("circuits: " + (", ".join(str(list(c)) for c in matroid.circuits()) or "none"))
    lines.append("multiplicity table (independent subsets):")
    for row in subsets:
        lines.append(f"  m({row['subset']}) = {row['multiplicity']}")
    return "\n".join(lines) + "\n"


def cmd_layers(arr: ToricArrangement, as_json: bool, names, layer_names) -> str:
    poset = arr.layer_poset()
    labels = layer_labels(arr)
    nodes = [_layer_json(layer, labels[layer], layer_names) for layer in poset.layers]
    edges = [
        [labels[poset.layers[i]], labels[poset.layers[j]]]
        for i, j in poset.cover_edges()
    ]
    doc = {"schema": SCHEMA, "layers": nodes, "cover_edges": edges}
    if as_json:
        return _dump(doc)
    lines = []
    for node in nodes:
        name = f" ({node['name']})" if "name" in node else ""
        lines.append(
            f"{node['label']}{name}: codim {node['codim']}, support {node['support']}, "
            f"translation ({', '.join(node['translation'])})"
        )
    lines.append("cover edges: " + (", ".join(f"{a} < {b}" for a, b in edges) or "none"))
    return "\n".join(lines) + "\n"


def cmd_poincare(arr: ToricArrangement, as_json: bool, names, layer_names) -> str:
    coeffs = list(arr.poincare_polynomial())
    if as_json:
        return _dump({"schema": SCHEMA, "coefficients": coeffs})
    return "[" + ", ".join(str(c) for c in coeffs) + "]\n"


def _symbol_text(sym, labels, layer_names) -> str:
    label = labels[sym.layer]
    shown = layer_names.get(label, label)
    a = ",".join(str(i) for i in sym.a_part)
    b = ",".join(str(i) for i in sym.b_part)
    return f"e({shown}; A={{{a}}}; B={{{b}}})"


def _comb_text(comb, labels, layer_names) -> str:
    bits = []
    for sym, coeff in comb.items():
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        factor = "" if mag == 1 else f"{mag} "
        bits.append(f"{sign} {factor}{_symbol_text(sym, labels, layer_names)}")
    text = " ".join(bits) if bits else "0"
    return text[2:] if text.startswith("+ ") else text


def presentation_document(pres: Presentation, original_dim: int, layer_names) -> Dict:
    ess = pres.arrangement
    labels = layer_labels(ess)
    gen_ids = {g: i for i, g in enumerate(pres.generators)}

    def comb_json(comb) -> List[Dict]:
        return [
            {"gen": gen_ids[sym], "coeff": _frac_str(coeff)}
            for sym, coeff in comb.items()
        ]

    generators = [
        {
            "id": gen_ids[g],
            "layer": labels[g.layer],
            "a": list(g.a_part),
            "b": list(g.b_part),
            "degree": g.degree,
        }
        for g in pres.generators
    ]
    rules = []
    table = pres.product_rules()
    for (g, h), comb in sorted(
        table.items(), key=lambda kv: (gen_ids[kv[0][0]], gen_ids[kv[0][1]])
    ):
        if comb:
            rules.append(
                {"left": gen_ids[g], "right": gen_ids[h], "terms": comb_json(comb)}
            )
    circuits = [
        {
            "subset": list(x),
            "layer": labels[low],
            "terms": comb_json(rel),
        }
        for (x, low), rel in zip(pres.circuit_relation_keys, pres.circuit_relations)
    ]
    poset = ess.layer_poset()
    return {
        "schema": SCHEMA,
        "dimension": original_dim,
        "essential_dimension": ess.dimension,
        "essential_deficit": pres.torus_rank_deficit,
        "characters": [list(c) for c in ess.characters],
        "layers": [_layer_json(w, labels[w], layer_names) for w in poset.layers],
        "generators": generators,
        "toro_relations": [comb_json(r) for r in pres.toro_relations],
        "circuit_relations": circuits,
        "product_rules": rules,
    }


def cmd_presentation(arr: ToricArrangement, as_json: bool, names, layer_names) -> str:
    pres = build_presentation(arr)
    doc = presentation_document(pres, arr.dimension, layer_names)
    if as_json:
        return _dump(doc)
    ess = pres.arrangement
    labels = layer_labels(ess)
    lines = [
        f"generators: {len(pres.generators)} "
        f"(per degree: {[len(pres.symbols_by_degree().get(k, ())) for k in range(ess.dimension + 1)]})"
    ]
    if pres.torus_rank_deficit:
        lines.append(f"split off torus factor of rank {pres.torus_rank_deficit}")
    lines.append("linear relations:")
    for rel in pres.toro_relations:
        lines.append("  " + _comb_text(rel, labels, layer_names) + " = 0")
    lines.append("circuit relations:")
    for (x, low), rel in zip(pres.circuit_relation_keys, pres.circuit_relations):
        shown = layer_names.get(labels[low], labels[low])
        lines.append(f"  X={list(x)}, component {shown}:")
        lines.append("    " + _comb_text(rel, labels, layer_names) + " = 0")
    return "\n".join(lines) + "\n"


COMMANDS = {
    "matroid": cmd_matroid,
    "layers": cmd_layers,
    "poincare": cmd_poincare,
    "presentation": cmd_presentation,
}


def run(argv: Sequence[str]) -> int:
    parser = argparse.ArgumentParser(
        prog="toric-os",
        description="Exact combinatorial invariants of central toric arrangements.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS) + ["verify"])
    parser.add_argument("spec", help="path to a JSON arrangement description")
    parser.add_argument(
        "--normalize",
        action="store_true",
        help="divide characters by their content instead of rejecting them",
    )
    parser.add_argument(
        "--order",
        help="comma-separated permutation of the element indices",
    )
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--json", dest="as_json", action="store_true")
    group.add_argument("--text", dest="as_json", action="store_false")
    parser.set_defaults(as_json=False)
    parser.add_argument("-o", "--output", help="write output to a file instead of stdout")
    args = parser.parse_args(argv)

    order = None
    if args.order is not None:
        try:
            order = [int(x) for x in args.order.split(",") if x != ""]
        except ValueError:
            print("error: --order must be a comma-separated list of integers", file=sys.stderr)
            return 2

    try:
        arr, names, layer_names = load_spec(args.spec, args.normalize, order)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    status = 0
    if args.command == "verify":
        report = verify(arr)
        if args.as_json:
            doc = report.to_jsonable()
            doc["schema"] = SCHEMA
            text = _dump(doc)
        else:
            text = "\n".join(report.summary_lines()) + "\n"
        status = 0 if report.passed else 1
    else:
        text = COMMANDS[args.command](arr, args.as_json, names, layer_names)

    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
