# monolith_verifier/utils/group_io.py
"""Reading groups from files, permutation strings and family expressions."""
import json
import os
import re
from typing import Any, Dict, List, Optional, Sequence

from absl import logging

from ..config import DEFAULT_LIMITS, Limits
from ..construct import Recipe, replay
from ..errors import BadParameter, GroupSpecError, InvalidGroupTable
from ..group import (
    FiniteGroup,
    Permutation,
    element_index,
    from_multiplication_table,
    from_permutation_generators,
    named_group,
)

REPLAY_PREFIX = "replay:"
_CYCLE = re.compile(r"\(([^()]*)\)")


def load_group_file(path: str) -> FiniteGroup:
    """
    Loads `{"order": n, "table": [[...]], "names": [...]}`; names are optional.

    Args:
        path: Location of the JSON file.

    Returns:
        The validated group. When loading moved the identity to index 0 the
        group's source_indices map new indices back to the file's.
    """
    try:
        with open(path, encoding="utf-8") as handle:
            payload = json.load(handle)
    except OSError as exc:
        raise GroupSpecError(f"cannot read group file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise GroupSpecError(f"group file {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict) or "table" not in payload:
        raise GroupSpecError(f"group file {path!r} needs a 'table' entry")
    table = payload["table"]
    order = payload.get("order", len(table))
    if order != len(table):
        raise InvalidGroupTable(f"declared order {order} but the table has {len(table)} rows")
    G = from_multiplication_table(table, names=payload.get("names"), label=path)
    if G.source_indices is not None:
        logging.info("load_group_file - %s: identity was element %d, renumbered to 0",
                     path, G.source_indices[0])
    return G


def group_to_dict(G: FiniteGroup) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"order": G.order, "table": G.table.tolist()}
    if G.names is not None:
        payload["names"] = list(G.names)
    return payload


def parse_permutations(text: str) -> List[List[List[int]]]:
    """
    Splits `(1 2 3 4);(1 3)` into generators, each a list of 1-based cycles.
    A generator may hold several cycles, e.g. `(1 2)(3 4)`; `()` is the identity.
    """
    generators = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if _CYCLE.sub("", chunk).strip():
            raise BadParameter(f"cannot read permutation {chunk!r}")
        cycles = []
        for body in _CYCLE.findall(chunk):
            tokens = body.replace(",", " ").split()
            try:
                points = [int(t) for t in tokens]
            except ValueError:
                raise BadParameter(f"non-integer point in cycle ({body})") from None
            if any(p < 1 for p in points) or len(set(points)) != len(points):
                raise BadParameter(f"bad cycle ({body}); points are distinct and 1-based")
            if points:
                cycles.append(points)
        generators.append(cycles)
    if not generators:
        raise BadParameter(f"no permutations in {text!r}")
    return generators


def group_from_permutations(text: str, limits: Limits = DEFAULT_LIMITS) -> FiniteGroup:
    generators = parse_permutations(text)
    degree = max((p for cycles in generators for cycle in cycles for p in cycle), default=1)
    perms = [Permutation.from_cycles([[p - 1 for p in cycle] for cycle in cycles], degree)
             for cycles in generators]
    return from_permutation_generators(perms, degree=degree, max_order=limits.max_group_order,
                                       label=text)


def resolve_group_spec(spec: str, limits: Limits = DEFAULT_LIMITS) -> FiniteGroup:
    """
    Resolves a GroupSpec: `replay:<recipe.json>`, a JSON table file, a
    permutation string starting with `(`, or a family expression.
    """
    spec = spec.strip()
    if spec.startswith(REPLAY_PREFIX):
        path = spec[len(REPLAY_PREFIX):]
        try:
            with open(path, encoding="utf-8") as handle:
                payload = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            raise GroupSpecError(f"cannot read recipe {path!r}: {exc}") from exc
        recipe = Recipe.from_dict(payload.get("recipe", payload))
        return replay(recipe, lambda text: resolve_group_spec(text, limits), limits)
    if spec.startswith("("):
        return group_from_permutations(spec, limits)
    if spec.endswith(".json") or os.path.isfile(spec):
        return load_group_file(spec)
    return named_group(spec)


def resolve_elements(G: FiniteGroup, tokens: Optional[Sequence[str]]) -> List[int]:
    return [element_index(G, token) for token in tokens or ()]
