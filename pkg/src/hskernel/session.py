"""Session files: a ring, an optional ideal, named items and a command list.

Schema::

    {"ring": {"char": 2, "vars": ["x1", "x2", "x3"]},
     "ideal": ["x1^2 + x2^3 + x3^2"],
     "items": {"F": {"poly": "..."},
               "delta": {"diffop": "x2^2*D[0,0,1]"},
               "Phi4": {"hs": {"length": 4, "images": [["x1", "0", ...], ...]}}},
     "commands": ["components Phi4", ...]}

``ideal``, ``items`` and ``commands`` are optional.
"""

from __future__ import annotations

import json
import shlex
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .diffop import DiffOp
from .field import FieldError
from .groebner import Ideal
from .hs import HSDerivation
from .poly import Poly, PolyRing

KINDS = ("poly", "diffop", "hs")

# command name -> number of item references it takes
COMMAND_ARITY = {
    "check-log": 1,
    "components": 1,
    "compose": 2,
    "total-symbol": 1,
    "theta": 1,
    "shuffle": 2,
    "divided-power": 1,
    "obstruction": 1,
    "step-integrate": 1,
    "verify-theorems": 0,
}
VALUE_FLAGS = ("--seed", "--cases", "--target", "--degree", "--power", "--json")

Item = Union[Poly, DiffOp, HSDerivation]


class SessionError(ValueError):
    """One or more positioned problems in a session file."""

    def __init__(self, errors: List[str]):
        super().__init__("\n".join(errors))
        self.errors = errors


@dataclass
class Session:
    ring: PolyRing
    ideal_generators: List[Poly] = field(default_factory=list)
    items: Dict[str, Tuple[str, Item]] = field(default_factory=dict)
    commands: List[str] = field(default_factory=list)

    @property
    def ideal(self) -> Optional[Ideal]:
        if not self.ideal_generators:
            return None
        if not hasattr(self, "_ideal"):
            self._ideal = Ideal(self.ideal_generators)
        return self._ideal

    def __eq__(self, other):
        if not isinstance(other, Session):
            return NotImplemented
        return (self.ring == other.ring and self.ideal_generators == other.ideal_generators
                and self.items == other.items and self.commands == other.commands)

    def to_json(self) -> dict:
        items = {}
        for name, (kind, value) in self.items.items():
            items[name] = {kind: value.to_json() if kind == "hs" else str(value)}
        out = {"ring": {"char": self.ring.characteristic, "vars": list(self.ring.names)}}
        if self.ideal_generators:
            out["ideal"] = [str(g) for g in self.ideal_generators]
        out["items"] = items
        out["commands"] = list(self.commands)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def _parse_ring(data, errors) -> Optional[PolyRing]:
    ring = data.get("ring")
    if not isinstance(ring, dict):
        errors.append("ring: expected an object with 'char' and 'vars'")
        return None
    char = ring.get("char")
    names = ring.get("vars")
    if not isinstance(char, int) or isinstance(char, bool):
        errors.append(f"ring.char: expected an integer, got {char!r}")
        return None
    if not isinstance(names, list) or not names or not all(isinstance(v, str) for v in names):
        errors.append("ring.vars: expected a non-empty list of variable names")
        return None
    if len(set(names)) != len(names):
        errors.append("ring.vars: variable names must be unique")
        return None
    try:
        return PolyRing.of(char, names)
    except (FieldError, ValueError) as exc:
        errors.append(f"ring.char: {exc}")
        return None


def _parse_item(ring, name, spec, errors):
    where = f"items.{name}"
    if not isinstance(spec, dict) or len(spec) != 1:
        errors.append(f"{where}: expected exactly one of {', '.join(KINDS)}")
        return None
    kind, body = next(iter(spec.items()))
    if kind not in KINDS:
        errors.append(f"{where}: unknown kind {kind!r} (expected one of {', '.join(KINDS)})")
        return None
    try:
        if kind == "poly":
            return kind, ring.parse(str(body))
        if kind == "diffop":
            return kind, DiffOp.parse(ring, str(body))
        if not isinstance(body, dict) or "images" not in body:
            errors.append(f"{where}.hs: expected {{'length': m, 'images': [...]}}")
            return None
        images = body["images"]
        if not isinstance(images, list) or len(images) != ring.n:
            errors.append(f"{where}.hs.images: expected {ring.n} images, one per variable")
            return None
        length = body.get("length", len(images[0]) - 1 if images and isinstance(images[0], list) else 0)
        for j, row in enumerate(images):
            if not isinstance(row, list):
                errors.append(f"{where}.hs.images[{j}]: expected a list of coefficients")
                return None
            for k, c in enumerate(row):
                try:
                    ring.parse(str(c))
                except ValueError as exc:
                    errors.append(f"{where}.hs.images[{j}][{k}]: {exc}")
                    return None
        return kind, HSDerivation.from_json(ring, {"length": length, "images": images})
    except ValueError as exc:
        errors.append(f"{where}.{kind}: {exc}")
        return None


def _no_duplicates(pairs):
    seen = {}
    for k, v in pairs:
        if k in seen:
            raise SessionError([f"duplicate key {k!r}"])
        seen[k] = v
    return seen


def parse_session(text: str) -> Session:
    try:
        data = json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as exc:
        raise SessionError([f"line {exc.lineno}, column {exc.colno}: {exc.msg}"]) from None
    if not isinstance(data, dict):
        raise SessionError(["top level: expected a JSON object"])
    errors: List[str] = []
    unknown = sorted(set(data) - {"ring", "ideal", "items", "commands"})
    for key in unknown:
        errors.append(f"{key}: unknown top-level field")
    ring = _parse_ring(data, errors)
    if ring is None:
        raise SessionError(errors)

    gens = []
    ideal = data.get("ideal", [])
    if not isinstance(ideal, list):
        errors.append("ideal: expected a list of generator strings")
        ideal = []
    for k, g in enumerate(ideal):
        try:
            gens.append(ring.parse(str(g)))
        except ValueError as exc:
            errors.append(f"ideal[{k}]: {exc}")
    if ideal and gens and all(g.is_zero() for g in gens):
        errors.append("ideal: all generators are zero")

    items = {}
    raw_items = data.get("items", {})
    if not isinstance(raw_items, dict):
        errors.append("items: expected an object mapping names to items")
        raw_items = {}
    for name, spec in raw_items.items():
        parsed = _parse_item(ring, name, spec, errors)
        if parsed is not None:
            items[name] = parsed

    commands = data.get("commands", [])
    if not isinstance(commands, list) or not all(isinstance(c, str) for c in commands):
        errors.append("commands: expected a list of strings")
        commands = []

    for k, cmd in enumerate(commands):
        for problem in command_problems(cmd, items):
            errors.append(f"commands[{k}]: {problem}")

    if errors:
        raise SessionError(errors)
    return Session(ring, gens, items, list(commands))


def split_ref(ref: str) -> Tuple[str, Optional[int]]:
    """``NAME`` or ``NAME:i`` (component i of an HS derivation)."""
    name, sep, idx = ref.partition(":")
    if not sep:
        return name, None
    if not idx.isdigit():
        raise ValueError(f"bad component index in {ref!r}")
    return name, int(idx)


def command_problems(cmd: str, items) -> List[str]:
    """Static checks: known command, right number of references, declared names."""
    words = shlex.split(cmd)
    if not words:
        return ["empty command"]
    name, rest = words[0], words[1:]
    if name not in COMMAND_ARITY:
        return [f"unknown command {name!r}"]
    refs = []
    skip = False
    for w in rest:
        if skip:
            skip = False
        elif w in VALUE_FLAGS:
            skip = True
        elif not w.startswith("--"):
            refs.append(w)
    problems = []
    if len(refs) != COMMAND_ARITY[name]:
        problems.append(f"{name} takes {COMMAND_ARITY[name]} item name(s), got {len(refs)}")
    for r in refs:
        try:
            base, _ = split_ref(r)
        except ValueError as exc:
            problems.append(str(exc))
            continue
        if base not in items:
            problems.append(f"unknown item {base!r}")
    return problems


def load_session(path) -> Session:
    with open(path, encoding="utf-8") as fh:
        return parse_session(fh.read())
