"""Basis labels: a record of where each basis element came from."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union


@dataclass(frozen=True)
class Vertex:
    vertex: str

    def __str__(self):
        return f"e{self.vertex}" if self.vertex[:1].isdigit() else f"e_{self.vertex}"


@dataclass(frozen=True)
class Path:
    """Path through the listed arrows, read left to right."""

    arrows: Tuple[str, ...]

    def __post_init__(self):
        if not self.arrows:
            raise ValueError("paths have length at least one; use Vertex")

    def __str__(self):
        if all(len(a) == 1 for a in self.arrows):
            return "".join(self.arrows)
        return ".".join(self.arrows)


@dataclass(frozen=True)
class GroupTensor:
    inner: "BasisLabel"
    group_index: int

    def __str__(self):
        return f"{self.inner}(x)g{self.group_index}"


@dataclass(frozen=True)
class SmashTensor:
    inner: "BasisLabel"
    dual_index: int

    def __str__(self):
        return f"{self.inner}p{self.dual_index}"


@dataclass(frozen=True)
class DualFunctional:
    inner: "BasisLabel"

    def __str__(self):
        return f"({self.inner})*"


@dataclass(frozen=True)
class MatrixEntry:
    row: int
    col: int
    inner: "BasisLabel"

    def __str__(self):
        return f"[{self.row}{self.col}:{self.inner}]"


@dataclass(frozen=True)
class Combination:
    """Basis vector that is a linear combination of an ambient basis
    (produced by idempotent truncations)."""

    tag: str

    def __str__(self):
        return self.tag


BasisLabel = Union[Vertex, Path, GroupTensor, SmashTensor, DualFunctional, MatrixEntry, Combination]


def label_to_json(label):
    if isinstance(label, Vertex):
        return {"vertex": label.vertex}
    if isinstance(label, Path):
        return {"path": list(label.arrows)}
    if isinstance(label, GroupTensor):
        return {"group": label.group_index, "inner": label_to_json(label.inner)}
    if isinstance(label, SmashTensor):
        return {"smash": label.dual_index, "inner": label_to_json(label.inner)}
    if isinstance(label, DualFunctional):
        return {"dual": label_to_json(label.inner)}
    if isinstance(label, MatrixEntry):
        return {"entry": [label.row, label.col], "inner": label_to_json(label.inner)}
    if isinstance(label, Combination):
        return {"combination": label.tag}
    raise TypeError(f"not a basis label: {label!r}")


def label_from_json(obj):
    if not isinstance(obj, dict):
        raise ValueError(f"basis label must be an object, got {obj!r}")
    if "vertex" in obj:
        return Vertex(str(obj["vertex"]))
    if "path" in obj:
        return Path(tuple(str(a) for a in obj["path"]))
    if "group" in obj:
        return GroupTensor(label_from_json(obj["inner"]), int(obj["group"]))
    if "smash" in obj:
        return SmashTensor(label_from_json(obj["inner"]), int(obj["smash"]))
    if "dual" in obj:
        return DualFunctional(label_from_json(obj["dual"]))
    if "entry" in obj:
        r, c = obj["entry"]
        return MatrixEntry(int(r), int(c), label_from_json(obj["inner"]))
    if "combination" in obj:
        return Combination(str(obj["combination"]))
    raise ValueError(f"unknown basis label {obj!r}")
