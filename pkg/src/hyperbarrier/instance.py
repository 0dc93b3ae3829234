"""JSON instance format shared by the generators and the command line."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .core import InputError, KComplex, KGraph, VertexPartition, clique_complex, downward_closure


@dataclass(frozen=True)
class Instance:
    """A hypergraph instance: either a k-graph or a k-complex, plus optional annotations.

    closed=True means the complex is the downward closure of `edges`. Otherwise a uniform
    edge list is a k-graph whose complex is its clique complex at `clique_level` (default k),
    and a mixed edge list is the k-system with exactly those edges.
    """

    n: int
    k: int
    edges: tuple
    closed: bool = False
    partition: VertexPartition | None = None
    marked: tuple | None = None
    matching: tuple | None = None
    clique_level: int | None = None
    provenance: dict | None = field(default=None, compare=False)

    @property
    def graph(self) -> KGraph:
        return KGraph(self.n, self.k, [e for e in self.edges if len(e) == self.k])

    def complex(self) -> KComplex:
        if self.closed:
            return downward_closure(self.edges, self.n, self.k)
        if all(len(e) == self.k for e in self.edges):
            return clique_complex(self.graph, self.clique_level or self.k)
        return KComplex.from_edges(self.n, self.k, self.edges)

    def to_json(self) -> dict:
        out = {"n": self.n, "k": self.k, "edges": [list(e) for e in self.edges], "closed": self.closed}
        if self.partition is not None:
            out["partition"] = [list(p) for p in self.partition.parts]
        if self.marked is not None:
            out["marked"] = list(self.marked)
        if self.matching is not None:
            out["matching"] = [list(e) for e in self.matching]
        if self.clique_level is not None:
            out["clique_level"] = self.clique_level
        if self.provenance is not None:
            out["provenance"] = self.provenance
        return out

    def dumps(self) -> str:
        return dumps(self.to_json())

    @classmethod
    def from_json(cls, obj) -> "Instance":
        if not isinstance(obj, dict):
            raise InputError("instance must be a JSON object")
        try:
            n, k = int(obj["n"]), int(obj["k"])
            edges = tuple(tuple(sorted(int(v) for v in e)) for e in obj["edges"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed instance: {exc}") from None
        for e in edges:
            if len(e) > k or any(v < 0 or v >= n for v in e) or len(set(e)) != len(e):
                raise InputError(f"bad edge {list(e)}")
        part = obj.get("partition")
        matching = obj.get("matching")
        return cls(n, k, tuple(sorted(set(edges))), bool(obj.get("closed", False)),
                   VertexPartition(part, n) if part is not None else None,
                   tuple(obj["marked"]) if obj.get("marked") is not None else None,
                   tuple(tuple(sorted(e)) for e in matching) if matching is not None else None,
                   obj.get("clique_level"), obj.get("provenance"))

    @classmethod
    def from_complex(cls, J: KComplex, **kw) -> "Instance":
        top = J.levels[J.k]
        if downward_closure(top, J.n, J.k).levels == J.levels:
            return cls(J.n, J.k, tuple(top), True, **kw)
        return cls(J.n, J.k, tuple(e for lvl in J.levels[1:] for e in lvl), False, **kw)

    @classmethod
    def from_graph(cls, G: KGraph, **kw) -> "Instance":
        return cls(G.n, G.k, tuple(G.edges), False, **kw)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def load(path) -> Instance:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON: {exc}") from None
    return Instance.from_json(obj)
