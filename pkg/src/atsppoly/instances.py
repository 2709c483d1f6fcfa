"""Cost instances: native line format, seeded generators, x-vector files.

Native format (exact by construction, unlike float-centric interchange
formats):

    ATSP <name> <n>
    *    c12  c13 ...
    c21  *    c23 ...
    ...

Entries are integers or "p/q" rationals; the diagonal must be written as "*".
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

from .digraph import ArcSpace
from .errors import InstanceParseError
from .rational import rat, rat_str


@dataclass(frozen=True)
class Instance:
    name: str
    n: int
    costs: dict[tuple[int, int], object]
    provenance: str | None = None

    def __post_init__(self):
        if self.n < 4:
            raise ValueError("instances require n >= 4 nodes")
        space = ArcSpace(self.n)
        fixed = {}
        for arc in space.arcs:
            if arc not in self.costs:
                raise ValueError(f"missing cost for arc {arc}")
            fixed[arc] = rat(self.costs[arc])
        if len(self.costs) != len(fixed):
            raise ValueError("costs must cover exactly the off-diagonal arcs")
        object.__setattr__(self, "costs", fixed)


def dumps_instance(inst: Instance) -> str:
    lines = [f"ATSP {inst.name} {inst.n}"]
    for i in range(1, inst.n + 1):
        cells = []
        for j in range(1, inst.n + 1):
            cells.append("*" if i == j else rat_str(inst.costs[(i, j)]))
        lines.append(" ".join(cells))
    return "\n".join(lines) + "\n"


def loads_instance(text: str) -> Instance:
    lines = text.splitlines()
    if not lines:
        raise InstanceParseError("empty instance file", line=1)
    header = lines[0].split()
    if len(header) != 3 or header[0] != "ATSP":
        raise InstanceParseError("header must be 'ATSP <name> <n>'", line=1)
    name = header[1]
    try:
        n = int(header[2])
    except ValueError:
        raise InstanceParseError(f"bad node count {header[2]!r}", line=1, column=len(header[0] + header[1]) + 3)
    if n < 4:
        raise InstanceParseError("instances require n >= 4 nodes", line=1)
    if len(lines) < 1 + n:
        raise InstanceParseError(f"expected {n} matrix rows, found {len(lines) - 1}", line=len(lines))
    costs = {}
    for i in range(1, n + 1):
        cells = lines[i].split()
        if len(cells) != n:
            raise InstanceParseError(f"row {i} must have {n} entries", line=i + 1)
        for j, cell in enumerate(cells, start=1):
            if i == j:
                if cell != "*":
                    raise InstanceParseError("diagonal entries must be '*'", line=i + 1, column=j)
                continue
            if cell == "*":
                raise InstanceParseError("'*' is only allowed on the diagonal", line=i + 1, column=j)
            try:
                costs[(i, j)] = rat(cell)
            except (ValueError, ZeroDivisionError):
                raise InstanceParseError(f"bad cost entry {cell!r}", line=i + 1, column=j)
    return Instance(name, n, costs)


def read_instance(path) -> Instance:
    return loads_instance(Path(path).read_text())


def write_instance(inst: Instance, path) -> None:
    Path(path).write_text(dumps_instance(inst))


def gen_instance(n: int, seed: int, mode: str = "uniform") -> Instance:
    """Deterministic per (n, seed, mode).

    uniform draws integer costs in [1, 100]; euclidean-asym places nodes on an
    integer grid, takes rounded plane distances, and adds a seeded one-way
    skew so some pair has c_ij != c_ji.
    """
    if not 4 <= n <= 12:
        raise ValueError(f"instance size n={n} out of range [4, 12]")
    rng = random.Random(("instance", n, seed, mode).__repr__())
    space = ArcSpace(n)
    if mode == "uniform":
        costs = {arc: rat(rng.randint(1, 100)) for arc in space.arcs}
    elif mode == "euclidean-asym":
        from math import isqrt

        pts = {v: (rng.randint(0, 100), rng.randint(0, 100)) for v in space.nodes}
        costs = {}
        for (i, j) in space.arcs:
            dx = pts[i][0] - pts[j][0]
            dy = pts[i][1] - pts[j][1]
            sq = dx * dx + dy * dy
            base = isqrt(sq)
            if sq - base * base > (base + 1) * (base + 1) - sq:
                base += 1  # round to the nearest integer, exactly
            skew = rng.randint(0, 5) if i < j else 0
            costs[(i, j)] = rat(base + skew + 1)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return Instance(f"{mode}-{n}-{seed}", n, costs, provenance=f"seed={seed}")


def read_x_vector(path, n: int) -> dict[tuple[int, int], object]:
    """JSON arc map {"i,j": "p/q"} -> exact arc values (absent arcs are zero)."""
    payload = json.loads(Path(path).read_text())
    space = ArcSpace(n)
    out = {arc: rat(0) for arc in space.arcs}
    for key, val in payload.items():
        i, j = (int(part) for part in key.split(","))
        space.check_arc(i, j)
        out[(i, j)] = rat(val)
    return out


def write_x_vector(x, path) -> None:
    payload = {f"{i},{j}": rat_str(q) for (i, j), q in sorted(x.items()) if q != 0}
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")
