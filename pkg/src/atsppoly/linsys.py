"""H-descriptions over named variables.

A LinSys is an ordered variable catalog plus equality rows (coeffs . vars =
rhs) and inequality rows (coeffs . vars <= rhs). Every row carries a
provenance tag, unique within the system, which is how separation results,
redundancy certificates, and dual vectors refer back to rows.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .rational import ZERO, rat, rat_str


@dataclass(frozen=True)
class LinRow:
    coeffs: dict[str, object]
    rhs: object
    tag: str

    def lhs_at(self, point) -> object:
        total = ZERO
        for var, coeff in self.coeffs.items():
            total += coeff * point.get(var, ZERO)
        return total

    @property
    def support(self) -> frozenset[str]:
        return frozenset(self.coeffs)


@dataclass(frozen=True)
class Violation:
    tag: str
    kind: str  # "eq" | "le"
    lhs: object
    rhs: object


class LinSys:
    """Mutable while being built; treat as immutable once shared."""

    def __init__(self, variables):
        self.variables: tuple[str, ...] = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names in catalog")
        self._var_set = set(self.variables)
        self.equalities: list[LinRow] = []
        self.inequalities: list[LinRow] = []
        self._tags: set[str] = set()

    # -- construction -----------------------------------------------------

    def _make_row(self, coeffs, rhs, tag) -> LinRow:
        if tag in self._tags:
            raise ValueError(f"duplicate row tag {tag!r}")
        clean = {}
        for var, coeff in coeffs.items():
            if var not in self._var_set:
                raise ValueError(f"row {tag!r} references unknown variable {var!r}")
            q = rat(coeff)
            if q != ZERO:
                clean[var] = q
        return LinRow(clean, rat(rhs), tag)

    def add_equality(self, coeffs, rhs, tag):
        row = self._make_row(coeffs, rhs, tag)
        self.equalities.append(row)
        self._tags.add(tag)

    def add_inequality(self, coeffs, rhs, tag):
        row = self._make_row(coeffs, rhs, tag)
        self.inequalities.append(row)
        self._tags.add(tag)

    def add_variables(self, names):
        extra = tuple(n for n in names if n not in self._var_set)
        self.variables = self.variables + extra
        self._var_set.update(extra)

    # -- access -----------------------------------------------------------

    @property
    def tags(self) -> set[str]:
        return set(self._tags)

    def row(self, tag: str) -> tuple[str, LinRow]:
        for r in self.equalities:
            if r.tag == tag:
                return "eq", r
        for r in self.inequalities:
            if r.tag == tag:
                return "le", r
        raise KeyError(f"no row tagged {tag!r}")

    def has_tag(self, tag: str) -> bool:
        return tag in self._tags

    def copy(self) -> "LinSys":
        dup = LinSys(self.variables)
        dup.equalities = list(self.equalities)
        dup.inequalities = list(self.inequalities)
        dup._tags = set(self._tags)
        return dup

    def without(self, tags) -> "LinSys":
        drop = {tags} if isinstance(tags, str) else set(tags)
        missing = drop - self._tags
        if missing:
            raise KeyError(f"no rows tagged {sorted(missing)}")
        dup = LinSys(self.variables)
        dup.equalities = [r for r in self.equalities if r.tag not in drop]
        dup.inequalities = [r for r in self.inequalities if r.tag not in drop]
        dup._tags = self._tags - drop
        return dup

    def merged_with(self, other: "LinSys", tag_prefix: str = "") -> "LinSys":
        """Intersection of the two systems on the union of their catalogs."""
        dup = self.copy()
        dup.add_variables(other.variables)
        for r in other.equalities:
            dup.add_equality(r.coeffs, r.rhs, tag_prefix + r.tag)
        for r in other.inequalities:
            dup.add_inequality(r.coeffs, r.rhs, tag_prefix + r.tag)
        return dup

    # -- point checks -------------------------------------------------------

    def violations(self, point) -> list[Violation]:
        out = []
        for r in self.equalities:
            lhs = r.lhs_at(point)
            if lhs != r.rhs:
                out.append(Violation(r.tag, "eq", lhs, r.rhs))
        for r in self.inequalities:
            lhs = r.lhs_at(point)
            if lhs > r.rhs:
                out.append(Violation(r.tag, "le", lhs, r.rhs))
        return out

    def contains_point(self, point) -> bool:
        return not self.violations(point)

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        def rows(rs):
            return [
                {
                    "coeffs": {v: rat_str(q) for v, q in sorted(r.coeffs.items())},
                    "rhs": rat_str(r.rhs),
                    "tag": r.tag,
                }
                for r in rs
            ]

        return {
            "variables": list(self.variables),
            "equalities": rows(self.equalities),
            "inequalities": rows(self.inequalities),
        }

    def dumps(self, indent=None) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)

    @classmethod
    def from_json_dict(cls, payload: dict) -> "LinSys":
        sys_ = cls(payload["variables"])
        for row in payload["equalities"]:
            sys_.add_equality({v: rat(q) for v, q in row["coeffs"].items()}, rat(row["rhs"]), row["tag"])
        for row in payload["inequalities"]:
            sys_.add_inequality({v: rat(q) for v, q in row["coeffs"].items()}, rat(row["rhs"]), row["tag"])
        return sys_

    @classmethod
    def loads(cls, text: str) -> "LinSys":
        return cls.from_json_dict(json.loads(text))

    def __repr__(self) -> str:
        return (
            f"LinSys({len(self.variables)} vars, {len(self.equalities)} eq, "
            f"{len(self.inequalities)} le)"
        )
