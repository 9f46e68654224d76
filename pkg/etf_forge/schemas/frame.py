from typing import Any, List, Literal, Optional

from pydantic import BaseModel, Field

from ..models.frame import FrameMatrix, GramMatrix, TripleTable
from ..services.gram_analysis import assert_triple_invariants, make_gram
from .cyclotomic import CyclotomicSchema


def _json_label(label: Any) -> Any:
    if isinstance(label, tuple):
        return [_json_label(x) for x in label]
    return label


def _domain_label(label: Any) -> Any:
    if isinstance(label, list):
        return tuple(_domain_label(x) for x in label)
    return label


def _cells(rows) -> List[List[CyclotomicSchema]]:
    return [[CyclotomicSchema.from_domain(x) for x in row] for row in rows]


def _values(rows: List[List[CyclotomicSchema]]):
    return tuple(tuple(x.to_domain() for x in row) for row in rows)


class FrameSchema(BaseModel):
    """d x n synthesis matrix; column j is the frame vector labels[j]"""
    kind: Literal["frame"] = "frame"
    m: int = Field(..., ge=1)
    d: int = Field(..., ge=1)
    n: int = Field(..., ge=1)
    labels: List[Any]
    entries: List[List[CyclotomicSchema]]

    @classmethod
    def from_domain(cls, frame: FrameMatrix) -> "FrameSchema":
        return cls(
            m=frame.order, d=frame.d, n=frame.n,
            labels=[_json_label(x) for x in frame.labels],
            entries=_cells(frame.entries),
        )

    def to_domain(self) -> FrameMatrix:
        entries = _values(self.entries)
        if len(entries) != self.d or any(len(row) != self.n for row in entries):
            raise ValueError(f"entries must form a {self.d} x {self.n} matrix")
        if any(x.order != self.m for row in entries for x in row):
            raise ValueError(f"every entry must have order {self.m}")
        if self.n < self.d:
            raise ValueError("a frame needs n >= d")
        return FrameMatrix(
            d=self.d, n=self.n, order=self.m, entries=entries,
            labels=tuple(_domain_label(x) for x in self.labels),
        )


class GramSchema(BaseModel):
    kind: Literal["gram"] = "gram"
    m: int = Field(..., ge=1)
    n: int = Field(..., ge=1)
    labels: List[Any]
    entries: List[List[CyclotomicSchema]]

    @classmethod
    def from_domain(cls, G: GramMatrix) -> "GramSchema":
        return cls(
            m=G.order, n=G.n,
            labels=[_json_label(x) for x in G.labels],
            entries=_cells(G.entries),
        )

    def to_domain(self) -> GramMatrix:
        entries = _values(self.entries)
        if len(entries) != self.n:
            raise ValueError(f"entries must form a {self.n} x {self.n} matrix")
        return make_gram(entries, tuple(_domain_label(x) for x in self.labels))


class TripleEntry(BaseModel):
    j: int
    k: int
    l: int
    value: CyclotomicSchema


class TripleTableSchema(BaseModel):
    """Triple products on ordered distinct triples; Gram-free constructions travel in this form"""
    kind: Literal["triples"] = "triples"
    m: int = Field(..., ge=1)
    n: int = Field(..., ge=3)
    labels: List[Any]
    triples: List[TripleEntry]

    @classmethod
    def from_domain(cls, table: TripleTable) -> "TripleTableSchema":
        return cls(
            m=table.order, n=table.n,
            labels=[_json_label(x) for x in table.labels],
            triples=[
                TripleEntry(j=j, k=k, l=l, value=CyclotomicSchema.from_domain(v))
                for (j, k, l), v in sorted(table.values.items())
            ],
        )

    def to_domain(self) -> TripleTable:
        values = {(t.j, t.k, t.l): t.value.to_domain() for t in self.triples}
        if len(values) != self.n * (self.n - 1) * (self.n - 2):
            raise ValueError("a triple table must list every ordered triple of distinct indices")
        table = TripleTable(
            n=self.n, order=self.m, values=values,
            labels=tuple(_domain_label(x) for x in self.labels),
        )
        assert_triple_invariants(table)
        return table


# ==============================
# Construction Requests
# ==============================
class PaleyRequest(BaseModel):
    q: int = Field(..., ge=7, description="Prime power q = 3 mod 4")
    modulus: Optional[List[int]] = Field(None, description="Monic modulus, constant term first")


class DiffsetRequest(BaseModel):
    group: List[int] = Field(..., min_length=1, description="Cyclic factor orders")
    subset: List[Any] = Field(..., min_length=1, description="Group elements (ints or coordinate lists)")


class SizeRequest(BaseModel):
    n: int = Field(..., ge=1, le=512)


class PrimeRequest(BaseModel):
    q: int = Field(..., ge=3)


class GaborRequest(BaseModel):
    p: int = Field(..., ge=3, description="Odd prime")
