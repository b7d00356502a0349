"""
Graded outcome of a classifier check.
"""

import enum
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..expr.zero_test import ZeroStatus


class Status(str, enum.Enum):
    HOLDS_SYMBOLIC = "HoldsSymbolic"
    HOLDS_NUMERIC = "HoldsNumeric"
    FAILS = "Fails"
    IMPROPER = "Improper"
    NOT_APPLICABLE = "NotApplicable"


def _text_point(point):
    if not point:
        return None
    return {str(name): str(value) for name, value in point.items()}


def _text_index(index):
    return "[" + ",".join(str(i) for i in index) + "]"


class Verdict(BaseModel):
    """
    One report row.

    ``witness`` is a 1-based component index (Fails) and ``reference`` the component the
    associated scalar was read from. ``scalar`` holds the extracted Expr and is excluded
    from serialization; ``scalar_text`` carries its canonical rendering.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    check_id: str
    status: Status
    witness: Optional[tuple[int, ...]] = None
    reference: Optional[tuple[int, ...]] = None
    point: Optional[dict[str, str]] = None
    value: Optional[str] = None
    scalar: Any = Field(default=None, exclude=True)
    scalar_text: Optional[str] = None
    constant_type: Optional[bool] = None
    one_forms: list[list[str]] = Field(default_factory=list)
    null_forms: list[bool] = Field(default_factory=list)
    coefficients: dict[str, str] = Field(default_factory=dict)
    numeric: bool = False
    notes: list[str] = Field(default_factory=list)

    @property
    def holds(self):
        return self.status in (Status.HOLDS_SYMBOLIC, Status.HOLDS_NUMERIC)

    @property
    def fails(self):
        return self.status is Status.FAILS

    @property
    def satisfied(self):
        """Holds or holds improperly."""
        return self.holds or self.status is Status.IMPROPER

    @property
    def confidence(self):
        if self.status is Status.NOT_APPLICABLE:
            return "-"
        if self.status is Status.FAILS:
            return "witness"
        if self.numeric or self.status is Status.HOLDS_NUMERIC:
            return "numeric"
        return "symbolic"

    def display_value(self):
        """The witness-or-extracted-value column of the report."""
        parts = []
        if self.scalar_text is not None:
            parts.append(f"L={self.scalar_text}")
            if self.constant_type is not None:
                parts.append("constant" if self.constant_type else "nonconstant")
        if self.coefficients:
            parts.append(",".join(f"{name}={text}" for name, text in self.coefficients.items()))
        for position, form in enumerate(self.one_forms):
            kind = "unclassified"
            if position < len(self.null_forms):
                kind = "null" if self.null_forms[position] else "non-null"
            parts.append(f"Pi=({','.join(form)}) {kind}")
        if self.witness is not None:
            text = f"witness={_text_index(self.witness)}"
            if self.reference is not None:
                text += f" vs {_text_index(self.reference)}"
            parts.append(text)
        if self.point:
            parts.append("at " + ",".join(f"{k}={v}" for k, v in self.point.items()))
        if self.value is not None:
            parts.append(self.value)
        return " ".join(parts) if parts else "-"

    def row(self):
        return f"{self.check_id} | {self.status.value} | {self.display_value()} | {self.confidence}"

    def renamed(self, check_id, **changes):
        return self.model_copy(update={"check_id": check_id, **changes})


def holds_status(numeric):
    return Status.HOLDS_NUMERIC if numeric else Status.HOLDS_SYMBOLIC


def from_grade(check_id, grade, notes=None):
    """
    Verdict of a "tensor = 0" check from a TensorGrade.

    Parameters:
    check_id (str): report id.
    grade (TensorGrade): zero grade of the tensor.
    notes (list): extra notes.
    """
    if grade.status is ZeroStatus.NONZERO:
        return Verdict(
            check_id=check_id,
            status=Status.FAILS,
            witness=grade.index,
            point=_text_point(grade.point),
            value=None if grade.value is None else f"value={grade.value:.6g}",
            notes=list(notes or []),
        )
    numeric = grade.status is ZeroStatus.ZERO_NUMERIC
    return Verdict(check_id=check_id, status=holds_status(numeric), numeric=numeric, notes=list(notes or []))


def not_applicable(check_id, note):
    return Verdict(check_id=check_id, status=Status.NOT_APPLICABLE, notes=[note])
