"""Binary severity labels and the category-merge rule."""

from __future__ import annotations

LABEL_12 = "12"
LABEL_34 = "34"

#: Admissible labels, in canonical order. "34" is the positive class.
LABELS = (LABEL_12, LABEL_34)
POSITIVE_LABEL = LABEL_34


def is_label(value: object) -> bool:
    return value in LABELS


def check_label(value: object) -> str:
    if value not in LABELS:
        raise ValueError(f"invalid severity label {value!r}; expected one of {LABELS}")
    return value  # type: ignore[return-value]


def merge_category(raw: int) -> str:
    """Collapse a Saffir-Simpson category into the binary label.

    Categories 1 and 2 map to "12", categories 3 and 4 to "34". Anything
    else (including 0 and 5) is rejected: the modeled events only realized
    categories 1-4, and silently mapping unmodeled input would corrupt
    downstream counts.
    """
    if raw in (1, 2):
        return LABEL_12
    if raw in (3, 4):
        return LABEL_34
    raise ValueError(f"category {raw!r} outside the modeled range 1-4")
