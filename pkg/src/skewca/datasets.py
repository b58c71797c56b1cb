"""Bundled example datasets.

Two classics of square-table analysis: repeat purchases of decaffeinated
coffee brands (first versus second purchase of the same households), and
matched opinion data where two groups rated the same four-point scale, so
the two tables share categories and can be compared jointly.
"""

from __future__ import annotations

from .table import ContingencyTable, validate_table

COFFEE_LABELS = ("HP", "TC", "SA", "NE", "BR")

COFFEE_COUNTS = (
    (93, 17, 44, 7, 10),
    (9, 46, 11, 0, 9),
    (17, 11, 155, 9, 12),
    (6, 4, 9, 15, 2),
    (10, 4, 12, 2, 27),
)

OPINION_LABELS = ("1", "2", "3", "4")

# "always wrong" .. "not wrong at all" on premarital vs extramarital sex;
# first group: early teens, second group: adults before marriage
OPINION_TEENS_COUNTS = (
    (140, 1, 0, 0),
    (30, 3, 1, 0),
    (66, 4, 2, 0),
    (83, 15, 10, 1),
)

OPINION_ADULTS_COUNTS = (
    (3, 1, 0, 0),
    (3, 1, 1, 0),
    (15, 8, 0, 0),
    (23, 8, 7, 0),
)


def coffee_table() -> ContingencyTable:
    """5x5 brand-switching table, n = 541."""
    return validate_table(COFFEE_LABELS, [list(r) for r in COFFEE_COUNTS])


def opinion_tables() -> tuple[ContingencyTable, ContingencyTable]:
    """Matched pair of 4x4 opinion tables over identical categories."""
    return (
        validate_table(OPINION_LABELS, [list(r) for r in OPINION_TEENS_COUNTS]),
        validate_table(OPINION_LABELS, [list(r) for r in OPINION_ADULTS_COUNTS]),
    )
