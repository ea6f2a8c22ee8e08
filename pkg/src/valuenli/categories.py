"""The fixed 20-category human value taxonomy (level-2 categories).

Category names and their order are the interchange contract for every label
file, report and prediction this package reads or writes; they must not be
edited.
"""

from dataclasses import dataclass

from valuenli.errors import DataValueError

CATEGORY_NAMES = (
    "Self-direction: thought",
    "Self-direction: action",
    "Stimulation",
    "Hedonism",
    "Achievement",
    "Power: dominance",
    "Power: resources",
    "Face",
    "Security: personal",
    "Security: societal",
    "Tradition",
    "Conformity: rules",
    "Conformity: interpersonal",
    "Humility",
    "Benevolence: caring",
    "Benevolence: dependability",
    "Universalism: concern",
    "Universalism: nature",
    "Universalism: tolerance",
    "Universalism: objectivity",
)

NUM_CATEGORIES = len(CATEGORY_NAMES)


@dataclass(frozen=True, order=True)
class ValueCategory:
    """One level-2 value category; ``index`` is its canonical column position."""

    index: int
    name: str


CATEGORIES = tuple(ValueCategory(i, name) for i, name in enumerate(CATEGORY_NAMES))

_BY_NAME = {c.name: c for c in CATEGORIES}


def category_for(name: str) -> ValueCategory:
    """Look up a category by its exact name."""
    try:
        return _BY_NAME[name]
    except KeyError:
        raise DataValueError(f"unknown value category: {name!r}") from None


def is_category_name(name: str) -> bool:
    return name in _BY_NAME
