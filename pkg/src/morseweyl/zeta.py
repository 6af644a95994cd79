"""Zero-counting for tabulated Riemann zeta ordinates.

Zeros are read from plain text files, never computed.  A fixture with the
first 100 ordinates ships with the package, see :func:`fixture_path`.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Tuple

from .errors import ParseError

__all__ = [
    "ZeroTable",
    "load_zeros",
    "fixture_path",
    "count_zeros_below",
    "count_zeros_magnitude_below",
    "squared_spectrum_count",
]


@dataclass(frozen=True)
class ZeroTable:
    ordinates: Tuple[float, ...]
    source: str = ""

    def __post_init__(self):
        ords = tuple(float(g) for g in self.ordinates)
        if any(b <= a for a, b in zip(ords, ords[1:])):
            raise ValueError("ordinates must be strictly increasing")
        if ords and ords[0] <= 0:
            raise ValueError("ordinates must be positive")
        object.__setattr__(self, "ordinates", ords)

    def __len__(self):
        return len(self.ordinates)

    @property
    def empty(self) -> bool:
        return not self.ordinates

    @property
    def standard(self) -> bool:
        """True if the first ordinate sits in the usual 14.0-14.2 band."""
        return bool(self.ordinates) and 14.0 < self.ordinates[0] < 14.2


def fixture_path() -> Path:
    return Path(str(resources.files("morseweyl") / "fixtures" / "zeta_zeros_100.txt"))


def load_zeros(path) -> ZeroTable:
    """Parse one ordinate per line; ``#`` lines are comments.

    The first comment line that mentions ``source`` (or else the first
    comment line) is kept as provenance.
    """
    path = Path(path)
    ords = []
    comments = []
    with open(path, encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                comments.append(line.lstrip("#").strip())
                continue
            try:
                g = float(line)
            except ValueError:
                raise ParseError(f"{path}:{lineno}: not a number: {line!r}") from None
            if not math.isfinite(g) or g <= 0:
                raise ParseError(f"{path}:{lineno}: ordinate must be positive and finite")
            if ords and g <= ords[-1]:
                raise ParseError(f"{path}:{lineno}: ordinate {g} does not exceed previous {ords[-1]}")
            ords.append(g)
    tagged = [c for c in comments if c.lower().startswith("source")]
    source = (tagged or comments or [str(path)])[0]
    return ZeroTable(tuple(ords), source)


def count_zeros_below(z: ZeroTable, T: float) -> int:
    """Number of ordinates strictly below ``T``."""
    return bisect.bisect_left(z.ordinates, T)


def count_zeros_magnitude_below(z: ZeroTable, T: float) -> int:
    """Zeros ``1/2 +/- i gamma`` with ``|gamma| < T``: twice the one-sided count."""
    return 2 * count_zeros_below(z, T)


def squared_spectrum_count(z: ZeroTable, T: float) -> int:
    """Number of squared ordinates ``gamma**2`` strictly below ``T``."""
    if T <= 0:
        return 0
    return count_zeros_below(z, math.sqrt(T))
