"""Finite T-CW complexes recorded as their cell census: dimensions and isotropy."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple, Union

from .lattice import (DualGroup, LatticeError, Subgroup, TorsionPoint, _same_ambient,
                      annihilator_of_point, in_subvariety)


@dataclass(frozen=True)
class Cell:
    """A cell D^dim x T/H, with H recorded by its annihilator M_H."""

    dim: int
    isotropy: Subgroup

    def __post_init__(self):
        if self.dim < 0:
            raise LatticeError(f"cell dimension must be nonnegative, got {self.dim}")


@dataclass(frozen=True)
class TCWComplex:
    ambient: DualGroup
    cells: Tuple[Cell, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        for c in self.cells:
            _same_ambient(self.ambient, c.isotropy.ambient)

    def __len__(self) -> int:
        return len(self.cells)

    def is_empty(self) -> bool:
        return not self.cells


Selector = Union[Subgroup, TorsionPoint]


def fixed_subcomplex(X: TCWComplex, selector: Selector) -> TCWComplex:
    """X^K for a subgroup selector M_K, or X^alpha for a torsion point.

    K <= H_i exactly when M_{H_i} <= M_K, so a subgroup selector keeps the
    cells whose annihilator sits inside M_K.
    """
    _same_ambient(X.ambient, selector.ambient)
    if isinstance(selector, TorsionPoint):
        keep = [c for c in X.cells if in_subvariety(selector, c.isotropy)]
    else:
        keep = [c for c in X.cells if c.isotropy.is_subgroup_of(selector)]
    return TCWComplex(X.ambient, tuple(keep))


def fixed_by_point_via_dual(X: TCWComplex, alpha: TorsionPoint) -> TCWComplex:
    """X^{H(alpha)}; always equal to ``fixed_subcomplex(X, alpha)``."""
    return fixed_subcomplex(X, annihilator_of_point(alpha))


def orbit_dimension(M: Subgroup) -> int:
    """dim T/H, the free rank of the annihilator M_H."""
    return M.rank


def one_skeleton(X: TCWComplex) -> TCWComplex:
    """Cells whose stabilizer has codimension at most one."""
    return TCWComplex(X.ambient, tuple(c for c in X.cells if orbit_dimension(c.isotropy) <= 1))


def isotropy_collection(X: TCWComplex) -> List[Subgroup]:
    """The distinct isotropy annihilators, in order of first appearance."""
    seen: List[Subgroup] = []
    for c in X.cells:
        if c.isotropy not in seen:
            seen.append(c.isotropy)
    return seen
