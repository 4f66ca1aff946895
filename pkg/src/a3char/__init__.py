"""Exact characters and weight multiplicities of A3, with restricted B3/C3 results."""

from .algebra import LaurentPoly, RationalFn, TruncatedSeries, VarSet, series_expand
from .calogero import (
    DELTA_Z,
    CharPoly,
    DiffOperator,
    apply_delta_z,
    char_to_x,
    eigenvalue,
    solve_character,
    weight_multiplicities,
)
from .errors import A3CharError
from .genfun import (
    DELTA_T,
    DELTA_T_REAL,
    build_E,
    build_E_real,
    build_G,
    build_G_real,
    build_restricted,
    expand_genfun,
    verify_pde,
    verify_pde_symbolic,
)
from .multiplicities import build_A, closed_mu, expand_A, multiplicity
from .roots import (
    enumerate_weyl,
    kostant_multiplicity,
    kostant_Z,
    root_system,
    weyl_character,
    weyl_dim,
)

__version__ = "0.1.0"

__all__ = [
    "A3CharError", "CharPoly", "DELTA_T", "DELTA_T_REAL", "DELTA_Z", "DiffOperator",
    "LaurentPoly", "RationalFn", "TruncatedSeries", "VarSet", "apply_delta_z", "build_A",
    "build_E", "build_E_real", "build_G", "build_G_real", "build_restricted", "char_to_x",
    "closed_mu", "eigenvalue", "enumerate_weyl", "expand_A", "expand_genfun", "kostant_Z",
    "kostant_multiplicity", "multiplicity", "root_system", "series_expand", "solve_character",
    "verify_pde", "verify_pde_symbolic", "weight_multiplicities", "weyl_character", "weyl_dim",
]
