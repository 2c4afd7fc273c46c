"""
Quantities conserved by the flow of a radial defining function: every r_k, f,
h(T, T) and the Levi curvatures L^j.
"""

from typing import Dict, Optional

import numpy as np

from src.config.settings import Tolerances
from src.geometry.curvature import characteristic_curvature_radial
from src.geometry.levi import levi_curvatures_sym
from src.profiles.base import RadialProfile
from src.profiles.surface import eval_radii


def conserved_quantities(profile: RadialProfile, z, tolerances: Optional[Tolerances] = None) -> Dict[str, float]:
    """r_k, f, h_TT and every L^j at one state."""
    z = np.asarray(z, dtype=complex)
    r = eval_radii(z)
    values = {f"r_{k + 1}": float(r[k]) for k in range(r.shape[0])}
    values["f"] = float(profile.value(r))
    values["h_TT"] = characteristic_curvature_radial(profile, z, tolerances)
    for j, L in enumerate(levi_curvatures_sym(profile, z, tolerances), start=1):
        values[f"L_{j}"] = float(L)
    return values


def quantity_drift(profile: RadialProfile, states, tolerances: Optional[Tolerances] = None) -> Dict[str, float]:
    """max |Q(z_i) - Q(z_0)| over the states, per conserved quantity."""
    states = np.atleast_2d(np.asarray(states, dtype=complex))
    reference = conserved_quantities(profile, states[0], tolerances)
    drift = {key: 0.0 for key in reference}
    for z in states[1:]:
        for key, value in conserved_quantities(profile, z, tolerances).items():
            drift[key] = max(drift[key], abs(value - reference[key]))
    return drift
