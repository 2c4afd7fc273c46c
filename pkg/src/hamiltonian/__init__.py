from src.hamiltonian.conservation import (
    ConservationReport,
    conservation_report,
    conserved_quantities,
    trajectory_columns,
    trajectory_rows,
)
from src.hamiltonian.flow import (
    characteristic_integral_curve,
    flow_closed_form,
    flow_closed_form_trajectory,
    hamiltonian_vector_field,
    orbit_normal_curvature,
    sample_grid,
    torus_deviation,
    torus_of,
)
from src.hamiltonian.integrators import INTEGRATORS, flow_numeric, implicit_midpoint_step, rk4_step
from src.hamiltonian.models import Torus, Trajectory
from src.hamiltonian.quantities import quantity_drift

__all__ = [
    "INTEGRATORS",
    "ConservationReport",
    "Torus",
    "Trajectory",
    "characteristic_integral_curve",
    "conservation_report",
    "conserved_quantities",
    "flow_closed_form",
    "flow_closed_form_trajectory",
    "flow_numeric",
    "hamiltonian_vector_field",
    "implicit_midpoint_step",
    "orbit_normal_curvature",
    "quantity_drift",
    "rk4_step",
    "sample_grid",
    "torus_deviation",
    "torus_of",
    "trajectory_columns",
    "trajectory_rows",
]
