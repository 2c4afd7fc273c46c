from src.geometry.curvature import (
    characteristic_curvature_oracle,
    characteristic_curvature_radial,
    mean_curvature,
    real_hessian,
    second_fundamental_form,
    second_fundamental_matrix,
)
from src.geometry.frame import (
    Frame,
    build_frame,
    characteristic_direction,
    complex_structure,
    horizontal_complex_basis,
    symplectic_matrix_action,
    unit_normal,
)
from src.geometry.levi import (
    BracketCheck,
    bordered_determinant,
    levi_bracket_check,
    levi_curvature_det,
    levi_curvature_sym,
    levi_curvatures_det,
    levi_curvatures_sym,
    levi_eigenvalues,
    levi_form_matrix,
)
from src.geometry.report import CurvatureReport, curvature_report, report_columns, report_row, scan_reports

__all__ = [
    "BracketCheck",
    "CurvatureReport",
    "Frame",
    "bordered_determinant",
    "build_frame",
    "characteristic_curvature_oracle",
    "characteristic_curvature_radial",
    "characteristic_direction",
    "complex_structure",
    "curvature_report",
    "horizontal_complex_basis",
    "levi_bracket_check",
    "levi_curvature_det",
    "levi_curvature_sym",
    "levi_curvatures_det",
    "levi_curvatures_sym",
    "levi_eigenvalues",
    "levi_form_matrix",
    "mean_curvature",
    "real_hessian",
    "report_columns",
    "report_row",
    "scan_reports",
    "second_fundamental_form",
    "second_fundamental_matrix",
    "symplectic_matrix_action",
    "unit_normal",
]
