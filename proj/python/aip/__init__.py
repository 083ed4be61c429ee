"""Abstract interpolation problems in the Schur class."""

from ._aip import (
    AipError,
    CoefficientMatrix,
    Problem,
    SchurParameter,
    angular_derivative,
    boundary_residual_detect,
    build_boundary,
    build_np,
    build_sarason,
    build_sarason_from_np,
    circle_nodes,
    coefficient_matrix,
    defect,
    inner_defect,
    make_problem,
    property_2prime,
    run_config,
    sarason_criterion,
    solution,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
