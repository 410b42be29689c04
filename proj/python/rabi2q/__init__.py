from ._core import (
    Axis,
    AxisWeights,
    Block,
    BlockParams,
    ConvergenceError,
    InvalidBracketError,
    ModelParams,
    Spin,
    block_matrix,
    concurrence,
    critical_point,
    gfunction_energies,
    ground_energies,
    reduce_params,
    scan_line,
    spectrum,
)

__version__ = "0.1.0"
