"""Broadcasting of two-qubit entanglement through state-dependent local cloners."""
from .analysis import (
    Interval,
    IntervalReport,
    average_fidelity,
    broadcast_interval,
    compare_with_universal,
    dominance_range,
    fidelity,
    local_interval,
    nonlocal_interval,
    scan_interval,
    table2,
)
from .broadcast import (
    BroadcastReport,
    PureTwoQubit,
    broadcast_oracle,
    broadcast_report,
    buzek_outputs,
    local_output_schmidt,
    local_outputs_general,
    nonlocal_output_general,
    nonlocal_output_schmidt,
)
from .cloner import (
    ClonerIsometry,
    InfeasibleMachine,
    MachineParams,
    PureQubit,
    build_isometry,
    clone_reduced,
    distortion_a,
    distortion_ab,
    gram_feasibility,
    make_machine,
    optimal_lambda,
    table1,
)
from .linalg import DensityMatrix
from .separability import SeparabilityVerdict, w_determinants

__version__ = "0.1.0"
