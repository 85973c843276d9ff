"""digifix: machine checks for fixed-point assertions on digital metric spaces."""

from .contraction import (
    ConditionSpec,
    check_condition,
    constant_collapse_bound,
    ratio_L,
    ratio_r,
    tightest_coefficient,
)
from .falsify import (
    BoxPool,
    WindowedFamily,
    WindowPool,
    builtin_doubling_counterexample,
    builtin_involution_counterexample,
    generate_contraction,
    search_counterexample,
)
from .fixedpoint import (
    FppReport,
    OrbitResult,
    check_constant_collapse,
    fixed_points,
    has_fpp,
    picard_orbit,
    solve_unique_fixed_point,
)
from .lattice import (
    DigitalImage,
    DigitalPath,
    SelfMap,
    components,
    cu_adjacent,
    find_path,
    is_digitally_continuous,
    neighbors,
)
from .metrics import (
    DigitalMetricSpace,
    MetricSpec,
    build_space,
    diameter,
    is_metrically_continuous,
    lp_distance,
    min_separation,
    shortest_path_distance,
)
from .report import CheckReport

__version__ = "0.1.0"
