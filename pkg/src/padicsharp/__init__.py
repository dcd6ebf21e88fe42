"""padicsharp: exact shell calculus and sharp operator constants on Q_p^n."""

from .context import (PadicContext, ball_measure, padic_norm, padic_valuation,
                      shell_measure)
from .errors import (DivergenceError, PadicSharpError, ParameterError,
                     RepresentationError)
from .images import ShellImage
from .shells import (Segment, ShellFunction, TailSum, geom_sum, integrate_radial,
                     superlevel_measure)
from .norms import (LebesgueParams, SupParams, WeakParams, lp_norm, sup_norm,
                    weak_norm)
from .operators import (AlphaVector, KernelSpec, TruncationPolicy,
                        fractional_hardy, hardy_region_sum, hausdorff_constant,
                        hausdorff_operator, hilbert_kernel,
                        indicator_max_ball_kernel, kernel_constant,
                        kernel_operator, multilinear_hardy, multilinear_hilbert)
from .constants import (HardyL1WeakParams, HardyLpWeakParams, branch_suprema,
                        extremal_hardy_lp, extremal_unit_ball, extremal_weighted,
                        hardy_l1_weak_constant, hardy_lp_weak_constant,
                        hardy_sup_constant, hausdorff_indicator_constant,
                        hilbert_bound_region_sum, hilbert_sup_bound,
                        hilbert_sup_series, source_norm_constant)
from .harness import (CLAIMS, ClaimParams, SweepSpec, VerificationReport,
                      random_shell_function, random_upper_bound_test,
                      serialize_reports, sweep, verify_claim)

__version__ = "0.1.0"

__all__ = [
    "PadicContext", "ball_measure", "padic_norm", "padic_valuation",
    "shell_measure", "DivergenceError", "PadicSharpError", "ParameterError",
    "RepresentationError", "ShellImage", "Segment", "ShellFunction", "TailSum",
    "geom_sum", "integrate_radial", "superlevel_measure", "LebesgueParams",
    "SupParams", "WeakParams", "lp_norm", "sup_norm", "weak_norm",
    "AlphaVector", "KernelSpec", "TruncationPolicy", "fractional_hardy",
    "hardy_region_sum", "hausdorff_constant", "hausdorff_operator",
    "hilbert_kernel", "indicator_max_ball_kernel", "kernel_constant",
    "kernel_operator", "multilinear_hardy", "multilinear_hilbert",
    "HardyL1WeakParams", "HardyLpWeakParams", "branch_suprema",
    "extremal_hardy_lp", "extremal_unit_ball", "extremal_weighted",
    "hardy_l1_weak_constant", "hardy_lp_weak_constant", "hardy_sup_constant",
    "hausdorff_indicator_constant", "hilbert_bound_region_sum",
    "hilbert_sup_bound", "hilbert_sup_series", "source_norm_constant",
    "CLAIMS", "ClaimParams", "SweepSpec", "VerificationReport",
    "random_shell_function", "random_upper_bound_test", "serialize_reports",
    "sweep", "verify_claim",
]
