"""Exact digitwise calculus and self-affine patchwork quilt surfaces.

The library works on exact radix-p fixed-point numbers, applies N-ary
digit operators encoded by integer codes, evaluates the generalized
digitwise operator b_q, and renders the resulting self-affine surfaces.
"""

from .radix import (
    DEFAULT_FRAC_DIGITS,
    RadixFixed,
    coarse_grain,
    digit,
    from_decimal_string,
    mixed_radix_identity_check,
    reconstruct,
    scale_by_radix_power,
)
from .magma import (
    MagmaOp,
    apply,
    carry_code,
    format_op_literal,
    from_code,
    is_commutative,
    mod_add_code,
    parse_op_literal,
    to_code,
)
from .bitwise import (
    BitwiseResult,
    bitwise_eval,
    carry_sum,
    check_coarse_limit,
    check_self_affinity,
    check_sum_decomposition,
    coarse_grain_result,
    mod_p_add,
)
from .surface import (
    SurfaceGrid,
    pointwise_identity_field,
    q_sweep,
    sample_surface,
    sample_surface_exact,
    symmetry_probe,
)
from .formats import render_csv, render_pgm, write_csv, write_pgm, write_raw_rational

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_FRAC_DIGITS",
    "RadixFixed",
    "coarse_grain",
    "digit",
    "from_decimal_string",
    "mixed_radix_identity_check",
    "reconstruct",
    "scale_by_radix_power",
    "MagmaOp",
    "apply",
    "carry_code",
    "format_op_literal",
    "from_code",
    "is_commutative",
    "mod_add_code",
    "parse_op_literal",
    "to_code",
    "BitwiseResult",
    "bitwise_eval",
    "carry_sum",
    "check_coarse_limit",
    "check_self_affinity",
    "check_sum_decomposition",
    "coarse_grain_result",
    "mod_p_add",
    "SurfaceGrid",
    "pointwise_identity_field",
    "q_sweep",
    "sample_surface",
    "sample_surface_exact",
    "symmetry_probe",
    "render_csv",
    "render_pgm",
    "write_csv",
    "write_pgm",
    "write_raw_rational",
    "__version__",
]
