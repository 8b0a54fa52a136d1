"""Exact verification toolkit for two explicit isoparametric quartics."""

from .scalar import Scalar, CScalar, SQRT2, INV_SQRT2
from .polyring import MPoly, grad, laplacian, grad_inner, subst_linear, verify_cm
from .geometry import ExampleId, build_F_45, build_F_fkm, frame_45, frame_69, dual_frame
from .forms import ot_expand, shape_blocks, third_form_tensor

__version__ = "0.1.0"
