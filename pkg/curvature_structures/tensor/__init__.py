from .tensor import Tensor, TensorGrade
from .operations import (
    Endomorphism,
    GctReport,
    check_gct,
    contract,
    curvature_action,
    cyclic_pair_sum,
    cyclic_sum,
    endomorphism_action,
    kulkarni_nomizu,
    kulkarni_nomizu_general,
    lower_index,
    outer,
    raise_index,
    second_bianchi_sum,
    squared,
    tachibana,
    wedge_general,
    wedge_tensor,
)
