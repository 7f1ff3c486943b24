"""Classification, dilations and capacities of one-mode Gaussian quantum channels."""

__version__ = "0.1.0"

from .canonical import (
    CanonicalForm,
    ChannelClass,
    Decomposition,
    build_canonical,
    classify,
    verify_decomposition,
)
from .channels import (
    GaussianChannel,
    GaussianState,
    apply_to_state,
    compose,
    validity_check,
)
from .dilation import (
    Dilation,
    channel_from_dilation,
    dilation_of,
    environment_channel_from_dilation,
)
from .entropy import (
    BITS,
    NATS,
    CoherentInfoPoint,
    EntropyConfig,
    Verdict,
    b1_coherent_information,
    b2_coherent_info_F,
    c_channel_capacity,
    coherent_information,
    degradability_witness,
    g_func,
    gaussian_entropy,
)
from .estimators import CanonicalFormClassifier, GaussianChannelTransformer
from .exceptions import InvalidChannelError, InvariantError
from .symplectic import (
    direct_sum,
    is_symplectic,
    make_transform,
    symplectic_form,
    williamson_one_mode,
)
