"""Lorentz-boost effects on photonic entanglement distribution between
satellites: aberration and Wigner phases, the three distribution protocols,
diffraction-degraded entanglement, purification, and link budgets."""

from .diffraction import (
    BeamProfile,
    QuadratureGrid,
    diffracted_reduced_type1,
    make_grid,
    negativity_sweep,
    normalized_weights,
    profile_weight,
    rotate_beam,
)
from .errors import (
    ConfigError,
    DegenerateProtocolError,
    DomainError,
    NumericalConsistencyError,
)
from .lorentz import (
    FourVector,
    LorentzTransform,
    SphericalDirection,
    apply,
    approx_transform_theta,
    boost_z,
    rotation_y,
    rotation_z,
    standard_boost,
    transform_angles,
    wigner_phase,
)
from .photon import (
    PhotonState,
    PolarizationState,
    boost_photon,
    helicity_polarization,
    linear_polarization,
    make_photon,
)
from .purification import (
    LinkParams,
    PurificationTrace,
    RoundResult,
    attenuation,
    bell_target,
    photon_budget,
    photons_required,
    polarization_pair_to_qutrits,
    purify_round,
)
from .quantum import (
    DensityMatrix,
    fidelity_to_pure,
    negativity,
    partial_trace,
    purity,
    trace_distance,
)
from .states import (
    TypeIState,
    TypeIIState,
    TypeIIIState,
    boost_type1,
    boost_type2,
    boost_type3,
    make_type1,
    make_type2,
    make_type3,
    number_basis_reduced,
    reduced_polarization,
)

__version__ = "0.1.0"
