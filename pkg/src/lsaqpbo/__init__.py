"""Local submodular approximation solvers for binary pairwise energies."""

from .auxiliary import (PERMUTATION, STANDARD, BoundVariant, aux_bound_unaries,
                        build_auxiliary, lsa_aux_solve)
from .baselines import (brute_force_min, icm_solve, ipfp_solve, lsa_tr_l_solve,
                        parallel_icm_step, truncate, truncation_solve)
from .builders import (GrayImage, RepulsionParams, build_deconvolution_energy,
                       build_repulsion_energy, random_energy,
                       synthesize_deconv_instance)
from .energy import (BinaryEnergy, Decomposition, DimensionError, NonSubmodularError,
                     ParameterError, as_labeling, decompose, eval_energy, hamming,
                     hamming_unaries)
from .maxflow import FlowNetwork, build_flow_network, max_flow, minimize_submodular
from .trace import SolverTrace, TraceRecord
from .trust_region import (TrustRegionParams, build_lagrangian, lsa_tr_solve,
                           taylor_linearize_sup)

__version__ = "0.1.0"
