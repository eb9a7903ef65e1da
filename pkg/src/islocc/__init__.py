"""Entanglement preparation with spatially indistinguishable identical particles.

The package follows one pipeline end to end: single-particle states on a
finite mode basis (:mod:`islocc.states`), permutation-sum amplitudes for
bosons and fermions (:mod:`islocc.amplitudes`), superpositions and
ensembles (:mod:`islocc.ensembles`), post-selection of one particle per
separated region (:mod:`islocc.slocc`), the entropic degree of spatial
indistinguishability (:mod:`islocc.indistinguishability`), concurrence /
entanglement of formation / CHSH diagnostics (:mod:`islocc.entanglement`),
noisy Werner preparation with closed-form references (:mod:`islocc.werner`),
and deterministic sweeps with self-verification (:mod:`islocc.sweeps`).
"""

from .states import (DOWN, UP, ModeBasis, PeakedParams, SingleParticleState,
                     SpatialWave, Spin, inner, make_peaked)
from .amplitudes import (BOSON, FERMION, ElementaryKet, ParticleStatistics,
                         PermutationCapExceeded, amplitude, amplitude_fast,
                         amplitude_permsum, overlap_matrix, permanent_ryser)
from .ensembles import (MixedState, PureNState, matrix_element, mixed_trace,
                        pure_norm_sq, state_overlap, symmetrized_basis)
from .slocc import (ProjectedDensityMatrix, ProjectionUndefinedError,
                    computational_kets, project, slocc_probability,
                    spin_configurations)
from .indistinguishability import (IndistinguishabilityBreakdown, degree_n,
                                   degree_two, region_probability)
from .entanglement import (EntanglementReport, NotXShapedError, analyze,
                           bell_horodecki, bell_xstate, binary_entropy,
                           concurrence, correlation_matrix, eof, spin_flip,
                           wootters_lambdas)
from .werner import (LR_BASIS, KrausSet, WernerSpec, bell_states,
                     canonical_theta, closed_form_concurrence_minus,
                     closed_form_concurrence_plus,
                     closed_form_probability_minus,
                     closed_form_probability_plus, depolarize_then_deform,
                     depolarizing_kraus, project_werner, spec_from_l,
                     wave_state, werner_direct)
from .sweeps import (ConfigError, GridSpec, SweepConfig, SweepRecord,
                     ThresholdResult, find_threshold, indist_on_family,
                     l_for_indist, records_to_csv, records_to_json,
                     run_bell_region, run_sweep, run_verify)

__version__ = "0.1.0"
