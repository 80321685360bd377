"""ladderforge: a verifiable numerical engine for two-mode oscillator
Hamiltonians, their ladder operators, and the coherent/squeezed eigenstate
families they generate, all checked against brute-force truncated Fock-space
linear algebra."""

from .catalogue import Bindings, CatalogueRow, appendix_catalogue
from .chen import (PQParams, alt_hamiltonian, build_A_pq_generalized,
                   build_calA_pq, build_H_pq, chen_ground,
                   degenerate_zero_states, louck_spectrum, tilde0_state)
from .eigenstates import (EigenstateRequest, basic21_states,
                          fractional_lambda_state, fractional_separable_cs,
                          isotropic_states, linear_coupled_states, su2_ground,
                          verify_eigenstate)
from .errors import CutoffMismatch, DomainError, LadderForgeError
from .fock import (DEFAULT_TOL, FockCutoff, GeneratorSet, Operator,
                   ToleranceConfig, TwoModeState, apply, build_generators,
                   commutator, interior_projector, normalize, basis_state,
                   vacuum_state)
from .params import (CaseTag, FamilyKind, HamiltonianParams, LadderCoeffs,
                     SolveReport, build_hamiltonian, build_ladder, classify,
                     compute_a0, solve_alpha_block, solve_ladder,
                     solve_mu_nu_block, su2_invariant, verify_ladder)
from .reductions import Reduction, reduce_by_similarity
from .spectra import (SpectrumReport, closed_form_spectrum, diagonalize_oracle,
                      normal_order_coeffs, normal_order_power, raising_chain)
from .transforms import (UnitarySpec, build_unitary, expm, similarity,
                         verify_disentangled_T)

__version__ = "0.1.0"
