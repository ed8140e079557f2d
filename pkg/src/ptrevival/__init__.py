"""Coherent states of trigonometric Poschl-Teller wells and their revivals.

The package builds two families of coherent states over the exactly solvable
trigonometric Poschl-Teller wells (displacement-type and annihilation-type),
evolves them exactly under the quadratic bound-state spectrum, and exposes
the resulting revival phenomenology: mirror and fractional revivals,
autocorrelation traces, space-time density carpets, sub-packet interference
and the comparison with the classical bounce.
"""

from .coherent import (CoefficientSet, ConvergenceError, DistributionStats,
                       Family, aocs_coeffs, distribution_stats, docs_coeffs,
                       pt_docs_coeffs, recover_coherence_param)
from .dynamics import (CarpetRaster, ClassicalParams, FractionalRevival,
                       InterferenceReport, RevivalTimes, TimeSeries,
                       TrajectoryDomainError, WaveSample, autocorrelation,
                       basis_matrix, carpet, classical_params,
                       classical_trajectory, classical_wavepacket,
                       eighth_revival_interference, energies, evolve,
                       expectation_x_arcsin_quadrature, expectation_x_closed,
                       expectation_x_quadrature, fractional_decomposition,
                       fractional_revival_field, mean_energy, revival_time,
                       revival_times)
from .eigensystem import (PtParams, SpatialGrid, SptParams, eigenfunction_matrix,
                          gauss_grid, potential_value, pt_eigenfunction,
                          pt_energy, pt_potential_minimum, spt_eigenfunction,
                          spt_energy, uniform_grid, well_domain)
from .specfun import (LogWeight, gegenbauer, gegenbauer_all, jacobi, jacobi_all,
                      log_gamma)

__version__ = "0.1.0"
