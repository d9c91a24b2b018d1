"""Central numerical tolerances.

Every routine that validates or clamps reads its default from here, and every
public entry point exposes the relevant value as a keyword argument so test
suites can tighten or loosen per call.
"""

# validation thresholds for state and operator inputs
HERMITIAN_TOL = 1e-10       # entrywise |M - M^dag| allowed
TRACE_TOL = 1e-10           # |tr(rho) - 1| allowed
EIGENVALUE_FLOOR = -1e-10   # minimum admissible state eigenvalue
UNITARY_TOL = 1e-10         # Frobenius residual of U^dag U - I
SPECTRUM_SUM_TOL = 1e-12    # |sum(gamma) - 1| for Bell-diagonal spectra
PURE_TOL = 1e-10            # |purity - 1| for pure-state inputs

# clamps applied to harmless negative round-off
PSD_CLAMP = -1e-12          # psd_sqrt rejects eigenvalues below this
RADICAND_CLAMP = -1e-12     # distances clamp radicands above this to zero

# eigenvalues of PSD matrices below this fraction of the largest one are
# treated as exact zeros before square roots are taken; sqrt amplifies the
# O(eps) eigensolver noise on a zero eigenvalue to O(1e-8) otherwise
EIG_RELATIVE_FLOOR = 1e-15

# optimizer defaults
DEFAULT_FATOL = 1e-12       # simplex value-spread convergence threshold
DEFAULT_OPT_TOL = 1e-9      # accuracy target for reported minima
