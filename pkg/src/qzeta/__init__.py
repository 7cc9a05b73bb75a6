"""qzeta: multiple q-zeta values, exactly and numerically.

The exact backend treats q as a formal variable modulo q^Q so that every
identity check is tolerance-free; the float and complex backends evaluate
at fixed 0 < q < 1 with tracked truncation bounds.  The identity registry
(see `qzeta.identities`) packages every supported relation as a named,
parameterized residual check.
"""

from .backend import (BackendConfig, ComplexVal, FloatVal, euler_gamma_q,
                      qgamma, qint, qpow_asym)
from .errors import (AdmissibilityError, DivergenceError, DomainError,
                     ParameterError, PoleError, QZetaError, RegistryError,
                     ResourceError, SingularSeriesError,
                     UnsupportedRequestError)
from .identities import (CheckReport, list_identities, reports_to_csv,
                         reports_to_json, run_suite, suite_summary, verify)
from .qpoly import QPoly
from .qseries import QSeries
from .stuffle import (Stuffle, ZetaCombo, ZetaExpr, delta_apply,
                      enumerate_set_partitions, enumerate_stuffles,
                      nproduct_expand, parity_reduce,
                      partition_identity_sides, period1_reduce,
                      qstuffle_product)
from .words import (BlockForm, Composition, Word, WordPoly,
                    admissible_compositions, composition_of_word,
                    dual_composition, is_admissible, parse_composition,
                    parse_word, tau, word_of_composition)
from .derivations import (ParamWordSeries, check_exp_partial, derivation_D,
                          derivation_partial, sigma_theta)
from .zeta import (EvalParams, complex_params, eval_Z, eval_zeta,
                   eval_zeta_combo, exact_params, float_params, zeta_series)
from .polylog import eval_Li, eval_lambda
from .auxseries import FWordSpec, eval_S, eval_T, eval_f, f_theta_series
from .genfunc import (drin_rhs_coeff, euler_convolution_residual,
                      eval_2phi1, eval_zeta_tilde, gen_func_coeff, heine_rhs,
                      log_qgamma_series)
from .jackson import (OmegaForm, jackson_integral, multiple_jackson,
                      multiple_jackson_lambda, multiple_jackson_zeta, omega,
                      omega0)

__version__ = "0.1.0"
