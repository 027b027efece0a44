"""Certified Weierstrass division, preparation and Hensel lifting over
Banach base rings: the integers, rationals and complexes with the usual
absolute value, p-adic fields and DVRs with tracked precision, and the
trivially valued rationals.

The package is organised by operation family:

- :mod:`bwdiv.base_rings`      ring descriptors, exact arithmetic, norms
- :mod:`bwdiv.points`          base/fiber points, seminorm evaluation
- :mod:`bwdiv.series`          truncated series with certified tails
- :mod:`bwdiv.division_global` division by a monic polynomial, certificates
- :mod:`bwdiv.division_local`  division and preparation at a rigid point
- :mod:`bwdiv.hensel`          Newton/Hensel root lifting, factorization
- :mod:`bwdiv.conditions`      resultants, root bounds, boundary checks
- :mod:`bwdiv.endo_checks`     pullback evaluation compatibility
- :mod:`bwdiv.cli`             JSON batch front end (the ``bwdiv`` script)
"""

from .base_rings import BaseRing, PAdicValue, RingElement, uniformity_check
from .division_global import (DivisionCertificate, MonicPolynomial,
                              QuotientElement, div_norm, divide_global,
                              residue_norm, sandwich_check)
from .division_local import (LocalContext, LocalDivisionResult, LocalElement,
                             divide_local, fiber_valuation, make_local_context,
                             prepare, unit_inverse_K)
from .conditions import (AnalyticBoundary, ConditionReport, check_RG,
                         estimate_NG, resultant, root_bound, shilov_point,
                         spectral_seminorm)
from .endo_checks import EndoContext, make_endo_context, pullback_eval
from .hensel import (FactorizationDG, HenselProblem, factor_DG, hensel_lift,
                     make_hensel_problem)
from .normvalue import NormValue
from .points import (DiskPoint, RationalPoint, RigidPoint, SpectrumPoint,
                     arch_power, classify_rigid, evaluate_base, evaluate_fiber,
                     padic_power, padic_residue, trivial_point)
from .series import (SeriesWithTail, coefficient_bound_check, make_series,
                     pi_content, series_norm)

__version__ = "0.1.0"
