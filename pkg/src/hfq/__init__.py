"""Exact hypergeometric sums over finite fields and point counts on the
superelliptic family y^l = t^e1 (1-t)^e2 (1-zt)^e3, with L-polynomial
verification tooling."""

from .cyclo import (CycInt, CycPoly, CycRat, conjugates, cyclotomic_polynomial,
                    divide_exact, galois_apply, reduce_to_minimal_order,
                    render, to_complex)
from .curves import (CurveInstance, EllipticCurve, HyperellipticModel,
                     count_elliptic, count_hyperelliptic,
                     count_points_formula_model, elliptic_E1_E2,
                     even_degree_model, general_birational_model, genus,
                     isogeny_phi, quadratic_twist, split_models,
                     trace_of_frobenius)
from .errors import (BadAutomorphism, BadDivisor, BadOrder, HfqError,
                     InexactDivision, InexactNewtonDivision, NonIntegralSum,
                     NotOnCurve, NotPrime, NotSquarefree, OrderCollapse,
                     OrderMismatch, OutOfRange, PreconditionViolated,
                     SizeBudgetExceeded, Singular, WeilViolation)
from .ff import (FieldCtx, FieldElement, MultChar, char_of_order_l_via_norm,
                 is_prime, legendre_symbol, make_char, make_extension,
                 make_prime_field, norm_to_base, nth_power_solution_count,
                 primes_upto, trivial_char)
from .hgf import (CYCLOTOMIC_BUDGET, FValue, HgfSpec, canonical_order_l_char,
                  f_value, greene_binomial, hgf2f1_defn35, hgf2f1_thm36,
                  hgf_general, jacobi_sum, transform_thm44)
from .zeta import (LPolynomial, PowerSums, counts_from_lpoly, dickson_T,
                   lpoly_from_counts, power_sum_expand)
from .cache import CacheRecord, ResultCache, cache_key, make_record
from .verify import (VerificationReport, check_conjecture_full,
                     check_conjecture_partial, check_equal_counts,
                     check_koike, check_l3_suite, check_l5_split, check_ono,
                     check_relation_powers, check_relation_q2,
                     check_theorem1, default_family, parse_z_policy, scan)

__version__ = "0.1.0"
